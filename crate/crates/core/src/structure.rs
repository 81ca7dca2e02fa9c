//! Structural operations: multiplicities, stripping, filling, vertex
//! deletion, components and loops.

use std::collections::{BTreeSet, HashSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::HypergraphError;
use crate::hypergraph::Mmph;
use crate::label::VertexLabel;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Multiplicity {
    pub vertex: VertexLabel,
    pub m: usize,
}

/// The number of hyperedges through each vertex, in vertex order.
pub fn multiplicities(h: &Mmph) -> Vec<Multiplicity> {
    h.vertices()
        .iter()
        .zip(h.multiplicity_vec())
        .map(|(&vertex, m)| Multiplicity { vertex, m })
        .collect()
}

/// Which hyperedges [`strip_edges`] removes.
#[derive(Clone, Debug)]
pub enum Strip {
    Indices(BTreeSet<usize>),
    /// This many edges, chosen uniformly with the given seed.
    Random { count: usize, seed: u64 },
}

/// Removes hyperedges, then any vertex left without one.
pub fn strip_edges(h: &Mmph, strip: &Strip) -> Result<Mmph, HypergraphError> {
    let drop: HashSet<usize> = match strip {
        Strip::Indices(set) => {
            if let Some(&bad) = set.iter().find(|&&e| e >= h.l()) {
                return Err(HypergraphError::EdgeOutOfRange(bad));
            }
            set.iter().copied().collect()
        }
        Strip::Random { count, seed } => {
            if *count >= h.l() {
                return Err(HypergraphError::NoEdgesLeft);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            sample(&mut rng, h.l(), *count).into_iter().collect()
        }
    };
    h.retain_edges(|e| !drop.contains(&e))
}

/// Removes every vertex of multiplicity 1 from its hyperedge. Hyperedges
/// left with fewer than two vertices disappear. With `fixpoint` the step
/// repeats until no multiplicity-1 vertex remains.
pub fn drop_m1_vertices(h: &Mmph, fixpoint: bool) -> Result<Mmph, HypergraphError> {
    let mut cur = h.clone();
    loop {
        let m = cur.multiplicity_vec();
        if m.iter().all(|&x| x != 1) {
            return Ok(cur);
        }
        let edges = cur
            .edges()
            .iter()
            .map(|e| e.iter().filter(|&&v| m[v] != 1).map(|&v| cur.vertices()[v]).collect());
        cur = Mmph::from_edges(cur.dimension(), edges.collect::<Vec<_>>())?;
        if !fixpoint {
            return Ok(cur);
        }
    }
}

/// Removes the given vertices from every hyperedge. Hyperedges left with
/// fewer than two vertices are deleted and exact duplicates merged; a
/// hyperedge that becomes a subset of another is kept.
pub fn delete_vertices(h: &Mmph, victims: &[VertexLabel]) -> Result<Mmph, HypergraphError> {
    for &v in victims {
        if h.vertex_index(v).is_none() {
            return Err(HypergraphError::UnknownVertex(v));
        }
    }
    let victims: HashSet<VertexLabel> = victims.iter().copied().collect();
    let edges: Vec<Vec<VertexLabel>> = h
        .label_edges()
        .into_iter()
        .map(|e| e.into_iter().filter(|v| !victims.contains(v)).collect())
        .collect();
    Mmph::from_edges(h.dimension(), edges)
}

/// Pads every hyperedge to `n` vertices with fresh labels, taken in MMP
/// order after the highest label in use and appended to the hyperedge.
pub fn fill(h: &Mmph, n: usize) -> Result<Mmph, HypergraphError> {
    let needed = h.max_edge_size();
    if n < needed {
        return Err(HypergraphError::DimensionTooSmall { given: n, needed });
    }
    let mut next = h.vertices().iter().map(|v| v.index() + 1).max().unwrap_or(0);
    let edges: Vec<Vec<VertexLabel>> = h
        .label_edges()
        .into_iter()
        .map(|mut e| {
            while e.len() < n {
                e.push(VertexLabel::from_index(next));
                next += 1;
            }
            e
        })
        .collect();
    Mmph::from_edges(n, edges)
}

/// Splits `h` into parts whose hyperedges are connected through shared
/// vertices. Parts are ordered by their first hyperedge.
pub fn connected_components(h: &Mmph) -> Vec<Mmph> {
    let mut parent: Vec<usize> = (0..h.l()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner: Vec<Option<usize>> = vec![None; h.k()];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            match owner[v] {
                None => owner[v] = Some(e),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, e));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let roots: Vec<usize> = (0..h.l()).map(|e| find(&mut parent, e)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort_unstable();
    order.dedup();
    order
        .into_iter()
        .map(|r| h.retain_edges(|e| roots[e] == r).expect("component has an edge"))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopReport {
    pub max_order: usize,
    /// Hyperedge indices of a loop realizing `max_order` (for order 2, the
    /// pair of hyperedges).
    pub witness: Option<Vec<usize>>,
    /// False when the search stopped at its step budget, in which case
    /// `max_order` is a lower bound.
    pub exhaustive: bool,
}

/// Default step budget for [`max_loop_order`].
pub const LOOP_BUDGET: u64 = 5_000_000;

/// Longest loop of hyperedges.
///
/// Order 2 means two hyperedges sharing at least two vertices. A loop of
/// order r >= 3 is a cyclic sequence of r distinct hyperedges where each
/// consecutive pair (including last and first) shares a vertex that lies in
/// no other hyperedge of `h`, and no vertex lies in three or more of the
/// loop's hyperedges.
pub fn max_loop_order(h: &Mmph, budget: u64) -> LoopReport {
    let l = h.l();
    let m = h.multiplicity_vec();
    let sets: Vec<HashSet<usize>> = h.edges().iter().map(|e| e.iter().copied().collect()).collect();
    let mut report = LoopReport { max_order: 0, witness: None, exhaustive: true };
    'pairs: for a in 0..l {
        for b in a + 1..l {
            if sets[a].intersection(&sets[b]).count() >= 2 {
                report.max_order = 2;
                report.witness = Some(vec![a, b]);
                break 'pairs;
            }
        }
    }

    // link[a] = hyperedges joined to a through a multiplicity-2 vertex
    let mut link: Vec<Vec<usize>> = vec![Vec::new(); l];
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); h.k()];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            through[v].push(e);
        }
    }
    for (v, es) in through.iter().enumerate() {
        if m[v] == 2 {
            let (a, b) = (es[0], es[1]);
            link[a].push(b);
            link[b].push(a);
        }
    }
    for ls in &mut link {
        ls.sort_unstable();
        ls.dedup();
    }

    struct Search<'a> {
        h: &'a Mmph,
        link: &'a [Vec<usize>],
        count: Vec<u8>,
        on: Vec<bool>,
        path: Vec<usize>,
        steps: u64,
        budget: u64,
        best: usize,
        witness: Option<Vec<usize>>,
        exhausted: bool,
    }
    impl Search<'_> {
        fn enter(&mut self, e: usize) -> bool {
            if self.h.edges()[e].iter().any(|&v| self.count[v] >= 2) {
                return false;
            }
            for &v in &self.h.edges()[e] {
                self.count[v] += 1;
            }
            self.on[e] = true;
            self.path.push(e);
            true
        }
        fn leave(&mut self, e: usize) {
            for &v in &self.h.edges()[e] {
                self.count[v] -= 1;
            }
            self.on[e] = false;
            self.path.pop();
        }
        fn dfs(&mut self, start: usize) {
            self.steps += 1;
            if self.steps > self.budget {
                self.exhausted = true;
                return;
            }
            let last = *self.path.last().expect("path never empty");
            for i in 0..self.link[last].len() {
                let next = self.link[last][i];
                if next == start && self.path.len() >= 3 && self.path.len() > self.best {
                    self.best = self.path.len();
                    self.witness = Some(self.path.clone());
                }
                if next <= start || self.on[next] || !self.enter(next) {
                    continue;
                }
                self.dfs(start);
                self.leave(next);
                if self.exhausted {
                    return;
                }
            }
        }
    }

    let mut s = Search {
        h,
        link: &link,
        count: vec![0; h.k()],
        on: vec![false; l],
        path: Vec::new(),
        steps: 0,
        budget,
        best: 0,
        witness: None,
        exhausted: false,
    };
    for start in 0..l {
        if s.enter(start) {
            s.dfs(start);
            s.leave(start);
        }
        if s.exhausted {
            break;
        }
    }
    if s.best > report.max_order {
        report.max_order = s.best;
        report.witness = s.witness;
    }
    report.exhaustive = !s.exhausted;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_mmph, serialize_mmph};

    fn p(s: &str) -> Mmph {
        parse_mmph(s, None).unwrap()
    }

    fn lab(s: &str) -> VertexLabel {
        VertexLabel::parse(s).unwrap()
    }

    #[test]
    fn bug_multiplicities() {
        let h = p("123,34,45,567,78,81,26.");
        let ms = multiplicities(&h);
        assert_eq!(ms.iter().find(|m| m.vertex == lab("3")).unwrap().m, 2);
        assert_eq!(ms.iter().map(|m| m.m).sum::<usize>(), h.edges().iter().map(Vec::len).sum());
        assert_eq!(multiplicities(&p("12."))[0].m, 1);
    }

    #[test]
    fn strip_by_index() {
        let h = strip_edges(&p("12,34."), &Strip::Indices([1].into())).unwrap();
        assert_eq!(serialize_mmph(&h), "12.");
        assert_eq!(h.k(), 2);
        assert_eq!(strip_edges(&p("12,34."), &Strip::Indices([0, 1].into())), Err(HypergraphError::NoEdgesLeft));
        assert_eq!(strip_edges(&p("12."), &Strip::Indices([4].into())), Err(HypergraphError::EdgeOutOfRange(4)));
    }

    #[test]
    fn random_strip_is_seeded() {
        let h = p("12,23,34,45,56,67,78,89.");
        let a = strip_edges(&h, &Strip::Random { count: 3, seed: 9 }).unwrap();
        let b = strip_edges(&h, &Strip::Random { count: 3, seed: 9 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.l(), 5);
        assert!(strip_edges(&h, &Strip::Random { count: 8, seed: 0 }).is_err());
    }

    #[test]
    fn drop_m1() {
        let h = drop_m1_vertices(&p("1562,3784,1234."), false).unwrap();
        assert_eq!(serialize_mmph(&h), "12,34,1234.");
        assert_eq!(h.dimension(), 4);
        let bug = p("123,34,45,567,78,81,26.");
        assert_eq!(drop_m1_vertices(&bug, false).unwrap(), bug);
    }

    #[test]
    fn drop_m1_fixpoint() {
        // one pass leaves 13 alone, whose vertices then have multiplicity 1
        let h = p("123,34,15.");
        let once = drop_m1_vertices(&h, false).unwrap();
        assert_eq!(serialize_mmph(&once), "13.");
        assert_eq!(drop_m1_vertices(&h, true), Err(HypergraphError::NoEdgesLeft));
    }

    #[test]
    fn delete() {
        let h = p("123,124,35.");
        let d = delete_vertices(&h, &[lab("3"), lab("4")]).unwrap();
        assert_eq!(serialize_mmph(&d), "12.");
        assert_eq!(delete_vertices(&h, &[lab("9")]), Err(HypergraphError::UnknownVertex(lab("9"))));
        assert_eq!(delete_vertices(&p("12,23."), &[lab("2")]), Err(HypergraphError::NoEdgesLeft));
        // subset edges survive
        let s = delete_vertices(&p("123,12,145."), &[lab("5")]).unwrap();
        assert_eq!(serialize_mmph(&s), "123,12,14.");
    }

    #[test]
    fn fill_examples() {
        let f = fill(&p("12,34,1234."), 4).unwrap();
        assert_eq!(serialize_mmph(&f), "1256,3478,1234.");
        assert_eq!((f.k(), f.l()), (8, 3));
        let full = p("1234,1567.");
        assert_eq!(fill(&full, 4).unwrap(), full);
        assert!(fill(&full, 3).is_err());
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&p("12,23.")).len(), 1);
        let parts = connected_components(&p("12,34,25."));
        assert_eq!(parts.iter().map(serialize_mmph).collect::<Vec<_>>(), ["12,25.", "34."]);
    }

    #[test]
    fn loops() {
        assert_eq!(max_loop_order(&p("12,23,31."), LOOP_BUDGET).max_order, 3);
        assert_eq!(max_loop_order(&p("123,124."), LOOP_BUDGET).max_order, 2);
        assert_eq!(max_loop_order(&p("12,34."), LOOP_BUDGET).max_order, 0);
        let r = max_loop_order(&p("123,34,45,567,78,81,26."), LOOP_BUDGET);
        assert_eq!(r.max_order, 6);
        assert!(r.exhaustive);
        assert_eq!(r.witness.unwrap().len(), 6);
    }
}
