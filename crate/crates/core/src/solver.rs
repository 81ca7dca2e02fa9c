//! 0/1 assignments: binarity, classification, criticality and parity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::HypergraphError;
use crate::hypergraph::Mmph;
use crate::label::VertexLabel;

/// A 0/1 value per vertex, in the hypergraph's vertex order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    pub values: Vec<(VertexLabel, bool)>,
}

impl Assignment {
    /// True iff every hyperedge of `h` holds exactly one vertex valued 1.
    pub fn is_valid_for(&self, h: &Mmph) -> bool {
        let get = |l: VertexLabel| self.values.iter().find(|(v, _)| *v == l).map(|&(_, b)| b);
        h.label_edges()
            .iter()
            .all(|e| e.iter().filter(|&&l| get(l) == Some(true)).count() == 1)
    }

    /// `label=0|1` lines.
    pub fn to_lines(&self) -> String {
        self.values.iter().map(|(l, b)| format!("{l}={}\n", u8::from(*b))).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Val {
    Free,
    Zero,
    One,
}

/// Backtracking search for "exactly one 1 per hyperedge" with unit
/// propagation. Edges are given as vertex index lists over `0..k`.
struct Solver<'a> {
    edges: &'a [&'a [usize]],
    through: Vec<Vec<usize>>,
    val: Vec<Val>,
    ones: Vec<u32>,
    free: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<(usize, Val)>,
    decisions_left: u64,
}

enum Solved {
    Sat(Vec<bool>),
    Unsat,
    GaveUp,
}

impl<'a> Solver<'a> {
    fn new(k: usize, edges: &'a [&'a [usize]]) -> Self {
        let mut through = vec![Vec::new(); k];
        for (e, edge) in edges.iter().enumerate() {
            for &v in edge.iter() {
                through[v].push(e);
            }
        }
        Solver {
            edges,
            through,
            val: vec![Val::Free; k],
            ones: vec![0; edges.len()],
            free: edges.iter().map(|e| e.len() as u32).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
            decisions_left: u64::MAX,
        }
    }

    fn set(&mut self, v: usize, x: Val) {
        self.val[v] = x;
        self.trail.push(v);
        for &e in &self.through[v] {
            self.free[e] -= 1;
            if x == Val::One {
                self.ones[e] += 1;
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail longer than mark");
            let one = self.val[v] == Val::One;
            for &e in &self.through[v] {
                self.free[e] += 1;
                if one {
                    self.ones[e] -= 1;
                }
            }
            self.val[v] = Val::Free;
        }
    }

    /// Applies queued assignments and their consequences. Returns false on
    /// conflict; the caller undoes to its mark.
    fn propagate(&mut self) -> bool {
        while let Some((v, x)) = self.queue.pop() {
            match self.val[v] {
                Val::Free => {}
                cur if cur == x => continue,
                _ => {
                    self.queue.clear();
                    return false;
                }
            }
            self.set(v, x);
            for i in 0..self.through[v].len() {
                let e = self.through[v][i];
                if self.ones[e] > 1 {
                    self.queue.clear();
                    return false;
                }
                if self.ones[e] == 1 {
                    if self.free[e] > 0 {
                        for &u in self.edges[e] {
                            if self.val[u] == Val::Free {
                                self.queue.push((u, Val::Zero));
                            }
                        }
                    }
                } else if self.free[e] == 0 {
                    self.queue.clear();
                    return false;
                } else if self.free[e] == 1 {
                    let u = self.edges[e].iter().copied().find(|&u| self.val[u] == Val::Free);
                    self.queue.push((u.expect("one free vertex"), Val::One));
                }
            }
        }
        true
    }

    /// The open hyperedge with the fewest free vertices, lowest index first.
    fn tightest_open_edge(&self) -> Option<usize> {
        (0..self.edges.len())
            .filter(|&e| self.ones[e] == 0)
            .min_by_key(|&e| self.free[e])
    }

    /// Depth-first search that picks the first free vertex of the tightest
    /// open hyperedge and tries it as 1, then as 0.
    fn solve(mut self) -> Solved {
        for edge in self.edges {
            if edge.len() == 1 {
                self.queue.push((edge[0], Val::One));
            }
        }
        if !self.propagate() {
            return Solved::Unsat;
        }
        // frame: (vertex, value tried, trail mark)
        let mut stack: Vec<(usize, Val, usize)> = Vec::new();
        loop {
            let Some(e) = self.tightest_open_edge() else {
                return Solved::Sat(self.val.iter().map(|&x| x == Val::One).collect());
            };
            if self.decisions_left == 0 {
                return Solved::GaveUp;
            }
            self.decisions_left -= 1;
            let v = self.edges[e].iter().copied().find(|&u| self.val[u] == Val::Free).expect("open edge has a free vertex");
            stack.push((v, Val::One, self.trail.len()));
            self.queue.push((v, Val::One));
            while !self.propagate() {
                loop {
                    let Some(&(v, tried, mark)) = stack.last() else { return Solved::Unsat };
                    self.undo_to(mark);
                    if tried == Val::One {
                        stack.last_mut().expect("nonempty").1 = Val::Zero;
                        self.queue.push((v, Val::Zero));
                        break;
                    }
                    stack.pop();
                }
            }
        }
    }
}

fn solve_edges(k: usize, edges: &[&[usize]]) -> Option<Vec<bool>> {
    match Solver::new(k, edges).solve() {
        Solved::Sat(v) => Some(v),
        Solved::Unsat => None,
        Solved::GaveUp => unreachable!("unlimited search"),
    }
}

fn edge_refs(h: &Mmph) -> Vec<&[usize]> {
    h.edges().iter().map(Vec::as_slice).collect()
}

/// A valid assignment if one exists.
pub fn find_assignment(h: &Mmph) -> Option<Assignment> {
    let values = solve_edges(h.k(), &edge_refs(h))?;
    Some(Assignment { values: h.vertices().iter().copied().zip(values).collect() })
}

/// Result of a search with a cap on branching decisions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Bounded {
    Found(Assignment),
    NonBinary,
    GaveUp,
}

/// Like [`find_assignment`] but stops after `max_decisions` branchings.
pub fn find_assignment_bounded(h: &Mmph, max_decisions: u64) -> Bounded {
    let edges = edge_refs(h);
    let mut solver = Solver::new(h.k(), &edges);
    solver.decisions_left = max_decisions;
    match solver.solve() {
        Solved::Sat(values) => Bounded::Found(Assignment { values: h.vertices().iter().copied().zip(values).collect() }),
        Solved::Unsat => Bounded::NonBinary,
        Solved::GaveUp => Bounded::GaveUp,
    }
}

pub fn is_binary(h: &Mmph) -> bool {
    solve_edges(h.k(), &edge_refs(h)).is_some()
}

/// Largest vertex count accepted by [`enumerate_assignments`].
pub const ENUMERATE_MAX_K: usize = 24;

/// Counts valid assignments by scanning all 2^k valuations.
pub fn enumerate_assignments(h: &Mmph) -> Result<u64, HypergraphError> {
    let k = h.k();
    if k > ENUMERATE_MAX_K {
        return Err(HypergraphError::TooManyVertices { k, max: ENUMERATE_MAX_K });
    }
    let masks: Vec<u32> = h.edges().iter().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let ok = |x: &u32| masks.iter().all(|&m| (x & m).count_ones() == 1);
    let count = if k < 16 {
        (0u32..1 << k).filter(ok).count()
    } else {
        (0u32..1 << k).into_par_iter().filter(ok).count()
    };
    Ok(count as u64)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    /// Binary: admits a valid assignment.
    Bmmph,
    /// Non-binary with every hyperedge of size n.
    KsNbmmph,
    /// Non-binary with some hyperedge smaller than n.
    NonKsNbmmph,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Bmmph => "BMMPH",
            Kind::KsNbmmph => "KS-NBMMPH",
            Kind::NonKsNbmmph => "nonKS-NBMMPH",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub kind: Kind,
    pub witness: Option<Assignment>,
}

pub fn classify(h: &Mmph) -> Classification {
    if let Some(w) = find_assignment(h) {
        return Classification { kind: Kind::Bmmph, witness: Some(w) };
    }
    let n = h.dimension();
    let kind = if h.edges().iter().all(|e| e.len() == n) { Kind::KsNbmmph } else { Kind::NonKsNbmmph };
    Classification { kind, witness: None }
}

/// True iff `h` is non-binary and removing any one hyperedge makes it
/// binary. Vertices orphaned by a removal simply drop out.
pub fn is_critical(h: &Mmph) -> bool {
    let edges = edge_refs(h);
    if solve_edges(h.k(), &edges).is_some() {
        return false;
    }
    (0..edges.len()).into_par_iter().all(|skip| {
        let rest: Vec<&[usize]> =
            edges.iter().enumerate().filter(|&(e, _)| e != skip).map(|(_, &x)| x).collect();
        solve_edges(h.k(), &rest).is_some()
    })
}

/// Greedily removes hyperedges in a seeded random order, keeping each
/// removal that leaves the hypergraph non-binary. The result is critical and
/// keeps the input's vertex names.
pub fn criticalize(h: &Mmph, seed: u64) -> Result<Mmph, HypergraphError> {
    let edges = edge_refs(h);
    if solve_edges(h.k(), &edges).is_some() {
        return Err(HypergraphError::Binary);
    }
    let mut order: Vec<usize> = (0..h.l()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut keep = vec![true; h.l()];
    for e in order {
        keep[e] = false;
        let rest: Vec<&[usize]> = edges.iter().enumerate().filter(|&(i, _)| keep[i]).map(|(_, &x)| x).collect();
        if solve_edges(h.k(), &rest).is_some() {
            keep[e] = true;
        }
    }
    h.retain_edges(|e| keep[e])
}

/// Odd number of hyperedges and every vertex in an even number of them.
pub fn has_parity_proof(h: &Mmph) -> bool {
    h.l() % 2 == 1 && h.multiplicity_vec().iter().all(|m| m % 2 == 0)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FullEdgeFilter {
    /// Some hyperedge has n vertices, none of multiplicity 1.
    Strict,
    /// Some hyperedge has n vertices.
    Relaxed,
    Off,
}

pub fn filter_full_edge_no_m1(h: &Mmph, filter: FullEdgeFilter) -> bool {
    let n = h.dimension();
    let m = h.multiplicity_vec();
    match filter {
        FullEdgeFilter::Off => true,
        FullEdgeFilter::Relaxed => h.edges().iter().any(|e| e.len() == n),
        FullEdgeFilter::Strict => h.edges().iter().any(|e| e.len() == n && e.iter().all(|&v| m[v] >= 2)),
    }
}
