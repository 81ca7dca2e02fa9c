//! Masters generated from a component alphabet: every projective vector
//! over the alphabet, joined into hyperedges by maximal orthogonal sets.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use indexmap::IndexMap;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::scalar::{ExactScalar, Ring};
use super::vector::{Coordinatization, ExactVector};
use crate::error::CoordError;
use crate::hypergraph::Mmph;
use crate::label::VertexLabel;
use crate::solver::{find_assignment_bounded, Bounded};
use crate::structure::connected_components;

/// Default cap on clique search steps.
pub const VECFIND_BUDGET: u64 = 200_000_000;

/// Integer image of a vector scaled by the common denominator, one
/// `(a, b)` pair per component.
type IntVec = Vec<(i128, i128)>;

fn integral(v: &ExactVector) -> Result<IntVec, CoordError> {
    let mut lcm = num_bigint::BigInt::one();
    for c in v.components() {
        lcm = lcm.lcm(c.a().denom()).lcm(c.b().denom());
    }
    v.components()
        .iter()
        .map(|c| {
            let a = (c.a() * &lcm).to_integer().to_i64().ok_or(CoordError::Overflow)?;
            let b = (c.b() * &lcm).to_integer().to_i64().ok_or(CoordError::Overflow)?;
            Ok((i128::from(a), i128::from(b)))
        })
        .collect()
}

fn int_orthogonal(ring: Ring, u: &IntVec, v: &IntVec) -> bool {
    let (mut x, mut y) = (0i128, 0i128);
    for (&(a, b), &(c, d)) in u.iter().zip(v) {
        match ring {
            Ring::Rational => x += a * c,
            Ring::Golden => {
                x += a * c + b * d;
                y += a * d + b * c + b * d;
            }
            Ring::Eisenstein => {
                // conj(a + b w) = (a - b) - b w
                let (p, q) = (a - b, -b);
                x += p * c - q * d;
                y += p * d + q * c - q * d;
            }
        }
    }
    x == 0 && y == 0
}

type Bits = Vec<u64>;

fn bit(s: &Bits, i: usize) -> bool {
    s[i / 64] >> (i % 64) & 1 == 1
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn count(a: &Bits) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

fn ones(a: &Bits) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + t)
        })
    })
}

struct Cliques<'a> {
    adj: &'a [Bits],
    n: usize,
    steps: &'a AtomicU64,
    budget: u64,
}

impl Cliques<'_> {
    /// Pivoting Bron-Kerbosch that reports cliques of size exactly `n` and
    /// prunes branches that cannot reach it.
    fn expand(&self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) -> Result<(), CoordError> {
        if self.steps.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(CoordError::BudgetExceeded(self.budget));
        }
        if r.len() == self.n {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return Ok(());
        }
        if r.len() + count(&p) < self.n {
            return Ok(());
        }
        let pivot = ones(&p)
            .chain(ones(&x))
            .max_by_key(|&u| count(&and(&p, &self.adj[u])))
            .expect("p is nonempty here");
        let cand: Vec<usize> = ones(&p).filter(|&v| !bit(&self.adj[pivot], v)).collect();
        for v in cand {
            r.push(v);
            self.expand(r, and(&p, &self.adj[v]), and(&x, &self.adj[v]), out)?;
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
            if r.len() + count(&p) < self.n {
                break;
            }
        }
        Ok(())
    }
}

/// All `n`-cliques of a graph given as adjacency bitsets, each sorted, in
/// lexicographic order.
fn n_cliques(adj: &[Bits], n: usize, budget: u64) -> Result<Vec<Vec<usize>>, CoordError> {
    let words = adj.first().map_or(0, Vec::len);
    let steps = AtomicU64::new(0);
    let ctx = Cliques { adj, n, steps: &steps, budget };
    let parts: Vec<Vec<Vec<usize>>> = (0..adj.len())
        .into_par_iter()
        .map(|v| {
            let mut later = vec![0u64; words];
            let mut earlier = vec![0u64; words];
            for u in ones(&adj[v]) {
                if u > v {
                    later[u / 64] |= 1 << (u % 64);
                } else {
                    earlier[u / 64] |= 1 << (u % 64);
                }
            }
            let mut out = Vec::new();
            ctx.expand(&mut vec![v], later, earlier, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_, CoordError>>()?;
    let mut all: Vec<Vec<usize>> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(all)
}

/// Generates the master of all `n`-dimensional vectors over `components`.
///
/// Vectors are taken up to nonzero scalar multiples (first nonzero component
/// scaled to 1), hyperedges are the orthogonal `n`-tuples, and vectors in no
/// hyperedge are dropped. Labels follow the sorted order of the canonical
/// vectors.
pub fn vecfind_master(
    n: usize,
    components: &[ExactScalar],
    ring: Ring,
    budget: u64,
) -> Result<(Mmph, Coordinatization), CoordError> {
    let comps: BTreeSet<ExactScalar> = components
        .iter()
        .map(|c| c.in_ring(ring).ok_or(CoordError::RingMismatch(ring.name(), c.ring().name())))
        .collect::<Result<_, _>>()?;
    let comps: Vec<ExactScalar> = comps.into_iter().collect();
    if n == 0 || !comps.iter().any(ExactScalar::is_zero) || comps.len() < 2 {
        return Err(CoordError::BadComponents);
    }

    let mut canon: BTreeSet<ExactVector> = BTreeSet::new();
    let total = comps.len().checked_pow(n as u32).ok_or(CoordError::Overflow)?;
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let v = ExactVector::new(ring, digits.iter().map(|&d| comps[d].clone()).collect());
        if let Some(c) = v.canonical() {
            canon.insert(c);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < comps.len() {
                break;
            }
            *d = 0;
        }
    }
    let canon: Vec<ExactVector> = canon.into_iter().collect();
    let ints: Vec<IntVec> = canon.iter().map(integral).collect::<Result<_, _>>()?;

    let words = canon.len().div_ceil(64);
    let adj: Vec<Bits> = (0..canon.len())
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..canon.len() {
                if i != j && int_orthogonal(ring, &ints[i], &ints[j]) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    let cliques = n_cliques(&adj, n, budget)?;
    if cliques.is_empty() {
        return Err(CoordError::NoCliques(n));
    }
    let mut used: Vec<usize> = cliques.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let label_of: std::collections::HashMap<usize, VertexLabel> =
        used.iter().enumerate().map(|(i, &v)| (v, VertexLabel::from_index(i))).collect();

    let edges: Vec<Vec<VertexLabel>> = cliques.iter().map(|c| c.iter().map(|v| label_of[v]).collect()).collect();
    let h = Mmph::from_edges(n, edges).expect("cliques are distinct and nonempty");
    let vectors: IndexMap<VertexLabel, ExactVector> =
        used.iter().map(|&v| (label_of[&v], canon[v].clone())).collect();
    let c = Coordinatization::new(ring, n, vectors)?;
    Ok((h, c))
}

/// A connected piece of a generated master.
#[derive(Clone, Debug)]
pub struct MasterPart {
    pub hypergraph: Mmph,
    pub coordinatization: Coordinatization,
    /// `None` when the bounded search gave up.
    pub binary: Option<bool>,
    /// How many pieces, this one included, are carried onto each other by a
    /// diagonal matrix of ring units.
    pub copies: usize,
}

fn units(ring: Ring) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::one(ring)];
    if ring == Ring::Eisenstein {
        out.push(ExactScalar::alpha(ring));
        out.push(ExactScalar::omega_squared());
    }
    let neg: Vec<ExactScalar> = out.iter().map(|u| -u).collect();
    out.extend(neg);
    out
}

fn phase_related(a: &Coordinatization, b: &Coordinatization) -> bool {
    if a.vectors().len() != b.vectors().len() {
        return false;
    }
    let target: HashSet<&ExactVector> = b.vectors().values().collect();
    let us = units(a.ring());
    let n = a.dimension();
    // the first coordinate is fixed since vectors are taken up to scalars
    let mut digits = vec![0usize; n.saturating_sub(1)];
    loop {
        let related = a.vectors().values().all(|v| {
            let comps = v
                .components()
                .iter()
                .enumerate()
                .map(|(i, x)| if i == 0 { x.clone() } else { x * &us[digits[i - 1]] })
                .collect();
            ExactVector::new(a.ring(), comps).canonical().is_some_and(|w| target.contains(&w))
        });
        if related {
            return true;
        }
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < us.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            return false;
        }
    }
}

/// Splits a generated master into connected pieces, keeping one
/// representative of each family of unit-phase copies. Binarity of each
/// kept piece is searched with at most `max_decisions` branchings.
pub fn split_master(h: &Mmph, c: &Coordinatization, max_decisions: u64) -> Result<Vec<MasterPart>, CoordError> {
    let mut parts: Vec<MasterPart> = Vec::new();
    for p in connected_components(h) {
        let pc = c.restrict(&p)?;
        let same = parts.iter_mut().find(|q| {
            (q.hypergraph.k(), q.hypergraph.l()) == (p.k(), p.l()) && phase_related(&pc, &q.coordinatization)
        });
        if let Some(q) = same {
            q.copies += 1;
            continue;
        }
        let binary = match find_assignment_bounded(&p, max_decisions) {
            Bounded::Found(_) => Some(true),
            Bounded::NonBinary => Some(false),
            Bounded::GaveUp => None,
        };
        parts.push(MasterPart { hypergraph: p, coordinatization: pc, binary, copies: 1 });
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::verify_coordinatization;

    fn ints(ring: Ring, xs: &[i64]) -> Vec<ExactScalar> {
        xs.iter().map(|&x| ExactScalar::int(ring, x)).collect()
    }

    #[test]
    fn three_dim_axes_and_diagonals() {
        // {0,1} in dimension 3: only the standard basis forms an orthogonal triple
        let (h, c) = vecfind_master(3, &ints(Ring::Rational, &[0, 1]), Ring::Rational, VECFIND_BUDGET).unwrap();
        assert_eq!((h.k(), h.l()), (3, 1));
        assert!(verify_coordinatization(&h, &c).unwrap().passed);
    }

    #[test]
    fn bad_alphabets() {
        assert_eq!(
            vecfind_master(3, &ints(Ring::Rational, &[1, -1]), Ring::Rational, 10).unwrap_err(),
            CoordError::BadComponents
        );
        assert_eq!(
            vecfind_master(3, &ints(Ring::Rational, &[0, 1, -1]), Ring::Rational, 1).unwrap_err(),
            CoordError::BudgetExceeded(1)
        );
    }

    #[test]
    fn dim4_signs_split_into_peres_and_a_binary_piece() {
        let comps = ints(Ring::Rational, &[0, 1, -1]);
        let (h, c) = vecfind_master(4, &comps, Ring::Rational, VECFIND_BUDGET).unwrap();
        let parts = split_master(&h, &c, 1_000_000).unwrap();
        let got: Vec<_> = parts.iter().map(|p| (p.hypergraph.k(), p.hypergraph.l(), p.binary, p.copies)).collect();
        assert_eq!(got, [(24, 24, Some(false), 1), (16, 8, Some(true), 1)]);
    }

    #[test]
    fn bitset_iteration() {
        let b = vec![0b1010u64, 1];
        assert_eq!(ones(&b).collect::<Vec<_>>(), [1, 3, 64]);
        assert_eq!(count(&b), 3);
    }
}
