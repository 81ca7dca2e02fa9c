//! Random generation of critical non-KS hypergraphs from masters.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coord::Coordinatization;
use crate::error::{GenerationError, HypergraphError};
use crate::hypergraph::Mmph;
use crate::solver::{classify, criticalize, filter_full_edge_no_m1, is_binary, FullEdgeFilter, Kind};
use crate::structure::{delete_vertices, drop_m1_vertices, strip_edges, Strip};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Strip hyperedges and drop multiplicity-1 vertices.
    M1,
    /// Add hyperedges from a pool, then proceed as M1.
    M2,
    /// Delete vertices until the hypergraph is non-KS.
    M3,
}

/// How M3 deletes vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum M3Mode {
    /// One vertex at a time, stopping at the first non-KS non-binary result.
    FirstHit,
    /// A random number of deletions in `1..=max_delete`, walking the vertices
    /// in random order and skipping any deletion that would make the result
    /// binary or leave no hyperedge of size n.
    Batch { max_delete: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Filters {
    /// Emit only non-binary hypergraphs with a hyperedge smaller than n and
    /// a hyperedge of size n.
    pub require_non_ks: bool,
    pub full_edge: FullEdgeFilter,
}

impl Default for Filters {
    fn default() -> Self {
        Filters { require_non_ks: true, full_edge: FullEdgeFilter::Off }
    }
}

#[derive(Clone, Debug)]
pub struct GenerationConfig {
    pub method: Method,
    pub seed: u64,
    pub runs: usize,
    pub filters: Filters,
    pub master: Mmph,
    pub coordinatization: Option<Coordinatization>,
    pub addition_pool: Option<Mmph>,
    /// Upper bound for the number of hyperedges stripped per run; capped at
    /// l - 1.
    pub max_strip: usize,
    pub m3_mode: M3Mode,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

impl GenerationConfig {
    pub fn new(method: Method, master: Mmph, seed: u64, runs: usize) -> Self {
        let max_strip = master.l().saturating_sub(1);
        GenerationConfig {
            method,
            seed,
            runs,
            filters: Filters::default(),
            master,
            coordinatization: None,
            addition_pool: None,
            max_strip,
            m3_mode: M3Mode::FirstHit,
            workers: 0,
        }
    }
}

/// What happened in one run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    Emitted(Mmph),
    /// The reduced hypergraph was binary.
    Binary,
    /// Nothing was left after reduction.
    Empty,
    /// M3 never left the KS class.
    NotReached,
    /// Rejected by the filters.
    Filtered,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RunSummary {
    pub runs: usize,
    pub emitted: usize,
    pub binary: usize,
    pub empty: usize,
    pub not_reached: usize,
    pub filtered: usize,
}

#[derive(Clone, Debug)]
pub struct Harvest {
    /// Emitted hypergraphs in run order.
    pub outputs: Vec<Mmph>,
    pub outcomes: Vec<Outcome>,
    pub summary: RunSummary,
}

fn passes(h: &Mmph, filters: &Filters) -> bool {
    if filters.require_non_ks {
        let n = h.dimension();
        let has_small = h.edges().iter().any(|e| e.len() < n);
        let has_full = h.edges().iter().any(|e| e.len() == n);
        if !(has_small && has_full) || classify(h).kind != Kind::NonKsNbmmph {
            return false;
        }
    }
    filter_full_edge_no_m1(h, filters.full_edge)
}

fn finish(h: &Mmph, filters: &Filters, rng: &mut ChaCha8Rng) -> Outcome {
    match criticalize(h, rng.random()) {
        Ok(c) if passes(&c, filters) => Outcome::Emitted(c),
        Ok(_) => Outcome::Filtered,
        Err(_) => Outcome::Binary,
    }
}

/// Alternates dropping multiplicity-1 vertices with re-criticalizing while
/// the result stays non-binary.
fn reduce_m1(mut c: Mmph, rng: &mut ChaCha8Rng) -> Mmph {
    loop {
        let Ok(d) = drop_m1_vertices(&c, false) else { return c };
        if d == c || is_binary(&d) {
            return c;
        }
        c = criticalize(&d, rng.random()).expect("checked non-binary");
    }
}

fn strip_phase(h: &Mmph, max_strip: usize, filters: &Filters, rng: &mut ChaCha8Rng) -> Outcome {
    let cap = max_strip.min(h.l().saturating_sub(1));
    let stripped = if cap == 0 {
        h.clone()
    } else {
        let count = rng.random_range(1..=cap);
        match strip_edges(h, &Strip::Random { count, seed: rng.random() }) {
            Ok(s) => s,
            Err(_) => return Outcome::Empty,
        }
    };
    let Ok(reduced) = drop_m1_vertices(&stripped, true) else { return Outcome::Empty };
    if is_binary(&reduced) {
        return Outcome::Binary;
    }
    let c = criticalize(&reduced, rng.random()).expect("checked non-binary");
    let c = reduce_m1(c, rng);
    if passes(&c, filters) {
        Outcome::Emitted(c)
    } else {
        Outcome::Filtered
    }
}

fn m1_run(master: &Mmph, max_strip: usize, filters: &Filters, rng: &mut ChaCha8Rng) -> Outcome {
    strip_phase(master, max_strip, filters, rng)
}

fn m2_run(base: &Mmph, pool: &Mmph, max_strip: usize, filters: &Filters, rng: &mut ChaCha8Rng) -> Outcome {
    let have: HashSet<_> = base.edge_set_keys().into_iter().collect();
    let extra: Vec<_> = pool
        .label_edges()
        .into_iter()
        .filter(|e| {
            let mut k = e.clone();
            k.sort_unstable();
            !have.contains(&k)
        })
        .collect();
    let mut edges = base.label_edges();
    if !extra.is_empty() {
        let count = rng.random_range(1..=extra.len());
        let mut picked = sample(rng, extra.len(), count).into_vec();
        picked.sort_unstable();
        edges.extend(picked.into_iter().map(|i| extra[i].clone()));
    }
    let dim = base.dimension().max(pool.dimension());
    let Ok(grown) = Mmph::from_edges(dim, edges) else { return Outcome::Empty };
    strip_phase(&grown, max_strip, filters, rng)
}

fn m3_run(master: &Mmph, mode: M3Mode, filters: &Filters, rng: &mut ChaCha8Rng) -> Outcome {
    let mut cur = master.clone();
    match mode {
        M3Mode::FirstHit => loop {
            match classify(&cur).kind {
                Kind::NonKsNbmmph => return finish(&cur, filters, rng),
                Kind::Bmmph => return Outcome::Binary,
                Kind::KsNbmmph => {}
            }
            let v = cur.vertices()[rng.random_range(0..cur.k())];
            match delete_vertices(&cur, &[v]) {
                Ok(next) => cur = next,
                Err(_) => return Outcome::Empty,
            }
        },
        M3Mode::Batch { max_delete } => {
            let depth = rng.random_range(1..=max_delete.max(1));
            let mut order = master.vertices().to_vec();
            order.shuffle(rng);
            let mut done = 0;
            for v in order {
                if done == depth {
                    break;
                }
                if let Ok(next) = delete_vertices(&cur, &[v]) {
                    let full = next.edges().iter().any(|e| e.len() == next.dimension());
                    if full && !is_binary(&next) {
                        cur = next;
                        done += 1;
                    }
                }
            }
            match classify(&cur).kind {
                Kind::NonKsNbmmph => finish(&cur, filters, rng),
                Kind::KsNbmmph => Outcome::NotReached,
                Kind::Bmmph => Outcome::Binary,
            }
        }
    }
}

fn check_config(cfg: &GenerationConfig) -> Result<(), GenerationError> {
    if cfg.runs == 0 {
        return Err(GenerationError::NoRuns);
    }
    match (cfg.method, &cfg.addition_pool) {
        (Method::M2, None) => Err(GenerationError::PoolRequired),
        (Method::M2, Some(pool)) => {
            let base: HashSet<_> = cfg.master.vertices().iter().collect();
            if pool.vertices().iter().any(|v| base.contains(v)) {
                Ok(())
            } else {
                Err(HypergraphError::DisjointPool.into())
            }
        }
        (_, Some(_)) => Err(GenerationError::PoolNotAllowed),
        (_, None) => Ok(()),
    }
}

/// Runs `cfg.runs` independent runs, run `i` seeded with `seed + i`.
/// Results are collected in run order whatever the number of workers.
pub fn generate(cfg: &GenerationConfig) -> Result<Harvest, GenerationError> {
    check_config(cfg)?;
    let one = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        match cfg.method {
            Method::M1 => m1_run(&cfg.master, cfg.max_strip, &cfg.filters, &mut rng),
            Method::M2 => {
                let pool = cfg.addition_pool.as_ref().expect("checked");
                m2_run(&cfg.master, pool, cfg.max_strip, &cfg.filters, &mut rng)
            }
            Method::M3 => m3_run(&cfg.master, cfg.m3_mode, &cfg.filters, &mut rng),
        }
    };
    let outcomes: Vec<Outcome> = if cfg.workers == 0 {
        (0..cfg.runs).into_par_iter().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| GenerationError::Workers(e.to_string()))?;
        pool.install(|| (0..cfg.runs).into_par_iter().map(one).collect())
    };

    let mut summary = RunSummary { runs: cfg.runs, ..RunSummary::default() };
    let mut outputs = Vec::new();
    for o in &outcomes {
        match o {
            Outcome::Emitted(h) => {
                summary.emitted += 1;
                outputs.push(h.clone());
            }
            Outcome::Binary => summary.binary += 1,
            Outcome::Empty => summary.empty += 1,
            Outcome::NotReached => summary.not_reached += 1,
            Outcome::Filtered => summary.filtered += 1,
        }
    }
    Ok(Harvest { outputs, outcomes, summary })
}

/// M1 runs on `master` with the default strip bound.
pub fn run_m1(master: &Mmph, seed: u64, runs: usize, filters: Filters) -> Result<Vec<Mmph>, GenerationError> {
    let cfg = GenerationConfig { filters, ..GenerationConfig::new(Method::M1, master.clone(), seed, runs) };
    Ok(generate(&cfg)?.outputs)
}

/// M2 runs growing `base` from `pool`.
pub fn run_m2(base: &Mmph, pool: &Mmph, seed: u64, runs: usize, filters: Filters) -> Result<Vec<Mmph>, GenerationError> {
    let mut cfg = GenerationConfig { filters, ..GenerationConfig::new(Method::M2, base.clone(), seed, runs) };
    cfg.max_strip = base.l().max(pool.l());
    cfg.addition_pool = Some(pool.clone());
    Ok(generate(&cfg)?.outputs)
}

/// M3 runs on `master`.
pub fn run_m3(master: &Mmph, seed: u64, runs: usize, mode: M3Mode, filters: Filters) -> Result<Vec<Mmph>, GenerationError> {
    let cfg = GenerationConfig { filters, m3_mode: mode, ..GenerationConfig::new(Method::M3, master.clone(), seed, runs) };
    Ok(generate(&cfg)?.outputs)
}

/// Counts of (k, l) shapes.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Distribution {
    /// Keyed by (l, k) so iteration follows the CSV order.
    cells: BTreeMap<(usize, usize), u64>,
    pub total: u64,
}

impl Distribution {
    pub fn count(&self, k: usize, l: usize) -> u64 {
        self.cells.get(&(l, k)).copied().unwrap_or(0)
    }

    /// `(k, l, count)` sorted by l, then k.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.cells.iter().map(|(&(l, k), &c)| (k, l, c))
    }

    /// The cell with the smallest l (and smallest k among those).
    pub fn min_l_cell(&self) -> Option<(usize, usize, u64)> {
        self.cells().next()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,l,count\n");
        for (k, l, c) in self.cells() {
            writeln!(s, "{k},{l},{c}").expect("write to string");
        }
        s
    }
}

pub fn collect_distribution(results: &[Mmph]) -> Distribution {
    let mut d = Distribution::default();
    for h in results {
        *d.cells.entry((h.l(), h.k())).or_default() += 1;
        d.total += 1;
    }
    d
}
