//! Degree-preserving randomization (directed configuration model by edge swaps)
//! and ensemble truss-number distributions.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::metrics::cdf_from_numbers;
use crate::truss::{truss_numbers, TrussType};

pub const DEFAULT_SWAPS_PER_EDGE: u64 = 10;
pub const DEFAULT_ATTEMPTS_PER_EDGE: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewireConfig {
    pub target_successful_swaps: u64,
    pub max_attempts: u64,
    pub seed: u64,
}

impl RewireConfig {
    pub fn new(target_successful_swaps: u64, max_attempts: u64, seed: u64) -> Result<Self> {
        if target_successful_swaps == 0 {
            return Err(Error::arg("target_successful_swaps must be positive"));
        }
        if max_attempts < target_successful_swaps {
            return Err(Error::arg(format!(
                "max_attempts ({max_attempts}) is below target_successful_swaps ({target_successful_swaps})"
            )));
        }
        Ok(RewireConfig { target_successful_swaps, max_attempts, seed })
    }

    /// Budget scaled by the number of edges: `swaps_per_edge * |E|` successful
    /// swaps, at most `attempts_per_edge * |E|` proposals.
    pub fn per_edge(edges: usize, swaps_per_edge: u64, attempts_per_edge: u64, seed: u64) -> Result<Self> {
        let m = edges.max(1) as u64;
        Self::new(swaps_per_edge.saturating_mul(m), attempts_per_edge.saturating_mul(m), seed)
    }

    /// 10 |E| swaps, 100 |E| attempts.
    pub fn for_graph(g: &DirectedGraph, seed: u64) -> Self {
        Self::per_edge(g.edge_count(), DEFAULT_SWAPS_PER_EDGE, DEFAULT_ATTEMPTS_PER_EDGE, seed)
            .expect("default budget is valid")
    }
}

/// Outcome counters of one rewiring run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RewireStats {
    pub attempts: u64,
    pub successful_swaps: u64,
}

/// Generator for sample `index` of an ensemble seeded with `seed`: the master seed
/// picks the key and the sample index picks an independent ChaCha stream.
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Randomizes `g` by double-edge swaps keeping every in- and out-degree.
///
/// Each step picks two distinct edges `a -> b`, `c -> d` and proposes
/// `a -> d`, `c -> b`; proposals creating a self-loop or an existing edge are
/// rejected. Stops after the target number of accepted swaps or when the attempt
/// budget is spent. Edge slots keep their positions, so edge `i` of the result is
/// the rewired edge `i` of the input.
pub fn rewire(g: &DirectedGraph, cfg: &RewireConfig) -> DirectedGraph {
    rewire_with_stats(g, cfg).0
}

pub fn rewire_with_stats(g: &DirectedGraph, cfg: &RewireConfig) -> (DirectedGraph, RewireStats) {
    rewire_with_rng(g, cfg, &mut sample_rng(cfg.seed, 0))
}

fn rewire_with_rng(g: &DirectedGraph, cfg: &RewireConfig, rng: &mut ChaCha8Rng) -> (DirectedGraph, RewireStats) {
    let mut edges = g.edges().to_vec();
    let m = edges.len();
    let mut stats = RewireStats::default();
    if m >= 2 {
        let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
        while stats.successful_swaps < cfg.target_successful_swaps && stats.attempts < cfg.max_attempts {
            stats.attempts += 1;
            let x = rng.gen_range(0..m);
            let mut y = rng.gen_range(0..m - 1);
            if y >= x {
                y += 1;
            }
            let (a, b) = edges[x];
            let (c, d) = edges[y];
            if a == d || c == b || present.contains(&(a, d)) || present.contains(&(c, b)) {
                continue;
            }
            present.remove(&(a, b));
            present.remove(&(c, d));
            present.insert((a, d));
            present.insert((c, b));
            edges[x] = (a, d);
            edges[y] = (c, b);
            stats.successful_swaps += 1;
        }
    }
    let out = g.with_edges(edges).expect("swaps keep the graph simple");
    (out, stats)
}

/// Rewired copies `0..samples` of `g`, sample `i` drawn from its own stream.
pub fn rewire_samples(g: &DirectedGraph, samples: usize, cfg: &RewireConfig) -> Vec<(DirectedGraph, RewireStats)> {
    (0..samples)
        .into_par_iter()
        .map(|i| rewire_with_rng(g, cfg, &mut sample_rng(cfg.seed, i as u64)))
        .collect()
}

/// Mean cumulative truss-number distribution over a randomized ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleCdf {
    pub truss_type: TrussType,
    pub sample_count: usize,
    /// `mean_cdf[k]` is the average over samples of the fraction of edges with
    /// truss number at most `k`. Values past the end are 1.
    pub mean_cdf: Vec<f64>,
    pub per_sample_kmax: Vec<u32>,
}

impl EnsembleCdf {
    pub fn cdf_at(&self, k: usize) -> f64 {
        self.mean_cdf.get(k).copied().unwrap_or(1.0)
    }

    /// Mean frequency distribution, the successive differences of `mean_cdf`.
    pub fn mean_pmf(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.mean_cdf
            .iter()
            .map(|&c| {
                let f = c - prev;
                prev = c;
                f
            })
            .collect()
    }
}

/// Averages the truss-number CDF over `samples` rewired copies of `g`.
///
/// Sample `i` uses stream `i` of the generator keyed by `cfg.seed`, and the mean
/// is reduced in sample order, so the result does not depend on scheduling.
pub fn ensemble_truss_cdf(g: &DirectedGraph, t: TrussType, samples: usize, cfg: &RewireConfig) -> Result<EnsembleCdf> {
    if samples == 0 {
        return Err(Error::arg("ensemble needs at least one sample"));
    }
    let per_sample: Vec<(Vec<f64>, u32)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (h, _) = rewire_with_rng(g, cfg, &mut sample_rng(cfg.seed, i as u64));
            let a = truss_numbers(&h, t);
            (cdf_from_numbers(&a.numbers), a.k_max)
        })
        .collect();
    Ok(mean_of_cdfs(t, per_sample))
}

fn mean_of_cdfs(t: TrussType, per_sample: Vec<(Vec<f64>, u32)>) -> EnsembleCdf {
    let len = per_sample.iter().map(|(c, _)| c.len()).max().unwrap_or(0);
    let n = per_sample.len() as f64;
    let mut mean_cdf = vec![0.0; len];
    for (cdf, _) in &per_sample {
        for (k, acc) in mean_cdf.iter_mut().enumerate() {
            *acc += cdf.get(k).copied().unwrap_or(1.0);
        }
    }
    for v in &mut mean_cdf {
        *v /= n;
    }
    EnsembleCdf {
        truss_type: t,
        sample_count: per_sample.len(),
        mean_cdf,
        per_sample_kmax: per_sample.iter().map(|&(_, k)| k).collect(),
    }
}
