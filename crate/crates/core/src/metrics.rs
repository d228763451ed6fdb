//! Truss-number distributions and the summary measures built on them.
//!
//! Frequencies are kept as integer edge counts and divided by the edge count only
//! when a real value is requested.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::randomize::EnsembleCdf;
use crate::truss::{TrussAssignment, TrussType};

/// Threshold both cumulative distributions must exceed at the cutoff `K`.
pub const D_CUTOFF_LEVEL: f64 = 0.9;

/// Edge counts per truss number, `counts[k]` for `k = 0..=k_max`.
fn histogram(numbers: &[u32]) -> Vec<u64> {
    let k_max = numbers.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; k_max + 1];
    for &k in numbers {
        counts[k as usize] += 1;
    }
    counts
}

fn cumulative(counts: &[u64], total: u64) -> Vec<f64> {
    let mut acc = 0u64;
    counts
        .iter()
        .map(|&c| {
            acc += c;
            acc as f64 / total as f64
        })
        .collect()
}

/// `F(k)` for `k = 0..=k_max` from raw truss numbers; empty input gives `[1.0]`.
pub(crate) fn cdf_from_numbers(numbers: &[u32]) -> Vec<f64> {
    if numbers.is_empty() {
        return vec![1.0];
    }
    cumulative(&histogram(numbers), numbers.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrussDistribution {
    pub truss_type: TrussType,
    pub edge_count: usize,
    /// Edges per truss number.
    pub counts: Vec<u64>,
    /// Frequency `f(k)`.
    pub f: Vec<f64>,
    /// Cumulative `F(k) = sum_{k' <= k} f(k')`.
    #[serde(rename = "F")]
    pub cdf: Vec<f64>,
    /// Smallest `k` with `F(k) >= 0.5`.
    pub k_med: u32,
    pub k_max: u32,
}

impl TrussDistribution {
    pub fn cdf_at(&self, k: usize) -> f64 {
        self.cdf.get(k).copied().unwrap_or(1.0)
    }
}

pub fn truss_distribution(a: &TrussAssignment) -> Result<TrussDistribution> {
    if a.numbers.is_empty() {
        return Err(Error::NoEdges);
    }
    let m = a.numbers.len() as u64;
    let counts = histogram(&a.numbers);
    let f = counts.iter().map(|&c| c as f64 / m as f64).collect();
    let cdf = cumulative(&counts, m);
    // 2 * cumulative >= m, on integers
    let mut acc = 0u64;
    let k_med = counts
        .iter()
        .position(|&c| {
            acc += c;
            2 * acc >= m
        })
        .expect("cumulative count reaches m") as u32;
    Ok(TrussDistribution {
        truss_type: a.truss_type,
        edge_count: a.numbers.len(),
        k_max: (counts.len() - 1) as u32,
        counts,
        f,
        cdf,
        k_med,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DMeasure {
    #[serde(rename = "D")]
    pub d: f64,
    /// Cutoff `K`: first `k` where both distributions exceed 0.9.
    #[serde(rename = "K")]
    pub k_cutoff: u32,
    /// `K = 0`: `D` is the single difference `F_rand(0) - F_orig(0)`.
    pub degenerate: bool,
}

/// `D = (1/K) * sum_{k=0}^{K} (F_rand(k) - F_orig(k))` for cumulative
/// distributions given as slices (values past the end count as 1).
pub fn d_measure_from_cdfs(orig: &[f64], rand: &[f64]) -> DMeasure {
    let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(1.0);
    let mut k = 0usize;
    while !(at(orig, k) > D_CUTOFF_LEVEL && at(rand, k) > D_CUTOFF_LEVEL) {
        k += 1;
    }
    if k == 0 {
        return DMeasure {
            d: at(rand, 0) - at(orig, 0),
            k_cutoff: 0,
            degenerate: true,
        };
    }
    let sum: f64 = (0..=k).map(|j| at(rand, j) - at(orig, j)).sum();
    DMeasure {
        d: sum / k as f64,
        k_cutoff: k as u32,
        degenerate: false,
    }
}

/// Truss-orientedness of a network relative to its randomized ensemble.
pub fn d_measure(orig: &TrussDistribution, rand: &EnsembleCdf) -> DMeasure {
    d_measure_from_cdfs(&orig.cdf, &rand.mean_cdf)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RMeasure {
    /// `None` when no edge exceeds either median.
    #[serde(rename = "R")]
    pub value: Option<f64>,
    /// Edges above both medians.
    pub both: u64,
    /// Edges above at least one median.
    pub either: u64,
    pub k_med_cycle: u32,
    pub k_med_flow: u32,
}

/// Overlap of cohesive cycle and flow trusses: among edges whose cycle or flow
/// truss number is strictly above the respective median, the fraction above both.
pub fn r_measure(cycle: &TrussAssignment, flow: &TrussAssignment) -> Result<RMeasure> {
    check_same_edges(cycle, flow)?;
    let med_c = truss_distribution(cycle)?.k_med;
    let med_f = truss_distribution(flow)?.k_med;
    let (mut both, mut either) = (0u64, 0u64);
    for (&kc, &kf) in cycle.numbers.iter().zip(&flow.numbers) {
        let (hc, hf) = (kc > med_c, kf > med_f);
        both += u64::from(hc && hf);
        either += u64::from(hc || hf);
    }
    Ok(RMeasure {
        value: (either > 0).then(|| both as f64 / either as f64),
        both,
        either,
        k_med_cycle: med_c,
        k_med_flow: med_f,
    })
}

fn check_same_edges(a: &TrussAssignment, b: &TrussAssignment) -> Result<()> {
    if a.numbers.len() != b.numbers.len() {
        return Err(Error::arg(format!(
            "assignments cover different edge sets ({} vs {} edges)",
            a.numbers.len(),
            b.numbers.len()
        )));
    }
    Ok(())
}

/// Twice the number of mutually linked node pairs divided by the number of edges.
pub fn reciprocity(g: &DirectedGraph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mutual = g.edges().iter().filter(|&&(s, t)| g.has_edge(t, s)).count();
    // each mutual pair contributes both of its edges
    Ok(mutual as f64 / g.edge_count() as f64)
}

/// Edge counts over `(k_cycle, k_flow)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointDistribution {
    pub edge_count: usize,
    /// `counts[kc][kf]`, dense over `0..=k_max` of each type.
    pub counts: Vec<Vec<u64>>,
}

impl JointDistribution {
    pub fn frequency(&self, kc: usize, kf: usize) -> f64 {
        let c = self.counts.get(kc).and_then(|row| row.get(kf)).copied().unwrap_or(0);
        c as f64 / self.edge_count as f64
    }

    pub fn cycle_marginal(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn flow_marginal(&self) -> Vec<u64> {
        let width = self.counts.first().map_or(0, Vec::len);
        (0..width).map(|kf| self.counts.iter().map(|row| row[kf]).sum()).collect()
    }

    /// Dense matrix of frequencies: a header row of `k_flow` values, then one row
    /// per `k_cycle` value.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let width = self.counts.first().map_or(0, Vec::len);
        write!(w, "k_cycle\\k_flow")?;
        for kf in 0..width {
            write!(w, "\t{kf}")?;
        }
        writeln!(w)?;
        for (kc, row) in self.counts.iter().enumerate() {
            write!(w, "{kc}")?;
            for kf in 0..row.len() {
                write!(w, "\t{}", self.frequency(kc, kf))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

pub fn joint_distribution(cycle: &TrussAssignment, flow: &TrussAssignment) -> Result<JointDistribution> {
    check_same_edges(cycle, flow)?;
    if cycle.numbers.is_empty() {
        return Err(Error::NoEdges);
    }
    let mut counts = vec![vec![0u64; flow.k_max as usize + 1]; cycle.k_max as usize + 1];
    for (&kc, &kf) in cycle.numbers.iter().zip(&flow.numbers) {
        counts[kc as usize][kf as usize] += 1;
    }
    Ok(JointDistribution {
        edge_count: cycle.numbers.len(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truss::truss_numbers;

    fn assignment(t: TrussType, numbers: Vec<u32>) -> TrussAssignment {
        let k_max = numbers.iter().copied().max().unwrap_or(0);
        TrussAssignment { truss_type: t, numbers, k_max }
    }

    #[test]
    fn uniform_distribution() {
        let d = truss_distribution(&assignment(TrussType::Cycle, vec![1, 1, 1])).unwrap();
        assert_eq!(d.f, vec![0.0, 1.0]);
        assert_eq!(d.cdf, vec![0.0, 1.0]);
        assert_eq!(d.k_med, 1);
        assert_eq!(d.k_max, 1);
    }

    #[test]
    fn cycle_with_pendant_edge() {
        let g = DirectedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]).unwrap();
        let d = truss_distribution(&truss_numbers(&g, TrussType::Cycle)).unwrap();
        assert_eq!(d.f, vec![0.25, 0.75]);
        assert_eq!(d.k_med, 1);
    }

    #[test]
    fn median_at_exact_half() {
        let d = truss_distribution(&assignment(TrussType::Flow, vec![0, 0, 3, 3])).unwrap();
        assert_eq!(d.k_med, 0);
        assert_eq!(d.cdf, vec![0.5, 0.5, 0.5, 1.0]);
    }

    #[test]
    fn empty_distribution_is_error() {
        assert!(truss_distribution(&assignment(TrussType::Flow, vec![])).is_err());
    }

    #[test]
    fn d_of_identical_cdfs_is_zero() {
        let f = [0.2, 0.6, 0.95, 1.0];
        let d = d_measure_from_cdfs(&f, &f);
        assert_eq!(d.d, 0.0);
        assert_eq!(d.k_cutoff, 2);
    }

    #[test]
    fn d_hand_example() {
        let d = d_measure_from_cdfs(&[0.5, 0.8, 0.95], &[0.95, 1.0, 1.0]);
        assert_eq!(d.k_cutoff, 2);
        assert!((d.d - 0.35).abs() < 1e-12);
    }

    #[test]
    fn d_degenerate_cutoff() {
        let d = d_measure_from_cdfs(&[0.92, 1.0], &[0.99]);
        assert!(d.degenerate);
        assert_eq!(d.k_cutoff, 0);
        assert!((d.d - 0.07).abs() < 1e-12);
    }

    #[test]
    fn r_undefined_when_all_equal() {
        let c = assignment(TrussType::Cycle, vec![2; 5]);
        let f = assignment(TrussType::Flow, vec![6; 5]);
        let r = r_measure(&c, &f).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.either, 0);
    }

    #[test]
    fn r_counts_strictly_above_median() {
        let c = assignment(TrussType::Cycle, vec![0, 0, 0, 1, 2, 2]);
        let f = assignment(TrussType::Flow, vec![0, 0, 1, 0, 3, 0]);
        let r = r_measure(&c, &f).unwrap();
        assert_eq!((r.k_med_cycle, r.k_med_flow), (0, 0));
        assert_eq!((r.both, r.either), (1, 4));
        assert_eq!(r.value, Some(0.25));
    }

    #[test]
    fn mismatched_edge_sets_rejected() {
        let c = assignment(TrussType::Cycle, vec![0, 1]);
        let f = assignment(TrussType::Flow, vec![0]);
        assert!(r_measure(&c, &f).is_err());
        assert!(joint_distribution(&c, &f).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        let pair = DirectedGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(reciprocity(&pair).unwrap(), 1.0);
        let cycle = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(reciprocity(&cycle).unwrap(), 0.0);
        let mixed = DirectedGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!((reciprocity(&mixed).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(reciprocity(&DirectedGraph::from_edges(2, &[]).unwrap()).is_err());
    }

    #[test]
    fn joint_of_three_cycle() {
        let g = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let j = joint_distribution(&truss_numbers(&g, TrussType::Cycle), &truss_numbers(&g, TrussType::Flow))
            .unwrap();
        assert_eq!(j.frequency(1, 0), 1.0);
        assert_eq!(j.cycle_marginal(), vec![0, 3]);
        assert_eq!(j.flow_marginal(), vec![3]);
        let mut out = Vec::new();
        j.write_tsv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "k_cycle\\k_flow\t0\n0\t0\n1\t1\n");
    }
}
