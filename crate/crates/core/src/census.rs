//! Cycle- and flow-triangle census.
//!
//! Triangles are counted as pattern occurrences: a node triple joined in both
//! directions on every side carries two cycle triangles and six flow triangles.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::DirectedGraph;
use crate::truss::TrussType;

/// Per-edge triangle counts, indexed by edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSupport {
    pub cycle: Vec<u32>,
    pub flow: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleTotals {
    pub cycle_count: u64,
    pub flow_count: u64,
}

/// Calls `f` with the edge indices of the entries that two sorted adjacency
/// lists share a neighbor on.
#[inline]
fn intersect(a: &[(usize, usize)], b: &[(usize, usize)], mut f: impl FnMut(usize, usize)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i].1, b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Visits every triangle occurrence of type `t` that contains edge `e`, passing
/// the indices of its two other edges.
pub(crate) fn for_each_triangle(
    g: &DirectedGraph,
    e: usize,
    t: TrussType,
    mut f: impl FnMut(usize, usize),
) {
    let (i, j) = g.edge(e);
    match t {
        // i -> j -> k -> i
        TrussType::Cycle => intersect(g.out_adj(j), g.in_adj(i), &mut f),
        TrussType::Flow => {
            // e = source->middle: i -> c, j -> c
            intersect(g.out_adj(i), g.out_adj(j), &mut f);
            // e = source->sink: i -> b, b -> j
            intersect(g.out_adj(i), g.in_adj(j), &mut f);
            // e = middle->sink: a -> i, a -> j
            intersect(g.in_adj(i), g.in_adj(j), &mut f);
        }
    }
}

fn support(g: &DirectedGraph, t: TrussType) -> Vec<u32> {
    (0..g.edge_count())
        .into_par_iter()
        .map(|e| {
            let mut n = 0u32;
            for_each_triangle(g, e, t, |_, _| n += 1);
            n
        })
        .collect()
}

/// Number of cycle triangles each edge belongs to.
pub fn cycle_support(g: &DirectedGraph) -> Vec<u32> {
    support(g, TrussType::Cycle)
}

/// Number of flow triangles (feed-forward loops) each edge belongs to, in any role.
pub fn flow_support(g: &DirectedGraph) -> Vec<u32> {
    support(g, TrussType::Flow)
}

pub fn type_support(g: &DirectedGraph, t: TrussType) -> Vec<u32> {
    support(g, t)
}

pub fn edge_support(g: &DirectedGraph) -> EdgeSupport {
    EdgeSupport {
        cycle: cycle_support(g),
        flow: flow_support(g),
    }
}

impl EdgeSupport {
    pub fn totals(&self) -> TriangleTotals {
        let sum = |v: &[u32]| v.iter().map(|&x| u64::from(x)).sum::<u64>() / 3;
        TriangleTotals {
            cycle_count: sum(&self.cycle),
            flow_count: sum(&self.flow),
        }
    }
}

pub fn triangle_totals(g: &DirectedGraph) -> TriangleTotals {
    edge_support(g).totals()
}
