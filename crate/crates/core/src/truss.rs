//! Truss numbers by support peeling, and k-truss extraction.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::census::{for_each_triangle, type_support};
use crate::graph::DirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrussType {
    Cycle,
    Flow,
}

impl TrussType {
    pub const ALL: [TrussType; 2] = [TrussType::Cycle, TrussType::Flow];

    pub fn as_str(self) -> &'static str {
        match self {
            TrussType::Cycle => "cycle",
            TrussType::Flow => "flow",
        }
    }
}

impl fmt::Display for TrussType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TrussType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cycle" | "c" => Ok(TrussType::Cycle),
            "flow" | "f" => Ok(TrussType::Flow),
            other => Err(format!("unknown truss type {other:?} (expected cycle or flow)")),
        }
    }
}

/// Truss number of every edge for one triangle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussAssignment {
    pub truss_type: TrussType,
    /// Indexed by edge index.
    pub numbers: Vec<u32>,
    pub k_max: u32,
}

impl TrussAssignment {
    fn new(truss_type: TrussType, numbers: Vec<u32>) -> Self {
        let k_max = numbers.iter().copied().max().unwrap_or(0);
        TrussAssignment { truss_type, numbers, k_max }
    }

    pub fn edge_count(&self) -> usize {
        self.numbers.len()
    }

    /// Edges with truss number at least `k`.
    pub fn edges_at_least(&self, k: u32) -> Vec<usize> {
        (0..self.numbers.len()).filter(|&e| self.numbers[e] >= k).collect()
    }
}

/// One maximal k-truss: a weakly connected component of the edges whose truss
/// number is at least `level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrussComponent {
    pub truss_type: TrussType,
    pub level: u32,
    /// Edge indices, ascending.
    pub edges: Vec<usize>,
    /// Node indices, ascending.
    pub nodes: Vec<usize>,
}

/// Truss numbers by peeling.
///
/// Edges are kept in a bucket queue keyed by current support. The edge with the
/// smallest support is removed and gets that support as its truss number; every
/// triangle it still closes is destroyed, lowering the support of the two other
/// edges, but never below the level currently being peeled.
pub fn truss_numbers(g: &DirectedGraph, t: TrussType) -> TrussAssignment {
    let m = g.edge_count();
    if m == 0 {
        return TrussAssignment::new(t, Vec::new());
    }
    let mut sup = type_support(g, t);
    let max_sup = sup.iter().copied().max().unwrap_or(0) as usize;

    // Edges sorted by support (counting sort); bin[s] is where support s starts.
    let mut bin = vec![0usize; max_sup + 2];
    for &s in &sup {
        bin[s as usize + 1] += 1;
    }
    for s in 1..bin.len() {
        bin[s] += bin[s - 1];
    }
    let mut order = vec![0usize; m];
    let mut pos = vec![0usize; m];
    {
        let mut fill = bin.clone();
        for e in 0..m {
            let s = sup[e] as usize;
            pos[e] = fill[s];
            order[fill[s]] = e;
            fill[s] += 1;
        }
    }

    let mut alive = vec![true; m];
    let mut numbers = vec![0u32; m];
    let mut partners = Vec::new();
    for i in 0..m {
        let e = order[i];
        let level = sup[e];
        numbers[e] = level;
        alive[e] = false;

        partners.clear();
        for_each_triangle(g, e, t, |x, y| {
            if alive[x] && alive[y] {
                partners.push(x);
                partners.push(y);
            }
        });
        for &x in &partners {
            let s = sup[x];
            if s > level {
                // move x to the front of its bin, then shift the bin boundary
                let s = s as usize;
                let front = bin[s];
                let y = order[front];
                if y != x {
                    order.swap(front, pos[x]);
                    pos[y] = pos[x];
                    pos[x] = front;
                }
                bin[s] += 1;
                sup[x] -= 1;
            }
        }
    }
    TrussAssignment::new(t, numbers)
}

/// Truss numbers by literal fixed-point pruning, for small graphs.
///
/// For each `k = 0, 1, ...` edges whose support among the remaining edges is
/// below `k` are deleted until none is; survivors get truss number at least `k`.
/// Supports are recounted from scratch every round by scanning all third nodes.
pub fn naive_truss_numbers(g: &DirectedGraph, t: TrussType) -> TrussAssignment {
    let m = g.edge_count();
    let n = g.node_count();
    let mut numbers = vec![0u32; m];
    let mut present: HashSet<(usize, usize)> = g.edges().iter().copied().collect();

    let count = |present: &HashSet<(usize, usize)>, i: usize, j: usize| -> u32 {
        let has = |a: usize, b: usize| present.contains(&(a, b));
        let mut c = 0;
        for k in (0..n).filter(|&k| k != i && k != j) {
            match t {
                TrussType::Cycle => c += u32::from(has(j, k) && has(k, i)),
                TrussType::Flow => {
                    c += u32::from(has(i, k) && has(j, k));
                    c += u32::from(has(i, k) && has(k, j));
                    c += u32::from(has(k, i) && has(k, j));
                }
            }
        }
        c
    };

    let mut k = 0u32;
    while !present.is_empty() {
        loop {
            let doomed: Vec<(usize, usize)> = present
                .iter()
                .copied()
                .filter(|&(i, j)| count(&present, i, j) < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for p in doomed {
                present.remove(&p);
            }
        }
        for &(i, j) in &present {
            numbers[g.edge_index(i, j).expect("edge from graph")] = k;
        }
        k += 1;
    }
    TrussAssignment::new(t, numbers)
}

pub fn max_truss_number(g: &DirectedGraph, t: TrussType) -> u32 {
    truss_numbers(g, t).k_max
}

/// Maximal k-trusses given precomputed truss numbers.
///
/// Components come in order of their smallest edge index. `k = 0` gives the
/// weakly connected components of the edge set (isolated nodes are not trusses).
pub fn truss_components(g: &DirectedGraph, a: &TrussAssignment, k: u32) -> Vec<TrussComponent> {
    let picked = a.edges_at_least(k);
    let mut parent: Vec<usize> = (0..g.node_count()).collect();
    for &e in &picked {
        let (s, t) = g.edge(e);
        let (x, y) = (find(&mut parent, s), find(&mut parent, t));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut slot = vec![usize::MAX; g.node_count()];
    let mut out: Vec<TrussComponent> = Vec::new();
    for &e in &picked {
        let root = find(&mut parent, g.edge(e).0);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(TrussComponent {
                truss_type: a.truss_type,
                level: k,
                edges: Vec::new(),
                nodes: Vec::new(),
            });
        }
        let (s, t) = g.edge(e);
        let c = &mut out[slot[root]];
        c.edges.push(e);
        c.nodes.push(s);
        c.nodes.push(t);
    }
    for c in &mut out {
        c.nodes.sort_unstable();
        c.nodes.dedup();
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn k_truss_components(g: &DirectedGraph, t: TrussType, k: u32) -> Vec<TrussComponent> {
    truss_components(g, &truss_numbers(g, t), k)
}
