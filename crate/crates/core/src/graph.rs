//! Simple directed graph, edge-list ingestion and connectivity.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Directed graph without self-loops and with at most one edge per ordered pair.
///
/// Nodes are dense indices `0..node_count()`; every node keeps the token it was
/// read under and optionally a label. Edges are indexed `0..edge_count()` in
/// insertion order. Adjacency lists are sorted by neighbor and carry the edge
/// index of the corresponding link, so neighborhood intersections yield edge
/// indices directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    tokens: Vec<String>,
    labels: Vec<Option<String>>,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<(usize, usize)>>,
    in_adj: Vec<Vec<(usize, usize)>>,
    origin_nodes: Option<Vec<usize>>,
    origin_edges: Option<Vec<usize>>,
}

/// Counters collected while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub nodes_read: usize,
    pub edges_kept: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl IngestReport {
    pub fn edge_lines(&self) -> usize {
        self.edges_kept + self.self_loops_dropped + self.duplicates_dropped
    }
}

impl DirectedGraph {
    /// Builds a graph on nodes `0..n`; tokens are the decimal indices.
    ///
    /// Fails on self-loops, repeated ordered pairs and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let tokens = (0..n).map(|v| v.to_string()).collect();
        Self::from_parts(tokens, vec![None; n], edges.to_vec())
    }

    fn from_parts(
        tokens: Vec<String>,
        labels: Vec<Option<String>>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = tokens.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (e, &(s, t)) in edges.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::arg(format!("edge {e} ({s}, {t}) out of range for {n} nodes")));
            }
            if s == t {
                return Err(Error::arg(format!("edge {e} is a self-loop on node {s}")));
            }
            out_adj[s].push((t, e));
            in_adj[t].push((s, e));
        }
        for (v, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::arg(format!("duplicate edge out of node {v}")));
            }
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        Ok(DirectedGraph {
            tokens,
            labels,
            edges,
            out_adj,
            in_adj,
            origin_nodes: None,
            origin_edges: None,
        })
    }

    pub fn node_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Out-neighbors of `v` as `(target, edge index)`, sorted by target.
    pub fn out_adj(&self, v: usize) -> &[(usize, usize)] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v` as `(source, edge index)`, sorted by source.
    pub fn in_adj(&self, v: usize) -> &[(usize, usize)] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Index of the edge `s -> t`, if present.
    pub fn edge_index(&self, s: usize, t: usize) -> Option<usize> {
        let list = self.out_adj.get(s)?;
        list.binary_search_by(|&(x, _)| x.cmp(&t)).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.edge_index(s, t).is_some()
    }

    /// Token the node was read under (its decimal index for programmatic graphs).
    pub fn token(&self, v: usize) -> &str {
        &self.tokens[v]
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    /// Label if one is attached, otherwise the token.
    pub fn name(&self, v: usize) -> &str {
        self.label(v).unwrap_or_else(|| self.token(v))
    }

    pub fn node_by_token(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    /// Node index in the graph this one was extracted from.
    pub fn origin_node(&self, v: usize) -> usize {
        self.origin_nodes.as_ref().map_or(v, |o| o[v])
    }

    /// Edge index in the graph this one was extracted from.
    pub fn origin_edge(&self, e: usize) -> usize {
        self.origin_edges.as_ref().map_or(e, |o| o[e])
    }

    /// Same nodes, same edge indices, every edge reversed.
    pub fn reversed(&self) -> DirectedGraph {
        DirectedGraph {
            tokens: self.tokens.clone(),
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|&(s, t)| (t, s)).collect(),
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            origin_nodes: self.origin_nodes.clone(),
            origin_edges: self.origin_edges.clone(),
        }
    }

    /// Copy of this graph with the edge list replaced; node set and labels are kept.
    pub(crate) fn with_edges(&self, edges: Vec<(usize, usize)>) -> Result<DirectedGraph> {
        let mut g = Self::from_parts(self.tokens.clone(), self.labels.clone(), edges)?;
        g.origin_nodes = self.origin_nodes.clone();
        Ok(g)
    }

    /// Subgraph made of the given edges and their endpoints.
    ///
    /// Nodes keep their relative order, edges are taken in ascending index order.
    /// The original indices stay reachable through [`origin_node`](Self::origin_node)
    /// and [`origin_edge`](Self::origin_edge).
    pub fn induced_subgraph(&self, edge_subset: &[usize]) -> Result<DirectedGraph> {
        let mut picked = edge_subset.to_vec();
        picked.sort_unstable();
        picked.dedup();
        if let Some(&bad) = picked.iter().find(|&&e| e >= self.edge_count()) {
            return Err(Error::arg(format!(
                "edge index {bad} out of range for {} edges",
                self.edge_count()
            )));
        }
        let mut keep = vec![false; self.node_count()];
        for &e in &picked {
            let (s, t) = self.edges[e];
            keep[s] = true;
            keep[t] = true;
        }
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut nodes = Vec::new();
        for v in (0..self.node_count()).filter(|&v| keep[v]) {
            remap[v] = nodes.len();
            nodes.push(v);
        }
        let tokens = nodes.iter().map(|&v| self.tokens[v].clone()).collect();
        let labels = nodes.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = picked
            .iter()
            .map(|&e| {
                let (s, t) = self.edges[e];
                (remap[s], remap[t])
            })
            .collect();
        let mut sub = Self::from_parts(tokens, labels, edges)?;
        sub.origin_nodes = Some(nodes.iter().map(|&v| self.origin_node(v)).collect());
        sub.origin_edges = Some(picked.iter().map(|&e| self.origin_edge(e)).collect());
        Ok(sub)
    }

    /// Writes `source target` lines using node tokens, in canonical token order
    /// (integer tokens numerically, before any non-integer token).
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut order: Vec<usize> = (0..self.edge_count()).collect();
        order.sort_by(|&a, &b| {
            let (sa, ta) = self.edges[a];
            let (sb, tb) = self.edges[b];
            token_cmp(&self.tokens[sa], &self.tokens[sb])
                .then_with(|| token_cmp(&self.tokens[ta], &self.tokens[tb]))
        });
        for e in order {
            let (s, t) = self.edges[e];
            writeln!(w, "{} {}", self.tokens[s], self.tokens[t])?;
        }
        Ok(())
    }

    /// Writes `token<TAB>label` for every labeled node.
    pub fn write_label_map<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in 0..self.node_count() {
            if let Some(label) = &self.labels[v] {
                writeln!(w, "{}\t{}", self.tokens[v], label)?;
            }
        }
        Ok(())
    }
}

fn token_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn is_comment(line: &str) -> bool {
    line.starts_with('#') || line.starts_with('%')
}

/// Reads a whitespace-separated edge list.
///
/// Node tokens are arbitrary strings numbered in first-seen order. Lines starting
/// with `#` or `%` and blank lines are skipped; tokens after the second are
/// ignored. Self-loops and repeated ordered pairs are dropped and counted. When a
/// label map is given, its `token<TAB>label` lines attach labels to nodes.
pub fn load_edge_list<R: BufRead>(
    source: R,
    label_map: Option<&Path>,
) -> Result<(DirectedGraph, IngestReport)> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut report = IngestReport::default();
    let mut warned_extra = false;

    let mut intern = |tok: &str, tokens: &mut Vec<String>| -> usize {
        if let Some(&id) = ids.get(tok) {
            return id;
        }
        let id = tokens.len();
        tokens.push(tok.to_owned());
        ids.insert(tok.to_owned(), id);
        id
    };

    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || is_comment(trimmed) {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (Some(a), Some(b)) = (parts.next(), parts.next()) else {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected `source target`, found {trimmed:?}"),
            });
        };
        if parts.next().is_some() && !warned_extra {
            log::warn!("line {}: extra columns ignored, links are treated as unweighted", i + 1);
            warned_extra = true;
        }
        let s = intern(a, &mut tokens);
        let t = intern(b, &mut tokens);
        if s == t {
            report.self_loops_dropped += 1;
        } else if !seen.insert((s, t)) {
            report.duplicates_dropped += 1;
        } else {
            edges.push((s, t));
        }
    }
    report.nodes_read = tokens.len();
    report.edges_kept = edges.len();

    let mut labels = vec![None; tokens.len()];
    if let Some(path) = label_map {
        let reader = BufReader::new(File::open(path)?);
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || is_comment(line.trim_start()) {
                continue;
            }
            let Some((tok, label)) = line.split_once('\t') else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("label map: expected `index<TAB>label`, found {line:?}"),
                });
            };
            if let Some(&v) = ids.get(tok.trim()) {
                labels[v] = Some(label.trim().to_owned());
            }
        }
    }

    let g = DirectedGraph::from_parts(tokens, labels, edges)?;
    Ok((g, report))
}

/// Opens `path` and delegates to [`load_edge_list`].
pub fn load_edge_list_path(
    path: &Path,
    label_map: Option<&Path>,
) -> Result<(DirectedGraph, IngestReport)> {
    load_edge_list(BufReader::new(File::open(path)?), label_map)
}

/// Out- and in-degree of every node.
pub fn degree_sequences(g: &DirectedGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.node_count();
    (
        (0..n).map(|v| g.out_degree(v)).collect(),
        (0..n).map(|v| g.in_degree(v)).collect(),
    )
}

/// A node partition together with the edges lying inside each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component of every node.
    pub node_component: Vec<usize>,
    /// Node indices of each component, ascending.
    pub nodes: Vec<Vec<usize>>,
    /// Edge indices with both endpoints in the component, ascending.
    pub edges: Vec<Vec<usize>>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Renumbers a raw labeling so that components appear in order of their
    /// smallest node, then collects nodes and internal edges.
    fn from_labels(g: &DirectedGraph, raw: &[usize]) -> Self {
        let mut renum = HashMap::new();
        let mut node_component = Vec::with_capacity(raw.len());
        for &r in raw {
            let next = renum.len();
            node_component.push(*renum.entry(r).or_insert(next));
        }
        let count = renum.len();
        let mut nodes = vec![Vec::new(); count];
        for (v, &c) in node_component.iter().enumerate() {
            nodes[c].push(v);
        }
        let mut edges = vec![Vec::new(); count];
        for (e, &(s, t)) in g.edges().iter().enumerate() {
            if node_component[s] == node_component[t] {
                edges[node_component[s]].push(e);
            }
        }
        Components { node_component, nodes, edges }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the underlying undirected graph.
pub fn weakly_connected_components(g: &DirectedGraph) -> Components {
    let mut parent: Vec<usize> = (0..g.node_count()).collect();
    for &(s, t) in g.edges() {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..g.node_count()).map(|v| find(&mut parent, v)).collect();
    Components::from_labels(g, &roots)
}

/// Strongly connected components (iterative Tarjan).
///
/// `edges` of the result holds only edges internal to a component.
pub fn strongly_connected_components(g: &DirectedGraph) -> Components {
    const UNVISITED: usize = usize::MAX;
    let n = g.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNVISITED; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    // (node, position in its out-adjacency)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&(w, _)) = g.out_adj(v).get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    Components::from_labels(g, &comp)
}
