//! Cycle and flow truss decomposition for directed networks.
//!
//! A *cycle triangle* is a directed 3-cycle `i -> j -> k -> i`; a *flow triangle*
//! (feed-forward loop) is a triple with links `a -> b`, `a -> c`, `b -> c`. A cycle
//! (flow) k-truss is a maximal weakly connected subgraph in which every link takes
//! part in at least `k` triangles of that type whose links all lie inside the
//! subgraph. The crate computes per-link truss numbers by support peeling, extracts
//! the trusses, and summarizes a network with truss-number distributions, the
//! truss-orientedness measure `D` against a degree-preserving random ensemble, and
//! the cycle/flow overlap measure `R`.
//!
//! ```
//! use dirtruss::{truss_numbers, DirectedGraph, TrussType};
//!
//! // fully bidirectional triangle
//! let g = DirectedGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
//! assert!(truss_numbers(&g, TrussType::Cycle).numbers.iter().all(|&k| k == 1));
//! assert!(truss_numbers(&g, TrussType::Flow).numbers.iter().all(|&k| k == 3));
//! ```

pub mod census;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod randomize;
pub mod report;
pub mod truss;

pub use census::{cycle_support, edge_support, flow_support, triangle_totals, EdgeSupport, TriangleTotals};
pub use error::{Error, Result};
pub use graph::{
    degree_sequences, load_edge_list, load_edge_list_path, strongly_connected_components, weakly_connected_components,
    Components, DirectedGraph, IngestReport,
};
pub use metrics::{
    d_measure, joint_distribution, r_measure, reciprocity, truss_distribution, DMeasure,
    JointDistribution, RMeasure, TrussDistribution,
};
pub use randomize::{ensemble_truss_cdf, rewire, EnsembleCdf, RewireConfig};
pub use truss::{
    k_truss_components, max_truss_number, naive_truss_numbers, truss_components, truss_numbers,
    TrussAssignment, TrussComponent, TrussType,
};
