//! Level-planar drawings whose edge slopes come from a fixed set
//! `{0, 1, …, λ−1}`.
//!
//! The crate decides drawability of embedded proper level graphs through a
//! flow model and its dual distance model, computes rightmost and compact
//! drawings, extends partial drawings, and draws two graphs simultaneously.
//! A brute-force [`oracle`] provides ground truth for small instances.

pub mod boundary;
pub mod corpus;
pub mod distance;
pub mod drawing;
pub mod error;
pub mod extend;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod slopes;
pub mod subdivide;

pub use boundary::{add_boundaries, strip_boundaries, AugmentedGraph, BoundaryInfo};
pub use distance::{
    augment_with_constraint, build_distance_graph, dump_distance_graph, rightmost,
    rightmost_drawing, shortest_labeling, verify_labeling, DistanceEdge, DistanceEdgeKind,
    DistanceGraph, Labeling, NegativeCycleWitness, Rightmost,
};
pub use drawing::{
    check_lambda_drawing, find_gaps, is_compact, remove_gaps, remove_gaps_except, Coverage, Drawing,
};
pub use error::{Error, Result};
pub use extend::{
    extend_partial, simultaneous, PartialInstance, Side, SimultaneousInstance, SimultaneousResult,
    TraceStep,
};
pub use flow::{
    build_flow_network, circulation_to_drawing, drawing_to_circulation, dump_flow_network,
    find_circulation, verify_circulation, Arc, ArcKind, Capacity, Circulation, FlowNetwork, NodeId,
};
pub use graph::{validate, LevelGraph, LevelGraphBuilder, VertexId};
pub use oracle::{
    enumerate_drawings, oracle_extendable, oracle_simultaneous, EnumerationResult, Oracle,
};
pub use report::{ValidationReport, Violation, ViolationCode};
pub use slopes::Slopes;
pub use subdivide::{
    subdivide_long_edges, subdivide_long_edges_with, PositionHint, SubdivisionMap,
};
