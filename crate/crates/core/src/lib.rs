//! Degree-preserving edge swaps across the six graph spaces that lie between
//! simple graphs and pseudographs.
//!
//! * [`graph`]: labeled graphs with loops and multiedges, space policies,
//!   degree and triangle statistics, the text format.
//! * [`swap`]: double and k edge-swaps and their neighbour sets.
//! * [`connectivity`]: per-space connectivity verdicts and the constructive
//!   loop-normalizing swap procedures.
//! * [`mcmc`]: a Metropolis-Hastings double-swap chain with a uniform
//!   stationary distribution, plus a chi-square uniformity check.
//! * [`enumerate`] and [`canon`]: exhaustive censuses, triangle filters,
//!   canonical labeling and isomorphism classes.
//! * [`gog`]: the materialized graph of graphs and its components.

pub mod canon;
pub mod connectivity;
pub mod enumerate;
pub mod error;
pub mod gog;
pub mod graph;
pub mod mcmc;
pub mod swap;

pub use canon::{
    are_isomorphic, automorphism_count, canonical_form, isomorphism_classes, Canonical, IsoClass,
    IsoClasses,
};
pub use connectivity::{
    eliminate_last_loop, is_loop_saturated, multiloop_criterion, reduce_loops_loopy_multigraph,
    saturate_loops_multiloop, space_connectivity, ConnectivityStatus, ConnectivityVerdict,
    MultiloopCriterion, SwapTrace,
};
pub use enumerate::{
    count_graphs, enumerate_capped, enumerate_graphs, fold_graphs, for_each_graph,
    triangle_histogram, EnumFilter,
};
pub use error::{Error, Result};
pub use gog::{build_gog, components_intersect_classes, GogReport, GogSpec, GogSummary};
pub use graph::{
    DegreeSequence, Edge, Graph, GraphSpace, LoopPolicy, MultiedgePolicy, TriangleSequence, Vertex,
};
pub use mcmc::{
    acceptance_probability, chi_square_uniform, proposal_degeneracy, sample, step,
    uniformity_report, ChainConfig, ChainState, Sample, Sampler, UniformityReport,
};
pub use swap::{
    apply_double_swap, apply_k_swap, apply_k_swap_with_inverse, double_swap_neighbors,
    k_swap_neighbors, Direction, Endpoint, KSwapMove, Pairing, SwapMove,
};
