//! Multicommodity flows on undirected cycles and the path-dominance property.
//!
//! Given two feasible flows `f` and `f'` on a cycle, a *dominating path* is a
//! path `p` of some commodity with `f(p) > 0` and `f(e) >= f'(e)` on every edge
//! `e` of `p`. With one or two commodities such a path always exists; with
//! three or more it may not.
//!
//! - [`model`]: instances, arc paths, flows, edge-flow profiles, text formats.
//! - [`dominance`]: brute-force witness enumeration, symmetry canonicalization
//!   and the case-by-case constructive witness finder for `k <= 2`.
//! - [`explorer`]: the six-vertex three-commodity counterexample, violation
//!   certificates, grid/random searches and verification campaigns.
//! - [`cli`]: subcommand implementations behind the `cycleflow` binary.

pub mod cli;
pub mod dominance;
pub mod explorer;
pub mod model;

pub use dominance::{
    canonicalize, path_dominates, witness_constructive, witnesses_bruteforce, Configuration,
    DominanceError, DominanceWitness, SegmentDecomposition, SymmetryTransform,
};
pub use explorer::{
    check_violation, paper_instance_k3, search_grid, search_random, SearchReport,
    ViolationCertificate,
};
pub use model::{
    edge_flows, ArcPath, Commodity, CycleInstance, EdgeFlowProfile, FlowAssignment, ModelError,
    Rational,
};
