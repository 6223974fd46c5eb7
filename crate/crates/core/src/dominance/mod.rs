//! Path dominance between two feasible flows.
//!
//! A witness for `(f, f')` is a commodity `i` and one of its paths `p` with
//! `f(p) > 0` and `f(e) >= f'(e)` on every edge of `p`. For one or two
//! commodities a witness always exists; [`witness_constructive`] finds one by
//! walking the same case analysis that proves it, while
//! [`witnesses_bruteforce`] enumerates all of them and serves as the oracle.

mod canonical;
mod constructive;
mod symmetry;

pub use canonical::{canonicalize, Canonical, Configuration, SegmentDecomposition};
pub use constructive::{witness_constructive, witness_constructive_explained, Derivation};
pub use symmetry::SymmetryTransform;

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::model::{edge_flows, ArcPath, CycleInstance, EdgeFlowProfile, FlowAssignment, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominanceError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("path {path} does not lie on a cycle of length {n}")]
    PathCycleMismatch { path: ArcPath, n: usize },
    #[error("operation requires exactly two commodities, instance has {0}")]
    NotTwoCommodities(usize),
    #[error(
        "no constructive witness for k = {0}: the dominance property fails for three or more \
         commodities (see `cycleflow paper-k3`)"
    )]
    Unsupported(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

/// A commodity index and one of its paths that dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominanceWitness {
    pub commodity: usize,
    pub path: ArcPath,
}

impl fmt::Display for DominanceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "commodity {} path {}", self.commodity, self.path)
    }
}

/// `f(e) >= f'(e)` for every edge `e` of `path`.
pub(crate) fn dominates_on(f: &EdgeFlowProfile, f_prime: &EdgeFlowProfile, path: &ArcPath) -> bool {
    path.edges().all(|e| f.get(e) >= f_prime.get(e))
}

fn check_path(instance: &CycleInstance, path: &ArcPath) -> Result<(), DominanceError> {
    if path.cycle_len() != instance.n() {
        return Err(DominanceError::PathCycleMismatch {
            path: *path,
            n: instance.n(),
        });
    }
    Ok(())
}

/// Whether every edge of `p` carries at least as much under `f` as under `f_prime`.
pub fn path_dominates(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
    p: &ArcPath,
) -> Result<bool, DominanceError> {
    check_path(instance, p)?;
    let pf = edge_flows(instance, f)?;
    let pfp = edge_flows(instance, f_prime)?;
    Ok(dominates_on(&pf, &pfp, p))
}

/// Every `(i, p)` with `f(p) > 0` that dominates, ordered by commodity index
/// and then clockwise path before counterclockwise.
pub fn witnesses_bruteforce(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
) -> Result<Vec<DominanceWitness>, DominanceError> {
    let pf = edge_flows(instance, f)?;
    let pfp = edge_flows(instance, f_prime)?;
    Ok(witnesses_from_profiles(instance, f, &pf, &pfp))
}

pub(crate) fn witnesses_from_profiles(
    instance: &CycleInstance,
    f: &FlowAssignment,
    pf: &EdgeFlowProfile,
    pfp: &EdgeFlowProfile,
) -> Vec<DominanceWitness> {
    let mut out = Vec::new();
    for (i, (c, x)) in instance.commodities().iter().zip(f.clockwise()).enumerate() {
        let (cw, ccw) = instance.paths_of(i).expect("index in range");
        let ccw_flow = &c.r - x;
        for (path, flow) in [(cw, x), (ccw, &ccw_flow)] {
            if flow.is_positive() && dominates_on(pf, pfp, &path) {
                out.push(DominanceWitness { commodity: i, path });
            }
        }
    }
    out
}

/// Whether `w` is a genuine witness for `(f, f_prime)`.
pub fn is_valid_witness(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
    w: &DominanceWitness,
) -> Result<bool, DominanceError> {
    check_path(instance, &w.path)?;
    let Ok(flow) = f.path_flow(instance, w.commodity, &w.path) else {
        return Ok(false);
    };
    Ok(flow.is_positive() && path_dominates(instance, f, f_prime, &w.path)?)
}
