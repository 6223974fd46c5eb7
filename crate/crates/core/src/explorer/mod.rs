//! Counterexamples and violation search.
//!
//! A pair `(f, f')` *violates* dominance when no positive-flow path keeps
//! every edge at least as loaded under `f` as under `f'`. The
//! [`ViolationCertificate`] names, for every positive-flow path, one edge that
//! lost flow. Searches enumerate or sample flow pairs for a fixed instance and
//! collect every violating pair with its certificate.

mod report;
mod search;
mod verify;

pub use report::{SearchMode, SearchReport, Violation};
pub use search::{search_grid, search_random, search_random_with, RandomSearch, DEFAULT_DENOMINATOR};
pub use verify::{random_instance, random_pair, verify, VerifyFailure, VerifyReport};

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::dominance::DominanceError;
use crate::model::{
    edge_flows, format_rational, ArcPath, Commodity, CycleInstance, EdgeFlowProfile,
    FlowAssignment, ModelError, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Dominance(#[from] DominanceError),
    #[error("grid step {0} must be strictly positive")]
    NonPositiveStep(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("report line {line}: {message}")]
    ReportParse { line: usize, message: String },
}

/// One positive-flow path and the smallest-index edge on it with `f(e) < f'(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CertificateEntry {
    pub commodity: usize,
    pub path: ArcPath,
    pub edge: usize,
    pub f_edge: Rational,
    pub f_prime_edge: Rational,
}

impl fmt::Display for CertificateEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cert {} {} {} {} {} {}",
            self.commodity,
            self.path.start(),
            self.path.end(),
            self.edge,
            format_rational(&self.f_edge),
            format_rational(&self.f_prime_edge)
        )
    }
}

/// Proof that no dominating path exists: one entry per positive-flow path,
/// ordered by commodity and then clockwise path first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ViolationCertificate {
    entries: Vec<CertificateEntry>,
}

impl ViolationCertificate {
    pub fn new(entries: Vec<CertificateEntry>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[CertificateEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The six-vertex, three-commodity counterexample with `r = (3, 3, 3)`.
///
/// Terminals `(0,3)`, `(1,4)`, `(2,5)`; `f = (2, 1, 2)` and `f' = (1, 2, 1)` in
/// clockwise amounts. Edge flows alternate `5 4 5 4 5 4` and `4 5 4 5 4 5`.
pub fn paper_instance_k3() -> (CycleInstance, FlowAssignment, FlowAssignment) {
    let three = || Rational::from_integer(3.into());
    let instance = CycleInstance::new(
        6,
        vec![
            Commodity::new(0, 3, three()),
            Commodity::new(1, 4, three()),
            Commodity::new(2, 5, three()),
        ],
    )
    .expect("valid instance");
    let f = FlowAssignment::from_integers(&instance, &[2, 1, 2]).expect("feasible");
    let f_prime = FlowAssignment::from_integers(&instance, &[1, 2, 1]).expect("feasible");
    (instance, f, f_prime)
}

/// A certificate iff `(f, f_prime)` has no dominating path.
pub fn check_violation(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
) -> Result<Option<ViolationCertificate>, ModelError> {
    let pf = edge_flows(instance, f)?;
    let pfp = edge_flows(instance, f_prime)?;
    Ok(certificate_from_profiles(instance, f, &pf, &pfp))
}

pub(crate) fn certificate_from_profiles(
    instance: &CycleInstance,
    f: &FlowAssignment,
    pf: &EdgeFlowProfile,
    pfp: &EdgeFlowProfile,
) -> Option<ViolationCertificate> {
    let mut entries = Vec::new();
    for (i, (c, x)) in instance.commodities().iter().zip(f.clockwise()).enumerate() {
        let (cw, ccw) = instance.paths_of(i).expect("index in range");
        let ccw_flow = &c.r - x;
        for (path, flow) in [(cw, x), (ccw, &ccw_flow)] {
            if !flow.is_positive() {
                continue;
            }
            let edge = path.edges().filter(|&e| pf.get(e) < pfp.get(e)).min()?;
            entries.push(CertificateEntry {
                commodity: i,
                path,
                edge,
                f_edge: pf.get(edge).clone(),
                f_prime_edge: pfp.get(edge).clone(),
            });
        }
    }
    Some(ViolationCertificate { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::witnesses_bruteforce;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn counterexample_profiles() {
        let (inst, f, fp) = paper_instance_k3();
        let ints = |p: EdgeFlowProfile| p.values().to_vec();
        assert_eq!(ints(edge_flows(&inst, &f).unwrap()), [5, 4, 5, 4, 5, 4].map(q));
        assert_eq!(ints(edge_flows(&inst, &fp).unwrap()), [4, 5, 4, 5, 4, 5].map(q));
        assert!(inst.demands().all(|r| *r == q(3)));
    }

    #[test]
    fn counterexample_pair_certificate_covers_all_paths() {
        let (inst, f, fp) = paper_instance_k3();
        let cert = check_violation(&inst, &f, &fp).unwrap().expect("violation");
        assert_eq!(cert.len(), 6);
        for entry in cert.entries() {
            assert!(entry.f_edge < entry.f_prime_edge);
            assert!(entry.path.contains_edge(entry.edge));
            // smallest-index failing edge on the path
            assert!(entry.path.edges().filter(|&e| e < entry.edge).all(|e| {
                let pf = edge_flows(&inst, &f).unwrap();
                let pfp = edge_flows(&inst, &fp).unwrap();
                pf.get(e) >= pfp.get(e)
            }));
        }
        assert_eq!(cert.entries()[0].to_string(), "cert 0 0 3 1 4 5");
        assert!(check_violation(&inst, &fp, &f).unwrap().is_some());
    }

    #[test]
    fn equal_flows_never_violate() {
        let (inst, f, fp) = paper_instance_k3();
        assert_eq!(check_violation(&inst, &f, &f).unwrap(), None);
        assert_eq!(check_violation(&inst, &fp, &fp).unwrap(), None);
    }

    #[test]
    fn certificate_and_witnesses_are_complementary() {
        let (inst, _, _) = paper_instance_k3();
        for a in 0..=3 {
            for b in 0..=3 {
                let f = FlowAssignment::from_integers(&inst, &[a, b, 3 - a]).unwrap();
                let fp = FlowAssignment::from_integers(&inst, &[b, a, 1]).unwrap();
                let cert = check_violation(&inst, &f, &fp).unwrap();
                let ws = witnesses_bruteforce(&inst, &f, &fp).unwrap();
                assert_ne!(cert.is_some(), !ws.is_empty());
            }
        }
    }
}
