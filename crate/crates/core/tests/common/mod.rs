//! Independent oracle for edge flows and dominating paths.
//!
//! Walks vertices explicitly and keys paths by their edge sets, without
//! going through `ArcPath` arithmetic or the library's profile code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use cycleflow::{CycleInstance, FlowAssignment, Rational};
use num_traits::{Signed, Zero};

/// Edge set of the walk from `s` stepping `+1` (clockwise) or `-1` until `t`.
pub fn walk(n: usize, s: usize, t: usize, clockwise: bool) -> BTreeSet<usize> {
    let mut edges = BTreeSet::new();
    let mut v = s;
    while v != t {
        if clockwise {
            edges.insert(v);
            v = (v + 1) % n;
        } else {
            let prev = (v + n - 1) % n;
            edges.insert(prev);
            v = prev;
        }
    }
    edges
}

/// `(commodity, edge set, f(p))` for every path of every commodity.
pub fn all_paths(inst: &CycleInstance, f: &FlowAssignment) -> Vec<(usize, BTreeSet<usize>, Rational)> {
    let mut out = Vec::new();
    for (i, (c, x)) in inst.commodities().iter().zip(f.clockwise()).enumerate() {
        out.push((i, walk(inst.n(), c.s, c.t, true), x.clone()));
        out.push((i, walk(inst.n(), c.s, c.t, false), &c.r - x));
    }
    out
}

pub fn oracle_edge_flows(inst: &CycleInstance, f: &FlowAssignment) -> Vec<Rational> {
    let mut load = vec![Rational::zero(); inst.n()];
    for (_, edges, amount) in all_paths(inst, f) {
        for e in edges {
            load[e] += &amount;
        }
    }
    load
}

/// `(commodity, edge set)` of every dominating path.
pub fn oracle_witnesses(
    inst: &CycleInstance,
    f: &FlowAssignment,
    fp: &FlowAssignment,
) -> Vec<(usize, BTreeSet<usize>)> {
    let lf = oracle_edge_flows(inst, f);
    let lfp = oracle_edge_flows(inst, fp);
    all_paths(inst, f)
        .into_iter()
        .filter(|(_, edges, amount)| amount.is_positive() && edges.iter().all(|&e| lf[e] >= lfp[e]))
        .map(|(i, edges, _)| (i, edges))
        .collect()
}

pub fn key(w: &cycleflow::DominanceWitness) -> (usize, BTreeSet<usize>) {
    (w.commodity, w.path.edges().collect())
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn qq(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}
