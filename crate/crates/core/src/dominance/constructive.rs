//! Witness construction by case analysis.
//!
//! One commodity, or two commodities sharing both terminals: the two paths
//! carry complementary totals, so whichever path did not lose flow dominates.
//!
//! Two commodities otherwise: canonicalize, then express every segment's edge
//! flow through two path flows and the demands, and follow the decision chain
//! for the configuration. Each chain assumes a particular path flow is
//! positive; when it is not, the problem is relabeled once more by the
//! symmetry that swaps the roles of the relevant paths.
//!
//! Every returned witness is re-checked against the edge-flow profiles.

use num_traits::{Signed, Zero};

use super::canonical::{Canonical, Configuration};
use super::{canonicalize, is_valid_witness, DominanceError, DominanceWitness, SymmetryTransform};
use crate::model::{edge_flows, ArcPath, CycleInstance, FlowAssignment, Rational};

/// How a constructive witness was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    /// `None` for a single commodity.
    pub configuration: Option<Configuration>,
    /// Whether the symmetric sub-case was taken (the chain's leading path
    /// flow was zero and the problem was relabeled).
    pub flow_symmetry: bool,
    pub step: &'static str,
}

/// A dominating path for `k <= 2`, found by following the case analysis.
pub fn witness_constructive(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
) -> Result<DominanceWitness, DominanceError> {
    witness_constructive_explained(instance, f, f_prime).map(|(w, _)| w)
}

pub fn witness_constructive_explained(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
) -> Result<(DominanceWitness, Derivation), DominanceError> {
    edge_flows(instance, f)?;
    edge_flows(instance, f_prime)?;
    let (witness, derivation) = match instance.k() {
        1 => {
            let (p1, p2) = instance.paths_of(0)?;
            let (w, step) = complementary_paths(instance, f, f_prime, p1, p2)?;
            let d = Derivation {
                configuration: None,
                flow_symmetry: false,
                step,
            };
            (w, d)
        }
        2 => two_commodities(instance, f, f_prime)?,
        k => return Err(DominanceError::Unsupported(k)),
    };
    if !is_valid_witness(instance, f, f_prime, &witness)? {
        return Err(DominanceError::Internal(format!(
            "case analysis produced an invalid witness ({witness}) at step `{}`",
            derivation.step
        )));
    }
    Ok((witness, derivation))
}

fn contradiction(step: &str) -> DominanceError {
    DominanceError::Internal(format!("case analysis reached an impossible branch: {step}"))
}

/// Path flow of commodity `i` on `path`.
fn pf(c: &CycleInstance, flow: &FlowAssignment, i: usize, path: &ArcPath) -> Result<Rational, DominanceError> {
    Ok(flow.path_flow(c, i, path)?)
}

/// Every commodity has exactly the paths `p1` and `p2`.
fn complementary_paths(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
    p1: ArcPath,
    p2: ArcPath,
) -> Result<(DominanceWitness, &'static str), DominanceError> {
    let total = |flow: &FlowAssignment, p: &ArcPath| -> Result<Rational, DominanceError> {
        (0..instance.k()).try_fold(Rational::zero(), |acc, i| Ok(acc + pf(instance, flow, i, p)?))
    };
    let (a, a_prime) = (total(f, &p1)?, total(f_prime, &p1)?);
    let (path, step) = if a >= a_prime {
        if a.is_positive() {
            (p1, "f(p1) >= f'(p1) and f(p1) > 0: p1 dominates")
        } else {
            (p2, "f(p1) >= f'(p1) but f(p1) = 0: p2 carries the whole demand")
        }
    } else {
        // f(p2) = R - f(p1) > R - f'(p1) = f'(p2) >= 0
        (p2, "f(p1) < f'(p1): f(p2) > f'(p2) >= 0, p2 dominates")
    };
    for i in 0..instance.k() {
        if pf(instance, f, i, &path)?.is_positive() {
            return Ok((DominanceWitness { commodity: i, path }, step));
        }
    }
    Err(contradiction(step))
}

fn two_commodities(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
) -> Result<(DominanceWitness, Derivation), DominanceError> {
    let canon = canonicalize(instance, f, f_prime)?;
    let configuration = canon.configuration();
    let (local, flow_symmetry, step) = match configuration {
        Configuration::SamePair => {
            let d = &canon.decomposition;
            let (w, step) = complementary_paths(&canon.instance, &canon.f, &canon.f_prime, d.l(1), d.l(2))?;
            (w, false, step)
        }
        Configuration::SharedVertex => shared_vertex(&canon)?,
        Configuration::NonCrossing => non_crossing(&canon)?,
        Configuration::Crossing => crossing(&canon)?,
    };
    let witness = canon.transform.inverse().apply_witness(&local);
    Ok((
        witness,
        Derivation {
            configuration: Some(configuration),
            flow_symmetry,
            step,
        },
    ))
}

type Chain = fn(&Canonical) -> Result<(DominanceWitness, &'static str), DominanceError>;

/// Runs `chain` on the problem relabeled by `extra` and maps the result back.
fn via_symmetry(
    canon: &Canonical,
    extra: SymmetryTransform,
    chain: Chain,
) -> Result<(DominanceWitness, bool, &'static str), DominanceError> {
    let image = canon.relabel(&extra)?;
    let (w, step) = chain(&image)?;
    Ok((extra.inverse().apply_witness(&w), true, step))
}

#[cfg(debug_assertions)]
fn check_segment_formulas(canon: &Canonical, formulas: &[(usize, Rational, Rational)]) {
    let pf = edge_flows(&canon.instance, &canon.f).expect("canonical flow");
    let pfp = edge_flows(&canon.instance, &canon.f_prime).expect("canonical flow");
    for (l, on_f, on_fp) in formulas {
        for e in canon.decomposition.l(*l).edges() {
            assert_eq!(pf.get(e), on_f, "f on l{l}");
            assert_eq!(pfp.get(e), on_fp, "f' on l{l}");
        }
    }
}

#[cfg(not(debug_assertions))]
fn check_segment_formulas(_: &Canonical, _: &[(usize, Rational, Rational)]) {}

/// Layout `s1 = s2`: `P1 = {l1, l2 ∪ l3}`, `P2 = {l2, l1 ∪ l3}`.
fn shared_vertex(canon: &Canonical) -> Result<(DominanceWitness, bool, &'static str), DominanceError> {
    let (inst, d) = (&canon.instance, &canon.decomposition);
    let a = pf(inst, &canon.f, 0, &d.l(1))?;
    let b = pf(inst, &canon.f, 1, &d.l(2))?;
    if a.is_positive() {
        let (w, step) = shared_vertex_chain(canon)?;
        return Ok((w, false, step));
    }
    if b.is_positive() {
        // swap the commodities and mirror so that l2 becomes l1
        let extra = SymmetryTransform::new(inst.n(), vec![1, 0], vec![false, false], true, 0)?;
        return via_symmetry(canon, extra, shared_vertex_chain);
    }
    // f(l1) = f(l2) = 0: l3 carries r1 + r2 >= f'(e)
    let a_prime = pf(inst, &canon.f_prime, 0, &d.l(1))?;
    let b_prime = pf(inst, &canon.f_prime, 1, &d.l(2))?;
    Ok(if &a - &b >= &a_prime - &b_prime {
        let w = DominanceWitness { commodity: 1, path: d.join(&[1, 3]) };
        (w, false, "f(l1) = f(l2) = 0 and l1 dominates: l1 ∪ l3 carries r2")
    } else {
        let w = DominanceWitness { commodity: 0, path: d.join(&[3, 2]) };
        (w, false, "f(l1) = f(l2) = 0 and l2 dominates: l2 ∪ l3 carries r1")
    })
}

/// Requires `f(l1) > 0`.
fn shared_vertex_chain(canon: &Canonical) -> Result<(DominanceWitness, &'static str), DominanceError> {
    let (inst, d) = (&canon.instance, &canon.decomposition);
    let (r1, r2) = (&inst.commodities()[0].r, &inst.commodities()[1].r);
    let (l1, l2, l23) = (d.l(1), d.l(2), d.join(&[3, 2]));
    let a = pf(inst, &canon.f, 0, &l1)?;
    let b = pf(inst, &canon.f, 1, &l2)?;
    let a_prime = pf(inst, &canon.f_prime, 0, &l1)?;
    let b_prime = pf(inst, &canon.f_prime, 1, &l2)?;
    debug_assert!(a.is_positive());

    // edge flows per segment, in terms of f(l1), f(l2) and the demands
    let on_l1 = |a: &Rational, b: &Rational| a + r2 - b;
    let on_l2 = |a: &Rational, b: &Rational| b + r1 - a;
    let on_l3 = |a: &Rational, b: &Rational| r1 + r2 - a - b;
    check_segment_formulas(
        canon,
        &[
            (1, on_l1(&a, &b), on_l1(&a_prime, &b_prime)),
            (2, on_l2(&a, &b), on_l2(&a_prime, &b_prime)),
            (3, on_l3(&a, &b), on_l3(&a_prime, &b_prime)),
        ],
    );

    if on_l1(&a, &b) >= on_l1(&a_prime, &b_prime) {
        let w = DominanceWitness { commodity: 0, path: l1 };
        return Ok((w, "f(l1) - f(l2) >= f'(l1) - f'(l2): l1 dominates, f(l1) > 0"));
    }
    // l2 strictly gains
    if b.is_positive() {
        let w = DominanceWitness { commodity: 1, path: l2 };
        return Ok((w, "l1 loses so l2 gains, f(l2) > 0"));
    }
    // f(l2) = 0: f(l1) + f(l2) < f'(l1) + f'(l2), so l3 gains as well
    if pf(inst, &canon.f, 0, &l23)?.is_positive() {
        let w = DominanceWitness { commodity: 0, path: l23 };
        return Ok((w, "l1 loses, f(l2) = 0: l2 and l3 gain, f(l2 ∪ l3) > 0"));
    }
    Err(contradiction("f(l1) = r1 yet l1 loses"))
}

/// Layout `s1, t1, s2, t2`: `P1 = {l1, l2 ∪ l3 ∪ l4}`, `P2 = {l3, l1 ∪ l2 ∪ l4}`.
fn non_crossing(canon: &Canonical) -> Result<(DominanceWitness, bool, &'static str), DominanceError> {
    let (inst, d) = (&canon.instance, &canon.decomposition);
    let a = pf(inst, &canon.f, 0, &d.l(1))?;
    let c = pf(inst, &canon.f, 1, &d.l(3))?;
    if a.is_positive() {
        let (w, step) = non_crossing_chain(canon)?;
        return Ok((w, false, step));
    }
    if c.is_positive() {
        // swap the commodities, rotate s2 to the anchor
        let rotation = inst.n() - inst.commodities()[1].s;
        let extra = SymmetryTransform::new(inst.n(), vec![1, 0], vec![false, false], false, rotation)?;
        return via_symmetry(canon, extra, non_crossing_chain);
    }
    // f(l1) = f(l3) = 0: l2 and l4 carry r1 + r2 >= f'(e)
    let a_prime = pf(inst, &canon.f_prime, 0, &d.l(1))?;
    let c_prime = pf(inst, &canon.f_prime, 1, &d.l(3))?;
    Ok(if &a - &c >= &a_prime - &c_prime {
        let w = DominanceWitness { commodity: 1, path: d.join(&[4, 1, 2]) };
        (w, false, "f(l1) = f(l3) = 0 and l1 dominates: l1 ∪ l2 ∪ l4 carries r2")
    } else {
        let w = DominanceWitness { commodity: 0, path: d.join(&[2, 3, 4]) };
        (w, false, "f(l1) = f(l3) = 0 and l3 dominates: l2 ∪ l3 ∪ l4 carries r1")
    })
}

/// Requires `f(l1) > 0`.
fn non_crossing_chain(canon: &Canonical) -> Result<(DominanceWitness, &'static str), DominanceError> {
    let (inst, d) = (&canon.instance, &canon.decomposition);
    let (r1, r2) = (&inst.commodities()[0].r, &inst.commodities()[1].r);
    let (l1, l3, l234) = (d.l(1), d.l(3), d.join(&[2, 3, 4]));
    let a = pf(inst, &canon.f, 0, &l1)?;
    let c = pf(inst, &canon.f, 1, &l3)?;
    let a_prime = pf(inst, &canon.f_prime, 0, &l1)?;
    let c_prime = pf(inst, &canon.f_prime, 1, &l3)?;
    debug_assert!(a.is_positive());

    let on_l1 = |a: &Rational, c: &Rational| a + r2 - c;
    let on_l2 = |a: &Rational, c: &Rational| r1 + r2 - a - c;
    let on_l3 = |a: &Rational, c: &Rational| r1 - a + c;
    check_segment_formulas(
        canon,
        &[
            (1, on_l1(&a, &c), on_l1(&a_prime, &c_prime)),
            (2, on_l2(&a, &c), on_l2(&a_prime, &c_prime)),
            (3, on_l3(&a, &c), on_l3(&a_prime, &c_prime)),
            (4, on_l2(&a, &c), on_l2(&a_prime, &c_prime)),
        ],
    );

    if on_l1(&a, &c) >= on_l1(&a_prime, &c_prime) {
        let w = DominanceWitness { commodity: 0, path: l1 };
        return Ok((w, "f(l1) - f(l3) >= f'(l1) - f'(l3): l1 dominates, f(l1) > 0"));
    }
    if c.is_positive() {
        let w = DominanceWitness { commodity: 1, path: l3 };
        return Ok((w, "l1 loses so l3 gains, f(l3) > 0"));
    }
    if pf(inst, &canon.f, 0, &l234)?.is_positive() {
        let w = DominanceWitness { commodity: 0, path: l234 };
        return Ok((w, "l1 loses, f(l3) = 0: l2, l3, l4 gain, f(l2 ∪ l3 ∪ l4) > 0"));
    }
    Err(contradiction("f(l1) = r1 yet l1 loses"))
}

/// Layout `s1, s2, t1, t2`: `P1 = {l1 ∪ l2, l3 ∪ l4}`, `P2 = {l1 ∪ l4, l2 ∪ l3}`.
fn crossing(canon: &Canonical) -> Result<(DominanceWitness, bool, &'static str), DominanceError> {
    let (inst, d) = (&canon.instance, &canon.decomposition);
    let u = pf(inst, &canon.f, 0, &d.join(&[1, 2]))?;
    if u.is_positive() {
        let (w, step) = crossing_chain(canon)?;
        return Ok((w, false, step));
    }
    // f(l3 ∪ l4) = r1 > 0: swap both endpoint pairs, rotate t1 to the anchor
    let rotation = inst.n() - inst.commodities()[0].t;
    let extra = SymmetryTransform::new(inst.n(), vec![0, 1], vec![true, true], false, rotation)?;
    via_symmetry(canon, extra, crossing_chain)
}

/// Requires `f(l1 ∪ l2) > 0`.
fn crossing_chain(canon: &Canonical) -> Result<(DominanceWitness, &'static str), DominanceError> {
    let (inst, d) = (&canon.instance, &canon.decomposition);
    let (r1, r2) = (&inst.commodities()[0].r, &inst.commodities()[1].r);
    let (l12, l23, l34, l41) = (d.join(&[1, 2]), d.join(&[2, 3]), d.join(&[3, 4]), d.join(&[4, 1]));
    let u = pf(inst, &canon.f, 0, &l12)?;
    let v = pf(inst, &canon.f, 1, &l23)?;
    let u_prime = pf(inst, &canon.f_prime, 0, &l12)?;
    let v_prime = pf(inst, &canon.f_prime, 1, &l23)?;
    debug_assert!(u.is_positive());

    let on_l1 = |u: &Rational, v: &Rational| u + r2 - v;
    let on_l2 = |u: &Rational, v: &Rational| u + v;
    let on_l3 = |u: &Rational, v: &Rational| v + r1 - u;
    let on_l4 = |u: &Rational, v: &Rational| r1 + r2 - u - v;
    check_segment_formulas(
        canon,
        &[
            (1, on_l1(&u, &v), on_l1(&u_prime, &v_prime)),
            (2, on_l2(&u, &v), on_l2(&u_prime, &v_prime)),
            (3, on_l3(&u, &v), on_l3(&u_prime, &v_prime)),
            (4, on_l4(&u, &v), on_l4(&u_prime, &v_prime)),
        ],
    );

    let l1_holds = on_l1(&u, &v) >= on_l1(&u_prime, &v_prime);
    let l2_holds = on_l2(&u, &v) >= on_l2(&u_prime, &v_prime);

    match (l1_holds, l2_holds) {
        (true, true) => {
            let w = DominanceWitness { commodity: 0, path: l12 };
            Ok((w, "l1 and l2 dominate, f(l1 ∪ l2) > 0"))
        }
        (false, _) if v.is_positive() => {
            // l1 loses, so l3 gains
            if l2_holds {
                let w = DominanceWitness { commodity: 1, path: l23 };
                return Ok((w, "l1 loses, l2 dominates, l3 gains, f(l2 ∪ l3) > 0"));
            }
            // l2 loses too, so l4 gains
            if pf(inst, &canon.f, 0, &l34)?.is_positive() {
                let w = DominanceWitness { commodity: 0, path: l34 };
                return Ok((w, "l1 and l2 lose: l3 and l4 gain, f(l3 ∪ l4) > 0"));
            }
            Err(contradiction("f(l1 ∪ l2) = r1 with l1 and l2 both losing"))
        }
        (false, _) => {
            // f(l2 ∪ l3) = 0: l3 gains and f(l3 ∪ l4) = r1 - f(l1 ∪ l2) > 0
            if on_l4(&u, &v) >= on_l4(&u_prime, &v_prime) && pf(inst, &canon.f, 0, &l34)?.is_positive() {
                let w = DominanceWitness { commodity: 0, path: l34 };
                return Ok((w, "l1 loses, f(l2 ∪ l3) = 0: l3 gains, l4 dominates"));
            }
            Err(contradiction("l1 and l4 both lose with f(l2 ∪ l3) = 0"))
        }
        (true, false) => {
            // l3 does not gain, l4 strictly gains
            if pf(inst, &canon.f, 1, &l41)?.is_positive() {
                let w = DominanceWitness { commodity: 1, path: l41 };
                return Ok((w, "l1 dominates, l2 loses: l4 gains, f(l1 ∪ l4) > 0"));
            }
            Err(contradiction("f(l2 ∪ l3) = r2 with l1 dominating and l2 losing"))
        }
    }
}
