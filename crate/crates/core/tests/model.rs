mod common;

use common::oracle_edge_flows;
use cycleflow::model::{format_rational, parse_flow, parse_instance, parse_rational};
use cycleflow::{edge_flows, Commodity, CycleInstance, FlowAssignment, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

/// Instance plus a feasible flow whose split is `num/den` of each demand.
fn arb_problem() -> impl Strategy<Value = (CycleInstance, FlowAssignment)> {
    (3usize..=12, 1usize..=4).prop_flat_map(|(n, k)| {
        let commodity = (0..n, 1..n, arb_rational(40, 16), 0u32..=16, 1u32..=16).prop_map(
            move |(s, d, r, j, den)| {
                let x = &r * Rational::new(BigInt::from(j.min(den)), BigInt::from(den));
                (Commodity::new(s, (s + d) % n, r), x)
            },
        );
        prop::collection::vec(commodity, k).prop_map(move |items| {
            let (cs, xs): (Vec<_>, Vec<_>) = items.into_iter().unzip();
            let inst = CycleInstance::new(n, cs).unwrap();
            let f = FlowAssignment::new(&inst, xs).unwrap();
            (inst, f)
        })
    })
}

proptest! {
    #[test]
    fn paths_partition_the_cycle((inst, _) in arb_problem()) {
        for i in 0..inst.k() {
            let (cw, ccw) = inst.paths_of(i).unwrap();
            prop_assert!(cw.is_disjoint(&ccw));
            prop_assert_eq!(cw.len() + ccw.len(), inst.n());
            prop_assert!(cw.len() >= 1 && cw.len() < inst.n());
            let c = &inst.commodities()[i];
            prop_assert_eq!(common::walk(inst.n(), c.s, c.t, true), cw.edges().collect());
            prop_assert_eq!(common::walk(inst.n(), c.s, c.t, false), ccw.edges().collect());
        }
    }

    #[test]
    fn flows_conserve_mass((inst, f) in arb_problem()) {
        let profile = edge_flows(&inst, &f).unwrap();
        let oracle = oracle_edge_flows(&inst, &f);
        prop_assert_eq!(profile.values(), oracle.as_slice());
        prop_assert!(profile.values().iter().all(|v| *v >= Rational::zero()));

        let mut expected = Rational::zero();
        for i in 0..inst.k() {
            let (cw, ccw) = inst.paths_of(i).unwrap();
            let on_cw = f.path_flow(&inst, i, &cw).unwrap();
            let on_ccw = f.path_flow(&inst, i, &ccw).unwrap();
            prop_assert_eq!(&on_cw + &on_ccw, inst.commodities()[i].r.clone());
            expected += on_cw * Rational::from_integer(cw.len().into())
                + on_ccw * Rational::from_integer(ccw.len().into());
        }
        prop_assert_eq!(profile.total(), expected);
    }

    #[test]
    fn edge_flows_need_no_rounding((inst, f) in arb_problem()) {
        let lcm = inst.demands().chain(f.clockwise())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        for v in edge_flows(&inst, &f).unwrap().values() {
            prop_assert!((&lcm % v.denom()).is_zero());
        }
    }

    #[test]
    fn text_round_trip((inst, f) in arb_problem()) {
        let text = inst.to_text();
        prop_assert_eq!(parse_instance(&text).unwrap(), inst.clone());
        prop_assert_eq!(parse_flow(&f.to_text(), &inst).unwrap(), f.clone());
        // re-serialization is byte-identical
        prop_assert_eq!(parse_instance(&text).unwrap().to_text(), text);
    }

    #[test]
    fn rational_format_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let v = Rational::new(p.into(), q.into());
        let s = format_rational(&v);
        prop_assert_eq!(parse_rational(&s), Some(v.clone()));
        prop_assert_eq!(s.contains('/'), !v.is_integer());
    }
}

#[test]
fn six_cycle_instance_file() {
    let text = "cycle 6\ncommodity 0 3 3\ncommodity 1 4 3\ncommodity 2 5 3\n";
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst, cycleflow::paper_instance_k3().0);
    let f = parse_flow("flow 2 1 2\n", &inst).unwrap();
    assert_eq!(
        edge_flows(&inst, &f).unwrap().values(),
        [5, 4, 5, 4, 5, 4].map(common::q).as_slice()
    );
}
