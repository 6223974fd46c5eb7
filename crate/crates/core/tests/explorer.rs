mod common;

use common::{oracle_witnesses, q, qq};
use cycleflow::explorer::{
    random_instance, random_pair, search_random_with, ExplorerError, RandomSearch, SearchMode,
};
use cycleflow::{
    check_violation, paper_instance_k3, search_grid, search_random, witnesses_bruteforce, Commodity,
    CycleInstance, SearchReport,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn replay(report: &SearchReport, inst: &CycleInstance) {
    let parsed = SearchReport::parse(&report.to_text(), inst).unwrap();
    assert_eq!(&parsed, report);
    assert!(parsed.violations.len() as u64 <= parsed.examined);
    for v in &parsed.violations {
        assert_eq!(check_violation(inst, &v.f, &v.f_prime).unwrap().as_ref(), Some(&v.certificate));
        assert!(oracle_witnesses(inst, &v.f, &v.f_prime).is_empty());
    }
}

#[test]
fn single_commodity_quarter_grid_is_clean() {
    let inst = CycleInstance::new(7, vec![Commodity::new(5, 2, qq(9, 4))]).unwrap();
    let report = search_grid(&inst, &qq(9, 16)).unwrap();
    assert_eq!(report.examined, 25);
    assert!(report.violations.is_empty());
}

#[test]
fn grid_without_dividing_step_keeps_endpoints() {
    // r = 1, step 2/5: axis 0, 2/5, 4/5, 1
    let inst = CycleInstance::new(4, vec![Commodity::new(0, 2, q(1)), Commodity::new(1, 3, q(1))]).unwrap();
    let report = search_grid(&inst, &qq(2, 5)).unwrap();
    assert_eq!(report.examined, 16 * 16);
    assert!(report.violations.is_empty());
    assert!(matches!(search_grid(&inst, &q(0)), Err(ExplorerError::NonPositiveStep(_))));
}

#[test]
fn unit_grid_report_replays() {
    let (inst, f, fp) = paper_instance_k3();
    let report = search_grid(&inst, &q(1)).unwrap();
    assert!(report.violations.iter().any(|v| v.f == f && v.f_prime == fp));
    // lexicographic order of (x, x')
    let keys: Vec<_> = report
        .violations
        .iter()
        .map(|v| (v.f.clockwise().to_vec(), v.f_prime.clockwise().to_vec()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    replay(&report, &inst);
    let text = report.to_text();
    assert!(text.starts_with("# instance n=6 k=3 commodities 0-3:3 1-4:3 2-5:3\nmode grid\nparams step=1\nexamined 4096\n"));
    assert!(text.contains("flow 2 1 2\nflow 1 2 1\ncert 0 0 3 1 4 5\n"));
}

#[test]
fn two_commodity_random_search_is_clean() {
    let inst = CycleInstance::new(9, vec![Commodity::new(7, 2, qq(5, 3)), Commodity::new(4, 0, q(2))]).unwrap();
    let report = search_random(&inst, 100_000, 31337).unwrap();
    assert_eq!(report.examined, 100_000);
    assert!(report.violations.is_empty());
}

#[test]
fn counterexample_random_search_finds_violations() {
    let (inst, _, _) = paper_instance_k3();
    let report = search_random(&inst, 10_000, 7).unwrap();
    assert!(!report.violations.is_empty());
    assert_eq!(report.mode, SearchMode::Random { trials: 10_000, seed: 7, denominator: 16 });
    replay(&report, &inst);
}

#[test]
fn identical_samples_never_violate() {
    let (inst, _, _) = paper_instance_k3();
    let mut equal_seen = 0;
    for seed in 0..400 {
        let report = search_random_with(&inst, RandomSearch { trials: 1, seed, denominator: 1 }).unwrap();
        assert!(report.violations.iter().all(|v| v.f != v.f_prime));
        let big = search_random_with(&inst, RandomSearch { trials: 64, seed, denominator: 1 }).unwrap();
        assert!(big.violations.iter().all(|v| v.f != v.f_prime));
        equal_seen += usize::from(report.violations.is_empty());
    }
    assert!(equal_seen > 0);
}

#[test]
fn seeds_change_reports() {
    let (inst, _, _) = paper_instance_k3();
    let a = search_random(&inst, 2_000, 1).unwrap().to_text();
    let b = search_random(&inst, 2_000, 2).unwrap().to_text();
    assert_ne!(a, b);
    assert_eq!(a, search_random(&inst, 2_000, 1).unwrap().to_text());
}

#[test]
fn report_parse_errors() {
    let (inst, _, _) = paper_instance_k3();
    let bad = [
        "mode sideways\nparams step=1\nexamined 1\nviolations 0\n",
        "mode grid\nparams stride=1\nexamined 1\nviolations 0\n",
        "mode grid\nparams step=1\nexamined 1\nviolations 1\n",
        "mode grid\nparams step=1\nexamined 1\nviolations 1\nflow 2 1 2\n",
        "mode grid\nparams step=1\nexamined 1\nviolations 1\nflow 2 1 2\nflow 1 2 1\ncert 0 0 3 x 4 5\n",
        "mode random\nparams trials=1 seed=2\nexamined 1\nviolations 0\n",
    ];
    for text in bad {
        assert!(matches!(SearchReport::parse(text, &inst), Err(ExplorerError::ReportParse { .. })), "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn certificate_and_witnesses_are_complementary(seed in any::<u64>(), k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, k, 9);
        let (f, fp) = random_pair(&mut rng, &inst);
        let cert = check_violation(&inst, &f, &fp).unwrap();
        let ws = witnesses_bruteforce(&inst, &f, &fp).unwrap();
        prop_assert_eq!(cert.is_some(), ws.is_empty());
        if let Some(cert) = cert {
            let positive = common::all_paths(&inst, &f).into_iter().filter(|(_, _, a)| *a > q(0)).count();
            prop_assert_eq!(cert.len(), positive);
            for e in cert.entries() {
                prop_assert!(e.f_edge < e.f_prime_edge);
                prop_assert!(e.path.contains_edge(e.edge));
            }
        }
        if k <= 2 {
            prop_assert!(!ws.is_empty());
        }
    }
}
