use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{instance_summary, SearchMode, SearchReport, Violation};
use super::{certificate_from_profiles, ExplorerError};
use crate::model::{edge_flows, format_rational, CycleInstance, EdgeFlowProfile, FlowAssignment, Rational};

/// Denominator bound `D` for random sampling: `x_i = (j / D) * r_i`, `j` in `0..=D`.
pub const DEFAULT_DENOMINATOR: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSearch {
    pub trials: u64,
    pub seed: u64,
    pub denominator: u64,
}

impl RandomSearch {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            denominator: DEFAULT_DENOMINATOR,
        }
    }
}

/// `{0, step, 2 step, ...} ∩ [0, r]`, plus `r` itself.
fn axis(r: &Rational, step: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut v = Rational::zero();
    while &v < r {
        out.push(v.clone());
        v += step;
    }
    out.push(r.clone());
    out
}

fn grid_flows(instance: &CycleInstance, step: &Rational) -> Vec<FlowAssignment> {
    let axes: Vec<Vec<Rational>> = instance.demands().map(|r| axis(r, step)).collect();
    let mut flows: Vec<Vec<Rational>> = vec![Vec::new()];
    for values in &axes {
        flows = flows
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut x = prefix.clone();
                    x.push(v.clone());
                    x
                })
            })
            .collect();
    }
    flows
        .into_iter()
        .map(|x| FlowAssignment::new(instance, x).expect("grid stays within demands"))
        .collect()
}

/// Every pair `(x, x')` on the grid, in lexicographic order.
pub fn search_grid(instance: &CycleInstance, step: &Rational) -> Result<SearchReport, ExplorerError> {
    if !step.is_positive() {
        return Err(ExplorerError::NonPositiveStep(format_rational(step)));
    }
    let flows = grid_flows(instance, step);
    let profiles: Vec<EdgeFlowProfile> = flows
        .iter()
        .map(|f| edge_flows(instance, f))
        .collect::<Result<_, _>>()?;

    let violations: Vec<Violation> = flows
        .par_iter()
        .zip(profiles.par_iter())
        .flat_map_iter(|(f, pf)| {
            flows.iter().zip(&profiles).filter_map(move |(fp, pfp)| {
                certificate_from_profiles(instance, f, pf, pfp).map(|certificate| Violation {
                    f: f.clone(),
                    f_prime: fp.clone(),
                    certificate,
                })
            })
        })
        .collect();

    let examined = (flows.len() as u64).pow(2);
    Ok(SearchReport {
        instance_summary: instance_summary(instance),
        mode: SearchMode::Grid { step: step.clone() },
        examined,
        violations,
    })
}

/// Random search with the default denominator bound.
pub fn search_random(instance: &CycleInstance, trials: u64, seed: u64) -> Result<SearchReport, ExplorerError> {
    search_random_with(instance, RandomSearch::new(trials, seed))
}

/// Trial `t` draws from its own ChaCha stream `(seed, t)`, so the report does
/// not depend on scheduling.
pub fn search_random_with(instance: &CycleInstance, params: RandomSearch) -> Result<SearchReport, ExplorerError> {
    if params.trials == 0 {
        return Err(ExplorerError::InvalidParameter("trials must be at least 1".into()));
    }
    if params.denominator == 0 {
        return Err(ExplorerError::InvalidParameter("denominator must be at least 1".into()));
    }
    let violations: Vec<Violation> = (0..params.trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = trial_rng(params.seed, t);
            let f = sample_flow(instance, params.denominator, &mut rng);
            let fp = sample_flow(instance, params.denominator, &mut rng);
            let pf = edge_flows(instance, &f).expect("sampled for instance");
            let pfp = edge_flows(instance, &fp).expect("sampled for instance");
            certificate_from_profiles(instance, &f, &pf, &pfp).map(|certificate| Violation {
                f,
                f_prime: fp,
                certificate,
            })
        })
        .collect();
    Ok(SearchReport {
        instance_summary: instance_summary(instance),
        mode: SearchMode::Random {
            trials: params.trials,
            seed: params.seed,
            denominator: params.denominator,
        },
        examined: params.trials,
        violations,
    })
}

pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `x_i = (j / denominator) * r_i` with `j` uniform in `0..=denominator`.
pub(crate) fn sample_flow<R: Rng>(instance: &CycleInstance, denominator: u64, rng: &mut R) -> FlowAssignment {
    let x = instance
        .demands()
        .map(|r| {
            let j = rng.random_range(0..=denominator);
            r * Rational::new(BigInt::from(j), BigInt::from(denominator))
        })
        .collect();
    FlowAssignment::new(instance, x).expect("sample within demands")
}
