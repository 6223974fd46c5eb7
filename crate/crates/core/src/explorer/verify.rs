//! Randomized verification campaigns for one and two commodities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;

use super::search::{sample_flow, trial_rng, DEFAULT_DENOMINATOR};
use super::ExplorerError;
use crate::dominance::{witness_constructive, witnesses_bruteforce, Configuration, SymmetryTransform};
use crate::model::{parse_flow, parse_instance, Commodity, CycleInstance, FlowAssignment, ParseError, Rational};

const INSTANCE_MARK: &str = "# --- instance ---";
const F_MARK: &str = "# --- f ---";
const F_PRIME_MARK: &str = "# --- f' ---";

/// Demand `a / b` with `a, b` uniform in `1..=16`.
fn random_demand<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.random_range(1..=DEFAULT_DENOMINATOR);
    let den = rng.random_range(1..=DEFAULT_DENOMINATOR);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `m` distinct sorted labels from `1..n`.
fn sorted_labels<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    let mut v: Vec<usize> = index::sample(rng, n - 1, m).into_iter().map(|i| i + 1).collect();
    v.sort_unstable();
    v
}

/// A random instance with `k` commodities on a cycle of length `3..=max_n`.
///
/// For `k = 2` the configuration is drawn uniformly among those that fit the
/// cycle, laid out canonically and then moved by a random symmetry, so every
/// configuration and its images are covered.
pub fn random_instance<R: Rng>(rng: &mut R, k: usize, max_n: usize) -> CycleInstance {
    assert!(k >= 1 && max_n >= 3);
    let n = rng.random_range(3..=max_n);
    if k != 2 {
        let commodities = (0..k)
            .map(|_| {
                let ends = index::sample(rng, n, 2);
                Commodity::new(ends.index(0), ends.index(1), random_demand(rng))
            })
            .collect();
        return CycleInstance::new(n, commodities).expect("valid random instance");
    }

    let choices: &[Configuration] = if n >= 4 {
        &Configuration::ALL
    } else {
        &Configuration::ALL[..2]
    };
    let configuration = choices[rng.random_range(0..choices.len())];
    let ((s1, t1), (s2, t2)) = match configuration {
        Configuration::SamePair => {
            let t = rng.random_range(1..n);
            ((0, t), (0, t))
        }
        Configuration::SharedVertex => {
            let v = sorted_labels(rng, n, 2);
            ((0, v[0]), (0, v[1]))
        }
        Configuration::NonCrossing => {
            let v = sorted_labels(rng, n, 3);
            ((0, v[0]), (v[1], v[2]))
        }
        Configuration::Crossing => {
            let v = sorted_labels(rng, n, 3);
            ((0, v[1]), (v[0], v[2]))
        }
    };
    let canonical = CycleInstance::new(
        n,
        vec![
            Commodity::new(s1, t1, random_demand(rng)),
            Commodity::new(s2, t2, random_demand(rng)),
        ],
    )
    .expect("valid canonical layout");

    let mut perm = vec![0, 1];
    perm.shuffle(rng);
    let swaps = vec![rng.random_bool(0.5), rng.random_bool(0.5)];
    let transform =
        SymmetryTransform::new(n, perm, swaps, rng.random_bool(0.5), rng.random_range(0..n))
            .expect("valid transform");
    transform.apply_instance(&canonical).expect("same shape")
}

/// Two independent flows with the default denominator bound.
pub fn random_pair<R: Rng>(rng: &mut R, instance: &CycleInstance) -> (FlowAssignment, FlowAssignment) {
    let f = sample_flow(instance, DEFAULT_DENOMINATOR, rng);
    let fp = sample_flow(instance, DEFAULT_DENOMINATOR, rng);
    (f, fp)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub trial: u64,
    pub instance: CycleInstance,
    pub f: FlowAssignment,
    pub f_prime: FlowAssignment,
    pub reason: String,
}

impl VerifyFailure {
    /// Instance and both flows in the on-disk formats, as three sections
    /// headed by `# --- instance ---`, `# --- f ---` and `# --- f' ---`.
    pub fn reproduction(&self) -> String {
        format!(
            "# trial {}: {}\n{INSTANCE_MARK}\n{}{F_MARK}\n{}\n{F_PRIME_MARK}\n{}\n",
            self.trial,
            self.reason,
            self.instance.to_text(),
            self.f.to_line(),
            self.f_prime.to_line()
        )
    }

    /// Splits a [`VerifyFailure::reproduction`] block back into its parts.
    pub fn parse_reproduction(
        text: &str,
    ) -> Result<(CycleInstance, FlowAssignment, FlowAssignment), ParseError> {
        let section = |mark: &str, next: Option<&str>| -> Result<&str, ParseError> {
            let start = text.find(mark).ok_or_else(|| ParseError {
                line: 0,
                message: format!("missing `{mark}` section"),
            })? + mark.len();
            let rest = &text[start..];
            Ok(match next.and_then(|m| rest.find(m)) {
                Some(end) => &rest[..end],
                None => rest,
            })
        };
        let instance = parse_instance(section(INSTANCE_MARK, Some(F_MARK))?)?;
        let f = parse_flow(section(F_MARK, Some(F_PRIME_MARK))?, &instance)?;
        let f_prime = parse_flow(section(F_PRIME_MARK, None)?, &instance)?;
        Ok((instance, f, f_prime))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_n: usize,
    /// Trials per configuration name (`single` for one commodity).
    pub configurations: BTreeMap<&'static str, u64>,
    /// First failing trial, if any.
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "verify k={} trials={} seed={} max-n={}\n",
            self.k, self.trials, self.seed, self.max_n
        );
        for (name, count) in &self.configurations {
            let _ = writeln!(out, "  {name}: {count}");
        }
        match &self.failure {
            None => out.push_str("result: pass (every pair has a dominating path; constructive witness valid)\n"),
            Some(fail) => {
                out.push_str("result: FAIL\n");
                out.push_str(&fail.reproduction());
            }
        }
        out
    }
}

fn check_trial(
    trial: u64,
    instance: CycleInstance,
    f: FlowAssignment,
    f_prime: FlowAssignment,
) -> Result<&'static str, VerifyFailure> {
    let fail = |reason: String| VerifyFailure {
        trial,
        instance: instance.clone(),
        f: f.clone(),
        f_prime: f_prime.clone(),
        reason,
    };
    let all = witnesses_bruteforce(&instance, &f, &f_prime).map_err(|e| fail(e.to_string()))?;
    if all.is_empty() {
        return Err(fail("no dominating path exists".into()));
    }
    let w = witness_constructive(&instance, &f, &f_prime).map_err(|e| fail(e.to_string()))?;
    if !all.contains(&w) {
        return Err(fail(format!("constructive witness ({w}) not among brute-force witnesses")));
    }
    Ok(match instance.k() {
        1 => "single",
        _ => Configuration::classify(&instance)
            .map(Configuration::name)
            .map_err(|e| fail(e.to_string()))?,
    })
}

/// Checks `trials` random instances and flow pairs for `k` in `{1, 2}`.
pub fn verify(k: usize, trials: u64, seed: u64, max_n: usize) -> Result<VerifyReport, ExplorerError> {
    if !(1..=2).contains(&k) {
        return Err(ExplorerError::InvalidParameter(format!(
            "verification covers k = 1 or 2, got {k}; the property fails for k >= 3"
        )));
    }
    if trials == 0 {
        return Err(ExplorerError::InvalidParameter("trials must be at least 1".into()));
    }
    if max_n < 3 {
        return Err(ExplorerError::InvalidParameter(format!("max-n must be at least 3, got {max_n}")));
    }
    let outcomes: Vec<Result<&'static str, VerifyFailure>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let instance = random_instance(&mut rng, k, max_n);
            let (f, fp) = random_pair(&mut rng, &instance);
            check_trial(t, instance, f, fp)
        })
        .collect();

    let mut configurations = BTreeMap::new();
    let mut failure = None;
    for outcome in outcomes {
        match outcome {
            Ok(name) => *configurations.entry(name).or_insert(0) += 1,
            Err(f) => {
                failure.get_or_insert(f);
            }
        }
    }
    Ok(VerifyReport {
        k,
        trials,
        seed,
        max_n,
        configurations,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_campaigns_pass() {
        for k in [1, 2] {
            let report = verify(k, 2000, 3, 9).unwrap();
            assert!(report.passed(), "{}", report.summary());
            assert_eq!(report.configurations.values().sum::<u64>(), 2000);
        }
    }

    #[test]
    fn two_commodity_campaign_covers_every_configuration() {
        let report = verify(2, 400, 11, 8).unwrap();
        for c in Configuration::ALL {
            assert!(report.configurations[c.name()] > 0, "{}", c.name());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(verify(3, 10, 0, 6).is_err());
        assert!(verify(0, 10, 0, 6).is_err());
        assert!(verify(2, 0, 0, 6).is_err());
        assert!(verify(2, 10, 0, 2).is_err());
    }

    #[test]
    fn reproduction_parses_back() {
        let mut rng = trial_rng(5, 0);
        let instance = random_instance(&mut rng, 2, 10);
        let (f, fp) = random_pair(&mut rng, &instance);
        let fail = VerifyFailure {
            trial: 0,
            instance: instance.clone(),
            f: f.clone(),
            f_prime: fp,
            reason: "example".into(),
        };
        let parsed = VerifyFailure::parse_reproduction(&fail.reproduction()).unwrap();
        assert_eq!(parsed, (instance, f, fail.f_prime.clone()));
    }
}
