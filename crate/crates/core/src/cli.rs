//! Subcommands behind the `cycleflow` binary.
//!
//! Exit codes: 0 = dominating path found / no violations / verification
//! passed, 1 = violation found or verification failed, 2 = usage or parse
//! error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dominance::{witness_constructive_explained, witnesses_bruteforce, DominanceError};
use crate::explorer::{self, check_violation, paper_instance_k3, RandomSearch, ViolationCertificate};
use crate::model::{
    edge_flows, format_rational, parse_flow, parse_instance, parse_rational, CycleInstance,
    EdgeFlowProfile, FlowAssignment,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const LABELS: &str = "Edge labels: files use 0-based edge indices, where edge j joins vertices j and \
(j+1) mod n. Tables use 1-based labels e_j, so e_j is edge j-1.";

#[derive(Debug, Parser)]
#[command(
    name = "cycleflow",
    version,
    about = "Path dominance between multicommodity flows on a cycle",
    after_help = LABELS
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Enumerate every dominating path (any k).
    Brute,
    /// Follow the case analysis to one dominating path (k <= 2).
    Constructive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look for a path that dominates f' under f.
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        flow: PathBuf,
        #[arg(long = "flow-prime")]
        flow_prime: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Search flow pairs for violations on a grid or at random.
    Search {
        #[arg(long)]
        instance: PathBuf,
        /// Grid spacing, `p/q` or integer.
        #[arg(long = "grid-step", conflicts_with = "random", required_unless_present = "random")]
        grid_step: Option<String>,
        #[arg(long, requires_all = ["trials", "seed"])]
        random: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Sampling denominator bound for random mode.
        #[arg(long, default_value_t = explorer::DEFAULT_DENOMINATOR,
              value_parser = clap::value_parser!(u64).range(1..))]
        denominator: u64,
    },
    /// Rebuild the six-vertex three-commodity counterexample and print its edge-flow table.
    #[command(name = "paper-k3", after_help = LABELS)]
    PaperK3,
    /// Random verification campaign for one or two commodities.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long = "max-n", default_value_t = 12,
              value_parser = clap::value_parser!(u64).range(3..))]
        max_n: u64,
    },
}

/// Exit code and the text to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub code: i32,
    pub text: String,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        Self { code: EXIT_OK, text }
    }

    fn usage(text: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            text: text.into(),
        }
    }
}

pub fn run(config: CliConfig) -> CmdOutput {
    match config.command {
        Command::Check {
            instance,
            flow,
            flow_prime,
            method,
        } => cmd_check(&instance, &flow, &flow_prime, method),
        Command::Search {
            instance,
            grid_step,
            random,
            trials,
            seed,
            denominator,
        } => {
            let mode = match (grid_step, random, trials, seed) {
                (Some(step), false, _, _) => SearchArgs::Grid(step),
                (None, true, Some(trials), Some(seed)) => SearchArgs::Random(RandomSearch {
                    trials,
                    seed,
                    denominator,
                }),
                _ => return CmdOutput::usage("search needs --grid-step Q or --random --trials N --seed S"),
            };
            cmd_search(&instance, mode)
        }
        Command::PaperK3 => cmd_paper_k3(),
        Command::Verify {
            k,
            trials,
            seed,
            max_n,
        } => cmd_verify(k, trials, seed, max_n as usize),
    }
}

fn read(path: &Path) -> Result<String, CmdOutput> {
    std::fs::read_to_string(path).map_err(|e| CmdOutput::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<CycleInstance, CmdOutput> {
    parse_instance(&read(path)?).map_err(|e| CmdOutput::usage(format!("{}: {e}", path.display())))
}

fn load_flow(path: &Path, instance: &CycleInstance) -> Result<FlowAssignment, CmdOutput> {
    parse_flow(&read(path)?, instance).map_err(|e| CmdOutput::usage(format!("{}: {e}", path.display())))
}

fn profile_line(profile: &EdgeFlowProfile) -> String {
    profile
        .values()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_certificate(out: &mut String, cert: &ViolationCertificate) {
    let _ = writeln!(out, "no dominating path; violation certificate ({} entries):", cert.len());
    for entry in cert.entries() {
        let _ = writeln!(out, "{entry}");
    }
}

pub fn cmd_check(instance: &Path, flow: &Path, flow_prime: &Path, method: Method) -> CmdOutput {
    let loaded = (|| {
        let inst = load_instance(instance)?;
        let f = load_flow(flow, &inst)?;
        let fp = load_flow(flow_prime, &inst)?;
        Ok::<_, CmdOutput>((inst, f, fp))
    })();
    let (inst, f, fp) = match loaded {
        Ok(v) => v,
        Err(out) => return out,
    };
    if method == Method::Constructive && inst.k() > 2 {
        return CmdOutput::usage(DominanceError::Unsupported(inst.k()).to_string());
    }

    let mut out = String::new();
    let _ = writeln!(out, "edge flows f : {}", profile_line(&edge_flows(&inst, &f).expect("parsed together")));
    let _ = writeln!(out, "edge flows f': {}", profile_line(&edge_flows(&inst, &fp).expect("parsed together")));
    let all = witnesses_bruteforce(&inst, &f, &fp).expect("parsed together");

    match method {
        Method::Brute => {
            if all.is_empty() {
                let cert = check_violation(&inst, &f, &fp)
                    .expect("parsed together")
                    .expect("no witness implies a certificate");
                write_certificate(&mut out, &cert);
                return CmdOutput {
                    code: EXIT_VIOLATION,
                    text: out,
                };
            }
            let _ = writeln!(out, "dominating paths ({}):", all.len());
            for w in &all {
                let _ = writeln!(out, "witness {w}");
            }
            CmdOutput::ok(out)
        }
        Method::Constructive => match witness_constructive_explained(&inst, &f, &fp) {
            Ok((w, derivation)) => {
                let config = derivation.configuration.map_or("single commodity", |c| c.name());
                let _ = writeln!(out, "witness {w}");
                let _ = writeln!(
                    out,
                    "case: {config}{}; {}",
                    if derivation.flow_symmetry { " (symmetric sub-case)" } else { "" },
                    derivation.step
                );
                let _ = writeln!(
                    out,
                    "brute-force check: {}",
                    if all.contains(&w) { "contained" } else { "NOT contained" }
                );
                CmdOutput::ok(out)
            }
            Err(e) => CmdOutput {
                code: EXIT_VIOLATION,
                text: format!("{out}{e}\n"),
            },
        },
    }
}

pub enum SearchArgs {
    Grid(String),
    Random(RandomSearch),
}

pub fn cmd_search(instance: &Path, args: SearchArgs) -> CmdOutput {
    let inst = match load_instance(instance) {
        Ok(i) => i,
        Err(out) => return out,
    };
    let report = match args {
        SearchArgs::Grid(step) => {
            let Some(step) = parse_rational(&step) else {
                return CmdOutput::usage(format!("invalid grid step `{step}`"));
            };
            explorer::search_grid(&inst, &step)
        }
        SearchArgs::Random(params) => explorer::search_random_with(&inst, params),
    };
    match report {
        Ok(report) => CmdOutput {
            code: if report.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION },
            text: report.to_text(),
        },
        Err(e) => CmdOutput::usage(e.to_string()),
    }
}

/// Reproduces the six-vertex table; exit 0 iff both rows match and both
/// directions are violations.
pub fn cmd_paper_k3() -> CmdOutput {
    const ROW_F: [i64; 6] = [5, 4, 5, 4, 5, 4];
    const ROW_F_PRIME: [i64; 6] = [4, 5, 4, 5, 4, 5];

    let (inst, f, fp) = paper_instance_k3();
    let pf = edge_flows(&inst, &f).expect("counterexample flows");
    let pfp = edge_flows(&inst, &fp).expect("counterexample flows");

    let mut out = String::new();
    let _ = writeln!(out, "cycle of length {}, r = (3, 3, 3)", inst.n());
    for (i, c) in inst.commodities().iter().enumerate() {
        let _ = writeln!(out, "commodity {}: s={} t={} r={}", i + 1, c.s, c.t, format_rational(&c.r));
    }
    let _ = writeln!(out, "{}", f.to_line().replacen("flow", "f  (clockwise)", 1));
    let _ = writeln!(out, "{}", fp.to_line().replacen("flow", "f' (clockwise)", 1));
    out.push('\n');
    let row = |label: &str, values: Vec<String>| {
        let cells: String = values.iter().map(|v| format!("{v:>3}")).collect();
        format!("{label:<8}{cells}\n")
    };
    out.push_str(&row("j", (1..=inst.n()).map(|j| j.to_string()).collect()));
    out.push_str(&row("f(e_j)", pf.values().iter().map(format_rational).collect()));
    out.push_str(&row("f'(e_j)", pfp.values().iter().map(format_rational).collect()));
    out.push('\n');

    let matches = |p: &EdgeFlowProfile, want: [i64; 6]| {
        p.values().iter().zip(want).all(|(v, w)| *v == crate::model::Rational::from_integer(w.into()))
    };
    let table_ok = matches(&pf, ROW_F) && matches(&pfp, ROW_F_PRIME);
    let forward = check_violation(&inst, &f, &fp).expect("counterexample flows");
    let backward = check_violation(&inst, &fp, &f).expect("counterexample flows");
    for (label, cert) in [("f  vs f'", &forward), ("f' vs f ", &backward)] {
        match cert {
            Some(c) => {
                let _ = writeln!(out, "{label}: every positive-flow path loses on some edge ({} paths)", c.len());
            }
            None => {
                let _ = writeln!(out, "{label}: a dominating path exists");
            }
        }
    }
    let both = forward.is_some() && backward.is_some();
    if both {
        out.push_str("no dominating path in either direction\n");
    }
    if !table_ok {
        out.push_str("edge-flow table does not match the expected rows\n");
    }
    CmdOutput {
        code: if table_ok && both { EXIT_OK } else { EXIT_VIOLATION },
        text: out,
    }
}

pub fn cmd_verify(k: usize, trials: u64, seed: u64, max_n: usize) -> CmdOutput {
    if !(1..=2).contains(&k) {
        return CmdOutput::usage(format!(
            "verify supports k = 1 or 2 only (got {k}); for k >= 3 a dominating path need not \
             exist, see `cycleflow paper-k3`"
        ));
    }
    match explorer::verify(k, trials, seed, max_n) {
        Ok(report) => CmdOutput {
            code: if report.passed() { EXIT_OK } else { EXIT_VIOLATION },
            text: report.summary(),
        },
        Err(e) => CmdOutput::usage(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_table_layout() {
        let out = cmd_paper_k3();
        assert_eq!(out.code, EXIT_OK, "{}", out.text);
        assert!(out.text.contains("j         1  2  3  4  5  6\n"), "{}", out.text);
        assert!(out.text.contains("f(e_j)    5  4  5  4  5  4\n"));
        assert!(out.text.contains("f'(e_j)   4  5  4  5  4  5\n"));
        assert!(out.text.ends_with("no dominating path in either direction\n"));
    }

    #[test]
    fn verify_rejects_three_commodities() {
        let out = cmd_verify(3, 10, 1, 6);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.text.contains("paper-k3"));
    }

    #[test]
    fn cli_parses_subcommands() {
        let c = CliConfig::try_parse_from(["cycleflow", "search", "--instance", "x", "--random", "--trials", "5", "--seed", "1"]).unwrap();
        assert!(matches!(c.command, Command::Search { random: true, trials: Some(5), .. }));
        assert!(CliConfig::try_parse_from(["cycleflow", "search", "--instance", "x"]).is_err());
        assert!(CliConfig::try_parse_from(["cycleflow", "search", "--instance", "x", "--random"]).is_err());
        assert!(CliConfig::try_parse_from(["cycleflow", "verify", "--k", "2", "--trials", "0", "--seed", "1"]).is_err());
        assert!(CliConfig::try_parse_from(["cycleflow", "check", "--instance", "a", "--flow", "b", "--flow-prime", "c", "--method", "constructive"]).is_ok());
    }
}
