use std::fmt::Write as _;

use super::{CertificateEntry, ExplorerError, ViolationCertificate};
use crate::model::{format_rational, parse_flow, parse_rational, ArcPath, CycleInstance, FlowAssignment, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Grid { step: Rational },
    Random { trials: u64, seed: u64, denominator: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub f: FlowAssignment,
    pub f_prime: FlowAssignment,
    pub certificate: ViolationCertificate,
}

/// Outcome of a grid or random search over flow pairs.
///
/// Text form:
///
/// ```text
/// # instance n=6 k=3 commodities 0-3:3 1-4:3 2-5:3
/// mode grid
/// params step=1
/// examined 4096
/// violations 2
/// flow 2 1 2
/// flow 1 2 1
/// cert <i> <path-start> <path-end> <edge> <f(e)> <f'(e)>
/// ...
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SearchReport {
    pub instance_summary: String,
    pub mode: SearchMode,
    pub examined: u64,
    pub violations: Vec<Violation>,
}

pub(crate) fn instance_summary(instance: &CycleInstance) -> String {
    let mut out = format!("n={} k={} commodities", instance.n(), instance.k());
    for c in instance.commodities() {
        let _ = write!(out, " {}-{}:{}", c.s, c.t, format_rational(&c.r));
    }
    out
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("# instance {}\n", self.instance_summary);
        match &self.mode {
            SearchMode::Grid { step } => {
                out.push_str("mode grid\n");
                let _ = writeln!(out, "params step={}", format_rational(step));
            }
            SearchMode::Random {
                trials,
                seed,
                denominator,
            } => {
                out.push_str("mode random\n");
                let _ = writeln!(out, "params trials={trials} seed={seed} denominator={denominator}");
            }
        }
        let _ = writeln!(out, "examined {}", self.examined);
        let _ = writeln!(out, "violations {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(out, "{}", v.f.to_line());
            let _ = writeln!(out, "{}", v.f_prime.to_line());
            for entry in v.certificate.entries() {
                let _ = writeln!(out, "{entry}");
            }
        }
        out
    }

    /// Parses a report produced by [`SearchReport::to_text`] for `instance`.
    pub fn parse(text: &str, instance: &CycleInstance) -> Result<SearchReport, ExplorerError> {
        let err = |line: usize, message: String| ExplorerError::ReportParse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .peekable();

        let mut header = |key: &str| -> Result<(usize, String), ExplorerError> {
            match lines.next() {
                Some((no, l)) => match l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')) {
                    Some(rest) => Ok((no, rest.to_string())),
                    None => Err(err(no, format!("expected `{key} ...`"))),
                },
                None => Err(err(0, format!("missing `{key}` line"))),
            }
        };
        let (mode_line, mode) = header("mode")?;
        let (params_line, params) = header("params")?;
        let (examined_line, examined) = header("examined")?;
        let (count_line, count) = header("violations")?;

        let param = |name: &str| -> Result<String, ExplorerError> {
            params
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(name).and_then(|v| v.strip_prefix('=')))
                .map(str::to_string)
                .ok_or_else(|| err(params_line, format!("missing parameter `{name}`")))
        };
        let int = |line: usize, v: &str| -> Result<u64, ExplorerError> {
            v.parse().map_err(|_| err(line, format!("invalid integer `{v}`")))
        };
        let mode = match mode.as_str() {
            "grid" => {
                let step = param("step")?;
                SearchMode::Grid {
                    step: parse_rational(&step)
                        .ok_or_else(|| err(params_line, format!("invalid step `{step}`")))?,
                }
            }
            "random" => SearchMode::Random {
                trials: int(params_line, &param("trials")?)?,
                seed: int(params_line, &param("seed")?)?,
                denominator: int(params_line, &param("denominator")?)?,
            },
            other => return Err(err(mode_line, format!("unknown mode `{other}`"))),
        };
        let examined = int(examined_line, &examined)?;
        let count = int(count_line, &count)? as usize;

        let mut violations = Vec::with_capacity(count);
        let mut lines = lines;
        while let Some((no, line)) = lines.next() {
            let f = parse_flow(line, instance).map_err(|e| err(no, e.message))?;
            let (no2, line2) = lines
                .next()
                .ok_or_else(|| err(no, "violation block lacks the second flow".into()))?;
            let f_prime = parse_flow(line2, instance).map_err(|e| err(no2, e.message))?;
            let mut entries = Vec::new();
            while let Some(&(no, line)) = lines.peek() {
                if !line.starts_with("cert ") {
                    break;
                }
                lines.next();
                entries.push(parse_cert(no, line, instance)?);
            }
            violations.push(Violation {
                f,
                f_prime,
                certificate: ViolationCertificate::new(entries),
            });
        }
        if violations.len() != count {
            return Err(err(
                count_line,
                format!("header announces {count} violations, found {}", violations.len()),
            ));
        }
        Ok(SearchReport {
            instance_summary: instance_summary(instance),
            mode,
            examined,
            violations,
        })
    }
}

fn parse_cert(line: usize, text: &str, instance: &CycleInstance) -> Result<CertificateEntry, ExplorerError> {
    let err = |message: String| ExplorerError::ReportParse { line, message };
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let ["cert", i, start, end, edge, fe, fpe] = tokens.as_slice() else {
        return Err(err("expected `cert <i> <start> <end> <edge> <f(e)> <f'(e)>`".into()));
    };
    let num = |v: &str| v.parse::<usize>().map_err(|_| err(format!("invalid index `{v}`")));
    let rat = |v: &str| parse_rational(v).ok_or_else(|| err(format!("invalid rational `{v}`")));
    let path = ArcPath::new(instance.n(), num(start)?, num(end)?).map_err(|e| err(e.to_string()))?;
    Ok(CertificateEntry {
        commodity: num(i)?,
        path,
        edge: num(edge)?,
        f_edge: rat(fe)?,
        f_prime_edge: rat(fpe)?,
    })
}
