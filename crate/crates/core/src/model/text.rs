//! Line-oriented text formats for instances and flows.
//!
//! ```text
//! # comment
//! cycle 6
//! commodity 0 3 3
//! commodity 1 4 5/2
//! ```
//!
//! A flow file holds a single line `flow <x_1> ... <x_k>`. Rationals are
//! written `p/q` in lowest terms, or `p` when the denominator is one.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Commodity, CycleInstance, FlowAssignment, ModelError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line number; 0 when the error concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Parses `p`, `-p` or `p/q` with `q > 0`.
pub fn parse_rational(token: &str) -> Option<Rational> {
    fn int(s: &str) -> Option<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match token.split_once('/') {
        None => int(token).map(Rational::from_integer),
        Some((p, q)) => {
            let p = int(p)?;
            if q.starts_with('-') {
                return None;
            }
            let q = int(q)?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
    }
}

/// Lowest-terms rendering: `p` when the denominator is one, else `p/q`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_vertex(line: usize, token: &str, n: usize) -> Result<usize, ParseError> {
    let v: usize = token
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid vertex `{token}`")))?;
    if v >= n {
        return Err(ParseError::new(
            line,
            format!("vertex {v} out of range for cycle of length {n}"),
        ));
    }
    Ok(v)
}

fn parse_value(line: usize, token: &str) -> Result<Rational, ParseError> {
    parse_rational(token).ok_or_else(|| ParseError::new(line, format!("invalid rational `{token}`")))
}

pub fn parse_instance(text: &str) -> Result<CycleInstance, ParseError> {
    let mut lines = content_lines(text);
    let (first, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty instance file"))?;
    let n = match header.as_slice() {
        ["cycle", n] => n
            .parse::<usize>()
            .map_err(|_| ParseError::new(first, format!("invalid cycle length `{n}`")))?,
        _ => return Err(ParseError::new(first, "expected `cycle <n>`")),
    };
    if n < 3 {
        return Err(ParseError::new(first, format!("cycle length {n} is below 3")));
    }

    let mut commodities = Vec::new();
    for (line, tokens) in lines {
        if tokens[0] != "commodity" {
            return Err(ParseError::new(line, format!("unexpected keyword `{}`", tokens[0])));
        }
        let [_, s, t, r] = tokens.as_slice() else {
            return Err(ParseError::new(line, "expected `commodity <s> <t> <r>`"));
        };
        let s = parse_vertex(line, s, n)?;
        let t = parse_vertex(line, t, n)?;
        let r = parse_value(line, r)?;
        if s == t {
            return Err(ParseError::new(line, format!("terminals coincide (s = t = {s})")));
        }
        if !r.is_positive() {
            return Err(ParseError::new(
                line,
                format!("demand {} must be strictly positive", format_rational(&r)),
            ));
        }
        commodities.push(Commodity::new(s, t, r));
    }
    if commodities.is_empty() {
        return Err(ParseError::new(first, "instance has no commodities"));
    }
    CycleInstance::new(n, commodities).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn parse_flow(text: &str, instance: &CycleInstance) -> Result<FlowAssignment, ParseError> {
    let mut lines = content_lines(text);
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty flow file"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(ParseError::new(extra, "flow file holds a single `flow` line"));
    }
    let Some((&"flow", values)) = tokens.split_first() else {
        return Err(ParseError::new(line, "expected `flow <x_1> ... <x_k>`"));
    };
    if values.len() != instance.k() {
        return Err(ParseError::new(
            line,
            format!("expected {} values, found {}", instance.k(), values.len()),
        ));
    }
    let x = values
        .iter()
        .map(|tok| parse_value(line, tok))
        .collect::<Result<Vec<_>, _>>()?;
    FlowAssignment::new(instance, x).map_err(|e| match e {
        ModelError::FlowExceedsDemand { index, x, r } => ParseError::new(
            line,
            format!("x exceeds demand for commodity {index} ({x} > {r})"),
        ),
        ModelError::NegativeFlow { index, x } => {
            ParseError::new(line, format!("x is negative for commodity {index} ({x})"))
        }
        other => ParseError::new(line, other.to_string()),
    })
}

impl CycleInstance {
    /// Renders the instance in the file format accepted by [`parse_instance`].
    pub fn to_text(&self) -> String {
        let mut out = format!("cycle {}\n", self.n());
        for c in self.commodities() {
            let _ = writeln!(out, "commodity {} {} {}", c.s, c.t, format_rational(&c.r));
        }
        out
    }
}

impl FlowAssignment {
    /// The single `flow ...` line, without a trailing newline.
    pub fn to_line(&self) -> String {
        let mut out = String::from("flow");
        for x in self.clockwise() {
            out.push(' ');
            out.push_str(&format_rational(x));
        }
        out
    }

    pub fn to_text(&self) -> String {
        self.to_line() + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIX_CYCLE: &str = "# three commodities, r = (3,3,3)\ncycle 6\ncommodity 0 3 3\ncommodity 1 4 3\ncommodity 2 5 3\n";

    #[test]
    fn parses_six_cycle_instance() {
        let inst = parse_instance(SIX_CYCLE).unwrap();
        assert_eq!(inst.n(), 6);
        assert_eq!(inst.k(), 3);
        assert_eq!(inst.commodities()[1].s, 1);
        assert_eq!(inst.commodities()[2].t, 5);
        assert_eq!(inst.to_text(), SIX_CYCLE.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n");
    }

    #[test]
    fn zero_flow_is_valid() {
        let inst = parse_instance(SIX_CYCLE).unwrap();
        let f = parse_flow("flow 0 0 0", &inst).unwrap();
        assert!(f.clockwise().iter().all(Zero::is_zero));
    }

    #[test]
    fn flow_exceeding_demand_is_rejected() {
        let inst = parse_instance("cycle 4\ncommodity 0 2 3\n").unwrap();
        let err = parse_flow("\n\nflow 7/2\n", &inst).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("x exceeds demand"), "{err}");
    }

    #[test]
    fn rational_syntax() {
        assert_eq!(parse_rational("6/4"), Some(Rational::new(3.into(), 2.into())));
        assert_eq!(parse_rational("-2"), Some(Rational::from_integer((-2).into())));
        for bad in ["", "1/0", "a", "1/", "/2", "1/-2", "+1", "1.5", "1/2/3"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
        assert_eq!(format_rational(&Rational::new(6.into(), 4.into())), "3/2");
        assert_eq!(format_rational(&Rational::new(8.into(), 4.into())), "2");
        assert_eq!(format_rational(&Rational::new((-1).into(), 3.into())), "-1/3");
    }

    #[test]
    fn instance_errors_name_the_line() {
        let cases = [
            ("cycel 6\n", 1, "expected `cycle"),
            ("cycle 2\ncommodity 0 1 1\n", 1, "below 3"),
            ("cycle 5\ncommodity 0 1 0\n", 2, "strictly positive"),
            ("cycle 5\ncommodity 0 1 -1/2\n", 2, "strictly positive"),
            ("cycle 5\n# c\ncommodity 3 3 1\n", 3, "coincide"),
            ("cycle 5\ncommodity 0 5 1\n", 2, "out of range"),
            ("cycle 5\ncommodity 0 1\n", 2, "expected `commodity"),
            ("cycle 5\nflow 1\n", 2, "unexpected keyword"),
            ("cycle 5\ncommodity 0 1 x\n", 2, "invalid rational"),
            ("cycle 5\n", 1, "no commodities"),
        ];
        for (text, line, needle) in cases {
            let err = parse_instance(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
            assert!(err.message.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn flow_errors() {
        let inst = parse_instance(SIX_CYCLE).unwrap();
        assert!(parse_flow("flow 1 1", &inst).unwrap_err().message.contains("expected 3 values"));
        assert!(parse_flow("flow 1 -1 1", &inst).unwrap_err().message.contains("negative"));
        assert!(parse_flow("flux 1 1 1", &inst).is_err());
        assert_eq!(parse_flow("flow 1 1 1\nflow 1 1 1", &inst).unwrap_err().line, 2);
        assert_eq!(parse_flow("", &inst).unwrap_err().line, 0);
    }

    #[test]
    fn serialization_is_lowest_terms() {
        let inst = parse_instance("cycle 3\ncommodity 0 1 12/8\ncommodity 1 2 4/2\n").unwrap();
        assert_eq!(inst.to_text(), "cycle 3\ncommodity 0 1 3/2\ncommodity 1 2 2\n");
        let f = parse_flow("flow 2/4 0/5", &inst).unwrap();
        assert_eq!(f.to_line(), "flow 1/2 0");
    }
}
