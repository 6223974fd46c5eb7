//! Cycle instances, arc paths and flows.
//!
//! Vertices are labeled `0..n`; edge `j` joins vertices `j` and `(j + 1) mod n`.
//! "Clockwise" means walking in the direction of increasing labels (mod n).
//! Human-facing tables elsewhere use 1-based labels `e_j`, which map to edge
//! index `j - 1` here.
//!
//! A commodity `(s, t, r)` has exactly two paths on a cycle: the clockwise
//! arc from `s` to `t` and its complement. A [`FlowAssignment`] stores only the
//! clockwise amount `x_i` per commodity; the complement carries `r_i - x_i`,
//! so every value of the type is a feasible flow.

mod text;

pub use text::{format_rational, parse_flow, parse_instance, parse_rational, ParseError};

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational number used for every demand, flow and comparison.
pub type Rational = BigRational;

/// Vertex label in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("cycle length {0} is below the minimum of 3")]
    CycleTooShort(usize),
    #[error("instance has no commodities")]
    NoCommodities,
    #[error("vertex {vertex} is out of range for a cycle of length {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("terminals coincide: s = t = {0}")]
    SameTerminals(Vertex),
    #[error("demand {0} is not strictly positive")]
    NonPositiveDemand(String),
    #[error("commodity index {index} out of range (k = {k})")]
    CommodityIndex { index: usize, k: usize },
    #[error("flow has {got} entries but the instance has {expected} commodities")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("flow {x} for commodity {index} is negative")]
    NegativeFlow { index: usize, x: String },
    #[error("flow {x} for commodity {index} exceeds demand {r}")]
    FlowExceedsDemand { index: usize, x: String, r: String },
    #[error("path {start}->{end} is not a path of commodity {index}")]
    ForeignPath {
        index: usize,
        start: Vertex,
        end: Vertex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Commodity {
    pub s: Vertex,
    pub t: Vertex,
    pub r: Rational,
}

impl Commodity {
    pub fn new(s: Vertex, t: Vertex, r: Rational) -> Self {
        Self { s, t, r }
    }

    /// Whether `v` is one of this commodity's terminals.
    pub fn has_terminal(&self, v: Vertex) -> bool {
        self.s == v || self.t == v
    }
}

/// A contiguous clockwise arc of edges `start, start+1, ..., end-1` (mod n).
///
/// Never empty and never the whole cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcPath {
    start: Vertex,
    end: Vertex,
    n: usize,
}

impl ArcPath {
    pub fn new(n: usize, start: Vertex, end: Vertex) -> Result<Self, ModelError> {
        if n < 3 {
            return Err(ModelError::CycleTooShort(n));
        }
        for v in [start, end] {
            if v >= n {
                return Err(ModelError::VertexOutOfRange { vertex: v, n });
            }
        }
        if start == end {
            return Err(ModelError::SameTerminals(start));
        }
        Ok(Self { start, end, n })
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn end(&self) -> Vertex {
        self.end
    }

    pub fn cycle_len(&self) -> usize {
        self.n
    }

    /// Number of edges on the arc.
    pub fn len(&self) -> usize {
        (self.end + self.n - self.start) % self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Edge indices in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(move |i| (self.start + i) % self.n)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        e < self.n && (e + self.n - self.start) % self.n < self.len()
    }

    /// The other arc between the same two vertices.
    pub fn complement(&self) -> ArcPath {
        ArcPath {
            start: self.end,
            end: self.start,
            n: self.n,
        }
    }

    /// Whether the two arcs share no edge.
    pub fn is_disjoint(&self, other: &ArcPath) -> bool {
        self.edges().all(|e| !other.contains_edge(e))
    }
}

impl fmt::Display for ArcPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} [", self.start, self.end)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// Which of a commodity's two paths an [`ArcPath`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleInstance {
    n: usize,
    commodities: Vec<Commodity>,
}

impl CycleInstance {
    pub fn new(n: usize, commodities: Vec<Commodity>) -> Result<Self, ModelError> {
        if n < 3 {
            return Err(ModelError::CycleTooShort(n));
        }
        if commodities.is_empty() {
            return Err(ModelError::NoCommodities);
        }
        for c in &commodities {
            Self::check_commodity(n, c)?;
        }
        Ok(Self { n, commodities })
    }

    fn check_commodity(n: usize, c: &Commodity) -> Result<(), ModelError> {
        for v in [c.s, c.t] {
            if v >= n {
                return Err(ModelError::VertexOutOfRange { vertex: v, n });
            }
        }
        if c.s == c.t {
            return Err(ModelError::SameTerminals(c.s));
        }
        if !c.r.is_positive() {
            return Err(ModelError::NonPositiveDemand(format_rational(&c.r)));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.commodities.len()
    }

    pub fn commodities(&self) -> &[Commodity] {
        &self.commodities
    }

    pub fn commodity(&self, i: usize) -> Result<&Commodity, ModelError> {
        self.commodities.get(i).ok_or(ModelError::CommodityIndex {
            index: i,
            k: self.k(),
        })
    }

    pub fn demands(&self) -> impl Iterator<Item = &Rational> {
        self.commodities.iter().map(|c| &c.r)
    }

    /// Distinct terminal vertices, sorted.
    pub fn terminal_set(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.commodities.iter().flat_map(|c| [c.s, c.t]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Clockwise arc from `s` to `t`.
    pub fn clockwise_path(&self, s: Vertex, t: Vertex) -> Result<ArcPath, ModelError> {
        ArcPath::new(self.n, s, t)
    }

    /// `(clockwise, counterclockwise)` paths of commodity `i`.
    pub fn paths_of(&self, i: usize) -> Result<(ArcPath, ArcPath), ModelError> {
        let c = self.commodity(i)?;
        let cw = ArcPath {
            start: c.s,
            end: c.t,
            n: self.n,
        };
        Ok((cw, cw.complement()))
    }

    /// Orientation of `path` relative to commodity `i`, or an error if `path`
    /// does not join that commodity's terminals.
    pub fn orientation_of(&self, i: usize, path: &ArcPath) -> Result<Orientation, ModelError> {
        let c = self.commodity(i)?;
        if path.n == self.n && path.start == c.s && path.end == c.t {
            Ok(Orientation::Clockwise)
        } else if path.n == self.n && path.start == c.t && path.end == c.s {
            Ok(Orientation::Counterclockwise)
        } else {
            Err(ModelError::ForeignPath {
                index: i,
                start: path.start,
                end: path.end,
            })
        }
    }
}

/// Per-commodity clockwise split `x_i`, with `0 <= x_i <= r_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlowAssignment {
    x: Vec<Rational>,
}

impl FlowAssignment {
    pub fn new(instance: &CycleInstance, x: Vec<Rational>) -> Result<Self, ModelError> {
        if x.len() != instance.k() {
            return Err(ModelError::DimensionMismatch {
                expected: instance.k(),
                got: x.len(),
            });
        }
        for (index, (xi, c)) in x.iter().zip(instance.commodities()).enumerate() {
            if xi.is_negative() {
                return Err(ModelError::NegativeFlow {
                    index,
                    x: format_rational(xi),
                });
            }
            if *xi > c.r {
                return Err(ModelError::FlowExceedsDemand {
                    index,
                    x: format_rational(xi),
                    r: format_rational(&c.r),
                });
            }
        }
        Ok(Self { x })
    }

    /// Convenience constructor from integers.
    pub fn from_integers(instance: &CycleInstance, x: &[i64]) -> Result<Self, ModelError> {
        Self::new(instance, x.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn clockwise(&self) -> &[Rational] {
        &self.x
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    fn check_dims(&self, instance: &CycleInstance) -> Result<(), ModelError> {
        if self.x.len() != instance.k() {
            return Err(ModelError::DimensionMismatch {
                expected: instance.k(),
                got: self.x.len(),
            });
        }
        Ok(())
    }

    /// `f(p)` for commodity `i`'s path `path`.
    pub fn path_flow(
        &self,
        instance: &CycleInstance,
        i: usize,
        path: &ArcPath,
    ) -> Result<Rational, ModelError> {
        self.check_dims(instance)?;
        Ok(match instance.orientation_of(i, path)? {
            Orientation::Clockwise => self.x[i].clone(),
            Orientation::Counterclockwise => &instance.commodities[i].r - &self.x[i],
        })
    }
}

/// `f(e)` for every edge, in edge-index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeFlowProfile(Vec<Rational>);

impl EdgeFlowProfile {
    pub fn from_values(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, e: usize) -> &Rational {
        &self.0[e]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// Edge flows of `flow` on `instance`.
pub fn edge_flows(
    instance: &CycleInstance,
    flow: &FlowAssignment,
) -> Result<EdgeFlowProfile, ModelError> {
    flow.check_dims(instance)?;
    let n = instance.n;
    let mut out = vec![Rational::zero(); n];
    for (c, x) in instance.commodities.iter().zip(&flow.x) {
        let ccw = &c.r - x;
        let cw = ArcPath {
            start: c.s,
            end: c.t,
            n,
        };
        for (e, slot) in out.iter_mut().enumerate() {
            if cw.contains_edge(e) {
                *slot += x;
            } else {
                *slot += &ccw;
            }
        }
    }
    Ok(EdgeFlowProfile(out))
}
