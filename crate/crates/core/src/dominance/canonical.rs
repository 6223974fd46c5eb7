//! Canonical forms for two-commodity problems.
//!
//! Every two-commodity instance is a relabeling of one of four layouts, each
//! with vertex 0 as its anchor terminal and the segments `l_1..l_m` being the
//! arcs between consecutive distinct terminals:
//!
//! | configuration | terminals                   | segments                                           |
//! |---------------|-----------------------------|----------------------------------------------------|
//! | SamePair      | `s1 = s2 = 0`, `t1 = t2`    | `l1 = 0->t`, `l2 = t->0`                           |
//! | SharedVertex  | `s1 = s2 = 0 < t1 < t2`     | `l1 = 0->t1`, `l2 = t2->0`, `l3 = t1->t2`          |
//! | NonCrossing   | `0 = s1 < t1 < s2 < t2`     | `l1 = 0->t1`, `l2 = t1->s2`, `l3 = s2->t2`, `l4 = t2->0` |
//! | Crossing      | `0 = s1 < s2 < t1 < t2`     | `l1 = 0->s2`, `l2 = s2->t1`, `l3 = t1->t2`, `l4 = t2->0` |
//!
//! Segments are listed by their `l` index, which for SharedVertex is not the
//! clockwise order (`l3` sits between `l1` and `l2`).

use super::{DominanceError, SymmetryTransform};
use crate::model::{ArcPath, CycleInstance, FlowAssignment, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Configuration {
    /// `{s1, t1} = {s2, t2}`.
    SamePair,
    /// Exactly three distinct terminals.
    SharedVertex,
    /// Four distinct terminals, pairs do not interleave.
    NonCrossing,
    /// Four distinct terminals, pairs interleave.
    Crossing,
}

impl Configuration {
    pub const ALL: [Configuration; 4] = [
        Configuration::SamePair,
        Configuration::SharedVertex,
        Configuration::NonCrossing,
        Configuration::Crossing,
    ];

    pub fn segment_count(self) -> usize {
        match self {
            Configuration::SamePair => 2,
            Configuration::SharedVertex => 3,
            Configuration::NonCrossing | Configuration::Crossing => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Configuration::SamePair => "same-pair",
            Configuration::SharedVertex => "shared-vertex",
            Configuration::NonCrossing => "non-crossing",
            Configuration::Crossing => "crossing",
        }
    }

    /// Configuration of an arbitrary two-commodity instance.
    pub fn classify(instance: &CycleInstance) -> Result<Self, DominanceError> {
        let [c1, c2] = instance.commodities() else {
            return Err(DominanceError::NotTwoCommodities(instance.k()));
        };
        Ok(match instance.terminal_set().len() {
            2 => Configuration::SamePair,
            3 => Configuration::SharedVertex,
            _ => {
                let n = instance.n();
                if strictly_between(n, c1.s, c1.t, c2.s) != strictly_between(n, c1.s, c1.t, c2.t) {
                    Configuration::Crossing
                } else {
                    Configuration::NonCrossing
                }
            }
        })
    }
}

fn cw_distance(n: usize, from: Vertex, to: Vertex) -> usize {
    (to + n - from) % n
}

/// `x` lies strictly inside the clockwise arc `a -> b`.
fn strictly_between(n: usize, a: Vertex, b: Vertex, x: Vertex) -> bool {
    let d = cw_distance(n, a, x);
    d > 0 && d < cw_distance(n, a, b)
}

/// The arcs `l_1..l_m` of a canonical two-commodity instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentDecomposition {
    configuration: Configuration,
    segments: Vec<ArcPath>,
}

impl SegmentDecomposition {
    /// Decomposes an instance that is already in canonical form.
    pub fn of_canonical(instance: &CycleInstance) -> Result<Self, DominanceError> {
        let configuration = Configuration::classify(instance)?;
        let n = instance.n();
        let [c1, c2] = instance.commodities() else {
            unreachable!("classify checked k = 2");
        };
        let (s1, t1, s2, t2) = (c1.s, c1.t, c2.s, c2.t);
        let canonical = s1 == 0
            && match configuration {
                Configuration::SamePair => s2 == 0 && t2 == t1,
                Configuration::SharedVertex => s2 == 0 && t1 < t2,
                Configuration::NonCrossing => t1 < s2 && s2 < t2,
                Configuration::Crossing => s2 < t1 && t1 < t2,
            };
        if !canonical {
            return Err(DominanceError::Internal(format!(
                "instance is not in canonical {} form: ({s1},{t1}), ({s2},{t2})",
                configuration.name()
            )));
        }
        let arc = |a, b| ArcPath::new(n, a, b).expect("distinct canonical terminals");
        let segments = match configuration {
            Configuration::SamePair => vec![arc(0, t1), arc(t1, 0)],
            Configuration::SharedVertex => vec![arc(0, t1), arc(t2, 0), arc(t1, t2)],
            Configuration::NonCrossing => vec![arc(0, t1), arc(t1, s2), arc(s2, t2), arc(t2, 0)],
            Configuration::Crossing => vec![arc(0, s2), arc(s2, t1), arc(t1, t2), arc(t2, 0)],
        };
        Ok(Self {
            configuration,
            segments,
        })
    }

    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    pub fn segments(&self) -> &[ArcPath] {
        &self.segments
    }

    /// Segment `l_index` (1-based).
    pub fn l(&self, index: usize) -> ArcPath {
        self.segments[index - 1]
    }

    /// The arc made of the given segments, which must be contiguous and
    /// listed in clockwise order.
    pub fn join(&self, indices: &[usize]) -> ArcPath {
        let first = self.l(indices[0]);
        let last = self.l(indices[indices.len() - 1]);
        debug_assert!(indices
            .windows(2)
            .all(|w| self.l(w[0]).end() == self.l(w[1]).start()));
        ArcPath::new(first.cycle_len(), first.start(), last.end()).expect("proper sub-arc")
    }
}

/// A two-commodity problem relabeled into canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub instance: CycleInstance,
    pub f: FlowAssignment,
    pub f_prime: FlowAssignment,
    /// Maps the original problem onto the canonical one.
    pub transform: SymmetryTransform,
    pub decomposition: SegmentDecomposition,
}

impl Canonical {
    pub fn configuration(&self) -> Configuration {
        self.decomposition.configuration
    }

    /// Applies a further relabeling to an already canonical problem.
    pub(crate) fn relabel(&self, extra: &SymmetryTransform) -> Result<Canonical, DominanceError> {
        let instance = extra.apply_instance(&self.instance)?;
        Ok(Canonical {
            f: extra.apply_flow(&self.instance, &self.f)?,
            f_prime: extra.apply_flow(&self.instance, &self.f_prime)?,
            decomposition: SegmentDecomposition::of_canonical(&instance)?,
            instance,
            transform: self.transform.clone(),
        })
    }
}

/// Terminal-only relabeling that brings a two-commodity instance to canonical form.
pub(crate) fn canonical_transform(
    instance: &CycleInstance,
) -> Result<(Configuration, SymmetryTransform), DominanceError> {
    let configuration = Configuration::classify(instance)?;
    let n = instance.n();
    let [c1, c2] = instance.commodities() else {
        unreachable!("classify checked k = 2");
    };

    let (anchor, swap1, swap2, reflect) = match configuration {
        Configuration::SamePair => (c1.s, false, c2.s != c1.s, false),
        Configuration::SharedVertex => {
            let shared = if c2.has_terminal(c1.s) { c1.s } else { c1.t };
            let a = if c1.s == shared { c1.t } else { c1.s };
            let b = if c2.s == shared { c2.t } else { c2.s };
            let reflect = cw_distance(n, shared, a) > cw_distance(n, shared, b);
            (shared, c1.t == shared, c2.t == shared, reflect)
        }
        Configuration::NonCrossing => {
            // t1 must follow s1 directly; otherwise walk the other way round.
            let reflect = strictly_between(n, c1.s, c1.t, c2.s);
            let dist = |v| {
                if reflect {
                    cw_distance(n, v, c1.s)
                } else {
                    cw_distance(n, c1.s, v)
                }
            };
            (c1.s, false, dist(c2.t) < dist(c2.s), reflect)
        }
        Configuration::Crossing => {
            let swap2 = cw_distance(n, c1.s, c2.t) < cw_distance(n, c1.s, c1.t);
            (c1.s, false, swap2, false)
        }
    };
    let rotation = if reflect { anchor } else { (n - anchor) % n };
    let transform = SymmetryTransform::new(n, vec![0, 1], vec![swap1, swap2], reflect, rotation)?;
    Ok((configuration, transform))
}

/// Relabels a two-commodity problem into one of the four canonical layouts.
///
/// Edge flows are carried along: the canonical profile equals the original
/// profile with edges renamed by `transform`.
pub fn canonicalize(
    instance: &CycleInstance,
    f: &FlowAssignment,
    f_prime: &FlowAssignment,
) -> Result<Canonical, DominanceError> {
    if instance.k() != 2 {
        return Err(DominanceError::NotTwoCommodities(instance.k()));
    }
    let (_, transform) = canonical_transform(instance)?;
    let canon = transform.apply_instance(instance)?;
    Ok(Canonical {
        f: transform.apply_flow(instance, f)?,
        f_prime: transform.apply_flow(instance, f_prime)?,
        decomposition: SegmentDecomposition::of_canonical(&canon)?,
        instance: canon,
        transform,
    })
}
