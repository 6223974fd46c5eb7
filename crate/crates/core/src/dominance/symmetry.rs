//! Relabelings of a cycle problem that preserve dominance.
//!
//! A transform maps vertex `v` to `(±v + rotation) mod n` (minus when
//! reflecting), reorders commodities and may swap each commodity's endpoints.
//! Paths are undirected, so none of these change which paths exist or how
//! much flows on them; only the labels move.

use num_traits::Zero;

use super::{DominanceError, DominanceWitness};
use crate::model::{ArcPath, Commodity, CycleInstance, EdgeFlowProfile, FlowAssignment, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryTransform {
    n: usize,
    /// New commodity `j` is old commodity `perm[j]`.
    perm: Vec<usize>,
    /// Indexed by new commodity: whether `(s, t)` is swapped.
    swaps: Vec<bool>,
    reflect: bool,
    rotation: usize,
}

impl SymmetryTransform {
    pub fn new(
        n: usize,
        perm: Vec<usize>,
        swaps: Vec<bool>,
        reflect: bool,
        rotation: usize,
    ) -> Result<Self, DominanceError> {
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(DominanceError::Internal(format!("{perm:?} is not a permutation")));
            }
        }
        if swaps.len() != k {
            return Err(DominanceError::Internal("swap flags do not match permutation".into()));
        }
        Ok(Self {
            n,
            perm,
            swaps,
            reflect,
            rotation: rotation % n,
        })
    }

    pub fn identity(n: usize, k: usize) -> Self {
        Self {
            n,
            perm: (0..k).collect(),
            swaps: vec![false; k],
            reflect: false,
            rotation: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect
            && self.rotation == 0
            && self.swaps.iter().all(|s| !s)
            && self.perm.iter().enumerate().all(|(j, &p)| j == p)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn endpoint_swaps(&self) -> &[bool] {
        &self.swaps
    }

    pub fn reflects(&self) -> bool {
        self.reflect
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    pub fn map_vertex(&self, v: Vertex) -> Vertex {
        if self.reflect {
            (self.rotation + self.n - v % self.n) % self.n
        } else {
            (v + self.rotation) % self.n
        }
    }

    /// Edge `(e, e+1)` goes to the edge joining the images of its ends.
    pub fn map_edge(&self, e: usize) -> usize {
        if self.reflect {
            (self.rotation + 2 * self.n - e - 1) % self.n
        } else {
            (e + self.rotation) % self.n
        }
    }

    pub fn map_path(&self, p: &ArcPath) -> ArcPath {
        let (a, b) = (self.map_vertex(p.start()), self.map_vertex(p.end()));
        let (start, end) = if self.reflect { (b, a) } else { (a, b) };
        ArcPath::new(self.n, start, end).expect("image of a valid arc")
    }

    /// New index of old commodity `i`.
    pub fn map_commodity(&self, i: usize) -> usize {
        self.perm
            .iter()
            .position(|&p| p == i)
            .expect("commodity index in range")
    }

    fn check(&self, instance: &CycleInstance) -> Result<(), DominanceError> {
        if instance.n() != self.n || instance.k() != self.perm.len() {
            return Err(DominanceError::Internal(format!(
                "transform for n={}, k={} applied to n={}, k={}",
                self.n,
                self.perm.len(),
                instance.n(),
                instance.k()
            )));
        }
        Ok(())
    }

    pub fn apply_instance(&self, instance: &CycleInstance) -> Result<CycleInstance, DominanceError> {
        self.check(instance)?;
        let old = instance.commodities();
        let commodities = self
            .perm
            .iter()
            .zip(&self.swaps)
            .map(|(&i, &swap)| {
                let c = &old[i];
                let (s, t) = (self.map_vertex(c.s), self.map_vertex(c.t));
                let (s, t) = if swap { (t, s) } else { (s, t) };
                Commodity::new(s, t, c.r.clone())
            })
            .collect();
        Ok(CycleInstance::new(self.n, commodities)?)
    }

    /// The flow on the transformed instance with the same path flows.
    ///
    /// The new clockwise path is the image of the old clockwise path exactly
    /// when reflection and endpoint swap cancel out.
    pub fn apply_flow(
        &self,
        instance: &CycleInstance,
        flow: &FlowAssignment,
    ) -> Result<FlowAssignment, DominanceError> {
        self.check(instance)?;
        let target = self.apply_instance(instance)?;
        let x = self
            .perm
            .iter()
            .zip(&self.swaps)
            .map(|(&i, &swap)| {
                let xi = &flow.clockwise()[i];
                if swap == self.reflect {
                    xi.clone()
                } else {
                    &instance.commodities()[i].r - xi
                }
            })
            .collect();
        Ok(FlowAssignment::new(&target, x)?)
    }

    pub fn apply_profile(&self, profile: &EdgeFlowProfile) -> EdgeFlowProfile {
        let mut out = vec![crate::model::Rational::zero(); profile.len()];
        for (e, v) in profile.values().iter().enumerate() {
            out[self.map_edge(e)] = v.clone();
        }
        EdgeFlowProfile::from_values(out)
    }

    pub fn apply_witness(&self, w: &DominanceWitness) -> DominanceWitness {
        DominanceWitness {
            commodity: self.map_commodity(w.commodity),
            path: self.map_path(&w.path),
        }
    }

    pub fn inverse(&self) -> SymmetryTransform {
        let k = self.perm.len();
        let mut perm = vec![0; k];
        let mut swaps = vec![false; k];
        for (j, &i) in self.perm.iter().enumerate() {
            perm[i] = j;
            swaps[i] = self.swaps[j];
        }
        let rotation = if self.reflect {
            self.rotation
        } else {
            (self.n - self.rotation) % self.n
        };
        SymmetryTransform {
            n: self.n,
            perm,
            swaps,
            reflect: self.reflect,
            rotation,
        }
    }
}
