//! Newton diagram of a sparse polynomial: exact corner points, primitive
//! normal bundles, the cone partition of the dyadic index lattice, and the
//! rational constants attached to each corner.
//!
//! All arithmetic in this module is exact (integers and rationals); no floats
//! enter any decision.

pub mod geometry;

use crate::poly::{ExponentVector, Polynomial};
use crate::scalar::Real;
use geometry::{axis_index, cone_facets, det, dot, extreme_rays, fm_witness, Constraint, Rat};
use num_rational::Ratio;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Upper bound on the dimension handled by the exact machinery; enumeration
/// costs grow as `q_max^n`.
pub const MAX_DIMENSION: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("empty support")]
    EmptySupport,
    #[error("dimension {n} exceeds the exact-machinery cap {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index {q:?} has a negative component")]
    NegativeIndex { q: Vec<i64> },
    #[error("index {q:?} not representable in any cone (construction bug)")]
    IndexNotRepresentable { q: Vec<i64> },
    #[error("vertex index {index} out of range ({count} vertices)")]
    InvalidVertexIndex { index: usize, count: usize },
    #[error("{what} is nonpositive at vertex {vertex}")]
    NonpositiveRate { vertex: String, what: &'static str },
    #[error("zero-coordinate machinery not applicable at vertex {0}: {1}")]
    ZeroCoordNotApplicable(String, &'static str),
    #[error("geometry failure: {0}")]
    Geometry(String),
}

/// A positive rational rate with an explicit `+infinity` sentinel (empty
/// minimum).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rate {
    Finite(Ratio<i64>),
    Infinite,
}

impl Rate {
    pub fn is_finite(&self) -> bool {
        matches!(self, Rate::Finite(_))
    }

    pub fn ratio(&self) -> Option<Ratio<i64>> {
        match self {
            Rate::Finite(r) => Some(*r),
            Rate::Infinite => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Rate::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            Rate::Infinite => f64::INFINITY,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Rate::Finite(r) => *r.numer() > 0,
            Rate::Infinite => true,
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Finite(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Rate::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_ratios<S: Serializer>(v: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&Rate::Finite(*r))?;
    }
    seq.end()
}

/// One corner of the diagram together with its (possibly virtual, after
/// simplicial subdivision) primitive normal bundle and attached constants.
#[derive(Debug, Clone, Serialize)]
pub struct VertexData {
    /// The corner point `v_j`.
    pub vertex: ExponentVector,
    /// Index of the geometric corner this bundle belongs to (several virtual
    /// copies share one corner after subdivision).
    pub corner_index: usize,
    /// `n` primitive nonnegative normals, lexicographically sorted.
    pub normals: Vec<Vec<i64>>,
    /// Lattice denominator `d_j = |det(normals)|`.
    pub denominator: i64,
    /// Suppression rate of non-vertex terms per cone depth step.
    pub beta: Rate,
    /// Coordinates where the corner vanishes (the set `A`), 0-based.
    pub zero_coords: Vec<usize>,
    /// Complement of `zero_coords` (the set `B`), 0-based.
    pub nonzero_coords: Vec<usize>,
    /// For each `i` in `A`, the slot of the normal equal to the `i`-th axis
    /// vector, when the bundle contains it.
    pub axis_slots: Vec<(usize, usize)>,
    /// Axis-direction suppression rates over `A` (entries may be infinite
    /// when every support point shares the vanishing pattern). `None` when
    /// `A` is empty.
    pub gamma: Option<Vec<Rate>>,
    /// True when the geometric corner had more than `n` facets and was
    /// subdivided.
    pub degenerate: bool,
    /// Strictly positive rational weight `w` with `w.vertex < w.u` for every
    /// other support point; stored so soundness can be re-checked.
    #[serde(serialize_with = "serialize_ratios")]
    pub witness: Vec<Ratio<i64>>,
}

/// Scaling data derived from one vertex bundle.
#[derive(Debug, Clone)]
pub struct ScalingConstants {
    /// `c_N = 2^{-N * depth_exponent}`.
    pub depth_exponent: Ratio<i64>,
    /// For each slot `m`: the `(n-1)`-vector of `normals[i].vertex / d`,
    /// `i != m`, in slot order.
    pub slot_scalings: Vec<Vec<Ratio<i64>>>,
    /// For zero-coordinate vertices with a complete axis bundle: the
    /// `|B|`-vector over the non-axis normals.
    pub zero_coord_scalings: Option<Vec<Ratio<i64>>>,
}

impl VertexData {
    fn ratio(&self, num: i128) -> Ratio<i64> {
        Ratio::new(
            i64::try_from(num).expect("desk-scale arithmetic fits i64"),
            self.denominator,
        )
    }

    /// `(1/d) (sum of normals) . vertex`; the depth contraction is
    /// `2^{-N * this}` per cone depth `N`.
    pub fn depth_scaling_exponent(&self) -> Ratio<i64> {
        let sum = self.normal_sum();
        self.ratio(dot(&sum, self.vertex.components()))
    }

    fn normal_sum(&self) -> Vec<i64> {
        let n = self.vertex.dim();
        let mut sum = vec![0i64; n];
        for normal in &self.normals {
            for (s, &x) in sum.iter_mut().zip(normal) {
                *s += x;
            }
        }
        sum
    }

    /// `sigma_m`: per-offset contraction exponents for slot `m` (0-based),
    /// the vector of `normals[i].vertex / d` over `i != m`.
    pub fn slot_scalings(&self, m: usize) -> Vec<Ratio<i64>> {
        (0..self.normals.len())
            .filter(|&i| i != m)
            .map(|i| self.ratio(dot(&self.normals[i], self.vertex.components())))
            .collect()
    }

    /// All scaling constants at once.
    pub fn scaling_constants(&self) -> ScalingConstants {
        ScalingConstants {
            depth_exponent: self.depth_scaling_exponent(),
            slot_scalings: (0..self.normals.len())
                .map(|m| self.slot_scalings(m))
                .collect(),
            zero_coord_scalings: self.zero_coord_rays().ok().map(|(_, b_slots)| {
                b_slots
                    .iter()
                    .map(|&i| self.ratio(dot(&self.normals[i], self.vertex.components())))
                    .collect()
            }),
        }
    }

    /// The stored axis-direction rates, failing when `A` is empty or some
    /// rate is not strictly positive.
    pub fn gamma_constant(&self) -> Result<Vec<Rate>, DiagramError> {
        let gamma = self.gamma.as_ref().ok_or_else(|| {
            DiagramError::ZeroCoordNotApplicable(self.vertex.to_string(), "no vanishing coordinate")
        })?;
        if gamma.iter().any(|g| !g.is_positive()) {
            return Err(DiagramError::NonpositiveRate {
                vertex: self.vertex.to_string(),
                what: "gamma",
            });
        }
        Ok(gamma.clone())
    }

    /// Splits the normal slots into (axis slots over `A`, remaining slots),
    /// failing when some axis of `A` has no parallel normal in this bundle
    /// (possible for virtual copies of subdivided corners).
    pub fn zero_coord_rays(&self) -> Result<(Vec<usize>, Vec<usize>), DiagramError> {
        if self.zero_coords.is_empty() {
            return Err(DiagramError::ZeroCoordNotApplicable(
                self.vertex.to_string(),
                "no vanishing coordinate",
            ));
        }
        if self.axis_slots.len() != self.zero_coords.len() {
            return Err(DiagramError::ZeroCoordNotApplicable(
                self.vertex.to_string(),
                "bundle lacks an axis normal",
            ));
        }
        let a_slots: Vec<usize> = self.axis_slots.iter().map(|&(_, slot)| slot).collect();
        let b_slots: Vec<usize> = (0..self.normals.len())
            .filter(|slot| !a_slots.contains(slot))
            .collect();
        Ok((a_slots, b_slots))
    }

    /// The lattice index `q = sum_i (n_i / d) normal_i` for the given
    /// numerators, when it is a lattice point.
    pub fn index_from_numerators(&self, numerators: &[i64]) -> Option<Vec<i64>> {
        let n = self.vertex.dim();
        let mut q = vec![0i128; n];
        for (num, normal) in numerators.iter().zip(&self.normals) {
            for (qk, &nk) in q.iter_mut().zip(normal) {
                *qk += *num as i128 * nk as i128;
            }
        }
        let d = self.denominator as i128;
        if q.iter().any(|&x| x % d != 0) {
            return None;
        }
        Some(q.into_iter().map(|x| (x / d) as i64).collect())
    }

    /// Lattice index for slot-`m` data `(N, offsets)`: numerators are `N` at
    /// slot `m` and `N + k_i` elsewhere.
    pub fn index_from_slot(&self, m: usize, level: i64, offsets: &[i64]) -> Option<Vec<i64>> {
        let n = self.normals.len();
        debug_assert_eq!(offsets.len(), n - 1);
        let mut numerators = Vec::with_capacity(n);
        let mut off = offsets.iter();
        for i in 0..n {
            if i == m {
                numerators.push(level);
            } else {
                numerators.push(level + off.next().unwrap());
            }
        }
        self.index_from_numerators(&numerators)
    }

    /// Lattice index for zero-coordinate data: numerators `kbar` over the
    /// axis slots of `A` and `lbar` over the remaining slots.
    pub fn index_from_zero_coord(&self, kbar: &[i64], lbar: &[i64]) -> Option<Vec<i64>> {
        let (a_slots, b_slots) = self.zero_coord_rays().ok()?;
        if kbar.len() != a_slots.len() || lbar.len() != b_slots.len() {
            return None;
        }
        let mut numerators = vec![0i64; self.normals.len()];
        for (&slot, &k) in a_slots.iter().zip(kbar) {
            numerators[slot] = k;
        }
        for (&slot, &l) in b_slots.iter().zip(lbar) {
            numerators[slot] = l;
        }
        self.index_from_numerators(&numerators)
    }
}

/// Decomposition of a dyadic index into cone coordinates at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDecomposition {
    /// Index into [`NewtonDiagram::vertices`].
    pub vertex_index: usize,
    /// Slot `m`, 0-based: the normal whose numerator attains the minimum.
    pub slot: usize,
    /// Depth `N = min_i n_i`.
    pub level: i64,
    /// Offsets `k_i = n_i - N` for `i != slot`, in slot order.
    pub offsets: Vec<i64>,
    /// Exact numerators `n_i` with `q = sum_i (n_i / d) normal_i`.
    pub numerators: Vec<i64>,
    /// The lattice denominator of the owning cone.
    pub denominator: i64,
}

/// The Newton diagram: support, geometric corners, and per-corner bundles.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonDiagram {
    pub n: usize,
    /// Support points, lexicographically sorted.
    pub support: Vec<ExponentVector>,
    /// Geometric corner points (subset of the support), lexicographic.
    pub corners: Vec<ExponentVector>,
    /// Vertex bundles, ordered by corner then by subcone.
    pub vertices: Vec<VertexData>,
}

/// One failed exact check found by [`NewtonDiagram::verify_partition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PartitionViolation {
    /// `q` lies in no cone.
    NotCovered { q: Vec<i64> },
    /// `q` lies strictly inside the open cones of two distinct corners.
    OverlappingOpenCones { q: Vec<i64>, corners: Vec<usize> },
    /// `q . (u - v_j) >= beta_j N` fails for some decomposition of `q`.
    DepthBound {
        q: Vec<i64>,
        vertex_index: usize,
        support_point: ExponentVector,
    },
}

/// Outcome of the exhaustive lattice sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub q_max: i64,
    pub indices_checked: u64,
    pub violations: Vec<PartitionViolation>,
}

impl PartitionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl NewtonDiagram {
    /// Builds the diagram of a polynomial (uses only its support).
    pub fn build<F: Real>(p: &Polynomial<F>) -> Result<Self, DiagramError> {
        Self::from_support(p.dimension(), p.support().cloned().collect())
    }

    /// Builds the diagram from a support set.
    pub fn from_support(n: usize, mut support: Vec<ExponentVector>) -> Result<Self, DiagramError> {
        if support.is_empty() {
            return Err(DiagramError::EmptySupport);
        }
        if n == 0 || n > MAX_DIMENSION {
            return Err(DiagramError::DimensionTooLarge {
                n,
                max: MAX_DIMENSION,
            });
        }
        if let Some(bad) = support.iter().find(|m| m.dim() != n) {
            return Err(DiagramError::Dimension {
                expected: n,
                got: bad.dim(),
            });
        }
        support.sort();
        support.dedup();

        // Corner points: strictly positive rational weight separating v from
        // the rest of the support.
        let mut corners: Vec<(ExponentVector, Vec<Ratio<i64>>)> = Vec::new();
        for v in &support {
            let mut constraints: Vec<Constraint> = (0..n)
                .map(|i| {
                    let mut row = vec![0i64; n];
                    row[i] = 1;
                    Constraint::from_integers(&row, 1)
                })
                .collect();
            for u in &support {
                if u != v {
                    constraints.push(Constraint::from_integers(&u.diff(v), 1));
                }
            }
            if let Some(w) = fm_witness(&constraints, n) {
                let w64 = w
                    .iter()
                    .map(|r| {
                        Ratio::new(
                            i64::try_from(*r.numer()).expect("witness fits i64"),
                            i64::try_from(*r.denom()).expect("witness fits i64"),
                        )
                    })
                    .collect();
                corners.push((v.clone(), w64));
            }
        }
        if corners.is_empty() {
            return Err(DiagramError::Geometry(
                "no corner point found (separation infeasible everywhere)".into(),
            ));
        }

        let mut vertices = Vec::new();
        for (corner_index, (vertex, witness)) in corners.iter().enumerate() {
            let rays = if n == 2 {
                Self::rays_n2(&support, &corners, corner_index)
            } else {
                let mut constraints: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        let mut row = vec![0i64; n];
                        row[i] = 1;
                        row
                    })
                    .collect();
                for u in &support {
                    if u != vertex {
                        constraints.push(u.diff(vertex));
                    }
                }
                extreme_rays(&constraints, n)
            };
            if rays.len() < n || geometry::rank(&rays) != n {
                return Err(DiagramError::Geometry(format!(
                    "normal cone at {vertex} is not full-dimensional"
                )));
            }
            // Convexity check, exact: every normal weakly separates.
            for ray in &rays {
                for u in &support {
                    if dot(ray, &u.diff(vertex)) < 0 {
                        return Err(DiagramError::Geometry(format!(
                            "normal {ray:?} at {vertex} violates convexity against {u}"
                        )));
                    }
                }
            }
            let bundles: Vec<Vec<Vec<i64>>> = if rays.len() == n {
                vec![rays]
            } else {
                geometry::triangulate_cone(&rays, n)
                    .into_iter()
                    .map(|idx| idx.into_iter().map(|i| rays[i].clone()).collect())
                    .collect()
            };
            let degenerate = bundles.len() > 1;
            for normals in bundles {
                vertices.push(Self::make_vertex(
                    &support,
                    vertex,
                    corner_index,
                    normals,
                    degenerate,
                    witness.clone(),
                )?);
            }
        }

        Ok(Self {
            n,
            support,
            corners: corners.into_iter().map(|(v, _)| v).collect(),
            vertices,
        })
    }

    /// n = 2 fast path: normals from the monotone lower-left hull edges plus
    /// the two axis rays. Corners are already lexicographically sorted, which
    /// for corner points means increasing first and decreasing second
    /// coordinate.
    fn rays_n2(
        _support: &[ExponentVector],
        corners: &[(ExponentVector, Vec<Ratio<i64>>)],
        j: usize,
    ) -> Vec<Vec<i64>> {
        let edge = |a: &ExponentVector, b: &ExponentVector| -> Vec<i64> {
            let d = b.diff(a);
            geometry::primitive(vec![-d[1], d[0]])
        };
        let mut rays = Vec::new();
        if j == 0 {
            rays.push(vec![1, 0]);
        } else {
            rays.push(edge(&corners[j - 1].0, &corners[j].0));
        }
        if j + 1 == corners.len() {
            rays.push(vec![0, 1]);
        } else {
            rays.push(edge(&corners[j].0, &corners[j + 1].0));
        }
        rays.sort();
        rays.dedup();
        rays
    }

    fn make_vertex(
        support: &[ExponentVector],
        vertex: &ExponentVector,
        corner_index: usize,
        normals: Vec<Vec<i64>>,
        degenerate: bool,
        witness: Vec<Ratio<i64>>,
    ) -> Result<VertexData, DiagramError> {
        let n = vertex.dim();
        let d128 = det(&normals).abs();
        let denominator = i64::try_from(d128).expect("denominator fits i64");
        if denominator == 0 {
            return Err(DiagramError::Geometry(format!(
                "dependent normal bundle at {vertex}"
            )));
        }
        let mut sum = vec![0i64; n];
        for normal in &normals {
            for (s, &x) in sum.iter_mut().zip(normal) {
                *s += x;
            }
        }
        let beta = support
            .iter()
            .filter(|u| *u != vertex)
            .map(|u| dot(&sum, &u.diff(vertex)))
            .min()
            .map(|m| {
                Rate::Finite(Ratio::new(
                    i64::try_from(m).expect("fits i64"),
                    denominator,
                ))
            })
            .unwrap_or(Rate::Infinite);
        if !beta.is_positive() {
            return Err(DiagramError::NonpositiveRate {
                vertex: vertex.to_string(),
                what: "beta",
            });
        }
        let zero_coords = vertex.zero_coordinates();
        let nonzero_coords: Vec<usize> = (0..n).filter(|i| !zero_coords.contains(i)).collect();
        let axis_slots: Vec<(usize, usize)> = zero_coords
            .iter()
            .filter_map(|&i| {
                normals
                    .iter()
                    .position(|r| axis_index(r) == Some(i))
                    .map(|slot| (i, slot))
            })
            .collect();
        let gamma = if zero_coords.is_empty() {
            None
        } else {
            let outside: Vec<&ExponentVector> = support
                .iter()
                .filter(|u| zero_coords.iter().any(|&i| u.component(i) != 0))
                .collect();
            Some(
                zero_coords
                    .iter()
                    .map(|&i| {
                        outside
                            .iter()
                            .map(|u| u.component(i))
                            .min()
                            .map(|m| Rate::Finite(Ratio::new(m, denominator)))
                            .unwrap_or(Rate::Infinite)
                    })
                    .collect(),
            )
        };
        Ok(VertexData {
            vertex: vertex.clone(),
            corner_index,
            normals,
            denominator,
            beta,
            zero_coords,
            nonzero_coords,
            axis_slots,
            gamma,
            degenerate,
            witness,
        })
    }

    pub fn vertex(&self, j: usize) -> Result<&VertexData, DiagramError> {
        self.vertices.get(j).ok_or(DiagramError::InvalidVertexIndex {
            index: j,
            count: self.vertices.len(),
        })
    }

    /// Exact cone numerators of `q` at vertex `j` (Cramer), or `None` when
    /// some coordinate is negative.
    pub fn cone_numerators(&self, j: usize, q: &[i64]) -> Option<Vec<i64>> {
        let v = &self.vertices[j];
        let n = self.n;
        // Matrix with the normals as columns.
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| v.normals[c][r]).collect())
            .collect();
        let dm = det(&rows);
        debug_assert_eq!(dm.abs(), v.denominator as i128);
        let sign = if dm >= 0 { 1i128 } else { -1 };
        let mut numerators = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = rows.clone();
            for (r, row) in m.iter_mut().enumerate() {
                row[i] = q[r];
            }
            let num = sign * det(&m);
            if num < 0 {
                return None;
            }
            numerators.push(i64::try_from(num).expect("numerator fits i64"));
        }
        debug_assert_eq!(
            v.index_from_numerators(&numerators).as_deref(),
            Some(q),
            "Cramer reconstruction must be exact"
        );
        Some(numerators)
    }

    /// Classifies a dyadic index into `(vertex, slot, level, offsets)`.
    /// Ownership ties are broken by the smallest vertex index, then the
    /// smallest slot.
    pub fn decompose_index(&self, q: &[i64]) -> Result<IndexDecomposition, DiagramError> {
        if q.len() != self.n {
            return Err(DiagramError::Dimension {
                expected: self.n,
                got: q.len(),
            });
        }
        if q.iter().any(|&x| x < 0) {
            return Err(DiagramError::NegativeIndex { q: q.to_vec() });
        }
        for j in 0..self.vertices.len() {
            if let Some(numerators) = self.cone_numerators(j, q) {
                let level = *numerators.iter().min().expect("n >= 1");
                let slot = numerators.iter().position(|&x| x == level).expect("min");
                let offsets = numerators
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != slot)
                    .map(|(_, &x)| x - level)
                    .collect();
                return Ok(IndexDecomposition {
                    vertex_index: j,
                    slot,
                    level,
                    offsets,
                    numerators,
                    denominator: self.vertices[j].denominator,
                });
            }
        }
        Err(DiagramError::IndexNotRepresentable { q: q.to_vec() })
    }

    /// All vertices whose closed cone contains `q`, with numerators.
    pub fn memberships(&self, q: &[i64]) -> Vec<(usize, Vec<i64>)> {
        (0..self.vertices.len())
            .filter_map(|j| self.cone_numerators(j, q).map(|nums| (j, nums)))
            .collect()
    }

    /// Is `q` strictly inside the open cone of the given geometric corner?
    pub fn in_open_cone(&self, corner_index: usize, q: &[i64]) -> bool {
        let corner = &self.corners[corner_index];
        self.support
            .iter()
            .filter(|u| *u != corner)
            .all(|u| {
                u.diff(corner)
                    .iter()
                    .zip(q)
                    .map(|(&d, &qi)| d as i128 * qi as i128)
                    .sum::<i128>()
                    > 0
            })
    }

    /// Exhaustive sweep over `q` with components in `0..=q_max`:
    /// (a) every index is covered by some cone,
    /// (b) open cones of distinct corners are disjoint,
    /// (c) the depth bound `q.(u - v_j) >= beta_j N` holds exactly for every
    ///     membership.
    pub fn verify_partition(&self, q_max: i64) -> PartitionReport {
        use rayon::prelude::*;
        let n = self.n;
        let side = (q_max + 1) as u64;
        let total = side.pow(n as u32);
        let violations: Vec<PartitionViolation> = (0..total)
            .into_par_iter()
            .map(|code| {
                let mut q = vec![0i64; n];
                let mut c = code;
                for slot in q.iter_mut() {
                    *slot = (c % side) as i64;
                    c /= side;
                }
                self.check_index(&q)
            })
            .flatten()
            .collect();
        PartitionReport {
            q_max,
            indices_checked: total,
            violations,
        }
    }

    fn check_index(&self, q: &[i64]) -> Vec<PartitionViolation> {
        let mut out = Vec::new();
        let memberships = self.memberships(q);
        if memberships.is_empty() {
            out.push(PartitionViolation::NotCovered { q: q.to_vec() });
        }
        let open: Vec<usize> = (0..self.corners.len())
            .filter(|&c| self.in_open_cone(c, q))
            .collect();
        if open.len() > 1 {
            out.push(PartitionViolation::OverlappingOpenCones {
                q: q.to_vec(),
                corners: open,
            });
        }
        for (j, numerators) in &memberships {
            let v = &self.vertices[*j];
            let Rate::Finite(beta) = v.beta else { continue };
            let level = *numerators.iter().min().expect("n >= 1") as i128;
            for u in &self.support {
                if u == &v.vertex {
                    continue;
                }
                // q.(u - v) >= (num/den) N  <=>  den * q.(u - v) >= num * N.
                let lhs = *beta.denom() as i128
                    * u.diff(&v.vertex)
                        .iter()
                        .zip(q)
                        .map(|(&d, &qi)| d as i128 * qi as i128)
                        .sum::<i128>();
                let rhs = *beta.numer() as i128 * level;
                if lhs < rhs {
                    out.push(PartitionViolation::DepthBound {
                        q: q.to_vec(),
                        vertex_index: *j,
                        support_point: u.clone(),
                    });
                }
            }
        }
        out
    }

    /// Exact re-check of the convexity inequalities for every stored normal.
    pub fn verify_normal_inequalities(&self) -> bool {
        self.vertices.iter().all(|v| {
            v.normals.iter().all(|ray| {
                self.support
                    .iter()
                    .all(|u| dot(ray, &u.diff(&v.vertex)) >= 0)
            })
        })
    }

    /// Exact re-check of every stored corner witness: strictly positive and
    /// strictly separating.
    pub fn verify_corner_witnesses(&self) -> bool {
        self.corners.iter().enumerate().all(|(c, corner)| {
            let witness = &self
                .vertices
                .iter()
                .find(|v| v.corner_index == c)
                .expect("corner has a bundle")
                .witness;
            if witness.iter().any(|w| *w.numer() <= 0) {
                return false;
            }
            let value = |m: &ExponentVector| -> Ratio<i64> {
                m.components()
                    .iter()
                    .zip(witness.iter())
                    .map(|(&mi, w)| Ratio::from_integer(mi) * *w)
                    .sum()
            };
            let at_corner = value(corner);
            self.support
                .iter()
                .filter(|u| *u != corner)
                .all(|u| value(u) > at_corner)
        })
    }

    /// Facets of the normal cone at vertex `j` (used by subdivision tests).
    pub fn vertex_cone_facets(&self, j: usize) -> Vec<(Vec<i64>, Vec<usize>)> {
        cone_facets(&self.vertices[j].normals, self.n)
    }
}
