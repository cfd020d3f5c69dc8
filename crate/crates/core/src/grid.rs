//! Nonnegative test functions sampled on a uniform 1-D grid.
//!
//! A grid function is a step function: `values[i]` lives on the cell
//! `[x_lo + i dx, x_lo + (i+1) dx)` and is interpreted as the sample at the
//! cell midpoint. Mass is exact for step data; pointwise evaluation uses
//! linear interpolation between midpoints and vanishes outside the domain.

use crate::scalar::Real;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid must have at least one cell")]
    Empty,
    #[error("grid step must be positive and finite")]
    BadStep,
    #[error("negative sample at cell {index}")]
    NegativeSample { index: usize },
    #[error("declared exact mass {declared} disagrees with the sampled mass {sampled}")]
    MassMismatch { declared: f64, sampled: f64 },
    #[error("grid is not aligned to dyadic intervals")]
    NotDyadicAligned,
}

/// Nonnegative samples at the midpoints of a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<F> {
    x_lo: F,
    dx: F,
    values: Vec<F>,
    exact_mass: Option<F>,
}

impl<F: Real> GridFunction<F> {
    pub fn new(x_lo: F, dx: F, values: Vec<F>) -> Result<Self, GridError> {
        if values.is_empty() {
            return Err(GridError::Empty);
        }
        if !(dx > F::zero()) || !dx.is_finite() {
            return Err(GridError::BadStep);
        }
        if let Some(index) = values.iter().position(|v| *v < F::zero() || !v.is_finite()) {
            return Err(GridError::NegativeSample { index });
        }
        Ok(Self {
            x_lo,
            dx,
            values,
            exact_mass: None,
        })
    }

    /// Attaches the exact L1 mass of step data; it must agree with the
    /// sampled mass to within 1e-12 relative.
    pub fn with_exact_mass(mut self, mass: F) -> Result<Self, GridError> {
        let sampled = self.mass();
        let scale = sampled.abs().max(mass.abs()).max(F::of(1e-300));
        if (sampled - mass).abs() > F::of(1e-12) * scale {
            return Err(GridError::MassMismatch {
                declared: mass.as_f64(),
                sampled: sampled.as_f64(),
            });
        }
        self.exact_mass = Some(mass);
        Ok(self)
    }

    /// All-zero grid over `[x_lo, x_lo + len dx)`.
    pub fn zero(x_lo: F, dx: F, len: usize) -> Self {
        Self {
            x_lo,
            dx,
            values: vec![F::zero(); len.max(1)],
            exact_mass: Some(F::zero()),
        }
    }

    /// Samples `f` at cell midpoints (must be nonnegative).
    pub fn from_fn(
        x_lo: F,
        dx: F,
        len: usize,
        f: impl Fn(F) -> F,
    ) -> Result<Self, GridError> {
        let values = (0..len)
            .map(|i| f(x_lo + dx * F::of(i as f64 + 0.5)))
            .collect();
        Self::new(x_lo, dx, values)
    }

    /// Indicator of `[a, b)` sampled on the grid; the exact mass is the
    /// sampled cell count times `dx`.
    pub fn indicator(x_lo: F, dx: F, len: usize, a: F, b: F) -> Result<Self, GridError> {
        let g = Self::from_fn(x_lo, dx, len, |x| {
            if x >= a && x < b {
                F::one()
            } else {
                F::zero()
            }
        })?;
        let mass = g.mass();
        g.with_exact_mass(mass)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x_lo(&self) -> F {
        self.x_lo
    }

    pub fn x_hi(&self) -> F {
        self.x_lo + self.dx * F::of(self.len() as f64)
    }

    pub fn dx(&self) -> F {
        self.dx
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn exact_mass(&self) -> Option<F> {
        self.exact_mass
    }

    pub fn midpoint(&self, i: usize) -> F {
        self.x_lo + self.dx * F::of(i as f64 + 0.5)
    }

    /// Sampled L1 mass `sum v_i dx` (exact for step data).
    pub fn mass(&self) -> F {
        self.values.iter().copied().sum::<F>() * self.dx
    }

    /// `sum v_i^2 dx`.
    pub fn l2_norm_sq(&self) -> F {
        self.values.iter().map(|&v| v * v).sum::<F>() * self.dx
    }

    pub fn sup(&self) -> F {
        self.values.iter().copied().fold(F::zero(), F::max)
    }

    /// Index range (inclusive, exclusive) of the nonzero cells, if any.
    pub fn support_cells(&self) -> Option<(usize, usize)> {
        let first = self.values.iter().position(|v| *v > F::zero())?;
        let last = self.values.iter().rposition(|v| *v > F::zero())?;
        Some((first, last + 1))
    }

    /// Linear interpolation between cell midpoints; zero outside the domain.
    #[inline]
    pub fn interpolate(&self, x: F) -> F {
        let u = (x - self.x_lo) / self.dx - F::of(0.5);
        let len = self.values.len();
        if u <= F::of(-1.0) || u >= F::of(len as f64) {
            return F::zero();
        }
        let i0 = u.floor();
        let frac = u - i0;
        let i0 = i0.as_f64() as isize;
        let at = |i: isize| -> F {
            if i < 0 || i as usize >= len {
                F::zero()
            } else {
                self.values[i as usize]
            }
        };
        at(i0) * (F::one() - frac) + at(i0 + 1) * frac
    }

    /// Pointwise scaling by `c >= 0`.
    pub fn scaled(&self, c: F) -> Self {
        Self {
            x_lo: self.x_lo,
            dx: self.dx,
            values: self.values.iter().map(|&v| v * c).collect(),
            exact_mass: self.exact_mass.map(|m| m * c),
        }
    }

    /// Translation by a whole number of cells (exact).
    pub fn translated_cells(&self, cells: i64) -> Self {
        Self {
            x_lo: self.x_lo + self.dx * F::of(cells as f64),
            dx: self.dx,
            values: self.values.clone(),
            exact_mass: self.exact_mass,
        }
    }

    /// Prefix sums of cell masses: entry `i` is the mass of the first `i`
    /// cells.
    pub fn prefix_masses(&self) -> Vec<F> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = F::zero();
        out.push(acc);
        for &v in &self.values {
            acc = acc + v * self.dx;
            out.push(acc);
        }
        out
    }

    /// True when `dx` is an exact power of two and `x_lo` is an exact
    /// multiple of `dx` (so cells align with the dyadic mesh).
    pub fn is_dyadic_aligned(&self) -> bool {
        let dx = self.dx.as_f64();
        if !(dx > 0.0) {
            return false;
        }
        let e = dx.log2().round();
        if 2f64.powi(e as i32) != dx {
            return false;
        }
        let ratio = self.x_lo.as_f64() / dx;
        ratio == ratio.round()
    }
}
