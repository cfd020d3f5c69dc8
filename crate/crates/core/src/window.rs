//! The smooth dyadic window and composite midpoint quadrature on its support.
//!
//! The window equals 1 on `[1, 2]`, vanishes outside `[1/2, 4]`, and is built
//! from exponential transitions, so all derivatives vanish at the cut-offs.

use crate::scalar::{r, Real};

fn bump_half<F: Real>(x: F) -> F {
    if x > F::zero() {
        (-x.recip()).exp()
    } else {
        F::zero()
    }
}

/// Smooth monotone step: 0 for `x <= 0`, 1 for `x >= 1`.
fn smooth_step<F: Real>(x: F) -> F {
    let a = bump_half(x);
    let b = bump_half(F::one() - x);
    if a == F::zero() {
        F::zero()
    } else {
        a / (a + b)
    }
}

/// The window function: `smooth_step(2(s - 1/2)) * smooth_step((4 - s)/2)`.
pub fn eta<F: Real>(s: F) -> F {
    smooth_step((s - r(0.5)) * r(2.0)) * smooth_step((r::<F>(4.0) - s) * r(0.5))
}

/// Composite midpoint rule on `[1/2, 4]` with the window folded into the
/// weights.
#[derive(Debug, Clone)]
pub struct EtaWindow<F> {
    order: usize,
    nodes: Vec<F>,
    weights: Vec<F>,
}

impl<F: Real> EtaWindow<F> {
    pub fn new(order: usize) -> Self {
        let order = order.max(2);
        let h = r::<F>(3.5) / r(order as f64);
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 0..order {
            let s = r::<F>(0.5) + h * r(i as f64 + 0.5);
            nodes.push(s);
            weights.push(eta(s) * h);
        }
        Self {
            order,
            nodes,
            weights,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[F] {
        &self.nodes
    }

    /// Window-weighted quadrature weights (node weight times `eta`).
    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    /// The window mass `integral of eta` under this rule.
    pub fn mass(&self) -> F {
        self.weights.iter().copied().sum()
    }
}

/// Midpoint nodes of `[0, 1]` (used for box averages): `order` nodes, each
/// with weight `1/order`.
pub fn unit_midpoint_nodes<F: Real>(order: usize) -> Vec<F> {
    let order = order.max(1);
    (0..order)
        .map(|i| r::<F>((i as f64 + 0.5) / order as f64))
        .collect()
}

/// Runs `f(multi_index)` over `{0..per_dim}^dims` in odometer order.
pub fn for_each_multi_index(dims: usize, per_dim: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; dims];
    loop {
        f(&idx);
        let mut d = 0;
        loop {
            if d == dims {
                return;
            }
            idx[d] += 1;
            if idx[d] < per_dim {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_plateau_and_support() {
        for s in [1.0, 1.25, 1.5, 1.99, 2.0] {
            assert_eq!(eta::<f64>(s), 1.0, "plateau at {s}");
        }
        for s in [0.0, 0.49, 0.5, 4.0, 4.5] {
            assert_eq!(eta::<f64>(s), 0.0, "support cut at {s}");
        }
        for s in [0.6, 0.9, 2.5, 3.5, 3.9] {
            let v = eta::<f64>(s);
            assert!(v > 0.0 && v < 1.0, "transition at {s}: {v}");
        }
    }

    #[test]
    fn window_mass_converges() {
        let coarse = EtaWindow::<f64>::new(128).mass();
        let fine = EtaWindow::<f64>::new(4096).mass();
        assert!((coarse - fine).abs() < 1e-3, "{coarse} vs {fine}");
        assert!(fine > 1.5 && fine < 3.5);
    }

    #[test]
    fn odometer_covers_grid() {
        let mut seen = Vec::new();
        for_each_multi_index(2, 3, |idx| seen.push(idx.to_vec()));
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(seen[8], vec![2, 2]);
    }
}
