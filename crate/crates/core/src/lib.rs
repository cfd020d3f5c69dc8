//! Numerical laboratory for multi-parameter maximal operators driven by the
//! Newton diagram of a multivariate polynomial.
//!
//! The crate has two layers:
//!
//! * an **exact layer** (integer / rational arithmetic) for the combinatorics:
//!   Newton diagram corners, primitive normal bundles, cone decompositions of
//!   the dyadic index lattice and the constants attached to them
//!   ([`diagram`]);
//! * a **numerical layer**, generic over the floating scalar via
//!   [`scalar::Real`], for everything measured on grids: maximal operators
//!   ([`maximal`]), the dyadic Calderon-Zygmund decomposition ([`cz`]),
//!   oscillatory-integral profiles ([`oscillatory`]) and empirical weak-type
//!   functionals ([`weaktype`]).
//!
//! Concrete `f64` type aliases for the numerical layer live at the crate root;
//! `f32` works everywhere the aliases do.

pub mod corpus;
pub mod cz;
pub mod diagram;
pub mod fit;
pub mod grid;
pub mod maximal;
pub mod oscillatory;
pub mod poly;
pub mod scalar;
pub mod weaktype;
pub mod window;

pub use poly::{ExponentVector, Polynomial, ScaledPolynomial};
pub use scalar::Real;

/// Double-precision polynomial.
pub type Poly64 = poly::Polynomial<f64>;
/// Double-precision rescaled polynomial.
pub type ScaledPoly64 = poly::ScaledPolynomial<f64>;
/// Double-precision grid function.
pub type GridFunction64 = grid::GridFunction<f64>;
/// Double-precision quadrature window.
pub type EtaWindow64 = window::EtaWindow<f64>;
/// Double-precision maximal-operator output.
pub type MaximalResult64 = maximal::MaximalResult<f64>;
