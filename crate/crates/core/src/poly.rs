//! Sparse multivariate polynomials over a floating scalar.
//!
//! Coefficients are floats; exponents and every dyadic multiplier exponent
//! `q . (v - v_j)` stay in exact integer arithmetic so the cone logic never
//! sees rounding.

use crate::scalar::Real;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors produced by polynomial parsing and algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable t{index} exceeds dimension {n}")]
    VariableIndex { index: usize, n: usize },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("empty support after collecting terms")]
    EmptySupport,
    #[error("vertex {0} is not in the support")]
    VertexNotInSupport(ExponentVector),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero-coordinate set {given:?} inconsistent with vertex {vertex}")]
    InconsistentZeroSet {
        given: Vec<usize>,
        vertex: ExponentVector,
    },
}

/// An exponent tuple `m = (m_1, ..., m_n)`, all components nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    /// Builds an exponent vector, rejecting negative components.
    pub fn new(components: Vec<i64>) -> Result<Self, PolyError> {
        if let Some(pos) = components.iter().position(|&c| c < 0) {
            return Err(PolyError::NegativeExponent { pos });
        }
        Ok(Self(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn component(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Component-wise difference `self - other` (may be negative).
    pub fn diff(&self, other: &ExponentVector) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// Dot product with an integer vector.
    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    /// Total degree `m_1 + ... + m_n`.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Indices `i` with `m_i = 0`.
    pub fn zero_coordinates(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == 0).collect()
    }
}

impl From<&[i64]> for ExponentVector {
    fn from(v: &[i64]) -> Self {
        Self::new(v.to_vec()).expect("nonnegative exponents")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sparse polynomial `P(t) = sum a_m t^m` in `n` variables.
///
/// Stored coefficients are never zero. The zero polynomial (empty support) is
/// representable because splits produce it, but [`Polynomial::parse`] rejects
/// it.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<F> {
    n: usize,
    terms: BTreeMap<ExponentVector, F>,
}

impl<F: Real> Polynomial<F> {
    /// The zero polynomial in `n` variables.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, collecting
    /// duplicates and dropping exact-zero coefficients.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (ExponentVector, F)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<ExponentVector, F> = BTreeMap::new();
        for (m, a) in terms {
            if m.dim() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    got: m.dim(),
                });
            }
            let entry = map.entry(m).or_insert_with(F::zero);
            *entry = *entry + a;
        }
        map.retain(|_, a| *a != F::zero());
        Ok(Self { n, terms: map })
    }

    /// Parses the fixed text grammar: `term (('+'|'-') term)*` with
    /// `term = coeff ['*' var^exp ...]`, variables `t1..tn`, whitespace
    /// insensitive.
    pub fn parse(text: &str, n: usize) -> Result<Self, PolyError> {
        let mut parser = Parser {
            bytes: text.as_bytes(),
            pos: 0,
            n,
        };
        let terms = parser.poly()?;
        let p = Self::from_terms(n, terms)?;
        if p.terms.is_empty() {
            return Err(PolyError::EmptySupport);
        }
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// One term only.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The support set, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, F)> + '_ {
        self.terms.iter().map(|(m, &a)| (m, a))
    }

    pub fn coefficient(&self, m: &ExponentVector) -> Option<F> {
        self.terms.get(m).copied()
    }

    /// Largest per-term total degree (0 for the zero polynomial).
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates `P(t)`.
    pub fn evaluate(&self, t: &[F]) -> F {
        debug_assert_eq!(t.len(), self.n);
        let mut acc = F::zero();
        for (m, &a) in &self.terms {
            let mut prod = a;
            for (i, &mi) in m.components().iter().enumerate() {
                if mi != 0 {
                    prod = prod * t[i].powi(mi as i32);
                }
            }
            acc = acc + prod;
        }
        acc
    }

    /// Exact term-wise gradient at `t`.
    pub fn gradient(&self, t: &[F]) -> Vec<F> {
        debug_assert_eq!(t.len(), self.n);
        let mut grad = vec![F::zero(); self.n];
        for (m, &a) in &self.terms {
            for k in 0..self.n {
                let mk = m.component(k);
                if mk == 0 {
                    continue;
                }
                let mut prod = a * F::of(mk as f64);
                for (i, &mi) in m.components().iter().enumerate() {
                    let e = if i == k { mi - 1 } else { mi };
                    if e != 0 {
                        prod = prod * t[i].powi(e as i32);
                    }
                }
                grad[k] = grad[k] + prod;
            }
        }
        grad
    }

    /// Euclidean norm of the gradient at `t`.
    pub fn gradient_norm(&self, t: &[F]) -> F {
        self.gradient(t)
            .into_iter()
            .map(|g| g * g)
            .fold(F::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Upper bound on `|P|` over `[lo, hi]^n` (`0 <= lo <= hi`) by summing
    /// `|a_m| hi^{|m|}`.
    pub fn sup_bound_on_box(&self, hi: F) -> F {
        let mut acc = F::zero();
        for (m, &a) in &self.terms {
            acc = acc + a.abs() * hi.powi(m.total_degree() as i32);
        }
        acc
    }

    /// Upper bound on `|grad P|` (sum of component bounds) over `[lo, hi]^n`.
    pub fn gradient_bound_on_box(&self, hi: F) -> F {
        let mut acc = F::zero();
        for (m, &a) in &self.terms {
            for k in 0..self.n {
                let mk = m.component(k);
                if mk == 0 {
                    continue;
                }
                acc = acc + a.abs() * F::of(mk as f64) * hi.powi((m.total_degree() - 1) as i32);
            }
        }
        acc
    }

    /// Scales all coefficients by `c`.
    pub fn scaled(&self, c: F) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, &a)| a * c != F::zero())
            .map(|(m, &a)| (m.clone(), a * c))
            .collect();
        Self { n: self.n, terms }
    }

    /// Dyadic rescale around a vertex of the support:
    /// `P(2^{-q_1} t_1, ..., 2^{-q_n} t_n) = 2^{-q.vertex} Ptilde(t)` where
    /// each term of `Ptilde` carries the exact multiplier exponent
    /// `q . (v - vertex)`.
    pub fn tilde_rescale(
        &self,
        vertex: &ExponentVector,
        q: &[i64],
    ) -> Result<ScaledPolynomial<F>, PolyError> {
        if q.len() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: q.len(),
            });
        }
        if !self.terms.contains_key(vertex) {
            return Err(PolyError::VertexNotInSupport(vertex.clone()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, &a)| ScaledTerm {
                exponent: m.clone(),
                coefficient: a,
                shift_log2: m.diff(vertex).iter().zip(q).map(|(d, qi)| d * qi).sum(),
            })
            .collect();
        Ok(ScaledPolynomial {
            n: self.n,
            vertex: vertex.clone(),
            index: q.to_vec(),
            terms,
        })
    }

    /// Splits `P` into the part supported on `Lambda_0 = {m : m_i = 0 for all
    /// i in zero_set}` and the remainder. `zero_set` must be exactly the set
    /// of vanishing coordinates of `vertex`.
    pub fn lambda0_split(
        &self,
        vertex: &ExponentVector,
        zero_set: &[usize],
    ) -> Result<(Self, Self), PolyError> {
        if !self.terms.contains_key(vertex) {
            return Err(PolyError::VertexNotInSupport(vertex.clone()));
        }
        let mut expected = vertex.zero_coordinates();
        expected.sort_unstable();
        let mut given = zero_set.to_vec();
        given.sort_unstable();
        given.dedup();
        if given != expected {
            return Err(PolyError::InconsistentZeroSet {
                given,
                vertex: vertex.clone(),
            });
        }
        let mut inside = BTreeMap::new();
        let mut outside = BTreeMap::new();
        for (m, &a) in &self.terms {
            if expected.iter().all(|&i| m.component(i) == 0) {
                inside.insert(m.clone(), a);
            } else {
                outside.insert(m.clone(), a);
            }
        }
        Ok((
            Self {
                n: self.n,
                terms: inside,
            },
            Self {
                n: self.n,
                terms: outside,
            },
        ))
    }
}

impl<F: Real> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, a)) in self.terms.iter().enumerate() {
            let a64 = a.as_f64();
            if idx == 0 {
                if a64 < 0.0 {
                    write!(f, "-")?;
                }
            } else if a64 < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = a64.abs();
            let monic = m.total_degree() > 0;
            if mag != 1.0 || !monic {
                write!(f, "{mag}")?;
                if monic {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &mi) in m.components().iter().enumerate() {
                if mi == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "t{}", i + 1)?;
                if mi > 1 {
                    write!(f, "^{mi}")?;
                }
            }
        }
        Ok(())
    }
}

/// One term of a rescaled polynomial: coefficient times `2^{-shift_log2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledTerm<F> {
    pub exponent: ExponentVector,
    pub coefficient: F,
    /// Exact integer exponent `q . (v - vertex)`; the multiplier is
    /// `2^{-shift_log2}`, computed on demand.
    pub shift_log2: i64,
}

/// `Ptilde(t) = sum 2^{-q.(v - vertex)} a_v t^v` for a dyadic index `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledPolynomial<F> {
    n: usize,
    vertex: ExponentVector,
    index: Vec<i64>,
    terms: Vec<ScaledTerm<F>>,
}

impl<F: Real> ScaledPolynomial<F> {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn vertex(&self) -> &ExponentVector {
        &self.vertex
    }

    pub fn index(&self) -> &[i64] {
        &self.index
    }

    pub fn terms(&self) -> &[ScaledTerm<F>] {
        &self.terms
    }

    /// The multiplier exponent of a support point, if present.
    pub fn shift_log2(&self, m: &ExponentVector) -> Option<i64> {
        self.terms
            .iter()
            .find(|t| &t.exponent == m)
            .map(|t| t.shift_log2)
    }

    /// `q . vertex`, the global dyadic factor split off by the rescale.
    pub fn vertex_shift_log2(&self) -> i64 {
        self.vertex.dot(&self.index)
    }

    /// Evaluates `Ptilde(t)`.
    pub fn evaluate(&self, t: &[F]) -> F {
        self.as_polynomial().evaluate(t)
    }

    /// Folds the dyadic multipliers into floating coefficients.
    pub fn as_polynomial(&self) -> Polynomial<F> {
        let terms = self.terms.iter().map(|term| {
            (
                term.exponent.clone(),
                term.coefficient * F::of((-(term.shift_log2) as f64).exp2()),
            )
        });
        Polynomial::from_terms(self.n, terms).expect("dimensions agree")
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn poly<F: Real>(&mut self) -> Result<Vec<(ExponentVector, F)>, PolyError> {
        let mut out = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1.0
            }
            Some(b'+') => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        };
        loop {
            let (m, a) = self.term::<F>()?;
            out.push((m, a * F::of(sign)));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1.0;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1.0;
                }
                Some(_) => return self.syntax("expected '+', '-' or end of input"),
            }
        }
        Ok(out)
    }

    fn term<F: Real>(&mut self) -> Result<(ExponentVector, F), PolyError> {
        let mut exps = vec![0i64; self.n];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => F::of(self.number()?),
            Some(b't') => {
                self.var_power(&mut exps)?;
                F::one()
            }
            _ => return self.syntax("expected a coefficient or a variable"),
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() != Some(b't') {
                return self.syntax("expected a variable after '*'");
            }
            self.var_power(&mut exps)?;
        }
        Ok((
            ExponentVector::new(exps).expect("parser produces nonnegative exponents"),
            coeff,
        ))
    }

    fn var_power(&mut self, exps: &mut [i64]) -> Result<(), PolyError> {
        debug_assert_eq!(self.bytes[self.pos], b't');
        self.pos += 1;
        let index = self.integer("variable index")?;
        if index == 0 || index as usize > self.n {
            return Err(PolyError::VariableIndex {
                index: index as usize,
                n: self.n,
            });
        }
        let mut power = 1i64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(PolyError::NegativeExponent { pos: self.pos });
            }
            power = self.integer("exponent")?;
        }
        exps[index as usize - 1] += power;
        Ok(())
    }

    fn integer(&mut self, what: &str) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax(&format!("expected {what}"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Syntax {
                pos: start,
                msg: format!("{what} out of range"),
            })
    }

    fn number(&mut self) -> Result<f64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.')
        {
            self.pos += 1;
        }
        if self.pos < self.bytes.len() && (self.bytes[self.pos] | 0x20) == b'e' {
            self.pos += 1;
            if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if start == self.pos {
            return self.syntax("expected a number");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Syntax {
                pos: start,
                msg: "malformed number".to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from(v)
    }

    fn p64(text: &str, n: usize) -> Polynomial<f64> {
        Polynomial::parse(text, n).unwrap()
    }

    #[test]
    fn parse_reads_off_support_and_coefficients() {
        let p = p64("t1^2*t2 + t1*t2^3", 2);
        let support: Vec<_> = p.support().cloned().collect();
        assert_eq!(support, vec![ev(&[1, 3]), ev(&[2, 1])]);
        assert_eq!(p.coefficient(&ev(&[2, 1])), Some(1.0));
        assert_eq!(p.coefficient(&ev(&[1, 3])), Some(1.0));
    }

    #[test]
    fn parse_collects_signed_coefficients() {
        let p = p64("3*t1^2*t2 - 1.5*t1*t2^3", 2);
        assert_eq!(p.coefficient(&ev(&[2, 1])), Some(3.0));
        assert_eq!(p.coefficient(&ev(&[1, 3])), Some(-1.5));
    }

    #[test]
    fn parse_rejects_cancelled_support() {
        assert_eq!(
            Polynomial::<f64>::parse("2*t1 - 2*t1", 1),
            Err(PolyError::EmptySupport)
        );
    }

    #[test]
    fn parse_rejects_bad_variable_and_exponent() {
        assert_eq!(
            Polynomial::<f64>::parse("t3", 2),
            Err(PolyError::VariableIndex { index: 3, n: 2 })
        );
        assert!(matches!(
            Polynomial::<f64>::parse("t1^-2", 1),
            Err(PolyError::NegativeExponent { .. })
        ));
        assert!(matches!(
            Polynomial::<f64>::parse("t1 + * t2", 2),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn parse_accepts_constants_and_whitespace() {
        let p = p64("  4 + 1*t1 ", 1);
        assert_eq!(p.coefficient(&ev(&[0])), Some(4.0));
        assert_eq!(p.coefficient(&ev(&[1])), Some(1.0));
    }

    #[test]
    fn evaluate_monomial_and_sums() {
        let p = p64("t1*t2", 2);
        assert_eq!(p.evaluate(&[0.5, 0.5]), 0.25);
        let p = p64("t1^2*t2 + t1*t2^3", 2);
        assert_eq!(p.evaluate(&[1.0, 1.0]), 2.0);
        // Hand arithmetic: 4*1 + 2*1 = 6.
        assert_eq!(p.evaluate(&[2.0, 1.0]), 6.0);
    }

    #[test]
    fn gradient_matches_hand_values() {
        let p = p64("t1*t2", 2);
        assert_eq!(p.gradient(&[1.0, 2.0]), vec![2.0, 1.0]);
        let p = p64("t1^2", 1);
        assert_eq!(p.gradient(&[3.0]), vec![6.0]);
        let p = p64("t1^2*t2 + t1*t2^3", 2);
        assert_eq!(p.gradient(&[1.0, 1.0]), vec![3.0, 4.0]);
    }

    fn central_difference(p: &Polynomial<f64>, t: &[f64], k: usize, h: f64) -> f64 {
        let mut tp = t.to_vec();
        let mut tm = t.to_vec();
        tp[k] += h;
        tm[k] -= h;
        (p.evaluate(&tp) - p.evaluate(&tm)) / (2.0 * h)
    }

    #[test]
    fn gradient_matches_finite_differences_on_example() {
        let p = p64("t1^2*t2 + t1*t2^3", 2);
        let t = [1.0, 1.0];
        let g = p.gradient(&t);
        for k in 0..2 {
            let fd = central_difference(&p, &t, k, 1e-6);
            assert_relative_eq!(g[k], fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn rescale_multipliers_follow_dot_products() {
        let p = p64("t1^2*t2 + t1*t2^3", 2);
        let v = ev(&[1, 3]);
        // q.(v - vertex) for the (2,1) term: (2,1).(1,-2) = 0.
        let s = p.tilde_rescale(&v, &[2, 1]).unwrap();
        assert_eq!(s.shift_log2(&ev(&[1, 3])), Some(0));
        assert_eq!(s.shift_log2(&ev(&[2, 1])), Some(0));
        // (4,1).(1,-2) = 2.
        let s = p.tilde_rescale(&v, &[4, 1]).unwrap();
        assert_eq!(s.shift_log2(&ev(&[1, 3])), Some(0));
        assert_eq!(s.shift_log2(&ev(&[2, 1])), Some(2));
        assert_eq!(
            s.as_polynomial().coefficient(&ev(&[2, 1])),
            Some(0.25)
        );
        // q = 0 leaves every multiplier at 1.
        let s = p.tilde_rescale(&v, &[0, 0]).unwrap();
        assert!(s.terms().iter().all(|t| t.shift_log2 == 0));
    }

    #[test]
    fn rescale_rejects_non_support_vertex() {
        let p = p64("t1*t2", 2);
        assert!(matches!(
            p.tilde_rescale(&ev(&[2, 0]), &[1, 1]),
            Err(PolyError::VertexNotInSupport(_))
        ));
    }

    #[test]
    fn rescale_identity_on_random_points() {
        let p = p64("t1^2*t2 + t1*t2^3", 2);
        let v = ev(&[1, 3]);
        for q in [[0i64, 0], [1, 2], [3, 1], [5, 5]] {
            let s = p.tilde_rescale(&v, &q).unwrap();
            let factor = (-(s.vertex_shift_log2()) as f64).exp2();
            for t in [[0.7, 1.3], [2.0, 0.5], [3.9, 2.2]] {
                let scaled_t: Vec<f64> = t
                    .iter()
                    .zip(q)
                    .map(|(ti, qi)| ti * (-(qi) as f64).exp2())
                    .collect();
                let lhs = p.evaluate(&scaled_t);
                let rhs = factor * s.evaluate(&t);
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn lambda0_split_examples() {
        let p = p64("t1^2 + t1*t2", 2);
        let (inside, outside) = p.lambda0_split(&ev(&[2, 0]), &[1]).unwrap();
        assert_eq!(inside, p64("t1^2", 2));
        assert_eq!(outside, p64("t1*t2", 2));

        let p = p64("t1*t2", 2);
        let (inside, outside) = p.lambda0_split(&ev(&[1, 1]), &[]).unwrap();
        assert_eq!(inside, p);
        assert!(outside.is_zero());
    }

    #[test]
    fn lambda0_split_rejects_inconsistent_sets() {
        let p = p64("t1^2 + t1*t2", 2);
        assert!(matches!(
            p.lambda0_split(&ev(&[2, 0]), &[0]),
            Err(PolyError::InconsistentZeroSet { .. })
        ));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for (text, n) in [
            ("t1^2*t2 + t1*t2^3", 2),
            ("3*t1^2*t2 - 1.5*t1*t2^3", 2),
            ("4 + 1*t1", 1),
            ("2*t1^2*t2^2 + t1*t2^4 + 3*t1^4*t2", 2),
        ] {
            let p = p64(text, n);
            let back = p64(&p.to_string(), n);
            assert_eq!(p, back);
        }
    }

    #[test]
    fn works_for_f32_scalars() {
        let p = Polynomial::<f32>::parse("t1^2 + t2", 2).unwrap();
        assert_eq!(p.evaluate(&[2.0f32, 1.0]), 5.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = (Polynomial<f64>, usize)> {
            (1usize..=3).prop_flat_map(|n| {
                let term = (
                    proptest::collection::vec(0i64..=4, n),
                    (-30i32..=30).prop_filter("nonzero", |c| *c != 0),
                );
                proptest::collection::vec(term, 1..=4).prop_map(move |terms| {
                    let p = Polynomial::from_terms(
                        n,
                        terms.into_iter().map(|(e, c)| {
                            (ExponentVector::new(e).unwrap(), c as f64 / 10.0)
                        }),
                    )
                    .unwrap();
                    (p, n)
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn gradient_consistent_with_central_differences(
                (p, n) in arb_poly(),
                seed in proptest::collection::vec(0.3f64..1.8, 3),
            ) {
                prop_assume!(!p.is_zero());
                let t = &seed[..n];
                let g = p.gradient(t);
                for k in 0..n {
                    let fd = central_difference(&p, t, k, 1e-6);
                    let scale = g[k].abs().max(fd.abs()).max(1e-3);
                    prop_assert!((g[k] - fd).abs() <= 1e-5 * scale,
                        "component {k}: exact {} vs fd {}", g[k], fd);
                }
            }

            #[test]
            fn rescale_identity_holds((p, n) in arb_poly(),
                                      q in proptest::collection::vec(0i64..=6, 3),
                                      t in proptest::collection::vec(0.5f64..4.0, 3)) {
                prop_assume!(!p.is_zero());
                let vertex = p.support().next().unwrap().clone();
                let q = &q[..n];
                let t = &t[..n];
                let s = p.tilde_rescale(&vertex, q).unwrap();
                let factor = (-(s.vertex_shift_log2()) as f64).exp2();
                let scaled_t: Vec<f64> = t.iter().zip(q)
                    .map(|(ti, qi)| ti * (-(*qi) as f64).exp2()).collect();
                let lhs = p.evaluate(&scaled_t);
                let rhs = factor * s.evaluate(t);
                let scale = lhs.abs().max(rhs.abs()).max(1e-300);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
            }

            #[test]
            fn lambda0_parts_sum_to_original((p, _n) in arb_poly()) {
                prop_assume!(!p.is_zero());
                let vertex = p.support().next().unwrap().clone();
                let zero_set = vertex.zero_coordinates();
                let (inside, outside) = p.lambda0_split(&vertex, &zero_set).unwrap();
                let sum = Polynomial::from_terms(
                    p.dimension(),
                    inside.terms().chain(outside.terms()).map(|(m, a)| (m.clone(), a)),
                ).unwrap();
                prop_assert_eq!(sum, p);
            }
        }
    }
}
