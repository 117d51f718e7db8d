//! Truncated power series standing in for holomorphic germs `(ℂ,0) → ℂ`.
//!
//! A [`Germ`] stores the coefficients `c_0, …, c_K` of its expansion around a
//! center; `K` is the truncation order. Arithmetic keeps the smaller
//! truncation of its operands. Evaluation away from the center recenters the
//! truncated series, which is exact for polynomial germs and is only trusted
//! inside 0.9 of the validated radius for the rest.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::expr::{parse_rational_function, ParseError};
use crate::jet::{JetCoordinate, JetError, JetPolynomial, JetSpace, JetVector};
use crate::poly::{Poly, RationalFunction};
use crate::scalar::{QComplex, Scalar};

/// Default series truncation for jets of order `k`.
pub fn default_truncation(k: u32) -> usize {
    2 * k as usize + 4
}

#[derive(Clone, Debug, PartialEq)]
pub struct Germ<S> {
    coeffs: Vec<S>,
    center: S,
    radius: f64,
}

impl<S: Scalar> Germ<S> {
    /// Germ at 0 with the given coefficients and an unbounded validated
    /// radius (appropriate for polynomials).
    pub fn new(coeffs: Vec<S>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![S::zero()] } else { coeffs };
        Germ {
            coeffs,
            center: S::zero(),
            radius: f64::INFINITY,
        }
    }

    /// Constant germ `c` with truncation order `k`.
    pub fn constant(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[0] = c;
        Germ::new(coeffs)
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn with_center(mut self, center: S) -> Self {
        self.center = center;
        self
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn center(&self) -> &S {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Pads with zeros up to truncation order `k`.
    pub fn padded(mut self, k: usize) -> Self {
        while self.coeffs.len() < k + 1 {
            self.coeffs.push(S::zero());
        }
        self
    }

    pub fn constant_term(&self) -> &S {
        &self.coeffs[0]
    }

    fn zip(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Germ {
            coeffs: (0..n).map(|i| op(&self.coeffs[i], &other.coeffs[i])).collect(),
            center: self.center.clone(),
            radius: self.radius.min(other.radius),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Germ {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            ..self.clone()
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                (0..=i).fold(S::zero(), |acc, j| {
                    acc + self.coeffs[j].clone() * other.coeffs[i - j].clone()
                })
            })
            .collect();
        Germ {
            coeffs,
            center: self.center.clone(),
            radius: self.radius.min(other.radius),
        }
    }

    /// Term-wise derivative; the truncation order drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<S> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * S::from_i64(i as i64))
            .collect();
        Germ {
            coeffs: if coeffs.is_empty() { vec![S::zero()] } else { coeffs },
            ..self.clone()
        }
    }

    /// Series reciprocal; requires `c_0 ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self, JetError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(JetError::Domain("reciprocal of a germ vanishing at its center".into()));
        }
        let inv0 = S::one() / c0.clone();
        let mut out: Vec<S> = vec![inv0.clone()];
        for i in 1..self.coeffs.len() {
            let s = (1..=i).fold(S::zero(), |acc, j| {
                acc + self.coeffs[j].clone() * out[i - j].clone()
            });
            out.push(-(s * inv0.clone()));
        }
        Ok(Germ { coeffs: out, ..self.clone() })
    }

    /// `f′/f` as a series; requires `c_0 ≠ 0`.
    pub fn log_derivative(&self) -> Result<Self, JetError> {
        Ok(self.derivative().mul(&self.reciprocal()?))
    }

    /// Germ of `f ∘ φ_λ` with `φ_λ(z) = λz`: `c_j ↦ c_j λ^j`. The
    /// validated radius scales by `1/|λ|`.
    pub fn compose_homothety(&self, lambda: &S) -> Self {
        let mut p = S::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * p.clone());
            p = p * lambda.clone();
        }
        let l = lambda.magnitude();
        Germ {
            coeffs,
            center: self.center.clone(),
            radius: if l == 0.0 { f64::INFINITY } else { self.radius / l },
        }
    }

    /// `f(z), f′(z), …, f^{(k)}(z)` by recentering at `z`.
    pub fn derivatives_at(&self, z: &S, k: u32) -> Result<Vec<S>, JetError> {
        let big_k = self.truncation_order();
        if big_k < k as usize {
            return Err(JetError::InsufficientOrder {
                needed: k,
                available: big_k as u32,
            });
        }
        let s = z.clone() - self.center.clone();
        let dist = s.magnitude();
        if dist > 0.0 && dist >= 0.9 * self.radius {
            return Err(JetError::OutsideRadius {
                distance: dist,
                radius: self.radius,
            });
        }
        // Powers of s.
        let mut pw = vec![S::one()];
        for i in 1..=big_k {
            let next = pw[i - 1].clone() * s.clone();
            pw.push(next);
        }
        let mut out = Vec::with_capacity(k as usize + 1);
        for j in 0..=k as usize {
            let mut acc = S::zero();
            for m in j..=big_k {
                let falling = ((m - j + 1)..=m).fold(1i64, |a, t| a * t as i64);
                acc = acc + self.coeffs[m].clone() * S::from_i64(falling) * pw[m - j].clone();
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn value_at(&self, z: &S) -> Result<S, JetError> {
        Ok(self.derivatives_at(z, 0)?.swap_remove(0))
    }
}

impl Germ<QComplex> {
    /// Polynomial germ padded to truncation order `k` (or its degree, if
    /// larger). Recentering is exact, so the validated radius is unbounded.
    pub fn from_poly(p: &Poly, k: usize) -> Self {
        let n = p.coeffs().len().max(k + 1);
        Germ::new((0..n).map(|i| p.coeff(i)).collect())
    }

    /// `exp(z)` truncated at order `k`, validated radius 1.
    pub fn exp(k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut fact = BigInt::one();
        for j in 0..=k {
            if j > 0 {
                fact *= j;
            }
            coeffs.push(Complex::new(
                BigRational::new(BigInt::one(), fact.clone()),
                BigRational::zero(),
            ));
        }
        Germ::new(coeffs).with_radius(1.0)
    }

    /// `1/(1-z)` truncated at order `k`, validated radius 1.
    pub fn geometric(k: usize) -> Self {
        Germ::new(vec![QComplex::one(); k + 1]).with_radius(1.0)
    }

    /// Taylor expansion at 0 of a rational function regular at 0. The
    /// validated radius is the distance to the nearest pole.
    pub fn from_rational(r: &RationalFunction, k: usize) -> Result<Self, JetError> {
        if r.is_polynomial() {
            let scale = QComplex::one() / r.den().coeff(0);
            return Ok(Germ::from_poly(&r.num().scale(&scale), k));
        }
        let den = Germ::from_poly(r.den(), k);
        let inv = den.reciprocal().map_err(|_| {
            JetError::Domain("rational germ has a pole at its center".into())
        })?;
        let radius = r
            .den()
            .roots()
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        let num = Germ::from_poly(r.num(), k);
        let mut g = num.mul(&inv);
        g.coeffs.truncate(k + 1);
        Ok(g.with_radius(radius))
    }

    pub fn to_float(&self) -> Germ<Complex64> {
        Germ {
            coeffs: self.coeffs.iter().map(Scalar::to_c64).collect(),
            center: self.center.to_c64(),
            radius: self.radius,
        }
    }
}

/// Parses a germ literal: `exp(z)`, or any rational function of `z` regular
/// at 0 such as `1 + 2*z - z^3` or `1/(1-z)`, truncated at order `k`.
pub fn parse_germ(s: &str, k: usize) -> Result<Germ<QComplex>, GermParseError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "exp(z)" {
        return Ok(Germ::exp(k));
    }
    let r = parse_rational_function(s)?;
    Ok(Germ::from_rational(&r, k)?)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GermParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Jet of a tuple of germs at `z`: `d[i]^j ↦ f_i^{(j)}(z)` for all `i`, and
/// for divisor variables also `dquot[i]^j ↦ f_i^{(j)}(z)/f_i(z)` and
/// `dlog[i]^j ↦ (log f_i)^{(j)}(z)`, the last obtained by applying the Faà di
/// Bruno expansion to the quotients. Germ `i` (0-based) is variable `i+1`.
pub fn jet_of<S: Scalar>(
    germs: &[Germ<S>],
    k: u32,
    z: &S,
    divisor_vars: &BTreeSet<usize>,
) -> Result<JetVector<S>, JetError> {
    if let Some(&v) = divisor_vars.iter().find(|&&v| v == 0 || v > germs.len()) {
        return Err(JetError::Domain(format!("divisor variable {v} has no germ")));
    }
    let space = JetSpace::new(k.max(1));
    let mut jv = JetVector::default();
    for (idx, g) in germs.iter().enumerate() {
        let var = idx + 1;
        let d = g.derivatives_at(z, k)?;
        for j in 1..=k {
            jv.insert(JetCoordinate::plain(var, j), d[j as usize].clone());
        }
        if divisor_vars.contains(&var) {
            if d[0].is_zero() {
                return Err(JetError::Pole { var });
            }
            for j in 1..=k {
                let q = d[j as usize].clone() / d[0].clone();
                jv.insert(JetCoordinate::ratio(var, j), q);
            }
            for j in 1..=k {
                let expansion = space.faa_di_bruno_log(var, j)?;
                let v = expansion.evaluate(&jv)?;
                jv.insert(JetCoordinate::log(var, j), v);
            }
        }
    }
    Ok(jv)
}

/// Numeric value of `p` on a jet vector.
pub fn evaluate<S: Scalar>(p: &JetPolynomial, jv: &JetVector<S>) -> Result<S, JetError> {
    p.evaluate(jv)
}
