//! Univariate polynomials and rational functions in `z` over ℚ(i).
//!
//! These back every "rational curve" in the crate: components of projective
//! curves, Weierstrass data, pullbacks of hypersurfaces and the
//! nowhere-vanishing test functions of the logarithmic-derivative sweeps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{format_qcomplex, needs_parens, qreal, QComplex, Scalar};

/// Dense polynomial, coefficients in ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<QComplex>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<QComplex>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QComplex::one())
    }

    pub fn constant(c: QComplex) -> Self {
        Self::new(vec![c])
    }

    /// The identity `z`.
    pub fn z() -> Self {
        Self::new(vec![QComplex::zero(), QComplex::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| QComplex::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[QComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QComplex {
        self.coeffs.get(i).cloned().unwrap_or_else(QComplex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&QComplex> {
        self.coeffs.last()
    }

    /// Index of the lowest non-zero coefficient (order of vanishing at 0).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &QComplex) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * QComplex::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, z: &QComplex) -> QComplex {
        self.coeffs
            .iter()
            .rev()
            .fold(QComplex::zero(), |acc, c| acc * z + c)
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            coeffs: self.coeffs.iter().map(Scalar::to_c64).collect(),
        }
    }

    /// Divides `z^v` out, returning the quotient and `v`.
    pub fn strip_z_power(&self) -> (Poly, usize) {
        match self.valuation() {
            None => (Poly::zero(), 0),
            Some(v) => (Poly::new(self.coeffs[v..].to_vec()), v),
        }
    }

    /// Made monic; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = QComplex::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = QComplex::one() / divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![QComplex::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free decomposition (Yun). Returns pairs `(factor, multiplicity)`
    /// with monic, pairwise coprime, square-free factors of positive degree,
    /// such that `self = lc · Π factorᵢ^{mᵢ}`.
    pub fn square_free(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let b = f.gcd(&df);
        let mut c = f.exact_div(&b).expect("gcd divides");
        let mut d = &df.exact_div(&b).expect("gcd divides") - &c.derivative();
        let mut i = 1;
        while !c.is_constant() {
            let a = c.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            c = c.exact_div(&a).expect("gcd divides");
            d = &d.exact_div(&a).expect("gcd divides") - &c.derivative();
            i += 1;
        }
        out
    }

    /// Numerical roots, each listed once per multiplicity.
    pub fn roots(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for (factor, mult) in self.square_free() {
            for r in factor.to_float().simple_roots() {
                out.extend(std::iter::repeat_n(r, mult as usize));
            }
        }
        out
    }

    /// Rescales a family of polynomials by one common exact scalar so that
    /// all coefficient parts are coprime integers. The projective class of the
    /// family is unchanged.
    pub fn normalize_content(family: &[Poly]) -> Vec<Poly> {
        let parts = || {
            family
                .iter()
                .flat_map(|p| p.coeffs.iter())
                .flat_map(|c| [&c.re, &c.im])
                .filter(|q| !q.is_zero())
        };
        let lcm = parts().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let gcd = parts().fold(BigInt::zero(), |acc, q| {
            let n = (q * BigRational::from_integer(lcm.clone())).to_integer();
            acc.gcd(&n)
        });
        if gcd.is_zero() {
            return family.to_vec();
        }
        let s = qreal(BigRational::new(lcm, gcd));
        family.iter().map(|p| p.scale(&s)).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.im.is_zero() && c.re.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if needs_parens(&mag) {
                format!("({})", format_qcomplex(&mag))
            } else {
                format_qcomplex(&mag)
            };
            match i {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![QComplex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $t:ty) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add, Poly);
forward_owned!(Sub, sub, Poly);
forward_owned!(Mul, mul, Poly);

/// Floating image of a [`Poly`], used in quadrature loops.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    coeffs: Vec<Complex64>,
}

impl FloatPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        FloatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Roots of a polynomial assumed square-free (Aberth-Ehrlich iteration
    /// followed by Newton polishing).
    pub fn simple_roots(&self) -> Vec<Complex64> {
        let deg = self.coeffs.len().saturating_sub(1);
        if deg == 0 {
            return Vec::new();
        }
        if deg == 1 {
            return vec![-self.coeffs[0] / self.coeffs[1]];
        }
        let lead = self.coeffs[deg];
        let monic: Vec<Complex64> = self.coeffs.iter().map(|c| c / lead).collect();
        let p = FloatPoly::new(monic);
        // Cauchy bound for the initial circle.
        let bound = 1.0
            + p.coeffs[..deg]
                .iter()
                .map(|c| c.norm())
                .fold(0.0_f64, f64::max);
        let mut z: Vec<Complex64> = (0..deg)
            .map(|j| {
                let ang = 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / deg as f64 + 0.4;
                Complex64::from_polar(0.5 * bound, ang)
            })
            .collect();
        for _ in 0..500 {
            let mut max_step = 0.0_f64;
            for i in 0..deg {
                let (v, dv) = p.eval_with_derivative(z[i]);
                if v.norm() == 0.0 {
                    continue;
                }
                let ratio = v / dv;
                let repulsion: Complex64 = (0..deg)
                    .filter(|&j| j != i)
                    .map(|j| Complex64::one() / (z[i] - z[j]))
                    .sum();
                let step = ratio / (Complex64::one() - ratio * repulsion);
                if step.is_finite() {
                    z[i] -= step;
                    max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if max_step < 1e-15 {
                break;
            }
        }
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let (v, dv) = self.eval_with_derivative(*zi);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = v / dv;
                if !step.is_finite() {
                    break;
                }
                *zi -= step;
            }
        }
        z.sort_by(|a, b| {
            (a.norm(), a.arg())
                .partial_cmp(&(b.norm(), b.arg()))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        z
    }
}

/// Quotient `num/den` of polynomials, kept in lowest terms with monic
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Returns `None` when `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RationalFunction { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lead = QComplex::one() / den.leading().unwrap();
        Some(RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: QComplex) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(n, &self.den * &self.den).expect("non-zero denominator")
    }

    /// `None` for division by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn to_float(&self) -> FloatRational {
        FloatRational {
            num: self.num.to_float(),
            den: self.den.to_float(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let n = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Floating image of a [`RationalFunction`].
#[derive(Clone, Debug, PartialEq)]
pub struct FloatRational {
    pub num: FloatPoly,
    pub den: FloatPoly,
}

impl FloatRational {
    /// `None` at a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        let d = self.den.eval(z);
        if d.norm() == 0.0 {
            None
        } else {
            Some(self.num.eval(z) / d)
        }
    }
}

/// Exact complex number `a + b i` from rationals.
pub fn qcomplex(re: BigRational, im: BigRational) -> QComplex {
    Complex::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qc, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn division_and_gcd() {
        // (z-1)(z+2) and (z-1)(z-3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_decomposition() {
        // z^2 (z-1)^3 (z+1)
        let f = &(&p(&[0, 0, 1]) * &p(&[-1, 1]).pow(3)) * &p(&[1, 1]);
        let sf = f.square_free();
        let mult: Vec<u32> = sf.iter().map(|(_, m)| *m).collect();
        assert_eq!(mult, vec![1, 2, 3]);
        assert_eq!(sf[0].0, p(&[1, 1]));
        assert_eq!(sf[1].0, p(&[0, 1]));
        assert_eq!(sf[2].0, p(&[-1, 1]));
    }

    #[test]
    fn roots_of_quadratic() {
        let f = Poly::new(vec![qcomplex(rat(-1, 4), rat(0, 1)), qc(0, 0), qc(1, 0)]);
        let r = f.roots();
        assert_eq!(r.len(), 2);
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 0.5).abs() < 1e-14 && (re[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rational_function_normalises() {
        let r = RationalFunction::new(p(&[-1, 0, 1]), p(&[-2, 2])).unwrap();
        assert_eq!(r.num(), &Poly::new(vec![qcomplex(rat(1, 2), rat(0, 1)), qcomplex(rat(1, 2), rat(0, 1))]));
        assert_eq!(r.den(), &Poly::one());
        assert!(RationalFunction::new(p(&[1]), Poly::zero()).is_none());
    }

    #[test]
    fn content_normalisation() {
        let half = qcomplex(rat(1, 2), rat(0, 1));
        let fam = vec![Poly::constant(half.clone()), Poly::new(vec![qc(0, 0), half])];
        let out = Poly::normalize_content(&fam);
        assert_eq!(out, vec![p(&[1]), p(&[0, 1])]);
    }

    #[test]
    fn display() {
        let f = Poly::new(vec![qc(1, 0), qc(-2, 0), qc(0, 0), qc(1, 1)]);
        assert_eq!(f.to_string(), "1 - 2*z + (1+I)*z^3");
    }
}
