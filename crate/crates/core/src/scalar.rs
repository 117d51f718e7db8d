//! Coefficient kernels.
//!
//! Two kernels are used throughout the crate: exact complex rationals
//! ([`QComplex`]) for algebraic identities and double precision complex
//! numbers ([`Complex64`]) for quadrature-facing code. Conversion only goes
//! from exact to floating.

use std::fmt::{self, Debug};
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact complex rational `a + b i` with arbitrary precision parts.
pub type QComplex = Complex<BigRational>;

/// Field operations shared by the exact and the floating kernel.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn from_exact(q: &QComplex) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Whether the kernel represents values exactly.
    fn is_exact() -> bool;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl Scalar for QComplex {
    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    fn from_exact(q: &QComplex) -> Self {
        q.clone()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_exact(q: &QComplex) -> Self {
        q.to_c64()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact complex number from integer parts.
pub fn qc(re: i64, im: i64) -> QComplex {
    Complex::new(rat(re, 1), rat(im, 1))
}

pub fn qreal(q: BigRational) -> QComplex {
    Complex::new(q, BigRational::zero())
}

/// Modulus of an exact complex number, evaluated in floating point.
pub fn qabs(q: &QComplex) -> f64 {
    q.to_c64().norm()
}

/// Rational from its decimal `p` or `p/q` spelling.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Canonical text form of an exact rational: `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form of an exact complex rational, e.g. `3`, `-1/2*I`,
/// `1/2+3*I`. The output is accepted back by the expression parsers.
pub fn format_qcomplex(q: &QComplex) -> String {
    QDisplay(q).to_string()
}

struct QDisplay<'a>(&'a QComplex);

impl fmt::Display for QDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        let imag = |f: &mut fmt::Formatter<'_>, v: &BigRational, lead: bool| {
            let sign = if v.is_negative() { "-" } else if lead { "" } else { "+" };
            let a = v.abs();
            if a.is_one() {
                write!(f, "{sign}I")
            } else {
                write!(f, "{sign}{}*I", format_rational(&a))
            }
        };
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(re)),
            (true, false) => imag(f, im, true),
            (false, false) => {
                write!(f, "{}", format_rational(re))?;
                imag(f, im, false)
            }
        }
    }
}

/// True when the value has a non-zero imaginary and a non-zero real part,
/// i.e. it must be parenthesised inside a product.
pub fn needs_parens(q: &QComplex) -> bool {
    !q.re.is_zero() && !q.im.is_zero()
}
