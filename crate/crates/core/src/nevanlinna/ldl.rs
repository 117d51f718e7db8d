//! Circle integrals of derivatives of logarithmic derivatives.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::NevanlinnaError;
use crate::poly::{FloatRational, Poly, RationalFunction};
use crate::quadrature::{periodic_mean, TrapezoidOptions};

/// Nowhere-zero function on a disc, either `exp(p)` or a rational function.
#[derive(Debug, Clone, PartialEq)]
pub enum DiscFunction {
    Exp(Poly),
    Rational(RationalFunction),
}

impl DiscFunction {
    /// `φ′/φ` as an exact rational function.
    pub fn log_derivative(&self) -> RationalFunction {
        match self {
            DiscFunction::Exp(p) => RationalFunction::from_poly(p.derivative()),
            DiscFunction::Rational(r) => {
                let num = RationalFunction::new(r.num().derivative(), r.num().clone())
                    .expect("nonzero numerator");
                let den = RationalFunction::new(r.den().derivative(), r.den().clone())
                    .expect("nonzero denominator");
                &num - &den
            }
        }
    }

    /// Smallest modulus of a zero or pole; `∞` for `exp(p)`.
    pub fn singular_radius(&self) -> f64 {
        match self {
            DiscFunction::Exp(_) => f64::INFINITY,
            DiscFunction::Rational(r) => r
                .num()
                .roots()
                .into_iter()
                .chain(r.den().roots())
                .map(|a| a.norm())
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// `(d/dz)^{λ−1} (φ′/φ)`.
    pub fn ldl_kernel(&self, lambda: u32) -> Result<RationalFunction, NevanlinnaError> {
        if lambda == 0 {
            return Err(NevanlinnaError::Domain("λ must be at least 1".into()));
        }
        let mut g = self.log_derivative();
        for _ in 1..lambda {
            g = g.derivative();
        }
        Ok(g)
    }
}

fn check_grid(phis: &[&DiscFunction], r_grid: &[f64]) -> Result<(), NevanlinnaError> {
    let r_top = r_grid.iter().copied().fold(0.0, f64::max);
    if r_grid.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(NevanlinnaError::Domain("radii must lie in (0, 1)".into()));
    }
    for phi in phis {
        let s = phi.singular_radius();
        if s <= r_top {
            return Err(NevanlinnaError::Pole { modulus: s });
        }
    }
    Ok(())
}

fn eval(g: &FloatRational, z: Complex64) -> f64 {
    g.eval(z).map_or(f64::NAN, |v| v.norm())
}

/// `∫₀^{2π} |(φ′/φ)^{(λ−1)}(re^{iθ})| dθ` divided by
/// `(1−r)^{−λ} log(1/(1−r))`.
pub fn ldl_ratio(
    phi: &DiscFunction,
    lambda: u32,
    r_grid: &[f64],
    opts: &TrapezoidOptions,
) -> Result<Vec<f64>, NevanlinnaError> {
    check_grid(&[phi], r_grid)?;
    let g = phi.ldl_kernel(lambda)?.to_float();
    r_grid
        .par_iter()
        .map(|&r| {
            let mean = periodic_mean(|t| eval(&g, Complex64::from_polar(r, t)), opts)?.value;
            let norm = (1.0 - r).powi(-(lambda as i32)) * (1.0 / (1.0 - r)).ln();
            Ok(TAU * mean / norm)
        })
        .collect()
}

/// `∫₀^{2π} |Π_j (φ_j′/φ_j)^{(λ_j−1)}|^t dθ` divided by
/// `(1−r)^{−s} (log 1/(1−r))^s` with `s = t·Σλ_j`. Requires `t·#φ < 1`.
pub fn ldl_product_ratio(
    phis: &[DiscFunction],
    lambdas: &[u32],
    t: f64,
    r_grid: &[f64],
    opts: &TrapezoidOptions,
) -> Result<Vec<f64>, NevanlinnaError> {
    if phis.is_empty() || phis.len() != lambdas.len() {
        return Err(NevanlinnaError::Domain("need one λ per function".into()));
    }
    if !(t > 0.0) || t * phis.len() as f64 >= 1.0 {
        return Err(NevanlinnaError::Domain(format!(
            "need 0 < t·n < 1, got t·n = {}",
            t * phis.len() as f64
        )));
    }
    let refs: Vec<&DiscFunction> = phis.iter().collect();
    check_grid(&refs, r_grid)?;
    let kernels = phis
        .iter()
        .zip(lambdas)
        .map(|(p, &l)| Ok(p.ldl_kernel(l)?.to_float()))
        .collect::<Result<Vec<_>, NevanlinnaError>>()?;
    let s = t * lambdas.iter().sum::<u32>() as f64;
    r_grid
        .par_iter()
        .map(|&r| {
            let f = |th: f64| {
                let z = Complex64::from_polar(r, th);
                kernels.iter().map(|g| eval(g, z)).product::<f64>().powf(t)
            };
            let mean = periodic_mean(f, opts)?.value;
            let norm = ((1.0 - r).recip() * (1.0 / (1.0 - r)).ln()).powf(s);
            Ok(TAU * mean / norm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_rational_function;

    fn geometric() -> DiscFunction {
        DiscFunction::Rational(parse_rational_function("1/(1-z)").unwrap())
    }

    #[test]
    fn kernels() {
        let e = DiscFunction::Exp(Poly::z());
        assert_eq!(e.ldl_kernel(1).unwrap(), RationalFunction::from_poly(Poly::one()));
        assert!(e.ldl_kernel(2).unwrap().is_zero());
        let g = geometric().ldl_kernel(2).unwrap();
        assert_eq!(g, parse_rational_function("1/(1-z)^2").unwrap());
    }

    #[test]
    fn exponential_closed_form() {
        let o = TrapezoidOptions::default();
        let r = [0.5, 0.9];
        let v = ldl_ratio(&DiscFunction::Exp(Poly::z()), 1, &r, &o).unwrap();
        for (ri, vi) in r.iter().zip(&v) {
            let expect = TAU * (1.0 - ri) / (1.0 / (1.0 - ri)).ln();
            assert!((vi - expect).abs() < 1e-12);
        }
        let p = ldl_product_ratio(&[DiscFunction::Exp(Poly::z())], &[1], 0.5, &r, &o).unwrap();
        assert!(p[1] < p[0]);
    }

    #[test]
    fn geometric_against_elliptic_oracle() {
        // (1/2π)∫ dθ/|1 - re^{iθ}| = (2/π) K(r), K by the AGM.
        let r: f64 = 0.8;
        let agm = {
            let (mut a, mut b) = (1.0f64, (1.0 - r * r).sqrt());
            for _ in 0..30 {
                let n = (0.5 * (a + b), (a * b).sqrt());
                a = n.0;
                b = n.1;
            }
            a
        };
        let k = std::f64::consts::PI / (2.0 * agm);
        let o = TrapezoidOptions::default();
        let v = ldl_ratio(&geometric(), 1, &[r], &o).unwrap()[0];
        let expect = TAU * (2.0 / std::f64::consts::PI) * k * (1.0 - r) / (1.0 / (1.0 - r)).ln();
        assert!((v - expect).abs() < 1e-9);
    }

    #[test]
    fn preconditions() {
        let o = TrapezoidOptions::default();
        let two = [geometric(), geometric()];
        assert!(ldl_product_ratio(&two, &[1, 1], 0.5, &[0.5], &o).is_err());
        assert!(ldl_product_ratio(&two, &[1, 1], 0.4, &[0.5], &o).is_ok());
        let zero_inside = DiscFunction::Rational(parse_rational_function("z - 1/2").unwrap());
        assert!(matches!(
            ldl_ratio(&zero_inside, 1, &[0.7], &o),
            Err(NevanlinnaError::Pole { .. })
        ));
    }
}
