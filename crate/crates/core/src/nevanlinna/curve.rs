//! Rational curves in projective space and hypersurfaces pulled back along
//! them.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::divisor::DiscDivisor;
use super::NevanlinnaError;
use crate::poly::{FloatPoly, Poly, RationalFunction};
use crate::scalar::{format_qcomplex, needs_parens, QComplex, Scalar};

/// Holomorphic curve `f = [f_0 : … : f_n]` with polynomial components,
/// considered on the closed disc of radius `r_max < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveCurve {
    components: Vec<Poly>,
    float: Vec<FloatPoly>,
    r_max: f64,
    reduced: bool,
}

impl ProjectiveCurve {
    pub fn new(components: Vec<Poly>, r_max: f64) -> Result<Self, NevanlinnaError> {
        if components.len() < 2 {
            return Err(NevanlinnaError::Domain("a curve needs at least two components".into()));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(NevanlinnaError::Domain(format!("r_max = {r_max} is outside (0, 1)")));
        }
        if components.iter().all(Poly::is_zero) {
            return Err(NevanlinnaError::Domain("all components vanish identically".into()));
        }
        let g = common_factor(&components);
        let reduced = g.roots().iter().all(|a| a.norm() > r_max);
        let float = components.iter().map(Poly::to_float).collect();
        Ok(ProjectiveCurve {
            components,
            float,
            r_max,
            reduced,
        })
    }

    /// Clears denominators of rational components and divides out the
    /// common polynomial factor.
    pub fn from_rational(components: &[RationalFunction], r_max: f64) -> Result<Self, NevanlinnaError> {
        let mut lcm = Poly::one();
        for c in components {
            let g = lcm.gcd(c.den());
            lcm = (&lcm * c.den()).exact_div(&g).expect("gcd divides");
        }
        let polys = components
            .iter()
            .map(|c| c.num() * &lcm.exact_div(c.den()).expect("denominator divides lcm"))
            .collect();
        Ok(ProjectiveCurve::new(polys, r_max)?.reduce())
    }

    /// Divides out the gcd of the components.
    pub fn reduce(&self) -> Self {
        let g = common_factor(&self.components);
        if g.is_constant() {
            return ProjectiveCurve {
                reduced: true,
                ..self.clone()
            };
        }
        let comps: Vec<Poly> = self
            .components
            .iter()
            .map(|p| p.exact_div(&g).expect("gcd divides"))
            .collect();
        ProjectiveCurve::new(comps, self.r_max).expect("reduction keeps validity")
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components.len() - 1
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Same curve with every component multiplied by `c ≠ 0`.
    pub fn scaled(&self, c: &QComplex) -> Self {
        let comps = self.components.iter().map(|p| p.scale(c)).collect();
        ProjectiveCurve::new(comps, self.r_max).expect("nonzero scaling keeps validity")
    }

    /// `‖f(z)‖ = max_i |f_i(z)|`.
    pub fn norm(&self, z: Complex64) -> f64 {
        self.float.iter().map(|p| p.eval(z).norm()).fold(0.0, f64::max)
    }
}

/// Gcd of the nonzero components.
fn common_factor(components: &[Poly]) -> Poly {
    components
        .iter()
        .filter(|p| !p.is_zero())
        .fold(Poly::zero(), |g, p| if g.is_zero() { p.monic() } else { g.gcd(p) })
}

/// Homogeneous polynomial `Q(z_0, …, z_n)` given by its monomial terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypersurface {
    n: usize,
    degree: u32,
    terms: Vec<(QComplex, Vec<u32>)>,
}

impl Hypersurface {
    /// Terms are `(coefficient, exponents)` with `n+1` exponents each; equal
    /// exponent vectors are merged and zero terms dropped.
    pub fn new(n: usize, terms: Vec<(QComplex, Vec<u32>)>) -> Result<Self, NevanlinnaError> {
        let mut merged: Vec<(QComplex, Vec<u32>)> = Vec::new();
        for (c, e) in terms {
            if e.len() != n + 1 {
                return Err(NevanlinnaError::Domain(format!(
                    "monomial {e:?} needs {} exponents",
                    n + 1
                )));
            }
            match merged.iter_mut().find(|(_, f)| *f == e) {
                Some(slot) => slot.0 = &slot.0 + &c,
                None => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        let Some((_, first)) = merged.first() else {
            return Err(NevanlinnaError::Domain("hypersurface polynomial is zero".into()));
        };
        let degree: u32 = first.iter().sum();
        if degree == 0 {
            return Err(NevanlinnaError::Domain("degree must be at least 1".into()));
        }
        if merged.iter().any(|(_, e)| e.iter().sum::<u32>() != degree) {
            return Err(NevanlinnaError::Domain("polynomial is not homogeneous".into()));
        }
        Ok(Hypersurface {
            n,
            degree,
            terms: merged,
        })
    }

    /// Hyperplane `Σ a_i z_i = 0`.
    pub fn linear(coeffs: Vec<QComplex>) -> Result<Self, NevanlinnaError> {
        let n = coeffs.len().saturating_sub(1);
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; n + 1];
                e[i] = 1;
                (c, e)
            })
            .collect();
        Hypersurface::new(n, terms)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(QComplex, Vec<u32>)] {
        &self.terms
    }

    /// `‖Q‖`: maximal modulus of the coefficients.
    pub fn norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn eval<S: Scalar>(&self, z: &[S]) -> S {
        let mut total = S::zero();
        for (c, e) in &self.terms {
            let mut v = S::from_exact(c);
            for (zi, &k) in z.iter().zip(e) {
                for _ in 0..k {
                    v = v * zi.clone();
                }
            }
            total = total + v;
        }
        total
    }

    /// `Q ∘ f` as an exact polynomial.
    pub fn pullback(&self, f: &ProjectiveCurve) -> Result<Poly, NevanlinnaError> {
        if f.dimension() != self.n {
            return Err(NevanlinnaError::Domain(format!(
                "curve lives in P^{}, hypersurface in P^{}",
                f.dimension(),
                self.n
            )));
        }
        let mut total = Poly::zero();
        for (c, e) in &self.terms {
            let mut v = Poly::constant(c.clone());
            for (p, &k) in f.components().iter().zip(e) {
                if k > 0 {
                    v = &v * &p.pow(k);
                }
            }
            total = &total + &v;
        }
        Ok(total)
    }
}

impl fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (c, e)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let coef = format_qcomplex(c);
            if needs_parens(c) {
                write!(f, "({coef})")?;
            } else {
                write!(f, "{coef}")?;
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*z{i}")?,
                    _ => write!(f, "*z{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Zero divisor of `Q ∘ f` restricted to `|z| ≤ r_max`. Multiplicities come
/// from the exact square-free decomposition; only the locations are
/// floating.
pub fn divisor_of_pullback(
    f: &ProjectiveCurve,
    d: &Hypersurface,
    r_max: f64,
) -> Result<DiscDivisor, NevanlinnaError> {
    let p = d.pullback(f)?;
    if p.is_zero() {
        return Err(NevanlinnaError::Containment);
    }
    let (rest, origin) = p.strip_z_power();
    let mut points = Vec::new();
    for (factor, mult) in rest.square_free() {
        for a in factor.to_float().simple_roots() {
            if a.norm() <= r_max {
                points.push((a, mult));
            }
        }
    }
    DiscDivisor::new(points, origin as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_poly, parse_rational_function};
    use crate::scalar::qc;

    fn line(c: &[&str]) -> ProjectiveCurve {
        ProjectiveCurve::new(c.iter().map(|s| parse_poly(s).unwrap()).collect(), 0.99).unwrap()
    }

    fn coordinate(n: usize, i: usize) -> Hypersurface {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        Hypersurface::new(n, vec![(qc(1, 0), e)]).unwrap()
    }

    #[test]
    fn pullback_divisors() {
        let f = line(&["1", "z"]);
        let e = divisor_of_pullback(&f, &coordinate(1, 1), 0.99).unwrap();
        assert_eq!((e.origin_multiplicity(), e.support().len()), (1, 0));
        let e0 = divisor_of_pullback(&f, &coordinate(1, 0), 0.99).unwrap();
        assert!(e0.is_empty());
        let g = line(&["1", "z^2 - 1/4"]);
        let e = divisor_of_pullback(&g, &coordinate(1, 1), 0.99).unwrap();
        let mut pts: Vec<f64> = e.support().iter().map(|(a, m)| a.re * *m as f64).collect();
        pts.sort_by(f64::total_cmp);
        assert!((pts[0] + 0.5).abs() < 1e-14 && (pts[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn containment_is_reported() {
        let f = line(&["1", "0"]);
        assert_eq!(
            divisor_of_pullback(&f, &coordinate(1, 1), 0.5),
            Err(NevanlinnaError::Containment)
        );
    }

    #[test]
    fn multiplicities_from_square_free_part() {
        // Q(f) = z^2 (z - 1/2)^3 (z + 1/3)
        let f = line(&["1", "z^2*(z - 1/2)^3*(z + 1/3)"]);
        let e = divisor_of_pullback(&f, &coordinate(1, 1), 0.9).unwrap();
        assert_eq!(e.origin_multiplicity(), 2);
        let mut m: Vec<u32> = e.support().iter().map(|p| p.1).collect();
        m.sort();
        assert_eq!(m, vec![1, 3]);
        assert_eq!(e.degree(), 6);
    }

    #[test]
    fn rational_components_are_cleared() {
        let comps = [
            parse_rational_function("1/(2-z)").unwrap(),
            parse_rational_function("z/(2-z)").unwrap(),
        ];
        let f = ProjectiveCurve::from_rational(&comps, 0.9).unwrap();
        assert!(f.is_reduced());
        assert!(f.components()[0].is_constant());
        let unreduced = line(&["z", "z^2"]);
        assert!(!unreduced.is_reduced());
        assert!(unreduced.reduce().is_reduced());
    }

    #[test]
    fn hypersurface_homogeneity() {
        let q = Hypersurface::new(
            2,
            vec![(qc(1, 0), vec![2, 0, 0]), (qc(-3, 1), vec![0, 1, 1])],
        )
        .unwrap();
        let z = [qc(1, 2), qc(-1, 0), qc(3, -1)];
        let lam = qc(2, -1);
        let scaled: Vec<QComplex> = z.iter().map(|v| v * &lam).collect();
        assert_eq!(q.eval(&scaled), q.eval(&z) * &lam * &lam);
        assert!((q.norm() - 10f64.sqrt()).abs() < 1e-15);
        assert!(Hypersurface::new(1, vec![(qc(1, 0), vec![1, 1]), (qc(1, 0), vec![1, 0])]).is_err());
        assert_eq!(q.to_string(), "1*z0^2 + (-3+I)*z1*z2");
    }
}
