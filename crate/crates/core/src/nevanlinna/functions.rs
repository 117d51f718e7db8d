//! Proximity, order and counting functions on circles `|z| = r`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::curve::{divisor_of_pullback, Hypersurface, ProjectiveCurve};
use super::divisor::Truncation;
use super::NevanlinnaError;
use crate::germ::Germ;
use crate::poly::FloatPoly;
use crate::quadrature::{periodic_mean, TrapezoidOptions};

/// Zeros closer than this to the circle make the quadrature singular.
const SINGULAR_GAP: f64 = 1e-9;
/// Zeros closer than this to the circle steer the grid offset.
const NEAR_GAP: f64 = 0.05;

/// Curve whose norm can be sampled on circles.
pub trait CircleCurve: Sync {
    fn log_norm(&self, z: Complex64) -> f64;
    /// Largest radius on which sampling is trusted.
    fn admissible_radius(&self) -> f64;
}

impl CircleCurve for ProjectiveCurve {
    fn log_norm(&self, z: Complex64) -> f64 {
        self.norm(z).ln()
    }

    fn admissible_radius(&self) -> f64 {
        self.r_max()
    }
}

/// Curve with germ components, admitted only for order-function sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct GermCurve {
    components: Vec<Germ<Complex64>>,
}

impl GermCurve {
    pub fn new(components: Vec<Germ<Complex64>>) -> Result<Self, NevanlinnaError> {
        if components.len() < 2 {
            return Err(NevanlinnaError::Domain("a curve needs at least two components".into()));
        }
        Ok(GermCurve { components })
    }
}

impl CircleCurve for GermCurve {
    fn log_norm(&self, z: Complex64) -> f64 {
        let mut top = 0.0f64;
        for g in &self.components {
            match g.value_at(&z) {
                Ok(v) => top = top.max(v.norm()),
                Err(_) => return f64::NAN,
            }
        }
        top.ln()
    }

    fn admissible_radius(&self) -> f64 {
        // Germ evaluation is trusted inside 0.9 of the validated radius.
        self.components
            .iter()
            .map(|g| 0.9 * g.radius() * (1.0 - f64::EPSILON))
            .fold(f64::INFINITY, f64::min)
            .min(1.0)
    }
}

fn circle(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, t)
}

fn check_radius(r: f64, r_max: f64) -> Result<(), NevanlinnaError> {
    if r > 0.0 && r <= r_max && r < 1.0 {
        Ok(())
    } else {
        Err(NevanlinnaError::Domain(format!("radius {r} is outside (0, {r_max}]")))
    }
}

/// `T_f(r) = (1/2π) ∫ log ‖f(re^{iθ})‖ dθ`.
pub fn order_function<C: CircleCurve + ?Sized>(
    f: &C,
    r: f64,
    opts: &TrapezoidOptions,
) -> Result<f64, NevanlinnaError> {
    check_radius(r, f.admissible_radius())?;
    Ok(periodic_mean(|t| f.log_norm(circle(r, t)), opts)?.value)
}

/// `m_f(r, D) = (1/2π) ∫ log(‖f‖^d ‖Q‖ / |Q(f)|) dθ` on `|z| = r`.
pub fn proximity_function(
    f: &ProjectiveCurve,
    d: &Hypersurface,
    r: f64,
    opts: &TrapezoidOptions,
) -> Result<f64, NevanlinnaError> {
    check_radius(r, f.r_max())?;
    let p = d.pullback(f)?;
    if p.is_zero() {
        return Err(NevanlinnaError::Containment);
    }
    let roots = p.roots();
    if let Some(a) = roots.iter().find(|a| (a.norm() - r).abs() < SINGULAR_GAP) {
        return Err(NevanlinnaError::SingularCircle { r, zero: *a });
    }
    let near: Vec<f64> = roots
        .iter()
        .filter(|a| (a.norm() - r).abs() < NEAR_GAP)
        .map(|a| a.arg())
        .collect();
    let opts = opts.avoiding(&near);
    let pf: FloatPoly = p.to_float();
    let deg = d.degree() as f64;
    let log_q = d.norm().ln();
    let val = periodic_mean(
        |t| {
            let z = circle(r, t);
            deg * f.norm(z).ln() + log_q - pf.eval(z).norm().ln()
        },
        &opts,
    )?;
    Ok(val.value)
}

/// One First Main Theorem sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FmtSample {
    pub r: f64,
    pub proximity: f64,
    pub counting: f64,
    pub order: f64,
    /// `m + N − d·T`.
    pub defect: f64,
}

/// `m_f(r,D) + N_f(r,D) − d·T_f(r)` on each grid radius, evaluated in
/// parallel. The values should agree up to quadrature error.
pub fn fmt_defect(
    f: &ProjectiveCurve,
    d: &Hypersurface,
    r_grid: &[f64],
    opts: &TrapezoidOptions,
) -> Result<Vec<FmtSample>, NevanlinnaError> {
    if !f.is_reduced() {
        return Err(NevanlinnaError::Domain(
            "curve representation is not reduced on the disc".into(),
        ));
    }
    let divisor = divisor_of_pullback(f, d, f.r_max())?;
    let deg = d.degree() as f64;
    r_grid
        .par_iter()
        .map(|&r| {
            let m = proximity_function(f, d, r, opts)?;
            let n = divisor.counting_function(r, Truncation::Infinite)?;
            let t = order_function(f, r, opts)?;
            Ok(FmtSample {
                r,
                proximity: m,
                counting: n,
                order: t,
                defect: m + n - deg * t,
            })
        })
        .collect()
}

/// Analytic constant of the defect: `log ‖Q‖ − log |c|`, with `c` the lowest
/// nonzero Taylor coefficient of `Q ∘ f` (Jensen's formula).
pub fn fmt_defect_constant(f: &ProjectiveCurve, d: &Hypersurface) -> Result<f64, NevanlinnaError> {
    let p = d.pullback(f)?;
    let v = p.valuation().ok_or(NevanlinnaError::Containment)?;
    Ok(d.norm().ln() - p.to_float().coeffs()[v].norm().ln())
}

/// `T_f(r) / log(1/(1−r))` on an increasing grid. These are samples of the
/// quantity whose limsup decides transcendence; they cannot decide it.
pub fn transcendence_ratio<C: CircleCurve + ?Sized>(
    f: &C,
    r_grid: &[f64],
    opts: &TrapezoidOptions,
) -> Result<Vec<f64>, NevanlinnaError> {
    if r_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NevanlinnaError::Domain("grid must be increasing".into()));
    }
    r_grid
        .par_iter()
        .map(|&r| {
            let t = order_function(f, r, opts)?;
            Ok(t / (1.0 / (1.0 - r)).ln())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::scalar::qc;

    fn curve(c: &[&str]) -> ProjectiveCurve {
        ProjectiveCurve::new(c.iter().map(|s| parse_poly(s).unwrap()).collect(), 0.99).unwrap()
    }

    fn coordinate(i: usize) -> Hypersurface {
        let mut e = vec![0, 0];
        e[i] = 1;
        Hypersurface::new(1, vec![(qc(1, 0), e)]).unwrap()
    }

    #[test]
    fn closed_forms_on_the_line() {
        let o = TrapezoidOptions::default();
        let f = curve(&["1", "z"]);
        assert!(proximity_function(&f, &coordinate(0), 0.5, &o).unwrap().abs() < 1e-14);
        let m = proximity_function(&f, &coordinate(1), 0.5, &o).unwrap();
        assert!((m - 2f64.ln()).abs() < 1e-12);
        assert!(order_function(&f, 0.7, &o).unwrap().abs() < 1e-14);
        for row in fmt_defect(&f, &coordinate(1), &[0.3, 0.6, 0.9], &o).unwrap() {
            assert!(row.defect.abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_germ_curve() {
        // T(r) = (1/2π)∫ max(0, r cos θ) dθ = r/π.
        let germs = vec![Germ::exp(40).to_float(), parse_poly("1").map(|p| Germ::from_poly(&p, 40)).unwrap().to_float()];
        let f = GermCurve::new(germs).unwrap();
        let o = TrapezoidOptions::default();
        for r in [0.3, 0.5, 0.85] {
            let t = order_function(&f, r, &o).unwrap();
            assert!((t - r / std::f64::consts::PI).abs() < 1e-8, "r = {r}: {t}");
        }
        assert!(matches!(order_function(&f, 0.9, &o), Err(NevanlinnaError::Domain(_))));
    }

    #[test]
    fn order_of_shifted_line_matches_oracle() {
        // log|1 - re^{iθ}| = -Σ r^k cos(kθ)/k has zero mean, and |1 - re^{iθ}| < 1
        // exactly for |θ| < θ0 with cos θ0 = r/2, so T = (1/π) Σ r^k sin(kθ0)/k².
        let o = TrapezoidOptions::default();
        let r: f64 = 0.9;
        let f = curve(&["1 - z", "1"]);
        let t = order_function(&f, r, &o).unwrap();
        let th0 = (r / 2.0).acos();
        let oracle: f64 = (1..2000)
            .map(|k| r.powi(k) * (k as f64 * th0).sin() / (k * k) as f64)
            .sum::<f64>()
            / std::f64::consts::PI;
        assert!(t > 0.0);
        assert!((t - oracle).abs() < 1e-8, "{t} vs {oracle}");
    }

    #[test]
    fn singular_circle_detected() {
        let o = TrapezoidOptions::default();
        let f = curve(&["1", "z - 1/2"]);
        assert!(matches!(
            proximity_function(&f, &coordinate(1), 0.5, &o),
            Err(NevanlinnaError::SingularCircle { .. })
        ));
    }

    #[test]
    fn defect_is_jensen_constant() {
        let o = TrapezoidOptions::default();
        let f = curve(&["1", "z^2 - 1/9"]);
        let rows = fmt_defect(&f, &coordinate(1), &[0.6, 0.7, 0.8, 0.9], &o).unwrap();
        let c = fmt_defect_constant(&f, &coordinate(1)).unwrap();
        for row in &rows {
            assert!((row.defect - c).abs() < 1e-7, "{row:?} vs {c}");
        }
    }

    #[test]
    fn transcendence_samples() {
        let o = TrapezoidOptions::default();
        let grid = [0.5, 0.7, 0.9];
        let zero = transcendence_ratio(&curve(&["1", "z"]), &grid, &o).unwrap();
        assert!(zero.iter().all(|v| v.abs() < 1e-14));
        let shifted = transcendence_ratio(&curve(&["1 - z", "1"]), &grid, &o).unwrap();
        assert!(shifted.iter().all(|v| *v > 0.0 && *v < 1.0));
        assert!(transcendence_ratio(&curve(&["1", "z"]), &[0.7, 0.5], &o).is_err());
    }
}
