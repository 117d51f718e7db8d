//! Minimal surfaces from Weierstrass data `φ = ∂f/∂z`, their Gauss maps,
//! induced area densities and the radial integrals built on them.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::expr::{parse_rational_function, ParseError};
use crate::nevanlinna::{NevanlinnaError, ProjectiveCurve};
use crate::poly::{FloatPoly, FloatRational, Poly, RationalFunction};
use crate::quadrature::{adaptive_simpson, periodic_mean, QuadError, TrapezoidOptions};
use crate::scalar::{qc, QComplex};
use crate::wronskian::{homogeneous_wronskian, WronskianDifferential};

/// Printed with every partial Yau integral: the model metrics are not
/// complete, so finite limits say nothing about the theorem.
pub const INCOMPLETE_METRIC_CAVEAT: &str =
    "model metric on the disc is not complete; partial integrals illustrate growth only";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("Weierstrass data is not conformal (sum of squares is {0})")]
    NotConformal(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Nevanlinna(#[from] NevanlinnaError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Holomorphic data `φ = (φ_1, …, φ_n)` on the disc of radius `r_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassSurface {
    phi: Vec<RationalFunction>,
    float: Vec<FloatRational>,
    r_max: f64,
}

impl WeierstrassSurface {
    pub fn new(phi: Vec<RationalFunction>, r_max: f64) -> Result<Self, GeometryError> {
        if phi.len() < 2 {
            return Err(GeometryError::Domain("need at least two components".into()));
        }
        if phi.iter().all(RationalFunction::is_zero) {
            return Err(GeometryError::Domain("all components vanish identically".into()));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(GeometryError::Domain(format!("r_max = {r_max} is outside (0, 1)")));
        }
        let float = phi.iter().map(RationalFunction::to_float).collect();
        Ok(WeierstrassSurface { phi, float, r_max })
    }

    /// `φ = (1, i, 0)`.
    pub fn plane() -> Self {
        let c = |q: QComplex| RationalFunction::constant(q);
        WeierstrassSurface::new(vec![c(qc(1, 0)), c(qc(0, 1)), c(qc(0, 0))], 0.99)
            .expect("valid preset")
    }

    /// `φ = ((1−z²)/2, i(1+z²)/2, z)`, i.e. the generator with `F = 1, G = z`.
    pub fn enneper() -> Self {
        Self::weierstrass_from_str("1", "z").expect("valid preset")
    }

    /// Generator with `F = 1/z², G = z`; the data has a pole at the origin.
    pub fn catenoid() -> Self {
        Self::weierstrass_from_str("1/z^2", "z").expect("valid preset")
    }

    /// `φ = (F(1−G²)/2, iF(1+G²)/2, FG)`.
    pub fn weierstrass(f: &RationalFunction, g: &RationalFunction) -> Result<Self, GeometryError> {
        let half = RationalFunction::constant(QComplex::new(
            crate::scalar::rat(1, 2),
            crate::scalar::rat(0, 1),
        ));
        let i_half = RationalFunction::constant(QComplex::new(
            crate::scalar::rat(0, 1),
            crate::scalar::rat(1, 2),
        ));
        let one = RationalFunction::constant(qc(1, 0));
        let g2 = g * g;
        let phi = vec![
            &(&half * f) * &(&one - &g2),
            &(&i_half * f) * &(&one + &g2),
            f * g,
        ];
        WeierstrassSurface::new(phi, 0.99)
    }

    pub fn weierstrass_from_str(f: &str, g: &str) -> Result<Self, GeometryError> {
        Self::weierstrass(&parse_rational_function(f)?, &parse_rational_function(g)?)
    }

    /// Named presets: `plane`, `enneper`, `catenoid`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "plane" => Some(Self::plane()),
            "enneper" => Some(Self::enneper()),
            "catenoid" => Some(Self::catenoid()),
            _ => None,
        }
    }

    pub fn with_r_max(mut self, r_max: f64) -> Result<Self, GeometryError> {
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(GeometryError::Domain(format!("r_max = {r_max} is outside (0, 1)")));
        }
        self.r_max = r_max;
        Ok(self)
    }

    pub fn phi(&self) -> &[RationalFunction] {
        &self.phi
    }

    pub fn dimension(&self) -> usize {
        self.phi.len()
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// `φ(z)`, or `None` at a pole.
    pub fn eval(&self, z: Complex64) -> Option<Vec<Complex64>> {
        self.float.iter().map(|p| p.eval(z)).collect()
    }
}

/// Exact check of `Σ φ_i² ≡ 0`.
pub fn verify_conformality(s: &WeierstrassSurface) -> bool {
    conformality_defect(s).is_zero()
}

fn conformality_defect(s: &WeierstrassSurface) -> RationalFunction {
    s.phi
        .iter()
        .fold(RationalFunction::constant(qc(0, 0)), |acc, p| &acc + &(p * p))
}

/// Gauss map `[φ_1 : … : φ_n]` as a reduced curve in `ℂP^{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussMapCurve {
    pub curve: ProjectiveCurve,
}

impl GaussMapCurve {
    /// True iff all `2×2` Wronskians `φ_i φ_j′ − φ_j φ_i′` vanish.
    pub fn is_constant(&self) -> bool {
        let c = self.curve.components();
        (0..c.len()).all(|i| {
            (i + 1..c.len()).all(|j| {
                (&(&c[i] * &c[j].derivative()) - &(&c[j] * &c[i].derivative())).is_zero()
            })
        })
    }
}

pub fn gauss_map(s: &WeierstrassSurface) -> Result<GaussMapCurve, GeometryError> {
    if !verify_conformality(s) {
        return Err(GeometryError::NotConformal(conformality_defect(s).to_string()));
    }
    Ok(GaussMapCurve {
        curve: ProjectiveCurve::from_rational(&s.phi, s.r_max)?,
    })
}

/// Map sampled through its homogeneous components.
pub trait ComponentMap: Sync {
    fn components_at(&self, z: Complex64) -> Vec<Complex64>;
}

impl ComponentMap for GaussMapCurve {
    fn components_at(&self, z: Complex64) -> Vec<Complex64> {
        self.curve.components().iter().map(|p| p.to_float().eval(z)).collect()
    }
}

/// Negative control: one component replaced by its complex conjugate.
pub struct ConjugatedComponent<'a, M: ComponentMap> {
    pub inner: &'a M,
    pub index: usize,
}

impl<M: ComponentMap> ComponentMap for ConjugatedComponent<'_, M> {
    fn components_at(&self, z: Complex64) -> Vec<Complex64> {
        let mut v = self.inner.components_at(z);
        if let Some(c) = v.get_mut(self.index) {
            *c = c.conj();
        }
        v
    }
}

/// Step of the central differences in [`holomorphy_residual`].
pub const HOLOMORPHY_STEP: f64 = 1e-5;

/// Largest `|∂/∂z̄|` of the affine chart coordinates over the samples, by
/// central differences. The chart divides by the component of largest
/// modulus at each sample.
pub fn holomorphy_residual<M: ComponentMap + ?Sized>(
    g: &M,
    samples: &[Complex64],
) -> Result<f64, GeometryError> {
    let h = HOLOMORPHY_STEP;
    let mut worst = 0.0f64;
    for &z in samples {
        let v = g.components_at(z);
        let (j, top) = v
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        if top == 0.0 {
            return Err(GeometryError::Domain(format!("indeterminacy point at {z}")));
        }
        let chart = |w: Complex64| -> Vec<Complex64> {
            let c = g.components_at(w);
            c.iter().map(|x| x / c[j]).collect()
        };
        let (xp, xm) = (chart(z + h), chart(z - h));
        let iy = Complex64::new(0.0, h);
        let (yp, ym) = (chart(z + iy), chart(z - iy));
        for i in 0..v.len() {
            let dx = (xp[i] - xm[i]) / (2.0 * h);
            let dy = (yp[i] - ym[i]) / (2.0 * h);
            let dzbar = 0.5 * (dx + Complex64::i() * dy);
            worst = worst.max(dzbar.norm());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaNorm {
    Euclidean,
    Max,
}

/// `2‖φ(z)‖²` in the chosen norm.
pub fn area_form_density(
    s: &WeierstrassSurface,
    z: Complex64,
    norm: AreaNorm,
) -> Result<f64, GeometryError> {
    let v = s
        .eval(z)
        .ok_or_else(|| GeometryError::Domain(format!("pole of the data at {z}")))?;
    let sq = match norm {
        AreaNorm::Euclidean => v.iter().map(|c| c.norm_sqr()).sum(),
        AreaNorm::Max => v.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max),
    };
    Ok(2.0 * sq)
}

/// Log-harmonic weight `h` for the partial Yau integrals.
#[derive(Debug, Clone, PartialEq)]
pub enum HModel {
    /// `h ≡ 1`.
    Constant,
    /// `h = |1/(1−z)|`.
    InversePole,
    /// `h = |g(z)|` for a polynomial without zeros on the sampled disc.
    Modulus(Poly),
}

impl HModel {
    fn sampler(&self) -> Box<dyn Fn(Complex64) -> f64 + Sync + '_> {
        match self {
            HModel::Constant => Box::new(|_| 1.0),
            HModel::InversePole => Box::new(|z: Complex64| 1.0 / (Complex64::new(1.0, 0.0) - z).norm()),
            HModel::Modulus(p) => {
                let fp: FloatPoly = p.to_float();
                Box::new(move |z| fp.eval(z).norm())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YauReport {
    pub eps: Vec<f64>,
    pub values: Vec<f64>,
    pub caveat: &'static str,
}

/// Radial integral `∫_0^ρ r·g(r) dr` in the variable `u = −ln(1−r)`.
fn radial_integral<G>(g: G, rho: f64, tol: f64) -> Result<f64, GeometryError>
where
    G: Fn(f64) -> Result<f64, GeometryError>,
{
    let top = -(1.0 - rho).ln();
    let failure = std::sync::Mutex::new(None);
    let f = |u: f64| {
        let r = -(-u).exp_m1();
        match g(r) {
            Ok(v) => r * v * (-u).exp(),
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                0.0
            }
        }
    };
    let v = adaptive_simpson(f, 0.0, top, tol, 40)?;
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Partial integrals `∫_{|z|≤1−ε} h^p dσ` with `dσ = 2‖φ‖² du dv`, one per
/// `ε`. The incomplete-metric caveat is always attached.
pub fn yau_integral_divergence(
    p: f64,
    model: &HModel,
    surface: &WeierstrassSurface,
    norm: AreaNorm,
    eps_grid: &[f64],
    opts: &TrapezoidOptions,
) -> Result<YauReport, GeometryError> {
    if !(p > 0.0) {
        return Err(GeometryError::Domain("exponent p must be positive".into()));
    }
    if eps_grid.iter().any(|&e| !(e > 0.0 && e < 1.0)) || eps_grid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(GeometryError::Domain("ε grid must decrease inside (0, 1)".into()));
    }
    let h = model.sampler();
    // The circle integrands are analytic, so a coarse starting grid is safe.
    let opts = &TrapezoidOptions { min_log2: 7, ..*opts };
    let circle = |r: f64| -> Result<f64, GeometryError> {
        let failure = std::sync::Mutex::new(None);
        let mean = periodic_mean(
            |t| {
                let z = Complex64::from_polar(r, t);
                match area_form_density(surface, z, norm) {
                    Ok(d) => h(z).powf(p) * d,
                    Err(e) => {
                        failure.lock().unwrap().get_or_insert(e);
                        0.0
                    }
                }
            },
            opts,
        )?;
        match failure.into_inner().unwrap() {
            Some(e) => Err(e),
            None => Ok(TAU * mean.value),
        }
    };
    let values = eps_grid
        .par_iter()
        .map(|&e| radial_integral(&circle, 1.0 - e, 1e-9))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(YauReport {
        eps: eps_grid.to_vec(),
        values,
        caveat: INCOMPLETE_METRIC_CAVEAT,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    Diverging,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Converging => "converging",
            Verdict::Diverging => "diverging",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofIntegralReport {
    pub eps: Vec<f64>,
    /// Partial integrals `∫_0^{1−ε} r(1−r)^{−a}(log 1/(1−r))^a dr`.
    pub values: Vec<f64>,
    /// Successive differences `I_{j+1} − I_j`.
    pub differences: Vec<f64>,
    /// Difference ratios `Δ_{j+1}/Δ_j`.
    pub ratios: Vec<f64>,
    pub verdict: Verdict,
    /// Geometric tail bound `Δ_last·ρ/(1−ρ)`, present when the trailing
    /// ratios are below 1 and non-increasing.
    pub tail_bound: Option<f64>,
    /// `Γ(a+1)/(1−a)^{a+1} − Γ(a+1)/(2−a)^{a+1}` for `a < 1`.
    pub closed_form_limit: Option<f64>,
}

impl ProofIntegralReport {
    /// Converging, with a tail bound that brackets the closed-form limit.
    pub fn is_certified(&self) -> bool {
        match (self.verdict, self.tail_bound, self.closed_form_limit, self.values.last()) {
            (Verdict::Converging, Some(tail), Some(limit), Some(&last)) => {
                let slack = 1e-9 * limit.abs().max(1.0);
                limit >= last - slack && limit <= last + tail + slack
            }
            _ => false,
        }
    }
}

/// Default grid `ε = 10^{-1}, …, 10^{-12}`.
pub fn default_eps_grid() -> Vec<f64> {
    (1..=12).map(|j| 10f64.powi(-j)).collect()
}

const TRAILING_RATIOS: usize = 3;

pub fn proof_integral_convergence(
    ratio: f64,
    eps_grid: &[f64],
) -> Result<ProofIntegralReport, GeometryError> {
    if !(ratio > 0.0) {
        return Err(GeometryError::Domain("ratio must be positive".into()));
    }
    if eps_grid.len() < TRAILING_RATIOS + 2 {
        return Err(GeometryError::Domain(format!(
            "need at least {} grid points",
            TRAILING_RATIOS + 2
        )));
    }
    if eps_grid.iter().any(|&e| !(e > 0.0 && e < 1.0)) || eps_grid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(GeometryError::Domain("ε grid must decrease inside (0, 1)".into()));
    }
    let a = ratio;
    // r = 1 − e^{−u}: integrand (1 − e^{−u}) u^a e^{−(1−a)u}.
    let g = |u: f64| -(-u).exp_m1() * u.powf(a) * ((a - 1.0) * u).exp();
    let cuts: Vec<f64> = eps_grid.iter().map(|e| -e.ln()).collect();
    let mut segments = Vec::with_capacity(cuts.len());
    let mut lo = 0.0;
    for &hi in &cuts {
        let scale = g(hi).abs().max(g(lo).abs()).max(1e-300) * (hi - lo);
        segments.push(adaptive_simpson(g, lo, hi, 1e-13 * scale.max(1e-12), 50)?);
        lo = hi;
    }
    let mut values = Vec::with_capacity(segments.len());
    let mut acc = 0.0;
    for s in &segments {
        acc += s;
        values.push(acc);
    }
    let differences: Vec<f64> = segments[1..].to_vec();
    let ratios: Vec<f64> = differences.windows(2).map(|w| w[1] / w[0]).collect();
    let tail = &ratios[ratios.len() - TRAILING_RATIOS..];
    let verdict = if tail.iter().all(|&r| r < 1.0) {
        Verdict::Converging
    } else {
        Verdict::Diverging
    };
    let monotone = tail.windows(2).all(|w| w[1] <= w[0]);
    let tail_bound = (verdict == Verdict::Converging && monotone).then(|| {
        let rho = *tail.last().unwrap();
        differences.last().unwrap() * rho / (1.0 - rho)
    });
    let closed_form_limit = (a < 1.0).then(|| {
        let gam = gamma(a + 1.0);
        gam / (1.0 - a).powf(a + 1.0) - gam / (2.0 - a).powf(a + 1.0)
    });
    Ok(ProofIntegralReport {
        eps: eps_grid.to_vec(),
        values,
        differences,
        ratios,
        verdict,
        tail_bound,
        closed_form_limit,
    })
}

/// Lanczos approximation (g = 7, n = 9), accurate to ~1e-15 for `x > 0.5`.
fn gamma(x: f64) -> f64 {
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let s = C[1..]
        .iter()
        .enumerate()
        .fold(C[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0));
    (TAU).sqrt() * t.powf(x + 0.5) * (-t).exp() * s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetNormSample {
    pub r: f64,
    pub integral: f64,
    pub ratio: f64,
}

/// For the Wronskian differential `𝒫` of an arrangement and a reduced curve
/// `f`, the circle integrals `∫ |𝒫(j_n f)|^{2/m̃} ‖f‖² dθ` divided by
/// `(1−r)^{−2m/m̃} (log 1/(1−r))^{2m/m̃}`.
///
/// On the lift, `𝒫(j_n f) = W(f_0, …, f_n) / Π F̂_i(f)` with homogenized
/// forms `F̂_i`; the integrand `(|W|‖f‖^{m̃}/Π|F̂_i(f)|)^{2/m̃}` does not
/// depend on the representation.
pub fn jet_norm_circle_integral(
    w: &WronskianDifferential,
    f: &ProjectiveCurve,
    r_grid: &[f64],
    opts: &TrapezoidOptions,
) -> Result<Vec<JetNormSample>, GeometryError> {
    let a = &w.arrangement;
    let (m, mt) = (w.weight as f64, w.vanishing_order as f64);
    if !(mt > 2.0 * m) {
        return Err(GeometryError::Domain(format!(
            "need vanishing order > 2·weight, got {mt} <= {}",
            2.0 * m
        )));
    }
    if f.dimension() != a.n() {
        return Err(GeometryError::Domain(format!(
            "curve lives in P^{}, arrangement in P^{}",
            f.dimension(),
            a.n()
        )));
    }
    let wr = homogeneous_wronskian(f.components()).to_float();
    let pulled: Vec<Poly> = a
        .forms()
        .iter()
        .map(|form| {
            form.iter().zip(f.components()).fold(Poly::zero(), |acc, (c, p)| {
                &acc + &p.scale(&crate::scalar::qreal(c.clone()))
            })
        })
        .collect();
    if pulled.iter().any(Poly::is_zero) {
        return Err(NevanlinnaError::Containment.into());
    }
    let roots: Vec<Complex64> = pulled.iter().flat_map(Poly::roots).collect();
    let pulled: Vec<FloatPoly> = pulled.iter().map(Poly::to_float).collect();
    let exponent = 2.0 / mt;
    let s = 2.0 * m / mt;
    r_grid
        .par_iter()
        .map(|&r| {
            if !(r > 0.0 && r <= f.r_max()) {
                return Err(GeometryError::Domain(format!("radius {r} outside (0, r_max]")));
            }
            if let Some(z) = roots.iter().find(|z| (z.norm() - r).abs() < 1e-9) {
                return Err(NevanlinnaError::SingularCircle { r, zero: *z }.into());
            }
            let near: Vec<f64> = roots
                .iter()
                .filter(|z| (z.norm() - r).abs() < 0.05)
                .map(|z| z.arg())
                .collect();
            let o = opts.avoiding(&near);
            let mean = periodic_mean(
                |t| {
                    let z = Complex64::from_polar(r, t);
                    let norm = f.norm(z);
                    let den: f64 = pulled.iter().map(|p| p.eval(z).norm()).product();
                    (wr.eval(z).norm() * norm.powf(mt) / den).powf(exponent)
                },
                &o,
            )?;
            let integral = TAU * mean.value;
            let normalizer = ((1.0 - r).recip() * (1.0 / (1.0 - r)).ln()).powf(s);
            Ok(JetNormSample {
                r,
                integral,
                ratio: integral / normalizer,
            })
        })
        .collect()
}
