//! JSON input documents.
//!
//! Curve: `{"components": ["1", "z^2 - 1/9"], "r_max": 0.99}`; a component
//! is either an expression in `z` or an array of coefficient strings, lowest
//! degree first.
//!
//! Hypersurface: `{"n": 1, "terms": [{"coeff": "1", "exponents": [0, 1]}]}`.
//!
//! Arrangement: `{"n": 2, "forms": [["1", "0", "0"], ["1/3", "1", "-2"]]}`.
//!
//! Surface: `{"preset": "enneper"}`, `{"weierstrass": {"F": "1", "G": "z"}}`
//! or `{"phi": ["1", "I", "0"]}`, each with an optional `"r_max"`.

use std::path::Path;

use jetlab::scalar::parse_rational;
use jetlab::{
    parse_poly, parse_qcomplex, parse_rational_function, HyperplaneArrangement, Hypersurface, Poly,
    ProjectiveCurve, QComplex, WeierstrassSurface,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn to_qcomplex(&self) -> Result<QComplex, CliError> {
        match self {
            Coeff::Int(v) => Ok(jetlab::scalar::qc(*v, 0)),
            Coeff::Text(s) => parse_qcomplex(s).map_err(|e| CliError::input(format!("coefficient '{s}': {e}"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Expr(String),
    Coeffs(Vec<Coeff>),
}

impl PolyInput {
    fn to_poly(&self) -> Result<Poly, CliError> {
        match self {
            PolyInput::Expr(s) => parse_poly(s).map_err(|e| CliError::input(format!("polynomial '{s}': {e}"))),
            PolyInput::Coeffs(c) => Ok(Poly::new(c.iter().map(Coeff::to_qcomplex).collect::<Result<_, _>>()?)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveInput {
    components: Vec<PolyInput>,
    #[serde(default = "default_r_max")]
    r_max: f64,
}

fn default_r_max() -> f64 {
    0.99
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermInput {
    coeff: Coeff,
    exponents: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypersurfaceInput {
    n: usize,
    terms: Vec<TermInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementInput {
    n: usize,
    forms: Vec<Vec<Coeff>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeierstrassInput {
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "G")]
    g: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceInput {
    preset: Option<String>,
    weierstrass: Option<WeierstrassInput>,
    phi: Option<Vec<String>>,
    r_max: Option<f64>,
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn curve(path: &Path) -> Result<ProjectiveCurve, CliError> {
    let c: CurveInput = read(path)?;
    let polys = c.components.iter().map(PolyInput::to_poly).collect::<Result<_, _>>()?;
    Ok(ProjectiveCurve::new(polys, c.r_max)?)
}

pub fn hypersurface(path: &Path) -> Result<Hypersurface, CliError> {
    let h: HypersurfaceInput = read(path)?;
    let terms = h
        .terms
        .iter()
        .map(|t| Ok((t.coeff.to_qcomplex()?, t.exponents.clone())))
        .collect::<Result<_, CliError>>()?;
    Ok(Hypersurface::new(h.n, terms)?)
}

pub fn arrangement(path: &Path) -> Result<HyperplaneArrangement, CliError> {
    let a: ArrangementInput = read(path)?;
    let forms = a
        .forms
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| match c {
                    Coeff::Int(v) => parse_rational(&v.to_string()),
                    Coeff::Text(s) => parse_rational(s),
                }
                .ok_or_else(|| CliError::input(format!("form coefficient {c:?} is not a rational"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(HyperplaneArrangement::new(a.n, forms)?)
}

pub fn surface_from_file(path: &Path) -> Result<WeierstrassSurface, CliError> {
    let s: SurfaceInput = read(path)?;
    let surface = match (&s.preset, &s.weierstrass, &s.phi) {
        (Some(name), None, None) => preset(name)?,
        (None, Some(w), None) => WeierstrassSurface::weierstrass_from_str(&w.f, &w.g)?,
        (None, None, Some(phi)) => {
            let phi = phi
                .iter()
                .map(|p| parse_rational_function(p).map_err(|e| CliError::input(format!("'{p}': {e}"))))
                .collect::<Result<_, _>>()?;
            WeierstrassSurface::new(phi, default_r_max())?
        }
        _ => return Err(CliError::input("surface needs exactly one of preset, weierstrass, phi")),
    };
    match s.r_max {
        Some(r) => Ok(surface.with_r_max(r)?),
        None => Ok(surface),
    }
}

pub fn preset(name: &str) -> Result<WeierstrassSurface, CliError> {
    WeierstrassSurface::preset(name)
        .ok_or_else(|| CliError::usage(format!("unknown preset '{name}' (plane, enneper, catenoid)")))
}
