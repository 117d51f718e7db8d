use std::collections::BTreeSet;

use jetlab::geometry::{ConjugatedComponent, ComponentMap};
use jetlab::germ::default_truncation;
use jetlab::scalar::{format_qcomplex, format_rational};
use jetlab::{
    area_form_density, build_wronskian, check_general_position, decompose_degree, fmt_defect,
    fmt_defect_constant, gauss_map, holomorphy_residual, jet_norm_circle_integral, jet_of,
    jet_parameters, ldl_product_ratio, ldl_ratio, local_log_form, parse_germ, parse_poly,
    parse_qcomplex, parse_rational_function, proof_integral_convergence, threshold_vs_stated_bound,
    transcendence_ratio, twist_ratio_limit, verify_conformality, yau_integral_divergence, AreaNorm,
    Decomposition, DiscFunction, GermCurve, HModel, JetCoordinate, JetPolynomial, JetSpace,
    Scalar, TrapezoidOptions, Weight, WeierstrassSurface,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::output::{json_num, num, Cell, Record, Table};
use crate::{input, CliError, Cli, Command, GaussCheck, Global, NormArg, SurfaceSource};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, code: 0, notes: Vec::new() }
    }

    fn code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }

    fn note(mut self, n: String) -> Self {
        self.notes.push(n);
        self
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Bounds(a) => bounds(a),
        Command::Faa(a) => faa(a),
        Command::JetEval(a) => jet_eval(a),
        Command::Wronskian(a) => wronskian(a),
        Command::FmtCheck(a) => fmt_check(g, a),
        Command::Transcendence(a) => transcendence(g, a),
        Command::Ldl(a) => ldl(g, a),
        Command::Gauss(a) => gauss(g, a),
        Command::Area(a) => area(g, a),
        Command::ProofIntegral(a) => proof_integral(a),
        Command::JetNormIntegral(a) => jet_norm(g, a),
    }
}

/// `"3"` or the inclusive range `"1..6"`.
fn parse_range(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::usage(format!("--{what} expects an integer or a range a..b, got '{s}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::usage(format!("--{what}: empty range {s}")));
    }
    Ok((lo..=hi).collect())
}

/// `a:b:steps`, validated as an increasing grid inside `(0, 1)`.
fn radius_grid(g: &Global, default: &[f64]) -> Result<Vec<f64>, CliError> {
    let Some(spec) = &g.grid else { return Ok(default.to_vec()) };
    let bad = || CliError::usage(format!("--grid expects a:b:steps, got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts[..] else { return Err(bad()) };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || (n > 1 && !(a < b)) || (n == 1 && a != b) {
        return Err(CliError::usage(format!("--grid {spec}: need a < b and steps ≥ 1")));
    }
    if !(a > 0.0 && b < 1.0) {
        return Err(CliError::usage(format!("--grid {spec}: radii must lie in (0, 1)")));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok(linspace(a, b, n))
}

/// Equally spaced points, rounded to 12 decimals so that `0.5:0.99:50`
/// yields `0.51` rather than `0.51000000000000001`.
fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let x = (a * (last - i as f64) + b * i as f64) / last;
            (x * 1e12).round() / 1e12
        })
        .collect()
}

fn quad(g: &Global) -> TrapezoidOptions {
    TrapezoidOptions::default().with_tol(g.tol.unwrap_or(1e-8))
}

fn max_over_median(v: &[f64]) -> f64 {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let median = if n % 2 == 1 { s[n / 2] } else { 0.5 * (s[n / 2 - 1] + s[n / 2]) };
    let max = s[n - 1];
    if max == 0.0 {
        0.0
    } else {
        max / median
    }
}

fn ratio_table(grid: &[f64], values: &[f64]) -> Table {
    let mut t = Table::new(&["r", "ratio"]);
    for (r, v) in grid.iter().zip(values) {
        t.push(vec![Cell::F(*r), Cell::F(*v)]);
    }
    t
}

fn bounds(a: &crate::BoundsCmd) -> Result<Report, CliError> {
    let ns = parse_range(&a.n, "n")?;
    if ns[0] < 1 {
        return Err(CliError::usage(format!("--n must be at least 1, got {}", a.n)));
    }
    if let Some(d) = &a.degree {
        if ns.len() != 1 {
            return Err(CliError::usage("--degree needs a single --n"));
        }
        return decomposition(ns[0], d, a.alpha_max);
    }
    let mut t = Table::new(&["n", "k", "k'", "delta", "r0", "threshold", "stated_bound", "ok"]);
    let mut all_ok = true;
    for &n in &ns {
        let p = jet_parameters(n)?;
        let rep = threshold_vs_stated_bound(n)?;
        all_ok &= rep.ok;
        t.push(vec![
            Cell::S(n.to_string()),
            Cell::S(p.k.to_string()),
            Cell::S(p.k_prime.to_string()),
            Cell::S(p.delta.to_string()),
            Cell::S(p.r0.to_string()),
            Cell::S(rep.threshold.to_string()),
            Cell::S(rep.stated.to_string()),
            Cell::B(rep.ok),
        ]);
    }
    let mut rows = t.to_json();
    let json = if rows.len() == 1 { rows.remove(0) } else { Value::Array(rows) };
    Ok(Report::new(t.to_csv(), json).code(if all_ok { 0 } else { 1 }))
}

fn decomposition(n: i64, degree: &str, alpha_max: u32) -> Result<Report, CliError> {
    let d: BigInt = degree
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("--degree expects an integer, got '{degree}'")))?;
    let mut rec = Record::default();
    rec.add("n", Cell::S(n.to_string())).add("degree", Cell::S(d.to_string()));
    match decompose_degree(n, &d)? {
        Decomposition::Infeasible { threshold } => {
            rec.add("feasible", Cell::B(false)).add("threshold", Cell::S(threshold.to_string()));
            let json = Value::Object(rec.to_json());
            Ok(Report::new(rec.to_text(), json).code(1))
        }
        Decomposition::Feasible { epsilon, r, r_inequality } => {
            let p = jet_parameters(n)?;
            rec.add("epsilon", Cell::S(epsilon.to_string()))
                .add("r", Cell::S(r.to_string()))
                .add("r_lower_bound", Cell::S(p.r_lower_bound(&epsilon).to_string()))
                .add("feasible", Cell::B(r_inequality));
            if !r_inequality {
                let json = Value::Object(rec.to_json());
                return Ok(Report::new(rec.to_text(), json).code(1));
            }
            let alphas: Vec<BigInt> = (1..=alpha_max.max(1)).map(BigInt::from).collect();
            let zero = BigRational::zero();
            let tw = twist_ratio_limit(n, &d, &alphas, &zero, &zero)?;
            rec.add("limit", Cell::S(format_rational(&tw.limit)))
                .add("limit_below_half", Cell::B(tw.limit_below_half))
                .add("all_below_half", Cell::B(tw.all_below_half()));
            let mut t = Table::new(&["alpha", "m", "m_tilde", "ratio"]);
            for i in 0..alphas.len() {
                t.push(vec![
                    Cell::S(alphas[i].to_string()),
                    Cell::S(format_rational(&tw.m[i])),
                    Cell::S(format_rational(&tw.m_tilde[i])),
                    tw.ratios[i].as_ref().map_or(Cell::Empty, |q| Cell::S(format_rational(q))),
                ]);
            }
            let ok = tw.limit_below_half && tw.all_below_half();
            let mut obj = rec.to_json();
            obj.insert("twist".into(), Value::Array(t.to_json()));
            let text = format!("{}\n{}", rec.to_text(), t.to_csv());
            Ok(Report::new(text, Value::Object(obj)).code(if ok { 0 } else { 1 }))
        }
    }
}

fn faa(a: &crate::FaaCmd) -> Result<Report, CliError> {
    let orders = parse_range(&a.order, "order")?;
    if orders[0] < 1 || *orders.last().unwrap() > 24 {
        return Err(CliError::usage(format!("--order must lie in 1..24, got {}", a.order)));
    }
    if a.var == 0 {
        return Err(CliError::usage("--var is 1-based"));
    }
    let space = JetSpace::new(*orders.last().unwrap() as u32);
    let mut text = String::new();
    let mut rows = Vec::new();
    for &j in &orders {
        let j = j as u32;
        let (lhs, p) = if a.inverse {
            (JetCoordinate::ratio(a.var, j), space.faa_di_bruno_inverse(a.var, j)?)
        } else {
            (JetCoordinate::log(a.var, j), space.faa_di_bruno_log(a.var, j)?)
        };
        text.push_str(&format!("{lhs} = {p}\n"));
        rows.push(json!({ "lhs": lhs.to_string(), "expansion": p.to_string(), "terms": p.len() }));
    }
    let json = if rows.len() == 1 { rows.remove(0) } else { Value::Array(rows) };
    Ok(Report::new(text, json))
}

fn jet_eval(a: &crate::JetEvalCmd) -> Result<Report, CliError> {
    let p: JetPolynomial = a.poly.parse()?;
    let k = a.order.unwrap_or_else(|| p.max_order().max(1));
    if k < p.max_order() {
        return Err(CliError::usage(format!("--order {k} is below the polynomial's order {}", p.max_order())));
    }
    let z = parse_qcomplex(&a.at)?;
    // Away from the center, series germs are only as good as their tail.
    let default = if z.is_zero() { default_truncation(k) } else { default_truncation(k).max(40) };
    let truncation = a.truncation.unwrap_or(default);
    if truncation < k as usize {
        return Err(CliError::usage(format!("--truncation {truncation} is below the jet order {k}")));
    }
    let germs = a.germs.iter().map(|s| parse_germ(s, truncation)).collect::<Result<Vec<_>, _>>()?;
    if let Some(c) = p.coordinates().iter().find(|c| c.var == 0 || c.var > germs.len()) {
        return Err(CliError::usage(format!("coordinate {c} has no germ")));
    }
    let jv = jet_of(&germs, k, &z, &p.divisor_variables())?;
    let v = p.evaluate(&jv)?;
    let f = v.to_c64();
    let mut rec = Record::default();
    rec.add("value", Cell::S(format_qcomplex(&v)))
        .add("re", Cell::F(f.re))
        .add("im", Cell::F(f.im))
        .add("jet_order", Cell::S(k.to_string()))
        .add("truncation", Cell::S(truncation.to_string()));
    Ok(Report::new(rec.to_text(), Value::Object(rec.to_json())))
}

fn wronskian(a: &crate::WronskianCmd) -> Result<Report, CliError> {
    let arr = input::arrangement(&a.file)?;
    let mut rec = Record::default();
    rec.add("n", Cell::S(arr.n().to_string())).add("q", Cell::S(arr.q().to_string()));
    let general = check_general_position(&arr)?;
    rec.add("general_position", Cell::B(general));
    if !general {
        return Ok(Report::new(rec.to_text(), Value::Object(rec.to_json()))
            .code(3)
            .note("wronskian: hyperplanes are not in general position".into()));
    }
    let w = build_wronskian(&arr, a.jet_order)?;
    rec.add("weight", Cell::S(w.weight.to_string()))
        .add("vanishing_order", Cell::S(w.vanishing_order.to_string()))
        .add("jet_order", Cell::S(w.jet_order.to_string()))
        .add("numerator", Cell::S(w.numerator.to_string()));
    if let Some(idx) = &a.index_set {
        let form = local_log_form(&w, idx)?;
        let idx: Vec<String> = form.index_set.iter().map(usize::to_string).collect();
        rec.add("index_set", Cell::S(idx.join(" ")))
            .add("constant", Cell::S(format_qcomplex(&form.constant)))
            .add("log_wronskian", Cell::S(form.log_wronskian.to_string()));
    }
    Ok(Report::new(rec.to_text(), Value::Object(rec.to_json())))
}

const FMT_GRID: [f64; 6] = [0.5, 0.6, 0.7, 0.8, 0.9, 0.95];

fn fmt_check(g: &Global, a: &crate::FmtCmd) -> Result<Report, CliError> {
    let f = input::curve(&a.curve)?;
    let d = input::hypersurface(&a.hypersurface)?;
    if d.dimension() != f.dimension() {
        return Err(CliError::usage(format!(
            "curve lives in P^{}, hypersurface in P^{}",
            f.dimension(),
            d.dimension()
        )));
    }
    let grid = radius_grid(g, &FMT_GRID)?;
    let tol = g.tol.unwrap_or(1e-6);
    let opts = TrapezoidOptions::default().with_tol((tol * 1e-2).min(1e-8));
    let rows = fmt_defect(&f, &d, &grid, &opts)?;
    let mut t = Table::new(&["r", "m", "N", "T", "defect"]);
    for s in &rows {
        t.push(vec![Cell::F(s.r), Cell::F(s.proximity), Cell::F(s.counting), Cell::F(s.order), Cell::F(s.defect)]);
    }
    let defects: Vec<f64> = rows.iter().map(|s| s.defect).collect();
    let hi = defects.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = defects.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = hi - lo;
    let ok = spread <= tol;
    let constant = fmt_defect_constant(&f, &d)?;
    let json = json!({
        "rows": t.to_json(),
        "spread": json_num(spread),
        "tol": json_num(tol),
        "constant": json_num(constant),
        "ok": ok,
    });
    Ok(Report::new(t.to_csv(), json)
        .code(if ok { 0 } else { 1 })
        .note(format!("defect spread {} (tolerance {}), Jensen constant {}", num(spread), num(tol), num(constant))))
}

fn transcendence(g: &Global, a: &crate::TranscendenceCmd) -> Result<Report, CliError> {
    let grid = radius_grid(g, &linspace(0.5, 0.99, 50))?;
    let opts = quad(g);
    let values = match (&a.curve, a.germs.is_empty()) {
        (Some(path), _) => transcendence_ratio(&input::curve(path)?, &grid, &opts)?,
        (None, false) => {
            let comps = a
                .germs
                .iter()
                .map(|s| Ok(parse_germ(s, a.truncation)?.to_float()))
                .collect::<Result<Vec<_>, CliError>>()?;
            transcendence_ratio(&GermCurve::new(comps)?, &grid, &opts)?
        }
        (None, true) => return Err(CliError::usage("give --curve or at least two --germ")),
    };
    let t = ratio_table(&grid, &values);
    Ok(Report::new(t.to_csv(), Value::Array(t.to_json())))
}

fn parse_phi(s: &str) -> Result<DiscFunction, CliError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(inner) = compact.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        if let Ok(p) = parse_poly(inner) {
            return Ok(DiscFunction::Exp(p));
        }
    }
    Ok(DiscFunction::Rational(parse_rational_function(s)?))
}

fn ldl(g: &Global, a: &crate::LdlCmd) -> Result<Report, CliError> {
    let phis = a.phis.iter().map(|s| parse_phi(s)).collect::<Result<Vec<_>, _>>()?;
    let lambdas = if a.lambdas.is_empty() { vec![1; phis.len()] } else { a.lambdas.clone() };
    if lambdas.len() != phis.len() {
        return Err(CliError::usage("give one --lambda per --phi"));
    }
    let grid = radius_grid(g, &linspace(0.5, 0.99, 50))?;
    let opts = quad(g);
    let values = match (phis.len(), a.t) {
        (1, None) => ldl_ratio(&phis[0], lambdas[0], &grid, &opts)?,
        (_, Some(t)) => ldl_product_ratio(&phis, &lambdas, t, &grid, &opts)?,
        (_, None) => return Err(CliError::usage("products of several --phi need --t")),
    };
    let t = ratio_table(&grid, &values);
    let spread = max_over_median(&values);
    let json = json!({ "rows": t.to_json(), "max_over_median": json_num(spread) });
    Ok(Report::new(t.to_csv(), json).note(format!("max/median {}", num(spread))))
}

fn surface(s: &SurfaceSource) -> Result<WeierstrassSurface, CliError> {
    match (&s.preset, &s.surface, &s.f, &s.g) {
        (Some(name), _, _, _) => input::preset(name),
        (None, Some(path), _, _) => input::surface_from_file(path),
        (None, None, Some(f), Some(gg)) => Ok(WeierstrassSurface::weierstrass_from_str(f, gg)?),
        _ => Err(CliError::usage("give --preset, --surface or --f with --g")),
    }
}

fn gauss(g: &Global, a: &crate::GaussCmd) -> Result<Report, CliError> {
    let s = surface(&a.source)?;
    let checks: BTreeSet<GaussCheck> = if a.checks.is_empty() {
        [GaussCheck::Conformality, GaussCheck::Constant, GaussCheck::Holomorphy].into()
    } else {
        a.checks.iter().copied().collect()
    };
    let mut rec = Record::default();
    let conformal = verify_conformality(&s);
    if checks.contains(&GaussCheck::Conformality) {
        rec.add("conformal", Cell::B(conformal));
    }
    if !conformal {
        return Ok(Report::new(rec.to_text(), Value::Object(rec.to_json()))
            .code(3)
            .note("geometry: Weierstrass data is not conformal".into()));
    }
    let map = gauss_map(&s)?;
    rec.add("gauss_map", Cell::S(curve_text(map.curve.components())));
    if checks.contains(&GaussCheck::Constant) {
        rec.add("constant", Cell::B(map.is_constant()));
    }
    let mut code = 0;
    if checks.contains(&GaussCheck::Holomorphy) {
        if !(a.radius > 0.0 && a.radius < s.r_max()) || a.points == 0 {
            return Err(CliError::usage("--radius must lie in (0, r_max) and --points be positive"));
        }
        let samples: Vec<Complex64> = (0..a.points)
            .map(|j| Complex64::from_polar(a.radius, std::f64::consts::TAU * j as f64 / a.points as f64))
            .collect();
        let residual = match a.conjugate {
            Some(index) => {
                if index >= map.curve.components().len() {
                    return Err(CliError::usage(format!("--conjugate {index} exceeds the component count")));
                }
                holomorphy_residual(&ConjugatedComponent { inner: &map, index }, &samples)?
            }
            None => holomorphy_residual(&map as &dyn ComponentMap, &samples)?,
        };
        let tol = g.tol.unwrap_or(1e-8);
        let holomorphic = residual <= tol;
        rec.add("residual", Cell::F(residual))
            .add("tol", Cell::F(tol))
            .add("holomorphic", Cell::B(holomorphic));
        if !holomorphic {
            code = 1;
        }
    }
    Ok(Report::new(rec.to_text(), Value::Object(rec.to_json())).code(code))
}

fn curve_text(c: &[jetlab::Poly]) -> String {
    let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(" : "))
}

fn parse_model(s: &str) -> Result<HModel, CliError> {
    match s {
        "constant" => Ok(HModel::Constant),
        "inverse-pole" => Ok(HModel::InversePole),
        _ => match s.strip_prefix("modulus:") {
            Some(p) => Ok(HModel::Modulus(parse_poly(p)?)),
            None => Err(CliError::usage(format!(
                "--model expects constant, inverse-pole or modulus:POLY, got '{s}'"
            ))),
        },
    }
}

fn area(g: &Global, a: &crate::AreaCmd) -> Result<Report, CliError> {
    let s = surface(&a.source)?;
    if let Some(at) = &a.at {
        let z = parse_qcomplex(at)?.to_c64();
        let mut rec = Record::default();
        rec.add("euclidean", Cell::F(area_form_density(&s, z, AreaNorm::Euclidean)?))
            .add("max", Cell::F(area_form_density(&s, z, AreaNorm::Max)?));
        return Ok(Report::new(rec.to_text(), Value::Object(rec.to_json())));
    }
    let model = parse_model(&a.model)?;
    let norm = match a.norm {
        NormArg::Euclidean => AreaNorm::Euclidean,
        NormArg::Max => AreaNorm::Max,
    };
    // Circles closer to 1 put peaks of width 1−r below the finest node spacing.
    let default: Vec<f64> = (1..=3).map(|j| 1.0 - 10f64.powi(-j)).collect();
    let grid = radius_grid(g, &default)?;
    let eps: Vec<f64> = grid.iter().map(|r| 1.0 - r).collect();
    let rep = yau_integral_divergence(a.p, &model, &s, norm, &eps, &quad(g))?;
    let mut t = Table::new(&["r", "integral", "ratio"]);
    for (r, v) in grid.iter().zip(&rep.values) {
        t.push(vec![Cell::F(*r), Cell::F(*v), Cell::F(v / (1.0 / (1.0 - r)).ln())]);
    }
    let json = json!({ "rows": t.to_json(), "caveat": rep.caveat });
    Ok(Report::new(t.to_csv(), json).note(rep.caveat.to_string()))
}

fn proof_integral(a: &crate::ProofIntegralCmd) -> Result<Report, CliError> {
    let ratio = match (a.ratio, a.weight, a.vanishing_order) {
        (Some(r), _, _) => r,
        (None, Some(m), Some(mt)) if mt > 0 => 2.0 * m as f64 / mt as f64,
        (None, Some(_), Some(_)) => return Err(CliError::usage("--vanishing-order must be positive")),
        _ => return Err(CliError::usage("give --ratio or --weight with --vanishing-order")),
    };
    if !(1..=15).contains(&a.eps_count) {
        return Err(CliError::usage("--eps-count must lie in 1..15"));
    }
    let eps: Vec<f64> = (1..=a.eps_count).map(|j| 10f64.powi(-j)).collect();
    let rep = proof_integral_convergence(ratio, &eps)?;
    let mut rec = Record::default();
    let opt = |x: Option<f64>| x.map_or(Cell::Empty, Cell::F);
    rec.add("ratio", Cell::F(ratio))
        .add("verdict", Cell::S(rep.verdict.as_str().into()))
        .add("closed_form_limit", opt(rep.closed_form_limit))
        .add("tail_bound", opt(rep.tail_bound))
        .add("certified", Cell::B(rep.is_certified()));
    let mut t = Table::new(&["eps", "value", "difference"]);
    for (i, (e, v)) in rep.eps.iter().zip(&rep.values).enumerate() {
        let diff = if i == 0 { Cell::Empty } else { Cell::F(rep.differences[i - 1]) };
        t.push(vec![Cell::F(*e), Cell::F(*v), diff]);
    }
    let mut obj = rec.to_json();
    obj.insert("rows".into(), Value::Array(t.to_json()));
    let text = format!("{}\n{}", rec.to_text(), t.to_csv());
    Ok(Report::new(text, Value::Object(obj)))
}

fn jet_norm(g: &Global, a: &crate::JetNormCmd) -> Result<Report, CliError> {
    let arr = input::arrangement(&a.file)?;
    let f = input::curve(&a.curve)?;
    let w = build_wronskian(&arr, None)?;
    let grid = radius_grid(g, &linspace(0.5, 0.95, 10))?;
    let rows = jet_norm_circle_integral(&w, &f, &grid, &quad(g))?;
    let mut t = Table::new(&["r", "integral", "ratio"]);
    for s in &rows {
        t.push(vec![Cell::F(s.r), Cell::F(s.integral), Cell::F(s.ratio)]);
    }
    let ratios: Vec<f64> = rows.iter().map(|s| s.ratio).collect();
    let spread = max_over_median(&ratios);
    let weight = match w.numerator.weight() {
        Weight::Isobaric(m) => m,
        _ => w.weight,
    };
    let json = json!({
        "weight": weight,
        "vanishing_order": w.vanishing_order,
        "rows": t.to_json(),
        "max_over_median": json_num(spread),
    });
    Ok(Report::new(t.to_csv(), json).note(format!(
        "m = {weight}, m̃ = {}, max/median {}",
        w.vanishing_order,
        num(spread)
    )))
}
