//! Periodic trapezoid rule on circles and adaptive Simpson on intervals.

use std::f64::consts::TAU;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: last difference {diff:e} at {nodes} nodes (value {value})")]
    NonConvergence { value: f64, diff: f64, nodes: usize },
    #[error("non-finite integrand at t = {at}")]
    NonFinite { at: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidOptions {
    /// Stop when successive refinements differ by less than `tol·max(1,|I|)`.
    pub tol: f64,
    pub min_log2: u32,
    pub max_log2: u32,
    /// Grid shift as a fraction of the coarsest step.
    pub offset: f64,
}

impl Default for TrapezoidOptions {
    fn default() -> Self {
        TrapezoidOptions {
            tol: 1e-8,
            min_log2: 12,
            max_log2: 18,
            offset: 0.0,
        }
    }
}

impl TrapezoidOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Shifts the grid so that no node lies within a quarter of the
    /// coarsest step of any angle in `avoid`.
    pub fn avoiding(mut self, avoid: &[f64]) -> Self {
        let h = TAU / (1u64 << self.min_log2) as f64;
        let clear = |off: f64| {
            avoid.iter().all(|&a| {
                let t = (a / h - off).rem_euclid(1.0);
                t.min(1.0 - t) > 0.25
            })
        };
        let mut candidates = vec![0.0, 0.5];
        candidates.extend((1..16).map(|i| i as f64 / 16.0));
        self.offset = candidates
            .into_iter()
            .find(|&o| clear(o))
            .unwrap_or(0.5);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub nodes: usize,
    pub last_diff: f64,
}

/// `(1/2π) ∫₀^{2π} f(θ) dθ` by the trapezoid rule with node doubling.
pub fn periodic_mean<F>(f: F, opts: &TrapezoidOptions) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    let mut n = 1usize << opts.min_log2;
    let theta0 = opts.offset * TAU / n as f64;
    let sample = |t: f64| -> Result<f64, QuadError> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFinite { at: t })
        }
    };
    let mut sum = 0.0;
    for j in 0..n {
        sum += sample(theta0 + TAU * j as f64 / n as f64)?;
    }
    let mut value = sum / n as f64;
    let mut diff = f64::INFINITY;
    while n < (1usize << opts.max_log2) {
        // Midpoints of the current grid.
        for j in 0..n {
            sum += sample(theta0 + TAU * (j as f64 + 0.5) / n as f64)?;
        }
        n *= 2;
        let next = sum / n as f64;
        diff = (next - value).abs();
        value = next;
        if diff < opts.tol * value.abs().max(1.0) {
            return Ok(QuadResult {
                value,
                nodes: n,
                last_diff: diff,
            });
        }
    }
    Err(QuadError::NonConvergence {
        value,
        diff,
        nodes: n,
    })
}

/// `∫_a^b f` by adaptive Simpson with absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64, QuadError>
where
    F: Fn(f64) -> f64,
{
    let eval = |x: f64| -> Result<f64, QuadError> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFinite { at: x })
        }
    };
    let fa = eval(a)?;
    let fb = eval(b)?;
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut worst = 0.0f64;
    let v = simpson_step(&eval, a, b, fa, fm, fb, whole, tol, max_depth, &mut worst)?;
    if worst > tol {
        Err(QuadError::NonConvergence {
            value: v,
            diff: worst,
            nodes: 0,
        })
    } else {
        Ok(v)
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<E>(
    eval: &E,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    worst: &mut f64,
) -> Result<f64, QuadError>
where
    E: Fn(f64) -> Result<f64, QuadError>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval(lm)?;
    let frm = eval(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        *worst = worst.max(delta.abs() / 15.0);
        return Ok(left + right + delta / 15.0);
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    let l = simpson_step(eval, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, worst)?;
    let r = simpson_step(eval, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, worst)?;
    Ok(l + r)
}
