//! Divisors on the unit disc and their counting functions.

use num_complex::Complex64;

use super::NevanlinnaError;

/// Truncation level `k` of the counting function; `Infinite` counts full
/// multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Finite(u32),
    Infinite,
}

impl Truncation {
    pub fn cap(self, multiplicity: u32) -> u32 {
        match self {
            Truncation::Finite(k) => k.min(multiplicity),
            Truncation::Infinite => multiplicity,
        }
    }
}

/// Finite sum of points of the disc with positive multiplicities. The origin
/// has its own slot so that counting functions can apply the `log r`
/// correction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscDivisor {
    support: Vec<(Complex64, u32)>,
    origin_multiplicity: u32,
}

impl DiscDivisor {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a divisor; points at exactly `0` go to the origin slot and
    /// repeated points are merged.
    pub fn new(points: Vec<(Complex64, u32)>, origin_multiplicity: u32) -> Result<Self, NevanlinnaError> {
        let mut d = DiscDivisor {
            support: Vec::with_capacity(points.len()),
            origin_multiplicity,
        };
        for (a, m) in points {
            if m == 0 {
                return Err(NevanlinnaError::Domain("multiplicities must be positive".into()));
            }
            if !(a.norm() < 1.0) {
                return Err(NevanlinnaError::Domain(format!("point {a} is not in the unit disc")));
            }
            d.push(a, m);
        }
        Ok(d)
    }

    fn push(&mut self, a: Complex64, m: u32) {
        if a == Complex64::new(0.0, 0.0) {
            self.origin_multiplicity += m;
        } else if let Some(slot) = self.support.iter_mut().find(|(b, _)| *b == a) {
            slot.1 += m;
        } else {
            self.support.push((a, m));
        }
    }

    pub fn support(&self) -> &[(Complex64, u32)] {
        &self.support
    }

    pub fn origin_multiplicity(&self) -> u32 {
        self.origin_multiplicity
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty() && self.origin_multiplicity == 0
    }

    /// Total multiplicity.
    pub fn degree(&self) -> u32 {
        self.origin_multiplicity + self.support.iter().map(|(_, m)| m).sum::<u32>()
    }

    pub fn add(&self, other: &DiscDivisor) -> DiscDivisor {
        let mut out = self.clone();
        out.origin_multiplicity += other.origin_multiplicity;
        for &(a, m) in &other.support {
            out.push(a, m);
        }
        out
    }

    /// `n^{[k]}(t, E)`: truncated multiplicities of points with `|a| < t`.
    pub fn truncated_degree(&self, t: f64, k: Truncation) -> Result<u32, NevanlinnaError> {
        check_radius(t)?;
        let inner: u32 = self
            .support
            .iter()
            .filter(|(a, _)| a.norm() < t)
            .map(|&(_, m)| k.cap(m))
            .sum();
        Ok(inner + k.cap(self.origin_multiplicity))
    }

    /// `N^{[k]}(r, E) = n^{[k]}(0)·log r + Σ_{0<|a|<r} min(k, α)·log(r/|a|)`.
    pub fn counting_function(&self, r: f64, k: Truncation) -> Result<f64, NevanlinnaError> {
        check_radius(r)?;
        let mut total = k.cap(self.origin_multiplicity) as f64 * r.ln();
        for &(a, m) in &self.support {
            let abs = a.norm();
            if abs < r {
                total += k.cap(m) as f64 * (r / abs).ln();
            }
        }
        Ok(total)
    }
}

fn check_radius(r: f64) -> Result<(), NevanlinnaError> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(NevanlinnaError::Domain(format!("radius {r} is outside (0, 1)")))
    }
}
