//! Exact degree bounds for the existence of twisted logarithmic jet
//! differentials on the complement of a generic hypersurface.
//!
//! Everything here is arbitrary precision integer or rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Jet order and degree constants attached to a dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetParameters {
    pub n: u32,
    /// `k = n + 1`.
    pub k: BigInt,
    /// `k′ = k(k+1)/2`.
    pub k_prime: BigInt,
    /// `δ = (k+1)n + k`.
    pub delta: BigInt,
    /// `δ^{k−1}(δ+1)(δ+2)`, the form used downstream.
    pub r0: BigInt,
    /// `2δ^{k−1}k′ + δ^{k−1}(δ+1)²`.
    pub r0_sum_form: BigInt,
}

impl JetParameters {
    /// Whether the two expressions for `r₀` coincide.
    pub fn r0_forms_agree(&self) -> bool {
        self.r0 == self.r0_sum_form
    }

    /// `δ^{k−1}`.
    fn delta_pow(&self) -> BigInt {
        self.delta.pow(self.n)
    }

    /// `(r₀ + k)δ + 2δ`, below which the decomposition is not attempted.
    pub fn threshold(&self) -> BigInt {
        (&self.r0 + &self.k + 2) * &self.delta
    }

    /// `2δ^{k−1}k′ + δ^{k−1}k(ε + kδ)`, the strict lower bound required of `r`.
    pub fn r_lower_bound(&self, epsilon: &BigInt) -> BigInt {
        let p = self.delta_pow();
        BigInt::from(2) * &p * &self.k_prime + &p * &self.k * (epsilon + &self.k * &self.delta)
    }
}

fn dimension(n: i64) -> Result<u32, BoundsError> {
    u32::try_from(n)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| BoundsError::Domain(format!("dimension must be at least 1, got {n}")))
}

pub fn jet_parameters(n: i64) -> Result<JetParameters, BoundsError> {
    let n = dimension(n)?;
    let nb = BigInt::from(n);
    let k: BigInt = &nb + 1;
    let k_prime = (&k * (&k + 1)) / 2;
    let delta: BigInt = (&k + 1) * &nb + &k;
    let p = delta.pow(n);
    let r0 = &p * (&delta + 1) * (&delta + 2);
    let d1: BigInt = &delta + 1;
    let r0_sum_form = BigInt::from(2) * &p * &k_prime + &p * d1.pow(2);
    Ok(JetParameters { n, k, k_prime, delta, r0, r0_sum_form })
}

/// `k(k + δ − 1 + kδ) < (δ + 1)²`.
pub fn key_inequality(n: i64) -> Result<bool, BoundsError> {
    let p = jet_parameters(n)?;
    let lhs = &p.k * (&p.k + &p.delta - 1 + &p.k * &p.delta);
    let rhs: BigInt = &p.delta + 1;
    Ok(lhs < rhs.pow(2))
}

/// Outcome of writing `d = ε + (r + k)δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Feasible {
        epsilon: BigInt,
        r: BigInt,
        /// Whether `r` exceeds [`JetParameters::r_lower_bound`].
        r_inequality: bool,
    },
    /// `d` lies below the threshold; smaller degrees are not ruled out.
    Infeasible { threshold: BigInt },
}

impl Decomposition {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decomposition::Feasible { r_inequality: true, .. })
    }
}

/// Unique `ε ∈ [k, k+δ−1]` with `ε ≡ d (mod δ)` and `r = (d − ε)/δ − k`,
/// attempted only for `d ≥ (r₀+k)δ + 2δ`.
pub fn decompose_degree(n: i64, d: &BigInt) -> Result<Decomposition, BoundsError> {
    if !d.is_positive() {
        return Err(BoundsError::Domain(format!("degree must be positive, got {d}")));
    }
    let p = jet_parameters(n)?;
    let threshold = p.threshold();
    if *d < threshold {
        return Ok(Decomposition::Infeasible { threshold });
    }
    let epsilon = &p.k + (d - &p.k).mod_floor(&p.delta);
    let r = (d - &epsilon) / &p.delta - &p.k;
    let r_inequality = r > p.r_lower_bound(&epsilon);
    Ok(Decomposition::Feasible { epsilon, r, r_inequality })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub threshold: BigInt,
    /// `(n+1)^{n+3}(n+2)^{n+3}`.
    pub stated: BigInt,
    pub ok: bool,
}

pub fn threshold_vs_stated_bound(n: i64) -> Result<ThresholdReport, BoundsError> {
    let p = jet_parameters(n)?;
    let threshold = p.threshold();
    let e = p.n + 3;
    let stated = BigInt::from(p.n + 1).pow(e) * BigInt::from(p.n + 2).pow(e);
    let ok = threshold < stated;
    Ok(ThresholdReport { threshold, stated, ok })
}

/// `n^{n+2}(n+1)^{n+2}`: Gauss map degree bound for minimal surfaces in `ℝⁿ`, `n ≥ 2`.
pub fn main_theorem_bound(n_ambient: i64) -> Result<BigInt, BoundsError> {
    if n_ambient < 2 {
        return Err(BoundsError::Domain(format!(
            "ambient dimension must be at least 2, got {n_ambient}"
        )));
    }
    let n = n_ambient as u32;
    Ok(BigInt::from(n).pow(n + 2) * BigInt::from(n + 1).pow(n + 2))
}

/// Exact twist ratios `m/m̃` along a grid of `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistReport {
    pub epsilon: BigInt,
    pub r: BigInt,
    pub alphas: Vec<BigInt>,
    pub m: Vec<BigRational>,
    pub m_tilde: Vec<BigRational>,
    /// `m/m̃`, or `None` where `m̃ = 0`.
    pub ratios: Vec<Option<BigRational>>,
    /// `δ^{k−1}k′ / (r − δ^{k−1}k(ε + kδ))`.
    pub limit: BigRational,
    pub limit_below_half: bool,
}

impl TwistReport {
    /// Whether `m̃ > 2m` at every grid point.
    pub fn all_below_half(&self) -> bool {
        self.m.iter().zip(&self.m_tilde).all(|(m, mt)| mt > &(m * BigInt::from(2)))
    }
}

/// `m = β + αδ^{k−1}k′`, `m̃ = −β̃ − α(δ^{k−1}k(ε+kδ) − r)` for the
/// decomposition of `d`. `β`, `β̃` are existential constants; pass zero
/// unless a specific value is being explored. The limit does not depend on them.
pub fn twist_ratio_limit(
    n: i64,
    d: &BigInt,
    alpha_grid: &[BigInt],
    beta: &BigRational,
    beta_tilde: &BigRational,
) -> Result<TwistReport, BoundsError> {
    let p = jet_parameters(n)?;
    let (epsilon, r) = match decompose_degree(n, d)? {
        Decomposition::Feasible { epsilon, r, r_inequality: true } => (epsilon, r),
        Decomposition::Feasible { .. } => {
            return Err(BoundsError::Domain("decomposition violates the r-inequality".into()))
        }
        Decomposition::Infeasible { threshold } => {
            return Err(BoundsError::Domain(format!(
                "degree {d} lies below the threshold {threshold}"
            )))
        }
    };
    let pw = p.delta_pow();
    let a = &pw * &p.k_prime;
    let b = &pw * &p.k * (&epsilon + &p.k * &p.delta) - &r;
    let mut m = Vec::with_capacity(alpha_grid.len());
    let mut m_tilde = Vec::with_capacity(alpha_grid.len());
    let mut ratios = Vec::with_capacity(alpha_grid.len());
    for alpha in alpha_grid {
        let mi = beta + BigRational::from_integer(alpha * &a);
        let mt = -beta_tilde - BigRational::from_integer(alpha * &b);
        ratios.push((!mt.is_zero()).then(|| &mi / &mt));
        m.push(mi);
        m_tilde.push(mt);
    }
    let limit = BigRational::new(a, -b);
    let limit_below_half =
        limit.is_positive() && limit < BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(TwistReport {
        epsilon,
        r,
        alphas: alpha_grid.to_vec(),
        m,
        m_tilde,
        ratios,
        limit,
        limit_below_half,
    })
}
