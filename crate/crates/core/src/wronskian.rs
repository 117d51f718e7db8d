//! Wronskian logarithmic jet differentials attached to hyperplane
//! arrangements in general position.
//!
//! Hyperplanes are given in inhomogeneous coordinates `x_1, …, x_n` as
//! `F = a_0 + a_1 x_1 + … + a_n x_n`; the homogenized form is
//! `a_0 z_0 + a_1 z_1 + … + a_n z_n`, so `[1, 0, …, 0]` is the hyperplane at
//! infinity.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::germ::{jet_of, Germ};
use crate::jet::{JetCoordinate, JetError, JetPolynomial, JetSpace, Weight};
use crate::linalg::{all_maximal_minors_nonzero, cofactor_det, rational_det};
use crate::poly::Poly;
use crate::scalar::{qreal, QComplex, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WronskianError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hyperplanes are not in general position")]
    InvalidArrangement,
    #[error("forms {0:?} have linearly dependent linear parts")]
    DependentSubfamily(Vec<usize>),
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneArrangement {
    n: usize,
    forms: Vec<Vec<BigRational>>,
}

impl HyperplaneArrangement {
    /// Each form is `[a_0, a_1, …, a_n]` and must not vanish identically.
    pub fn new(n: usize, forms: Vec<Vec<BigRational>>) -> Result<Self, WronskianError> {
        if n == 0 {
            return Err(WronskianError::Domain("dimension must be at least 1".into()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != n + 1 {
                return Err(WronskianError::Domain(format!(
                    "form {} has {} coefficients, expected {}",
                    i + 1,
                    f.len(),
                    n + 1
                )));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(WronskianError::Domain(format!("form {} is zero", i + 1)));
            }
        }
        Ok(HyperplaneArrangement { n, forms })
    }

    pub fn from_i64(n: usize, forms: &[&[i64]]) -> Result<Self, WronskianError> {
        let forms = forms
            .iter()
            .map(|f| f.iter().map(|&a| BigRational::from_integer(a.into())).collect())
            .collect();
        Self::new(n, forms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Vec<BigRational>] {
        &self.forms
    }

    /// `F_i(x)` for the 0-based form index `i`.
    pub fn eval_form<S: Scalar>(&self, i: usize, x: &[S]) -> S {
        let f = &self.forms[i];
        let mut acc = S::from_exact(&qreal(f[0].clone()));
        for (a, xj) in f[1..].iter().zip(x) {
            acc = acc + S::from_exact(&qreal(a.clone())) * xj.clone();
        }
        acc
    }

    /// Matrix of linear parts `a_{i,1..n}` for the forms in `idx`.
    fn linear_part(&self, idx: &[usize]) -> Vec<Vec<BigRational>> {
        idx.iter().map(|&i| self.forms[i][1..].to_vec()).collect()
    }
}

/// True iff every `n+1` of the homogenized forms are linearly independent.
pub fn check_general_position(a: &HyperplaneArrangement) -> Result<bool, WronskianError> {
    if a.q() < a.n + 1 {
        return Err(WronskianError::Domain(format!(
            "need at least n+1 = {} hyperplanes, got {}",
            a.n + 1,
            a.q()
        )));
    }
    Ok(all_maximal_minors_nonzero(&a.forms, a.n + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WronskianDifferential {
    pub arrangement: HyperplaneArrangement,
    /// `det[d^s x_j]`, rows `s = 1..n`, columns `j = 1..n`.
    pub numerator: JetPolynomial,
    pub weight: u32,
    pub vanishing_order: u32,
    pub jet_order: u32,
}

/// Symbolic `Wron(dx_1, …, dx_n)` as a jet polynomial; the differential is
/// `numerator / (F_1 ⋯ F_q)`. The jet order defaults to `n`.
pub fn build_wronskian(
    a: &HyperplaneArrangement,
    k: Option<u32>,
) -> Result<WronskianDifferential, WronskianError> {
    let n = a.n as u32;
    let k = k.unwrap_or(n);
    if k < n {
        return Err(JetError::InsufficientOrder { needed: n, available: k }.into());
    }
    if !check_general_position(a)? {
        return Err(WronskianError::InvalidArrangement);
    }
    let numerator = wronskian_numerator(a.n);
    let weight = match numerator.weight() {
        Weight::Isobaric(w) => w,
        other => {
            return Err(WronskianError::Domain(format!("unexpected grading {other:?}")));
        }
    };
    let vanishing_order = (a.q() as u32)
        .checked_sub(n + 1)
        .expect("general position implies q >= n+1");
    Ok(WronskianDifferential {
        arrangement: a.clone(),
        numerator,
        weight,
        vanishing_order,
        jet_order: k,
    })
}

/// `det[d^s x_j]_{s,j=1..n}` by cofactor expansion.
pub fn wronskian_numerator(n: usize) -> JetPolynomial {
    let m: Vec<Vec<JetPolynomial>> = (1..=n as u32)
        .map(|s| {
            (1..=n)
                .map(|j| JetPolynomial::coordinate(JetCoordinate::plain(j, s)))
                .collect()
        })
        .collect();
    cofactor_det(&m)
}

impl WronskianDifferential {
    /// Value of `numerator / Π F_i` on the jet of the curve `x(z)` at `z`.
    pub fn evaluate_along<S: Scalar>(&self, x: &[Germ<S>], z: &S) -> Result<S, WronskianError> {
        let a = &self.arrangement;
        if x.len() != a.n {
            return Err(WronskianError::Domain(format!(
                "expected {} coordinate germs, got {}",
                a.n,
                x.len()
            )));
        }
        let jv = jet_of(x, self.jet_order, z, &BTreeSet::new())?;
        let num = self.numerator.evaluate(&jv)?;
        let point = x.iter().map(|g| g.value_at(z)).collect::<Result<Vec<_>, _>>()?;
        let mut den = S::one();
        for i in 0..a.q() {
            den = den * a.eval_form(i, &point);
        }
        if den.is_zero() {
            return Err(WronskianError::Domain("curve meets a hyperplane".into()));
        }
        Ok(num / den)
    }
}

/// Local rewriting `Const · Wron(d log F_{i_1}, …, d log F_{i_n}) / Π_{j∉I} F_j`.
///
/// The log Wronskian is `det[(d^s F_{i_a})/F_{i_a}]` with each entry written
/// in the coordinates `dlog[i_a]^t` (hyperplane indices are 1-based), and
/// `Const = 1/det A_I` where `A_I` holds the linear parts of the chosen forms.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalLogForm {
    /// 1-based hyperplane indices.
    pub index_set: Vec<usize>,
    pub constant: QComplex,
    pub log_wronskian: JetPolynomial,
}

pub fn local_log_form(
    w: &WronskianDifferential,
    index_set: &[usize],
) -> Result<LocalLogForm, WronskianError> {
    let a = &w.arrangement;
    let n = a.n;
    let distinct: BTreeSet<usize> = index_set.iter().copied().collect();
    if index_set.len() != n || distinct.len() != n || index_set.iter().any(|&i| i == 0 || i > a.q())
    {
        return Err(WronskianError::Domain(format!(
            "index set must hold {n} distinct indices in 1..={}",
            a.q()
        )));
    }
    let zero_based: Vec<usize> = index_set.iter().map(|i| i - 1).collect();
    let det = rational_det(&a.linear_part(&zero_based));
    if det.is_zero() {
        return Err(WronskianError::DependentSubfamily(index_set.to_vec()));
    }
    let space = JetSpace::new(n as u32);
    let mut m = Vec::with_capacity(n);
    for s in 1..=n as u32 {
        let row = index_set
            .iter()
            .map(|&i| space.faa_di_bruno_inverse(i, s))
            .collect::<Result<Vec<_>, _>>()?;
        m.push(row);
    }
    Ok(LocalLogForm {
        index_set: index_set.to_vec(),
        constant: Complex::new(BigRational::one() / det, BigRational::zero()),
        log_wronskian: cofactor_det(&m),
    })
}

impl LocalLogForm {
    /// Value of the local expression along the curve `x(z)`.
    pub fn evaluate_along<S: Scalar>(
        &self,
        w: &WronskianDifferential,
        x: &[Germ<S>],
        z: &S,
    ) -> Result<S, WronskianError> {
        let a = &w.arrangement;
        let k = x.iter().map(Germ::truncation_order).min().unwrap_or(0);
        // Germs of F_i ∘ x, placed so that germ i-1 is variable i.
        let mut pulled: Vec<Germ<S>> = Vec::with_capacity(a.q());
        for f in a.forms() {
            let mut g = Germ::constant(S::from_exact(&qreal(f[0].clone())), k);
            for (coef, xj) in f[1..].iter().zip(x) {
                g = g.add(&xj.scale(&S::from_exact(&qreal(coef.clone()))));
            }
            pulled.push(g);
        }
        let divisors: BTreeSet<usize> = self.index_set.iter().copied().collect();
        let jv = jet_of(&pulled, w.jet_order, z, &divisors)?;
        let lw = self.log_wronskian.evaluate(&jv)?;
        let point = x.iter().map(|g| g.value_at(z)).collect::<Result<Vec<_>, _>>()?;
        let mut den = S::one();
        for i in (0..a.q()).filter(|i| !divisors.contains(&(i + 1))) {
            den = den * a.eval_form(i, &point);
        }
        if den.is_zero() {
            return Err(WronskianError::Domain("curve meets a hyperplane".into()));
        }
        Ok(S::from_exact(&self.constant) * lw / den)
    }
}

/// Exact comparison of the global and the local expression along `x` at `z`.
pub fn verify_local_log_form(
    w: &WronskianDifferential,
    form: &LocalLogForm,
    x: &[Germ<QComplex>],
    z: &QComplex,
) -> Result<bool, WronskianError> {
    Ok(w.evaluate_along(x, z)? == form.evaluate_along(w, x, z)?)
}

/// `(m, m̃) = (n(n+1)/2, q − (n+1))`. Note `m̃ > 2m` iff `q > (n+1)²`.
pub fn recover_fujimoto_weight(n: u32, q: u32) -> Result<(u32, u32), WronskianError> {
    if q < n + 2 {
        return Err(WronskianError::Domain(format!("need q >= n+2 = {}, got {q}", n + 2)));
    }
    Ok((n * (n + 1) / 2, q - (n + 1)))
}

/// Homogeneous Wronskian `det[f_j^{(s)}]_{s=0..n, j=0..n}` of polynomial
/// components.
pub fn homogeneous_wronskian(components: &[Poly]) -> Poly {
    let n = components.len();
    let mut rows: Vec<Vec<Poly>> = vec![components.to_vec()];
    for s in 1..n {
        let next = rows[s - 1].iter().map(Poly::derivative).collect();
        rows.push(next);
    }
    cofactor_det(&rows)
}

impl crate::linalg::DetRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}
