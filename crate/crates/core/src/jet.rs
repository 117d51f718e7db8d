//! Weighted jet-coordinate algebra.
//!
//! A [`JetPolynomial`] is a polynomial with exact complex-rational
//! coefficients in three families of coordinates attached to a variable
//! `z_i`:
//!
//! * `d[i]^j`     — the plain jet coordinate `d^j z_i`,
//! * `dquot[i]^j` — the quotient `(d^j z_i)/z_i`, a coordinate in its own right,
//! * `dlog[i]^j`  — the logarithmic coordinate `d^j log z_i`.
//!
//! Every coordinate of order `j` has weight `j`. The Faà di Bruno rewriting
//! between the `dlog` and `dquot` families is computed by iterating the total
//! derivative on the coordinate ring and has integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expr::{ExprRing, ParseError, Parser};
use crate::germ::{jet_of, Germ};
use crate::scalar::{format_qcomplex, needs_parens, QComplex, Scalar};

/// Default maximal jet order.
pub const DEFAULT_MAX_ORDER: u32 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: divisor variable z_{var} vanishes at the evaluation point")]
    Pole { var: usize },
    #[error("jet vector has no value for {0}")]
    MissingCoordinate(JetCoordinate),
    #[error("insufficient order: need {needed}, germ is truncated at {available}")]
    InsufficientOrder { needed: u32, available: u32 },
    #[error("insufficient order: |z - center| = {distance} exceeds 0.9 of the validated radius {radius}")]
    OutsideRadius { distance: f64, radius: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetKind {
    /// `d^j z_i`
    Plain,
    /// `(d^j z_i)/z_i`
    Ratio,
    /// `d^j log z_i`
    Log,
}

/// One jet coordinate. Ordering is by `(var, kind, order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetCoordinate {
    pub var: usize,
    pub kind: JetKind,
    pub order: u32,
}

impl JetCoordinate {
    pub fn plain(var: usize, order: u32) -> Self {
        JetCoordinate { var, kind: JetKind::Plain, order }
    }

    pub fn ratio(var: usize, order: u32) -> Self {
        JetCoordinate { var, kind: JetKind::Ratio, order }
    }

    pub fn log(var: usize, order: u32) -> Self {
        JetCoordinate { var, kind: JetKind::Log, order }
    }

    pub fn weight(&self) -> u32 {
        self.order
    }
}

impl fmt::Display for JetCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            JetKind::Plain => "d",
            JetKind::Ratio => "dquot",
            JetKind::Log => "dlog",
        };
        write!(f, "{head}[{}]^{}", self.var, self.order)
    }
}

/// Product of coordinates with multiplicities, sorted, exponents positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct JetMonomial(Vec<(JetCoordinate, u32)>);

impl JetMonomial {
    pub fn one() -> Self {
        JetMonomial(Vec::new())
    }

    pub fn new(factors: impl IntoIterator<Item = (JetCoordinate, u32)>) -> Self {
        let mut map: BTreeMap<JetCoordinate, u32> = BTreeMap::new();
        for (c, e) in factors {
            *map.entry(c).or_default() += e;
        }
        JetMonomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(JetCoordinate, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ order · exponent`, the multi-index weight `|α₁| + 2|α₂| + …`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(c, e)| c.weight() * e).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        JetMonomial::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Drops one power of `c`; caller guarantees `c` divides.
    fn without_one(&self, c: &JetCoordinate) -> Self {
        JetMonomial::new(
            self.0
                .iter()
                .map(|&(d, e)| if d == *c { (d, e - 1) } else { (d, e) }),
        )
    }
}

/// Grading of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// Every term has this weight.
    Isobaric(u32),
    /// Terms of different weights.
    Mixed,
    /// The zero polynomial, isobaric of every weight.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<JetMonomial, QComplex>,
}

impl JetPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QComplex) -> Self {
        Self::term(c, JetMonomial::one())
    }

    pub fn term(c: QComplex, m: JetMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        JetPolynomial { terms }
    }

    pub fn coordinate(c: JetCoordinate) -> Self {
        Self::term(QComplex::one(), JetMonomial::new([(c, 1)]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &QComplex)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &JetMonomial) -> QComplex {
        self.terms.get(m).cloned().unwrap_or_else(QComplex::zero)
    }

    pub fn weight(&self) -> Weight {
        let mut w = self.terms.keys().map(JetMonomial::weight);
        match w.next() {
            None => Weight::Zero,
            Some(first) if w.all(|x| x == first) => Weight::Isobaric(first),
            Some(_) => Weight::Mixed,
        }
    }

    /// Largest coordinate order occurring, 0 for constants.
    pub fn max_order(&self) -> u32 {
        self.coordinates().iter().map(|c| c.order).max().unwrap_or(0)
    }

    pub fn coordinates(&self) -> BTreeSet<JetCoordinate> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(c, _)| *c))
            .collect()
    }

    /// Variables occurring through `dquot` or `dlog` coordinates.
    pub fn divisor_variables(&self) -> BTreeSet<usize> {
        self.coordinates()
            .into_iter()
            .filter(|c| c.kind != JetKind::Plain)
            .map(|c| c.var)
            .collect()
    }

    fn add_term(&mut self, m: JetMonomial, c: QComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &QComplex) -> Self {
        let mut out = JetPolynomial::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = JetPolynomial::constant(QComplex::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces coordinates by polynomials; `None` from `image` keeps the
    /// coordinate.
    pub fn substitute<F>(&self, mut image: F) -> Self
    where
        F: FnMut(&JetCoordinate) -> Option<JetPolynomial>,
    {
        let mut cache: BTreeMap<JetCoordinate, JetPolynomial> = BTreeMap::new();
        let mut out = JetPolynomial::zero();
        for (m, a) in &self.terms {
            let mut prod = JetPolynomial::constant(a.clone());
            for (c, e) in &m.0 {
                let img = cache
                    .entry(*c)
                    .or_insert_with(|| image(c).unwrap_or_else(|| JetPolynomial::coordinate(*c)));
                prod = &prod * &img.pow(*e);
            }
            out = &out + &prod;
        }
        out
    }

    /// Applies the derivation determined by its values on coordinates
    /// (Leibniz rule).
    pub fn derive<F>(&self, rule: F) -> Self
    where
        F: Fn(&JetCoordinate) -> JetPolynomial,
    {
        let mut out = JetPolynomial::zero();
        for (m, a) in &self.terms {
            for (c, e) in &m.0 {
                let rest = JetPolynomial::term(
                    a * QComplex::from_i64(*e as i64),
                    m.without_one(c),
                );
                out = &out + &(&rest * &rule(c));
            }
        }
        out
    }

    /// Numeric value on a jet vector; exact when the kernel is exact.
    pub fn evaluate<S: Scalar>(&self, jv: &JetVector<S>) -> Result<S, JetError> {
        let mut total = S::zero();
        for (m, a) in &self.terms {
            let mut v = S::from_exact(a);
            for (c, e) in &m.0 {
                let x = jv.get(c).ok_or(JetError::MissingCoordinate(*c))?;
                for _ in 0..*e {
                    v = v * x.clone();
                }
            }
            total = total + v;
        }
        Ok(total)
    }
}

/// Weight of a polynomial (free-function form).
pub fn weight_of(p: &JetPolynomial) -> Weight {
    p.weight()
}

impl Add for &JetPolynomial {
    type Output = JetPolynomial;
    fn add(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &JetPolynomial {
    type Output = JetPolynomial;
    fn sub(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &JetPolynomial {
    type Output = JetPolynomial;
    fn mul(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = JetPolynomial::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a * b);
            }
        }
        out
    }
}

impl Neg for &JetPolynomial {
    type Output = JetPolynomial;
    fn neg(self) -> JetPolynomial {
        self.scale(&-QComplex::one())
    }
}

impl Add for JetPolynomial {
    type Output = JetPolynomial;
    fn add(self, rhs: JetPolynomial) -> JetPolynomial {
        &self + &rhs
    }
}

impl Sub for JetPolynomial {
    type Output = JetPolynomial;
    fn sub(self, rhs: JetPolynomial) -> JetPolynomial {
        &self - &rhs
    }
}

impl Mul for JetPolynomial {
    type Output = JetPolynomial;
    fn mul(self, rhs: JetPolynomial) -> JetPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.im.is_zero() && c.re.is_negative() {
                (true, -c.clone())
            } else if c.re.is_zero() && c.im.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                let s = format_qcomplex(&mag);
                parts.push(if needs_parens(&mag) { format!("({s})") } else { s });
            }
            for (coord, e) in &m.0 {
                if *e == 1 {
                    parts.push(coord.to_string());
                } else {
                    parts.push(format!("({coord})^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl ExprRing for JetPolynomial {
    fn from_scalar(q: QComplex) -> Self {
        JetPolynomial::constant(q)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u32) -> Self {
        JetPolynomial::pow(self, e)
    }
    fn div(&self, o: &Self) -> Result<Self, String> {
        let mut it = o.terms();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if m.is_one() => Ok(self.scale(&(QComplex::one() / c))),
            _ => Err("jet polynomials can only be divided by non-zero constants".into()),
        }
    }
}

impl FromStr for JetPolynomial {
    type Err = ParseError;

    /// Parses the text grammar, e.g. `3*(dlog[1]^2)*(d[2]^1)^2`. The `^j`
    /// directly after `]` is the coordinate order (default 1); powers need
    /// parentheses.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(s)?;
        let mut atom = |p: &mut Parser<'_>, id: &str| {
            let kind = match id {
                "d" => JetKind::Plain,
                "dquot" => JetKind::Ratio,
                "dlog" => JetKind::Log,
                _ => {
                    p.step_back();
                    return p.err(format!("unknown symbol '{id}'"));
                }
            };
            p.expect('[')?;
            let var = p.uint()? as usize;
            if var == 0 {
                return p.err("variable indices start at 1");
            }
            p.expect(']')?;
            let order = if p.eat('^') { p.uint()? } else { 1 };
            if order == 0 {
                return p.err("coordinate order must be at least 1");
            }
            Ok(JetPolynomial::coordinate(JetCoordinate { var, kind, order }))
        };
        let r = p.expr(&mut atom)?;
        p.finish()?;
        Ok(r)
    }
}

/// Numeric jet of a tuple of germs at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct JetVector<S> {
    pub values: BTreeMap<JetCoordinate, S>,
}

impl<S> Default for JetVector<S> {
    fn default() -> Self {
        JetVector { values: BTreeMap::new() }
    }
}

impl<S: Clone> JetVector<S> {
    pub fn get(&self, c: &JetCoordinate) -> Option<&S> {
        self.values.get(c)
    }

    pub fn insert(&mut self, c: JetCoordinate, v: S) {
        self.values.insert(c, v);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trivialization {
    /// `d^j log z_i` rewritten through `(d^s z_i)/z_i`.
    LogToRatio,
    /// `(d^j z_i)/z_i` rewritten through `d^s log z_i`.
    RatioToLog,
}

/// Coordinate algebra truncated at a maximal jet order `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetSpace {
    pub max_order: u32,
}

impl Default for JetSpace {
    fn default() -> Self {
        JetSpace { max_order: DEFAULT_MAX_ORDER }
    }
}

impl JetSpace {
    pub fn new(max_order: u32) -> Self {
        JetSpace { max_order }
    }

    fn check_order(&self, j: u32) -> Result<(), JetError> {
        if j == 0 || j > self.max_order {
            Err(JetError::Domain(format!(
                "jet order {j} outside [1, {}]",
                self.max_order
            )))
        } else {
            Ok(())
        }
    }

    /// `d^j log z_i` as an integer isobaric polynomial of weight `j` in the
    /// quotients `(d^s z_i)/z_i`.
    pub fn faa_di_bruno_log(&self, var: usize, j: u32) -> Result<JetPolynomial, JetError> {
        self.check_order(j)?;
        // D(q_s) = q_{s+1} - q_s q_1 for q_s = f^{(s)}/f.
        let rule = |c: &JetCoordinate| {
            let next = JetPolynomial::coordinate(JetCoordinate::ratio(c.var, c.order + 1));
            let prod = &JetPolynomial::coordinate(*c)
                * &JetPolynomial::coordinate(JetCoordinate::ratio(c.var, 1));
            &next - &prod
        };
        let mut p = JetPolynomial::coordinate(JetCoordinate::ratio(var, 1));
        for _ in 1..j {
            p = p.derive(rule);
        }
        Ok(p)
    }

    /// `(d^j z_i)/z_i` as an integer isobaric polynomial of weight `j` in the
    /// logarithmic coordinates `d^s log z_i`.
    pub fn faa_di_bruno_inverse(&self, var: usize, j: u32) -> Result<JetPolynomial, JetError> {
        self.check_order(j)?;
        // u_{j+1} = D(u_j) + u_j · dlog_1, with D(dlog_s) = dlog_{s+1}.
        let rule =
            |c: &JetCoordinate| JetPolynomial::coordinate(JetCoordinate::log(c.var, c.order + 1));
        let l1 = JetPolynomial::coordinate(JetCoordinate::log(var, 1));
        let mut u = l1.clone();
        for _ in 1..j {
            u = &u.derive(rule) + &(&u * &l1);
        }
        Ok(u)
    }

    /// Rewrites an isobaric polynomial between the two logarithmic
    /// trivializations, term by term. `divisor_count` is the number `ℓ` of
    /// divisor variables; only `z_1, …, z_ℓ` may carry `dlog`/`dquot`
    /// coordinates.
    pub fn convert_trivialization(
        &self,
        p: &JetPolynomial,
        direction: Trivialization,
        divisor_count: usize,
    ) -> Result<JetPolynomial, JetError> {
        if p.weight() == Weight::Mixed {
            return Err(JetError::Domain("mixed-weight polynomial".into()));
        }
        for c in p.coordinates() {
            self.check_order(c.order)?;
            if c.kind != JetKind::Plain && c.var > divisor_count {
                return Err(JetError::Domain(format!(
                    "{c} uses a non-divisor variable (ℓ = {divisor_count})"
                )));
            }
        }
        let mut failure = None;
        let out = p.substitute(|c| match (direction, c.kind) {
            (Trivialization::LogToRatio, JetKind::Log) => {
                self.faa_di_bruno_log(c.var, c.order).map_err(|e| failure = Some(e)).ok()
            }
            (Trivialization::RatioToLog, JetKind::Ratio) => {
                self.faa_di_bruno_inverse(c.var, c.order).map_err(|e| failure = Some(e)).ok()
            }
            _ => None,
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Checks `p(j_k(f∘φ_λ))(z) = λ^m · p(j_k(f))(λz)` at `z`, with relative
    /// tolerance `1e-10`. Germ `i` (0-based) is the variable `z_{i+1}`;
    /// variables carrying `dlog`/`dquot` coordinates are divisor variables.
    pub fn homothety_weight_check<S: Scalar>(
        &self,
        p: &JetPolynomial,
        m: u32,
        germs: &[Germ<S>],
        lambda: &S,
        at: &S,
    ) -> Result<bool, JetError> {
        match p.weight() {
            Weight::Isobaric(w) if w != m => {
                return Err(JetError::Domain(format!("polynomial has weight {w}, not {m}")))
            }
            Weight::Mixed => return Err(JetError::Domain("mixed-weight polynomial".into())),
            _ => {}
        }
        let k = p.max_order().max(1);
        if k > self.max_order {
            return Err(JetError::Domain(format!(
                "polynomial uses order {k} > {}",
                self.max_order
            )));
        }
        let divisors = p.divisor_variables();
        let scaled: Vec<Germ<S>> = germs.iter().map(|g| g.compose_homothety(lambda)).collect();
        let lhs = p.evaluate(&jet_of(&scaled, k, at, &divisors)?)?;
        let moved = lambda.clone() * at.clone();
        let base = p.evaluate(&jet_of(germs, k, &moved, &divisors)?)?;
        let mut lm = S::one();
        for _ in 0..m {
            lm = lm * lambda.clone();
        }
        let rhs = (lm * base).to_c64();
        let diff = (lhs.to_c64() - rhs).norm();
        Ok(diff <= 1e-10 * (1.0 + rhs.norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qc;

    fn parse(s: &str) -> JetPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(parse("d[1]").weight(), Weight::Isobaric(1));
        assert_eq!(parse("dlog[1]^3*(d[2]^1)^2").weight(), Weight::Isobaric(5));
        assert_eq!(parse("d[1] + d[1]^2").weight(), Weight::Mixed);
        assert_eq!(JetPolynomial::zero().weight(), Weight::Zero);
    }

    #[test]
    fn faa_low_orders() {
        let js = JetSpace::default();
        assert_eq!(js.faa_di_bruno_log(1, 1).unwrap(), parse("dquot[1]^1"));
        assert_eq!(
            js.faa_di_bruno_log(1, 2).unwrap(),
            parse("dquot[1]^2 - (dquot[1]^1)^2")
        );
        assert_eq!(
            js.faa_di_bruno_log(1, 3).unwrap(),
            parse("dquot[1]^3 - 3*dquot[1]^2*dquot[1]^1 + 2*(dquot[1])^3")
        );
        assert_eq!(js.faa_di_bruno_inverse(2, 1).unwrap(), parse("dlog[2]"));
        assert_eq!(
            js.faa_di_bruno_inverse(2, 2).unwrap(),
            parse("dlog[2]^2 + (dlog[2])^2")
        );
    }

    #[test]
    fn faa_order_bounds() {
        let js = JetSpace::new(4);
        assert!(matches!(js.faa_di_bruno_log(1, 0), Err(JetError::Domain(_))));
        assert!(matches!(js.faa_di_bruno_log(1, 5), Err(JetError::Domain(_))));
        assert!(matches!(js.faa_di_bruno_inverse(1, 5), Err(JetError::Domain(_))));
    }

    #[test]
    fn conversion_examples() {
        let js = JetSpace::default();
        let out = js
            .convert_trivialization(&parse("dlog[1]"), Trivialization::LogToRatio, 1)
            .unwrap();
        assert_eq!(out, parse("dquot[1]"));
        let out = js
            .convert_trivialization(&parse("dlog[1]^2"), Trivialization::LogToRatio, 1)
            .unwrap();
        assert_eq!(out, parse("dquot[1]^2 - (dquot[1])^2"));
        assert!(js
            .convert_trivialization(&parse("dlog[1] + dlog[1]^2"), Trivialization::LogToRatio, 1)
            .is_err());
        assert!(js
            .convert_trivialization(&parse("dlog[2]"), Trivialization::LogToRatio, 1)
            .is_err());
    }

    #[test]
    fn plain_coordinates_survive_conversion() {
        let js = JetSpace::default();
        let p = parse("2*dlog[1]^2*d[2] - I*(d[2])^3");
        let q = js.convert_trivialization(&p, Trivialization::LogToRatio, 1).unwrap();
        assert_eq!(q.weight(), Weight::Isobaric(3));
        assert_eq!(
            js.convert_trivialization(&q, Trivialization::RatioToLog, 1).unwrap(),
            p
        );
    }

    #[test]
    fn grammar_roundtrip() {
        let p = parse("3*(dlog[1]^2)^1*(d[2]^1)^2");
        assert_eq!(p.to_string(), "3*dlog[1]^2*(d[2]^1)^2");
        assert_eq!(parse(&p.to_string()), p);
        let q = parse("(1/2+I)*dquot[3]^2 - d[1]");
        assert_eq!(parse(&q.to_string()), q);
        assert!("dlog[0]".parse::<JetPolynomial>().is_err());
        assert!("dx[1]".parse::<JetPolynomial>().is_err());
        assert!("d[1]/d[2]".parse::<JetPolynomial>().is_err());
        assert_eq!(parse("d[1]/2"), JetPolynomial::coordinate(JetCoordinate::plain(1, 1))
            .scale(&(QComplex::one() / qc(2, 0))));
    }

    #[test]
    fn derivation_is_leibniz() {
        let rule = |c: &JetCoordinate| {
            JetPolynomial::coordinate(JetCoordinate::plain(c.var, c.order + 1))
        };
        let a = parse("d[1]^1*d[2]^2");
        let b = parse("d[1]^3 + d[2]");
        let lhs = (&a * &b).derive(rule);
        let rhs = &(&a.derive(rule) * &b) + &(&a * &b.derive(rule));
        assert_eq!(lhs, rhs);
    }
}
