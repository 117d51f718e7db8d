mod common;

use std::collections::BTreeSet;

use common::{factorial, isobaric, nonzero_qcomplex, partitions, q, small_qcomplex, unit_germ};
use jetlab::scalar::qc;
use jetlab::{
    jet_of, Germ, JetCoordinate, JetKind, JetPolynomial, JetSpace, QComplex, Trivialization,
    Weight,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

const PLAIN: &[JetKind] = &[JetKind::Plain];
const LOG: &[JetKind] = &[JetKind::Log];
const RATIO: &[JetKind] = &[JetKind::Ratio];
const PLAIN_LOG: &[JetKind] = &[JetKind::Plain, JetKind::Log];

/// Monomial `Π c(λ)^{m_λ}` over a multiplicity vector.
fn partition_monomial(m: &[u32], coord: impl Fn(u32) -> JetCoordinate) -> JetPolynomial {
    let mut out = JetPolynomial::constant(QComplex::one());
    for (part, &mult) in m.iter().enumerate().skip(1) {
        out = &out * &JetPolynomial::coordinate(coord(part as u32)).pow(mult);
    }
    out
}

/// `j! / Π (λ!^{m_λ} m_λ!)`.
fn partition_count(j: u32, m: &[u32]) -> i64 {
    let den: i64 = m
        .iter()
        .enumerate()
        .skip(1)
        .map(|(part, &mult)| factorial(part as u32).pow(mult) * factorial(mult))
        .product();
    factorial(j) / den
}

/// `(log f)^{(j)} = Σ_π (−1)^{|π|−1} (|π|−1)! Π (f^{(λ)}/f)` over set
/// partitions, grouped by block sizes.
fn log_oracle(var: usize, j: u32) -> JetPolynomial {
    partitions(j).iter().fold(JetPolynomial::zero(), |acc, m| {
        let blocks: u32 = m.iter().sum();
        let sign = if blocks % 2 == 1 { 1 } else { -1 };
        let c = sign * factorial(blocks - 1) * partition_count(j, m);
        let mono = partition_monomial(m, |o| JetCoordinate::ratio(var, o));
        &acc + &mono.scale(&qc(c, 0))
    })
}

/// `f^{(j)}/f = B_j(log f′, …, (log f)^{(j)})`, the complete Bell polynomial.
fn inverse_oracle(var: usize, j: u32) -> JetPolynomial {
    partitions(j).iter().fold(JetPolynomial::zero(), |acc, m| {
        let mono = partition_monomial(m, |o| JetCoordinate::log(var, o));
        &acc + &mono.scale(&qc(partition_count(j, m), 0))
    })
}

/// Taylor coefficients of `log f − log f(0)` by `n a_0 l_n = n a_n − Σ k l_k a_{n−k}`.
fn log_series(a: &[QComplex], len: usize) -> Vec<QComplex> {
    let mut l = vec![QComplex::zero(); len];
    for n in 1..len {
        let mut s = a[n].clone() * q(n as i64, 1);
        for k in 1..n {
            s = s - l[k].clone() * a[n - k].clone() * q(k as i64, 1);
        }
        l[n] = s / (a[0].clone() * q(n as i64, 1));
    }
    l
}

#[test]
fn faa_matches_partition_oracles() {
    let js = JetSpace::new(8);
    for j in 1..=8 {
        assert_eq!(js.faa_di_bruno_log(1, j).unwrap(), log_oracle(1, j), "log, j = {j}");
        assert_eq!(js.faa_di_bruno_inverse(2, j).unwrap(), inverse_oracle(2, j), "inverse, j = {j}");
    }
}

#[test]
fn faa_coefficients_are_integers() {
    let js = JetSpace::new(8);
    for j in 1..=8 {
        for p in [js.faa_di_bruno_log(1, j).unwrap(), js.faa_di_bruno_inverse(1, j).unwrap()] {
            assert_eq!(p.weight(), Weight::Isobaric(j));
            for (_, c) in p.terms() {
                assert!(c.re.is_integer() && c.im.is_zero(), "{c} in order {j}");
            }
        }
    }
}

#[test]
fn faa_round_trip_is_identity() {
    let js = JetSpace::new(6);
    for j in 1..=6 {
        let log = js.faa_di_bruno_log(1, j).unwrap();
        let back = js.convert_trivialization(&log, Trivialization::RatioToLog, 1).unwrap();
        assert_eq!(back, JetPolynomial::coordinate(JetCoordinate::log(1, j)));
        let quot = js.faa_di_bruno_inverse(1, j).unwrap();
        let back = js.convert_trivialization(&quot, Trivialization::LogToRatio, 1).unwrap();
        assert_eq!(back, JetPolynomial::coordinate(JetCoordinate::ratio(1, j)));
    }
}

fn weighted(
    max: u32,
    vars: usize,
    kinds: &'static [JetKind],
) -> impl Strategy<Value = (u32, JetPolynomial)> {
    (1..=max).prop_flat_map(move |w| (Just(w), isobaric(w, vars, kinds)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isobaric_products_add_weights(
        ((a, p), (b, r)) in (weighted(3, 2, PLAIN_LOG), weighted(3, 2, PLAIN_LOG)),
    ) {
        prop_assume!(!p.is_zero() && !r.is_zero());
        prop_assert_eq!((&p * &r).weight(), Weight::Isobaric(a + b));
    }

    #[test]
    fn faa_log_matches_series_logarithm(
        c0 in nonzero_qcomplex(),
        rest in proptest::collection::vec(small_qcomplex(), 6),
    ) {
        let mut a = vec![c0];
        a.extend(rest);
        let g = Germ::new(a.clone());
        let jv = jet_of(&[g], 6, &QComplex::zero(), &BTreeSet::from([1])).unwrap();
        let l = log_series(&a, 7);
        let js = JetSpace::new(6);
        for j in 1..=6u32 {
            let got = js.faa_di_bruno_log(1, j).unwrap().evaluate(&jv).unwrap();
            prop_assert_eq!(got, l[j as usize].clone() * q(factorial(j), 1));
        }
    }

    #[test]
    fn conversion_round_trips_from_log(p in isobaric(4, 2, LOG)) {
        let js = JetSpace::new(6);
        let ratio = js.convert_trivialization(&p, Trivialization::LogToRatio, 2).unwrap();
        let back = js.convert_trivialization(&ratio, Trivialization::RatioToLog, 2).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn conversion_round_trips_from_ratio(p in isobaric(5, 2, RATIO)) {
        let js = JetSpace::new(6);
        let log = js.convert_trivialization(&p, Trivialization::RatioToLog, 2).unwrap();
        let back = js.convert_trivialization(&log, Trivialization::LogToRatio, 2).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn homothety_law_plain(
        (w, p) in weighted(6, 2, PLAIN),
        germs in proptest::collection::vec(common::poly_germ(8), 2),
        lambda in nonzero_qcomplex(),
        at in small_qcomplex(),
    ) {
        prop_assume!(!p.is_zero());
        let ok = JetSpace::new(6).homothety_weight_check(&p, w, &germs, &lambda, &at).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn homothety_law_with_log_coordinates(
        (w, p, r) in (1u32..=6).prop_flat_map(|w| (Just(w), isobaric(w, 1, LOG), isobaric(w, 2, PLAIN))),
        f1 in unit_germ(8),
        f2 in common::poly_germ(8),
        lambda in nonzero_qcomplex(),
    ) {
        // Log coordinates only on z_1, the germ with a nonvanishing constant.
        let p = &p + &r;
        prop_assume!(!p.is_zero());
        let at = q(1, 16);
        let res = JetSpace::new(6).homothety_weight_check(&p, w, &[f1, f2], &lambda, &at);
        match res {
            Ok(ok) => prop_assert!(ok),
            Err(jetlab::JetError::Pole { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
