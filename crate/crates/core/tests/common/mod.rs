#![allow(dead_code)]

use jetlab::scalar::{qc, rat};
use jetlab::{Germ, JetCoordinate, JetKind, JetPolynomial, QComplex};
use num_complex::Complex;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> QComplex {
    Complex::new(rat(n, d), rat(0, 1))
}

/// Small Gaussian rational `(a + bi)/d`.
pub fn small_qcomplex() -> impl Strategy<Value = QComplex> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(a, b, d)| Complex::new(rat(a, d), rat(b, d)))
}

pub fn nonzero_qcomplex() -> impl Strategy<Value = QComplex> {
    small_qcomplex().prop_filter("nonzero", |c| *c != qc(0, 0))
}

/// Exact polynomial germ with `len` coefficients.
pub fn poly_germ(len: usize) -> impl Strategy<Value = Germ<QComplex>> {
    proptest::collection::vec(small_qcomplex(), len).prop_map(Germ::new)
}

/// Polynomial germ with a nonzero constant term that dominates the
/// remaining coefficients near the origin.
pub fn unit_germ(len: usize) -> impl Strategy<Value = Germ<QComplex>> {
    (nonzero_qcomplex(), proptest::collection::vec(small_qcomplex(), len - 1)).prop_map(
        |(c0, rest)| {
            let mut coeffs = vec![c0 * qc(8, 0)];
            coeffs.extend(rest);
            Germ::new(coeffs)
        },
    )
}

/// Random isobaric polynomial of weight `w >= 1`. Each monomial splits `w`
/// into a composition; part `i` becomes a coordinate of order `part_i`,
/// variable `vars[i]` and kind `kinds[i]`.
pub fn isobaric(
    w: u32,
    var_count: usize,
    kinds: &'static [JetKind],
) -> impl Strategy<Value = JetPolynomial> {
    let wu = w as usize;
    let term = (
        (-5i64..=5).prop_filter("nonzero", |c| *c != 0),
        proptest::collection::vec(any::<bool>(), wu.saturating_sub(1)),
        proptest::collection::vec(1..=var_count, wu),
        proptest::collection::vec(0..kinds.len(), wu),
    );
    proptest::collection::vec(term, 1..4).prop_map(move |terms| {
        terms.into_iter().fold(JetPolynomial::zero(), |acc, (c, cuts, vars, ks)| {
            let mut parts = Vec::new();
            let mut len = 1;
            for cut in cuts {
                if cut {
                    parts.push(len);
                    len = 1;
                } else {
                    len += 1;
                }
            }
            parts.push(len);
            let mono = parts.iter().enumerate().fold(
                JetPolynomial::constant(qc(c, 0)),
                |m, (i, &order)| {
                    let coord = JetCoordinate { kind: kinds[ks[i]], var: vars[i], order };
                    &m * &JetPolynomial::coordinate(coord)
                },
            );
            &acc + &mono
        })
    })
}

/// Integer partitions of `n` as multiplicity vectors `m[λ]`, `λ = 1..=n`.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur[part as usize] += 1;
            go(rest - part, part, cur, out);
            cur[part as usize] -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![0; n as usize + 1], &mut out);
    out
}

pub fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}
