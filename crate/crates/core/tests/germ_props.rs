mod common;

use std::collections::BTreeSet;

use common::{nonzero_qcomplex, poly_germ, q, small_qcomplex, unit_germ};
use jetlab::{jet_of, Germ, JetCoordinate, JetPolynomial, Poly, QComplex, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

/// `f^{(j)}(z)` by repeated symbolic differentiation of the polynomial.
fn poly_derivative_at(g: &Germ<QComplex>, j: u32, z: &QComplex) -> QComplex {
    let mut p = Poly::new(g.coeffs().to_vec());
    for _ in 0..j {
        p = p.derivative();
    }
    p.eval(z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(f in poly_germ(9), g in poly_germ(9)) {
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn chain_rule_for_homotheties(f in poly_germ(9), lambda in nonzero_qcomplex()) {
        let lhs = f.compose_homothety(&lambda).derivative();
        let rhs = f.derivative().compose_homothety(&lambda).scale(&lambda);
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn log_derivative_solves_linear_recurrence(f in unit_germ(9)) {
        // L with f·L = f′, solved term by term.
        let a = f.coeffs();
        let d = f.derivative();
        let mut l: Vec<QComplex> = Vec::new();
        for i in 0..d.coeffs().len() {
            let mut s = d.coeffs()[i].clone();
            for j in 1..=i {
                s = s - a[j].clone() * l[i - j].clone();
            }
            l.push(s / a[0].clone());
        }
        let ld = f.log_derivative().unwrap();
        prop_assert_eq!(ld.coeffs(), &l[..]);
    }

    #[test]
    fn jet_of_reproduces_derivatives(
        germs in proptest::collection::vec(poly_germ(8), 1..4),
        z in small_qcomplex(),
    ) {
        let k = 6;
        let jv = jet_of(&germs, k, &z, &BTreeSet::new()).unwrap();
        for (i, g) in germs.iter().enumerate() {
            for j in 1..=k {
                let p = JetPolynomial::coordinate(JetCoordinate::plain(i + 1, j));
                prop_assert_eq!(p.evaluate(&jv).unwrap(), poly_derivative_at(g, j, &z));
            }
        }
    }

    #[test]
    fn log_jets_transform_under_homotheties(
        f in unit_germ(9),
        lambda in nonzero_qcomplex(),
    ) {
        // (log(f∘φ_λ))^{(j)}(z) = λ^j (log f)^{(j)}(λz).
        let k = 6;
        let z = q(1, 32);
        let divisors = BTreeSet::from([1]);
        let scaled = jet_of(&[f.compose_homothety(&lambda)], k, &z, &divisors);
        let base = jet_of(&[f], k, &(lambda.clone() * z.clone()), &divisors);
        let (Ok(scaled), Ok(base)) = (scaled, base) else {
            return Err(TestCaseError::reject("germ vanishes at the sample point"));
        };
        let mut lj = lambda.clone();
        for j in 1..=k {
            let c = JetCoordinate::log(1, j);
            let lhs = scaled.get(&c).unwrap().to_c64();
            let rhs = (lj.clone() * base.get(&c).unwrap().clone()).to_c64();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0), "j = {}", j);
            lj = lj * lambda.clone();
        }
    }

    #[test]
    fn reciprocal_is_inverse(f in unit_germ(9)) {
        let prod = f.mul(&f.reciprocal().unwrap());
        prop_assert_eq!(&prod.coeffs()[0], &q(1, 1));
        prop_assert!(prod.coeffs()[1..].iter().all(Zero::is_zero));
    }
}
