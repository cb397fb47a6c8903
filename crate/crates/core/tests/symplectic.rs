mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use common::*;
use seifert::seifert::{congruence, is_symplectic};
use seifert::{
    alexander_polynomial, apply_certificate, delta, factor_symplectic, int, rat, realize_delta, Error, Factor, MatrixQ,
};

fn prime_divisors(mut n: BigInt, into: &mut BTreeSet<BigInt>) {
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while n.is_multiple_of(&p) {
            into.insert(p.clone());
            n /= &p;
        }
        p += 1;
    }
    if n > BigInt::one() {
        into.insert(n);
    }
}

fn denominator_primes(m: &MatrixQ) -> usize {
    let mut primes = BTreeSet::new();
    for x in m.entries() {
        prime_divisors(x.denom().clone(), &mut primes);
    }
    primes.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn factorization_reconstructs(seed in any::<u64>(), genus in 1usize..=3, len in 0usize..8) {
        let mut r = rng(seed);
        let p = random_rational_symplectic(&mut r, 2 * genus, len);
        let f = factor_symplectic(&p).unwrap();
        prop_assert_eq!(f.product(), p.clone());
        prop_assert!(f.is_well_formed());
        for factor in &f.factors {
            match factor {
                Factor::Integral(m) => prop_assert!(m.is_integral() && is_symplectic(m)),
                Factor::Delta(d) => prop_assert!(d.n().is_integer() || d.n().numer().is_one()),
            }
        }
        let cap = 12 * genus * (denominator_primes(&p) + 1) + 8;
        prop_assert!(f.factors.len() <= cap, "{} factors, cap {}", f.factors.len(), cap);
    }

    #[test]
    fn integral_input_is_a_single_factor(seed in any::<u64>(), genus in 1usize..=3) {
        let mut r = rng(seed);
        let p = random_integral_symplectic(&mut r, 2 * genus, 5);
        let f = factor_symplectic(&p).unwrap();
        if p.is_identity() {
            prop_assert!(f.factors.is_empty());
        } else {
            prop_assert_eq!(f.factors.len(), 1);
            prop_assert_eq!(&f.factors[0], &Factor::Integral(p));
        }
    }

    #[test]
    fn delta_realization(seed in any::<u64>(), genus in 1usize..=3, k in 1i64..=20, invert in any::<bool>()) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 3, false);
        let n = if invert { rat(1, k) } else { int(k) };
        let d = delta(&n, v.size()).unwrap().matrix();
        let real = realize_delta(&v, &n, false).unwrap();
        prop_assert_eq!(real.certificate.moves.len(), 3);
        prop_assert!(real.p.is_integral() && is_symplectic(&real.p));
        prop_assert_eq!(&congruence(&real.tilde_v, &real.p).unwrap(), &real.tilde_w);
        let out = apply_certificate(&v, &real.certificate).unwrap();
        prop_assert_eq!(out.result.matrix(), &d.mul(v.matrix()).mul(&d));
        prop_assert_eq!(alexander_polynomial(&out.result), alexander_polynomial(&v));
    }
}

#[test]
fn delta_matrices() {
    let d = delta(&int(3), 4).unwrap();
    assert_eq!(d.matrix(), MatrixQ::diagonal(&[int(3), rat(1, 3), int(1), int(1)]));
    assert!(is_symplectic(&d.matrix()));
    assert_eq!(d.inverse().matrix(), d.matrix().inverse().unwrap());
    assert!(delta(&int(1), 2).unwrap().is_identity());
    for bad in [int(0), int(-2), rat(2, 3), rat(-1, 2)] {
        assert!(matches!(delta(&bad, 2), Err(Error::InvalidInput(_))), "{bad}");
    }
    assert!(delta(&int(2), 3).is_err());
    assert!(delta(&int(2), 0).is_err());
}

#[test]
fn factorization_rejects_non_symplectic_input() {
    let m = MatrixQ::diagonal(&[int(2), int(1)]);
    assert!(factor_symplectic(&m).is_err());
    assert!(factor_symplectic(&MatrixQ::identity(3)).is_err());
}

#[test]
fn worked_factorization() {
    let p = MatrixQ::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(1)]]).unwrap();
    let f = factor_symplectic(&p).unwrap();
    assert_eq!(f.product(), p);
    let expected = vec![
        Factor::Delta(delta(&rat(1, 2), 2).unwrap()),
        Factor::Integral(MatrixQ::from_i64(&[&[1, 2], &[0, 1]])),
        Factor::Delta(delta(&int(2), 2).unwrap()),
    ];
    assert_eq!(f.factors, expected);
}

#[test]
fn integral_realization_needs_divisibility() {
    let v = seifert::SeifertMatrix::from_i64(&[&[1, 0], &[1, 1]]).unwrap();
    assert!(matches!(realize_delta(&v, &int(2), true), Err(Error::Divisibility(_))));
    assert!(realize_delta(&v, &int(2), false).is_ok());
    let ok = seifert::SeifertMatrix::from_i64(&[&[1, 1], &[2, 4]]).unwrap();
    let real = realize_delta(&ok, &int(2), true).unwrap();
    assert_eq!(real.certificate.flavor, seifert::Flavor::Integral);
    let half = seifert::SeifertMatrix::validate(MatrixQ::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(1), int(0)]]).unwrap()).unwrap();
    assert_eq!(realize_delta(&half, &int(2), true), Err(Error::IntegralityRequired));
}
