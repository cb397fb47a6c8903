mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;
use seifert::seifert::{col_enlarge, row_enlarge};
use seifert::{
    alexander_determinant, alexander_polynomial, blanchfield_matrix, default_points, distinguish, elementary_ideal,
    evaluate_ideal, int, module_decomposition, rat, scalar_form, t_action, z_action, Laurent, MatrixQ, SeifertMatrix,
};

fn points() -> Vec<seifert::Rational> {
    vec![int(-1), int(2), int(3), rat(1, 2), rat(-2, 3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn alexander_normalization(seed in any::<u64>(), genus in 1usize..=3, integral in any::<bool>()) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 3, integral);
        let d = alexander_polynomial(&v);
        prop_assert_eq!(d.eval(&int(1)).unwrap(), int(1));
        prop_assert_eq!(d.low_degree().finite(), Some(0));
        prop_assert_eq!(d.unit_normalized().unit_normalized(), d.unit_normalized());
        prop_assert_eq!(d.associate_normalized().associate_normalized(), d.associate_normalized());
        prop_assert_eq!(d.invert_variable().unit_normalized(), d.unit_normalized());
        let raw = alexander_determinant(&v);
        prop_assert_eq!(raw.invert_variable().shift(2 * genus as i64), raw.clone());
        prop_assert_eq!(raw.shift(-raw.low_degree().finite().unwrap()), d);
    }

    #[test]
    fn invariant_factors_multiply_to_alexander(seed in any::<u64>(), genus in 1usize..=3) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 2, true);
        let m = module_decomposition(&v);
        let product = m.invariant_factors.iter().fold(Laurent::one(), |a, f| &a * f);
        prop_assert_eq!(product.associate_normalized(), alexander_polynomial(&v).associate_normalized());
        for pair in m.invariant_factors.windows(2) {
            prop_assert!(pair[1].divisible_by(&pair[0]));
        }
        prop_assert!(m.invariant_factors.iter().all(|f| !f.is_unit() && f.associate_normalized() == *f));
    }

    #[test]
    fn z_action_is_integral_and_inverts(seed in any::<u64>(), genus in 1usize..=3) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 3, true);
        prop_assume!(v.is_invertible());
        let z = z_action(&v).unwrap();
        prop_assert!(z.is_integral());
        let n = v.size();
        let j = seifert::seifert::j_matrix(n);
        prop_assert_eq!(&z, &v.matrix().mul(&j).neg());
        let t = t_action(&v).unwrap();
        prop_assert!(z.mul(&MatrixQ::identity(n).sub(&t)).is_identity());
        prop_assert_eq!(t, v.matrix().transpose().mul(&v.matrix().inverse().unwrap()));
    }

    #[test]
    fn blanchfield_reduction_and_symmetry(seed in any::<u64>(), genus in 1usize..=2) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 2, true);
        let b = blanchfield_matrix(&v);
        let n = v.size();
        for i in 0..n {
            for k in 0..n {
                let full = b.pairing(i, k);
                let reduced = b.reduced_pairing(i, k);
                prop_assert!((full - reduced).is_laurent());
                prop_assert_eq!(&reduced.fractional_part(), reduced);
                prop_assert_eq!(&full.invert_variable(), b.pairing(k, i));
            }
        }
    }

    #[test]
    fn elementary_ideal_chain(seed in any::<u64>(), genus in 1usize..=2) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 2, true);
        let n = v.size();
        let ideals: Vec<_> = (0..=n + 1).map(|k| elementary_ideal(&v, k).unwrap()).collect();
        prop_assert!(ideals[0].is_zero());
        prop_assert!(ideals[n + 1].contains_unit());
        prop_assert_eq!(ideals[1].generators.len(), 1);
        prop_assert_eq!(ideals[1].generators[0].unit_normalized(), alexander_polynomial(&v).unit_normalized());
        for p in points() {
            let g: Vec<BigInt> = ideals.iter().map(|e| evaluate_ideal(e, &p).unwrap().generator).collect();
            for k in 0..=n {
                // E_k ⊆ E_{k+1}, so the generator of the larger ideal divides the smaller one's
                let divides = if g[k + 1].is_zero() { g[k].is_zero() } else { g[k].is_multiple_of(&g[k + 1]) };
                prop_assert!(divides, "E{} -> {} and E{} -> {} at {}", k, g[k], k + 1, g[k + 1], p);
            }
        }
    }

    #[test]
    fn integral_enlargement_has_no_obstruction(seed in any::<u64>(), genus in 1usize..=2, row in any::<bool>()) {
        let mut r = rng(seed);
        let v = random_seifert(&mut r, genus, 2, true);
        let x = small_int(&mut r, 3);
        let rho: Vec<_> = (0..v.size()).map(|_| small_int(&mut r, 3)).collect();
        let w = if row { row_enlarge(&v, &x, &rho) } else { col_enlarge(&v, &x, &rho) }.unwrap();
        let report = distinguish(&v, &w, &points()).unwrap();
        prop_assert!(!report.has_obstruction(), "{}", report.summary());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn scalar_form_is_j(seed in any::<u64>(), genus in 1usize..=3) {
        let mut r = rng(seed);
        let v = random_invertible_integral(&mut r, genus);
        let s = scalar_form(&v).unwrap();
        prop_assert!(s.equals_j);
        prop_assert_eq!(s.matrix, seifert::seifert::j_matrix(v.size()));
    }
}

#[test]
fn witness_values_follow_argument_order() {
    let v = SeifertMatrix::from_i64(&[&[-1, 0], &[1, 2]]).unwrap();
    let w = SeifertMatrix::from_i64(&[&[3, 1], &[2, 0]]).unwrap();
    let report = distinguish(&w, &v, &default_points()).unwrap();
    assert!(!report.rational_obstruction());
    assert_eq!(report.integral_witness.as_ref().expect("integral witness").to_string(), "E2@t=-1: 3 vs 1");
    assert_eq!(report.summary(), "E2@t=-1: 3 vs 1");
    assert!(!distinguish(&v, &v, &points()).unwrap().has_obstruction());
}

#[test]
fn invariants_of_the_trivial_and_singular_cases() {
    let empty = SeifertMatrix::empty();
    assert!(alexander_polynomial(&empty).is_one());
    assert!(module_decomposition(&empty).invariant_factors.is_empty());
    let trivial = SeifertMatrix::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
    assert!(alexander_polynomial(&trivial).is_one());
    assert_eq!(z_action(&trivial), Err(seifert::Error::RequiresInvertible));
    assert!(scalar_form(&trivial).is_err());
    assert!(elementary_ideal(&SeifertMatrix::from_i64(&[&[0, 0], &[1, 0]]).unwrap(), 1).unwrap().contains_unit());
    let half = SeifertMatrix::validate(MatrixQ::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(1), int(0)]]).unwrap()).unwrap();
    assert_eq!(elementary_ideal(&half, 1), Err(seifert::Error::IntegralityRequired));
    assert!(evaluate_ideal(&elementary_ideal(&trivial, 1).unwrap(), &int(0)).is_err());
}
