use num_traits::One;
use proptest::prelude::*;
use qlie_core::{brmod, rat, realg, uqmod, Limits, Matrix, QScalar, Rational};

/// Irreducible dimensions read off a weight multiset.
fn character_dims(mut weights: Vec<i64>) -> Vec<usize> {
    let mut dims = Vec::new();
    while let Some(&top) = weights.iter().max() {
        for w in (-top..=top).step_by(2) {
            let pos = weights
                .iter()
                .position(|&x| x == w)
                .expect("unbroken string");
            weights.swap_remove(pos);
        }
        dims.push(top as usize + 1);
    }
    dims.sort_unstable();
    dims
}

fn nonzero_point() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=7, any::<bool>()).prop_filter_map("q0 must not be ±1", |(n, d, neg)| {
        let r = rat(if neg { -n } else { n }, d);
        (r != Rational::one() && r != -Rational::one()).then_some(r)
    })
}

#[test]
fn clebsch_gordan_against_characters() {
    for m in 0..=4u32 {
        for n in 0..=4u32 {
            let t = uqmod::tensor(&uqmod::irreducible(m), &uqmod::irreducible(n)).unwrap();
            assert!(t.verify().is_empty());
            let mut dims = uqmod::decompose(&t).unwrap().dims();
            dims.sort_unstable();
            assert_eq!(dims, character_dims(t.weights().to_vec()), "{m} ⊗ {n}");
        }
    }
}

#[test]
fn decomposition_projectors_are_complete() {
    let t = uqmod::tensor(&uqmod::irreducible(2), &uqmod::irreducible(1)).unwrap();
    let d = uqmod::decompose(&t).unwrap();
    let sum = d
        .components
        .iter()
        .fold(Matrix::zeros(6, 6), |acc, c| acc.add(&c.idempotent()));
    assert_eq!(sum, Matrix::identity(6));
    for c in &d.components {
        assert!(c.embedding.is_intertwiner());
        assert!(c.projector.is_intertwiner());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn braiding_is_hecke_at_rational_points(n in 2usize..=3, q0 in nonzero_point()) {
        let s = realg::standard_braiding(n).unwrap().s.eval_at(&q0).unwrap();
        let id = Matrix::<Rational>::identity(n * n);
        let left = s.sub(&id.scale(&q0));
        let right = s.add(&id.scale(&q0.recip()));
        prop_assert!(left.mul(&right).is_zero());
        let idn = Matrix::<Rational>::identity(n);
        let (s12, s23) = (s.kron(&idn), idn.kron(&s));
        prop_assert_eq!(s12.mul(&s23).mul(&s12), s23.mul(&s12).mul(&s23));
    }

    #[test]
    fn h_chain_closed_form_at_points(k in 1u32..=6, q0 in nonzero_point()) {
        let h = brmod::h_k_closed_form(k).unwrap().eval_at(&q0).unwrap();
        let geometric: Rational = (0..k as i32).map(|i| q0.pow(2 * i)).sum();
        prop_assert_eq!(h * geometric, q0.recip() + q0.pow(2 * k as i32 + 1));
        let f = brmod::rescaling_factor(k).unwrap().eval_at(&q0).unwrap();
        let h1 = brmod::h_k_closed_form(1).unwrap().eval_at(&q0).unwrap();
        prop_assert_eq!(f * brmod::h_k_closed_form(k).unwrap().eval_at(&q0).unwrap(), h1);
    }

    #[test]
    fn tensor_products_are_modules(m in 0u32..=3, n in 0u32..=3) {
        let t = uqmod::tensor(&uqmod::irreducible(m), &uqmod::irreducible(n)).unwrap();
        prop_assert!(t.verify().is_empty());
        prop_assert_eq!(uqmod::morphism_space(&t, &t).len(), (m.min(n) + 1) as usize);
    }
}

#[test]
fn small_truncated_powers_match_closed_form() {
    for k in 1..=4 {
        let t = brmod::truncated_power_with(k, &Limits::default()).unwrap();
        assert_eq!(t.rep.h_measured, brmod::h_k_closed_form(k).unwrap());
        assert!(t.projector_kills_singlets());
        let one = QScalar::one();
        assert!(!t.rep.h_measured.is_zero() && t.rep.h_measured != one);
    }
}
