use num_traits::One;
use proptest::prelude::*;
use qlie_core::{rat, QScalar, Rational};

fn laurent() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-6i64..=6, -3i64..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(QScalar::zero(), |acc, (c, e)| {
            acc + QScalar::from_int(c) * QScalar::q_pow(e)
        })
    })
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
}

fn point() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5)
        .prop_filter_map("q0 must be nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, QScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.checked_inv().unwrap(), QScalar::one());
        }
    }

    #[test]
    fn render_then_parse_is_identity(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<QScalar>().unwrap(), a.clone(), "{}", text);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QScalar>(&json).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), q0 in point()) {
        if let (Ok(x), Ok(y)) = (a.eval_at(&q0), b.eval_at(&q0)) {
            prop_assert_eq!((&a + &b).eval_at(&q0).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval_at(&q0).unwrap(), &x * &y);
        }
    }

    #[test]
    fn canonical_form_is_unique(a in scalar(), b in laurent()) {
        // a·b / b has the same representation as a
        if !b.is_zero() {
            prop_assert_eq!((&a * &b) / &b, a);
        }
    }
}

#[test]
fn quantum_integers() {
    for m in 1..8 {
        let qm: QScalar = (0..m)
            .map(|i| QScalar::q_pow(m - 1 - 2 * i))
            .fold(QScalar::zero(), |acc, t| acc + t);
        assert_eq!(qlie_core::qint(m), qm);
        assert_eq!(qm.eval_at(&Rational::one()).unwrap(), rat(m, 1));
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(QScalar::one().checked_div(&QScalar::zero()).is_err());
    let s: QScalar = "1/(q - 1)".parse().unwrap();
    assert!(s.eval_at(&Rational::one()).is_err());
    assert!("q^".parse::<QScalar>().is_err());
    assert!("1/0".parse::<QScalar>().is_err());
}
