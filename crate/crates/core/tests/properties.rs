use num_bigint::BigInt;
use proptest::prelude::*;

use coxfold::coxeter::{bruhat_leq, build_system, Word};
use coxfold::folding::{standard_folding, FamilyId};
use coxfold::qseries::{q_factorial, q_integer, q_pochhammer, Monomial, QSeries};

fn poly() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-5i64..=5, 0..8).prop_map(|c| QSeries::from_i64s(&c, None))
}

/// A polynomial with constant term ±1.
fn unit() -> impl Strategy<Value = QSeries> {
    (prop::bool::ANY, prop::collection::vec(-3i64..=3, 0..6)).prop_map(|(neg, rest)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(rest);
        QSeries::from_i64s(&c, None)
    })
}

fn base() -> impl Strategy<Value = Monomial> {
    (prop::bool::ANY, 1i32..=3).prop_map(|(neg, k)| Monomial::q(if neg { -1 } else { 1 }, k))
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), QSeries::zero());
        prop_assert_eq!(a.mul(&QSeries::one()), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in poly(), d in unit(), l in 0usize..20) {
        let q = a.mul(&d).div_unit_to(&d, l).unwrap();
        prop_assert_eq!(q, a.truncate(l));
        // d · (1/d) = 1 up to q^l.
        let inv = QSeries::one().div_unit_to(&d, l).unwrap();
        prop_assert_eq!(inv.mul(&d).truncate(l), QSeries::one().truncate(l));
    }

    #[test]
    fn pochhammer_splits(k in 0i32..=3, m in 0usize..5, n in 0usize..5) {
        let x = Monomial::q(1, k);
        let q = Monomial::q(1, 1);
        let whole = q_pochhammer(x, q, m + n, None).unwrap();
        let head = q_pochhammer(x, q, m, None).unwrap();
        let tail = q_pochhammer(x.times(Monomial::q(1, m as i32)), q, n, None).unwrap();
        prop_assert_eq!(whole, head.mul(&tail));
    }

    #[test]
    fn values_at_one(k in 1usize..12, n in 0usize..8, b in base()) {
        let qk = q_integer(k, Monomial::q(1, b.q_exp)).unwrap();
        prop_assert_eq!(qk.coefficient_sum(), BigInt::from(k));
        let f = q_factorial(n, Monomial::q(1, b.q_exp), None).unwrap();
        let fact: u64 = (1..=n as u64).product();
        prop_assert_eq!(f.coefficient_sum(), BigInt::from(fact));
        // [k]_{-q} at q = 1 is 1 for odd k and 0 for even k.
        let alt = q_integer(k, Monomial::q(-1, b.q_exp)).unwrap();
        prop_assert_eq!(alt.coefficient_sum(), BigInt::from(k % 2));
    }

    #[test]
    fn substitute_power_composes(a in poly(), s in 1usize..4, t in 1usize..4) {
        prop_assert_eq!(a.substitute_power(1, s).substitute_power(1, t), a.substitute_power(1, s * t));
        prop_assert_eq!(a.substitute_power(-1, 1).substitute_power(-1, 1), a.clone());
    }

    #[test]
    fn group_axioms(label in prop::sample::select(vec!["A4", "B3", "D4", "I2(7)", "affine-C2", "affine-A2"]),
                    raw_u in prop::collection::vec(0usize..8, 0..12),
                    raw_v in prop::collection::vec(0usize..8, 0..12)) {
        let sys = build_system(label).unwrap();
        let r = sys.rank();
        let u = sys.element_from_word(&Word(raw_u.iter().map(|x| x % r).collect())).unwrap();
        let v = sys.element_from_word(&Word(raw_v.iter().map(|x| x % r).collect())).unwrap();
        prop_assert!(u.length() <= raw_u.len());
        prop_assert_eq!(u.length() % 2, raw_u.len() % 2);
        prop_assert_eq!(sys.recompute_length(&u), u.length());
        prop_assert!(sys.multiply(&u, &sys.inverse(&u)).is_identity());
        prop_assert_eq!(sys.inverse(&u).length(), u.length());
        let nf = sys.shortlex_normal_form(&u);
        prop_assert_eq!(nf.len(), u.length());
        prop_assert_eq!(sys.element_from_word(&nf).unwrap(), u.clone());
        let uv = sys.multiply(&u, &v);
        prop_assert!(uv.length() <= u.length() + v.length());
        prop_assert!(bruhat_leq(&sys, &sys.identity(), &u));
        prop_assert!(bruhat_leq(&sys, &u, &u));
        // Any prefix of a reduced word lies below the element.
        let w = nf.letters();
        let prefix = sys.element_from_word(&Word(w[..w.len() / 2].to_vec())).unwrap();
        prop_assert!(bruhat_leq(&sys, &prefix, &u));
        let descents = sys.right_descents(&u);
        for s in 0..r {
            let us = sys.apply_generator(&u, s, coxfold::coxeter::Side::Right).unwrap();
            prop_assert_eq!(descents.contains(&s), us.length() < u.length());
        }
    }

    #[test]
    fn unfolded_length_is_additive(
        family in prop::sample::select(vec!["Bn-A2n", "Bn-Dn+1", "affC-affA2n-1", "affC-affDn+2", "affB-affD2n+1", "affA-affA"]),
        raw in prop::collection::vec(0usize..8, 0..10),
    ) {
        let n = if family.starts_with("affB") { 3 } else { 2 };
        let m = (family == "affA-affA").then_some(3);
        let f = standard_folding(FamilyId::parse(family, n, m).unwrap()).unwrap();
        let src = f.source();
        let w = src.element_from_word(&Word(raw.iter().map(|x| x % src.rank()).collect())).unwrap();
        let word = src.reduced_word(&w);
        let unfolded = f.unfold_word(&word).unwrap();
        let x = f.phi(&w);
        prop_assert_eq!(f.target().element_from_word(&unfolded).unwrap(), x.clone());
        let expected: usize = word.letters().iter().map(|&r| f.unfold_letters()[r].len()).sum();
        prop_assert_eq!(x.length(), expected);
    }
}
