use coxfold::closed_forms::{
    closed_form, coset_factor, finite_specialization, reiner_distribution, signed_permutation_distribution,
    unfolding_closed_form, unfolding_via_reiner, FormulaId, FormulaParams, Reading,
};
use coxfold::coxeter::{longest_element, minimal_coset_reps, EnumOptions};
use coxfold::folding::{
    reiner_stats_bruteforce, standard_folding, unfolding_series_bruteforce, FamilyId, FamilyKind, ReinerKind,
};
use coxfold::qseries::{q_integer, qint, qint_neg, Monomial, QSeries};

fn q_at(k: usize, step: i32) -> QSeries {
    q_integer(k, Monomial::q(1, step)).unwrap()
}

fn fam(name: &str, n: usize) -> FamilyId {
    FamilyId::parse(name, n, None).unwrap()
}

#[test]
fn dihedral_even_value() {
    let u = closed_form(FormulaId::DihedralEven, FormulaParams::n(4), None, Reading::Corrected).unwrap();
    assert_eq!(u, q_at(2, 2).mul(&q_at(5, 2)));
}

#[test]
fn bn_in_a2n_value() {
    let u = unfolding_closed_form(fam("Bn-A2n", 2), None).unwrap();
    assert_eq!(u, qint(2).mul(&qint_neg(3)).mul(&qint(4)).mul(&qint_neg(5)));
}

#[test]
fn empty_products_are_one() {
    // The ∏_{k=3}^n factor is empty at n = 2.
    let u = closed_form(FormulaId::BnInDnPlus1, FormulaParams::n(2), None, Reading::Corrected).unwrap();
    assert_eq!(u, qint(2).mul(&qint_neg(3)).mul(&qint(4)));
}

#[test]
fn coset_factor_values() {
    assert_eq!(coset_factor(1, 2).unwrap(), qint_neg(3).mul(&qint(4)));
    assert_eq!(coset_factor(3, 3).unwrap(), qint(7).sub(&QSeries::monomial(1, 3)));
    assert_eq!(coset_factor(2, 2).unwrap(), qint(4).mul(&qint_neg(5)));
}

/// `Σ q^{ℓ(φ(w))}` over minimal coset representatives `w ∈ Ŵ^Ĵ`,
/// `Ĵ = R∖{r_1}`.
fn coset_polynomial(f: &coxfold::folding::Folding) -> QSeries {
    let j: Vec<usize> = (1..f.source().rank()).collect();
    let reps = minimal_coset_reps(f.source(), &j, None, EnumOptions::default()).unwrap();
    let mut c = vec![0u64; 64];
    for w in reps.iter().flatten() {
        c[f.phi(w).length()] += 1;
    }
    QSeries::from_counts(&c, None)
}

#[test]
fn coset_factors_match_representatives() {
    for (part, kind, ns) in [(1, "Bn-A2n-1", 2..=4), (2, "Bn-A2n", 2..=4), (3, "Bn-Dn+1", 3..=4)] {
        for n in ns {
            let f = standard_folding(fam(kind, n)).unwrap();
            let reps = coset_polynomial(&f);
            assert_eq!(reps, coset_factor(part, n).unwrap(), "part {part}, n = {n}");
            assert_eq!(reps.coefficient_sum(), (2 * n).into());
        }
    }
}

#[test]
fn finite_specialization_recovers_b_families() {
    let q = |k| Monomial::q(1, k);
    for n in 2..=4 {
        // a = 0 in the affine C distribution.
        let full = reiner_distribution(ReinerKind::AffC, n, n * n).unwrap().at_zero(true, false);
        let finite = signed_permutation_distribution(n).unwrap();
        assert_eq!(full, finite, "n = {n}");
        for (kind, b, qq) in [("Bn-A2n-1", q(-1), q(2)), ("Bn-A2n", q(1), q(2)), ("Bn-Dn+1", q(1), q(1))] {
            let spec = finite_specialization(n, b, qq).unwrap();
            assert_eq!(spec, unfolding_closed_form(fam(kind, n), None).unwrap(), "{kind} n = {n}");
        }
    }
}

#[test]
fn statistics_match_enumeration_at_low_order() {
    let c2 = coxfold::coxeter::build_system("affine-C2").unwrap();
    let b = reiner_stats_bruteforce(&c2, 3, EnumOptions::default()).unwrap();
    let f = reiner_distribution(ReinerKind::AffC, 2, 3).unwrap();
    assert_eq!(b, f);
    assert_eq!(f.coeff(0, 0, 0), 1.into());
}

#[test]
fn dual_routes_agree() {
    for kind in FamilyKind::ALL.into_iter().filter(|k| k.is_affine() && !k.needs_m()) {
        let ns = if kind.name().starts_with("affB") { 3..=4 } else { 2..=3 };
        for n in ns {
            let f = FamilyId::new(kind, n, None).unwrap();
            let a = unfolding_closed_form(f, Some(14)).unwrap();
            let b = unfolding_via_reiner(f, Some(14)).unwrap();
            assert_eq!(a, b, "{f}");
            assert_eq!(a.order(), Some(14));
            assert!(a.all_nonnegative(), "{f}: {a}");
        }
    }
}

#[test]
fn affine_c_into_affine_b_by_enumeration() {
    let f = fam("affC-affBn+1", 2);
    let brute = unfolding_series_bruteforce(&standard_folding(f).unwrap(), Some(8), EnumOptions::default()).unwrap();
    assert_eq!(brute.series, unfolding_closed_form(f, Some(8)).unwrap());
}

#[test]
fn finite_degree_is_length_of_top_element() {
    for kind in [FamilyKind::BnA2nMinus1, FamilyKind::BnA2n, FamilyKind::BnDnPlus1, FamilyKind::I2An] {
        for n in 2..=4 {
            let f = standard_folding(FamilyId::new(kind, n, None).unwrap()).unwrap();
            let all: Vec<usize> = (0..f.source().rank()).collect();
            let top = longest_element(f.source(), &all, 64).unwrap();
            let u = unfolding_closed_form(FamilyId::new(kind, n, None).unwrap(), None).unwrap();
            assert_eq!(u.degree(), Some(f.phi(&top).length()), "{kind} n = {n}");
            assert!(u.all_nonnegative());
        }
    }
}

#[test]
fn bott_series_is_affine_a_poincare() {
    for n in 2..=4 {
        let a = closed_form(FormulaId::BottAffA, FormulaParams::n(n), Some(12), Reading::Corrected).unwrap();
        let b = closed_form(FormulaId::AffAInAffA, FormulaParams::nm(n, 1), Some(12), Reading::Corrected).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn tags_round_trip() {
    for id in FormulaId::ALL {
        assert_eq!(id.tag().parse::<FormulaId>().unwrap(), id);
    }
    let (id, r) = FormulaId::parse_with_reading("Thm1.7-1-literal").unwrap();
    assert_eq!((id, r), (FormulaId::AffCInAffA2nPlus1, Reading::Literal));
}
