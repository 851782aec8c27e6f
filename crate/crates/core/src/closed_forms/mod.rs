//! Product formulas for unfolding series, and the second route through the
//! end-generator statistics of affine B and C.

mod catalog;
mod formulas;
mod reiner;

pub use catalog::{catalog, CatalogEntry};
pub use formulas::{closed_form, coset_factor, poincare_a, poincare_b, FormulaId, FormulaParams, Reading};
pub use reiner::{finite_specialization, reiner_distribution, signed_permutation_distribution};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::{FamilyId, FamilyKind, ReinerKind};
use crate::qseries::{Monomial, QSeries};

/// The formula that gives the unfolding series of a family.
pub fn formula_for(family: FamilyId) -> FormulaId {
    use FamilyKind::*;
    match family.kind {
        BnA2nMinus1 => FormulaId::BnInA2nMinus1,
        BnA2n => FormulaId::BnInA2n,
        BnDnPlus1 => FormulaId::BnInDnPlus1,
        I2An if family.n.is_multiple_of(2) => FormulaId::DihedralEven,
        I2An => FormulaId::DihedralOdd,
        AffAAffA => FormulaId::AffAInAffA,
        AffBAffDnPlus1 => FormulaId::AffBInAffDnPlus1,
        AffBAffD2n => FormulaId::AffBInAffD2n,
        AffBAffD2nPlus1 => FormulaId::AffBInAffD2nPlus1,
        AffCAffA2nPlus1 => FormulaId::AffCInAffA2nPlus1,
        AffCAffA2n => FormulaId::AffCInAffA2n,
        AffCAffA2nMinus1 => FormulaId::AffCInAffA2nMinus1,
        AffCAffBnPlus1 => FormulaId::AffCInAffBnPlus1,
        AffCAffDnPlus2 => FormulaId::AffCInAffDnPlus2,
        AffCAffC2nPlus1 => FormulaId::AffCInAffC2nPlus1,
        AffCAffC2n => FormulaId::AffCInAffC2n,
    }
}

/// Closed form of the unfolding series `U(q)`. Finite families are exact;
/// affine families need `order`.
pub fn unfolding_closed_form(family: FamilyId, order: Option<usize>) -> Result<QSeries> {
    let id = formula_for(family);
    closed_form(id, FormulaParams { n: family.n, m: family.m }, order, Reading::Corrected)
}

/// Substitution `(a, b, q) ↦ (A, B, Q)` into the end-generator statistics
/// that turns them into the unfolding series, when one exists.
pub fn reiner_substitution(family: FamilyId) -> Option<(ReinerKind, [Monomial; 3])> {
    use FamilyKind::*;
    let q = |k| Monomial::q(1, k);
    let one = Monomial::one();
    Some(match family.kind {
        AffBAffDnPlus1 => (ReinerKind::AffB, [q(1), one, q(1)]),
        AffBAffD2n => (ReinerKind::AffB, [q(-1), one, q(2)]),
        AffBAffD2nPlus1 => (ReinerKind::AffB, [q(1), one, q(2)]),
        AffCAffA2nPlus1 => (ReinerKind::AffC, [q(1), q(1), q(2)]),
        AffCAffA2n => (ReinerKind::AffC, [q(1), q(-1), q(2)]),
        AffCAffA2nMinus1 => (ReinerKind::AffC, [q(-1), q(-1), q(2)]),
        AffCAffBnPlus1 => (ReinerKind::AffC, [one, q(1), q(1)]),
        AffCAffDnPlus2 => (ReinerKind::AffC, [q(1), q(1), q(1)]),
        AffCAffC2nPlus1 => (ReinerKind::AffC, [one, q(1), q(2)]),
        AffCAffC2n => (ReinerKind::AffC, [one, q(-1), q(2)]),
        _ => return None,
    })
}

/// `U(q)` computed by specializing the end-generator statistics instead of
/// the product formula. For the finite `B_n` families this uses `a = 0`.
pub fn unfolding_via_reiner(family: FamilyId, order: Option<usize>) -> Result<QSeries> {
    let n = family.n;
    let q = |k| Monomial::q(1, k);
    match family.kind {
        FamilyKind::BnA2nMinus1 => return finite_specialization(n, q(-1), q(2)),
        FamilyKind::BnA2n => return finite_specialization(n, q(1), q(2)),
        FamilyKind::BnDnPlus1 => return finite_specialization(n, q(1), q(1)),
        _ => {}
    }
    let (kind, [a, b, qq]) = reiner_substitution(family)
        .ok_or_else(|| Error::InvalidParameters(format!("{family} has no statistics route")))?;
    let l = order.ok_or(Error::MissingTruncation)?;
    // Every term of length k lands in degree ≥ k, so q-order l suffices.
    reiner_distribution(kind, n, l)?.substitute(a, b, qq, l)
}

/// Both sides of `B_m(-q) U(q) = A_n(-q) B_m(q)` for `B_m → A_n`,
/// `m = ⌊(n+1)/2⌋`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignedIdentity {
    pub n: usize,
    pub m: usize,
    pub lhs: QSeries,
    pub rhs: QSeries,
}

pub fn signed_identity(n: usize) -> Result<SignedIdentity> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("the signed identity needs n ≥ 3, got {n}")));
    }
    let m = n.div_ceil(2);
    let kind = if n % 2 == 1 { FamilyKind::BnA2nMinus1 } else { FamilyKind::BnA2n };
    let u = unfolding_closed_form(FamilyId::new(kind, m, None)?, None)?;
    let lhs = poincare_b(m).substitute_power(-1, 1).mul(&u);
    let rhs = poincare_a(n, false).substitute_power(-1, 1).mul(&poincare_b(m));
    Ok(SignedIdentity { n, m, lhs, rhs })
}
