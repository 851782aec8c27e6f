use crate::error::{Error, Result};
use crate::folding::ReinerKind;
use crate::qseries::{lift, q_factorial, stat_pochhammer, Monomial, QSeries, StatSeries};

/// Joint distribution of length and end-generator counts:
///
/// * affine B: `(-aq;q)_n (-q;q)_{n-1} [n]_q! / (aq^n;q)_n`
/// * affine C: `(-aq;q)_n (-bq;q)_n [n]_q! / (abq^{n+1};q)_n`
///
/// expanded up to `q^L`. `b` is unused in type B.
pub fn reiner_distribution(kind: ReinerKind, n: usize, order: usize) -> Result<StatSeries> {
    let q = Monomial::q(1, 1);
    let fact = lift(&q_factorial(n, q, Some(order))?, order);
    match kind {
        ReinerKind::AffB => {
            if n < 3 {
                return Err(Error::InvalidParameters(format!("affine B needs n ≥ 3, got {n}")));
            }
            let num = stat_pochhammer(Monomial::new(-1, 1, 0, 1), q, n, order)?
                .mul(&stat_pochhammer(Monomial::q(-1, 1), q, n - 1, order)?)
                .mul(&fact);
            let den = stat_pochhammer(Monomial::new(1, 1, 0, n as i32), q, n, order)?;
            num.divide_by_unit(&den)
        }
        ReinerKind::AffC => {
            if n < 2 {
                return Err(Error::InvalidParameters(format!("affine C needs n ≥ 2, got {n}")));
            }
            let num = stat_pochhammer(Monomial::new(-1, 1, 0, 1), q, n, order)?
                .mul(&stat_pochhammer(Monomial::new(-1, 0, 1, 1), q, n, order)?)
                .mul(&fact);
            let den = stat_pochhammer(Monomial::new(1, 1, 1, n as i32 + 1), q, n, order)?;
            num.divide_by_unit(&den)
        }
    }
}

/// `(-tq;q)_n [n]_q!` in the variables `(b, q)`: the sign-and-length
/// distribution of the finite group `B_n`.
pub fn signed_permutation_distribution(n: usize) -> Result<StatSeries> {
    let order = n * n;
    let q = Monomial::q(1, 1);
    let fact = lift(&q_factorial(n, q, None)?, order);
    Ok(stat_pochhammer(Monomial::new(-1, 0, 1, 1), q, n, order)?.mul(&fact))
}

/// Specializes the finite distribution `(-bq;q)_n [n]_q!` (the affine C
/// distribution at `a = 0`) to an exact polynomial.
pub fn finite_specialization(n: usize, b: Monomial, q: Monomial) -> Result<QSeries> {
    let s = signed_permutation_distribution(n)?;
    // Degrees are bounded by (q-exponent)·n² + (b-exponent)·n.
    let bound = (q.q_exp.max(1) as usize) * n * n + (b.q_exp.max(0) as usize) * n;
    Ok(s.substitute(Monomial::one(), b, q, bound)?.into_exact())
}
