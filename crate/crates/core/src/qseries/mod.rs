//! Exact `q`-series arithmetic: univariate [`QSeries`] and the trivariate
//! [`StatSeries`] used for the `(a, b, q)` length statistics.

mod series;
mod stat;

pub use series::{divide_by_unit, mul, product, QSeries};
pub use stat::{substitute, Monomial, StatSeries};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

fn check_base(base: Monomial) -> Result<(i64, usize)> {
    if !base.is_pure_q() || base.q_exp < 1 || !(base.sign == 1 || base.sign == -1) {
        return Err(Error::InvalidBase(base.to_string()));
    }
    Ok((base.sign as i64, base.q_exp as usize))
}

/// `[k]_x = 1 + x + … + x^(k-1)` for `x = ±q^j`, `j ≥ 1`.
pub fn q_integer(k: usize, base: Monomial) -> Result<QSeries> {
    let (sign, step) = check_base(base)?;
    if k == 0 {
        return Err(Error::InvalidParameters("q-integer index must be positive".into()));
    }
    let mut c = vec![BigInt::zero(); (k - 1) * step + 1];
    for i in 0..k {
        c[i * step] = BigInt::from(if sign < 0 && i % 2 == 1 { -1 } else { 1 });
    }
    Ok(QSeries::exact(c))
}

/// `[k]_q`, the common case.
pub fn qint(k: usize) -> QSeries {
    q_integer(k, Monomial::q(1, 1)).expect("valid base")
}

/// `[k]_{-q}`.
pub fn qint_neg(k: usize) -> QSeries {
    q_integer(k, Monomial::q(-1, 1)).expect("valid base")
}

/// `[1]_x [2]_x ⋯ [n]_x`, truncated at `order` when given.
pub fn q_factorial(n: usize, base: Monomial, order: Option<usize>) -> Result<QSeries> {
    let mut acc = QSeries::one();
    for k in 1..=n {
        acc = acc.mul(&q_integer(k, base)?);
        if let Some(l) = order {
            acc = acc.truncate(l);
        }
    }
    if let Some(l) = order {
        acc = acc.truncate(l);
    }
    Ok(acc)
}

/// `(x; y)_n = ∏_{k=0}^{n-1} (1 - y^k x)` for monomials in `q` alone.
pub fn q_pochhammer(x: Monomial, step: Monomial, n: usize, order: Option<usize>) -> Result<QSeries> {
    if !x.is_pure_q() || !step.is_pure_q() || x.q_exp < 0 || step.q_exp < 0 {
        return Err(Error::InvalidParameters(format!(
            "Pochhammer arguments {x}, {step} must be non-negative powers of q"
        )));
    }
    let mut acc = QSeries::one();
    for k in 0..n {
        let m = step.pow(k as u32).times(x);
        let factor = QSeries::one().sub(&QSeries::monomial(m.sign as i64, m.q_exp as usize));
        acc = acc.mul(&factor);
        if let Some(l) = order {
            acc = acc.truncate(l);
        }
    }
    if let Some(l) = order {
        acc = acc.truncate(l);
    }
    Ok(acc)
}

/// Trivariate `(x; y)_n` truncated at `q`-degree `q_order`.
pub fn stat_pochhammer(x: Monomial, step: Monomial, n: usize, q_order: usize) -> Result<StatSeries> {
    let mut acc = StatSeries::one(q_order);
    for k in 0..n {
        let m = step.pow(k as u32).times(x);
        let neg = Monomial { sign: -m.sign, ..m };
        let factor = StatSeries::one(q_order).add(&StatSeries::from_monomial(neg, q_order)?);
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// A univariate series viewed as a trivariate one with `a = b = 0` exponents.
pub fn lift(s: &QSeries, q_order: usize) -> StatSeries {
    let mut out = StatSeries::zero(q_order);
    for (k, c) in s.coeffs().iter().enumerate() {
        out.add_term((0, 0, k as u32), c.clone());
    }
    out
}
