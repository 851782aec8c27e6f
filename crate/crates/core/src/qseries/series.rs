use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer power series in `q`. `order = Some(L)` means the coefficients of
/// degrees `0..=L` are known and everything above is unknown; `None` marks
/// an exact polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "SeriesRepr", try_from = "SeriesRepr")]
pub struct QSeries {
    coeffs: Vec<BigInt>,
    order: Option<usize>,
}

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QSeries {
    fn normalized(mut coeffs: Vec<BigInt>, order: Option<usize>) -> Self {
        match order {
            Some(l) => coeffs.resize(l + 1, BigInt::zero()),
            None => {
                while coeffs.last().is_some_and(Zero::is_zero) {
                    coeffs.pop();
                }
            }
        }
        QSeries { coeffs, order }
    }

    pub fn exact(coeffs: Vec<BigInt>) -> Self {
        Self::normalized(coeffs, None)
    }

    pub fn truncated(coeffs: Vec<BigInt>, order: usize) -> Self {
        Self::normalized(coeffs, Some(order))
    }

    pub fn from_i64s(coeffs: &[i64], order: Option<usize>) -> Self {
        Self::normalized(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn from_counts(counts: &[u64], order: Option<usize>) -> Self {
        Self::normalized(counts.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn zero() -> Self {
        Self::exact(Vec::new())
    }

    pub fn one() -> Self {
        Self::exact(vec![BigInt::one()])
    }

    /// `sign · q^k`.
    pub fn monomial(sign: i64, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::from(sign);
        Self::exact(c)
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Stored coefficients. For truncated series this has `order + 1` entries.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Highest degree with a nonzero coefficient among the stored ones.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Same series with at most `order` known degrees.
    pub fn truncate(&self, order: usize) -> Self {
        let l = min_order(self.order, Some(order)).unwrap();
        let mut c = self.coeffs.clone();
        c.truncate(l + 1);
        Self::normalized(c, Some(l))
    }

    /// Forgets the truncation. Only meaningful when the caller knows the
    /// stored coefficients are the whole series.
    pub fn into_exact(self) -> Self {
        Self::normalized(self.coeffs, None)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = min_order(self.order, other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::normalized(truncate_vec(c, order), order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), order: self.order }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::normalized(self.coeffs.iter().map(|c| c * k).collect(), self.order)
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = min_order(self.order, other.order);
        let cap = order.map_or(usize::MAX, |l| l + 1);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::normalized(Vec::new(), order);
        }
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(cap);
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Self::normalized(c, order)
    }

    /// `self / d` where `d` has constant term `±1`. An exact result is only
    /// possible when `d = ±1`; otherwise at least one operand must be
    /// truncated, or use [`QSeries::div_unit_to`].
    pub fn divide_by_unit(&self, d: &Self) -> Result<Self> {
        let order = min_order(self.order, d.order);
        match order {
            Some(l) => self.div_unit_to(d, l),
            None => {
                let c0 = unit_constant(d)?;
                if d.degree() == Some(0) {
                    Ok(self.scale(&BigInt::from(c0)))
                } else {
                    Err(Error::MissingTruncation)
                }
            }
        }
    }

    /// `self / d` truncated at `min(order, self.order, d.order)`.
    pub fn div_unit_to(&self, d: &Self, order: usize) -> Result<Self> {
        let c0 = unit_constant(d)?;
        let l = min_order(min_order(self.order, d.order), Some(order)).unwrap();
        let mut out = vec![BigInt::zero(); l + 1];
        for k in 0..=l {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(d.coeffs.len().saturating_sub(1)) {
                let dj = &d.coeffs[j];
                if !dj.is_zero() {
                    acc -= dj * &out[k - j];
                }
            }
            out[k] = if c0 == 1 { acc } else { -acc };
        }
        Ok(Self::normalized(out, Some(l)))
    }

    /// Value at `q = 1` (sum of the stored coefficients).
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `q ↦ sign · q^step`.
    pub fn substitute_power(&self, sign: i64, step: usize) -> Self {
        assert!(step >= 1);
        let mut c = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[k * step] = if sign < 0 && k % 2 == 1 { -x } else { x.clone() };
        }
        let order = self.order.map(|l| (l + 1) * step - 1);
        Self::normalized(c, order)
    }

    /// First degree `k ≤` the common order where the coefficients differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let upto = match min_order(self.order, other.order) {
            Some(l) => l + 1,
            None => self.coeffs.len().max(other.coeffs.len()),
        };
        (0..upto).find(|&k| self.coeff(k) != other.coeff(k))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

fn truncate_vec(mut c: Vec<BigInt>, order: Option<usize>) -> Vec<BigInt> {
    if let Some(l) = order {
        c.truncate(l + 1);
    }
    c
}

fn unit_constant(d: &QSeries) -> Result<i64> {
    let c0 = d.coeff(0);
    if c0.is_one() {
        Ok(1)
    } else if (-&c0).is_one() {
        Ok(-1)
    } else {
        Err(Error::NonUnitDivisor(c0.to_string()))
    }
}

impl PartialEq for QSeries {
    /// Equal up to the smaller truncation order; exact series compare exactly.
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

pub fn mul(a: &QSeries, b: &QSeries) -> QSeries {
    a.mul(b)
}

pub fn divide_by_unit(a: &QSeries, d: &QSeries) -> Result<QSeries> {
    a.divide_by_unit(d)
}

/// Product of a list of series; the empty product is 1.
pub fn product<'a, I: IntoIterator<Item = &'a QSeries>>(items: I) -> QSeries {
    items.into_iter().fold(QSeries::one(), |acc, x| acc.mul(x))
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(l) = self.order {
            write!(f, " + O(q^{})", l + 1)?;
        }
        Ok(())
    }
}

/// A coefficient in JSON: a plain number when it fits in `i64`, otherwise a
/// decimal string.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub(crate) enum JsonCoeff {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonCoeff {
    fn from(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(x) => JsonCoeff::Small(x),
            None => JsonCoeff::Big(c.to_string()),
        }
    }
}

impl TryFrom<JsonCoeff> for BigInt {
    type Error = String;
    fn try_from(c: JsonCoeff) -> std::result::Result<Self, String> {
        match c {
            JsonCoeff::Small(x) => Ok(BigInt::from(x)),
            JsonCoeff::Big(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: Option<usize>,
    coeffs: Vec<JsonCoeff>,
}

impl From<QSeries> for SeriesRepr {
    fn from(s: QSeries) -> Self {
        SeriesRepr { order: s.order, coeffs: s.coeffs.iter().map(JsonCoeff::from).collect() }
    }
}

impl TryFrom<SeriesRepr> for QSeries {
    type Error = String;
    fn try_from(r: SeriesRepr) -> std::result::Result<Self, String> {
        let coeffs = r.coeffs.into_iter().map(BigInt::try_from).collect::<std::result::Result<Vec<_>, _>>()?;
        if let Some(l) = r.order {
            if coeffs.len() > l + 1 {
                return Err(format!("{} coefficients for order {l}", coeffs.len()));
            }
        }
        Ok(QSeries::normalized(coeffs, r.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> QSeries {
        QSeries::from_i64s(c, None)
    }

    #[test]
    fn geometric_series() {
        let d = s(&[1, -1]);
        let g = QSeries::one().div_unit_to(&d, 4).unwrap();
        assert_eq!(g.coeffs(), s(&[1, 1, 1, 1, 1]).coeffs());
        assert_eq!(g.order(), Some(4));
    }

    #[test]
    fn exact_division_needs_truncation() {
        assert!(matches!(s(&[1]).divide_by_unit(&s(&[1, -1])), Err(Error::MissingTruncation)));
        assert_eq!(s(&[2, 4]).divide_by_unit(&s(&[-1])).unwrap(), s(&[-2, -4]));
        assert!(matches!(s(&[1]).div_unit_to(&s(&[0, 1]), 3), Err(Error::NonUnitDivisor(_))));
    }

    #[test]
    fn truncated_equality() {
        let a = QSeries::from_i64s(&[1, 2, 3], Some(2));
        let b = QSeries::from_i64s(&[1, 2, 3, 9], Some(5));
        assert_eq!(a, b);
        assert_ne!(s(&[1, 2, 3]), s(&[1, 2, 3, 9]));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -1, 0, 2]).to_string(), "1 - q + 2q^3");
        assert_eq!(QSeries::from_i64s(&[1, 1], Some(2)).to_string(), "1 + q + O(q^3)");
        assert_eq!(QSeries::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let a = QSeries::truncated(vec![BigInt::from(1), big, BigInt::from(-3)], 4);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"order":4,"coeffs":[1,"123456789012345678901234567890",-3,0,0]}"#);
        let back: QSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back.coeffs(), a.coeffs());
        assert_eq!(back.order(), a.order());
    }

    #[test]
    fn substitute_power() {
        assert_eq!(s(&[1, 1, 1]).substitute_power(-1, 1), s(&[1, -1, 1]));
        assert_eq!(s(&[1, 1]).substitute_power(1, 3), s(&[1, 0, 0, 1]));
    }
}
