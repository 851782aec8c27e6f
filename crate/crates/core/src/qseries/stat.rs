use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::series::{JsonCoeff, QSeries};

/// `sign · a^a_exp · b^b_exp · q^q_exp`. Negative exponents only make sense
/// as substitution values, e.g. `a ↦ q⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: i8,
    pub a_exp: i32,
    pub b_exp: i32,
    pub q_exp: i32,
}

impl Monomial {
    pub const fn new(sign: i8, a_exp: i32, b_exp: i32, q_exp: i32) -> Self {
        Monomial { sign, a_exp, b_exp, q_exp }
    }

    pub const fn one() -> Self {
        Monomial::new(1, 0, 0, 0)
    }

    /// `sign · q^k`.
    pub const fn q(sign: i8, k: i32) -> Self {
        Monomial::new(sign, 0, 0, k)
    }

    pub fn is_pure_q(self) -> bool {
        self.a_exp == 0 && self.b_exp == 0
    }

    pub fn pow(self, k: u32) -> Self {
        let k_i = k as i32;
        Monomial {
            sign: if self.sign < 0 && k % 2 == 1 { -1 } else { 1 },
            a_exp: self.a_exp * k_i,
            b_exp: self.b_exp * k_i,
            q_exp: self.q_exp * k_i,
        }
    }

    pub fn times(self, o: Self) -> Self {
        Monomial {
            sign: self.sign * o.sign,
            a_exp: self.a_exp + o.a_exp,
            b_exp: self.b_exp + o.b_exp,
            q_exp: self.q_exp + o.q_exp,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        let mut wrote = false;
        for (v, e) in [("a", self.a_exp), ("b", self.b_exp), ("q", self.q_exp)] {
            match e {
                0 => {}
                1 => {
                    f.write_str(v)?;
                    wrote = true;
                }
                _ => {
                    write!(f, "{v}^{e}")?;
                    wrote = true;
                }
            }
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

type Exps = (u32, u32, u32);

/// Integer series in `(a, b, q)` truncated in `q`: the terms with
/// `q`-degree at most `q_order` are known exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "StatRepr", try_from = "StatRepr")]
pub struct StatSeries {
    terms: BTreeMap<Exps, BigInt>,
    q_order: usize,
}

impl StatSeries {
    pub fn zero(q_order: usize) -> Self {
        StatSeries { terms: BTreeMap::new(), q_order }
    }

    pub fn one(q_order: usize) -> Self {
        Self::from_monomial(Monomial::one(), q_order).expect("constant monomial")
    }

    pub fn from_monomial(m: Monomial, q_order: usize) -> Result<Self> {
        if m.a_exp < 0 || m.b_exp < 0 || m.q_exp < 0 {
            return Err(Error::InvalidParameters(format!("negative exponent in {m}")));
        }
        let mut s = Self::zero(q_order);
        s.add_term((m.a_exp as u32, m.b_exp as u32, m.q_exp as u32), BigInt::from(m.sign));
        Ok(s)
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    /// Adds `c · a^i b^j q^k`, dropping it if `k` is past the order.
    pub fn add_term(&mut self, e: Exps, c: BigInt) {
        if e.2 as usize > self.q_order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, a: u32, b: u32, q: u32) -> BigInt {
        self.terms.get(&(a, b, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exps, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, q_order: usize) -> Self {
        let mut out = Self::zero(q_order.min(self.q_order));
        for (&e, c) in &self.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(o.q_order);
        for (&e, c) in &o.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.q_order.min(o.q_order));
        for (&(a1, b1, q1), c1) in &self.terms {
            for (&(a2, b2, q2), c2) in &o.terms {
                if (q1 + q2) as usize <= out.q_order {
                    out.add_term((a1 + a2, b1 + b2, q1 + q2), c1 * c2);
                }
            }
        }
        out
    }

    /// `self / d` where `d = ±1 + (terms of positive q-degree)`, expanded as
    /// a geometric series in the `q`-grading.
    pub fn divide_by_unit(&self, d: &Self) -> Result<Self> {
        let c0 = d.coeff(0, 0, 0);
        let sign = if c0.is_one() {
            BigInt::one()
        } else if (-&c0).is_one() {
            -BigInt::one()
        } else {
            return Err(Error::NonUnitDivisor(c0.to_string()));
        };
        if let Some((e, _)) = d.terms().find(|&(e, _)| e.2 == 0 && e != (0, 0, 0)) {
            return Err(Error::NonUnitDivisor(format!(
                "divisor has a q-degree 0 term a^{}b^{}",
                e.0, e.1
            )));
        }
        let order = self.q_order.min(d.q_order);
        // x = self/d satisfies x = sign · (self − rest · x) with rest = d − c0.
        let mut rest = d.clone();
        rest.terms.remove(&(0, 0, 0));
        let mut x = Self::zero(order);
        for (e, c) in self.truncate(order).terms() {
            x.add_term(e, c * &sign);
        }
        // Each pass fixes one more q-degree.
        for _ in 0..order {
            let mut next = Self::zero(order);
            for (e, c) in self.truncate(order).terms() {
                next.add_term(e, c.clone());
            }
            for (e, c) in rest.mul(&x).terms() {
                next.add_term(e, -c);
            }
            for c in next.terms.values_mut() {
                *c *= &sign;
            }
            if next == x {
                break;
            }
            x = next;
        }
        Ok(x)
    }

    /// Drops every term whose `a`-exponent (or `b`-exponent) is positive,
    /// i.e. evaluates at `a = 0` (or `b = 0`).
    pub fn at_zero(&self, a: bool, b: bool) -> Self {
        let mut out = Self::zero(self.q_order);
        for (&e, c) in &self.terms {
            if (a && e.0 > 0) || (b && e.1 > 0) {
                continue;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Specializes `a`, `b`, `q` to monomials in `q` and truncates at
    /// `order`. Fails with `NegativeDegree` if any term lands below `q^0`.
    /// The caller is responsible for `q_order` being large enough that the
    /// dropped terms cannot reach degree `order`.
    pub fn substitute(&self, a: Monomial, b: Monomial, q: Monomial, order: usize) -> Result<QSeries> {
        for m in [a, b, q] {
            if !m.is_pure_q() {
                return Err(Error::InvalidParameters(format!("substitution value {m} is not a power of q")));
            }
        }
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (&(i, j, k), c) in &self.terms {
            let deg = i as i64 * a.q_exp as i64 + j as i64 * b.q_exp as i64 + k as i64 * q.q_exp as i64;
            if deg < 0 {
                return Err(Error::NegativeDegree { degree: deg, term: term_string((i, j, k), c) });
            }
            if deg as usize > order {
                continue;
            }
            let negative = (a.sign < 0 && i % 2 == 1) ^ (b.sign < 0 && j % 2 == 1) ^ (q.sign < 0 && k % 2 == 1);
            if negative {
                coeffs[deg as usize] -= c;
            } else {
                coeffs[deg as usize] += c;
            }
        }
        Ok(QSeries::truncated(coeffs, order))
    }
}

fn term_string(e: Exps, c: &BigInt) -> String {
    format!("{c}·a^{}b^{}q^{}", e.0, e.1, e.2)
}

pub fn substitute(s: &StatSeries, a: Monomial, b: Monomial, q: Monomial, order: usize) -> Result<QSeries> {
    s.substitute(a, b, q, order)
}

impl fmt::Display for StatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|&(&(a, b, q), _)| (q, a, b));
        let mut first = true;
        for (&(a, b, q), c) in ordered {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let m = Monomial::new(1, a as i32, b as i32, q as i32);
            if (a, b, q) == (0, 0, 0) {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}{m}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.q_order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct StatRepr {
    order: usize,
    /// `[a, b, q, coefficient]` rows sorted by exponents.
    coeffs: Vec<(u32, u32, u32, JsonCoeff)>,
}

impl From<StatSeries> for StatRepr {
    fn from(s: StatSeries) -> Self {
        StatRepr {
            order: s.q_order,
            coeffs: s.terms.iter().map(|(&(a, b, q), c)| (a, b, q, JsonCoeff::from(c))).collect(),
        }
    }
}

impl TryFrom<StatRepr> for StatSeries {
    type Error = String;
    fn try_from(r: StatRepr) -> std::result::Result<Self, String> {
        let mut s = StatSeries::zero(r.order);
        for (a, b, q, c) in r.coeffs {
            if q as usize > r.order {
                return Err(format!("term q^{q} beyond order {}", r.order));
            }
            s.add_term((a, b, q), BigInt::try_from(c)?);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitute_simple_term() {
        let s = StatSeries::from_monomial(Monomial::new(1, 1, 0, 1), 4).unwrap();
        let r = s.substitute(Monomial::q(1, 1), Monomial::one(), Monomial::q(1, 2), 5).unwrap();
        assert_eq!(r, QSeries::from_i64s(&[0, 0, 0, 1], Some(5)));
        assert_eq!(StatSeries::one(3).substitute(Monomial::q(1, 1), Monomial::one(), Monomial::q(1, 1), 3).unwrap(),
            QSeries::from_i64s(&[1], Some(3)));
    }

    #[test]
    fn negative_degree_is_reported() {
        let s = StatSeries::from_monomial(Monomial::new(1, 3, 0, 1), 4).unwrap();
        let r = s.substitute(Monomial::q(1, -1), Monomial::one(), Monomial::q(1, 2), 5);
        assert!(matches!(r, Err(Error::NegativeDegree { degree: -1, .. })));
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = StatSeries::from_monomial(Monomial::new(-1, 1, 1, 2), 6).unwrap();
        let d = StatSeries::one(6).add(&x);
        let p = StatSeries::from_monomial(Monomial::new(1, 1, 0, 1), 6).unwrap().add(&StatSeries::one(6));
        let back = p.mul(&d).divide_by_unit(&d).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_degree_zero_tail() {
        let d = StatSeries::one(4).add(&StatSeries::from_monomial(Monomial::new(1, 1, 0, 0), 4).unwrap());
        assert!(matches!(StatSeries::one(4).divide_by_unit(&d), Err(Error::NonUnitDivisor(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = StatSeries::from_monomial(Monomial::new(-1, 2, 1, 3), 5).unwrap().add(&StatSeries::one(5));
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"order":5,"coeffs":[[0,0,0,1],[2,1,3,-1]]}"#);
        assert_eq!(serde_json::from_str::<StatSeries>(&text).unwrap(), s);
    }
}
