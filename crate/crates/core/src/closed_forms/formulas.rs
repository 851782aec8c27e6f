use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::ReinerKind;
use crate::qseries::{product, q_integer, qint, qint_neg, Monomial, QSeries};

use super::reiner::reiner_distribution;

/// Product formulas known to the catalog. The string tags are the stable
/// identifiers accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FormulaId {
    BnInA2nMinus1,
    BnInA2n,
    BnInDnPlus1,
    DihedralEven,
    DihedralOdd,
    SignedPairing,
    AffAInAffA,
    AffBInAffDnPlus1,
    AffBInAffD2n,
    AffBInAffD2nPlus1,
    AffCInAffA2nPlus1,
    AffCInAffA2n,
    AffCInAffA2nMinus1,
    AffCInAffBnPlus1,
    AffCInAffDnPlus2,
    AffCInAffC2nPlus1,
    AffCInAffC2n,
    BottAffA,
    ReinerAffB,
    ReinerAffC,
    PoincareA,
    PoincareB,
    CosetFactor,
}

/// Which reading of a formula to evaluate. Only a few formulas have a
/// separate `Literal` reading (the product exactly as typeset); the rest
/// reject it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    #[default]
    Corrected,
    Literal,
}

impl FormulaId {
    pub const ALL: [FormulaId; 23] = [
        FormulaId::BnInA2nMinus1,
        FormulaId::BnInA2n,
        FormulaId::BnInDnPlus1,
        FormulaId::DihedralEven,
        FormulaId::DihedralOdd,
        FormulaId::SignedPairing,
        FormulaId::AffAInAffA,
        FormulaId::AffBInAffDnPlus1,
        FormulaId::AffBInAffD2n,
        FormulaId::AffBInAffD2nPlus1,
        FormulaId::AffCInAffA2nPlus1,
        FormulaId::AffCInAffA2n,
        FormulaId::AffCInAffA2nMinus1,
        FormulaId::AffCInAffBnPlus1,
        FormulaId::AffCInAffDnPlus2,
        FormulaId::AffCInAffC2nPlus1,
        FormulaId::AffCInAffC2n,
        FormulaId::BottAffA,
        FormulaId::ReinerAffB,
        FormulaId::ReinerAffC,
        FormulaId::PoincareA,
        FormulaId::PoincareB,
        FormulaId::CosetFactor,
    ];

    pub fn tag(self) -> &'static str {
        use FormulaId::*;
        match self {
            BnInA2nMinus1 => "Thm1.3-1",
            BnInA2n => "Thm1.3-2",
            BnInDnPlus1 => "Thm1.3-3",
            DihedralEven => "Thm1.3-4",
            DihedralOdd => "Thm1.3-5",
            SignedPairing => "Cor1.4",
            AffAInAffA => "Thm1.5",
            AffBInAffDnPlus1 => "Thm1.6-1",
            AffBInAffD2n => "Thm1.6-2",
            AffBInAffD2nPlus1 => "Thm1.6-3",
            AffCInAffA2nPlus1 => "Thm1.7-1",
            AffCInAffA2n => "Thm1.7-2",
            AffCInAffA2nMinus1 => "Thm1.7-3",
            AffCInAffBnPlus1 => "Thm1.7-4",
            AffCInAffDnPlus2 => "Thm1.7-5",
            AffCInAffC2nPlus1 => "Thm1.7-6",
            AffCInAffC2n => "Thm1.7-7",
            BottAffA => "Bott-affA",
            ReinerAffB => "Reiner-affB",
            ReinerAffC => "Reiner-affC",
            PoincareA => "Poincare-An",
            PoincareB => "Poincare-Bn",
            CosetFactor => "CosetFactor-Lemma3.1",
        }
    }

    /// True for the formulas that are power series (affine groups) rather
    /// than polynomials.
    pub fn is_series(self) -> bool {
        use FormulaId::*;
        !matches!(
            self,
            BnInA2nMinus1
                | BnInA2n
                | BnInDnPlus1
                | DihedralEven
                | DihedralOdd
                | SignedPairing
                | PoincareA
                | PoincareB
                | CosetFactor
        )
    }

    pub fn has_literal_reading(self) -> bool {
        use FormulaId::*;
        matches!(self, AffAInAffA | AffBInAffD2n | AffBInAffD2nPlus1 | AffCInAffA2nPlus1 | PoincareA)
    }

    /// Smallest admissible `n`.
    pub fn min_n(self) -> usize {
        use FormulaId::*;
        match self {
            PoincareA => 1,
            DihedralOdd | SignedPairing | AffBInAffDnPlus1 | AffBInAffD2n | AffBInAffD2nPlus1 | ReinerAffB => 3,
            _ => 2,
        }
    }

    /// Parses a tag, with an optional `-literal` suffix.
    pub fn parse_with_reading(s: &str) -> Result<(Self, Reading)> {
        match s.strip_suffix("-literal") {
            Some(base) => Ok((base.parse()?, Reading::Literal)),
            None => Ok((s.parse()?, Reading::Corrected)),
        }
    }
}

impl FromStr for FormulaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown formula {s:?}")))
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Parameters of a formula. `m` is the multiplicity for the affine A
/// families, the part (1, 2 or 3) for the coset factors, and unused
/// elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaParams {
    pub n: usize,
    pub m: Option<usize>,
}

impl FormulaParams {
    pub fn n(n: usize) -> Self {
        FormulaParams { n, m: None }
    }

    pub fn nm(n: usize, m: usize) -> Self {
        FormulaParams { n, m: Some(m) }
    }
}

fn base(sign: i8, k: usize) -> Monomial {
    Monomial::q(sign, k as i32)
}

fn signed_q(k: usize) -> Monomial {
    base(if k.is_multiple_of(2) { 1 } else { -1 }, 1)
}

/// `[k]_x` for `x = ±q^j`.
fn qi(k: usize, x: Monomial) -> QSeries {
    q_integer(k, x).expect("valid base")
}

/// `1 + c q^e`.
fn binomial(c: i64, e: usize) -> QSeries {
    QSeries::one().add(&QSeries::monomial(c, e))
}

/// `∏_{k=lo}^{hi} [k]_{(-1)^k q}`.
fn alternating(lo: usize, hi: usize) -> QSeries {
    product(&(lo..=hi).map(|k| qi(k, signed_q(k))).collect::<Vec<_>>())
}

/// `[2k+1]_q - q^k`.
fn gap_factor(k: usize) -> QSeries {
    qint(2 * k + 1).sub(&QSeries::monomial(1, k))
}

/// `[2][3]_{-q}[4] ∏_{k=3}^n ([2k+1]_q - q^k)`.
fn d_product(n: usize) -> QSeries {
    let mut acc = qint(2).mul(&qint_neg(3)).mul(&qint(4));
    for k in 3..=n {
        acc = acc.mul(&gap_factor(k));
    }
    acc
}

/// `num / ∏ den` truncated at `order`.
fn quotient(num: &QSeries, den: &[QSeries], order: usize) -> Result<QSeries> {
    let mut d = QSeries::one();
    for f in den {
        d = d.mul(f).truncate(order);
    }
    num.truncate(order).div_unit_to(&d, order)
}

fn need_order(id: FormulaId, order: Option<usize>) -> Result<usize> {
    if id.is_series() {
        order.ok_or(Error::MissingTruncation)
    } else {
        Ok(usize::MAX)
    }
}

/// Evaluates a catalog formula. Polynomials are returned exactly (and
/// `order` is ignored); series need `order` and are returned up to `q^order`.
pub fn closed_form(id: FormulaId, p: FormulaParams, order: Option<usize>, reading: Reading) -> Result<QSeries> {
    use FormulaId::*;
    let n = p.n;
    if n < id.min_n() {
        return Err(Error::InvalidParameters(format!("{id} needs n ≥ {}, got {n}", id.min_n())));
    }
    if reading == Reading::Literal && !id.has_literal_reading() {
        return Err(Error::InvalidParameters(format!("{id} has no separate literal reading")));
    }
    let literal = reading == Reading::Literal;
    let l = need_order(id, order)?;
    let takes_m = matches!(id, AffAInAffA | BottAffA | CosetFactor);
    if !takes_m && p.m.is_some() {
        return Err(Error::InvalidParameters(format!("{id} takes no m")));
    }
    let one = QSeries::one;
    Ok(match id {
        BnInA2nMinus1 => alternating(1, 2 * n),
        BnInA2n => alternating(1, 2 * n + 1),
        BnInDnPlus1 => d_product(n),
        DihedralEven => {
            if !n.is_multiple_of(2) {
                return Err(Error::InvalidParameters(format!("{id} needs even n, got {n}")));
            }
            let m = n / 2;
            qi(2, base(1, m)).mul(&qi(n + 1, base(1, m)))
        }
        DihedralOdd => {
            if n % 2 != 1 {
                return Err(Error::InvalidParameters(format!("{id} needs odd n, got {n}")));
            }
            let m = n.div_ceil(2);
            qi(2, base(1, m - 1)).mul(&qi(2, base(1, m))).mul(&qi(m, base(1, n)))
        }
        SignedPairing => super::signed_identity(n)?.lhs,
        AffAInAffA | BottAffA => {
            let m = match (id, p.m) {
                (BottAffA, None) => 1,
                (_, Some(m)) if m >= 1 => m,
                _ => return Err(Error::InvalidParameters(format!("{id} needs m ≥ 1"))),
            };
            let lo = if literal { 1 } else { 2 };
            let num = product(&(lo..=n).map(|k| qi(k, base(1, m))).collect::<Vec<_>>());
            let den: Vec<_> = (lo..=n).map(|k| binomial(-1, (k - 1) * m)).collect();
            quotient(&num, &den, l)?
        }
        AffBInAffDnPlus1 => {
            let mut den = vec![binomial(-1, 1), binomial(-1, 3), binomial(1, n)];
            den.extend((3..=n).map(|k| binomial(-1, 2 * k - 1)));
            quotient(&d_product(n), &den, l)?
        }
        AffBInAffD2n | AffBInAffD2nPlus1 => {
            let (head, shift) = if id == AffBInAffD2n { (alternating(1, 2 * n), 3) } else { (alternating(1, 2 * n + 1), 1) };
            let mut num = head;
            let mut den = Vec::with_capacity(n);
            for k in 1..=n {
                let nk = if k == 1 {
                    if literal {
                        QSeries::from_i64s(&[2], None)
                    } else {
                        one()
                    }
                } else {
                    binomial(1, 2 * (k - 1))
                };
                num = num.mul(&nk).truncate(l);
                den.push(binomial(-1, 2 * (n + k) - shift));
            }
            quotient(&num, &den, l)?
        }
        AffCInAffA2nPlus1 => {
            let twisted = if literal { signed_q(n) } else { signed_q(n + 1) };
            let mut num = qint_neg(n + 1).mul(&qi(n + 1, twisted));
            let mut den = Vec::new();
            for k in (1..=2 * n + 1).filter(|&k| k != n + 1) {
                num = num.mul(&qi(k, signed_q(k))).truncate(l);
                den.push(binomial(if k % 2 == 0 { 1 } else { -1 }, k));
            }
            quotient(&num, &den, l)?
        }
        AffCInAffA2n => {
            let mut num = one();
            let mut den = Vec::new();
            for k in 1..=2 * n {
                num = num.mul(&qi(k + 1, signed_q(k + 1))).truncate(l);
                den.push(binomial(if k % 2 == 0 { 1 } else { -1 }, k));
            }
            quotient(&num, &den, l)?
        }
        AffCInAffA2nMinus1 => {
            let mut num = one();
            let mut den = Vec::new();
            for k in 2..=2 * n {
                num = num.mul(&qi(k, signed_q(k))).truncate(l);
                den.push(binomial(if (k - 1) % 2 == 0 { 1 } else { -1 }, k - 1));
            }
            quotient(&num, &den, l)?
        }
        AffCInAffBnPlus1 => {
            let num = d_product(n).mul(&binomial(-1, n + 1));
            let mut den = vec![binomial(-1, 1), binomial(-1, 3), binomial(-1, 5)];
            den.extend((3..=n).map(|k| binomial(-1, 2 * k + 1)));
            quotient(&num, &den, l)?
        }
        AffCInAffDnPlus2 => {
            let mut num = d_product(n);
            let mut den = Vec::new();
            for k in 1..=n {
                num = num.mul(&binomial(1, k + 1)).truncate(l);
                den.push(binomial(-1, n + k + 2));
            }
            quotient(&num, &den, l)?
        }
        AffCInAffC2nPlus1 | AffCInAffC2n => {
            let (mut num, shift) =
                if id == AffCInAffC2nPlus1 { (alternating(1, 2 * n + 1), 1i64) } else { (alternating(1, 2 * n), -1) };
            let mut den = Vec::new();
            for k in 1..=n {
                num = num.mul(&binomial(1, 2 * k)).truncate(l);
                den.push(binomial(-1, (2 * (n + k) as i64 + shift) as usize));
            }
            quotient(&num, &den, l)?
        }
        ReinerAffB | ReinerAffC => {
            let kind = if id == ReinerAffB { ReinerKind::AffB } else { ReinerKind::AffC };
            let q = Monomial::q(1, 1);
            reiner_distribution(kind, n, l)?.substitute(Monomial::one(), Monomial::one(), q, l)?
        }
        PoincareA => poincare_a(n, literal),
        PoincareB => poincare_b(n),
        CosetFactor => coset_factor(p.m.unwrap_or(0), n)?,
    })
}

/// `∏_{k=1}^{n+1} [k]_q`, the Poincaré polynomial of `A_n`. The literal
/// reading stops at `[n]_q`.
pub fn poincare_a(n: usize, literal: bool) -> QSeries {
    let top = if literal { n } else { n + 1 };
    product(&(1..=top).map(qint).collect::<Vec<_>>())
}

/// `∏_{k=1}^n [2k]_q`, the Poincaré polynomial of `B_n`.
pub fn poincare_b(n: usize) -> QSeries {
    product(&(1..=n).map(|k| qint(2 * k)).collect::<Vec<_>>())
}

/// Ratio of consecutive finite unfolding polynomials:
///
/// * part 1: `[2n-1]_{-q} [2n]_q`
/// * part 2: `[2n]_q [2n+1]_{-q}`
/// * part 3: `[2n+1]_q - q^n`
pub fn coset_factor(part: usize, n: usize) -> Result<QSeries> {
    match part {
        1 => Ok(qint_neg(2 * n - 1).mul(&qint(2 * n))),
        2 => Ok(qint(2 * n).mul(&qint_neg(2 * n + 1))),
        3 => Ok(gap_factor(n)),
        _ => Err(Error::InvalidParameters(format!("coset factor part must be 1, 2 or 3, got {part}"))),
    }
}
