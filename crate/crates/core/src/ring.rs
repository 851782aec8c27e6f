//! Exact scalar rings for the geometric representation.
//!
//! Simply-laced systems only ever need the integers. Systems with an edge
//! label 4 need `2cos(π/4) = √2`, so their matrices live in `Z[√2]`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Which exact ring a system's matrices are written over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExactRing {
    Integers,
    IntegersSqrt2,
}

impl fmt::Display for ExactRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactRing::Integers => f.write_str("Z"),
            ExactRing::IntegersSqrt2 => f.write_str("Z[sqrt2]"),
        }
    }
}

/// Operations the matrix backend needs from its scalars.
///
/// `Ord` is a total order used only to sort canonical keys, not the numeric
/// order of the reals.
pub trait Scalar:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
    /// Sign of the real number this scalar denotes: -1, 0 or 1.
    fn signum(self) -> i8;
    /// `2cos(π/m)` for `m ∈ {2, 3, 4, ∞}` (`None` is ∞). Returns `None` when
    /// the value is not in this ring.
    fn edge_coefficient(m: Option<u32>) -> Option<Self>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn signum(self) -> i8 {
        i64::signum(self) as i8
    }
    fn edge_coefficient(m: Option<u32>) -> Option<Self> {
        match m {
            None => Some(2),
            Some(2) => Some(0),
            Some(3) => Some(1),
            _ => None,
        }
    }
}

/// `a + b√2` with integer `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZSqrt2 {
    pub a: i64,
    pub b: i64,
}

impl ZSqrt2 {
    pub const fn new(a: i64, b: i64) -> Self {
        ZSqrt2 { a, b }
    }
}

impl fmt::Display for ZSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}√2"),
            (a, b) if b < 0 => write!(f, "{a}-{}√2", -b),
            (a, b) => write!(f, "{a}+{b}√2"),
        }
    }
}

impl Add for ZSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ZSqrt2::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for ZSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ZSqrt2::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for ZSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ZSqrt2::new(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl Neg for ZSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        ZSqrt2::new(-self.a, -self.b)
    }
}

impl Scalar for ZSqrt2 {
    fn zero() -> Self {
        ZSqrt2::new(0, 0)
    }
    fn one() -> Self {
        ZSqrt2::new(1, 0)
    }
    fn signum(self) -> i8 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa >= 0 && sb >= 0 {
            return (sa | sb) as i8;
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        // Mixed signs: compare a² with 2b² (never equal since √2 is irrational).
        let a2 = (self.a as i128) * (self.a as i128);
        let b2 = 2 * (self.b as i128) * (self.b as i128);
        if a2 > b2 {
            sa as i8
        } else {
            sb as i8
        }
    }
    fn edge_coefficient(m: Option<u32>) -> Option<Self> {
        match m {
            None => Some(ZSqrt2::new(2, 0)),
            Some(2) => Some(ZSqrt2::new(0, 0)),
            Some(3) => Some(ZSqrt2::new(1, 0)),
            Some(4) => Some(ZSqrt2::new(0, 1)),
            _ => None,
        }
    }
}
