use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coxeter::SystemType;
use crate::error::{Error, Result};

/// The registered folding families, named as on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    BnA2nMinus1,
    BnA2n,
    BnDnPlus1,
    I2An,
    AffAAffA,
    AffBAffDnPlus1,
    AffBAffD2n,
    AffBAffD2nPlus1,
    AffCAffA2nPlus1,
    AffCAffA2n,
    AffCAffA2nMinus1,
    AffCAffBnPlus1,
    AffCAffDnPlus2,
    AffCAffC2nPlus1,
    AffCAffC2n,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 15] = [
        FamilyKind::BnA2nMinus1,
        FamilyKind::BnA2n,
        FamilyKind::BnDnPlus1,
        FamilyKind::I2An,
        FamilyKind::AffAAffA,
        FamilyKind::AffBAffDnPlus1,
        FamilyKind::AffBAffD2n,
        FamilyKind::AffBAffD2nPlus1,
        FamilyKind::AffCAffA2nPlus1,
        FamilyKind::AffCAffA2n,
        FamilyKind::AffCAffA2nMinus1,
        FamilyKind::AffCAffBnPlus1,
        FamilyKind::AffCAffDnPlus2,
        FamilyKind::AffCAffC2nPlus1,
        FamilyKind::AffCAffC2n,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::BnA2nMinus1 => "Bn-A2n-1",
            FamilyKind::BnA2n => "Bn-A2n",
            FamilyKind::BnDnPlus1 => "Bn-Dn+1",
            FamilyKind::I2An => "I2-An",
            FamilyKind::AffAAffA => "affA-affA",
            FamilyKind::AffBAffDnPlus1 => "affB-affDn+1",
            FamilyKind::AffBAffD2n => "affB-affD2n",
            FamilyKind::AffBAffD2nPlus1 => "affB-affD2n+1",
            FamilyKind::AffCAffA2nPlus1 => "affC-affA2n+1",
            FamilyKind::AffCAffA2n => "affC-affA2n",
            FamilyKind::AffCAffA2nMinus1 => "affC-affA2n-1",
            FamilyKind::AffCAffBnPlus1 => "affC-affBn+1",
            FamilyKind::AffCAffDnPlus2 => "affC-affDn+2",
            FamilyKind::AffCAffC2nPlus1 => "affC-affC2n+1",
            FamilyKind::AffCAffC2n => "affC-affC2n",
        }
    }

    pub fn is_affine(self) -> bool {
        !matches!(
            self,
            FamilyKind::BnA2nMinus1 | FamilyKind::BnA2n | FamilyKind::BnDnPlus1 | FamilyKind::I2An
        )
    }

    pub fn needs_m(self) -> bool {
        self == FamilyKind::AffAAffA
    }

    fn min_n(self) -> usize {
        match self {
            FamilyKind::AffBAffDnPlus1 | FamilyKind::AffBAffD2n | FamilyKind::AffBAffD2nPlus1 => 3,
            _ => 2,
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown folding family {s:?}")))
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub n: usize,
    pub m: Option<usize>,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, n: usize, m: Option<usize>) -> Result<Self> {
        if n < kind.min_n() {
            return Err(Error::InvalidParameters(format!("{kind} needs n ≥ {}, got {n}", kind.min_n())));
        }
        match (kind.needs_m(), m) {
            (true, Some(m)) if m >= 2 => {}
            (true, Some(m)) => return Err(Error::InvalidParameters(format!("{kind} needs m ≥ 2, got {m}"))),
            (true, None) => return Err(Error::InvalidParameters(format!("{kind} needs m"))),
            (false, Some(_)) => return Err(Error::InvalidParameters(format!("{kind} takes no m"))),
            (false, None) => {}
        }
        Ok(FamilyId { kind, n, m })
    }

    pub fn parse(name: &str, n: usize, m: Option<usize>) -> Result<Self> {
        Self::new(name.parse()?, n, m)
    }

    /// Source and target types.
    pub fn systems(&self) -> (SystemType, SystemType) {
        use FamilyKind::*;
        use SystemType as T;
        let n = self.n;
        match self.kind {
            BnA2nMinus1 => (T::B(n), T::A(2 * n - 1)),
            BnA2n => (T::B(n), T::A(2 * n)),
            BnDnPlus1 => (T::B(n), T::D(n + 1)),
            I2An => (T::I2(n as u32 + 1), T::A(n)),
            AffAAffA => (T::AffineA(n - 1), T::AffineA(self.m.unwrap() * n - 1)),
            AffBAffDnPlus1 => (T::AffineB(n), T::AffineD(n + 1)),
            AffBAffD2n => (T::AffineB(n), T::AffineD(2 * n)),
            AffBAffD2nPlus1 => (T::AffineB(n), T::AffineD(2 * n + 1)),
            AffCAffA2nPlus1 => (T::AffineC(n), T::AffineA(2 * n + 1)),
            AffCAffA2n => (T::AffineC(n), T::AffineA(2 * n)),
            AffCAffA2nMinus1 => (T::AffineC(n), T::AffineA(2 * n - 1)),
            AffCAffBnPlus1 => (T::AffineC(n), T::AffineB(n + 1)),
            AffCAffDnPlus2 => (T::AffineC(n), T::AffineD(n + 2)),
            AffCAffC2nPlus1 => (T::AffineC(n), T::AffineC(2 * n + 1)),
            AffCAffC2n => (T::AffineC(n), T::AffineC(2 * n)),
        }
    }

    /// `φ(r)` for each source generator, as target labels in table numbering
    /// (finite types from 1, affine types from 0).
    pub fn unfold_labels(&self) -> Vec<Vec<usize>> {
        use FamilyKind::*;
        let n = self.n;
        match self.kind {
            BnA2nMinus1 => (1..=n).map(|i| if i < n { vec![i, 2 * n - i] } else { vec![n] }).collect(),
            BnA2n => (1..=n)
                .map(|i| if i < n { vec![i, 2 * n + 1 - i] } else { vec![n, n + 1, n] })
                .collect(),
            BnDnPlus1 => (1..=n).map(|i| if i < n { vec![i] } else { vec![n, n + 1] }).collect(),
            I2An => vec![(1..=n).step_by(2).collect(), (2..=n).step_by(2).collect()],
            AffAAffA => {
                let m = self.m.unwrap();
                (0..n).map(|i| (0..m).map(|j| i + j * n).collect()).collect()
            }
            AffBAffDnPlus1 => (0..=n).map(|i| if i == 0 { vec![0, 1] } else { vec![i + 1] }).collect(),
            // Pairs mirror the diagram: r_j folds s_(n-j) with s_(n+j).
            AffBAffD2n => (0..=n).map(|j| if j == 0 { vec![n] } else { vec![n - j, n + j] }).collect(),
            AffBAffD2nPlus1 => (0..=n)
                .map(|j| if j == 0 { vec![n, n + 1, n] } else { vec![n - j, n + 1 + j] })
                .collect(),
            AffCAffA2nPlus1 => (0..=n)
                .map(|i| match i {
                    0 => vec![0, 2 * n + 1, 0],
                    i if i == n => vec![n, n + 1, n],
                    i => vec![i, 2 * n + 1 - i],
                })
                .collect(),
            AffCAffA2n => (0..=n)
                .map(|i| match i {
                    0 => vec![0, 2 * n, 0],
                    i if i == n => vec![n],
                    i => vec![i, 2 * n - i],
                })
                .collect(),
            AffCAffA2nMinus1 => (0..=n)
                .map(|i| match i {
                    0 => vec![0],
                    i if i == n => vec![n],
                    i => vec![i, 2 * n - i],
                })
                .collect(),
            AffCAffBnPlus1 => (0..=n).map(|i| if i < n { vec![i] } else { vec![n, n + 1] }).collect(),
            AffCAffDnPlus2 => (0..=n)
                .map(|i| match i {
                    0 => vec![0, 1],
                    i if i == n => vec![n + 1, n + 2],
                    i => vec![i + 1],
                })
                .collect(),
            AffCAffC2nPlus1 => (0..=n)
                .map(|i| if i == n { vec![n, n + 1, n] } else { vec![i, 2 * n + 1 - i] })
                .collect(),
            AffCAffC2n => (0..=n).map(|i| if i == n { vec![n] } else { vec![i, 2 * n - i] }).collect(),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "{}(n={}, m={m})", self.kind, self.n),
            None => write!(f, "{}(n={})", self.kind, self.n),
        }
    }
}

/// The `C̃_n → C̃_{2n+1}` pairing written `s_i s_{2n+i}` (with `r_0 ↦ s_0 s_{2n}`)
/// instead of the mirror pairing `s_i s_{2n+1-i}` used by the registry.
pub fn shifted_c2n_plus1_labels(n: usize) -> Vec<Vec<usize>> {
    (0..=n).map(|i| if i == n { vec![n, n + 1, n] } else { vec![i, 2 * n + i] }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
        }
        assert!("Bn-E6".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn parameter_floors() {
        assert!(FamilyId::parse("affB-affD2n", 2, None).is_err());
        assert!(FamilyId::parse("affC-affA2n", 1, None).is_err());
        assert!(FamilyId::parse("affA-affA", 2, None).is_err());
        assert!(FamilyId::parse("affA-affA", 2, Some(1)).is_err());
        assert!(FamilyId::parse("Bn-A2n", 2, Some(2)).is_err());
        assert!(FamilyId::parse("affA-affA", 2, Some(2)).is_ok());
    }

    #[test]
    fn family_examples() {
        let f = FamilyId::parse("Bn-A2n-1", 2, None).unwrap();
        assert_eq!(f.unfold_labels(), vec![vec![1, 3], vec![2]]);
        let f = FamilyId::parse("I2-An", 4, None).unwrap();
        assert_eq!(f.unfold_labels(), vec![vec![1, 3], vec![2, 4]]);
        let f = FamilyId::parse("affA-affA", 2, Some(2)).unwrap();
        assert_eq!(f.unfold_labels(), vec![vec![0, 2], vec![1, 3]]);
    }
}
