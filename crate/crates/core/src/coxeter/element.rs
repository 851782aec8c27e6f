use std::fmt;

use crate::ring::ZSqrt2;

/// A finite sequence of generator indices (0-based, internal numbering).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact data identifying an element. Equal keys mean equal elements because
/// the geometric representation is faithful.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKey {
    Int(Box<[i64]>),
    Sqrt2(Box<[ZSqrt2]>),
    /// `ρ^index · s^(reflection)` with `ρ = s_a s_b` the rotation.
    Dihedral { reflection: bool, index: i64 },
}

/// A group element together with its cached length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub(crate) key: ElementKey,
    pub(crate) length: usize,
}

impl Element {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn key(&self) -> &ElementKey {
        &self.key
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}
