use std::fmt;

use crate::coxeter::element::{Element, ElementKey, Word};
use crate::coxeter::matrix::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::ring::{ExactRing, Scalar, ZSqrt2};

/// The named families this crate knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    /// Dihedral group of order `2m`.
    I2(u32),
    AffineA(usize),
    AffineB(usize),
    AffineC(usize),
    AffineD(usize),
    Custom,
}

impl SystemType {
    /// Parses labels such as `A3`, `I2(7)` or `affine-C2`.
    pub fn parse(label: &str) -> Result<Self> {
        let bad = || Error::UnsupportedLabel(label.to_string());
        let label = label.trim();
        if let Some(rest) = label.strip_prefix("I2(") {
            let m = rest.strip_suffix(')').ok_or_else(bad)?;
            return Ok(SystemType::I2(m.parse().map_err(|_| bad())?));
        }
        let (affine, rest) = match label.strip_prefix("affine-") {
            Some(r) => (true, r),
            None => (false, label),
        };
        let mut chars = rest.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let ty = match (affine, letter) {
            (false, 'A') => SystemType::A(n),
            (false, 'B') => SystemType::B(n),
            (false, 'C') => SystemType::C(n),
            (false, 'D') => SystemType::D(n),
            (true, 'A') => SystemType::AffineA(n),
            (true, 'B') => SystemType::AffineB(n),
            (true, 'C') => SystemType::AffineC(n),
            (true, 'D') => SystemType::AffineD(n),
            _ => return Err(bad()),
        };
        Ok(ty)
    }

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            SystemType::AffineA(_) | SystemType::AffineB(_) | SystemType::AffineC(_) | SystemType::AffineD(_)
        )
    }

    /// Diagram labels number finite generators from 1 and affine ones from 0.
    pub fn index_base(self) -> usize {
        if self.is_affine() || self == SystemType::Custom {
            0
        } else {
            1
        }
    }

    fn coxeter_matrix(self) -> Result<CoxeterMatrix> {
        let invalid = |msg: &str| Err(Error::InvalidParameters(format!("{self}: {msg}")));
        let chain = |from: usize, to: usize| -> Vec<(usize, usize, Option<u32>)> {
            (from..to).map(|i| (i, i + 1, Some(3))).collect()
        };
        match self {
            SystemType::A(n) => {
                if n < 1 {
                    return invalid("rank must be at least 1");
                }
                CoxeterMatrix::from_edges(n, &chain(0, n - 1))
            }
            SystemType::B(n) | SystemType::C(n) => {
                if n < 2 {
                    return invalid("rank must be at least 2");
                }
                let mut e = chain(0, n - 2);
                e.push((n - 2, n - 1, Some(4)));
                CoxeterMatrix::from_edges(n, &e)
            }
            SystemType::D(n) => {
                if n < 3 {
                    return invalid("rank must be at least 3");
                }
                // s_1 - ... - s_{n-2}, with s_{n-1} and s_n both joined to s_{n-2}.
                let mut e = chain(0, n - 3);
                e.push((n - 3, n - 2, Some(3)));
                e.push((n - 3, n - 1, Some(3)));
                CoxeterMatrix::from_edges(n, &e)
            }
            SystemType::I2(m) => {
                if m < 2 {
                    return invalid("m must be at least 2");
                }
                CoxeterMatrix::from_edges(2, &[(0, 1, Some(m))])
            }
            SystemType::AffineA(n) => {
                if n < 1 {
                    return invalid("n must be at least 1");
                }
                if n == 1 {
                    return CoxeterMatrix::from_edges(2, &[(0, 1, None)]);
                }
                let mut e = chain(0, n);
                e.push((n, 0, Some(3)));
                CoxeterMatrix::from_edges(n + 1, &e)
            }
            SystemType::AffineB(n) => {
                if n < 3 {
                    return invalid("n must be at least 3");
                }
                // s_0 =4= s_1 - ... - s_{n-2}, fork s_{n-1}, s_n at s_{n-2}.
                let mut e = vec![(0, 1, Some(4))];
                e.extend(chain(1, n - 2));
                e.push((n - 2, n - 1, Some(3)));
                e.push((n - 2, n, Some(3)));
                CoxeterMatrix::from_edges(n + 1, &e)
            }
            SystemType::AffineC(n) => {
                if n < 2 {
                    return invalid("n must be at least 2");
                }
                let mut e = vec![(0, 1, Some(4))];
                e.extend(chain(1, n - 1));
                e.push((n - 1, n, Some(4)));
                CoxeterMatrix::from_edges(n + 1, &e)
            }
            SystemType::AffineD(n) => {
                if n < 4 {
                    return invalid("n must be at least 4");
                }
                // s_0, s_1 at s_2; s_2 - ... - s_{n-2}; s_{n-1}, s_n at s_{n-2}.
                let mut e = vec![(0, 2, Some(3)), (1, 2, Some(3))];
                e.extend(chain(2, n - 2));
                e.push((n - 2, n - 1, Some(3)));
                e.push((n - 2, n, Some(3)));
                CoxeterMatrix::from_edges(n + 1, &e)
            }
            SystemType::Custom => invalid("custom systems are built from a matrix"),
        }
    }
}

impl fmt::Display for SystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemType::A(n) => write!(f, "A{n}"),
            SystemType::B(n) => write!(f, "B{n}"),
            SystemType::C(n) => write!(f, "C{n}"),
            SystemType::D(n) => write!(f, "D{n}"),
            SystemType::I2(m) => write!(f, "I2({m})"),
            SystemType::AffineA(n) => write!(f, "affine-A{n}"),
            SystemType::AffineB(n) => write!(f, "affine-B{n}"),
            SystemType::AffineC(n) => write!(f, "affine-C{n}"),
            SystemType::AffineD(n) => write!(f, "affine-D{n}"),
            SystemType::Custom => write!(f, "custom"),
        }
    }
}

/// Left or right multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Simple reflections of the geometric representation, stored as the
/// coefficients `c_ij = 2cos(π/m_ij)`. The matrix of `s_i` is the identity
/// with row `i` replaced by `(c_i0, …, -1, …, c_i(r-1))`.
#[derive(Debug, Clone)]
struct Reflections<R> {
    rank: usize,
    coef: Vec<R>,
}

impl<R: Scalar> Reflections<R> {
    fn new(matrix: &CoxeterMatrix) -> Option<Self> {
        let rank = matrix.rank();
        let mut coef = vec![R::zero(); rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                if i != j {
                    coef[i * rank + j] = R::edge_coefficient(matrix.get(i, j))?;
                }
            }
        }
        Some(Reflections { rank, coef })
    }

    fn identity(&self) -> Box<[R]> {
        let r = self.rank;
        let mut m = vec![R::zero(); r * r];
        for i in 0..r {
            m[i * r + i] = R::one();
        }
        m.into_boxed_slice()
    }

    /// `M · S_i`.
    fn right_mul(&self, m: &[R], i: usize) -> Box<[R]> {
        let r = self.rank;
        let mut out = m.to_vec();
        for row in 0..r {
            let pivot = m[row * r + i];
            if pivot.is_zero() {
                continue;
            }
            for j in 0..r {
                if j == i {
                    out[row * r + j] = -pivot;
                } else {
                    let c = self.coef[i * r + j];
                    if !c.is_zero() {
                        out[row * r + j] = out[row * r + j] + pivot * c;
                    }
                }
            }
        }
        out.into_boxed_slice()
    }

    /// `S_i · M`.
    fn left_mul(&self, m: &[R], i: usize) -> Box<[R]> {
        let r = self.rank;
        let mut out = m.to_vec();
        for j in 0..r {
            let mut acc = -m[i * r + j];
            for k in 0..r {
                if k != i {
                    let c = self.coef[i * r + k];
                    if !c.is_zero() {
                        acc = acc + c * m[k * r + j];
                    }
                }
            }
            out[i * r + j] = acc;
        }
        out.into_boxed_slice()
    }

    /// Sign of the root `w(α_i)`, read off column `i`.
    fn column_sign(&self, m: &[R], i: usize) -> i8 {
        let r = self.rank;
        for row in 0..r {
            let s = m[row * r + i].signum();
            if s != 0 {
                return s;
            }
        }
        0
    }
}

#[derive(Debug, Clone)]
enum Backend {
    /// Rank-2 groups: elements are `ρ^k s^e`; `m = None` is the infinite dihedral group.
    Dihedral { m: Option<u32> },
    Int(Reflections<i64>),
    Sqrt2(Reflections<ZSqrt2>),
}

fn dihedral_normalize(index: i64, m: Option<u32>) -> i64 {
    match m {
        Some(m) => index.rem_euclid(m as i64),
        None => index,
    }
}

fn dihedral_length(reflection: bool, index: i64, m: Option<u32>) -> usize {
    match m {
        Some(m) => {
            let (j, m) = (index, m as i64);
            if reflection {
                (2 * j + 1).min(2 * (m - j) - 1) as usize
            } else {
                (2 * j).min(2 * (m - j)) as usize
            }
        }
        None => {
            if reflection {
                if index >= 0 {
                    (2 * index + 1) as usize
                } else {
                    (-2 * index - 1) as usize
                }
            } else {
                (2 * index.abs()) as usize
            }
        }
    }
}

/// A Coxeter system together with an exact faithful representation.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    label: String,
    ty: SystemType,
    matrix: CoxeterMatrix,
    ring: ExactRing,
    backend: Backend,
}

/// Builds a system from a type label such as `A3`, `I2(7)` or `affine-C2`.
pub fn build_system(label: &str) -> Result<CoxeterSystem> {
    CoxeterSystem::from_type(SystemType::parse(label)?)
}

impl CoxeterSystem {
    pub fn from_type(ty: SystemType) -> Result<Self> {
        let matrix = ty.coxeter_matrix()?;
        Self::assemble(ty.to_string(), ty, matrix)
    }

    /// Builds a system straight from a Coxeter matrix. Rank-2 matrices take
    /// the dihedral backend; higher ranks need every label in `{2,3,4,∞}`.
    pub fn from_matrix(matrix: CoxeterMatrix) -> Result<Self> {
        Self::assemble("custom".to_string(), SystemType::Custom, matrix)
    }

    fn assemble(label: String, ty: SystemType, matrix: CoxeterMatrix) -> Result<Self> {
        let rank = matrix.rank();
        let backend = if rank == 2 {
            Backend::Dihedral { m: matrix.get(0, 1) }
        } else {
            let any_four = matrix.entries().contains(&Some(4));
            let unsupported = matrix
                .entries()
                .iter()
                .any(|&m| !matches!(m, Some(1..=4) | None));
            if unsupported {
                return Err(Error::UnsupportedLabel(format!(
                    "{label}: edge labels outside {{2,3,4,∞}} need a ring this crate does not provide"
                )));
            }
            if any_four {
                Backend::Sqrt2(Reflections::new(&matrix).expect("labels checked"))
            } else {
                Backend::Int(Reflections::new(&matrix).expect("labels checked"))
            }
        };
        let ring = match backend {
            Backend::Sqrt2(_) => ExactRing::IntegersSqrt2,
            _ => ExactRing::Integers,
        };
        let sys = CoxeterSystem { label, ty, matrix, ring, backend };
        sys.check_relations()?;
        Ok(sys)
    }

    /// Every generator is an involution and each pair product has order
    /// exactly `m(i,j)`.
    fn check_relations(&self) -> Result<()> {
        let rank = self.rank();
        for i in 0..rank {
            let sq = self.mul_gen(&self.mul_gen(&self.identity(), i), i);
            if !sq.is_identity() || sq.key != self.identity().key {
                return Err(Error::InvalidMatrix(format!("generator {i} is not an involution")));
            }
            for j in (i + 1)..rank {
                let bound = self.matrix.get(i, j).unwrap_or(12) as usize;
                let mut w = self.identity();
                let mut order = None;
                for k in 1..=bound {
                    w = self.mul_gen(&self.mul_gen(&w, i), j);
                    if w.key == self.identity().key {
                        order = Some(k);
                        break;
                    }
                }
                let expected = self.matrix.get(i, j).map(|m| m as usize);
                if order != expected {
                    return Err(Error::InvalidMatrix(format!(
                        "s_{i}s_{j} has order {order:?}, expected {expected:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn system_type(&self) -> SystemType {
        self.ty
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> ExactRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn index_base(&self) -> usize {
        self.ty.index_base()
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self.backend, Backend::Dihedral { .. })
    }

    /// True for the finite types; custom matrices are finite only if every
    /// label is finite and the group is one of the known finite ones, which
    /// we do not attempt to decide.
    pub fn is_finite(&self) -> bool {
        match self.ty {
            SystemType::A(_) | SystemType::B(_) | SystemType::C(_) | SystemType::D(_) | SystemType::I2(_) => true,
            SystemType::Custom => false,
            _ => false,
        }
    }

    pub fn identity(&self) -> Element {
        let key = match &self.backend {
            Backend::Dihedral { .. } => ElementKey::Dihedral { reflection: false, index: 0 },
            Backend::Int(r) => ElementKey::Int(r.identity()),
            Backend::Sqrt2(r) => ElementKey::Sqrt2(r.identity()),
        };
        Element { key, length: 0 }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    pub fn generator(&self, i: usize) -> Result<Element> {
        self.check_index(i)?;
        Ok(self.mul_gen(&self.identity(), i))
    }

    /// `s_i · w` or `w · s_i`.
    pub fn apply_generator(&self, w: &Element, i: usize, side: Side) -> Result<Element> {
        self.check_index(i)?;
        Ok(match side {
            Side::Right => self.mul_gen(w, i),
            Side::Left => self.gen_mul(i, w),
        })
    }

    /// `w · s_i` without the bounds check. Length is updated from the sign of
    /// `w(α_i)`.
    pub(crate) fn mul_gen(&self, w: &Element, i: usize) -> Element {
        match (&self.backend, &w.key) {
            (Backend::Dihedral { m }, &ElementKey::Dihedral { reflection, index }) => {
                let gen_index = if i == 0 { 0 } else { -1 };
                let idx = if reflection { index - gen_index } else { index + gen_index };
                let idx = dihedral_normalize(idx, *m);
                let refl = !reflection;
                Element {
                    key: ElementKey::Dihedral { reflection: refl, index: idx },
                    length: dihedral_length(refl, idx, *m),
                }
            }
            (Backend::Int(r), ElementKey::Int(mat)) => {
                let up = r.column_sign(mat, i) > 0;
                Element {
                    key: ElementKey::Int(r.right_mul(mat, i)),
                    length: if up { w.length + 1 } else { w.length - 1 },
                }
            }
            (Backend::Sqrt2(r), ElementKey::Sqrt2(mat)) => {
                let up = r.column_sign(mat, i) > 0;
                Element {
                    key: ElementKey::Sqrt2(r.right_mul(mat, i)),
                    length: if up { w.length + 1 } else { w.length - 1 },
                }
            }
            _ => panic!("element does not belong to system {}", self.label),
        }
    }

    fn gen_mul(&self, i: usize, w: &Element) -> Element {
        match (&self.backend, &w.key) {
            (Backend::Dihedral { m }, &ElementKey::Dihedral { reflection, index }) => {
                // s_i · ρ^k s^e = ρ^(g - k) s^(1+e) where s_i = ρ^g s.
                let g = if i == 0 { 0 } else { -1 };
                let idx = dihedral_normalize(g - index, *m);
                let refl = !reflection;
                Element {
                    key: ElementKey::Dihedral { reflection: refl, index: idx },
                    length: dihedral_length(refl, idx, *m),
                }
            }
            _ => {
                let down = self.is_left_descent(w, i);
                let key = match (&self.backend, &w.key) {
                    (Backend::Int(r), ElementKey::Int(mat)) => ElementKey::Int(r.left_mul(mat, i)),
                    (Backend::Sqrt2(r), ElementKey::Sqrt2(mat)) => ElementKey::Sqrt2(r.left_mul(mat, i)),
                    _ => panic!("element does not belong to system {}", self.label),
                };
                Element { key, length: if down { w.length - 1 } else { w.length + 1 } }
            }
        }
    }

    pub fn length(&self, w: &Element) -> usize {
        w.length
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn is_right_descent(&self, w: &Element, i: usize) -> bool {
        match (&self.backend, &w.key) {
            (Backend::Int(r), ElementKey::Int(mat)) => r.column_sign(mat, i) < 0,
            (Backend::Sqrt2(r), ElementKey::Sqrt2(mat)) => r.column_sign(mat, i) < 0,
            _ => self.mul_gen(w, i).length < w.length,
        }
    }

    pub fn is_left_descent(&self, w: &Element, i: usize) -> bool {
        self.is_right_descent(&self.inverse(w), i)
    }

    /// Right descent set, ascending.
    pub fn right_descents(&self, w: &Element) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_right_descent(w, i)).collect()
    }

    pub fn left_descents(&self, w: &Element) -> Vec<usize> {
        let inv = self.inverse(w);
        (0..self.rank()).filter(|&i| self.is_right_descent(&inv, i)).collect()
    }

    /// Smallest right descent among `gens` (assumed ascending).
    pub(crate) fn min_right_descent_in(&self, w: &Element, gens: &[usize]) -> Option<usize> {
        gens.iter().copied().find(|&i| self.is_right_descent(w, i))
    }

    pub fn element_from_word(&self, word: &Word) -> Result<Element> {
        let mut w = self.identity();
        for &i in word.letters() {
            self.check_index(i)?;
            w = self.mul_gen(&w, i);
        }
        Ok(w)
    }

    /// Builds a word from generator labels as printed in the tables (so `s_1`
    /// is `1` in finite types and `s_0` is `0` in affine types).
    pub fn word_from_labels(&self, labels: &[usize]) -> Result<Word> {
        let base = self.index_base();
        labels
            .iter()
            .map(|&l| {
                if l < base || l - base >= self.rank() {
                    Err(Error::IndexOutOfRange { index: l, rank: self.rank() })
                } else {
                    Ok(l - base)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn element_from_labels(&self, labels: &[usize]) -> Result<Element> {
        self.element_from_word(&self.word_from_labels(labels)?)
    }

    /// Renders a word with table labels, e.g. `s1s3s2`, or `e` when empty.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        let base = self.index_base();
        word.letters().iter().map(|i| format!("s{}", i + base)).collect()
    }

    /// Some reduced word for `w`, found by stripping right descents.
    pub fn reduced_word(&self, w: &Element) -> Word {
        let mut letters = Vec::with_capacity(w.length);
        let mut cur = w.clone();
        while !cur.is_identity() {
            let s = (0..self.rank())
                .find(|&i| self.is_right_descent(&cur, i))
                .expect("non-identity element has a right descent");
            letters.push(s);
            cur = self.mul_gen(&cur, s);
        }
        letters.reverse();
        Word(letters)
    }

    pub fn inverse(&self, w: &Element) -> Element {
        if let ElementKey::Dihedral { reflection: false, index } = w.key {
            let m = match self.backend {
                Backend::Dihedral { m } => m,
                _ => unreachable!(),
            };
            let idx = dihedral_normalize(-index, m);
            return Element { key: ElementKey::Dihedral { reflection: false, index: idx }, length: w.length };
        }
        if matches!(w.key, ElementKey::Dihedral { .. }) {
            return w.clone();
        }
        let word = self.reduced_word(w).reversed();
        self.element_from_word(&word).expect("letters in range")
    }

    /// `a · b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut w = a.clone();
        for &i in self.reduced_word(b).letters() {
            w = self.mul_gen(&w, i);
        }
        w
    }

    /// Lexicographically least reduced word (generators ordered by index).
    pub fn shortlex_normal_form(&self, w: &Element) -> Word {
        // The first letter is the smallest left descent, i.e. the smallest
        // right descent of the inverse.
        let mut inv = self.inverse(w);
        let mut letters = Vec::with_capacity(w.length);
        while !inv.is_identity() {
            let s = (0..self.rank())
                .find(|&i| self.is_right_descent(&inv, i))
                .expect("non-identity element has a descent");
            letters.push(s);
            inv = self.mul_gen(&inv, s);
        }
        Word(letters)
    }

    /// Length recomputed from scratch by descent stripping, ignoring the cache.
    pub fn recompute_length(&self, w: &Element) -> usize {
        match w.key {
            ElementKey::Dihedral { reflection, index } => {
                let m = match self.backend {
                    Backend::Dihedral { m } => m,
                    _ => unreachable!(),
                };
                dihedral_length(reflection, index, m)
            }
            _ => {
                let mut cur = w.clone();
                let mut n = 0;
                while let Some(s) = (0..self.rank()).find(|&i| self.is_right_descent(&cur, i)) {
                    cur = self.mul_gen(&cur, s);
                    n += 1;
                }
                n
            }
        }
    }

    /// Whether `w` lies in the parabolic subgroup generated by `gens`.
    pub fn in_parabolic(&self, w: &Element, gens: &[usize]) -> bool {
        let mut cur = w.clone();
        while !cur.is_identity() {
            match gens.iter().copied().find(|&i| self.is_right_descent(&cur, i)) {
                Some(s) => cur = self.mul_gen(&cur, s),
                None => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_matrix() {
        let a3 = build_system("A3").unwrap();
        assert_eq!(a3.rank(), 3);
        assert_eq!(a3.matrix().get(0, 1), Some(3));
        assert_eq!(a3.matrix().get(1, 2), Some(3));
        assert_eq!(a3.matrix().get(0, 2), Some(2));
        assert_eq!(a3.ring(), ExactRing::Integers);
    }

    #[test]
    fn i2_4_is_dihedral() {
        let s = build_system("I2(4)").unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.matrix().get(0, 1), Some(4));
        assert!(s.is_dihedral());
    }

    #[test]
    fn affine_c2_edges() {
        let s = build_system("affine-C2").unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.matrix().get(0, 1), Some(4));
        assert_eq!(s.matrix().get(1, 2), Some(4));
        assert_eq!(s.matrix().get(0, 2), Some(2));
        assert_eq!(s.ring(), ExactRing::IntegersSqrt2);
        assert_eq!(s.index_base(), 0);
    }

    #[test]
    fn affine_d4_has_central_node() {
        let s = build_system("affine-D4").unwrap();
        for j in [0, 1, 3, 4] {
            assert_eq!(s.matrix().get(2, j), Some(3));
        }
        assert_eq!(s.matrix().get(0, 1), Some(2));
    }

    #[test]
    fn labels_and_ranges() {
        assert!(matches!(build_system("E6"), Err(Error::UnsupportedLabel(_))));
        assert!(matches!(build_system("affine-B2"), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_system("D2"), Err(Error::InvalidParameters(_))));
        let m = CoxeterMatrix::from_edges(3, &[(0, 1, Some(6)), (1, 2, Some(3))]).unwrap();
        assert!(matches!(CoxeterSystem::from_matrix(m), Err(Error::UnsupportedLabel(_))));
    }

    #[test]
    fn apply_generator_examples() {
        let a3 = build_system("A3").unwrap();
        let e = a3.identity();
        let s1 = a3.apply_generator(&e, 0, Side::Right).unwrap();
        assert_eq!(s1.length(), 1);
        assert!(a3.apply_generator(&s1, 0, Side::Right).unwrap().is_identity());
        let s1s2 = a3.element_from_labels(&[1, 2]).unwrap();
        let w = a3.apply_generator(&s1s2, 2, Side::Right).unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!(w, a3.element_from_labels(&[1, 2, 3]).unwrap());
        assert!(matches!(
            a3.apply_generator(&e, 3, Side::Right),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn left_multiplication_matches_words() {
        for label in ["A3", "B3", "I2(5)", "affine-C2", "affine-A1"] {
            let s = build_system(label).unwrap();
            let w = s.element_from_word(&Word(vec![0, 1, 0])).unwrap();
            for i in 0..s.rank() {
                let left = s.apply_generator(&w, i, Side::Left).unwrap();
                let expected = s.element_from_word(&Word(vec![i, 0, 1, 0])).unwrap();
                assert_eq!(left.key(), expected.key(), "{label}");
                assert_eq!(left.length(), s.recompute_length(&left), "{label}");
            }
        }
    }

    #[test]
    fn descent_examples() {
        let a3 = build_system("A3").unwrap();
        assert!(a3.right_descents(&a3.identity()).is_empty());
        let s1s3 = a3.element_from_labels(&[1, 3]).unwrap();
        assert_eq!(a3.right_descents(&s1s3), vec![0, 2]);
    }

    #[test]
    fn shortlex_examples() {
        let a2 = build_system("A2").unwrap();
        let w = a2.element_from_labels(&[2, 1]).unwrap();
        assert_eq!(a2.shortlex_normal_form(&w), a2.word_from_labels(&[2, 1]).unwrap());
        let b2 = build_system("I2(4)").unwrap();
        let w0 = b2.element_from_labels(&[2, 1, 2, 1]).unwrap();
        assert_eq!(b2.shortlex_normal_form(&w0), b2.word_from_labels(&[1, 2, 1, 2]).unwrap());
        assert!(b2.shortlex_normal_form(&b2.identity()).is_empty());
    }

    #[test]
    fn dihedral_lengths_match_words() {
        for m in [Some(3u32), Some(4), Some(7), None] {
            let sys = match m {
                Some(m) => CoxeterSystem::from_type(SystemType::I2(m)).unwrap(),
                None => build_system("affine-A1").unwrap(),
            };
            let top = m.unwrap_or(9) as usize;
            for start in 0..2 {
                for len in 0..=top {
                    let word: Vec<usize> = (0..len).map(|k| (start + k) % 2).collect();
                    let w = sys.element_from_word(&Word(word)).unwrap();
                    assert_eq!(w.length(), len, "m={m:?} start={start} len={len}");
                }
            }
        }
    }
}
