//! Folding subgroups: a partition of the target generators whose blocks'
//! longest elements generate a Coxeter group of their own.

mod brute;
mod family;
mod reiner;

pub use brute::{
    check_admissible, check_partition_admissible, check_unfolding_laws, folding_factorization_check,
    unfolding_series_bruteforce, walk_folding, AdmissibilityReport, FactorizationReport, LawReport,
    UnfoldingSeries, Violation,
};
pub use family::{shifted_c2n_plus1_labels, FamilyId, FamilyKind};
pub use reiner::{reiner_stats_bruteforce, reiner_stats_well_defined, ReinerKind};

use crate::coxeter::{longest_element, CoxeterSystem, Element, Word};
use crate::error::{Error, Result};

/// An embedding `φ: Ŵ → W` given by the unfolded letters of each source
/// generator.
#[derive(Debug, Clone)]
pub struct Folding {
    family: Option<FamilyId>,
    source: CoxeterSystem,
    target: CoxeterSystem,
    /// `partition[s]` is the source generator whose block contains `s`.
    partition: Vec<usize>,
    unfold: Vec<Word>,
    unfold_elems: Vec<Element>,
}

/// Builds the registered folding for a family.
pub fn standard_folding(family: FamilyId) -> Result<Folding> {
    // B_2 → D_3 is the same embedding as B_2 → A_3.
    let data = if family.kind == FamilyKind::BnDnPlus1 && family.n == 2 {
        FamilyId::new(FamilyKind::BnA2nMinus1, 2, None)?
    } else {
        family
    };
    let (src, tgt) = data.systems();
    let source = CoxeterSystem::from_type(src)?;
    let target = CoxeterSystem::from_type(tgt)?;
    let words = data
        .unfold_labels()
        .iter()
        .map(|l| target.word_from_labels(l))
        .collect::<Result<Vec<_>>>()?;
    let mut f = Folding::new(source, target, words)?;
    f.family = Some(family);
    Ok(f)
}

impl Folding {
    /// Validates and builds a folding from the words `φ(r_i)` (internal
    /// target indices). Each word must be the longest element of the
    /// parabolic on its letters, the letter sets must partition the target
    /// generators, and the images must satisfy the source's braid relations
    /// with the right orders.
    pub fn new(source: CoxeterSystem, target: CoxeterSystem, unfold: Vec<Word>) -> Result<Self> {
        if unfold.len() != source.rank() {
            return Err(Error::InvalidFolding(format!(
                "{} words for a rank {} source",
                unfold.len(),
                source.rank()
            )));
        }
        let mut partition = vec![usize::MAX; target.rank()];
        let mut unfold_elems = Vec::with_capacity(unfold.len());
        for (r, w) in unfold.iter().enumerate() {
            let mut block: Vec<usize> = w.letters().to_vec();
            block.sort_unstable();
            block.dedup();
            for &s in &block {
                if s >= target.rank() {
                    return Err(Error::InvalidFolding(format!("letter {s} outside rank {}", target.rank())));
                }
                if partition[s] != usize::MAX {
                    return Err(Error::InvalidFolding(format!(
                        "generator {} lies in two blocks",
                        target.format_word(&Word(vec![s]))
                    )));
                }
                partition[s] = r;
            }
            let e = target.element_from_word(w)?;
            let top = longest_element(&target, &block, 4 * target.rank() * target.rank())
                .map_err(|_| Error::InvalidFolding(format!("block {block:?} generates an infinite parabolic")))?;
            if e != top {
                return Err(Error::InvalidFolding(format!(
                    "{} is not the longest element on its letters",
                    target.format_word(w)
                )));
            }
            if !target.multiply(&e, &e).is_identity() {
                return Err(Error::InvalidFolding(format!("{} is not an involution", target.format_word(w))));
            }
            unfold_elems.push(e);
        }
        if let Some(s) = partition.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidFolding(format!("generator index {s} is in no block")));
        }
        let f = Folding { family: None, source, target, partition, unfold, unfold_elems };
        f.check_relations()?;
        Ok(f)
    }

    fn check_relations(&self) -> Result<()> {
        let r = self.source.rank();
        for i in 0..r {
            for j in (i + 1)..r {
                let expected = self.source.matrix().get(i, j).map(|m| m as usize);
                let bound = expected.unwrap_or(12);
                let mut w = self.target.identity();
                let mut order = None;
                for k in 1..=bound {
                    w = self.target.multiply(&self.target.multiply(&w, &self.unfold_elems[i]), &self.unfold_elems[j]);
                    if w.is_identity() {
                        order = Some(k);
                        break;
                    }
                }
                if order != expected {
                    return Err(Error::InvalidFolding(format!(
                        "φ(r{})φ(r{}) has order {order:?}, expected {expected:?}",
                        i + self.source.index_base(),
                        j + self.source.index_base()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Option<FamilyId> {
        self.family
    }

    pub fn source(&self) -> &CoxeterSystem {
        &self.source
    }

    pub fn target(&self) -> &CoxeterSystem {
        &self.target
    }

    /// `π`: target generator to source generator.
    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    /// The block `π⁻¹(r)`, ascending.
    pub fn block(&self, r: usize) -> Vec<usize> {
        (0..self.partition.len()).filter(|&s| self.partition[s] == r).collect()
    }

    pub fn unfold_letters(&self) -> &[Word] {
        &self.unfold
    }

    pub(crate) fn unfold_element(&self, r: usize) -> &Element {
        &self.unfold_elems[r]
    }

    /// Concatenation of the unfolded letters.
    pub fn unfold_word(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &r in w.letters() {
            let word = self
                .unfold
                .get(r)
                .ok_or(Error::IndexOutOfRange { index: r, rank: self.source.rank() })?;
            out.extend_from_slice(word.letters());
        }
        Ok(Word(out))
    }

    /// `φ(w)` for a source element.
    pub fn phi(&self, w: &Element) -> Element {
        let mut out = self.target.identity();
        for &r in self.source.reduced_word(w).letters() {
            out = self.apply(&out, r);
        }
        out
    }

    /// `x · φ(r)`.
    pub(crate) fn apply(&self, x: &Element, r: usize) -> Element {
        let mut out = x.clone();
        for &s in self.unfold[r].letters() {
            out = self.target.mul_gen(&out, s);
        }
        out
    }

    /// The union of the blocks of the given source generators.
    pub fn lift_subset(&self, rs: &[usize]) -> Vec<usize> {
        (0..self.partition.len()).filter(|&s| rs.contains(&self.partition[s])).collect()
    }

    /// Human-readable table of `φ(r)`.
    pub fn describe(&self) -> Vec<String> {
        let base = self.source.index_base();
        self.unfold
            .iter()
            .enumerate()
            .map(|(r, w)| format!("phi(r{}) = {}", r + base, self.target.format_word(w)))
            .collect()
    }
}
