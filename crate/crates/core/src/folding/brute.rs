//! Brute-force oracles: walk the source group breadth first, carrying the
//! unfolded element along, and read everything off the pairs.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{longest_element, CoxeterSystem, Element, EnumOptions};
use crate::error::{Error, Result};
use crate::folding::Folding;
use crate::qseries::QSeries;

fn pool(workers: usize) -> Result<Option<rayon::ThreadPool>> {
    if workers <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map(Some)
        .map_err(|e| Error::InvalidParameters(e.to_string()))
}

type Pair = (Element, Element);

fn children(f: &Folding, (w, x): &Pair, max_ambient: Option<usize>) -> Vec<Pair> {
    let src = f.source();
    let all: Vec<usize> = (0..src.rank()).collect();
    let mut out = Vec::new();
    for r in 0..src.rank() {
        if src.is_right_descent(w, r) {
            continue;
        }
        let c = src.mul_gen(w, r);
        if src.min_right_descent_in(&c, &all) != Some(r) {
            continue;
        }
        let y = f.apply(x, r);
        if max_ambient.is_some_and(|l| y.length() > l) {
            continue;
        }
        out.push((c, y));
    }
    out
}

/// Visits `(w, φ(w))` for every source element `w` with `ℓ(φ(w)) ≤ max_ambient`
/// and `ℓ(w) ≤ max_source` (either bound may be absent when the source is
/// finite). Unfolded length only grows along reduced words, so a branch is
/// cut as soon as it passes `max_ambient`. Returns the number of elements
/// visited.
pub fn walk_folding<F>(
    f: &Folding,
    max_ambient: Option<usize>,
    max_source: Option<usize>,
    opts: EnumOptions,
    mut visit: F,
) -> Result<usize>
where
    F: FnMut(&Element, &Element) -> Result<()>,
{
    if max_ambient.is_none() && max_source.is_none() && !f.source().is_finite() {
        return Err(Error::InvalidParameters(format!(
            "{} is infinite; a length cutoff is required",
            f.source().label()
        )));
    }
    let pool = pool(opts.workers)?;
    let mut layer: Vec<Pair> = vec![(f.source().identity(), f.target().identity())];
    let mut total = 1usize;
    let mut len = 0usize;
    loop {
        for (w, x) in &layer {
            visit(w, x)?;
        }
        if max_source.is_some_and(|m| len >= m) {
            break;
        }
        let mut next: Vec<Pair> = match &pool {
            Some(p) => p.install(|| layer.par_iter().flat_map_iter(|p| children(f, p, max_ambient)).collect()),
            None => layer.iter().flat_map(|p| children(f, p, max_ambient)).collect(),
        };
        if next.is_empty() {
            break;
        }
        next.sort_unstable_by(|a, b| a.0.key().cmp(b.0.key()));
        total += next.len();
        if total > opts.budget {
            return Err(Error::ResourceLimit { budget: opts.budget });
        }
        layer = next;
        len += 1;
    }
    Ok(total)
}

fn series_from_counts(counts: Vec<u64>, order: Option<usize>) -> QSeries {
    QSeries::from_counts(&counts, order)
}

fn bump(counts: &mut Vec<u64>, k: usize) {
    if counts.len() <= k {
        counts.resize(k + 1, 0);
    }
    counts[k] += 1;
}

/// An unfolding series together with the number of source elements visited.
#[derive(Debug, Clone)]
pub struct UnfoldingSeries {
    pub series: QSeries,
    pub elements: usize,
}

/// `Σ_{w ∈ Ŵ} q^{ℓ(φ(w))}` up to `q^L`, or exactly when `L` is `None` (finite
/// sources only).
pub fn unfolding_series_bruteforce(f: &Folding, max_len: Option<usize>, opts: EnumOptions) -> Result<UnfoldingSeries> {
    let mut counts = vec![0u64; max_len.map_or(1, |l| l + 1)];
    let elements = walk_folding(f, max_len, None, opts, |_, x| {
        bump(&mut counts, x.length());
        Ok(())
    })?;
    Ok(UnfoldingSeries { series: series_from_counts(counts, max_len), elements })
}

/// An element where a block of the partition has mixed ascents and descents.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Violation {
    /// The target element, as a reduced word in table labels.
    pub element: String,
    /// The offending block, in table labels.
    pub block: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_WITNESSES: usize = 16;

fn block_violation(target: &CoxeterSystem, x: &Element, blocks: &[Vec<usize>]) -> Option<Violation> {
    for block in blocks {
        let mut desc = block.iter().map(|&s| target.is_right_descent(x, s));
        let first = desc.next()?;
        if desc.any(|d| d != first) {
            let base = target.index_base();
            return Some(Violation {
                element: target.format_word(&target.shortlex_normal_form(x)),
                block: block.iter().map(|s| s + base).collect(),
            });
        }
    }
    None
}

/// Checks that every `φ(w)`, `ℓ(w) ≤ max_source`, ascends uniformly or
/// descends uniformly on each block. For an infinite source this is a finite
/// certificate only.
pub fn check_admissible(f: &Folding, max_source: usize, opts: EnumOptions) -> Result<AdmissibilityReport> {
    let blocks: Vec<Vec<usize>> = (0..f.source().rank()).map(|r| f.block(r)).collect();
    let mut violations = Vec::new();
    let checked = walk_folding(f, None, Some(max_source), opts, |_, x| {
        if violations.len() < MAX_WITNESSES {
            if let Some(v) = block_violation(f.target(), x, &blocks) {
                violations.push(v);
            }
        }
        Ok(())
    })?;
    Ok(AdmissibilityReport { checked, violations })
}

/// Admissibility of an arbitrary partition of the generators of `target`,
/// without a source system: the subgroup generated by the blocks' longest
/// elements is closed up by products of at most `max_generators` of them.
pub fn check_partition_admissible(
    target: &CoxeterSystem,
    blocks: &[Vec<usize>],
    max_generators: usize,
    opts: EnumOptions,
) -> Result<AdmissibilityReport> {
    let mut tops = Vec::new();
    for b in blocks {
        let guard = 4 * target.rank() * target.rank();
        tops.push(longest_element(target, b, guard).map_err(|_| {
            Error::InvalidFolding(format!("block {b:?} does not generate a finite parabolic"))
        })?);
    }
    let mut seen = HashSet::new();
    seen.insert(target.identity().key().clone());
    let mut frontier = vec![target.identity()];
    let mut violations = Vec::new();
    let mut checked = 0;
    for depth in 0..=max_generators {
        for x in &frontier {
            checked += 1;
            if violations.len() < MAX_WITNESSES {
                if let Some(v) = block_violation(target, x, blocks) {
                    violations.push(v);
                }
            }
        }
        if depth == max_generators {
            break;
        }
        let mut next = Vec::new();
        for x in &frontier {
            for t in &tops {
                let y = target.multiply(x, t);
                if seen.insert(y.key().clone()) {
                    next.push(y);
                }
            }
        }
        if seen.len() > opts.budget {
            return Err(Error::ResourceLimit { budget: opts.budget });
        }
        next.sort_by(|a, b| a.key().cmp(b.key()));
        frontier = next;
    }
    Ok(AdmissibilityReport { checked, violations })
}

/// Failures of the three structural laws of an unfolding map.
#[derive(Debug, Clone, Default, Serialize)]
pub struct LawReport {
    pub elements: usize,
    /// `ℓ(φ(w))` differs from the sum of `ℓ(φ(r))` over a reduced word of `w`.
    pub additivity_failures: usize,
    /// `wr < w` disagrees with `φ(w)s < φ(w)` for some `s` in the block of `r`.
    pub descent_failures: usize,
    /// `φ(wv) ≠ φ(w)φ(v)` for some short `v`.
    pub homomorphism_failures: usize,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.additivity_failures == 0 && self.descent_failures == 0 && self.homomorphism_failures == 0
    }
}

/// Checks length additivity, descent transfer and `φ(wv) = φ(w)φ(v)` (for
/// `v` of source length at most 2) on every `w` with `ℓ(φ(w)) ≤ max_ambient`.
pub fn check_unfolding_laws(f: &Folding, max_ambient: usize, opts: EnumOptions) -> Result<LawReport> {
    let src = f.source();
    let tgt = f.target();
    let block_len: Vec<usize> = (0..src.rank()).map(|r| f.unfold_element(r).length()).collect();
    let blocks: Vec<Vec<usize>> = (0..src.rank()).map(|r| f.block(r)).collect();
    let mut short = Vec::new();
    walk_folding(f, None, Some(2), opts, |w, x| {
        short.push((w.clone(), x.clone()));
        Ok(())
    })?;
    let mut rep = LawReport::default();
    rep.elements = walk_folding(f, Some(max_ambient), None, opts, |w, x| {
        let word = src.reduced_word(w);
        let sum: usize = word.letters().iter().map(|&r| block_len[r]).sum();
        if sum != x.length() {
            rep.additivity_failures += 1;
        }
        for (r, block) in blocks.iter().enumerate().take(src.rank()) {
            let down = src.is_right_descent(w, r);
            if block.iter().any(|&s| tgt.is_right_descent(x, s) != down) {
                rep.descent_failures += 1;
            }
        }
        for (v, y) in &short {
            let wv = src.multiply(w, v);
            if f.phi(&wv).key() != tgt.multiply(x, y).key() {
                rep.homomorphism_failures += 1;
            }
        }
        Ok(())
    })?;
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub elements: usize,
    /// Unfolding series of the whole source.
    pub full: QSeries,
    /// Over the minimal coset representatives `Ŵ^Ĵ`.
    pub coset: QSeries,
    /// Over the parabolic `Ŵ_Ĵ`.
    pub parabolic: QSeries,
    /// `φ(Ŵ^Ĵ) ⊆ W^J` on everything visited.
    pub coset_images_ok: bool,
    /// `φ(Ŵ_Ĵ) ⊆ W_J` on everything visited.
    pub parabolic_images_ok: bool,
}

impl FactorizationReport {
    pub fn product_matches(&self) -> bool {
        self.coset.mul(&self.parabolic) == self.full
    }

    pub fn passed(&self) -> bool {
        self.product_matches() && self.coset_images_ok && self.parabolic_images_ok
    }
}

/// Splits the unfolding series along `Ŵ = Ŵ^Ĵ · Ŵ_Ĵ` and checks that `φ`
/// respects the matching parabolic data in `W`, with `J` the union of the
/// blocks of `Ĵ`.
pub fn folding_factorization_check(
    f: &Folding,
    j_hat: &[usize],
    max_len: Option<usize>,
    opts: EnumOptions,
) -> Result<FactorizationReport> {
    let src = f.source();
    let tgt = f.target();
    let j = f.lift_subset(j_hat);
    let n = max_len.map_or(1, |l| l + 1);
    let (mut full, mut coset, mut parabolic) = (vec![0u64; n], vec![0u64; n], vec![0u64; n]);
    let (mut coset_ok, mut para_ok) = (true, true);
    let elements = walk_folding(f, max_len, None, opts, |w, x| {
        let k = x.length();
        bump(&mut full, k);
        if j_hat.iter().all(|&r| !src.is_right_descent(w, r)) {
            bump(&mut coset, k);
            coset_ok &= j.iter().all(|&s| !tgt.is_right_descent(x, s));
        }
        if src.in_parabolic(w, j_hat) {
            bump(&mut parabolic, k);
            para_ok &= tgt.in_parabolic(x, &j);
        }
        Ok(())
    })?;
    Ok(FactorizationReport {
        elements,
        full: series_from_counts(full, max_len),
        coset: series_from_counts(coset, max_len),
        parabolic: series_from_counts(parabolic, max_len),
        coset_images_ok: coset_ok,
        parabolic_images_ok: para_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_system;
    use crate::folding::{standard_folding, FamilyId};

    fn fold(name: &str, n: usize, m: Option<usize>) -> Folding {
        standard_folding(FamilyId::parse(name, n, m).unwrap()).unwrap()
    }

    #[test]
    fn b2_in_a3() {
        let f = fold("Bn-A2n-1", 2, None);
        let u = unfolding_series_bruteforce(&f, None, EnumOptions::default()).unwrap();
        assert_eq!(u.series, QSeries::from_i64s(&[1, 1, 1, 2, 1, 1, 1], None));
        assert_eq!(u.elements, 8);
    }

    #[test]
    fn zero_cutoff() {
        let f = fold("affC-affA2n", 2, None);
        let u = unfolding_series_bruteforce(&f, Some(0), EnumOptions::default()).unwrap();
        assert_eq!(u.series, QSeries::from_i64s(&[1], Some(0)));
    }

    #[test]
    fn infinite_dihedral_doubles() {
        let f = fold("affA-affA", 2, Some(2));
        let u = unfolding_series_bruteforce(&f, Some(8), EnumOptions::default()).unwrap();
        assert_eq!(u.series, QSeries::from_i64s(&[1, 0, 2, 0, 2, 0, 2, 0, 2], Some(8)));
    }

    #[test]
    fn admissibility() {
        let f = fold("Bn-A2n-1", 2, None);
        assert!(check_admissible(&f, 0, EnumOptions::default()).unwrap().passed());
        let rep = check_admissible(&f, 4, EnumOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 8);
        let a3 = build_system("A3").unwrap();
        let good = check_partition_admissible(&a3, &[vec![0, 2], vec![1]], 6, EnumOptions::default()).unwrap();
        assert!(good.passed());
        let bad = check_partition_admissible(&a3, &[vec![0, 1], vec![2]], 6, EnumOptions::default()).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn factorization_b2() {
        let f = fold("Bn-A2n-1", 2, None);
        let rep = folding_factorization_check(&f, &[1], None, EnumOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.parabolic, QSeries::from_i64s(&[1, 1], None));
        let empty = folding_factorization_check(&f, &[], None, EnumOptions::default()).unwrap();
        assert_eq!(empty.parabolic, QSeries::one());
        assert!(empty.passed());
    }

    #[test]
    fn laws_hold_on_small_families() {
        for (name, n, m) in [("Bn-A2n", 2, None), ("I2-An", 4, None), ("affC-affC2n", 2, None)] {
            let rep = check_unfolding_laws(&fold(name, n, m), 8, EnumOptions::default()).unwrap();
            assert!(rep.passed(), "{name}: {rep:?}");
        }
    }
}
