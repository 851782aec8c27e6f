//! Layered breadth-first enumeration.
//!
//! Each non-identity element `c` has exactly one canonical parent `c·s`
//! where `s` is the smallest right descent of `c`. Expanding `w` by an
//! ascent `s` and keeping the child only when `s` is its smallest descent
//! therefore produces every element once, with no set of seen keys.

use rayon::prelude::*;

use crate::coxeter::element::{Element, Word};
use crate::coxeter::system::CoxeterSystem;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    /// Maximum number of elements produced before giving up.
    pub budget: usize,
    /// Worker threads used to expand a layer. 1 runs inline.
    pub workers: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: DEFAULT_BUDGET, workers: 1 }
    }
}

impl EnumOptions {
    pub fn with_workers(workers: usize) -> Self {
        EnumOptions { workers: workers.max(1), ..Self::default() }
    }
}

fn children(sys: &CoxeterSystem, w: &Element, gens: &[usize]) -> Vec<Element> {
    let mut out = Vec::new();
    for &s in gens {
        if sys.is_right_descent(w, s) {
            continue;
        }
        let c = sys.mul_gen(w, s);
        if sys.min_right_descent_in(&c, gens) == Some(s) {
            out.push(c);
        }
    }
    out
}

fn expand(sys: &CoxeterSystem, layer: &[Element], gens: &[usize], pool: Option<&rayon::ThreadPool>) -> Vec<Element> {
    let mut next: Vec<Element> = match pool {
        Some(pool) => pool.install(|| layer.par_iter().flat_map_iter(|w| children(sys, w, gens)).collect()),
        None => layer.iter().flat_map(|w| children(sys, w, gens)).collect(),
    };
    next.sort_unstable_by(|a, b| a.key.cmp(&b.key));
    next
}

/// Visits the layers of `W_gens` (lengths `0..=max_len`, or until the group
/// is exhausted when `max_len` is `None`) in order. Each layer is sorted by
/// canonical key. `gens` must be ascending.
pub fn for_each_layer<F>(
    sys: &CoxeterSystem,
    max_len: Option<usize>,
    gens: &[usize],
    opts: EnumOptions,
    mut visit: F,
) -> Result<usize>
where
    F: FnMut(usize, &[Element]) -> Result<()>,
{
    if max_len.is_none() && !sys.is_finite() && gens.len() == sys.rank() {
        return Err(Error::InvalidParameters(format!(
            "{} is infinite; a length cutoff is required",
            sys.label()
        )));
    }
    for &g in gens {
        if g >= sys.rank() {
            return Err(Error::IndexOutOfRange { index: g, rank: sys.rank() });
        }
    }
    let pool = if opts.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .map_err(|e| Error::InvalidParameters(e.to_string()))?,
        )
    } else {
        None
    };
    let mut layer = vec![sys.identity()];
    let mut total = 1usize;
    let mut len = 0usize;
    loop {
        visit(len, &layer)?;
        if max_len.is_some_and(|m| len >= m) {
            break;
        }
        let next = expand(sys, &layer, gens, pool.as_ref());
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > opts.budget {
            return Err(Error::ResourceLimit { budget: opts.budget });
        }
        layer = next;
        len += 1;
    }
    Ok(total)
}

fn all_gens(sys: &CoxeterSystem) -> Vec<usize> {
    (0..sys.rank()).collect()
}

/// Every element of length at most `max_len`, grouped by length.
pub fn enumerate_up_to(sys: &CoxeterSystem, max_len: usize, opts: EnumOptions) -> Result<Vec<Vec<Element>>> {
    collect_layers(sys, Some(max_len), &all_gens(sys), opts)
}

/// Every element of a finite group, grouped by length.
pub fn enumerate_all(sys: &CoxeterSystem, opts: EnumOptions) -> Result<Vec<Vec<Element>>> {
    collect_layers(sys, None, &all_gens(sys), opts)
}

/// Elements of the parabolic subgroup `W_J` up to `max_len` (or all of it).
pub fn enumerate_parabolic(
    sys: &CoxeterSystem,
    gens: &[usize],
    max_len: Option<usize>,
    opts: EnumOptions,
) -> Result<Vec<Vec<Element>>> {
    let mut j = gens.to_vec();
    j.sort_unstable();
    j.dedup();
    collect_layers(sys, max_len, &j, opts)
}

fn collect_layers(
    sys: &CoxeterSystem,
    max_len: Option<usize>,
    gens: &[usize],
    opts: EnumOptions,
) -> Result<Vec<Vec<Element>>> {
    let mut layers = Vec::new();
    for_each_layer(sys, max_len, gens, opts, |_, layer| {
        layers.push(layer.to_vec());
        Ok(())
    })?;
    Ok(layers)
}

/// Number of elements of each length, `0..=max_len` (or the whole group).
pub fn length_histogram(sys: &CoxeterSystem, max_len: Option<usize>, opts: EnumOptions) -> Result<Vec<u64>> {
    let mut counts = Vec::new();
    for_each_layer(sys, max_len, &all_gens(sys), opts, |_, layer| {
        counts.push(layer.len() as u64);
        Ok(())
    })?;
    if let Some(m) = max_len {
        counts.resize(m + 1, 0);
    }
    Ok(counts)
}

/// `(w^J, w_J)` with `w = w^J · w_J`, `w^J` minimal in its coset `w W_J`.
pub fn parabolic_decompose(sys: &CoxeterSystem, w: &Element, j: &[usize]) -> (Element, Element) {
    let mut cur = w.clone();
    let mut stripped = Vec::new();
    while let Some(s) = j.iter().copied().find(|&s| s < sys.rank() && sys.is_right_descent(&cur, s)) {
        cur = sys.mul_gen(&cur, s);
        stripped.push(s);
    }
    stripped.reverse();
    let part = sys.element_from_word(&Word(stripped)).expect("letters in range");
    (cur, part)
}

/// True iff `w` has no right descent in `J`.
pub fn is_minimal_coset_rep(sys: &CoxeterSystem, w: &Element, j: &[usize]) -> bool {
    j.iter().all(|&s| !sys.is_right_descent(w, s))
}

/// Elements of `W^J` with length at most `max_len` (or all of them for a
/// finite group), grouped by length.
pub fn minimal_coset_reps(
    sys: &CoxeterSystem,
    j: &[usize],
    max_len: Option<usize>,
    opts: EnumOptions,
) -> Result<Vec<Vec<Element>>> {
    let mut layers = Vec::new();
    for_each_layer(sys, max_len, &all_gens(sys), opts, |_, layer| {
        layers.push(layer.iter().filter(|w| is_minimal_coset_rep(sys, w, j)).cloned().collect());
        Ok(())
    })?;
    while layers.last().is_some_and(|l: &Vec<Element>| l.is_empty()) && layers.len() > 1 {
        layers.pop();
    }
    Ok(layers)
}

/// Longest element of the parabolic `W_J`, built by climbing ascents. Only
/// terminates when `W_J` is finite, so callers pass a length guard.
pub fn longest_element(sys: &CoxeterSystem, j: &[usize], guard: usize) -> Result<Element> {
    let mut w = sys.identity();
    while let Some(s) = j.iter().copied().find(|&s| !sys.is_right_descent(&w, s)) {
        if s >= sys.rank() {
            return Err(Error::IndexOutOfRange { index: s, rank: sys.rank() });
        }
        w = sys.mul_gen(&w, s);
        if w.length() > guard {
            return Err(Error::InvalidParameters(format!(
                "parabolic subgroup on {j:?} has no element of length ≤ {guard} at the top"
            )));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::system::build_system;

    fn hist(label: &str, l: Option<usize>) -> Vec<u64> {
        length_histogram(&build_system(label).unwrap(), l, EnumOptions::default()).unwrap()
    }

    #[test]
    fn a2_histogram() {
        assert_eq!(hist("A2", Some(3)), vec![1, 2, 2, 1]);
    }

    #[test]
    fn affine_a1_histogram() {
        assert_eq!(hist("affine-A1", Some(4)), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn zero_cutoff_is_identity() {
        for label in ["A3", "affine-C2", "I2(9)"] {
            let layers = enumerate_up_to(&build_system(label).unwrap(), 0, EnumOptions::default()).unwrap();
            assert_eq!(layers.len(), 1);
            assert!(layers[0][0].is_identity());
        }
    }

    #[test]
    fn group_orders() {
        let order = |label: &str| hist(label, None).iter().sum::<u64>();
        assert_eq!(order("A3"), 24);
        assert_eq!(order("B3"), 48);
        assert_eq!(order("D4"), 192);
        assert_eq!(order("I2(7)"), 14);
    }

    #[test]
    fn budget_is_enforced() {
        let sys = build_system("A4").unwrap();
        let r = length_histogram(&sys, None, EnumOptions { budget: 50, workers: 1 });
        assert!(matches!(r, Err(Error::ResourceLimit { budget: 50 })));
    }

    #[test]
    fn decomposition_examples() {
        let a3 = build_system("A3").unwrap();
        let w = a3.element_from_labels(&[2, 1, 3, 2]).unwrap();
        let (wj, w_j) = parabolic_decompose(&a3, &w, &[1]);
        assert_eq!(wj, a3.element_from_labels(&[2, 1, 3]).unwrap());
        assert_eq!(w_j, a3.element_from_labels(&[2]).unwrap());

        let b2 = build_system("I2(4)").unwrap();
        let w = b2.element_from_labels(&[1, 2, 1]).unwrap();
        let (wj, w_j) = parabolic_decompose(&b2, &w, &[1]);
        assert_eq!(wj, w);
        assert!(w_j.is_identity());
    }

    #[test]
    fn coset_reps_of_b3() {
        let b3 = build_system("B3").unwrap();
        let reps = minimal_coset_reps(&b3, &[1, 2], None, EnumOptions::default()).unwrap();
        let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1; 6]);
        let a3 = build_system("A3").unwrap();
        let reps = minimal_coset_reps(&a3, &[0, 1, 2], None, EnumOptions::default()).unwrap();
        assert_eq!(reps.concat().len(), 1);
    }

    #[test]
    fn longest_elements() {
        let a3 = build_system("A3").unwrap();
        assert_eq!(longest_element(&a3, &[0, 1, 2], 100).unwrap().length(), 6);
        assert_eq!(a3.right_descents(&longest_element(&a3, &[0, 1, 2], 100).unwrap()), vec![0, 1, 2]);
        let c = build_system("affine-C2").unwrap();
        assert_eq!(longest_element(&c, &[0, 1], 100).unwrap().length(), 4);
        assert!(longest_element(&c, &[0, 1, 2], 50).is_err());
    }

    #[test]
    fn workers_do_not_change_layers() {
        let sys = build_system("affine-C2").unwrap();
        let one = enumerate_up_to(&sys, 9, EnumOptions::with_workers(1)).unwrap();
        let four = enumerate_up_to(&sys, 9, EnumOptions::with_workers(4)).unwrap();
        assert_eq!(one, four);
    }
}
