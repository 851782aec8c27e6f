//! Occurrence counts of the end generators in affine B and C.
//!
//! In `B̃_n` the generator `s_0` only meets the rest of the graph through
//! even braid relations, so the number of times it occurs is the same in
//! every reduced word. `C̃_n` has two such generators, `s_0` and `s_n`.

use std::collections::{BTreeSet, HashMap};

use crate::coxeter::{for_each_layer, CoxeterSystem, ElementKey, EnumOptions, SystemType};
use crate::error::{Error, Result};
use crate::qseries::StatSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReinerKind {
    AffB,
    AffC,
}

impl ReinerKind {
    pub fn of(sys: &CoxeterSystem) -> Result<(Self, usize)> {
        match sys.system_type() {
            SystemType::AffineB(n) => Ok((ReinerKind::AffB, n)),
            SystemType::AffineC(n) => Ok((ReinerKind::AffC, n)),
            _ => Err(Error::InvalidParameters(format!(
                "occurrence statistics need an affine B or C system, got {}",
                sys.label()
            ))),
        }
    }

    /// Generators counted by `a` and `b` (`None`: `b` is unused).
    fn counted(self, n: usize) -> (usize, Option<usize>) {
        match self {
            ReinerKind::AffB => (0, None),
            ReinerKind::AffC => (0, Some(n)),
        }
    }
}

/// `Σ a^{r(w)} b^{s(w)} q^{ℓ(w)}` over `ℓ(w) ≤ max_len`, with the counts
/// read off the ShortLex normal form.
pub fn reiner_stats_bruteforce(sys: &CoxeterSystem, max_len: usize, opts: EnumOptions) -> Result<StatSeries> {
    let (kind, n) = ReinerKind::of(sys)?;
    let (ga, gb) = kind.counted(n);
    let gens: Vec<usize> = (0..sys.rank()).collect();
    let mut out = StatSeries::zero(max_len);
    for_each_layer(sys, Some(max_len), &gens, opts, |len, layer| {
        for w in layer {
            let nf = sys.shortlex_normal_form(w);
            let a = nf.letters().iter().filter(|&&s| s == ga).count() as u32;
            let b = gb.map_or(0, |gb| nf.letters().iter().filter(|&&s| s == gb).count() as u32);
            out.add_term((a, b, len as u32), 1.into());
        }
        Ok(())
    })?;
    Ok(out)
}

/// For every element with `ℓ(w) ≤ max_len`, collects the counts over all of
/// its reduced words and reports how many elements were checked and which
/// (if any) had more than one value.
pub fn reiner_stats_well_defined(
    sys: &CoxeterSystem,
    max_len: usize,
    opts: EnumOptions,
) -> Result<(usize, Vec<String>)> {
    let (kind, n) = ReinerKind::of(sys)?;
    let (ga, gb) = kind.counted(n);
    let gens: Vec<usize> = (0..sys.rank()).collect();
    let mut prev: HashMap<ElementKey, BTreeSet<(u32, u32)>> = HashMap::new();
    let mut bad = Vec::new();
    let mut checked = 0;
    for_each_layer(sys, Some(max_len), &gens, opts, |len, layer| {
        let mut cur = HashMap::with_capacity(layer.len());
        for w in layer {
            checked += 1;
            let mut set = BTreeSet::new();
            if len == 0 {
                set.insert((0, 0));
            }
            for s in sys.right_descents(w) {
                let below = sys.mul_gen(w, s);
                let da = u32::from(s == ga);
                let db = u32::from(Some(s) == gb);
                for &(a, b) in &prev[below.key()] {
                    set.insert((a + da, b + db));
                }
            }
            if set.len() != 1 {
                bad.push(sys.format_word(&sys.shortlex_normal_form(w)));
            }
            cur.insert(w.key().clone(), set);
        }
        prev = cur;
        Ok(())
    })?;
    Ok((checked, bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_system;

    #[test]
    fn c2_low_degrees() {
        let c2 = build_system("affine-C2").unwrap();
        let s = reiner_stats_bruteforce(&c2, 2, EnumOptions::default()).unwrap();
        assert_eq!(s.coeff(0, 0, 0), 1.into());
        assert_eq!(s.coeff(1, 0, 1), 1.into());
        assert_eq!(s.coeff(0, 0, 1), 1.into());
        assert_eq!(s.coeff(0, 1, 1), 1.into());
        // s0s1, s1s0, s1s2, s2s1, s0s2.
        assert_eq!(s.coeff(1, 0, 2), 2.into());
        assert_eq!(s.coeff(0, 1, 2), 2.into());
        assert_eq!(s.coeff(1, 1, 2), 1.into());
        assert_eq!(StatSeries::one(0), reiner_stats_bruteforce(&c2, 0, EnumOptions::default()).unwrap());
    }

    #[test]
    fn wrong_type() {
        let a3 = build_system("A3").unwrap();
        assert!(matches!(reiner_stats_bruteforce(&a3, 2, EnumOptions::default()), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn well_defined_small() {
        let c2 = build_system("affine-C2").unwrap();
        let (checked, bad) = reiner_stats_well_defined(&c2, 6, EnumOptions::default()).unwrap();
        assert!(checked > 1);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
