//! Bruhat order.
//!
//! `v ≤ w` is decided with the lifting property: if `s` is a right descent of
//! `w`, then `v ≤ w` iff `vs ≤ ws` when `s` is also a right descent of `v`,
//! and iff `v ≤ ws` otherwise. Walking one fixed reduced word of `w` from the
//! right applies this rule letter by letter, which is the same as asking
//! whether that word contains a reduced subword for `v`.

use crate::coxeter::element::Element;
use crate::coxeter::system::CoxeterSystem;

pub fn bruhat_leq(sys: &CoxeterSystem, v: &Element, w: &Element) -> bool {
    if v.length() > w.length() {
        return false;
    }
    let word = sys.reduced_word(w);
    let mut cur = v.clone();
    for (pos, &s) in word.letters().iter().enumerate().rev() {
        if cur.length() > pos + 1 {
            return false;
        }
        if sys.is_right_descent(&cur, s) {
            cur = sys.mul_gen(&cur, s);
        }
    }
    cur.is_identity()
}

/// Covering relations among `elements`: index pairs `(v, w)` with
/// `ℓ(w) = ℓ(v) + 1` and `v ≤ w`.
pub fn hasse_edges(sys: &CoxeterSystem, elements: &[Element]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, v) in elements.iter().enumerate() {
        for (j, w) in elements.iter().enumerate() {
            if w.length() == v.length() + 1 && bruhat_leq(sys, v, w) {
                edges.push((i, j));
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::system::build_system;

    #[test]
    fn examples() {
        let a3 = build_system("A3").unwrap();
        let el = |l: &[usize]| a3.element_from_labels(l).unwrap();
        assert!(bruhat_leq(&a3, &a3.identity(), &el(&[1, 2, 3, 2])));
        assert!(!bruhat_leq(&a3, &el(&[2]), &el(&[1, 3])));
        assert!(bruhat_leq(&a3, &el(&[1, 3]), &el(&[2, 1, 3, 2])));
        assert!(!bruhat_leq(&a3, &el(&[1, 2]), &el(&[2, 1])));
    }

    #[test]
    fn a1_hasse() {
        let a1 = build_system("A1").unwrap();
        let all = vec![a1.identity(), a1.generator(0).unwrap()];
        assert_eq!(hasse_edges(&a1, &all), vec![(0, 1)]);
    }
}
