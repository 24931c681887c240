//! The two worked examples as ready-made quivers and relations.

use alloc::vec::Vec;

use crate::element::Element;
use crate::field::{Field, Rational};
use crate::quiver::{Path, Quiver};

/// Six vertices, eight arrows: `a: v1→v2, b: v2→v4, c: v1→v3, d: v3→v4,
/// e: v4→v6, f: v3→v5, g: v5→v6, h: v6→v1`.
pub fn example1_quiver() -> Quiver {
    Quiver::from_names(
        &["v1", "v2", "v3", "v4", "v5", "v6"],
        &[
            ("a", "v1", "v2"),
            ("b", "v2", "v4"),
            ("c", "v1", "v3"),
            ("d", "v3", "v4"),
            ("e", "v4", "v6"),
            ("f", "v3", "v5"),
            ("g", "v5", "v6"),
            ("h", "v6", "v1"),
        ],
    )
    .expect("valid quiver")
}

/// The monomial relations `ab, be, de, eh, hc`.
pub fn example1_tips(q: &Quiver) -> Vec<Path> {
    ["ab", "be", "de", "eh", "hc"]
        .iter()
        .map(|w| q.word(w).expect("path in example 1"))
        .collect()
}

/// Four vertices, five arrows: `a: v1→v2, b: v2→v4, c: v1→v3, d: v3→v4, e: v4→v1`.
pub fn example2_quiver() -> Quiver {
    Quiver::from_names(
        &["v1", "v2", "v3", "v4"],
        &[
            ("a", "v1", "v2"),
            ("b", "v2", "v4"),
            ("c", "v1", "v3"),
            ("d", "v3", "v4"),
            ("e", "v4", "v1"),
        ],
    )
    .expect("valid quiver")
}

/// `ab - cd, be, ea`.
pub fn example2_relations(q: &Quiver) -> Vec<Element<Rational>> {
    let one = Rational::one(&());
    let w = |s: &str| q.word(s).expect("path in example 2");
    alloc::vec![
        Element::from_terms([(w("ab"), one.clone()), (w("cd"), one.neg())]),
        Element::monomial(w("be"), one.clone()),
        Element::monomial(w("ea"), one),
    ]
}
