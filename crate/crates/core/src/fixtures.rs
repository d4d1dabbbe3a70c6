//! Small named presentations used throughout the tests and documentation.

use alloc::string::String;
use alloc::vec::Vec;

use crate::quiver::{Arrow, BoundQuiver, Quiver, SkewedGentleTriple};

fn triple(name: &str, vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[(&str, &str)], special: &[&str]) -> SkewedGentleTriple {
    let quiver = Quiver::new(
        vertices.iter().copied(),
        arrows.iter().map(|&(n, s, t)| Arrow::new(n, s, t)),
    )
    .expect("fixture quiver");
    let rels: Vec<(String, String)> = relations
        .iter()
        .map(|&(o, i)| (o.into(), i.into()))
        .collect();
    let pair = BoundQuiver::new(quiver, rels).expect("fixture relations");
    SkewedGentleTriple::new(name, pair, special.iter().copied()).expect("fixture special set")
}

/// Two-cycle `a: 1 -> 2`, `b: 2 -> 1` with both compositions zero.
pub fn fix_a() -> SkewedGentleTriple {
    triple(
        "A",
        &["1", "2"],
        &[("a", "1", "2"), ("b", "2", "1")],
        &[("a", "b"), ("b", "a")],
        &[],
    )
}

pub fn fix_a2() -> SkewedGentleTriple {
    fix_a().with_special(["2"]).unwrap()
}

/// Oriented triangle `1 -> 2 -> 3 -> 1` with every composition zero.
pub fn fix_b() -> SkewedGentleTriple {
    triple(
        "B",
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("g", "3", "1")],
        &[("a", "g"), ("b", "a"), ("g", "b")],
        &[],
    )
}

pub fn fix_b3() -> SkewedGentleTriple {
    fix_b().with_special(["3"]).unwrap()
}

/// A single arrow `a: 1 -> 2`.
pub fn fix_c() -> SkewedGentleTriple {
    triple("C", &["1", "2"], &[("a", "1", "2")], &[], &[])
}

pub fn fix_c1() -> SkewedGentleTriple {
    fix_c().with_special(["1"]).unwrap()
}

/// Zero-relation skeleton of a quiver whose original ideal carries the
/// commutativity relation `g1 b1 = g2 b2` next to the zero relation `b2 a`.
/// Both terms of the commutativity are recorded as zero, and the zero
/// relation is transported along the commutativity to `b1 a`. The arrow `a`
/// then has two relation partners at the branching vertex 2.
pub fn fix_d() -> SkewedGentleTriple {
    triple(
        "D",
        &["1", "2", "3", "4", "5"],
        &[
            ("a", "5", "2"),
            ("b1", "2", "3"),
            ("b2", "2", "4"),
            ("g1", "3", "1"),
            ("g2", "4", "1"),
        ],
        &[("g1", "b1"), ("g2", "b2"), ("b2", "a"), ("b1", "a")],
        &[],
    )
}

/// Every fixture that is a valid skewed-gentle triple.
pub fn valid() -> Vec<SkewedGentleTriple> {
    alloc::vec![fix_a(), fix_a2(), fix_b(), fix_b3(), fix_c(), fix_c1()]
}
