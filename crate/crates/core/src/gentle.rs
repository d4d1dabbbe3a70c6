//! Special-biserial, gentle and skewed-gentle checks with violation witnesses.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::construct::build_sp_pair;
use crate::error::{Error, Result};
use crate::quiver::{BoundQuiver, Finiteness, SkewedGentleTriple, VertexId};

/// Stable identifiers for the rule a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// More than two arrows start or end at a vertex.
    Sb1,
    /// An arrow has two relation-free neighbours on the same side.
    Sb2,
    /// An arrow has two relation partners on the same side.
    G1,
    /// A relation that is not a composable length-2 zero relation.
    G2,
    /// A relation-free oriented cycle.
    Fd,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Sb1 => "SB1",
            Rule::Sb2 => "SB2",
            Rule::G1 => "G1",
            Rule::G2 => "G2",
            Rule::Fd => "FD",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub rule: Rule,
    pub items: Vec<String>,
}

impl Violation {
    fn new(rule: Rule, items: Vec<String>) -> Self {
        Violation { rule, items }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub special_biserial: bool,
    pub gentle: bool,
    pub finite_dimensional: bool,
    pub skewed_gentle: bool,
    pub violations: Vec<Violation>,
}

/// Violations of the two special-biserial conditions, deduplicated and sorted.
pub fn special_biserial_violations(bq: &BoundQuiver) -> Vec<Violation> {
    let q = bq.quiver();
    let mut out = BTreeSet::new();
    for v in q.vertices() {
        if q.out_arrows(v).count() > 2 || q.in_arrows(v).count() > 2 {
            out.insert(Violation::new(Rule::Sb1, vec![v.clone()]));
        }
    }
    for a in q.arrows() {
        // arrows applied right before `a` without a relation
        let before: Vec<String> = q
            .in_arrows(&a.source)
            .filter(|b| !bq.is_relation(&a.name, &b.name))
            .map(|b| b.name.clone())
            .collect();
        if before.len() > 1 {
            let mut items = vec![a.name.clone()];
            items.extend(before);
            out.insert(Violation::new(Rule::Sb2, items));
        }
        let after: Vec<String> = bq.free_successors(a).map(|g| g.name.clone()).collect();
        if after.len() > 1 {
            let mut items = vec![a.name.clone()];
            items.extend(after);
            out.insert(Violation::new(Rule::Sb2, items));
        }
    }
    out.into_iter().collect()
}

pub fn is_special_biserial(bq: &BoundQuiver) -> bool {
    special_biserial_violations(bq).is_empty()
}

/// Special-biserial violations plus relation-partner and relation-shape violations.
pub fn gentle_violations(bq: &BoundQuiver) -> Vec<Violation> {
    let q = bq.quiver();
    let mut out: BTreeSet<Violation> = special_biserial_violations(bq).into_iter().collect();
    for a in q.arrows() {
        let before: Vec<String> = q
            .in_arrows(&a.source)
            .filter(|b| bq.is_relation(&a.name, &b.name))
            .map(|b| b.name.clone())
            .collect();
        if before.len() > 1 {
            let mut items = vec![a.name.clone()];
            items.extend(before);
            out.insert(Violation::new(Rule::G1, items));
        }
        let after: Vec<String> = q
            .out_arrows(&a.target)
            .filter(|g| bq.is_relation(&g.name, &a.name))
            .map(|g| g.name.clone())
            .collect();
        if after.len() > 1 {
            let mut items = vec![a.name.clone()];
            items.extend(after);
            out.insert(Violation::new(Rule::G1, items));
        }
    }
    for (outer, inner) in bq.relations() {
        let composable = match (q.arrow(outer), q.arrow(inner)) {
            (Some(o), Some(i)) => i.target == o.source,
            _ => false,
        };
        if !composable {
            out.insert(Violation::new(Rule::G2, vec![outer.clone(), inner.clone()]));
        }
    }
    out.into_iter().collect()
}

pub fn is_gentle(bq: &BoundQuiver) -> bool {
    gentle_violations(bq).is_empty()
}

fn fd_violation(bq: &BoundQuiver) -> Option<Violation> {
    match bq.finiteness() {
        Finiteness::Finite => None,
        Finiteness::Infinite(witness) => Some(Violation::new(Rule::Fd, witness)),
    }
}

/// Gentle and finite dimensional.
pub(crate) fn is_admissible_gentle(bq: &BoundQuiver) -> bool {
    is_gentle(bq) && bq.is_finite_dimensional()
}

/// Flags for the base pair, and the skewed-gentle verdict obtained from the
/// pair with a squared-zero loop added at every special vertex.
pub fn validate_skewed_gentle(t: &SkewedGentleTriple) -> ValidationReport {
    let base = t.pair();
    let sb = special_biserial_violations(base);
    let gentle = gentle_violations(base);
    let fd = fd_violation(base);

    let mut all: BTreeSet<Violation> = gentle.iter().cloned().collect();
    all.extend(fd.iter().cloned());

    // the loop names are chosen fresh, so this cannot fail
    let sp = build_sp_pair(t).expect("fresh loop names always exist");
    let sp_gentle = gentle_violations(&sp);
    let sp_fd = fd_violation(&sp);
    let skewed_gentle = sp_gentle.is_empty() && sp_fd.is_none();
    all.extend(sp_gentle);
    all.extend(sp_fd);

    ValidationReport {
        special_biserial: sb.is_empty(),
        gentle: gentle.is_empty(),
        finite_dimensional: fd.is_none(),
        skewed_gentle,
        violations: all.into_iter().collect(),
    }
}

pub fn is_skewed_gentle(t: &SkewedGentleTriple) -> bool {
    validate_skewed_gentle(t).skewed_gentle
}

pub(crate) fn require_skewed_gentle(t: &SkewedGentleTriple) -> Result<()> {
    if is_skewed_gentle(t) {
        Ok(())
    } else {
        Err(Error::NotSkewedGentle)
    }
}

/// All special sets making `bq` skewed-gentle, ordered by size and then
/// lexicographically. Each subset is checked on its own.
pub fn admissible_special_sets(bq: &BoundQuiver) -> Result<Vec<BTreeSet<VertexId>>> {
    if !is_admissible_gentle(bq) {
        return Err(Error::NotGentle);
    }
    let vertices: Vec<&VertexId> = bq.quiver().vertices().iter().collect();
    let n = vertices.len();
    if n >= usize::BITS as usize {
        return Err(Error::LimitExceeded { cap: usize::BITS as usize - 1 });
    }
    let mut found: Vec<Vec<VertexId>> = Vec::new();
    for mask in 0usize..(1usize << n) {
        let subset: Vec<VertexId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| vertices[i].clone())
            .collect();
        let t = SkewedGentleTriple::new("", bq.clone(), subset.iter().cloned())?;
        if is_skewed_gentle(&t) {
            found.push(subset);
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found.into_iter().map(|s| s.into_iter().collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::{Arrow, Quiver};
    use alloc::string::ToString;

    fn sets(raw: &[&[&str]]) -> Vec<BTreeSet<VertexId>> {
        raw.iter()
            .map(|s| s.iter().map(|v| v.to_string()).collect())
            .collect()
    }

    #[test]
    fn special_biserial_examples() {
        assert!(is_special_biserial(fixtures::fix_a().pair()));

        let kronecker = BoundQuiver::new(
            Quiver::new(["1", "2"], [Arrow::new("x", "1", "2"), Arrow::new("y", "1", "2")]).unwrap(),
            [],
        )
        .unwrap();
        assert!(is_special_biserial(&kronecker));

        let star = BoundQuiver::new(
            Quiver::new(
                ["0", "1", "2", "3"],
                [Arrow::new("x", "0", "1"), Arrow::new("y", "0", "2"), Arrow::new("z", "0", "3")],
            )
            .unwrap(),
            [],
        )
        .unwrap();
        let v = special_biserial_violations(&star);
        assert_eq!(v, vec![Violation::new(Rule::Sb1, vec!["0".into()])]);
    }

    #[test]
    fn gentle_examples() {
        assert!(is_gentle(fixtures::fix_a().pair()));
        assert!(is_gentle(fixtures::fix_b().pair()));
        assert!(is_gentle(fixtures::fix_c().pair()));

        let d = gentle_violations(fixtures::fix_d().pair());
        assert!(!d.is_empty());
        assert!(d
            .iter()
            .any(|v| v.rule == Rule::G1 && v.items == ["a", "b1", "b2"]));
    }

    #[test]
    fn sb2_detected() {
        // two relation-free successors of `a`
        let bq = BoundQuiver::new(
            Quiver::new(
                ["0", "1", "2", "3"],
                [Arrow::new("a", "0", "1"), Arrow::new("x", "1", "2"), Arrow::new("y", "1", "3")],
            )
            .unwrap(),
            [],
        )
        .unwrap();
        assert!(!is_special_biserial(&bq));
        assert_eq!(
            special_biserial_violations(&bq),
            vec![Violation::new(Rule::Sb2, vec!["a".into(), "x".into(), "y".into()])]
        );
    }

    #[test]
    fn validate_examples() {
        let r = validate_skewed_gentle(&fixtures::fix_a2());
        assert!(r.skewed_gentle && r.gentle && r.special_biserial && r.finite_dimensional);
        assert!(r.violations.is_empty());

        let both = fixtures::fix_a().with_special(["1", "2"]).unwrap();
        let r = validate_skewed_gentle(&both);
        assert!(!r.skewed_gentle);
        assert!(r.gentle && r.finite_dimensional);
        let fd: Vec<_> = r.violations.iter().filter(|v| v.rule == Rule::Fd).collect();
        assert_eq!(fd.len(), 1);
        assert_eq!(fd[0].items, ["a", "sp_2", "b", "sp_1"]);

        let all = fixtures::fix_b().with_special(["1", "2", "3"]).unwrap();
        assert!(!is_skewed_gentle(&all));
    }

    #[test]
    fn admissible_sets_examples() {
        assert_eq!(
            admissible_special_sets(fixtures::fix_a().pair()).unwrap(),
            sets(&[&[], &["1"], &["2"]])
        );
        assert_eq!(
            admissible_special_sets(fixtures::fix_b().pair()).unwrap(),
            sets(&[&[], &["1"], &["2"], &["3"], &["1", "2"], &["1", "3"], &["2", "3"]])
        );
        assert_eq!(
            admissible_special_sets(fixtures::fix_c().pair()).unwrap(),
            sets(&[&[], &["1"], &["2"], &["1", "2"]])
        );
        assert_eq!(
            admissible_special_sets(fixtures::fix_d().pair()),
            Err(Error::NotGentle)
        );
    }

    #[test]
    fn empty_special_set_matches_base_flags() {
        for t in fixtures::valid() {
            let base = t.with_special(core::iter::empty::<&str>()).unwrap();
            assert_eq!(
                is_skewed_gentle(&base),
                is_gentle(t.pair()) && t.pair().is_finite_dimensional()
            );
        }
    }
}
