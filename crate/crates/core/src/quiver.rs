//! Quivers, paths and bound quivers with length-2 zero relations.
//!
//! Paths are written right to left: the path `[a1, a2, ..., ar]` applies `ar`
//! first and `a1` last, so consecutive arrows satisfy `t(a_i) = s(a_{i-1})`.
//! A relation pair `(x, y)` (serialized `x*y`) says the two-step path `xy`,
//! with `y` applied first, is zero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type VertexId = String;
pub type ArrowId = String;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub name: ArrowId,
    pub source: VertexId,
    pub target: VertexId,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        Arrow {
            name: name.into(),
            source: source.into(),
            target: target.into(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver. Arrows are kept keyed by name, so two quivers with the
/// same vertices and arrows compare equal regardless of declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: BTreeSet<VertexId>,
    arrows: BTreeMap<ArrowId, Arrow>,
}

impl Quiver {
    pub fn new<V, S>(vertices: V, arrows: impl IntoIterator<Item = Arrow>) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vs = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            if !vs.insert(v.clone()) {
                return Err(Error::DuplicateName(v));
            }
        }
        let mut map = BTreeMap::new();
        for a in arrows {
            for end in [&a.source, &a.target] {
                if !vs.contains(end) {
                    return Err(Error::DanglingEndpoint {
                        arrow: a.name.clone(),
                        vertex: end.clone(),
                    });
                }
            }
            if map.contains_key(&a.name) {
                return Err(Error::DuplicateName(a.name));
            }
            map.insert(a.name.clone(), a);
        }
        Ok(Quiver {
            vertices: vs,
            arrows: map,
        })
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// Arrows in ascending name order.
    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.values()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.arrows.get(name)
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn out_arrows<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.values().filter(move |a| a.source == v)
    }

    pub fn in_arrows<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.values().filter(move |a| a.target == v)
    }

    /// Number of arrow ends at `v`; a loop contributes two.
    pub fn valency(&self, v: &str) -> Result<usize> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(self.out_arrows(v).count() + self.in_arrows(v).count())
    }

    pub fn trivial_path(&self, v: &str) -> Result<Path> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(Path::trivial(v))
    }

    /// Builds a path from arrow names in right-to-left order.
    pub fn path<S: AsRef<str>>(&self, arrows: &[S]) -> Result<Path> {
        let mut iter = arrows.iter().rev();
        let first = match iter.next() {
            Some(a) => a.as_ref(),
            None => {
                return Err(Error::InternalInconsistency(
                    "a nontrivial path needs at least one arrow".to_string(),
                ))
            }
        };
        let first = self
            .arrow(first)
            .ok_or_else(|| Error::UnknownArrow(first.to_string()))?;
        let mut path = Path::from_arrow(first);
        for name in iter {
            let a = self
                .arrow(name.as_ref())
                .ok_or_else(|| Error::UnknownArrow(name.as_ref().to_string()))?;
            path = Path::from_arrow(a).compose(&path)?;
        }
        Ok(path)
    }
}

/// A path with cached endpoints. `arrows` is empty exactly for trivial paths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: impl Into<String>) -> Self {
        let v = v.into();
        Path {
            source: v.clone(),
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrow(a: &Arrow) -> Self {
        Path {
            source: a.source.clone(),
            target: a.target.clone(),
            arrows: vec![a.name.clone()],
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    /// Arrow names, last-applied first.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `first`, i.e. the concatenation `self · first`.
    pub fn compose(&self, first: &Path) -> Result<Path> {
        if self.source != first.target {
            return Err(Error::NotComposable {
                source_vertex: self.source.clone(),
                target_vertex: first.target.clone(),
            });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(first.arrows.iter().cloned());
        Ok(Path {
            source: first.source.clone(),
            target: self.target.clone(),
            arrows,
        })
    }
}

/// Outcome of the finite-dimensionality check for a monomial pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    /// A relation-free cycle, listed in application order starting at its
    /// smallest arrow name.
    Infinite(Vec<ArrowId>),
}

impl Finiteness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finiteness::Finite)
    }
}

/// A quiver with a set of length-2 zero relations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: BTreeSet<(ArrowId, ArrowId)>,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: impl IntoIterator<Item = (ArrowId, ArrowId)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (outer, inner) in relations {
            let o = quiver
                .arrow(&outer)
                .ok_or_else(|| Error::UnknownArrow(outer.clone()))?;
            let i = quiver
                .arrow(&inner)
                .ok_or_else(|| Error::UnknownArrow(inner.clone()))?;
            if i.target != o.source {
                return Err(Error::RelationNotComposable { outer, inner });
            }
            if set.contains(&(outer.clone(), inner.clone())) {
                return Err(Error::DuplicateRelation { outer, inner });
            }
            set.insert((outer, inner));
        }
        Ok(BoundQuiver {
            quiver,
            relations: set,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &BTreeSet<(ArrowId, ArrowId)> {
        &self.relations
    }

    /// Whether `outer · inner` is one of the zero relations.
    pub fn is_relation(&self, outer: &str, inner: &str) -> bool {
        // BTreeSet<(String, String)> cannot be queried with borrowed tuples.
        self.relations
            .iter()
            .any(|(o, i)| o == outer && i == inner)
    }

    /// Arrows `γ` that may follow `a` without hitting a relation.
    pub fn free_successors<'a>(&'a self, a: &'a Arrow) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.quiver
            .out_arrows(&a.target)
            .filter(move |g| !self.is_relation(&g.name, &a.name))
    }

    pub fn finiteness(&self) -> Finiteness {
        let arrows: Vec<&Arrow> = self.quiver.arrows().collect();
        let index: BTreeMap<&str, usize> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.as_str(), i))
            .collect();
        let succ: Vec<Vec<usize>> = arrows
            .iter()
            .map(|a| self.free_successors(a).map(|g| index[g.name.as_str()]).collect())
            .collect();

        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; arrows.len()];
        for root in 0..arrows.len() {
            if state[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            state[root] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if *next < succ[node].len() {
                    let child = succ[node][*next];
                    *next += 1;
                    match state[child] {
                        0 => {
                            state[child] = 1;
                            stack.push((child, 0));
                        }
                        1 => {
                            let start = stack.iter().position(|&(n, _)| n == child).unwrap();
                            let mut cycle: Vec<ArrowId> = stack[start..]
                                .iter()
                                .map(|&(n, _)| arrows[n].name.clone())
                                .collect();
                            let min = (0..cycle.len()).min_by_key(|&i| &cycle[i]).unwrap();
                            cycle.rotate_left(min);
                            return Finiteness::Infinite(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        Finiteness::Finite
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.finiteness().is_finite()
    }

    /// Every path with no relation as a consecutive factor, trivial paths
    /// included. The count is the dimension of the monomial algebra.
    pub fn relation_free_paths(&self) -> Result<Vec<Path>> {
        if let Finiteness::Infinite(witness) = self.finiteness() {
            return Err(Error::InfiniteDimensional { witness });
        }
        let mut out: Vec<Path> = self.quiver.vertices().iter().map(Path::trivial).collect();
        let mut frontier: Vec<(Path, &Arrow)> = self
            .quiver
            .arrows()
            .map(|a| (Path::from_arrow(a), a))
            .collect();
        while let Some((path, last)) = frontier.pop() {
            for next in self.free_successors(last) {
                let longer = Path::from_arrow(next).compose(&path)?;
                frontier.push((longer, next));
            }
            out.push(path);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }
}

/// A bound quiver together with a set of special vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkewedGentleTriple {
    name: String,
    pair: BoundQuiver,
    special: BTreeSet<VertexId>,
}

impl SkewedGentleTriple {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        pair: BoundQuiver,
        special: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in special {
            let v = v.into();
            if !pair.quiver().has_vertex(&v) {
                return Err(Error::UnknownVertex(v));
            }
            if !set.insert(v.clone()) {
                return Err(Error::DuplicateSpecial(v));
            }
        }
        Ok(SkewedGentleTriple {
            name: name.into(),
            pair,
            special: set,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pair(&self) -> &BoundQuiver {
        &self.pair
    }

    pub fn quiver(&self) -> &Quiver {
        self.pair.quiver()
    }

    pub fn special(&self) -> &BTreeSet<VertexId> {
        &self.special
    }

    pub fn is_special(&self, v: &str) -> bool {
        self.special.contains(v)
    }

    /// Same pair, different special set.
    pub fn with_special<S: Into<String>>(&self, special: impl IntoIterator<Item = S>) -> Result<Self> {
        SkewedGentleTriple::new(self.name.clone(), self.pair.clone(), special)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn build_fix_a() {
        let q = fixtures::fix_a().quiver().clone();
        assert_eq!(q.vertices().len(), 2);
        assert_eq!(q.arrow_count(), 2);
    }

    #[test]
    fn single_vertex_quiver() {
        let q = Quiver::new(["1"], []).unwrap();
        assert_eq!(q.vertices().len(), 1);
        assert_eq!(q.arrow_count(), 0);
    }

    #[test]
    fn dangling_endpoint() {
        let err = Quiver::new(["1", "2"], [Arrow::new("x", "1", "3")]).unwrap_err();
        assert_eq!(
            err,
            Error::DanglingEndpoint {
                arrow: "x".into(),
                vertex: "3".into()
            }
        );
    }

    #[test]
    fn duplicate_names() {
        assert!(matches!(
            Quiver::new(["1", "1"], []),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            Quiver::new(["1"], [Arrow::new("x", "1", "1"), Arrow::new("x", "1", "1")]),
            Err(Error::DuplicateName(_))
        ));
    }

    #[test]
    fn compose_examples() {
        let q = fixtures::fix_a().quiver().clone();
        let a = q.path(&["a"]).unwrap();
        let b = q.path(&["b"]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.arrows(), ["a", "b"]);
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.source(), "2");
        assert_eq!(ab.target(), "2");

        let e2 = q.trivial_path("2").unwrap();
        assert_eq!(e2.compose(&a).unwrap(), a);
        assert!(matches!(a.compose(&a), Err(Error::NotComposable { .. })));
    }

    #[test]
    fn valency_examples() {
        assert_eq!(fixtures::fix_a().quiver().valency("1").unwrap(), 2);
        assert_eq!(fixtures::fix_c().quiver().valency("2").unwrap(), 1);
        let loopq = Quiver::new(["v"], [Arrow::new("l", "v", "v")]).unwrap();
        assert_eq!(loopq.valency("v").unwrap(), 2);
        assert!(matches!(loopq.valency("w"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn finiteness_examples() {
        assert!(fixtures::fix_a().pair().is_finite_dimensional());
        assert!(fixtures::fix_c().pair().is_finite_dimensional());
        let free = BoundQuiver::new(fixtures::fix_a().quiver().clone(), []).unwrap();
        assert_eq!(
            free.finiteness(),
            Finiteness::Infinite(vec!["a".into(), "b".into()])
        );
        assert!(matches!(
            free.relation_free_paths(),
            Err(Error::InfiniteDimensional { .. })
        ));
    }

    #[test]
    fn relation_free_path_counts() {
        let paths = fixtures::fix_a().pair().relation_free_paths().unwrap();
        assert_eq!(paths.len(), 4);
        assert_eq!(fixtures::fix_c().pair().relation_free_paths().unwrap().len(), 3);

        let q = fixtures::fix_a().quiver().clone();
        let partial = BoundQuiver::new(q, [("a".into(), "b".into())]).unwrap();
        let paths = partial.relation_free_paths().unwrap();
        assert_eq!(paths.len(), 5);
        assert!(paths.iter().any(|p| p.arrows() == ["b", "a"]));
    }

    #[test]
    fn relation_must_compose() {
        let q = fixtures::fix_c().quiver().clone();
        assert!(matches!(
            BoundQuiver::new(q, [("a".into(), "a".into())]),
            Err(Error::RelationNotComposable { .. })
        ));
    }
}
