//! The three quiver constructions attached to a triple `(Q, Sp, I)`:
//!
//! * the pair with a squared-zero loop at every special vertex,
//! * the signed-vertex presentation, where each *special* vertex splits
//!   into `v+` and `v-` ("sg-split") and relations through a split vertex
//!   become commutativity relations,
//! * the associated gentle pair, where each *ordinary* vertex splits
//!   ("g-split") and every arrow doubles into `a+` and `a-`,
//!
//! together with the order-two automorphism swapping signs on the last one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gentle::require_skewed_gentle;
use crate::quiver::{Arrow, ArrowId, BoundQuiver, Quiver, SkewedGentleTriple, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

/// A base vertex, possibly tagged with the sign of the copy it names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedVertex {
    pub base: VertexId,
    pub sign: Option<Sign>,
}

impl SignedVertex {
    pub fn unsplit(base: impl Into<String>) -> Self {
        SignedVertex {
            base: base.into(),
            sign: None,
        }
    }

    pub fn signed(base: impl Into<String>, sign: Sign) -> Self {
        SignedVertex {
            base: base.into(),
            sign: Some(sign),
        }
    }

    pub fn name(&self) -> String {
        match self.sign {
            None => self.base.clone(),
            Some(s) => format!("{}{}", self.base, s.suffix()),
        }
    }
}

impl fmt::Display for SignedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if let Some(s) = self.sign {
            f.write_str(s.suffix())?;
        }
        Ok(())
    }
}

/// Copies of `v` in the signed-vertex presentation: `v+, v-` when special.
pub fn sg_lifts(t: &SkewedGentleTriple, v: &str) -> Vec<SignedVertex> {
    if t.is_special(v) {
        vec![SignedVertex::signed(v, Sign::Plus), SignedVertex::signed(v, Sign::Minus)]
    } else {
        vec![SignedVertex::unsplit(v)]
    }
}

/// Name of the squared-zero loop added at each special vertex.
pub fn sp_loops(t: &SkewedGentleTriple) -> BTreeMap<VertexId, ArrowId> {
    let mut used: BTreeSet<String> = t.quiver().arrows().map(|a| a.name.clone()).collect();
    let mut out = BTreeMap::new();
    for v in t.special() {
        let mut name = format!("sp_{v}");
        // at most |arrows| + |Sp| names are taken, so this terminates
        let mut k = 1;
        while used.contains(&name) {
            name = format!("sp_{v}_{k}");
            k += 1;
        }
        used.insert(name.clone());
        out.insert(v.clone(), name);
    }
    out
}

/// The pair with a fresh loop `sp_v` and the relation `sp_v*sp_v` added at
/// every special vertex `v`.
pub fn build_sp_pair(t: &SkewedGentleTriple) -> Result<BoundQuiver> {
    let loops = sp_loops(t);
    let q = t.quiver();
    let mut arrows: Vec<Arrow> = q.arrows().cloned().collect();
    let mut relations: Vec<(ArrowId, ArrowId)> = t.pair().relations().iter().cloned().collect();
    for (v, name) in &loops {
        arrows.push(Arrow::new(name.clone(), v.clone(), v.clone()));
        relations.push((name.clone(), name.clone()));
    }
    let quiver = Quiver::new(q.vertices().iter().cloned(), arrows).map_err(|e| match e {
        Error::DuplicateName(n) => Error::NameCollision(n),
        other => other,
    })?;
    BoundQuiver::new(quiver, relations)
}

/// A lift `(a, α, b)` of a base arrow between chosen copies of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SgArrow {
    pub base: ArrowId,
    pub source: SignedVertex,
    pub target: SignedVertex,
}

impl SgArrow {
    pub fn name(&self) -> String {
        format!("{}@{}@{}", self.base, self.source, self.target)
    }
}

/// `outer · inner`, inner applied first.
pub type SgTwoPath = (SgArrow, SgArrow);

/// `through_plus = through_minus`: the two 2-paths share outer endpoints and
/// pass through the plus and minus copies of a special vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommRelation {
    pub through_plus: SgTwoPath,
    pub through_minus: SgTwoPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgPresentation {
    pub vertices: BTreeSet<SignedVertex>,
    pub arrows: BTreeSet<SgArrow>,
    pub zero_relations: BTreeSet<SgTwoPath>,
    pub comm_relations: BTreeSet<CommRelation>,
}

pub fn build_sg_presentation(t: &SkewedGentleTriple) -> Result<SgPresentation> {
    require_skewed_gentle(t)?;
    let q = t.quiver();
    let vertices: BTreeSet<SignedVertex> = q.vertices().iter().flat_map(|v| sg_lifts(t, v)).collect();

    let lift = |a: &Arrow, s: &SignedVertex, e: &SignedVertex| SgArrow {
        base: a.name.clone(),
        source: s.clone(),
        target: e.clone(),
    };

    let mut arrows = BTreeSet::new();
    for a in q.arrows() {
        for s in sg_lifts(t, &a.source) {
            for e in sg_lifts(t, &a.target) {
                arrows.insert(lift(a, &s, &e));
            }
        }
    }

    // every composition through a special vertex must be a relation, or
    // the minus-pinned normal form would be wrong
    for v in t.special() {
        for inner in q.in_arrows(v) {
            for outer in q.out_arrows(v) {
                if !t.pair().is_relation(&outer.name, &inner.name) {
                    return Err(Error::InternalInconsistency(format!(
                        "composition {}*{} through special vertex {v} is not a relation",
                        outer.name, inner.name
                    )));
                }
            }
        }
    }

    let mut zero_relations = BTreeSet::new();
    let mut comm_relations = BTreeSet::new();
    for (outer_id, inner_id) in t.pair().relations() {
        let outer = q.arrow(outer_id).expect("relation arrows exist");
        let inner = q.arrow(inner_id).expect("relation arrows exist");
        let middle = &inner.target;
        for a in sg_lifts(t, &inner.source) {
            for c in sg_lifts(t, &outer.target) {
                if t.is_special(middle) {
                    let via = |s: Sign| {
                        let m = SignedVertex::signed(middle.clone(), s);
                        (lift(outer, &m, &c), lift(inner, &a, &m))
                    };
                    comm_relations.insert(CommRelation {
                        through_plus: via(Sign::Plus),
                        through_minus: via(Sign::Minus),
                    });
                } else {
                    let m = SignedVertex::unsplit(middle.clone());
                    zero_relations.insert((lift(outer, &m, &c), lift(inner, &a, &m)));
                }
            }
        }
    }

    Ok(SgPresentation {
        vertices,
        arrows,
        zero_relations,
        comm_relations,
    })
}

/// Copies of `v` in the associated gentle pair: `v+, v-` when ordinary.
pub fn g_lifts(t: &SkewedGentleTriple, v: &str) -> Vec<SignedVertex> {
    if t.is_special(v) {
        vec![SignedVertex::unsplit(v)]
    } else {
        vec![SignedVertex::signed(v, Sign::Plus), SignedVertex::signed(v, Sign::Minus)]
    }
}

/// Endpoint of the `sign` copy of an arrow whose base endpoint is `v`.
fn g_endpoint(t: &SkewedGentleTriple, v: &str, sign: Sign) -> SignedVertex {
    if t.is_special(v) {
        SignedVertex::unsplit(v)
    } else {
        SignedVertex::signed(v, sign)
    }
}

pub fn g_arrow_name(base: &str, sign: Sign) -> String {
    format!("{base}{}", sign.suffix())
}

/// The associated gentle pair with its naming back to the base triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPairLabels {
    pub pair: BoundQuiver,
    pub vertex_label: BTreeMap<VertexId, SignedVertex>,
    pub arrow_label: BTreeMap<ArrowId, (ArrowId, Sign)>,
}

pub fn build_g_pair(t: &SkewedGentleTriple) -> Result<GPairLabels> {
    require_skewed_gentle(t)?;
    let q = t.quiver();
    let mut vertex_label = BTreeMap::new();
    for v in q.vertices() {
        for sv in g_lifts(t, v) {
            if vertex_label.insert(sv.name(), sv.clone()).is_some() {
                return Err(Error::NameCollision(sv.name()));
            }
        }
    }
    let mut arrow_label = BTreeMap::new();
    let mut arrows = Vec::new();
    for a in q.arrows() {
        for sign in [Sign::Plus, Sign::Minus] {
            let name = g_arrow_name(&a.name, sign);
            if arrow_label.insert(name.clone(), (a.name.clone(), sign)).is_some() {
                return Err(Error::NameCollision(name));
            }
            arrows.push(Arrow::new(
                name,
                g_endpoint(t, &a.source, sign).name(),
                g_endpoint(t, &a.target, sign).name(),
            ));
        }
    }
    let mut relations = Vec::new();
    for (outer, inner) in t.pair().relations() {
        let middle = &q.arrow(inner).expect("relation arrows exist").target;
        for sign in [Sign::Plus, Sign::Minus] {
            let inner_sign = if t.is_special(middle) { sign.opposite() } else { sign };
            relations.push((g_arrow_name(outer, sign), g_arrow_name(inner, inner_sign)));
        }
    }
    let quiver = Quiver::new(vertex_label.keys().cloned(), arrows).map_err(|e| match e {
        Error::DuplicateName(n) => Error::NameCollision(n),
        other => other,
    })?;
    let pair = BoundQuiver::new(quiver, relations)?;
    Ok(GPairLabels {
        pair,
        vertex_label,
        arrow_label,
    })
}

/// Sign swap on the associated gentle pair; fixes the unsplit (special) vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub arrow_map: BTreeMap<ArrowId, ArrowId>,
}

impl Involution {
    pub fn vertex(&self, v: &str) -> Option<&str> {
        self.vertex_map.get(v).map(String::as_str)
    }

    pub fn arrow(&self, a: &str) -> Option<&str> {
        self.arrow_map.get(a).map(String::as_str)
    }

    pub fn fixed_vertices(&self) -> BTreeSet<VertexId> {
        self.vertex_map
            .iter()
            .filter(|(k, v)| k == v)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Checks that the maps form a relation-preserving automorphism of
    /// `pair` whose square is the identity.
    pub fn verify(&self, pair: &BoundQuiver) -> Result<()> {
        let q = pair.quiver();
        let bad = |what: String| Err(Error::InternalInconsistency(what));
        for v in q.vertices() {
            match self.vertex(v) {
                Some(w) if q.has_vertex(w) && self.vertex(w) == Some(v.as_str()) => {}
                _ => return bad(format!("vertex {v} is not mapped involutively")),
            }
        }
        for a in q.arrows() {
            let image = match self.arrow(&a.name).and_then(|b| q.arrow(b)) {
                Some(b) => b,
                None => return bad(format!("arrow {} has no image", a.name)),
            };
            if self.arrow(&image.name) != Some(a.name.as_str()) {
                return bad(format!("arrow {} is not mapped involutively", a.name));
            }
            if self.vertex(&a.source) != Some(image.source.as_str())
                || self.vertex(&a.target) != Some(image.target.as_str())
            {
                return bad(format!("arrow {} does not commute with endpoints", a.name));
            }
        }
        for (o, i) in pair.relations() {
            let (o2, i2) = (self.arrow(o).unwrap(), self.arrow(i).unwrap());
            if !pair.is_relation(o2, i2) {
                return bad(format!("relation {o}*{i} maps outside the relation set"));
            }
        }
        Ok(())
    }
}

pub fn canonical_involution(t: &SkewedGentleTriple) -> Result<Involution> {
    let g = build_g_pair(t)?;
    let vertex_map = g
        .vertex_label
        .iter()
        .map(|(name, sv)| {
            let image = match sv.sign {
                None => sv.clone(),
                Some(s) => SignedVertex::signed(sv.base.clone(), s.opposite()),
            };
            (name.clone(), image.name())
        })
        .collect();
    let arrow_map = g
        .arrow_label
        .iter()
        .map(|(name, (base, s))| (name.clone(), g_arrow_name(base, s.opposite())))
        .collect();
    let inv = Involution {
        vertex_map,
        arrow_map,
    };
    inv.verify(&g.pair)?;
    Ok(inv)
}

impl SgPresentation {
    pub fn vertex_names(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.name()).collect()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<&SgArrow> {
        self.arrows.iter().find(|a| a.name() == name)
    }
}

impl GPairLabels {
    pub fn to_triple(&self, name: impl Into<String>) -> SkewedGentleTriple {
        SkewedGentleTriple::new(name, self.pair.clone(), core::iter::empty::<String>())
            .expect("empty special set is always valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gentle::is_gentle;

    fn pairs(raw: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        raw.iter().map(|&(a, b)| (a.into(), b.into())).collect()
    }

    #[test]
    fn sp_pair_adds_loops() {
        let sp = build_sp_pair(&fixtures::fix_a2()).unwrap();
        let loop2 = sp.quiver().arrow("sp_2").unwrap();
        assert_eq!((loop2.source.as_str(), loop2.target.as_str()), ("2", "2"));
        assert!(sp.is_relation("sp_2", "sp_2"));
        assert_eq!(sp.quiver().arrow_count(), 3);

        assert_eq!(build_sp_pair(&fixtures::fix_a()).unwrap(), *fixtures::fix_a().pair());

        let sp = build_sp_pair(&fixtures::fix_b3()).unwrap();
        assert!(sp.quiver().arrow("sp_3").is_some());
        assert_eq!(sp.relations().len(), 4);
    }

    #[test]
    fn sp_loop_names_avoid_collisions() {
        let q = Quiver::new(["1"], [Arrow::new("sp_1", "1", "1")]).unwrap();
        let bq = BoundQuiver::new(q, [("sp_1".into(), "sp_1".into())]).unwrap();
        let t = SkewedGentleTriple::new("L", bq, ["1"]).unwrap();
        let loops = sp_loops(&t);
        assert_eq!(loops["1"], "sp_1_1");
        assert!(build_sp_pair(&t).is_ok());
    }

    #[test]
    fn sg_presentation_fix_a2() {
        let p = build_sg_presentation(&fixtures::fix_a2()).unwrap();
        let names: Vec<String> = p.vertex_names();
        assert_eq!(names, ["1", "2+", "2-"]);
        assert_eq!(p.arrows.len(), 4);
        assert_eq!(p.zero_relations.len(), 4);
        assert_eq!(p.comm_relations.len(), 1);
        let c = p.comm_relations.iter().next().unwrap();
        assert_eq!(c.through_plus.0.name(), "b@2+@1");
        assert_eq!(c.through_plus.1.name(), "a@1@2+");
        assert_eq!(c.through_minus.0.name(), "b@2-@1");
        assert_eq!(c.through_minus.1.name(), "a@1@2-");
        for (o, i) in &p.zero_relations {
            assert_eq!((o.base.as_str(), i.base.as_str()), ("a", "b"));
        }
    }

    #[test]
    fn sg_presentation_fix_b3() {
        let p = build_sg_presentation(&fixtures::fix_b3()).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.arrows.len(), 5);
        assert_eq!(p.comm_relations.len(), 1);
        let c = p.comm_relations.iter().next().unwrap();
        assert_eq!(c.through_plus.0.name(), "g@3+@1");
        assert_eq!(c.through_plus.1.name(), "b@2@3+");
        // a*g lifts over the copies of 3 on its source side, b*a on its target side
        assert_eq!(p.zero_relations.len(), 4);
    }

    #[test]
    fn sg_presentation_without_specials_is_base() {
        let t = fixtures::fix_b();
        let p = build_sg_presentation(&t).unwrap();
        assert_eq!(p.arrows.len(), t.quiver().arrow_count());
        assert_eq!(p.zero_relations.len(), t.pair().relations().len());
        assert!(p.comm_relations.is_empty());
    }

    #[test]
    fn sg_rejects_invalid() {
        let t = fixtures::fix_a().with_special(["1", "2"]).unwrap();
        assert_eq!(build_sg_presentation(&t), Err(Error::NotSkewedGentle));
        assert_eq!(build_g_pair(&t), Err(Error::NotSkewedGentle));
    }

    #[test]
    fn g_pair_fix_a2() {
        let g = build_g_pair(&fixtures::fix_a2()).unwrap();
        let vs: Vec<&String> = g.pair.quiver().vertices().iter().collect();
        assert_eq!(vs, ["1+", "1-", "2"]);
        assert_eq!(
            *g.pair.relations(),
            pairs(&[("a+", "b+"), ("a-", "b-"), ("b+", "a-"), ("b-", "a+")])
        );
        let a_plus = g.pair.quiver().arrow("a+").unwrap();
        assert_eq!((a_plus.source.as_str(), a_plus.target.as_str()), ("1+", "2"));
        assert!(is_gentle(&g.pair));
        assert!(g.pair.is_finite_dimensional());
        assert_eq!(g.arrow_label["b-"], ("b".into(), Sign::Minus));
    }

    #[test]
    fn g_pair_fix_b3() {
        let g = build_g_pair(&fixtures::fix_b3()).unwrap();
        assert_eq!(
            *g.pair.relations(),
            pairs(&[
                ("a+", "g+"),
                ("a-", "g-"),
                ("b+", "a+"),
                ("b-", "a-"),
                ("g-", "b+"),
                ("g+", "b-"),
            ])
        );
    }

    #[test]
    fn g_pair_without_specials_doubles() {
        let t = fixtures::fix_a();
        let g = build_g_pair(&t).unwrap();
        assert_eq!(g.pair.quiver().vertices().len(), 4);
        assert_eq!(
            *g.pair.relations(),
            pairs(&[("a+", "b+"), ("a-", "b-"), ("b+", "a+"), ("b-", "a-")])
        );
    }

    #[test]
    fn involution_fix_a2() {
        let inv = canonical_involution(&fixtures::fix_a2()).unwrap();
        assert_eq!(inv.vertex("1+"), Some("1-"));
        assert_eq!(inv.vertex("2"), Some("2"));
        assert_eq!(inv.arrow("a+"), Some("a-"));
        assert_eq!(inv.arrow("b-"), Some("b+"));
        assert_eq!(inv.fixed_vertices(), [String::from("2")].into_iter().collect());
    }

    #[test]
    fn involution_all_special() {
        // isolated vertices may all be special
        let bq = BoundQuiver::new(Quiver::new(["1", "2"], [Arrow::new("a", "1", "2")]).unwrap(), []).unwrap();
        let t = SkewedGentleTriple::new("S", bq, ["1", "2"]).unwrap();
        let inv = canonical_involution(&t).unwrap();
        assert_eq!(inv.fixed_vertices().len(), 2);
        assert_eq!(inv.arrow("a+"), Some("a-"));
    }

    #[test]
    fn involution_squares_to_identity() {
        let inv = canonical_involution(&fixtures::fix_b3()).unwrap();
        for (k, v) in &inv.arrow_map {
            assert_eq!(inv.arrow(v), Some(k.as_str()));
        }
        for (k, v) in &inv.vertex_map {
            assert_eq!(inv.vertex(v), Some(k.as_str()));
        }
    }

    #[test]
    fn signed_names_use_ascii_suffixes() {
        assert_eq!(SignedVertex::signed("2", Sign::Minus).name(), "2-");
        assert_eq!(SignedVertex::unsplit("7").name(), "7");
    }
}
