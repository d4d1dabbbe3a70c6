//! Normal-form basis and multiplication of the skewed-gentle algebra.
//!
//! Basis paths live in the signed-vertex quiver. A path through a special
//! vertex `e` always passes through the copy `e-`; the commutativity
//! relations identify the `e+` route with it. Free signs only appear at the
//! two endpoints.

pub mod corner;
pub mod oracle;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::construct::{sg_lifts, Sign, SgArrow, SignedVertex};
use crate::error::Result;
use crate::gentle::require_skewed_gentle;
use crate::quiver::{Arrow, Path, SkewedGentleTriple};

pub use corner::{corner_data, reduction_chain, CornerCase, CornerData, ReductionChain};
pub use oracle::{
    dimension_oracle, dimension_oracle_with_cap, graded_dimensions, CommRelation2, RelPresentation,
    DEFAULT_ORACLE_CAP,
};

/// Which of the three algebras attached to a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Which {
    Gentle,
    Sg,
    G,
}

impl Which {
    pub fn as_str(self) -> &'static str {
        match self {
            Which::Gentle => "gentle",
            Which::Sg => "sg",
            Which::G => "g",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A path in the signed-vertex quiver. `arrows` is last-applied first, as
/// for base paths; it is empty exactly for trivial paths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisPath {
    source: SignedVertex,
    target: SignedVertex,
    arrows: Vec<SgArrow>,
}

impl BasisPath {
    pub fn trivial(v: SignedVertex) -> Self {
        BasisPath {
            source: v.clone(),
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> &SignedVertex {
        &self.source
    }

    pub fn target(&self) -> &SignedVertex {
        &self.target
    }

    pub fn arrows(&self) -> &[SgArrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrow_names(&self) -> Vec<String> {
        self.arrows.iter().map(SgArrow::name).collect()
    }

    /// Base arrows, last-applied first.
    pub fn base_arrows(&self) -> Vec<&str> {
        self.arrows.iter().map(|a| a.base.as_str()).collect()
    }

    /// Signed vertices strictly inside the path.
    pub fn internal_vertices(&self) -> impl Iterator<Item = &SignedVertex> + '_ {
        self.arrows.iter().skip(1).map(|a| &a.target)
    }
}

impl fmt::Display for BasisPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e[{}]", self.source);
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&a.name())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalForm {
    Zero,
    Path(BasisPath),
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero)
    }

    pub fn as_path(&self) -> Option<&BasisPath> {
        match self {
            NormalForm::Zero => None,
            NormalForm::Path(p) => Some(p),
        }
    }
}

/// Whether `outer` may follow `inner` in an sg-admissible base path.
fn sg_admissible_step(t: &SkewedGentleTriple, outer: &Arrow, inner: &Arrow) -> bool {
    !t.pair().is_relation(&outer.name, &inner.name) || t.is_special(&inner.target)
}

/// Nontrivial base paths whose junctions are either relation-free or a
/// relation through a special vertex. Sorted by length, then arrows.
pub fn sg_admissible_paths(t: &SkewedGentleTriple) -> Result<Vec<Path>> {
    require_skewed_gentle(t)?;
    let q = t.quiver();
    let mut out = Vec::new();
    let mut frontier: Vec<(Path, &Arrow)> = q.arrows().map(|a| (Path::from_arrow(a), a)).collect();
    while let Some((path, last)) = frontier.pop() {
        for next in q.out_arrows(&last.target) {
            if sg_admissible_step(t, next, last) {
                frontier.push((Path::from_arrow(next).compose(&path)?, next));
            }
        }
        out.push(path);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The copy of an internal vertex used by normal forms.
fn internal_copy(t: &SkewedGentleTriple, v: &str) -> SignedVertex {
    if t.is_special(v) {
        SignedVertex::signed(v, Sign::Minus)
    } else {
        SignedVertex::unsplit(v)
    }
}

fn lift_path(t: &SkewedGentleTriple, p: &Path, source: &SignedVertex, target: &SignedVertex) -> BasisPath {
    let q = t.quiver();
    let n = p.len();
    let arrows = p
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let a = q.arrow(name).expect("path arrows exist");
            // index 0 is applied last and ends at the path target
            let end = if i == 0 { target.clone() } else { internal_copy(t, &a.target) };
            let start = if i + 1 == n { source.clone() } else { internal_copy(t, &a.source) };
            SgArrow {
                base: a.name.clone(),
                source: start,
                target: end,
            }
        })
        .collect();
    BasisPath {
        source: source.clone(),
        target: target.clone(),
        arrows,
    }
}

/// Trivial paths of every signed vertex, then the endpoint lifts of every
/// sg-admissible base path.
pub fn basis(t: &SkewedGentleTriple) -> Result<Vec<BasisPath>> {
    let paths = sg_admissible_paths(t)?;
    let mut out: Vec<BasisPath> = t
        .quiver()
        .vertices()
        .iter()
        .flat_map(|v| sg_lifts(t, v))
        .map(BasisPath::trivial)
        .collect();
    for p in &paths {
        for s in sg_lifts(t, p.source()) {
            for e in sg_lifts(t, p.target()) {
                out.push(lift_path(t, p, &s, &e));
            }
        }
    }
    Ok(out)
}

/// The product `p · q` (`q` applied first) in normal form.
pub fn multiply(t: &SkewedGentleTriple, p: &NormalForm, q: &NormalForm) -> NormalForm {
    let (p, q) = match (p, q) {
        (NormalForm::Path(p), NormalForm::Path(q)) => (p, q),
        _ => return NormalForm::Zero,
    };
    if q.target != p.source {
        return NormalForm::Zero;
    }
    if q.is_trivial() {
        return NormalForm::Path(p.clone());
    }
    if p.is_trivial() {
        return NormalForm::Path(q.clone());
    }
    let outer = p.arrows.last().expect("nontrivial");
    let inner = &q.arrows[0];
    let middle = &inner.target.base;
    let related = t.pair().is_relation(&outer.base, &inner.base);
    if related && !t.is_special(middle) {
        return NormalForm::Zero;
    }
    let mut arrows = p.arrows.clone();
    arrows.extend(q.arrows.iter().cloned());
    if t.is_special(middle) {
        // the commutativity relation moves the junction to the minus copy
        let k = p.arrows.len();
        let m = SignedVertex::signed(middle.clone(), Sign::Minus);
        arrows[k - 1].source = m.clone();
        arrows[k].target = m;
    }
    NormalForm::Path(BasisPath {
        source: q.source.clone(),
        target: p.target.clone(),
        arrows,
    })
}

/// Dimension of the chosen algebra: path counts for the two gentle
/// algebras, the normal-form basis size for the skewed-gentle one.
pub fn dimension(t: &SkewedGentleTriple, which: Which) -> Result<usize> {
    require_skewed_gentle(t)?;
    match which {
        Which::Gentle => Ok(t.pair().relation_free_paths()?.len()),
        Which::G => Ok(crate::construct::build_g_pair(t)?.pair.relation_free_paths()?.len()),
        Which::Sg => Ok(basis(t)?.len()),
    }
}

/// `|Q_0| + |Sp| + Σ 2^([s(p) ∈ Sp] + [t(p) ∈ Sp])` over nontrivial
/// sg-admissible base paths.
pub fn dimension_closed_form(t: &SkewedGentleTriple) -> Result<usize> {
    let paths = sg_admissible_paths(t)?;
    let lifts: usize = paths
        .iter()
        .map(|p| 1usize << (t.is_special(p.source()) as u32 + t.is_special(p.target()) as u32))
        .sum();
    Ok(t.quiver().vertices().len() + t.special().len() + lifts)
}
