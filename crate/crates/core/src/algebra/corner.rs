//! Removing one special vertex: the block decomposition of the algebra
//! around the idempotent at `a-` and the dimension bookkeeping that goes
//! with it.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{basis, dimension, multiply, sg_admissible_paths, BasisPath, NormalForm, Which};
use crate::construct::{Sign, SignedVertex};
use crate::error::{Error, Result};
use crate::gentle::require_skewed_gentle;
use crate::quiver::{SkewedGentleTriple, VertexId};

/// Local shape at the removed vertex: valency 0, valency 1, or valency 2
/// split by which of the neighbours `b = s(in)` and `c = t(out)` are special.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CornerCase {
    A,
    B,
    C1,
    C2,
    C3,
    C4,
}

impl CornerCase {
    pub fn as_str(self) -> &'static str {
        match self {
            CornerCase::A => "a",
            CornerCase::B => "b",
            CornerCase::C1 => "c1",
            CornerCase::C2 => "c2",
            CornerCase::C3 => "c3",
            CornerCase::C4 => "c4",
        }
    }
}

impl fmt::Display for CornerCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerData {
    pub special_vertex: VertexId,
    pub case: CornerCase,
    pub dim_gamma: usize,
    pub dim_gamma_prime: usize,
    pub dim_a: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    /// Dimension of the corner at `a-`; always 1.
    pub dim_corner: usize,
    /// Number of distinct nonzero products `m · n`.
    pub dim_im_phi: usize,
    pub dim_m_prime: usize,
    pub dim_n_prime: usize,
    /// Basis of `M`: paths leaving `a-`.
    pub t1_basis: Vec<BasisPath>,
    /// Basis of `N`: paths entering `a-`.
    pub t2_basis: Vec<BasisPath>,
    pub phi_injective: bool,
    pub counting_holds: bool,
    pub identity_holds: bool,
}

impl CornerData {
    pub fn partition_holds(&self) -> bool {
        self.dim_corner == 1 && self.dim_gamma == self.dim_a + self.dim_m + self.dim_n + 1
    }

    pub fn all_hold(&self) -> bool {
        self.partition_holds() && self.phi_injective && self.counting_holds && self.identity_holds
    }
}

fn classify(t: &SkewedGentleTriple, a: &str) -> Result<CornerCase> {
    let q = t.quiver();
    Ok(match q.valency(a)? {
        0 => CornerCase::A,
        1 => CornerCase::B,
        _ => {
            let b = q.in_arrows(a).next().map(|x| t.is_special(&x.source));
            let c = q.out_arrows(a).next().map(|x| t.is_special(&x.target));
            match (b, c) {
                (Some(true), Some(true)) => CornerCase::C4,
                (Some(false), Some(true)) => CornerCase::C3,
                (Some(true), Some(false)) => CornerCase::C2,
                _ => CornerCase::C1,
            }
        }
    })
}

pub fn corner_data(t: &SkewedGentleTriple, a: &str) -> Result<CornerData> {
    if !t.quiver().has_vertex(a) || !t.is_special(a) {
        return Err(Error::NotSpecial(a.to_string()));
    }
    require_skewed_gentle(t)?;
    let pivot = SignedVertex::signed(a, Sign::Minus);
    let all = basis(t)?;

    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut block_a = Vec::new();
    let mut corner = 0;
    for p in &all {
        match (p.source() == &pivot, p.target() == &pivot) {
            (true, true) => corner += 1,
            (true, false) => t1.push(p.clone()),
            (false, true) => t2.push(p.clone()),
            (false, false) => block_a.push(p.clone()),
        }
    }

    let a_set: BTreeSet<&BasisPath> = block_a.iter().collect();
    let mut image = BTreeSet::new();
    let mut image_in_a = true;
    for m in &t1 {
        for n in &t2 {
            if let NormalForm::Path(prod) = multiply(t, &NormalForm::Path(m.clone()), &NormalForm::Path(n.clone())) {
                image_in_a &= a_set.contains(&prod);
                image.insert(prod);
            }
        }
    }
    let dim_im_phi = image.len();

    let reduced = t.with_special(t.special().iter().filter(|v| v.as_str() != a).cloned())?;
    let dim_gamma_prime = dimension(&reduced, Which::Sg)?;

    let admissible = sg_admissible_paths(t)?;
    let s1: Vec<_> = admissible.iter().filter(|p| p.source() == a).collect();
    let s2: Vec<_> = admissible.iter().filter(|p| p.target() == a).collect();
    let split_t = s1.iter().filter(|u| reduced.is_special(u.target())).count();
    let split_s = s2.iter().filter(|v| reduced.is_special(v.source())).count();

    let dim_m = t1.len();
    let dim_n = t2.len();
    Ok(CornerData {
        special_vertex: a.to_string(),
        case: classify(t, a)?,
        dim_gamma: all.len(),
        dim_gamma_prime,
        dim_a: block_a.len(),
        dim_m,
        dim_n,
        dim_corner: corner,
        dim_im_phi,
        dim_m_prime: s1.len(),
        dim_n_prime: s2.len(),
        t1_basis: t1,
        t2_basis: t2,
        phi_injective: image_in_a && dim_im_phi == dim_m * dim_n,
        counting_holds: dim_m == s1.len() + split_t && dim_n == s2.len() + split_s,
        identity_holds: dim_gamma_prime + dim_im_phi == block_a.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionChain {
    pub steps: Vec<CornerData>,
    /// Skewed-gentle dimension once every special vertex is removed.
    pub final_dimension: usize,
    pub gentle_dimension: usize,
}

impl ReductionChain {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(CornerData::all_hold) && self.final_dimension == self.gentle_dimension
    }
}

/// Removes the special vertices one at a time in the given order.
pub fn reduction_chain(t: &SkewedGentleTriple, order: &[VertexId]) -> Result<ReductionChain> {
    let listed: BTreeSet<&VertexId> = order.iter().collect();
    if listed.len() != order.len() || listed.len() != t.special().len() {
        return Err(Error::InternalInconsistency(
            "reduction order must list each special vertex once".to_string(),
        ));
    }
    let mut current = t.clone();
    let mut steps = Vec::new();
    for v in order {
        steps.push(corner_data(&current, v)?);
        current = current.with_special(current.special().iter().filter(|w| *w != v).cloned())?;
    }
    Ok(ReductionChain {
        steps,
        final_dimension: dimension(&current, Which::Sg)?,
        gentle_dimension: dimension(t, Which::Gentle)?,
    })
}
