//! Brute-force dimension count by exact linear algebra.
//!
//! Paths are enumerated degree by degree, dropping any path that contains a
//! zero relation. In each degree the span of `u (P - P') v` over the
//! commutativity relations `P = P'` is eliminated with a sparse
//! fraction-free echelon form, and the dimension is the path count minus
//! its rank. This is independent of the normal-form basis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::Which;
use crate::construct::{build_g_pair, build_sg_presentation, build_sp_pair, SgPresentation};
use crate::error::{Error, Result};
use crate::gentle::require_skewed_gentle;
use crate::quiver::{Arrow, ArrowId, BoundQuiver, Quiver, SkewedGentleTriple};

pub const DEFAULT_ORACLE_CAP: usize = 20_000;

/// `left - right` lies in the ideal. Both sides are `(outer, inner)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommRelation2 {
    pub left: (ArrowId, ArrowId),
    pub right: (ArrowId, ArrowId),
}

/// A quiver with length-2 zero relations and length-2 binomial relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPresentation {
    quiver: Quiver,
    zero: BTreeSet<(ArrowId, ArrowId)>,
    comm: Vec<CommRelation2>,
}

impl RelPresentation {
    pub fn new(
        quiver: Quiver,
        zero: impl IntoIterator<Item = (ArrowId, ArrowId)>,
        comm: impl IntoIterator<Item = CommRelation2>,
    ) -> Result<Self> {
        let ends = |(o, i): &(ArrowId, ArrowId)| -> Result<(&Arrow, &Arrow)> {
            let oa = quiver.arrow(o).ok_or_else(|| Error::UnknownArrow(o.clone()))?;
            let ia = quiver.arrow(i).ok_or_else(|| Error::UnknownArrow(i.clone()))?;
            if ia.target != oa.source {
                return Err(Error::RelationNotComposable {
                    outer: o.clone(),
                    inner: i.clone(),
                });
            }
            Ok((oa, ia))
        };
        let zero: BTreeSet<_> = zero.into_iter().collect();
        for z in &zero {
            ends(z)?;
        }
        let comm: Vec<_> = comm.into_iter().collect();
        for c in &comm {
            let (lo, li) = ends(&c.left)?;
            let (ro, ri) = ends(&c.right)?;
            if li.source != ri.source || lo.target != ro.target {
                return Err(Error::InternalInconsistency(format!(
                    "sides of {}*{} = {}*{} have different endpoints",
                    c.left.0, c.left.1, c.right.0, c.right.1
                )));
            }
        }
        Ok(RelPresentation { quiver, zero, comm })
    }

    pub fn from_pair(bq: &BoundQuiver) -> Self {
        RelPresentation {
            quiver: bq.quiver().clone(),
            zero: bq.relations().clone(),
            comm: Vec::new(),
        }
    }

    pub fn from_sg(p: &SgPresentation) -> Result<Self> {
        let quiver = Quiver::new(
            p.vertices.iter().map(|v| v.name()),
            p.arrows
                .iter()
                .map(|a| Arrow::new(a.name(), a.source.name(), a.target.name())),
        )?;
        let zero = p.zero_relations.iter().map(|(o, i)| (o.name(), i.name()));
        let comm = p.comm_relations.iter().map(|c| CommRelation2 {
            left: (c.through_plus.0.name(), c.through_plus.1.name()),
            right: (c.through_minus.0.name(), c.through_minus.1.name()),
        });
        RelPresentation::new(quiver, zero, comm)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
}

type SparseRow = Vec<(usize, i64)>;

/// Incremental row echelon form over the integers.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

fn overflow() -> Error {
    Error::Overflow
}

/// `a * x - b * y` on sorted sparse rows.
fn combine(a: i64, x: &[(usize, i64)], b: i64, y: &[(usize, i64)]) -> Result<SparseRow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, val) = match (x.get(i), y.get(j)) {
            (Some(&(cx, vx)), Some(&(cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                let l = a.checked_mul(vx).ok_or_else(overflow)?;
                let r = b.checked_mul(vy).ok_or_else(overflow)?;
                (cx, l.checked_sub(r).ok_or_else(overflow)?)
            }
            (Some(&(cx, vx)), Some(&(cy, _))) if cx < cy => {
                i += 1;
                (cx, a.checked_mul(vx).ok_or_else(overflow)?)
            }
            (Some(&(cx, vx)), None) => {
                i += 1;
                (cx, a.checked_mul(vx).ok_or_else(overflow)?)
            }
            (_, Some(&(cy, vy))) => {
                j += 1;
                (cy, b.checked_mul(vy).ok_or_else(overflow)?.checked_neg().ok_or_else(overflow)?)
            }
            (None, None) => unreachable!(),
        };
        if val != 0 {
            out.push((col, val));
        }
    }
    Ok(out)
}

fn normalize(row: &mut SparseRow) {
    let g = row.iter().fold(0i64, |g, &(_, v)| g.gcd(&v));
    let g = if row.first().is_some_and(|&(_, v)| v < 0) { -g } else { g };
    if g != 0 && g != 1 {
        for (_, v) in row.iter_mut() {
            *v /= g;
        }
    }
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: SparseRow) -> Result<()> {
        row.sort_unstable_by_key(|&(c, _)| c);
        row.retain(|&(_, v)| v != 0);
        normalize(&mut row);
        while let Some(&(lead, coef)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    row = combine(p[0].1, &row, coef, p)?;
                    normalize(&mut row);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// Dimensions of the degree `0..=max_degree` parts of the algebra. Fails
/// with `LimitExceeded` once more than `cap` nonzero-candidate paths have
/// been enumerated.
pub fn graded_dimensions(p: &RelPresentation, max_degree: usize, cap: usize) -> Result<Vec<usize>> {
    let arrows: Vec<&Arrow> = p.quiver.arrows().collect();
    let index: BTreeMap<&str, usize> = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.as_str(), i))
        .collect();
    let idx = |name: &ArrowId| index[name.as_str()];
    // pairs in application order: (first, second)
    let zero: BTreeSet<(usize, usize)> = p.zero.iter().map(|(o, i)| (idx(i), idx(o))).collect();
    let mut swaps: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for c in &p.comm {
        let l = (idx(&c.left.1), idx(&c.left.0));
        let r = (idx(&c.right.1), idx(&c.right.0));
        swaps.entry(l).or_default().push(r);
        swaps.entry(r).or_default().push(l);
    }

    let mut dims = vec![0usize; max_degree + 1];
    dims[0] = p.quiver.vertices().len();
    let mut total = dims[0];
    let mut level: Vec<Vec<usize>> = (0..arrows.len()).map(|i| vec![i]).collect();
    for (degree, slot) in dims.iter_mut().enumerate().skip(1) {
        if degree > 1 {
            let mut next = Vec::new();
            for path in &level {
                let last = *path.last().expect("nonempty");
                for (j, a) in arrows.iter().enumerate() {
                    if a.source == arrows[last].target && !zero.contains(&(last, j)) {
                        let mut longer = path.clone();
                        longer.push(j);
                        next.push(longer);
                    }
                }
            }
            level = next;
        }
        total += level.len();
        if total > cap {
            return Err(Error::LimitExceeded { cap });
        }
        if level.is_empty() {
            break;
        }
        let position: BTreeMap<&[usize], usize> = level
            .iter()
            .enumerate()
            .map(|(i, path)| (path.as_slice(), i))
            .collect();
        let mut echelon = Echelon::default();
        for (i, path) in level.iter().enumerate() {
            for j in 0..path.len().saturating_sub(1) {
                let Some(others) = swaps.get(&(path[j], path[j + 1])) else {
                    continue;
                };
                for &(x, y) in others {
                    let mut other = path.clone();
                    other[j] = x;
                    other[j + 1] = y;
                    let killed = zero.contains(&(x, y))
                        || (j > 0 && zero.contains(&(other[j - 1], x)))
                        || (j + 2 < other.len() && zero.contains(&(y, other[j + 2])));
                    let row = if killed {
                        vec![(i, 1)]
                    } else {
                        let k = *position.get(other.as_slice()).ok_or_else(|| {
                            Error::InternalInconsistency(format!(
                                "rewritten path {other:?} missing from degree {degree}"
                            ))
                        })?;
                        if k == i {
                            continue;
                        }
                        vec![(i, 1), (k, -1)]
                    };
                    echelon.insert(row)?;
                }
            }
        }
        *slot = level.len() - echelon.rank();
    }
    Ok(dims)
}

fn longest_relation_free(bq: &BoundQuiver) -> Result<usize> {
    Ok(bq
        .relation_free_paths()?
        .last()
        .map(|p| p.len())
        .unwrap_or(0))
}

pub fn dimension_oracle(t: &SkewedGentleTriple, which: Which) -> Result<usize> {
    dimension_oracle_with_cap(t, which, DEFAULT_ORACLE_CAP)
}

/// Total dimension from [`graded_dimensions`], checked to vanish one degree
/// past the longest relation-free path of the pair with squared-zero loops.
pub fn dimension_oracle_with_cap(t: &SkewedGentleTriple, which: Which, cap: usize) -> Result<usize> {
    require_skewed_gentle(t)?;
    let (pres, bound) = match which {
        Which::Gentle => (RelPresentation::from_pair(t.pair()), longest_relation_free(t.pair())?),
        Which::G => {
            let g = build_g_pair(t)?.pair;
            let bound = longest_relation_free(&g)?;
            (RelPresentation::from_pair(&g), bound)
        }
        Which::Sg => (
            RelPresentation::from_sg(&build_sg_presentation(t)?)?,
            longest_relation_free(&build_sp_pair(t)?)?,
        ),
    };
    let dims = graded_dimensions(&pres, bound + 1, cap)?;
    if dims[bound + 1] != 0 {
        return Err(Error::InternalInconsistency(format!(
            "degree {} part of the {which} algebra is nonzero",
            bound + 1
        )));
    }
    Ok(dims.iter().sum())
}
