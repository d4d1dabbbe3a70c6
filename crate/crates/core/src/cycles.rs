//! Full repetition-free relation cycles and the singularity descriptors
//! built from them.
//!
//! A cycle `[a1, ..., an]` has every consecutive pair `(a_i, a_{i+1})`,
//! wrapping around, in the relation set. In a gentle pair each arrow has at
//! most one relation partner on each side, so the map `a ↦ b` with
//! `(a, b)` a relation is a partial injection and the cycles are exactly its
//! periodic orbits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::construct::{build_g_pair, g_arrow_name, Sign};
use crate::error::{Error, Result};
use crate::gentle::{is_admissible_gentle, require_skewed_gentle};
use crate::quiver::{ArrowId, BoundQuiver, Quiver, SkewedGentleTriple, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One cycle class in canonical rotation. `parity`, `sigma` and `tau` are
/// filled in only when a special set is known; `sigma[k]` is the sign at
/// position `k + 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleClass {
    pub arrows: Vec<ArrowId>,
    pub parity: Option<Parity>,
    pub sigma: Vec<Sign>,
    pub tau: Vec<Sign>,
}

impl CycleClass {
    fn bare(arrows: Vec<ArrowId>) -> Self {
        CycleClass {
            arrows,
            parity: None,
            sigma: Vec::new(),
            tau: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.arrows.len()
    }
}

/// Rotation with the lexicographically smallest arrow-name sequence.
pub fn canonical_rotation<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    (0..cycle.len().max(1))
        .map(|k| {
            let mut r = cycle.to_vec();
            r.rotate_left(k.min(cycle.len()));
            r
        })
        .min()
        .unwrap_or_default()
}

/// Cycles of the relation map of a gentle, finite-dimensional pair.
pub fn full_cycles(bq: &BoundQuiver) -> Result<Vec<CycleClass>> {
    if !is_admissible_gentle(bq) {
        return Err(Error::NotGentle);
    }
    let partner: BTreeMap<&str, &str> = bq
        .relations()
        .iter()
        .map(|(o, i)| (o.as_str(), i.as_str()))
        .collect();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut out = Vec::new();
    for start in bq.quiver().arrows().map(|a| a.name.as_str()) {
        if seen.contains(start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        let closed = loop {
            walk.push(cur);
            seen.insert(cur);
            match partner.get(cur) {
                Some(&next) if next == start => break true,
                Some(&next) if !seen.contains(next) => cur = next,
                _ => break false,
            }
        };
        if closed {
            let names: Vec<ArrowId> = walk.iter().map(|s| String::from(*s)).collect();
            out.push(CycleClass::bare(canonical_rotation(&names)));
        }
    }
    out.sort();
    Ok(out)
}

fn junction_targets<'a>(q: &'a Quiver, arrows: &'a [ArrowId]) -> Result<Vec<&'a VertexId>> {
    arrows
        .iter()
        .map(|a| {
            q.arrow(a)
                .map(|x| &x.target)
                .ok_or_else(|| Error::UnknownArrow(a.clone()))
        })
        .collect()
}

/// Prefix-parity signs for positions `2..=n`: `sigma_i` is plus exactly when
/// an even number of the targets `t(a_2), ..., t(a_i)` are special; `tau` is
/// its opposite.
pub fn sign_sequences(q: &Quiver, arrows: &[ArrowId], special: &BTreeSet<VertexId>) -> Result<(Vec<Sign>, Vec<Sign>)> {
    let targets = junction_targets(q, arrows)?;
    let mut count = 0usize;
    let mut sigma = Vec::new();
    for t in targets.iter().skip(1) {
        if special.contains(*t) {
            count += 1;
        }
        sigma.push(if count % 2 == 0 { Sign::Plus } else { Sign::Minus });
    }
    let tau = sigma.iter().map(|s| s.opposite()).collect();
    Ok((sigma, tau))
}

/// Parity of the number of special junctions `t(a_1), ..., t(a_n)`.
pub fn cycle_parity(q: &Quiver, arrows: &[ArrowId], special: &BTreeSet<VertexId>) -> Result<Parity> {
    let n = junction_targets(q, arrows)?
        .into_iter()
        .filter(|t| special.contains(*t))
        .count();
    Ok(if n % 2 == 0 { Parity::Even } else { Parity::Odd })
}

/// Base cycles with parity and sign sequences filled in.
pub fn classified_cycles(t: &SkewedGentleTriple) -> Result<Vec<CycleClass>> {
    require_skewed_gentle(t)?;
    let q = t.quiver();
    full_cycles(t.pair())?
        .into_iter()
        .map(|mut c| {
            c.parity = Some(cycle_parity(q, &c.arrows, t.special())?);
            let (sigma, tau) = sign_sequences(q, &c.arrows, t.special())?;
            c.sigma = sigma;
            c.tau = tau;
            Ok(c)
        })
        .collect()
}

fn signed_lift(arrows: &[ArrowId], first: Sign, rest: &[Sign]) -> Vec<ArrowId> {
    core::iter::once(g_arrow_name(&arrows[0], first))
        .chain(arrows[1..].iter().zip(rest).map(|(a, s)| g_arrow_name(a, *s)))
        .collect()
}

/// Cycles of the associated gentle pair obtained by lifting base cycles: two
/// of the same length per even cycle, one of double length per odd cycle.
pub fn lift_cycles(t: &SkewedGentleTriple) -> Result<Vec<CycleClass>> {
    let mut out = Vec::new();
    for c in classified_cycles(t)? {
        let plus = signed_lift(&c.arrows, Sign::Plus, &c.sigma);
        let minus = signed_lift(&c.arrows, Sign::Minus, &c.tau);
        match c.parity {
            Some(Parity::Even) => {
                out.push(CycleClass::bare(canonical_rotation(&plus)));
                out.push(CycleClass::bare(canonical_rotation(&minus)));
            }
            Some(Parity::Odd) => {
                let mut both = plus;
                both.extend(minus);
                out.push(CycleClass::bare(canonical_rotation(&both)));
            }
            None => unreachable!("classified cycles carry a parity"),
        }
    }
    out.sort();
    Ok(out)
}

/// A multiset of shifts `n`, one per orbit-category factor `D^b(k)/[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SingularityDescriptor {
    shifts: Vec<usize>,
}

impl SingularityDescriptor {
    pub fn new(mut shifts: Vec<usize>) -> Self {
        shifts.sort_unstable();
        SingularityDescriptor { shifts }
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn total(&self) -> usize {
        self.shifts.iter().sum()
    }

    /// `D^b(k)/[2] x D^b(k)/[4]`, or `0` for the zero category.
    pub fn factors(&self) -> String {
        self.join(|n| format!("D^b(k)/[{n}]"))
    }

    /// Same factors named by the stable module category of the
    /// self-injective Nakayama algebra `S_n`.
    pub fn nakayama_aliases(&self) -> String {
        self.join(|n| format!("S_{n}-stable"))
    }

    fn join(&self, f: impl Fn(usize) -> String) -> String {
        if self.shifts.is_empty() {
            return String::from("0");
        }
        self.shifts.iter().map(|&n| f(n)).collect::<Vec<_>>().join(" x ")
    }
}

impl fmt::Display for SingularityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.shifts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

pub fn descriptor_gentle(bq: &BoundQuiver) -> Result<SingularityDescriptor> {
    Ok(SingularityDescriptor::new(
        full_cycles(bq)?.iter().map(CycleClass::length).collect(),
    ))
}

/// The skewed-gentle algebra has the same descriptor as its base pair.
pub fn descriptor_sg(t: &SkewedGentleTriple) -> Result<SingularityDescriptor> {
    require_skewed_gentle(t)?;
    descriptor_gentle(t.pair())
}

/// Each even base cycle contributes its length twice, each odd one twice its
/// length once.
pub fn descriptor_g(t: &SkewedGentleTriple) -> Result<SingularityDescriptor> {
    let mut shifts = Vec::new();
    for c in classified_cycles(t)? {
        match c.parity {
            Some(Parity::Even) => {
                shifts.push(c.length());
                shifts.push(c.length());
            }
            _ => shifts.push(2 * c.length()),
        }
    }
    Ok(SingularityDescriptor::new(shifts))
}

/// Descriptor of the associated gentle pair computed directly from its cycles.
pub fn descriptor_g_direct(t: &SkewedGentleTriple) -> Result<SingularityDescriptor> {
    descriptor_gentle(&build_g_pair(t)?.pair)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GldimFlags {
    pub gentle: bool,
    pub sg: bool,
    pub g: bool,
}

/// Finite global dimension flags, `true` meaning finite. The three always
/// agree; disagreement is reported as an internal inconsistency.
pub fn gldim_flags(t: &SkewedGentleTriple) -> Result<GldimFlags> {
    let flags = GldimFlags {
        gentle: descriptor_gentle(t.pair())?.is_empty(),
        sg: descriptor_sg(t)?.is_empty(),
        g: descriptor_g(t)?.is_empty(),
    };
    if flags.gentle != flags.sg || flags.sg != flags.g {
        return Err(Error::InternalInconsistency(format!(
            "global dimension flags disagree: {flags:?}"
        )));
    }
    Ok(flags)
}
