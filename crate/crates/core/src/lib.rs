//! Gentle and skewed-gentle bound quivers.
//!
//! A triple `(Q, Sp, I)` is a quiver, a set of special vertices and a set of
//! length-2 zero relations. This crate validates triples, builds the derived
//! quivers attached to them, computes their full relation cycles and
//! singularity descriptors, and provides a normal-form basis for the
//! skewed-gentle algebra together with an independent rank oracle.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod construct;
pub mod cycles;
pub mod error;
pub mod fixtures;
pub mod gentle;
pub mod quiver;
pub mod random;

pub use algebra::{basis, dimension, multiply, BasisPath, NormalForm, Which};
pub use construct::{
    build_g_pair, build_sg_presentation, build_sp_pair, canonical_involution, Sign, SignedVertex,
};
pub use cycles::{
    descriptor_g, descriptor_gentle, descriptor_sg, full_cycles, gldim_flags, lift_cycles,
    CycleClass, GldimFlags, Parity, SingularityDescriptor,
};
pub use error::{Error, Result};
pub use gentle::{admissible_special_sets, validate_skewed_gentle, Rule, ValidationReport, Violation};
pub use quiver::{Arrow, ArrowId, BoundQuiver, Path, Quiver, SkewedGentleTriple, VertexId};
pub use random::random_triple;
