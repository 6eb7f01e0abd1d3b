//! Finite group algebras with oriented involutions.
//!
//! This crate builds small finite groups as explicit multiplication tables,
//! enumerates their involutions and orientations, decides the structural
//! conditions under which the symmetric part of F_p[G] is commutative, and
//! verifies those predictions against brute-force computation in the
//! algebra itself. Everything is exact arithmetic over odd prime fields;
//! every claim a sweep makes is backed by an exhaustive check at the scale
//! it runs.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod group;
pub mod identity;
pub mod involution;
pub mod linalg;
pub mod predicates;
pub mod verify;

pub use algebra::{AlgebraContext, AlgebraElement, IdealBasis};
pub use error::{Error, Result};
pub use group::{build_group, FiniteGroup, GroupSpec, PElementSet, QuotientResult, SubgroupSet};
pub use involution::{
    enumerate_involutions, enumerate_orientations, induce_on_quotient, make_pair,
    slc_canonical_involution, AntiAutomorphism, InducedPair, Orientation, OrientedPair,
};
pub use predicates::{
    classify_modular, classify_oriented, has_lc_property, is_hamiltonian_two_group,
    is_slc_canonical, lc_via_center_quotient, unique_commutator, ClassificationReport,
};
