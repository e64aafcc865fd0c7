//! Domain types for simple links and companionship trees: validation,
//! classification, canonicalization and the symmetry machinery used by the
//! splicing recursion.

mod class;
mod perm;
mod simple;
mod tree;
mod validate;
mod young;

pub use class::{classify, ClassifyError, LinkClass, RootCase};
pub use perm::SignedPermutation;
pub use simple::{
    canonicalize_simple, singular_fibers, HypSymmetry, HyperbolicLink, SimpleLink, SymmetryEntry,
};
pub use tree::{
    canonical_tree, tree_iso, CompanionshipTree, ComponentRef, LinkDescription, RootAnnotations,
    Slot,
};
pub use validate::{validate, ValidationReport, Violation};
pub use young::{signed_young, CompanionData, SignedYoungSubgroup, YoungClass};

/// Rational scalar used for symmetry shifts and fractional generators.
pub type Rational = num_rational::Ratio<i64>;
