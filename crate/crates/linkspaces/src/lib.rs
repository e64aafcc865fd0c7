//! Symbolic computation of homotopy types of link embedding spaces.
//!
//! A link in the 3-sphere is described by its companionship tree (the JSJ /
//! satellite decomposition data). From that tree this crate computes, as a
//! structured group expression together with a space expression, the
//! fundamental group of
//!
//! - the space of framed links modulo rotations,
//! - the space of unframed links modulo rotations,
//! - the space of knots in a solid torus, and
//! - the space of knots in a thickened torus.
//!
//! The computation is a recursion over the tree: Seifert-fibered and
//! hyperbolic links are base cases, and splicing contributes configuration
//! spaces, braid groups and semidirect products twisted by the symmetries of
//! the companions.

pub mod dsl;
pub mod group;
pub mod homotopy;
pub mod link_model;

pub mod corpus;

pub use link_model::{CompanionshipTree, LinkDescription, SimpleLink};
