//! The recursion computing fundamental groups of the four embedding spaces
//! from a companionship tree, together with meridian bookkeeping, the
//! quotient relations between the spaces, and split-link structure.

mod af;
mod engine;
pub(crate) mod lattice;
mod space;

pub use af::{compute_af, AfResult};
pub use engine::{
    factor_meridians, meridian_words, pi1_framed, pi1_solid_torus, pi1_thickened_torus,
    pi1_unframed, EngineError, MeridianSplitting,
};
pub use space::{pi1_of_space, space_of_group, FiniteGroupTag, SpaceExpr, SpaceResult};
