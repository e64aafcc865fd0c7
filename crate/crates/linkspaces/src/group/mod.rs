//! Structured group expressions: normalization, presentations,
//! abelianization, central quotients, and a sound tri-state isomorphism
//! check.

mod abelian;
pub mod braid;
mod expr;
mod iso;
mod name;
mod normalize;
mod present;
mod quotient;
pub mod smith;

pub use abelian::{abelianize, abelianize_presentation, FinAbGroup};
pub use expr::{ActionSpec, GroupExpr, GroupError};
pub use iso::{iso_check, IsoResult};
pub use name::{GeneratorName, NameKind, Path};
pub use normalize::normalize;
pub use present::{center_word as braid_center_word, to_presentation, Presentation, Word};
pub use quotient::quotient_by_generators;
