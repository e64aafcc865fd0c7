use super::simple::{canonicalize_simple, singular_fibers, SimpleLink};
use super::tree::CompanionshipTree;

/// Where a companionship tree sits in the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkClass {
    /// Seifert-fibered base case: n+1 components, r singular fibers.
    SeifertBase { n: usize, r: u32 },
    HyperbolicBase,
    Satellite { root_case: RootCase },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootCase {
    CableS,
    CableR,
    CableT,
    Keychain,
    HyperbolicSplice,
}

/// Errors from classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    /// The bare unknot token; callers decide whether that is allowed.
    UnknotInput,
}

/// Classifies a validated tree after canonicalizing its root vertex.
pub fn classify(tree: &CompanionshipTree) -> Result<LinkClass, ClassifyError> {
    let vertex = canonicalize_simple(&tree.vertex);
    if matches!(vertex, SimpleLink::Unknot) {
        return Err(ClassifyError::UnknotInput);
    }
    if tree.has_edges() {
        let root_case = match vertex {
            SimpleLink::Torus { .. } => RootCase::CableT,
            SimpleLink::Seifert { .. } => RootCase::CableS,
            SimpleLink::RLink { .. } => RootCase::CableR,
            SimpleLink::Keychain { .. } => RootCase::Keychain,
            SimpleLink::Hyperbolic(_) => RootCase::HyperbolicSplice,
            SimpleLink::Unknot => unreachable!(),
        };
        return Ok(LinkClass::Satellite { root_case });
    }
    match &vertex {
        SimpleLink::Hyperbolic(_) => Ok(LinkClass::HyperbolicBase),
        other => Ok(LinkClass::SeifertBase {
            n: other.components() - 1,
            r: singular_fibers(other).expect("canonical Seifert family"),
        }),
    }
}
