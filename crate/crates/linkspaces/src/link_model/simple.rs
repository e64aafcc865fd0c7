use super::{perm::SignedPermutation, Rational};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// One row of a hyperbolic symmetry table: the cyclic group of isometries
/// preserving the given components with orientation, together with the signed
/// permutation its generator induces on the remaining components and the
/// fractional reparametrization vector describing the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryEntry {
    /// Components preserved with orientation (the "0..n" of B_{L,0..n}).
    pub fixed_components: BTreeSet<usize>,
    /// Order of the cyclic group.
    pub order: u64,
    /// Image of a chosen generator on the non-fixed components, listed in
    /// increasing component order.
    pub action: SignedPermutation,
    /// Generator as a fractional combination of the loops lambda_i of the
    /// fixed components, in increasing component order.
    pub shift: Vec<Rational>,
}

/// Declared symmetry data for a hyperbolic link: one entry per relevant
/// fixed-component subset. Absent subsets are treated as trivial only where a
/// base-case computation needs the all-fixed entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypSymmetry {
    pub entries: Vec<SymmetryEntry>,
}

impl HypSymmetry {
    pub fn entry_for(&self, fixed: &BTreeSet<usize>) -> Option<&SymmetryEntry> {
        self.entries.iter().find(|e| &e.fixed_components == fixed)
    }
}

/// A hyperbolic vertex label, taken as declared input (names come from link
/// tables; symmetry groups are verified externally, e.g. with SnapPy).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicLink {
    pub name: String,
    pub components: usize,
    /// Component indices that are unknots in S^3.
    pub unknotted: BTreeSet<usize>,
    /// Pairs of component indices declared to form Hopf sublinks.
    pub hopf_pairs: BTreeSet<(usize, usize)>,
    /// Whether reversing the orientation of component i yields an isotopic
    /// link (fixing the other components).
    pub invertible: Vec<bool>,
    pub symmetry: HypSymmetry,
}

/// Label of a companionship-tree vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimpleLink {
    /// The torus link T_{p,q}, gcd(p,q) components.
    Torus { p: i64, q: i64 },
    /// S_{p,q} = T_{p,q} together with the core circle C2; gcd+1 components,
    /// C2 last.
    Seifert { p: i64, q: i64 },
    /// R_{p,q} = T_{p,q} together with both core circles; gcd+2 components,
    /// C1 and C2 last.
    RLink { p: i64, q: i64 },
    /// The (n+1)-component keychain link. `special` is the index of the
    /// special component C1 (0 in all canonical descriptions; other values
    /// arise only in reorder-invariance comparisons).
    Keychain { n: usize, special: usize },
    /// Reserved token: the unknot. Appears only as a degenerate total link,
    /// never as a companion.
    Unknot,
    Hyperbolic(HyperbolicLink),
}

impl SimpleLink {
    pub fn keychain(n: usize) -> Self {
        SimpleLink::Keychain { n, special: 0 }
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        match self {
            SimpleLink::Torus { p, q } => p.unsigned_abs().gcd(&q.unsigned_abs()) as usize,
            SimpleLink::Seifert { p, q } => p.unsigned_abs().gcd(&q.unsigned_abs()) as usize + 1,
            SimpleLink::RLink { p, q } => p.unsigned_abs().gcd(&q.unsigned_abs()) as usize + 2,
            SimpleLink::Keychain { n, .. } => n + 1,
            SimpleLink::Unknot => 1,
            SimpleLink::Hyperbolic(h) => h.components,
        }
    }

    /// Whether component `i` of this simple link is an unknot in S^3.
    /// Derived for the Seifert families, declared for hyperbolic vertices.
    pub fn component_unknotted(&self, i: usize) -> bool {
        match self {
            SimpleLink::Torus { p, q } => {
                let g = p.unsigned_abs().gcd(&q.unsigned_abs()) as i64;
                p.abs() / g == 1 || q.abs() / g == 1
            }
            SimpleLink::Seifert { p, q } => {
                let g = p.unsigned_abs().gcd(&q.unsigned_abs()) as usize;
                if i == g {
                    true // C2
                } else {
                    let g = g as i64;
                    p.abs() / g == 1 || q.abs() / g == 1
                }
            }
            SimpleLink::RLink { p, q } => {
                let g = p.unsigned_abs().gcd(&q.unsigned_abs()) as usize;
                if i >= g {
                    true // C1, C2
                } else {
                    let g = g as i64;
                    p.abs() / g == 1 || q.abs() / g == 1
                }
            }
            SimpleLink::Keychain { .. } => true,
            SimpleLink::Unknot => true,
            SimpleLink::Hyperbolic(h) => h.unknotted.contains(&i),
        }
    }

    /// Whether reversing component `i` preserves the isotopy class. Torus
    /// links (and all Seifert families here) are invertible.
    pub fn component_invertible(&self, i: usize) -> bool {
        match self {
            SimpleLink::Hyperbolic(h) => h.invertible.get(i).copied().unwrap_or(false),
            _ => true,
        }
    }
}

impl fmt::Display for SimpleLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleLink::Torus { p, q } => write!(f, "torus({p},{q})"),
            SimpleLink::Seifert { p, q } => write!(f, "seifert({p},{q})"),
            SimpleLink::RLink { p, q } => write!(f, "rlink({p},{q})"),
            SimpleLink::Keychain { n, .. } => write!(f, "keychain({n})"),
            SimpleLink::Unknot => write!(f, "unknot"),
            SimpleLink::Hyperbolic(h) => write!(f, "{}", h.name),
        }
    }
}

/// Canonical representative of the Seifert-family isotopy class.
///
/// Sign normalization (torus links are invertible), argument sorting for T
/// and R, and the degeneracy rewrites
/// T_{1,q} -> unknot, T_{2,2} -> KC_1, T_{n,n} -> R_{n-2,n-2},
/// T_{n,nq'} -> S_{(n-1)q',n-1}, S_{1,q} -> KC_1, S_{n,nq'} -> R_{n-1,(n-1)q'}.
/// Idempotent; keychain and hyperbolic labels pass through.
pub fn canonicalize_simple(link: &SimpleLink) -> SimpleLink {
    match *link {
        SimpleLink::Torus { p, q } => {
            let (mut p, mut q) = (p.abs(), q.abs());
            if q < p {
                std::mem::swap(&mut p, &mut q);
            }
            if p == 1 {
                return SimpleLink::Unknot;
            }
            if p == q {
                return if p == 2 {
                    SimpleLink::keychain(1)
                } else {
                    SimpleLink::RLink { p: p - 2, q: q - 2 }
                };
            }
            if q % p == 0 {
                let qp = q / p;
                return SimpleLink::Seifert {
                    p: (p - 1) * qp,
                    q: p - 1,
                };
            }
            SimpleLink::Torus { p, q }
        }
        SimpleLink::Seifert { p, q } => {
            let (p, q) = (p.abs(), q.abs());
            if p == 1 {
                return SimpleLink::keychain(1);
            }
            if q % p == 0 {
                let qp = q / p;
                return SimpleLink::RLink {
                    p: p - 1,
                    q: (p - 1) * qp,
                };
            }
            SimpleLink::Seifert { p, q }
        }
        SimpleLink::RLink { p, q } => {
            let (mut p, mut q) = (p.abs(), q.abs());
            if q < p {
                std::mem::swap(&mut p, &mut q);
            }
            SimpleLink::RLink { p, q }
        }
        ref other => other.clone(),
    }
}

/// Singular-fiber count of the exterior of a canonical Seifert-family link.
pub fn singular_fibers(link: &SimpleLink) -> Option<u32> {
    match link {
        SimpleLink::Torus { .. } => Some(2),
        SimpleLink::Seifert { .. } => Some(1),
        SimpleLink::RLink { .. } | SimpleLink::Keychain { .. } => Some(0),
        _ => None,
    }
}

/// Validity checks for one symmetry entry against a component count.
pub fn check_symmetry_entry(entry: &SymmetryEntry, components: usize) -> Result<(), String> {
    if entry.fixed_components.iter().any(|&i| i >= components) {
        return Err("symmetry entry fixes an out-of-range component".into());
    }
    let free = components - entry.fixed_components.len();
    if entry.action.size() != free {
        return Err(format!(
            "symmetry action has size {} but {} components are not fixed",
            entry.action.size(),
            free
        ));
    }
    if entry.shift.len() != entry.fixed_components.len() {
        return Err("symmetry shift length differs from fixed-component count".into());
    }
    if entry.order == 0 {
        return Err("symmetry order must be positive".into());
    }
    if !entry.action.pow(entry.order).is_identity() {
        return Err("symmetry action^order is not the identity".into());
    }
    let mut lcm: i64 = 1;
    for s in &entry.shift {
        if (*s * Rational::from_integer(entry.order as i64))
            .denom()
            .abs()
            != 1
        {
            return Err("order * shift is not an integer vector".into());
        }
        lcm = lcm.lcm(s.denom());
    }
    if entry.order > 1 && lcm.unsigned_abs() != entry.order {
        return Err(format!(
            "shift denominators have lcm {} but the entry claims order {}",
            lcm, entry.order
        ));
    }
    if entry.order == 1 && entry.shift.iter().any(|s| !s.is_zero() && s.denom().abs() != 1) {
        return Err("order-1 entry must have integral shift".into());
    }
    Ok(())
}
