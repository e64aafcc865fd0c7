//! Hyperbolic link declarations used by the bundled corpus and the test
//! generators. Symmetry data follows the published tables (orders, signed
//! permutation actions, fractional shifts), taken as declared input.

use crate::link_model::{
    HypSymmetry, HyperbolicLink, Rational, SignedPermutation, SimpleLink, SymmetryEntry,
};
use std::collections::BTreeSet;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn entry(fixed: &[usize], order: u64, images: &[i64], shift: &[Rational]) -> SymmetryEntry {
    SymmetryEntry {
        fixed_components: fixed.iter().copied().collect(),
        order,
        action: SignedPermutation::from_signed_images(images).expect("fixture permutation"),
        shift: shift.to_vec(),
    }
}

/// The Whitehead link: 2 unknotted components, amphichiral-style symmetries.
/// The orientation-preserving symmetry fixing both components is trivial;
/// fixing only component 0, a symmetry reverses component 1 after half a
/// reparametrization.
pub fn whitehead() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "Wh".into(),
        components: 2,
        unknotted: BTreeSet::from([0, 1]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true],
        symmetry: HypSymmetry {
            entries: vec![
                entry(&[0, 1], 1, &[], &[r(0, 1), r(0, 1)]),
                entry(&[0], 2, &[-1], &[r(1, 2)]),
                entry(&[1], 2, &[-1], &[r(1, 2)]),
            ],
        },
    })
}

/// The Borromean rings: no symmetry preserves two components with both
/// orientations.
pub fn borromean() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "Borr".into(),
        components: 3,
        unknotted: BTreeSet::from([0, 1, 2]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true, true],
        symmetry: HypSymmetry {
            entries: vec![
                entry(&[0, 1, 2], 1, &[], &[r(0, 1); 3]),
                entry(&[0, 1], 1, &[1], &[r(0, 1), r(0, 1)]),
            ],
        },
    })
}

/// L8n1 (8^2_16): unknot plus figure-eight companions, with the rotation by
/// pi preserving both components; generator = (1/2)(lambda_0 + lambda_1).
pub fn l8n1() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "L8n1".into(),
        components: 2,
        unknotted: BTreeSet::from([1]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1], 2, &[], &[r(1, 2), r(1, 2)])],
        },
    })
}

/// The hyperbolic link with one unknot component and one (2,k)-torus-knot
/// component (L9a32 for k = 3): Z/k symmetry with shift (1/k)(l0 + l1).
pub fn torus_knot_companion_link(k: u64) -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: format!("L(2,{k})hyp"),
        components: 2,
        unknotted: BTreeSet::from([1]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true],
        symmetry: HypSymmetry {
            entries: vec![entry(
                &[0, 1],
                k,
                &[],
                &[r(1, k as i64), r(1, k as i64)],
            )],
        },
    })
}

/// The analogous link built from the knot 8_18, with Z/4 symmetry.
pub fn link_from_8_18() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "L8-18hyp".into(),
        components: 2,
        unknotted: BTreeSet::from([1]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1], 4, &[], &[r(1, 4), r(1, 4)])],
        },
    })
}

/// L6a5 (6^3_1): three components containing a Hopf sublink; no nontrivial
/// symmetry preserves all three with orientations.
pub fn l6a5() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "L6a5".into(),
        components: 3,
        unknotted: BTreeSet::from([0, 1, 2]),
        hopf_pairs: BTreeSet::from([(1, 2)]),
        invertible: vec![true, true, true],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1, 2], 1, &[], &[r(0, 1); 3])],
        },
    })
}

/// The 3-component KGL whose Z/2 symmetry reverses the spliceable
/// component: rotation by pi with shift (1/2)(l0 + l1).
pub fn kgl3_inverting() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "L3kgl".into(),
        components: 3,
        unknotted: BTreeSet::from([0, 1, 2]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true, true],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1], 2, &[-1], &[r(1, 2), r(1, 2)])],
        },
    })
}

/// The 5-component KGL whose Z/2 symmetry inverts the infinity-shaped
/// component and swaps the remaining two spliceable components.
pub fn kgl5_swapping() -> SimpleLink {
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: "L5kgl".into(),
        components: 5,
        unknotted: BTreeSet::from([0, 1, 2, 3, 4]),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true, true, true, true, true],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1], 2, &[-1, 3, 2], &[r(1, 2), r(1, 2)])],
        },
    })
}

/// Stoimenow's link: r+2 components, Z/r symmetry cyclically permuting the
/// spliceable components, shift (1/r) lambda_0.
pub fn stoimenow(rr: u64) -> SimpleLink {
    let r_ = rr as i64;
    let mut images: Vec<i64> = (2..=r_).collect();
    images.push(1);
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: format!("Stoimenow{rr}"),
        components: rr as usize + 2,
        unknotted: (0..rr as usize + 2).collect(),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true; rr as usize + 2],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1], rr, &images, &[r(1, r_), r(0, 1)])],
        },
    })
}

/// Sakuma's link: r+2 components (r odd), Z/2r symmetry acting by a negative
/// r-cycle, shift (1/r) lambda_0 + (1/2) lambda_1.
pub fn sakuma(rr: u64) -> SimpleLink {
    assert!(rr % 2 == 1, "the Sakuma family needs odd r");
    let r_ = rr as i64;
    let mut images: Vec<i64> = (2..=r_).map(|v| -v).collect();
    images.push(-1);
    SimpleLink::Hyperbolic(HyperbolicLink {
        name: format!("Sakuma{rr}"),
        components: rr as usize + 2,
        // the torus-knot-shaped component 0 is knotted
        unknotted: (1..rr as usize + 2).collect(),
        hopf_pairs: BTreeSet::new(),
        invertible: vec![true; rr as usize + 2],
        symmetry: HypSymmetry {
            entries: vec![entry(&[0, 1], 2 * rr, &images, &[r(1, r_), r(1, 2)])],
        },
    })
}
