use crate::link_model::{Rational, SignedPermutation, SignedYoungSubgroup, SymmetryEntry};

/// The subgroup A_F of the vertex symmetry group compatible with the
/// companions: order, chosen generator data, and its action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfResult {
    /// Order of A_F (= entry.order / d).
    pub order: u64,
    /// Exponent d: the minimal positive power of the symmetry generator
    /// whose action lies in the signed Young subgroup.
    pub exponent: u64,
    /// Shift of the chosen generator alpha = d * entry.shift (lambda
    /// coordinates over the fixed components).
    pub shift: Vec<Rational>,
    /// Action of alpha on the companion slots.
    pub action: SignedPermutation,
}

/// Computes A_F = preimage of the signed Young subgroup under
/// B_{L,0..n} -> S_r^±. The exponent set {d : action^d in Y} is a subgroup
/// of Z containing entry.order, so its positive generator divides the order.
pub fn compute_af(entry: &SymmetryEntry, young: &SignedYoungSubgroup) -> AfResult {
    assert_eq!(
        entry.action.size(),
        young.size,
        "symmetry action and companion count disagree"
    );
    let mut d = entry.order;
    for cand in 1..=entry.order {
        if young.contains(&entry.action.pow(cand)) {
            d = cand;
            break;
        }
    }
    debug_assert_eq!(entry.order % d, 0, "exponent must divide the order");
    let order = entry.order / d;
    let shift: Vec<Rational> = entry
        .shift
        .iter()
        .map(|s| *s * Rational::from_integer(d as i64))
        .collect();
    AfResult {
        order,
        exponent: d,
        shift,
        action: entry.action.pow(d),
    }
}
