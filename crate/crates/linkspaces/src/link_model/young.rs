use super::perm::SignedPermutation;
use super::tree::{canonical_tree, CompanionshipTree};
use std::fmt;

/// One class of interchangeable companions. Slots are 0-based positions in
/// the companion vector; `orientations` records the gluing orientation of
/// each member (false = as declared, true = reversed), which matters only
/// for non-invertible members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungClass {
    pub slots: Vec<usize>,
    pub orientations: Vec<bool>,
    pub sign_allowed: bool,
    /// Multi-component companions may not be permuted.
    pub permutable: bool,
}

/// The subgroup of the signed symmetric group allowed by isotopy of the
/// companions: permutations within classes of isotopic knots, with signs
/// where inversion is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedYoungSubgroup {
    pub size: usize,
    pub classes: Vec<YoungClass>,
}

impl SignedYoungSubgroup {
    /// Full signed symmetric group on one class of r interchangeable,
    /// invertible members.
    pub fn full(r: usize) -> Self {
        SignedYoungSubgroup {
            size: r,
            classes: vec![YoungClass {
                slots: (0..r).collect(),
                orientations: vec![false; r],
                sign_allowed: true,
                permutable: true,
            }],
        }
    }

    pub fn trivial(r: usize) -> Self {
        SignedYoungSubgroup {
            size: r,
            classes: (0..r)
                .map(|i| YoungClass {
                    slots: vec![i],
                    orientations: vec![false],
                    sign_allowed: false,
                    permutable: true,
                })
                .collect(),
        }
    }

    fn class_of(&self, slot: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.slots.contains(&slot))
    }

    fn orientation_of(&self, slot: usize) -> bool {
        self.classes
            .iter()
            .find_map(|c| {
                c.slots
                    .iter()
                    .position(|&s| s == slot)
                    .map(|k| c.orientations[k])
            })
            .unwrap_or(false)
    }

    /// Membership test per the companion equivalence relation: sigma may send
    /// slot i to slot k with sign eps only if the companions are isotopic
    /// after matching orientations, i.e. they lie in one class and either the
    /// class is invertible or eps agrees with the relative orientation.
    pub fn contains(&self, sigma: &SignedPermutation) -> bool {
        if sigma.size() != self.size {
            return false;
        }
        for i in 0..self.size {
            let k = sigma.image(i);
            let eps = sigma.sign(i);
            let (Some(ci), Some(ck)) = (self.class_of(i), self.class_of(k)) else {
                return false;
            };
            if ci != ck {
                return false;
            }
            let class = &self.classes[ci];
            if i != k && !class.permutable {
                return false;
            }
            if !class.sign_allowed {
                let rel_reversed = self.orientation_of(i) != self.orientation_of(k);
                let needs_minus = rel_reversed;
                if (eps < 0) != needs_minus {
                    return false;
                }
            }
        }
        true
    }

    /// Group order by the product formula when orientations are uniform,
    /// otherwise by enumeration.
    pub fn order(&self) -> u64 {
        let uniform = self
            .classes
            .iter()
            .all(|c| c.orientations.iter().all(|&o| !o));
        if uniform {
            let mut n: u64 = 1;
            for c in &self.classes {
                let s = c.slots.len() as u64;
                if c.permutable {
                    n *= (1..=s).product::<u64>();
                }
                if c.sign_allowed {
                    n *= 1u64 << s;
                }
            }
            n
        } else {
            self.order_by_enumeration()
        }
    }

    pub fn order_by_enumeration(&self) -> u64 {
        SignedPermutation::all(self.size)
            .iter()
            .filter(|p| self.contains(p))
            .count() as u64
    }
}

impl fmt::Display for SignedYoungSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                format!(
                    "{{{}}}{}",
                    c.slots
                        .iter()
                        .map(|s| (s + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    if c.sign_allowed { "±" } else { "" }
                )
            })
            .collect();
        write!(f, "Y({})", parts.join(" "))
    }
}

/// Companion data fed to `signed_young`: the tree, the gluing orientation,
/// and the resolved invertibility of the distinguished component (None when
/// a composite companion lacks the declaration).
#[derive(Clone, Debug)]
pub struct CompanionData {
    pub tree: CompanionshipTree,
    pub reversed: bool,
    pub invertible: Option<bool>,
}

impl CompanionData {
    pub fn from_tree(tree: &CompanionshipTree, reversed: bool) -> Self {
        CompanionData {
            invertible: tree.distinguished_invertible(),
            tree: tree.clone(),
            reversed,
        }
    }
}

/// Computes the signed Young subgroup of the companion vector: knot
/// companions grouped by tree isotopy, multi-component companions as
/// non-permutable singletons, signs where the class is invertible.
pub fn signed_young(companions: &[CompanionData]) -> Result<SignedYoungSubgroup, String> {
    let r = companions.len();
    let canon: Vec<CompanionshipTree> = companions
        .iter()
        .map(|c| canonical_tree(&c.tree))
        .collect();
    for (i, c) in companions.iter().enumerate() {
        if c.invertible.is_none() {
            return Err(format!(
                "companion {} is composite and lacks an invertibility declaration",
                i
            ));
        }
        let _ = &canon[i];
    }

    let mut classes: Vec<YoungClass> = Vec::new();
    let mut assigned = vec![false; r];
    for i in 0..r {
        if assigned[i] {
            continue;
        }
        let is_knot = companions[i].tree.is_knot();
        let mut invertible = companions[i].invertible == Some(true);
        let mut slots = vec![i];
        assigned[i] = true;
        if is_knot {
            for k in (i + 1)..r {
                if assigned[k] || !companions[k].tree.is_knot() {
                    continue;
                }
                if super::tree::tree_iso(&companions[i].tree, &companions[k].tree, true) {
                    slots.push(k);
                    // contradictory declarations read conservatively
                    invertible &= companions[k].invertible == Some(true);
                    assigned[k] = true;
                }
            }
        }
        let orientations = slots
            .iter()
            .map(|&s| companions[s].reversed && !invertible)
            .collect();
        classes.push(YoungClass {
            slots,
            orientations,
            sign_allowed: invertible,
            permutable: is_knot,
        });
    }
    Ok(SignedYoungSubgroup { size: r, classes })
}
