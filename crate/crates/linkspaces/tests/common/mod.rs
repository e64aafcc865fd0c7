//! Shared support for the integration suites: a seeded generator of valid
//! companionship trees and independent oracles.

use linkspaces::corpus::fixtures;
use linkspaces::link_model::{
    CompanionshipTree, LinkDescription, SignedPermutation, SimpleLink, Slot,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Options constraining the generated trees.
#[derive(Clone, Copy)]
pub struct GenOptions {
    pub max_depth: usize,
    pub max_companions: usize,
    /// Draw only symmetry fixtures whose actions carry no signs (needed for
    /// abelianization-torsion checks).
    pub unsigned_only: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_depth: 4,
            max_companions: 6,
            unsigned_only: false,
        }
    }
}

pub fn edge(t: CompanionshipTree) -> Slot {
    Slot::Edge {
        child: Box::new(t),
        reversed: false,
    }
}

fn torus_knot(rng: &mut ChaCha8Rng) -> CompanionshipTree {
    let (p, q) = *[(2i64, 3i64), (2, 5), (3, 4), (2, 7), (3, 5)]
        .choose(rng)
        .unwrap();
    CompanionshipTree::leaf(SimpleLink::Torus { p, q })
}

/// A cable companion: one torus knot spliced into a Seifert link, with a
/// deterministic invertibility declaration (consistent across isotopic
/// copies).
pub fn cable_companion(rng: &mut ChaCha8Rng) -> CompanionshipTree {
    let child = torus_knot(rng);
    let inv = matches!(child.vertex, SimpleLink::Torus { q, .. } if q % 2 == 1);
    let mut t = CompanionshipTree::splice(SimpleLink::Seifert { p: 2, q: 3 }, vec![edge(child)]);
    t.annotations.invertible = Some(inv);
    t
}

/// A companion whose framed group is free abelian (safe under sign actions).
fn abelian_companion(rng: &mut ChaCha8Rng, budget: &mut usize) -> CompanionshipTree {
    *budget = budget.saturating_sub(1);
    match rng.gen_range(0..4u8) {
        0 | 1 => torus_knot(rng),
        2 => CompanionshipTree::leaf(fixtures::whitehead()),
        _ => cable_companion(rng),
    }
}

/// Any valid companion within the budgets.
fn companion(
    rng: &mut ChaCha8Rng,
    depth: usize,
    budget: &mut usize,
    opts: &GenOptions,
) -> CompanionshipTree {
    if depth == 0 || *budget <= 1 || rng.gen_bool(0.5) {
        return abelian_companion(rng, budget);
    }
    let mut t = subtree(rng, depth - 1, budget, opts, false);
    if t.has_edges() && t.annotations.invertible.is_none() {
        t.annotations.invertible = Some(false);
    }
    t
}

/// Generates a valid tree. `is_root` loosens nothing; it only guards the
/// keychain shape whose meridian is known not to split.
fn subtree(
    rng: &mut ChaCha8Rng,
    depth: usize,
    budget: &mut usize,
    opts: &GenOptions,
    is_root: bool,
) -> CompanionshipTree {
    *budget = budget.saturating_sub(1);
    let splice_ok = depth > 0 && *budget > 0;
    match rng.gen_range(0..6u8) {
        // Seifert-family bases
        0 => {
            let (p, q) = *[(2i64, 3i64), (2, 5), (3, 4), (4, 6), (2, 4)].choose(rng).unwrap();
            CompanionshipTree::leaf(SimpleLink::Torus { p, q })
        }
        1 => {
            let (p, q) = *[(2i64, 5i64), (3, 4), (2, 3), (4, 6)].choose(rng).unwrap();
            CompanionshipTree::leaf(SimpleLink::Seifert { p, q })
        }
        2 if !splice_ok => CompanionshipTree::leaf(SimpleLink::RLink { p: 3, q: 4 }),
        // splices
        2 => {
            // Seifert-family root: at most one knot companion
            let vertex = [
                SimpleLink::Seifert { p: 2, q: 3 },
                SimpleLink::Seifert { p: 4, q: 6 },
                SimpleLink::Torus { p: 4, q: 6 },
                SimpleLink::RLink { p: 3, q: 4 },
            ]
            .choose(rng)
            .unwrap()
            .clone();
            let slots_n = vertex.components() - 1;
            let mut slots = vec![Slot::Leaf; slots_n];
            let target = rng.gen_range(0..slots_n);
            slots[target] = edge(companion(rng, depth, budget, opts));
            CompanionshipTree::splice(vertex, slots)
        }
        3 if !splice_ok => CompanionshipTree::leaf(SimpleLink::keychain(rng.gen_range(1..=3))),
        3 => {
            // keychain root with leaves and companions
            let n = rng.gen_range(2..=3usize);
            let mut slots = Vec::new();
            let mut same: Option<CompanionshipTree> = None;
            for i in 0..n {
                let last = i + 1 == n;
                let want_edge = *budget > 0 && (rng.gen_bool(0.6) || last && slots.is_empty());
                if !want_edge {
                    slots.push(Slot::Leaf);
                    continue;
                }
                // occasionally repeat a knot companion to exercise classes
                if let Some(prev) = &same {
                    if rng.gen_bool(0.4) {
                        slots.push(edge(prev.clone()));
                        continue;
                    }
                }
                let c = companion(rng, depth, budget, opts);
                if c.is_knot() {
                    same = Some(c.clone());
                }
                slots.push(edge(c));
            }
            let mut tree = CompanionshipTree::splice(SimpleLink::keychain(n), slots);
            if is_root && !tree.slots.iter().any(|s| matches!(s, Slot::Leaf)) {
                // the all-spliced keychain with repeated summands has a
                // non-split meridian; keep a leaf at the root
                tree.slots[0] = Slot::Leaf;
            }
            tree
        }
        4 => {
            // hyperbolic base
            let link = if opts.unsigned_only {
                [fixtures::borromean(), fixtures::l6a5()]
                    .choose(rng)
                    .unwrap()
                    .clone()
            } else {
                [
                    fixtures::whitehead(),
                    fixtures::borromean(),
                    fixtures::l8n1(),
                    fixtures::torus_knot_companion_link(3),
                    fixtures::l6a5(),
                ]
                .choose(rng)
                .unwrap()
                .clone()
            };
            CompanionshipTree::leaf(link)
        }
        _ if !splice_ok => torus_knot(rng),
        _ => {
            // hyperbolic splice with a declared entry for its leaf pattern
            if opts.unsigned_only {
                // Borromean rings (trivial symmetry) or Stoimenow (positive
                // cycle)
                if rng.gen_bool(0.5) {
                    CompanionshipTree::splice(
                        fixtures::borromean(),
                        vec![Slot::Leaf, edge(companion(rng, depth, budget, opts))],
                    )
                } else {
                    let r = rng.gen_range(3..=4u64);
                    let shared = abelian_companion(rng, budget);
                    let mut slots = vec![Slot::Leaf];
                    for _ in 0..r {
                        slots.push(edge(shared.clone()));
                    }
                    CompanionshipTree::splice(fixtures::stoimenow(r), slots)
                }
            } else {
                match rng.gen_range(0..4u8) {
                    0 => CompanionshipTree::splice(
                        fixtures::whitehead(),
                        vec![edge(abelian_companion(rng, budget))],
                    ),
                    1 => CompanionshipTree::splice(
                        fixtures::borromean(),
                        vec![Slot::Leaf, edge(companion(rng, depth, budget, opts))],
                    ),
                    2 => CompanionshipTree::splice(
                        fixtures::kgl3_inverting(),
                        vec![Slot::Leaf, edge(abelian_companion(rng, budget))],
                    ),
                    _ => {
                        let r = rng.gen_range(3..=5u64);
                        let shared = abelian_companion(rng, budget);
                        let mut slots = vec![Slot::Leaf];
                        for _ in 0..r {
                            slots.push(edge(shared.clone()));
                        }
                        if r % 2 == 1 && rng.gen_bool(0.5) {
                            CompanionshipTree::splice(fixtures::sakuma(r), slots)
                        } else {
                            CompanionshipTree::splice(fixtures::stoimenow(r), slots)
                        }
                    }
                }
            }
        }
    }
}

/// A random valid irreducible link description.
pub fn random_irreducible(rng: &mut ChaCha8Rng, opts: &GenOptions) -> LinkDescription {
    let mut budget = opts.max_companions;
    let tree = subtree(rng, opts.max_depth, &mut budget, opts, true);
    let desc = LinkDescription::Irreducible(tree);
    debug_assert!(
        linkspaces::link_model::validate(&desc).is_ok(),
        "generator produced an invalid tree: {desc:?}"
    );
    desc
}

// ---------------------------------------------------------------------------
// independent oracles

/// Membership per the companion equivalence relation, stated directly: sigma
/// may send slot i to k with sign eps iff the companions are isotopic knots
/// (or i = k) after matching orientation through eps.
#[allow(dead_code)]
pub fn equiv_rel_allows(
    companions: &[(CompanionshipTree, bool)],
    sigma: &SignedPermutation,
) -> bool {
    let iso = |a: &CompanionshipTree, b: &CompanionshipTree| {
        linkspaces::link_model::tree_iso(a, b, true)
    };
    for i in 0..companions.len() {
        let k = sigma.image(i);
        let eps = sigma.sign(i);
        let (ji, ri) = &companions[i];
        let (jk, rk) = &companions[k];
        let multi = ji.total_components() > 1;
        if multi && i != k {
            return false;
        }
        if i != k && (!ji.is_knot() || !jk.is_knot()) {
            return false;
        }
        if !iso(ji, jk) {
            return false;
        }
        // orientation bookkeeping: eps = -1 needs an inversion unless the
        // gluing orientations already differ; contradictory declarations on
        // isotopic companions read conservatively
        let invertible = ji.distinguished_invertible() == Some(true)
            && jk.distinguished_invertible() == Some(true);
        if !invertible {
            let rel_reversed = ri != rk;
            if (eps < 0) != rel_reversed {
                return false;
            }
        }
    }
    true
}

/// The independent hand-written relation matrix for the annular braid
/// group's abelianization: generators (crossing b, rotation t), relations
/// from the braid presentation on two strands around an axis. Returns
/// (rank, torsion).
#[allow(dead_code)]
pub fn annular_ab_by_hand(r: usize) -> (usize, Vec<u64>) {
    // Generators: beta_1..beta_{r-1} (in-class crossings), tau_1..tau_r
    // (windings of each moving strand around the axis). Relations in H_1:
    // all beta identified; all tau identified (conjugate strands).
    // That leaves Z<beta> + Z<tau>.
    let gens = (r - 1) + r;
    let mut rows = Vec::new();
    for i in 1..r - 1 {
        let mut row = vec![0i128; gens];
        row[0] = 1;
        row[i] = -1;
        rows.push(row);
    }
    for i in 1..r {
        let mut row = vec![0i128; gens];
        row[r - 1] = 1;
        row[r - 1 + i] = -1;
        rows.push(row);
    }
    if rows.is_empty() {
        rows.push(vec![0; gens]);
    }
    let m = linkspaces::group::smith::IntMat::from_rows(&rows);
    let (rank, torsion) = linkspaces::group::smith::cokernel(&m);
    (rank, torsion)
}
