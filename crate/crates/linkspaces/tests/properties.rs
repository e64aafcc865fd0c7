//! Property tests for the spec-level invariants: canonicalization and
//! normalization idempotence, the equivalence-relation laws of tree
//! isotopy, abelianization route agreement, quotient/abelianization
//! commutation, and space-result coherence.

mod common;

use common::{rng, GenOptions};
use linkspaces::group::{
    abelianize, abelianize_presentation, iso_check, normalize, quotient_by_generators,
    to_presentation, GeneratorName, GroupExpr, IsoResult, Word,
};
use linkspaces::homotopy::{pi1_framed, pi1_of_space};
use linkspaces::link_model::{canonical_tree, tree_iso, LinkDescription};
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// random group expressions (no opaque factors)

fn arb_names(tag: u64, count: usize) -> Vec<GeneratorName> {
    (0..count)
        .map(|i| GeneratorName::named(&format!("x{tag}_{i}")))
        .collect()
}

fn arb_expr() -> impl Strategy<Value = GroupExpr> {
    let leaf = prop_oneof![
        Just(GroupExpr::Trivial),
        (1u64..1000, 1usize..4)
            .prop_map(|(tag, n)| GroupExpr::FreeAbelian(arb_names(tag, n))),
        (2u64..7).prop_map(GroupExpr::Cyclic),
        (0usize..5, 0usize..8).prop_map(|(n, scope)| GroupExpr::PureBraid {
            strands: n,
            scope: vec![scope],
        }),
        (0usize..2, 2usize..4, 0usize..8).prop_map(|(fixed, class, scope)| {
            GroupExpr::YoungBraid {
                fixed,
                classes: vec![class],
                scope: vec![scope],
            }
        }),
        (4usize..7, 0usize..8).prop_map(|(p, scope)| GroupExpr::SpherePureMapping {
            punctures: p,
            scope: vec![scope],
        }),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
            // an inversion semidirect: Z<a> acting on one free factor
            (1000u64..2000, 1usize..3).prop_map(|(tag, n)| {
                let names = arb_names(tag, n);
                GroupExpr::SemiDirect {
                    kernel: vec![GroupExpr::FreeAbelian(names.clone())],
                    actor: Box::new(GroupExpr::FreeAbelian(arb_names(tag + 5000, 1))),
                    action: linkspaces::group::ActionSpec::SignedPerm {
                        perm: linkspaces::link_model::SignedPermutation::from_signed_images(
                            &[-1],
                        )
                        .unwrap(),
                        inversion_targets: vec![names],
                    },
                }
            }),
            // a swap semidirect on two equal free factors
            (2000u64..3000, 1usize..3).prop_map(|(tag, n)| {
                GroupExpr::SemiDirect {
                    kernel: vec![
                        GroupExpr::FreeAbelian(arb_names(tag, n)),
                        GroupExpr::FreeAbelian(arb_names(tag + 5000, n)),
                    ],
                    actor: Box::new(GroupExpr::FreeAbelian(arb_names(tag + 9000, 1))),
                    action: linkspaces::group::ActionSpec::SignedPerm {
                        perm: linkspaces::link_model::SignedPermutation::from_signed_images(
                            &[2, 1],
                        )
                        .unwrap(),
                        inversion_targets: vec![vec![], vec![]],
                    },
                }
            }),
        ]
    })
}

/// Reassigns braid scopes so generator names are globally unique, matching
/// the engine's tree-path scoping invariant.
fn uniquify_scopes(e: &GroupExpr) -> GroupExpr {
    fn walk(e: &GroupExpr, next: &mut usize) -> GroupExpr {
        let mut fresh = || {
            *next += 1;
            vec![100 + *next]
        };
        match e {
            GroupExpr::PureBraid { strands, .. } => GroupExpr::PureBraid {
                strands: *strands,
                scope: fresh(),
            },
            GroupExpr::SpherePureMapping { punctures, .. } => GroupExpr::SpherePureMapping {
                punctures: *punctures,
                scope: fresh(),
            },
            GroupExpr::YoungBraid { fixed, classes, .. } => GroupExpr::YoungBraid {
                fixed: *fixed,
                classes: classes.clone(),
                scope: fresh(),
            },
            GroupExpr::Product(fs) => {
                GroupExpr::Product(fs.iter().map(|f| walk(f, next)).collect())
            }
            GroupExpr::SemiDirect {
                kernel,
                actor,
                action,
            } => GroupExpr::SemiDirect {
                kernel: kernel.iter().map(|k| walk(k, next)).collect(),
                actor: Box::new(walk(actor, next)),
                action: action.clone(),
            },
            other => other.clone(),
        }
    }
    walk(e, &mut 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(e in arb_expr().prop_map(|e| uniquify_scopes(&e))) {
        let n1 = normalize(&e);
        let n2 = normalize(&n1);
        prop_assert_eq!(&n1, &n2);
    }

    #[test]
    fn normalize_preserves_abelianization(e in arb_expr().prop_map(|e| uniquify_scopes(&e))) {
        let before = abelianize(&e).unwrap();
        let after = abelianize(&normalize(&e)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn abelianization_routes_agree(e in arb_expr().prop_map(|e| uniquify_scopes(&e))) {
        // structural route vs presentation + Smith normal form
        let structural = abelianize(&e).unwrap();
        let p = to_presentation(&e).unwrap();
        let by_presentation = abelianize_presentation(&p);
        prop_assert_eq!(structural, by_presentation);
    }

    #[test]
    fn iso_check_reflexive_and_symmetric(
        a in arb_expr().prop_map(|e| uniquify_scopes(&e)),
        b in arb_expr().prop_map(|e| uniquify_scopes(&e)),
    ) {
        prop_assert_eq!(iso_check(&a, &a), IsoResult::Equal);
        let ab_ = iso_check(&a, &b);
        let ba = iso_check(&b, &a);
        let same = matches!(
            (&ab_, &ba),
            (IsoResult::Equal, IsoResult::Equal)
                | (IsoResult::Distinct(_), IsoResult::Distinct(_))
                | (IsoResult::Unknown, IsoResult::Unknown)
        );
        prop_assert!(same, "asymmetric iso results: {:?} vs {:?}", ab_, ba);
        if ab_ == IsoResult::Equal {
            prop_assert_eq!(abelianize(&a).unwrap(), abelianize(&b).unwrap());
        }
    }

    #[test]
    fn quotient_commutes_with_abelianization(
        tag in 1u64..1000,
        n in 2usize..5,
        coeffs in prop::collection::vec(-2i32..3, 2..5),
    ) {
        // quotient of a free abelian group by one word, checked against the
        // Smith normal form of the corresponding relation matrix
        let names = arb_names(tag, n);
        let e = GroupExpr::FreeAbelian(names.clone());
        let word = Word(
            names
                .iter()
                .zip(&coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(g, &c)| (g.clone(), c))
                .collect(),
        );
        prop_assume!(!word.0.is_empty());
        let q = quotient_by_generators(&e, std::slice::from_ref(&word)).unwrap();
        if matches!(q, GroupExpr::QuotientByNormal { .. }) {
            // residual form: sound but unreduced; no claim to check
            return Ok(());
        }
        let got = abelianize(&q).unwrap();
        let mut row = vec![0i128; n];
        for (g, c) in &word.0 {
            let idx = names.iter().position(|x| x == g).unwrap();
            row[idx] += *c as i128;
        }
        let m = linkspaces::group::smith::IntMat::from_rows(&[row]);
        let (rank, torsion) = linkspaces::group::smith::cokernel(&m);
        prop_assert_eq!((got.rank, got.torsion.clone()), (rank, torsion));
    }
}

// ---------------------------------------------------------------------------
// tree-level properties

#[test]
fn canonical_tree_is_idempotent_on_random_trees() {
    let mut r = rng(123);
    let opts = GenOptions::default();
    for _ in 0..150 {
        let LinkDescription::Irreducible(tree) = common::random_irreducible(&mut r, &opts)
        else {
            continue;
        };
        let c1 = canonical_tree(&tree);
        let c2 = canonical_tree(&c1);
        assert_eq!(c1, c2);
    }
}

#[test]
fn tree_iso_is_an_equivalence_relation() {
    let mut r = rng(321);
    let opts = GenOptions {
        max_depth: 2,
        max_companions: 3,
        unsigned_only: false,
    };
    let trees: Vec<_> = (0..24)
        .map(|_| match common::random_irreducible(&mut r, &opts) {
            LinkDescription::Irreducible(t) => t,
            LinkDescription::Split(_) => unreachable!(),
        })
        .collect();
    for a in &trees {
        assert!(tree_iso(a, a, false), "reflexive");
        for b in &trees {
            assert_eq!(tree_iso(a, b, false), tree_iso(b, a, false), "symmetric");
            for c in &trees {
                if tree_iso(a, b, false) && tree_iso(b, c, false) {
                    assert!(tree_iso(a, c, false), "transitive");
                }
            }
        }
    }
}

#[test]
fn component_count_preserved_by_canonicalization() {
    let mut r = rng(555);
    let opts = GenOptions::default();
    for _ in 0..150 {
        let LinkDescription::Irreducible(tree) = common::random_irreducible(&mut r, &opts)
        else {
            continue;
        };
        assert_eq!(
            canonical_tree(&tree).total_components(),
            tree.total_components()
        );
    }
}

#[test]
fn space_results_are_coherent() {
    // recomputing pi1 from the space expression agrees with the computed pi1
    let mut r = rng(777);
    let opts = GenOptions::default();
    let mut checked = 0;
    for case in 0..150 {
        let desc = common::random_irreducible(&mut r, &opts);
        let res = pi1_framed(&desc).expect("framed");
        let Some(rebuilt) = pi1_of_space(&res.space) else {
            continue;
        };
        checked += 1;
        assert_eq!(
            iso_check(&rebuilt, &res.pi1),
            IsoResult::Equal,
            "case {case}: space {} rebuilds {} but pi1 is {}",
            res.space,
            normalize(&rebuilt),
            res.pi1
        );
    }
    assert!(checked >= 100, "only {checked} coherent-space cases");
}

#[test]
fn unframed_outputs_are_torsion_free_for_irreducible_links() {
    // unsigned fixtures: quotients of the framed groups stay torsion-free
    let mut r = rng(888);
    let opts = GenOptions {
        unsigned_only: true,
        ..GenOptions::default()
    };
    for _ in 0..100 {
        let desc = common::random_irreducible(&mut r, &opts);
        let unframed = linkspaces::homotopy::pi1_unframed(&desc).expect("unframed");
        if unframed.pi1.contains_opaque() {
            continue;
        }
        let ab = abelianize(&unframed.pi1).expect("abelianize");
        assert!(
            ab.is_torsion_free(),
            "H_1 = {ab} for {}",
            unframed.pi1
        );
    }
}
