use super::expr::{ActionSpec, GroupExpr};
use super::name::GeneratorName;
use crate::link_model::SignedPermutation;
use std::collections::BTreeSet;

/// Canonical sort key for product factors: variant tag, size parameters,
/// then generator names.
pub(crate) fn sort_key(e: &GroupExpr) -> String {
    match e {
        GroupExpr::Trivial => "0:".into(),
        GroupExpr::FreeAbelian(names) => {
            let ns: Vec<String> = names.iter().map(|n| n.to_string()).collect();
            format!("1:{}:{}", names.len(), ns.join(","))
        }
        GroupExpr::Cyclic(k) => format!("2:{k}"),
        GroupExpr::PureBraid { strands, scope } => {
            format!("3:{strands}:{}", super::name::path_str(scope))
        }
        GroupExpr::SpherePureMapping { punctures, scope } => {
            format!("4:{punctures}:{}", super::name::path_str(scope))
        }
        GroupExpr::YoungBraid {
            fixed,
            classes,
            scope,
        } => format!(
            "5:{fixed}:{:?}:{}",
            classes,
            super::name::path_str(scope)
        ),
        GroupExpr::Product(fs) => {
            let ks: Vec<String> = fs.iter().map(sort_key).collect();
            format!("6:({})", ks.join("|"))
        }
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => {
            let ks: Vec<String> = kernel.iter().map(sort_key).collect();
            format!("7:({})~({}):{:?}", ks.join("|"), sort_key(actor), action)
        }
        GroupExpr::QuotientByNormal { base, relators } => {
            format!("8:({}):{}", sort_key(base), relators.len())
        }
        GroupExpr::KnotGroupOpaque(n) => format!("9:{n}"),
    }
}

/// Confluent rewriting to canonical form. Idempotent.
pub fn normalize(e: &GroupExpr) -> GroupExpr {
    normalize_inner(e, &BTreeSet::new())
}

fn normalize_inner(e: &GroupExpr, protected: &BTreeSet<GeneratorName>) -> GroupExpr {
    match e {
        GroupExpr::Trivial | GroupExpr::KnotGroupOpaque(_) => e.clone(),
        GroupExpr::Cyclic(k) => {
            if *k <= 1 {
                GroupExpr::Trivial
            } else {
                GroupExpr::Cyclic(*k)
            }
        }
        GroupExpr::FreeAbelian(names) => {
            if names.is_empty() {
                GroupExpr::Trivial
            } else {
                let mut ns = names.clone();
                ns.sort();
                GroupExpr::FreeAbelian(ns)
            }
        }
        GroupExpr::PureBraid { strands, scope } => match strands {
            0 | 1 => GroupExpr::Trivial,
            2 => GroupExpr::FreeAbelian(vec![GeneratorName::gramain(scope)]),
            _ => e.clone(),
        },
        GroupExpr::SpherePureMapping { punctures, scope } => {
            if *punctures <= 3 {
                GroupExpr::Trivial
            } else {
                GroupExpr::SpherePureMapping {
                    punctures: *punctures,
                    scope: scope.clone(),
                }
            }
        }
        GroupExpr::YoungBraid {
            fixed,
            classes,
            scope,
        } => {
            let classes: Vec<usize> = classes.iter().copied().filter(|&c| c > 0).collect();
            if classes.iter().all(|&c| c == 1) {
                normalize_inner(
                    &GroupExpr::PureBraid {
                        strands: fixed + classes.len(),
                        scope: scope.clone(),
                    },
                    protected,
                )
            } else {
                GroupExpr::YoungBraid {
                    fixed: *fixed,
                    classes,
                    scope: scope.clone(),
                }
            }
        }
        GroupExpr::Product(fs) => {
            let factors: Vec<GroupExpr> = fs
                .iter()
                .map(|f| normalize_inner(f, protected))
                .collect();
            assemble_product(factors, protected)
        }
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => normalize_semidirect(kernel, actor, action, protected),
        GroupExpr::QuotientByNormal { base, relators } => GroupExpr::QuotientByNormal {
            base: Box::new(normalize_inner(base, protected)),
            relators: relators.clone(),
        },
    }
}

/// Flattens, drops trivial factors, merges free-abelian blocks, applies the
/// PMod absorption, and sorts.
fn assemble_product(factors: Vec<GroupExpr>, protected: &BTreeSet<GeneratorName>) -> GroupExpr {
    let mut flat: Vec<GroupExpr> = Vec::new();
    for f in factors {
        match f {
            GroupExpr::Trivial => {}
            GroupExpr::Product(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }

    // merge free-abelian factors
    let mut names: Vec<GeneratorName> = Vec::new();
    let mut rest: Vec<GroupExpr> = Vec::new();
    for f in flat {
        match f {
            GroupExpr::FreeAbelian(ns) => names.extend(ns),
            other => rest.push(other),
        }
    }
    names.sort();

    // ZxPMod(S_{0,m}) = PB_{m-1}: absorb one unprotected free generator per
    // sphere mapping class factor so results print in pure-braid form.
    for f in rest.iter_mut() {
        if let GroupExpr::SpherePureMapping { punctures, scope } = f {
            if *punctures >= 4 {
                if let Some(pos) = names.iter().position(|n| !protected.contains(n)) {
                    names.remove(pos);
                    *f = GroupExpr::PureBraid {
                        strands: *punctures - 1,
                        scope: scope.clone(),
                    };
                }
            }
        }
    }

    if !names.is_empty() {
        rest.push(GroupExpr::FreeAbelian(names));
    }
    rest.sort_by_key(sort_key);

    match rest.len() {
        0 => GroupExpr::Trivial,
        1 => rest.pop().unwrap(),
        _ => GroupExpr::Product(rest),
    }
}

fn normalize_semidirect(
    kernel: &[GroupExpr],
    actor: &GroupExpr,
    action: &ActionSpec,
    protected: &BTreeSet<GeneratorName>,
) -> GroupExpr {
    // kernel factors are normalized under protection of any names the action
    // negates, so absorption cannot steal an action target
    let mut inner_protected = protected.clone();
    if let ActionSpec::SignedPerm {
        inversion_targets, ..
    } = action
    {
        for t in inversion_targets {
            inner_protected.extend(t.iter().cloned());
        }
    }
    let kernel: Vec<GroupExpr> = kernel
        .iter()
        .map(|k| normalize_inner(k, &inner_protected))
        .collect();
    let actor = normalize_inner(actor, protected);

    match action {
        ActionSpec::Trivial => {
            let mut fs = kernel;
            fs.push(actor);
            assemble_product(fs, protected)
        }
        ActionSpec::SymbolicAut(_) => GroupExpr::SemiDirect {
            kernel,
            actor: Box::new(actor),
            action: action.clone(),
        },
        ActionSpec::ClassPermute => {
            // hoist kernel factors in singleton classes; the actor's class
            // structure tells which
            let GroupExpr::YoungBraid { fixed, classes, scope } = &actor else {
                // actor degenerated to a pure braid group: the action is
                // trivial
                let mut fs = kernel;
                fs.push(actor);
                return assemble_product(fs, protected);
            };
            let mut hoisted = Vec::new();
            let mut kept = Vec::new();
            let mut kept_classes = Vec::new();
            let mut idx = 0usize;
            for &c in classes {
                if c == 1 {
                    hoisted.push(kernel[idx].clone());
                } else {
                    for k in 0..c {
                        kept.push(kernel[idx + k].clone());
                    }
                    kept_classes.push(c);
                }
                idx += c;
            }
            // singleton classes remain strands of the braid group but act
            // trivially, so they stay in the actor as fixed-like strands;
            // the Young data keeps them as singleton classes
            let mut new_classes: Vec<usize> = classes.to_vec();
            new_classes.retain(|&c| c >= 2);
            let n_singletons = classes.iter().filter(|&&c| c == 1).count();
            let actor2 = normalize_inner(
                &GroupExpr::YoungBraid {
                    fixed: fixed + n_singletons,
                    classes: new_classes.clone(),
                    scope: scope.clone(),
                },
                protected,
            );
            if kept.is_empty() {
                let mut fs = hoisted;
                fs.push(actor2);
                assemble_product(fs, protected)
            } else {
                let sd = GroupExpr::SemiDirect {
                    kernel: kept,
                    actor: Box::new(actor2),
                    action: ActionSpec::ClassPermute,
                };
                let mut fs = hoisted;
                fs.push(sd);
                assemble_product(fs, protected)
            }
        }
        ActionSpec::SignedPerm {
            perm,
            inversion_targets,
        } => {
            if action.is_trivial() {
                let mut fs = kernel;
                fs.push(actor);
                return assemble_product(fs, protected);
            }
            // split free-abelian kernel factors of fixed slots into their
            // negated and untouched parts; the untouched parts hoist out
            let mut kernel = kernel;
            let mut prehoisted: Vec<GroupExpr> = Vec::new();
            for (i, factor) in kernel.iter_mut().enumerate() {
                if perm.image(i) != i || perm.sign(i) >= 0 {
                    continue;
                }
                let targets = match inversion_targets.get(i) {
                    Some(t) if !t.is_empty() => t,
                    _ => continue,
                };
                split_untargeted(factor, targets, &mut prehoisted);
            }
            // hoist factors fixed by the permutation and untouched by signs
            let r = kernel.len();
            let mut keep = Vec::new();
            let mut hoisted = Vec::new();
            for (i, factor) in kernel.iter().enumerate() {
                let fixed = perm.image(i) == i;
                let untargeted = perm.sign(i) == 1
                    || inversion_targets.get(i).is_none_or(|t| t.is_empty());
                if fixed && untargeted || *factor == GroupExpr::Trivial {
                    hoisted.push(factor.clone());
                } else {
                    keep.push(i);
                }
            }
            if keep.is_empty() {
                let mut fs = hoisted;
                fs.extend(prehoisted);
                fs.push(actor);
                return assemble_product(fs, protected);
            }
            if keep.len() == r && prehoisted.is_empty() {
                return GroupExpr::SemiDirect {
                    kernel,
                    actor: Box::new(actor),
                    action: action.clone(),
                };
            }
            // relabel the permutation on the kept indices
            let pos: std::collections::BTreeMap<usize, usize> =
                keep.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let images: Vec<i64> = keep
                .iter()
                .map(|&i| {
                    let j = perm.image(i);
                    let s = perm.sign(i) as i64;
                    s * (pos[&j] as i64 + 1)
                })
                .collect();
            let new_perm = SignedPermutation::from_signed_images(&images)
                .expect("restriction of a signed permutation");
            let new_targets: Vec<Vec<GeneratorName>> = keep
                .iter()
                .map(|&i| inversion_targets.get(i).cloned().unwrap_or_default())
                .collect();
            let new_kernel: Vec<GroupExpr> = keep.iter().map(|&i| kernel[i].clone()).collect();
            let sd = GroupExpr::SemiDirect {
                kernel: new_kernel,
                actor: Box::new(actor),
                action: ActionSpec::SignedPerm {
                    perm: new_perm,
                    inversion_targets: new_targets,
                },
            };
            let mut fs = hoisted;
            fs.extend(prehoisted);
            fs.push(sd);
            assemble_product(fs, protected)
        }
    }
}

/// Splits the parts of a fixed sign-acted kernel factor that the inversion
/// does not touch, moving them into `out`. The factor is replaced by its
/// targeted part.
fn split_untargeted(
    factor: &mut GroupExpr,
    targets: &[GeneratorName],
    out: &mut Vec<GroupExpr>,
) {
    match factor {
        GroupExpr::FreeAbelian(names) => {
            let (hit, free): (Vec<_>, Vec<_>) =
                names.iter().cloned().partition(|n| targets.contains(n));
            if !free.is_empty() && !hit.is_empty() {
                out.push(GroupExpr::FreeAbelian(free));
                *factor = GroupExpr::FreeAbelian(hit);
            }
        }
        GroupExpr::Product(fs) => {
            let mut kept = Vec::new();
            for mut f in fs.drain(..) {
                let touched = f
                    .generator_names()
                    .iter()
                    .any(|n| targets.contains(n));
                if touched {
                    split_untargeted(&mut f, targets, out);
                    kept.push(f);
                } else {
                    out.push(f);
                }
            }
            *factor = match kept.len() {
                0 => GroupExpr::Trivial,
                1 => kept.pop().unwrap(),
                _ => GroupExpr::Product(kept),
            };
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fa(names: &[&str]) -> GroupExpr {
        GroupExpr::FreeAbelian(names.iter().map(|s| GeneratorName::named(s)).collect())
    }

    #[test]
    fn product_drops_trivial() {
        let e = GroupExpr::Product(vec![GroupExpr::Trivial, fa(&["a"])]);
        assert_eq!(normalize(&e), fa(&["a"]));
    }

    #[test]
    fn pb2_collapses_to_z() {
        let e = GroupExpr::PureBraid {
            strands: 2,
            scope: vec![],
        };
        assert_eq!(
            normalize(&e),
            GroupExpr::FreeAbelian(vec![GeneratorName::gramain(&[])])
        );
    }

    #[test]
    fn trivial_action_is_direct_product() {
        let e = GroupExpr::SemiDirect {
            kernel: vec![fa(&["b"])],
            actor: Box::new(fa(&["a"])),
            action: ActionSpec::Trivial,
        };
        assert_eq!(normalize(&e), fa(&["a", "b"]));
    }

    #[test]
    fn untargeted_factor_hoists() {
        // a acts by inverting x but fixing the y factor: y hoists out
        let e = GroupExpr::SemiDirect {
            kernel: vec![fa(&["x"]), fa(&["y"])],
            actor: Box::new(fa(&["a"])),
            action: ActionSpec::SignedPerm {
                perm: SignedPermutation::from_signed_images(&[-1, 2]).unwrap(),
                inversion_targets: vec![vec![GeneratorName::named("x")], vec![]],
            },
        };
        let n = normalize(&e);
        match &n {
            GroupExpr::Product(fs) => {
                assert_eq!(fs.len(), 2);
                assert!(fs.iter().any(|f| matches!(f, GroupExpr::FreeAbelian(ns) if ns == &vec![GeneratorName::named("y")])));
                assert!(fs.iter().any(|f| matches!(f, GroupExpr::SemiDirect { .. })));
            }
            other => panic!("expected product, got {other:?}"),
        }
    }

    #[test]
    fn normalize_idempotent() {
        let e = GroupExpr::Product(vec![
            GroupExpr::SemiDirect {
                kernel: vec![fa(&["x"]), fa(&["y"])],
                actor: Box::new(fa(&["a"])),
                action: ActionSpec::SignedPerm {
                    perm: SignedPermutation::from_signed_images(&[2, 1]).unwrap(),
                    inversion_targets: vec![vec![], vec![]],
                },
            },
            GroupExpr::PureBraid {
                strands: 3,
                scope: vec![],
            },
            fa(&["z"]),
        ]);
        let n1 = normalize(&e);
        let n2 = normalize(&n1);
        assert_eq!(n1, n2);
    }

    #[test]
    fn pmod_absorbs_a_free_generator() {
        let e = GroupExpr::Product(vec![
            fa(&["u", "v"]),
            GroupExpr::SpherePureMapping {
                punctures: 5,
                scope: vec![],
            },
        ]);
        let n = normalize(&e);
        match &n {
            GroupExpr::Product(fs) => {
                assert!(fs
                    .iter()
                    .any(|f| matches!(f, GroupExpr::PureBraid { strands: 4, .. })));
                assert!(fs.iter().any(
                    |f| matches!(f, GroupExpr::FreeAbelian(ns) if ns.len() == 1)
                ));
            }
            other => panic!("expected product, got {other:?}"),
        }
    }
}
