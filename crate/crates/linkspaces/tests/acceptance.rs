//! Acceptance suite: one test per criterion, each printing a pass/fail line.

mod common;

use common::{edge, equiv_rel_allows, rng, GenOptions};
use linkspaces::corpus::{self, Status};
use linkspaces::dsl;
use linkspaces::group::{abelianize, iso_check, GeneratorName, GroupExpr, IsoResult};
use linkspaces::homotopy::{
    compute_af, factor_meridians, pi1_framed, pi1_solid_torus, pi1_thickened_torus, pi1_unframed,
};
use linkspaces::link_model::{
    signed_young, CompanionData, CompanionshipTree, LinkDescription, Rational,
    SignedPermutation, SimpleLink, Slot, SymmetryEntry,
};
use rand::prelude::*;

fn crit(n: u32, ok: bool, desc: &str) {
    println!(
        "criterion {n}: {} - {desc}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {desc}");
}

fn run_corpus_prefix(prefix: &str) -> (usize, usize) {
    let entries = corpus::load().expect("corpus loads");
    let mut rows = 0;
    let mut failures = 0;
    for e in entries.iter().filter(|e| e.id.starts_with(prefix)) {
        assert_eq!(e.status, Status::Oracle, "{} must be an oracle row", e.id);
        for outcome in corpus::check_entry(e) {
            rows += 1;
            if !outcome.passed {
                failures += 1;
                eprintln!("  {} [{}]: {}", outcome.id, outcome.space, outcome.detail);
            }
        }
    }
    (rows, failures)
}

#[test]
fn criterion_01_table1_oracle() {
    let (rows, failures) = run_corpus_prefix("table1");
    crit(
        1,
        rows >= 17 && failures == 0,
        &format!("solid-torus table: {rows} checks, {failures} failures"),
    );
}

#[test]
fn criterion_02_table2_oracle() {
    let (rows, failures) = run_corpus_prefix("table2");
    crit(
        2,
        rows >= 5 && failures == 0,
        &format!("thickened-torus table: {rows} checks, {failures} failures"),
    );
}

/// Independent classification of the unframed group of a Seifert-fibered
/// link directly from the five-form classification and its stated overlaps.
enum SweepExpect {
    Unknot,
    Group { free_rank: usize, braid: usize },
}

fn sweep_expect_torus(p: i64, q: i64) -> SweepExpect {
    let g = num_integer::Integer::gcd(&p, &q);
    let (pp, qq) = (p / g, q / g);
    if g == 1 && (pp == 1 || qq == 1) {
        return SweepExpect::Unknot;
    }
    let comps = g as usize;
    if pp == 1 && qq == 1 {
        // T_{n,n} ~ R_{n-2,n-2}: case (d), comps components
        return SweepExpect::Group {
            free_rank: comps - 2,
            braid: comps - 1,
        };
    }
    if pp == 1 || qq == 1 {
        // T divisible case ~ S-form with the same component count: case (c)
        return SweepExpect::Group {
            free_rank: comps - 2,
            braid: comps,
        };
    }
    if comps == 1 {
        // torus knot: trivial quotient, case (a)
        return SweepExpect::Group {
            free_rank: 0,
            braid: 1,
        };
    }
    // honest torus link: case (b)
    SweepExpect::Group {
        free_rank: comps - 2,
        braid: comps + 1,
    }
}

fn sweep_expect_seifert(p: i64, q: i64) -> SweepExpect {
    let g = num_integer::Integer::gcd(&p, &q);
    let pp = p / g;
    if p.abs() == 1 {
        // Hopf: case (e) with one key
        return SweepExpect::Group {
            free_rank: 0,
            braid: 1,
        };
    }
    let comps = g as usize + 1;
    if pp == 1 {
        // S divisible case ~ R-form: case (d)
        return SweepExpect::Group {
            free_rank: comps - 2,
            braid: comps - 1,
        };
    }
    // case (c)
    SweepExpect::Group {
        free_rank: comps - 2,
        braid: comps,
    }
}

fn sweep_expect_rlink(p: i64, q: i64) -> SweepExpect {
    // case (d), comps = gcd + 2
    let g = num_integer::Integer::gcd(&p, &q) as usize;
    let comps = g + 2;
    SweepExpect::Group {
        free_rank: comps - 2,
        braid: comps - 1,
    }
}

fn sweep_check(link: SimpleLink, expect: SweepExpect) -> Result<(), String> {
    let desc = LinkDescription::Irreducible(CompanionshipTree::leaf(link.clone()));
    match expect {
        SweepExpect::Unknot => match pi1_unframed(&desc) {
            Err(linkspaces::homotopy::EngineError::UnknotInput) => Ok(()),
            other => Err(format!("{link}: expected UnknotInput, got {other:?}")),
        },
        SweepExpect::Group { free_rank, braid } => {
            let got = pi1_unframed(&desc).map_err(|e| format!("{link}: {e}"))?;
            let expected = GroupExpr::Product(vec![
                GroupExpr::FreeAbelian(
                    (0..free_rank)
                        .map(|i| GeneratorName::named(&format!("x{i}")))
                        .collect(),
                ),
                GroupExpr::PureBraid {
                    strands: braid,
                    scope: vec![],
                },
            ]);
            match iso_check(&got.pi1, &expected) {
                IsoResult::Equal => Ok(()),
                other => Err(format!(
                    "{link}: expected Z^{free_rank} x PB({braid}), got {} ({other:?})",
                    got.pi1
                )),
            }
        }
    }
}

#[test]
fn criterion_03_seifert_sweep() {
    let start = std::time::Instant::now();
    let mut checks = 0;
    let mut failures = Vec::new();
    for p in 1..=12i64 {
        for q in 1..=12i64 {
            for (link, expect) in [
                (SimpleLink::Torus { p, q }, sweep_expect_torus(p, q)),
                (SimpleLink::Seifert { p, q }, sweep_expect_seifert(p, q)),
                (SimpleLink::RLink { p, q }, sweep_expect_rlink(p, q)),
            ] {
                checks += 1;
                if let Err(e) = sweep_check(link, expect) {
                    failures.push(e);
                }
            }
        }
    }
    // keychain case: Z^{n-1} x PB_n
    for n in 1..=6usize {
        checks += 1;
        if let Err(e) = sweep_check(
            SimpleLink::keychain(n),
            SweepExpect::Group {
                free_rank: n - 1,
                braid: n,
            },
        ) {
            failures.push(e);
        }
    }
    let elapsed = start.elapsed();
    for f in &failures {
        eprintln!("  {f}");
    }
    crit(
        3,
        failures.is_empty() && elapsed.as_secs() < 5,
        &format!(
            "Seifert sweep: {checks} classifications in {:.2?}, {} failures",
            elapsed,
            failures.len()
        ),
    );
}

#[test]
fn criterion_04_framed_spot_checks() {
    let mut failures = Vec::new();
    let mut check = |name: &str, desc: &LinkDescription, expected: GroupExpr| {
        match pi1_framed(desc) {
            Ok(res) => {
                if iso_check(&res.pi1, &expected) != IsoResult::Equal {
                    failures.push(format!("{name}: got {}, expected {}", res.pi1, expected));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    };
    let fa = |k: usize| {
        GroupExpr::FreeAbelian(
            (0..k)
                .map(|i| GeneratorName::named(&format!("x{i}")))
                .collect(),
        )
    };

    check(
        "framed Hopf",
        &LinkDescription::Irreducible(CompanionshipTree::leaf(SimpleLink::keychain(1))),
        fa(2),
    );
    check(
        "framed T(2,3)",
        &LinkDescription::Irreducible(CompanionshipTree::leaf(SimpleLink::Torus { p: 2, q: 3 })),
        fa(1),
    );
    // hyperbolic links: Z^{2(m+1)}
    check(
        "framed Wh",
        &LinkDescription::Irreducible(CompanionshipTree::leaf(
            linkspaces::corpus::fixtures::whitehead(),
        )),
        fa(4),
    );
    check(
        "framed L6a5",
        &LinkDescription::Irreducible(CompanionshipTree::leaf(
            linkspaces::corpus::fixtures::l6a5(),
        )),
        fa(6),
    );
    check(
        "framed (empty,J) |> KC_2",
        &LinkDescription::Irreducible(CompanionshipTree::splice(
            SimpleLink::keychain(2),
            vec![
                Slot::Leaf,
                edge(CompanionshipTree::leaf(SimpleLink::Torus { p: 2, q: 3 })),
            ],
        )),
        fa(4),
    );
    // Whitehead double of T(2,3): Z x (Z |x Z)
    let b = GeneratorName::named("b");
    check(
        "framed Wh double of T(2,3)",
        &LinkDescription::Irreducible(CompanionshipTree::splice(
            linkspaces::corpus::fixtures::whitehead(),
            vec![edge(CompanionshipTree::leaf(SimpleLink::Torus { p: 2, q: 3 }))],
        )),
        GroupExpr::Product(vec![
            fa(1),
            GroupExpr::SemiDirect {
                kernel: vec![GroupExpr::FreeAbelian(vec![b.clone()])],
                actor: Box::new(GroupExpr::FreeAbelian(vec![GeneratorName::named("a")])),
                action: linkspaces::group::ActionSpec::SignedPerm {
                    perm: SignedPermutation::from_signed_images(&[-1]).unwrap(),
                    inversion_targets: vec![vec![b]],
                },
            },
        ]),
    );
    for f in &failures {
        eprintln!("  {f}");
    }
    crit(4, failures.is_empty(), "framed spot checks");
}

#[test]
fn criterion_05_meridional_splitting() {
    let mut r = rng(55);
    let opts = GenOptions::default();
    let mut failures = Vec::new();
    let total = 220;
    for case in 0..total {
        let desc = common::random_irreducible(&mut r, &opts);
        let framed = match pi1_framed(&desc) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("case {case}: framed failed: {e}"));
                continue;
            }
        };
        let split = match factor_meridians(&desc) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("case {case}: factor_meridians failed: {e} ({desc:?})"));
                continue;
            }
        };
        let rank = match &split.meridional {
            GroupExpr::FreeAbelian(ns) => ns.len(),
            GroupExpr::Trivial => 0,
            other => {
                failures.push(format!("case {case}: meridional not free abelian: {other}"));
                continue;
            }
        };
        if rank != desc.total_components() {
            failures.push(format!(
                "case {case}: meridional rank {rank} != {} components",
                desc.total_components()
            ));
            continue;
        }
        let recombined =
            GroupExpr::Product(vec![split.meridional.clone(), split.complement.clone()]);
        if iso_check(&framed.pi1, &recombined) != IsoResult::Equal {
            failures.push(format!(
                "case {case}: {} != {} x {}",
                framed.pi1, split.meridional, split.complement
            ));
        }
    }
    for f in failures.iter().take(5) {
        eprintln!("  {f}");
    }
    crit(
        5,
        failures.is_empty(),
        &format!("meridional splitting on {total} random trees"),
    );
}

#[test]
fn criterion_06_cross_space_consistency() {
    let mut r = rng(66);
    let opts = GenOptions::default();
    let mut failures = Vec::new();
    let mut solid_checked = 0;
    let total = 220;
    for case in 0..total {
        let desc = common::random_irreducible(&mut r, &opts);
        // path A: complement of the meridional factorization
        let by_factor = match factor_meridians(&desc) {
            Ok(s) => s.complement,
            Err(e) => {
                failures.push(format!("case {case}: factor path failed: {e}"));
                continue;
            }
        };
        // path B: direct quotient by all meridian words
        let by_quotient = match pi1_unframed(&desc) {
            Ok(u) => u.pi1,
            Err(e) => {
                failures.push(format!("case {case}: quotient path failed: {e}"));
                continue;
            }
        };
        if iso_check(&by_factor, &by_quotient) != IsoResult::Equal {
            failures.push(format!(
                "case {case}: unframed paths differ: {by_factor} vs {by_quotient}"
            ));
            continue;
        }
        // solid-torus consistency on applicable trees
        if let LinkDescription::Irreducible(tree) = &desc {
            if desc.total_components() == 2 && tree.component_unknotted(1) {
                solid_checked += 1;
                let tf = match pi1_solid_torus(&desc) {
                    Ok(t) => t.pi1,
                    Err(e) => {
                        failures.push(format!("case {case}: solid torus failed: {e}"));
                        continue;
                    }
                };
                let with_circle = GroupExpr::Product(vec![
                    GroupExpr::FreeAbelian(vec![GeneratorName::named("c")]),
                    by_quotient.clone(),
                ]);
                if iso_check(&tf, &with_circle) != IsoResult::Equal {
                    failures.push(format!(
                        "case {case}: T_f {tf} != Z x {by_quotient}"
                    ));
                }
            }
        }
    }
    for f in failures.iter().take(5) {
        eprintln!("  {f}");
    }
    crit(
        6,
        failures.is_empty() && solid_checked >= 10,
        &format!(
            "cross-space consistency on {total} random trees ({solid_checked} solid-torus cases)"
        ),
    );
}

#[test]
fn criterion_07_torsion_freeness() {
    let mut r = rng(77);
    let opts = GenOptions {
        unsigned_only: true,
        ..GenOptions::default()
    };
    let mut failures = Vec::new();
    let total = 220;
    for case in 0..total {
        let desc = common::random_irreducible(&mut r, &opts);
        match pi1_framed(&desc).map(|f| abelianize(&f.pi1)) {
            Ok(Ok(ab)) => {
                if !ab.is_torsion_free() {
                    failures.push(format!("case {case}: H_1 = {ab} has torsion ({desc:?})"));
                }
            }
            Ok(Err(e)) => failures.push(format!("case {case}: abelianize failed: {e}")),
            Err(e) => failures.push(format!("case {case}: framed failed: {e}")),
        }
    }
    // the split unlink cases produce exactly the stated Z/2 classes
    let unknot = CompanionshipTree::leaf(SimpleLink::Unknot);
    let unlink = LinkDescription::Split(vec![unknot.clone(), unknot.clone()]);
    let tf_ab = abelianize(&pi1_solid_torus(&unlink).unwrap().pi1).unwrap();
    if (tf_ab.rank, tf_ab.torsion.as_slice()) != (1, &[2][..]) {
        failures.push(format!("unlink T_f abelianization {tf_ab}"));
    }
    let hopf = CompanionshipTree::leaf(SimpleLink::keychain(1));
    let vf = LinkDescription::Split(vec![unknot, hopf]);
    let vf_ab = abelianize(&pi1_thickened_torus(&vf).unwrap().pi1).unwrap();
    if (vf_ab.rank, vf_ab.torsion.as_slice()) != (2, &[2][..]) {
        failures.push(format!("split V_f abelianization {vf_ab}"));
    }
    for f in failures.iter().take(5) {
        eprintln!("  {f}");
    }
    crit(
        7,
        failures.is_empty(),
        &format!("torsion-freeness on {total} unsigned random trees plus split Z/2 classes"),
    );
}

#[test]
fn criterion_08_young_and_af_oracles() {
    let mut r = rng(88);
    let mut failures = Vec::new();

    // signed Young subgroups against the equivalence-relation enumeration
    for case in 0..160 {
        let rr = r.gen_range(1..=4usize);
        let mut companions: Vec<(CompanionshipTree, bool)> = Vec::new();
        for _ in 0..rr {
            let tree = match r.gen_range(0..4u8) {
                0 => CompanionshipTree::leaf(SimpleLink::Torus { p: 2, q: 3 }),
                1 => CompanionshipTree::leaf(SimpleLink::Torus { p: 2, q: 5 }),
                2 => CompanionshipTree::leaf(linkspaces::corpus::fixtures::whitehead()),
                _ => common::cable_companion(&mut r),
            };
            companions.push((tree, false));
        }
        let data: Vec<CompanionData> = companions
            .iter()
            .map(|(t, rev)| CompanionData::from_tree(t, *rev))
            .collect();
        let young = match signed_young(&data) {
            Ok(y) => y,
            Err(e) => {
                failures.push(format!("young case {case}: {e}"));
                continue;
            }
        };
        for sigma in SignedPermutation::all(rr) {
            let direct = equiv_rel_allows(&companions, &sigma);
            let via_young = young.contains(&sigma);
            if direct != via_young {
                failures.push(format!(
                    "young case {case}: sigma {sigma} direct {direct} vs young {via_young}"
                ));
                break;
            }
        }
        // order formula vs enumeration
        if young.order() != young.order_by_enumeration() {
            failures.push(format!("young case {case}: order formula mismatch"));
        }
    }

    // A_F against brute-force exponent search, orders <= 12, r <= 4
    for rr in 1..=4usize {
        for perm in SignedPermutation::all(rr) {
            let order = perm.order();
            if order > 12 {
                continue;
            }
            for sign_allowed in [false, true] {
                let mut young = linkspaces::link_model::SignedYoungSubgroup::full(rr);
                young.classes[0].sign_allowed = sign_allowed;
                let entry = SymmetryEntry {
                    fixed_components: [0usize].into_iter().collect(),
                    order,
                    action: perm.clone(),
                    shift: vec![Rational::new(1, order as i64)],
                };
                let af = compute_af(&entry, &young);
                let mut d_oracle = order;
                for d in 1..=order {
                    if young.contains(&perm.pow(d)) {
                        d_oracle = d;
                        break;
                    }
                }
                if af.exponent != d_oracle || af.order != order / d_oracle {
                    failures.push(format!(
                        "A_F mismatch for {perm}: got d={} |A_F|={}, oracle d={d_oracle}",
                        af.exponent, af.order
                    ));
                }
            }
        }
    }

    // annular braid abelianization against the hand-written matrix
    for rr in 2..=4usize {
        let e = GroupExpr::YoungBraid {
            fixed: 1,
            classes: vec![rr],
            scope: vec![],
        };
        let ab = abelianize(&e).unwrap();
        let (rank, torsion) = common::annular_ab_by_hand(rr);
        if ab.rank != rank || ab.torsion != torsion {
            failures.push(format!(
                "annular ab mismatch at r={rr}: engine {ab}, hand ({rank}, {torsion:?})"
            ));
        }
    }

    for f in failures.iter().take(5) {
        eprintln!("  {f}");
    }
    crit(8, failures.is_empty(), "signed Young and A_F brute-force oracles");
}

#[test]
fn criterion_09_reorder_invariance() {
    let mut r = rng(99);
    let mut failures = Vec::new();
    let mut cases = 0;

    // slot permutations for Seifert-family roots
    for _ in 0..30 {
        let vertex = [
            SimpleLink::Seifert { p: 4, q: 6 },
            SimpleLink::Torus { p: 4, q: 6 },
            SimpleLink::RLink { p: 3, q: 4 },
            SimpleLink::RLink { p: 4, q: 6 },
        ]
        .choose(&mut r)
        .unwrap()
        .clone();
        let n_slots = vertex.components() - 1;
        let child = CompanionshipTree::leaf(SimpleLink::Torus { p: 2, q: 3 });
        let a_pos = r.gen_range(0..n_slots);
        let b_pos = r.gen_range(0..n_slots);
        let mk = |pos: usize| {
            let mut slots = vec![Slot::Leaf; n_slots];
            slots[pos] = edge(child.clone());
            LinkDescription::Irreducible(CompanionshipTree::splice(vertex.clone(), slots))
        };
        cases += 1;
        let (da, db) = (mk(a_pos), mk(b_pos));
        let (fa, fb) = (pi1_framed(&da).unwrap(), pi1_framed(&db).unwrap());
        if iso_check(&fa.pi1, &fb.pi1) != IsoResult::Equal {
            failures.push(format!(
                "family slot swap: {} vs {} ({vertex}, slots {a_pos}/{b_pos})",
                fa.pi1, fb.pi1
            ));
        }
        let (ua, ub) = (pi1_unframed(&da).unwrap(), pi1_unframed(&db).unwrap());
        if iso_check(&ua.pi1, &ub.pi1) != IsoResult::Equal {
            failures.push(format!("family slot swap unframed: {} vs {}", ua.pi1, ub.pi1));
        }
    }

    // keychain special-component placement: leaf block vs spliced block
    for _ in 0..30 {
        let n = r.gen_range(2..=3usize);
        let child = CompanionshipTree::leaf(
            [SimpleLink::Torus { p: 2, q: 3 }, SimpleLink::Torus { p: 2, q: 5 }]
                .choose(&mut r)
                .unwrap()
                .clone(),
        );
        let mut slots = vec![Slot::Leaf; n];
        let target = r.gen_range(0..n);
        slots[target] = edge(child.clone());
        // special as the distinguished leaf component
        let special_leaf = LinkDescription::Irreducible(CompanionshipTree::splice(
            SimpleLink::keychain(n),
            slots.clone(),
        ));
        // special moved onto a spliced slot
        let special_spliced = LinkDescription::Irreducible(CompanionshipTree::splice(
            SimpleLink::Keychain {
                n,
                special: target + 1,
            },
            slots,
        ));
        cases += 1;
        let (fa, fb) = (
            pi1_framed(&special_leaf).unwrap(),
            pi1_framed(&special_spliced).unwrap(),
        );
        if iso_check(&fa.pi1, &fb.pi1) != IsoResult::Equal {
            failures.push(format!(
                "keychain special placement: {} vs {}",
                fa.pi1, fb.pi1
            ));
        }
    }

    for f in failures.iter().take(5) {
        eprintln!("  {f}");
    }
    crit(
        9,
        failures.is_empty() && cases >= 50,
        &format!("reorder invariance on {cases} generated cases"),
    );
}

#[test]
fn criterion_10_roundtrip_and_fuzz() {
    let mut failures = Vec::new();

    // round trips on the full corpus
    for entry in corpus::load().expect("corpus loads") {
        match dsl::parse(&entry.program) {
            Ok(desc) => {
                let json = dsl::to_json(&desc);
                match dsl::from_json(&json) {
                    Ok(back) => {
                        if back != desc {
                            failures.push(format!("{}: json round trip differs", entry.id));
                        }
                    }
                    Err(e) => failures.push(format!("{}: json reparse failed: {e}", entry.id)),
                }
                let text = dsl::to_dsl(&desc);
                match dsl::parse(&text) {
                    Ok(canon) => {
                        let again = dsl::to_dsl(&canon);
                        if again != text {
                            failures.push(format!("{}: printer not idempotent", entry.id));
                        }
                    }
                    Err(e) => failures.push(format!(
                        "{}: canonical form does not reparse: {e}\n  {text}",
                        entry.id
                    )),
                }
            }
            Err(e) => failures.push(format!("{}: program does not parse: {e}", entry.id)),
        }
    }

    // 10,000 fuzzed inputs: structured errors, never a crash
    let mut r = rng(1010);
    let seeds: Vec<String> = corpus::load()
        .unwrap()
        .iter()
        .map(|e| e.program.clone())
        .collect();
    let pool: Vec<char> = "return splice(torus,seifert rlink keychain unknot hyperbolic \
                           symmetry fix order perm shift { } [ ] ( ) ; : , / @ _ 0 1 2 3 -"
        .chars()
        .collect();
    let mut fuzzed = 0;
    for case in 0..10_000 {
        let text: String = if case % 3 == 0 {
            // pure noise
            (0..r.gen_range(0..80))
                .map(|_| *pool.choose(&mut r).unwrap())
                .collect()
        } else {
            // mutate a valid program
            let mut s: Vec<char> = seeds.choose(&mut r).unwrap().chars().collect();
            for _ in 0..r.gen_range(1..6) {
                if s.is_empty() {
                    break;
                }
                let i = r.gen_range(0..s.len());
                match r.gen_range(0..3u8) {
                    0 => {
                        s.remove(i);
                    }
                    1 => s.insert(i, *pool.choose(&mut r).unwrap()),
                    _ => s[i] = *pool.choose(&mut r).unwrap(),
                }
            }
            s.into_iter().collect()
        };
        fuzzed += 1;
        // must return a structured result, never panic
        let _ = dsl::parse(&text);
    }

    for f in failures.iter().take(5) {
        eprintln!("  {f}");
    }
    crit(
        10,
        failures.is_empty() && fuzzed == 10_000,
        &format!("corpus round trips and {fuzzed} fuzzed parses"),
    );
}
