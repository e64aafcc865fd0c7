use super::af::compute_af;
use super::lattice::section_basis;
use super::space::{space_of_group, SpaceExpr, SpaceResult};
use crate::group::{
    self, quotient_by_generators, ActionSpec, GeneratorName, GroupError, GroupExpr, NameKind,
    Word,
};
use crate::link_model::{
    canonicalize_simple, signed_young, tree_iso, CompanionData, CompanionshipTree,
    LinkDescription, Rational, SimpleLink, Slot, ValidationReport,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors raised by the homotopy computations.
#[derive(Clone, Debug, PartialEq)]
pub enum EngineError {
    Validation(ValidationReport),
    /// The operation is undefined for the unknot.
    UnknotInput,
    ComponentCount { expected: usize, got: usize },
    UnknottednessUnverified { component: usize },
    HopfSublinkUnverified,
    MissingInvertibility(String),
    /// The meridional subgroup does not split for this tree (connected sums
    /// of copies of one knot rooted at the special component).
    NonSplitMeridian(String),
    Group(GroupError),
    Internal(String),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Validation(r) => write!(f, "validation failed:\n{r}"),
            EngineError::UnknotInput => write!(f, "operation undefined for the unknot"),
            EngineError::ComponentCount { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            EngineError::UnknottednessUnverified { component } => {
                write!(f, "component {component} is not certified unknotted")
            }
            EngineError::HopfSublinkUnverified => {
                write!(f, "no certified Hopf sublink among the components")
            }
            EngineError::MissingInvertibility(s) => write!(f, "{s}"),
            EngineError::NonSplitMeridian(s) => write!(f, "{s}"),
            EngineError::Group(g) => write!(f, "{g}"),
            EngineError::Internal(s) => write!(f, "internal invariant breach: {s}"),
        }
    }
}

impl std::error::Error for EngineError {}

impl From<GroupError> for EngineError {
    fn from(g: GroupError) -> Self {
        EngineError::Group(g)
    }
}

/// Result of `factor_meridians`: the meridional block and a complement with
/// `framed = meridional x complement`.
#[derive(Clone, Debug)]
pub struct MeridianSplitting {
    pub meridional: GroupExpr,
    pub complement: GroupExpr,
    /// The meridian words in the framed group, one per component.
    pub words: Vec<Word>,
}

struct Ctx {
    glossary: BTreeMap<String, String>,
    caveats: Vec<String>,
}

impl Ctx {
    fn new() -> Self {
        Ctx {
            glossary: BTreeMap::new(),
            caveats: Vec::new(),
        }
    }
    fn note(&mut self, n: &GeneratorName, d: impl Into<String>) {
        self.glossary.insert(n.to_string(), d.into());
    }
}

/// Result of evaluating a subtree.
struct Sub {
    expr: GroupExpr,
    /// Meridian words, one per component of the sublink in DFS order;
    /// entry 0 is the distinguished component.
    meridians: Vec<Word>,
}

fn validated(desc: &LinkDescription) -> Result<(), EngineError> {
    let report = crate::link_model::validate(desc);
    if report.is_ok() {
        Ok(())
    } else {
        Err(EngineError::Validation(report))
    }
}

/// pi1 of the space of framed links modulo rotations, with the space
/// expression and generator glossary.
pub fn pi1_framed(desc: &LinkDescription) -> Result<SpaceResult, EngineError> {
    validated(desc)?;
    let mut ctx = Ctx::new();
    match desc {
        LinkDescription::Irreducible(tree) => {
            if tree.is_unknot() {
                let mut res = SpaceResult::new(SpaceExpr::Point, GroupExpr::Trivial);
                res.caveats.push("framed unknot: contractible".into());
                return Ok(res);
            }
            let mut next = 0usize;
            let sub = eval(tree, &mut Vec::new(), &mut next, &mut ctx)?;
            let pi1 = group::normalize(&sub.expr);
            let mut res = SpaceResult::new(space_of_group(&pi1), pi1);
            res.glossary = ctx.glossary;
            res.caveats = ctx.caveats;
            Ok(res)
        }
        LinkDescription::Split(summands) => split_framed(summands, &mut ctx),
    }
}

/// Meridian words of the framed group, one per component.
pub fn meridian_words(desc: &LinkDescription) -> Result<Vec<Word>, EngineError> {
    validated(desc)?;
    match desc {
        LinkDescription::Irreducible(tree) => {
            if tree.is_unknot() {
                return Err(EngineError::UnknotInput);
            }
            let mut ctx = Ctx::new();
            let mut next = 0usize;
            let sub = eval(tree, &mut Vec::new(), &mut next, &mut ctx)?;
            Ok(sub.meridians)
        }
        LinkDescription::Split(summands) => {
            let mut words = Vec::new();
            let mut offset = 0usize;
            for t in summands {
                if t.is_unknot() {
                    words.push(Word::gen(GeneratorName::mu(offset)));
                    offset += 1;
                    continue;
                }
                let mut ctx = Ctx::new();
                let mut next = offset;
                let sub = eval(t, &mut Vec::new(), &mut next, &mut ctx)?;
                words.extend(sub.meridians);
                offset = next;
            }
            Ok(words)
        }
    }
}

/// Constructive meridional splitting: framed = Z^{m+1} x complement.
pub fn factor_meridians(desc: &LinkDescription) -> Result<MeridianSplitting, EngineError> {
    validated(desc)?;
    if let LinkDescription::Irreducible(tree) = desc {
        if tree.is_unknot() {
            return Err(EngineError::UnknotInput);
        }
    }
    let framed = pi1_framed(desc)?;
    let words = meridian_words(desc)?;
    let m = desc.total_components();
    if words.len() != m {
        return Err(EngineError::Internal(format!(
            "{} meridian words for {m} components",
            words.len()
        )));
    }

    let mut complement = framed.pi1.clone();
    for w in &words {
        complement = eliminate_meridian(&complement, w)?;
        complement = group::normalize(&complement);
    }
    let mu_names: Vec<GeneratorName> = (0..m).map(GeneratorName::mu).collect();
    Ok(MeridianSplitting {
        meridional: GroupExpr::FreeAbelian(mu_names),
        complement,
        words: words.clone(),
    })
}

/// Structured elimination of one meridian word, mirroring the per-case
/// analysis of the splitting theorem.
fn eliminate_meridian(e: &GroupExpr, w: &Word) -> Result<GroupExpr, EngineError> {
    match quotient_by_generators(e, std::slice::from_ref(w)) {
        Ok(GroupExpr::QuotientByNormal { .. }) => Err(EngineError::NonSplitMeridian(format!(
            "meridian {w} is central but does not split as a direct factor \
             (H_1 obstruction for same-summand connected sums)"
        ))),
        Ok(g) => Ok(g),
        Err(err) => Err(err.into()),
    }
}

/// pi1 of the space of unframed links modulo rotations: the quotient of the
/// framed group by all meridional rotations.
pub fn pi1_unframed(desc: &LinkDescription) -> Result<SpaceResult, EngineError> {
    validated(desc)?;
    if let LinkDescription::Irreducible(tree) = desc {
        if tree.is_unknot() {
            return Err(EngineError::UnknotInput);
        }
    }
    let framed = pi1_framed(desc)?;
    let words = meridian_words(desc)?;
    let pi1 = group::normalize(&quotient_by_generators(&framed.pi1, &words)?);
    let mut res = SpaceResult::new(space_of_group(&pi1), pi1.clone());
    res.glossary = framed.glossary;
    res.caveats = framed.caveats;
    if matches!(pi1, GroupExpr::QuotientByNormal { .. }) {
        res.caveats.push("quotient not fully reduced".into());
    }
    Ok(res)
}

/// pi1 of the space of knots in a solid torus: the associated 2-component
/// link with component 1 unknotted, modulo the meridian of the knotted
/// component.
pub fn pi1_solid_torus(desc: &LinkDescription) -> Result<SpaceResult, EngineError> {
    validated(desc)?;
    let m = desc.total_components();
    if m != 2 {
        return Err(EngineError::ComponentCount {
            expected: 2,
            got: m,
        });
    }
    match desc {
        LinkDescription::Irreducible(tree) => {
            if tree.is_unknot() {
                return Err(EngineError::UnknotInput);
            }
            if !tree.component_unknotted(1) {
                return Err(EngineError::UnknottednessUnverified { component: 1 });
            }
            let framed = pi1_framed(desc)?;
            let words = meridian_words(desc)?;
            let pi1 =
                group::normalize(&quotient_by_generators(&framed.pi1, &words[0..1])?);
            let mut res = SpaceResult::new(space_of_group(&pi1), pi1.clone());
            res.glossary = framed.glossary;
            res.caveats = framed.caveats;
            // cross-check T_f ~ S^1 x L_f/SO_4
            if let Ok(unframed) = pi1_unframed(desc) {
                let with_circle = GroupExpr::Product(vec![
                    GroupExpr::FreeAbelian(vec![GeneratorName::mu(1)]),
                    unframed.pi1,
                ]);
                match group::iso_check(&pi1, &with_circle) {
                    group::IsoResult::Equal => {}
                    group::IsoResult::Unknown => res
                        .caveats
                        .push("T_f = S^1 x L_f/SO_4 verified only up to Unknown".into()),
                    group::IsoResult::Distinct(witness) => {
                        return Err(EngineError::Internal(format!(
                            "T_f and S^1 x L_f/SO_4 differ: {witness}"
                        )))
                    }
                }
            }
            Ok(res)
        }
        LinkDescription::Split(summands) => split_solid_torus(summands),
    }
}

/// pi1 of the space of knots in a thickened torus: the associated
/// 3-component link with a certified Hopf sublink, modulo all meridians.
pub fn pi1_thickened_torus(desc: &LinkDescription) -> Result<SpaceResult, EngineError> {
    validated(desc)?;
    let m = desc.total_components();
    if m != 3 {
        return Err(EngineError::ComponentCount {
            expected: 3,
            got: m,
        });
    }
    match desc {
        LinkDescription::Irreducible(tree) => {
            if certified_hopf_pair(tree).is_none() {
                return Err(EngineError::HopfSublinkUnverified);
            }
            let mut res = pi1_unframed(desc)?;
            res.caveats.push(
                "the two torus rotations generate a Z^2 direct factor".into(),
            );
            Ok(res)
        }
        LinkDescription::Split(summands) => split_thickened_torus(summands),
    }
}

/// A pair of components certified to form a Hopf sublink: derived for the
/// R-family and keychain roots, declared for hyperbolic vertices, or
/// asserted by annotation.
pub fn certified_hopf_pair(tree: &CompanionshipTree) -> Option<(usize, usize)> {
    if let Some(p) = tree.annotations.hopf {
        let table = tree.component_table();
        if p.0 != p.1 && p.0 < table.len() && p.1 < table.len() && table[p.0].path == table[p.1].path
        {
            return Some(p);
        }
        return None;
    }
    let v = canonicalize_simple(&tree.vertex);
    let leaves_only = !tree.has_edges();
    match v {
        SimpleLink::RLink { p, q } => {
            let g = num_integer::Integer::gcd(&p.unsigned_abs(), &q.unsigned_abs()) as usize;
            // C1, C2 are the last two components; both must be leaves
            if g == 1 && leaves_only {
                Some((1, 2))
            } else {
                None
            }
        }
        SimpleLink::Keychain { n: 2, special } => {
            if leaves_only {
                // the special component and either key form a Hopf pair
                let keys: Vec<usize> = (0..3).filter(|&c| c != special).collect();
                Some((special.min(keys[0]), special.max(keys[0])))
            } else {
                None
            }
        }
        SimpleLink::Hyperbolic(h) => {
            // map declared local pairs through the leaf table
            let table = tree.component_table();
            for &(a, b) in &h.hopf_pairs {
                let ga = table
                    .iter()
                    .position(|c| c.path.is_empty() && c.local_index == a);
                let gb = table
                    .iter()
                    .position(|c| c.path.is_empty() && c.local_index == b);
                if let (Some(x), Some(y)) = (ga, gb) {
                    return Some((x.min(y), x.max(y)));
                }
            }
            None
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// the recursion

fn eval(
    tree: &CompanionshipTree,
    path: &mut Vec<usize>,
    next_global: &mut usize,
    ctx: &mut Ctx,
) -> Result<Sub, EngineError> {
    let is_root = path.is_empty();
    // the distinguished component carries a global index only at the root;
    // a companion's distinguished component is glued away
    let my_comp0_global = if is_root {
        let g = *next_global;
        *next_global += 1;
        g
    } else {
        usize::MAX
    };

    let vertex = canonicalize_simple(&tree.vertex);

    // global indices for the vertex's own leaf components and recursive
    // evaluation of companions, in slot order
    let mut leaf_globals: Vec<(usize, usize)> = Vec::new(); // (local comp, global)
    let mut children: Vec<(usize, Sub, &CompanionshipTree, bool)> = Vec::new(); // (slot, sub, tree, reversed)
    for (slot_idx, slot) in tree.slots.iter().enumerate() {
        match slot {
            Slot::Leaf => {
                leaf_globals.push((slot_idx + 1, *next_global));
                *next_global += 1;
            }
            Slot::Edge { child, reversed } => {
                path.push(slot_idx);
                let sub = eval(child, path, next_global, ctx)?;
                path.pop();
                if *reversed && child.distinguished_invertible() != Some(true) {
                    ctx.caveats.push(format!(
                        "reversed gluing of a non-invertible companion at slot path {:?} \
                         retained as declared",
                        path_with(path, slot_idx)
                    ));
                }
                children.push((slot_idx, sub, child, *reversed));
            }
        }
    }

    let n = leaf_globals.len();
    let r = children.len();

    match &vertex {
        SimpleLink::Unknot => Err(EngineError::UnknotInput),
        SimpleLink::Torus { .. } | SimpleLink::Seifert { .. } | SimpleLink::RLink { .. } => {
            let s = match vertex {
                SimpleLink::Torus { .. } => 2,
                SimpleLink::Seifert { .. } => 1,
                _ => 0,
            };
            Ok(seifert_family(
                tree,
                &vertex,
                path,
                my_comp0_global,
                &leaf_globals,
                children,
                n,
                r,
                s,
                ctx,
            ))
        }
        SimpleLink::Keychain { special, .. } => keychain_vertex(
            tree,
            path,
            my_comp0_global,
            &leaf_globals,
            children,
            *special,
            ctx,
        ),
        SimpleLink::Hyperbolic(h) => hyperbolic_vertex(
            tree,
            h,
            path,
            is_root,
            my_comp0_global,
            &leaf_globals,
            children,
            ctx,
        ),
    }
}

fn path_with(path: &[usize], slot: usize) -> Vec<usize> {
    let mut p = path.to_vec();
    p.push(slot);
    p
}

/// Meridian word for the center of the braid factor at `path` with `m`
/// strands (the full twist), accounting for the PB_2 collapse.
fn center_meridian(path: &[usize], m: usize) -> Word {
    if m == 2 {
        Word::gen(GeneratorName::gramain(path))
    } else {
        group::braid_center_word(m, path)
    }
}

/// Seifert-family vertex: Z^{2n} x PB_{n+r+s} x product of companions.
#[allow(clippy::too_many_arguments)]
fn seifert_family(
    _tree: &CompanionshipTree,
    vertex: &SimpleLink,
    path: &[usize],
    _comp0: usize,
    leaf_globals: &[(usize, usize)],
    children: Vec<(usize, Sub, &CompanionshipTree, bool)>,
    n: usize,
    r: usize,
    s: usize,
    ctx: &mut Ctx,
) -> Sub {
    let m = n + r + s;
    let mut names = Vec::new();
    for &(_, g) in leaf_globals {
        let lam = GeneratorName::lambda(g);
        let mu = GeneratorName::mu(g);
        ctx.note(&lam, format!("longitudinal rotation of component {g}"));
        ctx.note(&mu, format!("meridional rotation of component {g}"));
        names.push(lam);
        names.push(mu);
    }
    let braid = GroupExpr::PureBraid {
        strands: m,
        scope: path.to_vec(),
    };
    if m == 2 {
        ctx.note(
            &GeneratorName::gramain(path),
            format!(
                "{} rotation class (full twist / Gramain loop) of the {} fibering",
                if path.is_empty() { "central" } else { "companion" },
                vertex
            ),
        );
    }
    let mut factors = vec![GroupExpr::free_abelian(names), braid];
    for (_, sub, _, _) in &children {
        factors.push(sub.expr.clone());
    }
    let meridians = dfs_meridians(path, leaf_globals, &children, center_meridian(path, m));
    Sub {
        expr: GroupExpr::Product(factors),
        meridians,
    }
}

/// Reassembles meridian words in DFS component order.
fn dfs_meridians(
    _path: &[usize],
    leaf_globals: &[(usize, usize)],
    children: &[(usize, Sub, &CompanionshipTree, bool)],
    comp0: Word,
) -> Vec<Word> {
    let mut out = vec![comp0];
    let mut leaf_iter = leaf_globals.iter().peekable();
    let mut child_iter = children.iter().peekable();
    loop {
        match (leaf_iter.peek(), child_iter.peek()) {
            (Some(&&(lslot, _)), Some(&&(cslot, _, _, _))) => {
                if lslot < cslot + 1 {
                    out.push(Word::gen(GeneratorName::mu(leaf_iter.next().unwrap().1)));
                } else {
                    let (_, sub, _, _) = child_iter.next().unwrap();
                    out.extend(sub.meridians.iter().skip(1).cloned());
                }
            }
            (Some(_), None) => {
                out.push(Word::gen(GeneratorName::mu(leaf_iter.next().unwrap().1)));
            }
            (None, Some(_)) => {
                let (_, sub, _, _) = child_iter.next().unwrap();
                out.extend(sub.meridians.iter().skip(1).cloned());
            }
            (None, None) => break,
        }
    }
    out
}

/// Keychain vertex: Z^{2n} x (B(J) |x product of companions).
fn keychain_vertex(
    tree: &CompanionshipTree,
    path: &[usize],
    _comp0: usize,
    leaf_globals: &[(usize, usize)],
    children: Vec<(usize, Sub, &CompanionshipTree, bool)>,
    special: usize,
    ctx: &mut Ctx,
) -> Result<Sub, EngineError> {
    let n = leaf_globals.len();
    let r = children.len();

    let mut names = Vec::new();
    for &(_, g) in leaf_globals {
        let lam = GeneratorName::lambda(g);
        let mu = GeneratorName::mu(g);
        ctx.note(&lam, format!("longitudinal rotation of component {g}"));
        ctx.note(&mu, format!("meridional rotation of component {g}"));
        names.push(lam);
        names.push(mu);
    }

    // group the companions into classes of isotopic knots (multi-component
    // companions are singletons), keeping first-occurrence order
    let mut class_of: Vec<usize> = vec![usize::MAX; r];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..r {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut members = vec![i];
        class_of[i] = classes.len();
        if children[i].2.is_knot() {
            for k in (i + 1)..r {
                if class_of[k] == usize::MAX
                    && children[k].2.is_knot()
                    && tree_iso(children[i].2, children[k].2, true)
                {
                    class_of[k] = classes.len();
                    members.push(k);
                }
            }
        }
        classes.push(members);
    }

    // kernel ordered class by class
    let mut kernel = Vec::new();
    let mut class_sizes = Vec::new();
    for members in &classes {
        class_sizes.push(members.len());
        for &i in members {
            kernel.push(children[i].1.expr.clone());
        }
    }

    let actor = GroupExpr::YoungBraid {
        fixed: n,
        classes: class_sizes,
        scope: path.to_vec(),
    };
    let sd = GroupExpr::SemiDirect {
        kernel,
        actor: Box::new(actor),
        action: ActionSpec::ClassPermute,
    };
    let expr = GroupExpr::Product(vec![GroupExpr::free_abelian(names), sd]);

    // meridian of the designated component 0
    let special_slot_is_edge = special > 0
        && matches!(
            tree.slots.get(special - 1),
            Some(Slot::Edge { .. })
        );
    let comp0_word = if special == 0 || !special_slot_is_edge {
        if special != 0 {
            ctx.caveats.push(
                "keychain special component is a non-distinguished leaf; its meridian word \
                 is reported for the distinguished key by symmetry"
                    .into(),
            );
        }
        // special leaf (the usual case): mu_0 = prod lambda(keys) * prod g(children)
        let mut letters: Vec<(GeneratorName, i32)> = leaf_globals
            .iter()
            .map(|&(_, g)| (GeneratorName::lambda(g), 1))
            .collect();
        for (_, sub, _, _) in &children {
            letters.extend(sub.meridians[0].0.iter().cloned());
        }
        Word(letters)
    } else {
        // special component spliced: the distinguished key's meridian is the
        // product of the other keys' lambdas with the full twist
        let mut letters: Vec<(GeneratorName, i32)> = leaf_globals
            .iter()
            .map(|&(_, g)| (GeneratorName::lambda(g), 1))
            .collect();
        letters.extend(center_meridian(path, n + r).0);
        Word(letters)
    };

    let meridians = dfs_meridians(path, leaf_globals, &children, comp0_word);
    Ok(Sub { expr, meridians })
}

/// Hyperbolic vertex: lattice of boundary rotations, possibly twisted over
/// the companion symmetries.
#[allow(clippy::too_many_arguments)]
fn hyperbolic_vertex(
    _tree: &CompanionshipTree,
    h: &crate::link_model::HyperbolicLink,
    path: &[usize],
    is_root: bool,
    _comp0: usize,
    leaf_globals: &[(usize, usize)],
    children: Vec<(usize, Sub, &CompanionshipTree, bool)>,
    ctx: &mut Ctx,
) -> Result<Sub, EngineError> {
    let r = children.len();

    // fixed components: 0 plus the leaf slots
    let fixed: BTreeSet<usize> = std::iter::once(0)
        .chain(leaf_globals.iter().map(|&(local, _)| local))
        .collect();

    // names for the fixed components' rotations
    let comp_mu = |local: usize| -> GeneratorName {
        if local == 0 {
            if is_root {
                GeneratorName::mu(0)
            } else {
                GeneratorName::mu_splice(path)
            }
        } else {
            let g = leaf_globals
                .iter()
                .find(|&&(l, _)| l == local)
                .map(|&(_, g)| g)
                .expect("fixed component is a leaf");
            GeneratorName::mu(g)
        }
    };
    let comp_lambda = |local: usize| -> GeneratorName {
        if local == 0 {
            if is_root {
                GeneratorName::lambda(0)
            } else {
                GeneratorName::lambda_splice(path)
            }
        } else {
            let g = leaf_globals
                .iter()
                .find(|&&(l, _)| l == local)
                .map(|&(_, g)| g)
                .expect("fixed component is a leaf");
            GeneratorName::lambda(g)
        }
    };

    let fixed_sorted: Vec<usize> = fixed.iter().copied().collect();

    // the relevant symmetry entry; trivial when absent on a base vertex
    let entry = h.symmetry.entry_for(&fixed);
    let trivial_entry;
    let entry = match entry {
        Some(e) => e,
        None => {
            if r > 0 {
                return Err(EngineError::Internal(
                    "validated tree lacks a symmetry entry".into(),
                ));
            }
            trivial_entry = crate::link_model::SymmetryEntry {
                fixed_components: fixed.clone(),
                order: 1,
                action: crate::link_model::SignedPermutation::identity(0),
                shift: vec![Rational::new(0, 1); fixed.len()],
            };
            &trivial_entry
        }
    };

    // companions' signed Young subgroup
    let companions: Vec<CompanionData> = children
        .iter()
        .map(|(_, _, t, rev)| CompanionData::from_tree(t, *rev))
        .collect();
    let young = signed_young(&companions).map_err(EngineError::MissingInvertibility)?;
    let af = compute_af(entry, &young);

    // lattice basis over the fixed components' lambda coordinates
    let sb = section_basis(&af.shift);

    let mut mu_names = Vec::new();
    for &local in &fixed_sorted {
        let mu = comp_mu(local);
        ctx.note(&mu, format!("meridional rotation ({})", h.name));
        mu_names.push(mu);
    }

    let mut lambda_block = Vec::new();
    for row in &sb.integral {
        // unit rows keep the plain lambda name; sign chosen so the leading
        // coefficient is positive (a generator and its inverse span the same
        // subgroup)
        let mut row = row.clone();
        if row.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            for c in row.iter_mut() {
                *c = -*c;
            }
        }
        let nonzero: Vec<(usize, i64)> = row
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let name = if nonzero.len() == 1 && nonzero[0].1 == 1 {
            comp_lambda(fixed_sorted[nonzero[0].0])
        } else {
            GeneratorName::lambda_comb(
                path,
                nonzero
                    .iter()
                    .map(|&(i, c)| (c, comp_lambda(fixed_sorted[i])))
                    .collect(),
            )
        };
        ctx.note(&name, "longitudinal rotation class".to_string());
        lambda_block.push(name);
    }

    let mut abelian_names = mu_names.clone();
    abelian_names.extend(lambda_block);

    // meridian words: all fixed components are named generators
    let comp0_word = Word::gen(comp_mu(0));
    let meridians = dfs_meridians(path, leaf_globals, &children, comp0_word);

    // the symmetry generator
    if af.order <= 1 {
        // trivial A_F: straight product; any leftover lambda coordinates are
        // the plain ones (sb covered all of Z^{n+1})
        let mut factors = vec![GroupExpr::free_abelian(abelian_names)];
        for (_, sub, _, _) in &children {
            factors.push(sub.expr.clone());
        }
        return Ok(Sub {
            expr: GroupExpr::Product(factors),
            meridians,
        });
    }

    let payload: Vec<(Rational, GeneratorName)> = sb
        .fractional
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| (*c, comp_lambda(fixed_sorted[i])))
        .collect();
    let alpha = GeneratorName::alpha(path, payload);
    ctx.note(
        &alpha,
        format!(
            "symmetry generator of order {} (fractional rotation class)",
            af.order
        ),
    );

    let action_perm = if sb.multiplier == 1 {
        af.action.clone()
    } else {
        af.action.pow(sb.multiplier as u64)
    };

    // inversion targets per companion slot
    let mut inversion_targets: Vec<Vec<GeneratorName>> = Vec::new();
    let mut symbolic = false;
    for i in 0..children.len() {
        if action_perm.sign(i) < 0 {
            match negatable_generators(&group::normalize(&children[action_perm.image(i)].1.expr))
            {
                Some(t) => inversion_targets.push(t),
                None => {
                    symbolic = true;
                    inversion_targets.push(Vec::new());
                }
            }
        } else {
            inversion_targets.push(Vec::new());
        }
    }
    let action = if symbolic {
        ctx.caveats.push(
            "inversion automorphism of a composite companion is not computable; \
             action recorded symbolically"
                .into(),
        );
        ActionSpec::SymbolicAut(format!("inversion along {}", action_perm))
    } else {
        ActionSpec::SignedPerm {
            perm: action_perm,
            inversion_targets,
        }
    };

    let kernel: Vec<GroupExpr> = children.iter().map(|(_, sub, _, _)| sub.expr.clone()).collect();
    let sd = GroupExpr::SemiDirect {
        kernel,
        actor: Box::new(GroupExpr::FreeAbelian(vec![alpha])),
        action,
    };
    Ok(Sub {
        expr: GroupExpr::Product(vec![GroupExpr::free_abelian(abelian_names), sd]),
        meridians,
    })
}

/// Generators of a companion factor negated by an orientation reversal:
/// everything except rotations of surviving components, provided the factor
/// is structurally abelian with classifiable names.
fn negatable_generators(e: &GroupExpr) -> Option<Vec<GeneratorName>> {
    match e {
        GroupExpr::FreeAbelian(names) => Some(
            names
                .iter()
                .filter(|n| !matches!(n.kind, NameKind::Lambda(_) | NameKind::Mu(_)))
                .cloned()
                .collect(),
        ),
        GroupExpr::Trivial => Some(Vec::new()),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// split links

fn split_framed(
    summands: &[CompanionshipTree],
    ctx: &mut Ctx,
) -> Result<SpaceResult, EngineError> {
    let k = summands.len();
    let mut summand_results = Vec::new();
    let mut offset = 0usize;
    let mut opaque = false;
    for t in summands {
        let comps = t.total_components();
        if t.is_unknot() {
            // contractible framed-space factor; complement is a solid torus
            let mu = GeneratorName::mu(offset);
            ctx.note(
                &mu,
                "meridional rotation of an unknot summand (passing loop)",
            );
            summand_results.push((
                SpaceExpr::Point,
                GroupExpr::Trivial,
                GroupExpr::FreeAbelian(vec![mu]),
            ));
        } else {
            let mut next = offset;
            let sub = eval(t, &mut Vec::new(), &mut next, ctx)?;
            opaque = true;
            let name = format!("summand{}", summand_results.len() + 1);
            summand_results.push((
                space_of_group(&group::normalize(&sub.expr)),
                group::normalize(&sub.expr),
                GroupExpr::KnotGroupOpaque(format!("C_{name}")),
            ));
        }
        offset += comps;
    }

    if k == 2 {
        let fiber = SpaceExpr::product(vec![
            complement_space(&summands[0], 1),
            complement_space(&summands[1], 2),
        ]);
        let base = SpaceExpr::product(
            summand_results.iter().map(|(s, _, _)| s.clone()).collect(),
        );
        let space = SpaceExpr::product(vec![
            SpaceExpr::SO3,
            SpaceExpr::Bundle {
                fiber: Box::new(fiber),
                base: Box::new(base),
            },
        ]);
        let mut factors = vec![GroupExpr::Cyclic(2)];
        for (_, base_pi1, fiber_pi1) in &summand_results {
            factors.push(fiber_pi1.clone());
            factors.push(base_pi1.clone());
        }
        let pi1 = group::normalize(&GroupExpr::Product(factors));
        let mut res = SpaceResult::new(space, pi1);
        res.glossary = ctx.glossary.clone();
        res.caveats = ctx.caveats.clone();
        if opaque {
            res.caveats
                .push("contains opaque knot-complement factors".into());
        }
        return Ok(res);
    }

    // k >= 3: fibration-level expression; pi1 is only a lower bound
    let base = SpaceExpr::product(
        summand_results.iter().map(|(s, _, _)| s.clone()).collect(),
    );
    let fibers = SpaceExpr::product(
        (0..k)
            .map(|i| complement_space(&summands[i], i + 1))
            .collect(),
    );
    let space = SpaceExpr::product(vec![
        SpaceExpr::SO3,
        SpaceExpr::Bundle {
            fiber: Box::new(fibers),
            base: Box::new(base),
        },
    ]);
    let pi1 = group::normalize(&GroupExpr::Product(
        summand_results
            .iter()
            .map(|(_, g, _)| g.clone())
            .collect(),
    ));
    let mut res = SpaceResult::new(space, pi1);
    res.glossary = ctx.glossary.clone();
    res.caveats = ctx.caveats.clone();
    res.caveats
        .push("split link with >= 3 summands: base only surjectively mapped; \
               pi1 is a lower bound"
            .into());
    Ok(res)
}

fn complement_space(tree: &CompanionshipTree, index: usize) -> SpaceExpr {
    if tree.is_unknot() {
        SpaceExpr::Circle
    } else {
        SpaceExpr::OpaqueComplement(format!("summand{index}"))
    }
}

fn split_solid_torus(summands: &[CompanionshipTree]) -> Result<SpaceResult, EngineError> {
    // expect (ball knot, unknot)
    if summands.len() != 2 {
        return Err(EngineError::ComponentCount {
            expected: 2,
            got: summands.len(),
        });
    }
    let ball = &summands[0];
    let outer = &summands[1];
    if !outer.is_unknot() || outer.total_components() != 1 {
        return Err(EngineError::UnknottednessUnverified { component: 1 });
    }
    let mu1 = GeneratorName::mu(1);
    if ball.is_unknot() {
        // Emb(S^1, D^3) at the unknot is SO_3
        let space = SpaceExpr::product(vec![SpaceExpr::Circle, SpaceExpr::SO3]);
        let pi1 = group::normalize(&GroupExpr::Product(vec![
            GroupExpr::FreeAbelian(vec![mu1.clone()]),
            GroupExpr::Cyclic(2),
        ]));
        let mut res = SpaceResult::new(space, pi1);
        res.glossary.insert(
            mu1.to_string(),
            "longitudinal rotation of the solid torus".into(),
        );
        res.glossary.insert(
            "lam0".into(),
            "reparametrization of the knot; generates the Z/2 class".into(),
        );
        return Ok(res);
    }
    let space = SpaceExpr::product(vec![
        SpaceExpr::Circle,
        SpaceExpr::Bundle {
            fiber: Box::new(SpaceExpr::product(vec![
                SpaceExpr::OpaqueComplement("ball knot".into()),
                SpaceExpr::SO3,
            ])),
            base: Box::new(SpaceExpr::ClassifyingSpace(GroupExpr::KnotGroupOpaque(
                "K_j".into(),
            ))),
        },
    ]);
    let pi1 = GroupExpr::Product(vec![
        GroupExpr::FreeAbelian(vec![mu1]),
        GroupExpr::KnotGroupOpaque("Emb(S^1,D^3) at the ball knot".into()),
    ]);
    let mut res = SpaceResult::new(space, group::normalize(&pi1));
    res.caveats
        .push("ball-knot space left opaque (nontrivial knot in a ball)".into());
    res.caveats
        .push("lambda1 generates a central Z/2 subgroup".into());
    Ok(res)
}

fn split_thickened_torus(summands: &[CompanionshipTree]) -> Result<SpaceResult, EngineError> {
    if summands.len() != 2 {
        return Err(EngineError::ComponentCount {
            expected: 3,
            got: summands.iter().map(|t| t.total_components()).sum(),
        });
    }
    let ball = &summands[0];
    let hopf = &summands[1];
    if !hopf.is_hopf() {
        return Err(EngineError::HopfSublinkUnverified);
    }
    let mu1 = GeneratorName::mu(1);
    let mu2 = GeneratorName::mu(2);
    if ball.is_unknot() {
        let space = SpaceExpr::product(vec![
            SpaceExpr::Circle,
            SpaceExpr::Circle,
            SpaceExpr::SO3,
        ]);
        let pi1 = group::normalize(&GroupExpr::Product(vec![
            GroupExpr::FreeAbelian(vec![mu1.clone(), mu2.clone()]),
            GroupExpr::Cyclic(2),
        ]));
        let mut res = SpaceResult::new(space, pi1);
        res.glossary
            .insert(mu1.to_string(), "torus rotation (longitudinal)".into());
        res.glossary
            .insert(mu2.to_string(), "torus rotation (meridional)".into());
        res.glossary.insert(
            "lam0".into(),
            "reparametrization of the knot; generates the Z/2 class".into(),
        );
        return Ok(res);
    }
    let space = SpaceExpr::product(vec![
        SpaceExpr::Circle,
        SpaceExpr::Circle,
        SpaceExpr::Bundle {
            fiber: Box::new(SpaceExpr::product(vec![
                SpaceExpr::OpaqueComplement("ball knot".into()),
                SpaceExpr::SO3,
            ])),
            base: Box::new(SpaceExpr::ClassifyingSpace(GroupExpr::KnotGroupOpaque(
                "K_j".into(),
            ))),
        },
    ]);
    let pi1 = GroupExpr::Product(vec![
        GroupExpr::FreeAbelian(vec![mu1, mu2]),
        GroupExpr::KnotGroupOpaque("Emb(S^1,D^3) at the ball knot".into()),
    ]);
    let mut res = SpaceResult::new(space, group::normalize(&pi1));
    res.caveats
        .push("ball-knot space left opaque (nontrivial knot in a ball)".into());
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;
    use crate::group::{abelianize, iso_check, IsoResult};

    fn torus(p: i64, q: i64) -> CompanionshipTree {
        CompanionshipTree::leaf(SimpleLink::Torus { p, q })
    }

    fn edge(t: CompanionshipTree) -> Slot {
        Slot::Edge {
            child: Box::new(t),
            reversed: false,
        }
    }

    fn irr(t: CompanionshipTree) -> LinkDescription {
        LinkDescription::Irreducible(t)
    }

    fn free_rank(g: &GroupExpr) -> Option<usize> {
        match group::normalize(g) {
            GroupExpr::Trivial => Some(0),
            GroupExpr::FreeAbelian(ns) => Some(ns.len()),
            _ => None,
        }
    }

    #[test]
    fn framed_hopf_is_z2() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::keychain(1)));
        let res = pi1_framed(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(2));
    }

    #[test]
    fn framed_trefoil_is_z() {
        let d = irr(torus(2, 3));
        let res = pi1_framed(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(1));
    }

    #[test]
    fn framed_whitehead_is_z4() {
        let d = irr(CompanionshipTree::leaf(fixtures::whitehead()));
        let res = pi1_framed(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(4));
    }

    #[test]
    fn framed_trefoil_sum_empty_is_z4() {
        // (empty, J) |> KC_2
        let d = irr(CompanionshipTree::splice(
            SimpleLink::keychain(2),
            vec![Slot::Leaf, edge(torus(2, 3))],
        ));
        let res = pi1_framed(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(4));
    }

    #[test]
    fn framed_whitehead_double_is_z_times_klein() {
        // J |> Wh: splice the trefoil into the Whitehead link
        let d = irr(CompanionshipTree::splice(
            fixtures::whitehead(),
            vec![edge(torus(2, 3))],
        ));
        let res = pi1_framed(&d).unwrap();
        // Z<mu0> x (Z<a> |x Z<g>), action inverting g
        let expected = GroupExpr::Product(vec![
            GroupExpr::FreeAbelian(vec![GeneratorName::mu(0)]),
            GroupExpr::SemiDirect {
                kernel: vec![GroupExpr::FreeAbelian(vec![GeneratorName::gramain(&[0])])],
                actor: Box::new(GroupExpr::FreeAbelian(vec![GeneratorName::named("a")])),
                action: ActionSpec::SignedPerm {
                    perm: crate::link_model::SignedPermutation::from_signed_images(&[-1])
                        .unwrap(),
                    inversion_targets: vec![vec![GeneratorName::gramain(&[0])]],
                },
            },
        ]);
        assert_eq!(iso_check(&res.pi1, &expected), IsoResult::Equal, "{}", res.pi1);
        let ab = abelianize(&res.pi1).unwrap();
        assert_eq!((ab.rank, ab.torsion.as_slice()), (2, &[2][..]));
    }

    #[test]
    fn solid_torus_hopf_is_z() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::keychain(1)));
        let res = pi1_solid_torus(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(1));
    }

    #[test]
    fn solid_torus_seifert_2_5_is_z2() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::Seifert { p: 2, q: 5 }));
        let res = pi1_solid_torus(&d).unwrap();
        match group::normalize(&res.pi1) {
            GroupExpr::FreeAbelian(ns) => {
                assert_eq!(
                    ns,
                    vec![GeneratorName::lambda(1), GeneratorName::mu(1)]
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unframed_trefoil_is_trivial() {
        let d = irr(torus(2, 3));
        let res = pi1_unframed(&d).unwrap();
        assert_eq!(res.pi1, GroupExpr::Trivial);
    }

    #[test]
    fn unframed_whitehead_is_z2() {
        let d = irr(CompanionshipTree::leaf(fixtures::whitehead()));
        let res = pi1_unframed(&d).unwrap();
        match group::normalize(&res.pi1) {
            GroupExpr::FreeAbelian(ns) => assert_eq!(
                ns,
                vec![GeneratorName::lambda(0), GeneratorName::lambda(1)]
            ),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unframed_keychain_matches_table() {
        // KC_n: Z^{n-1} x PB_n
        for n in 1..=4usize {
            let d = irr(CompanionshipTree::leaf(SimpleLink::keychain(n)));
            let res = pi1_unframed(&d).unwrap();
            let expected = GroupExpr::Product(vec![
                GroupExpr::FreeAbelian(
                    (0..n.saturating_sub(1))
                        .map(|i| GeneratorName::named(&format!("x{i}")))
                        .collect(),
                ),
                GroupExpr::PureBraid {
                    strands: n,
                    scope: vec![],
                },
            ]);
            assert_eq!(
                iso_check(&res.pi1, &expected),
                IsoResult::Equal,
                "KC_{n}: got {}",
                res.pi1
            );
        }
    }

    #[test]
    fn whitehead_of_whitehead_matches_table() {
        let d = irr(CompanionshipTree::splice(
            fixtures::whitehead(),
            vec![edge(CompanionshipTree::leaf(fixtures::whitehead()))],
        ));
        let res = pi1_solid_torus(&d).unwrap();
        // Z^2 x <a, b, c | [b,c], b^a = b^-1, c^a = c^-1>
        let b = GeneratorName::named("b");
        let c = GeneratorName::named("c");
        let expected = GroupExpr::Product(vec![
            GroupExpr::FreeAbelian(vec![
                GeneratorName::named("mu1"),
                GeneratorName::named("lam1"),
            ]),
            GroupExpr::SemiDirect {
                kernel: vec![GroupExpr::FreeAbelian(vec![b.clone(), c.clone()])],
                actor: Box::new(GroupExpr::FreeAbelian(vec![GeneratorName::named("a")])),
                action: ActionSpec::SignedPerm {
                    perm: crate::link_model::SignedPermutation::from_signed_images(&[-1])
                        .unwrap(),
                    inversion_targets: vec![vec![b, c]],
                },
            },
        ]);
        assert_eq!(iso_check(&res.pi1, &expected), IsoResult::Equal, "{}", res.pi1);
    }

    #[test]
    fn thickened_torus_keychain2_is_z2() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::keychain(2)));
        let res = pi1_thickened_torus(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(2));
    }

    #[test]
    fn thickened_torus_rlink_is_z2() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::RLink { p: 3, q: 4 }));
        let res = pi1_thickened_torus(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(2));
    }

    #[test]
    fn thickened_torus_l6a5_is_z3() {
        let d = irr(CompanionshipTree::leaf(fixtures::l6a5()));
        let res = pi1_thickened_torus(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(3));
    }

    #[test]
    fn thickened_torus_wh_into_rlink_is_z4() {
        let mut tree = CompanionshipTree::splice(
            SimpleLink::RLink { p: 3, q: 4 },
            vec![
                Slot::Leaf,
                edge(CompanionshipTree::leaf(fixtures::whitehead())),
            ],
        );
        tree.annotations.hopf = Some((0, 1));
        let d = irr(tree);
        let res = pi1_thickened_torus(&d).unwrap();
        assert_eq!(free_rank(&res.pi1), Some(4));
    }

    #[test]
    fn stoimenow_solid_torus() {
        // Z^2 x (Z<a> |x Z^5), positive cycle
        let mut slots = vec![Slot::Leaf];
        for _ in 0..5 {
            slots.push(edge(torus(2, 3)));
        }
        let d = irr(CompanionshipTree::splice(fixtures::stoimenow(5), slots));
        let res = pi1_solid_torus(&d).unwrap();
        match group::normalize(&res.pi1) {
            GroupExpr::Product(fs) => {
                assert_eq!(fs.len(), 2, "{}", res.pi1);
                assert!(fs.iter().any(
                    |f| matches!(f, GroupExpr::FreeAbelian(ns) if ns.len() == 2)
                ));
                assert!(fs.iter().any(|f| matches!(
                    f,
                    GroupExpr::SemiDirect { kernel, .. } if kernel.len() == 5
                )));
            }
            other => panic!("{other}"),
        }
        // abelianization: Z^2 + Z<a> + coinvariants of a positive 5-cycle
        let ab = abelianize(&res.pi1).unwrap();
        assert_eq!((ab.rank, ab.torsion.len()), (4, 0));
    }

    #[test]
    fn sakuma_solid_torus_matches_table() {
        let mut slots = vec![Slot::Leaf];
        for _ in 0..5 {
            slots.push(edge(torus(2, 3)));
        }
        let d = irr(CompanionshipTree::splice(fixtures::sakuma(5), slots));
        let res = pi1_solid_torus(&d).unwrap();
        // Z^2 x (Z<a> |x Z^5), negative cycle
        match group::normalize(&res.pi1) {
            GroupExpr::Product(fs) => {
                assert_eq!(fs.len(), 2, "{}", res.pi1);
                let sd = fs
                    .iter()
                    .find_map(|f| match f {
                        GroupExpr::SemiDirect { kernel, action, .. } => {
                            Some((kernel.len(), action.clone()))
                        }
                        _ => None,
                    })
                    .expect("semidirect factor");
                assert_eq!(sd.0, 5);
                match sd.1 {
                    ActionSpec::SignedPerm { perm, .. } => {
                        assert!(perm.signed_images().iter().all(|&v| v < 0));
                    }
                    other => panic!("{other:?}"),
                }
            }
            other => panic!("{other}"),
        }
        // H_1 = Z^3 + Z/2
        let ab = abelianize(&res.pi1).unwrap();
        assert_eq!((ab.rank, ab.torsion.as_slice()), (3, &[2][..]));
    }

    #[test]
    fn unlink_solid_torus_and_thickened() {
        let unknot = CompanionshipTree::leaf(SimpleLink::Unknot);
        let d = LinkDescription::Split(vec![unknot.clone(), unknot.clone()]);
        let res = pi1_solid_torus(&d).unwrap();
        let ab = abelianize(&res.pi1).unwrap();
        assert_eq!((ab.rank, ab.torsion.as_slice()), (1, &[2][..]));

        let hopf = CompanionshipTree::leaf(SimpleLink::keychain(1));
        let d = LinkDescription::Split(vec![unknot, hopf]);
        let res = pi1_thickened_torus(&d).unwrap();
        let ab = abelianize(&res.pi1).unwrap();
        assert_eq!((ab.rank, ab.torsion.as_slice()), (2, &[2][..]));
    }

    #[test]
    fn factor_meridians_roundtrip() {
        for d in [
            irr(torus(2, 3)),
            irr(CompanionshipTree::leaf(SimpleLink::keychain(1))),
            irr(CompanionshipTree::leaf(fixtures::whitehead())),
            irr(CompanionshipTree::splice(
                SimpleLink::keychain(2),
                vec![Slot::Leaf, edge(torus(2, 3))],
            )),
        ] {
            let framed = pi1_framed(&d).unwrap();
            let split = factor_meridians(&d).unwrap();
            let recombined = GroupExpr::Product(vec![
                split.meridional.clone(),
                split.complement.clone(),
            ]);
            assert_eq!(
                iso_check(&framed.pi1, &recombined),
                IsoResult::Equal,
                "tree {d:?}: framed {} vs {} x {}",
                framed.pi1,
                split.meridional,
                split.complement
            );
        }
    }

    #[test]
    fn framed_unknot_is_trivial() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::Unknot));
        let res = pi1_framed(&d).unwrap();
        assert_eq!(res.pi1, GroupExpr::Trivial);
        assert!(matches!(
            factor_meridians(&d),
            Err(EngineError::UnknotInput)
        ));
    }

    #[test]
    fn solid_torus_rejects_three_components() {
        let d = irr(CompanionshipTree::leaf(SimpleLink::keychain(2)));
        assert!(matches!(
            pi1_solid_torus(&d),
            Err(EngineError::ComponentCount { .. })
        ));
    }
}
