use crate::link_model::{
    canonical_tree, CompanionshipTree, HyperbolicLink, LinkDescription, SimpleLink, Slot,
};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Renders a description back to canonical DSL text; `parse(to_dsl(d))`
/// reproduces the canonical form.
pub fn to_dsl(desc: &LinkDescription) -> String {
    let canonical = match desc {
        LinkDescription::Irreducible(t) => LinkDescription::Irreducible(canonical_tree(t)),
        LinkDescription::Split(ts) => {
            LinkDescription::Split(ts.iter().map(canonical_tree).collect())
        }
    };
    let mut decls: BTreeMap<String, HyperbolicLink> = BTreeMap::new();
    match &canonical {
        LinkDescription::Irreducible(t) => collect_decls(t, &mut decls),
        LinkDescription::Split(ts) => {
            for t in ts {
                collect_decls(t, &mut decls);
            }
        }
    }
    let mut out = String::new();
    for h in decls.values() {
        write_decl(&mut out, h);
    }
    out.push_str("return ");
    match &canonical {
        LinkDescription::Irreducible(t) => write_tree(&mut out, t),
        LinkDescription::Split(ts) => {
            out.push_str("split(");
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_tree(&mut out, t);
            }
            out.push(')');
        }
    }
    if let LinkDescription::Irreducible(t) = &canonical {
        if let Some((a, b)) = t.annotations.hopf {
            let _ = write!(out, " @hopf({a},{b})");
        }
        if !t.annotations.unknotted.is_empty() {
            let list: Vec<String> = t
                .annotations
                .unknotted
                .iter()
                .map(|v| v.to_string())
                .collect();
            let _ = write!(out, " @unknotted({})", list.join(","));
        }
    }
    out
}

fn collect_decls(tree: &CompanionshipTree, decls: &mut BTreeMap<String, HyperbolicLink>) {
    if let SimpleLink::Hyperbolic(h) = &tree.vertex {
        decls.entry(h.name.clone()).or_insert_with(|| h.clone());
    }
    for s in &tree.slots {
        if let Slot::Edge { child, .. } = s {
            collect_decls(child, decls);
        }
    }
}

fn write_decl(out: &mut String, h: &HyperbolicLink) {
    let _ = write!(out, "hyperbolic {} {{ components: {};", h.name, h.components);
    if !h.unknotted.is_empty() {
        let list: Vec<String> = h.unknotted.iter().map(|v| v.to_string()).collect();
        let _ = write!(out, " unknotted: [{}];", list.join(","));
    }
    let list: Vec<&str> = h
        .invertible
        .iter()
        .map(|b| if *b { "true" } else { "false" })
        .collect();
    let _ = write!(out, " invertible: [{}];", list.join(","));
    for &(a, b) in &h.hopf_pairs {
        let _ = write!(out, " hopf: [{a},{b}];");
    }
    for e in &h.symmetry.entries {
        let fixed: Vec<String> = e.fixed_components.iter().map(|v| v.to_string()).collect();
        let _ = write!(out, " symmetry fix({}): order {}", fixed.join(","), e.order);
        if e.action.size() > 0 {
            let imgs: Vec<String> = e
                .action
                .signed_images()
                .iter()
                .map(|v| v.to_string())
                .collect();
            let _ = write!(out, ", perm [{}]", imgs.join(","));
        }
        if !e.shift.is_empty() {
            let shifts: Vec<String> = e
                .shift
                .iter()
                .map(|r| {
                    if *r.denom() == 1 {
                        r.numer().to_string()
                    } else {
                        format!("{}/{}", r.numer(), r.denom())
                    }
                })
                .collect();
            let _ = write!(out, ", shift [{}]", shifts.join(","));
        }
        out.push(';');
    }
    out.push_str(" } ");
}

fn write_tree(out: &mut String, tree: &CompanionshipTree) {
    let simple = match &tree.vertex {
        SimpleLink::Torus { p, q } => format!("torus({p},{q})"),
        SimpleLink::Seifert { p, q } => format!("seifert({p},{q})"),
        SimpleLink::RLink { p, q } => format!("rlink({p},{q})"),
        SimpleLink::Keychain { n, .. } => format!("keychain({n})"),
        SimpleLink::Unknot => "unknot".into(),
        SimpleLink::Hyperbolic(h) => h.name.clone(),
    };
    if !tree.has_edges() {
        out.push_str(&simple);
        return;
    }
    let _ = write!(out, "splice({simple}; ");
    for (i, s) in tree.slots.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        match s {
            Slot::Leaf => out.push('_'),
            Slot::Edge { child, reversed } => {
                write_tree(out, child);
                if *reversed {
                    out.push_str("@rev");
                }
                if child.has_edges() && child.annotations.invertible == Some(true) {
                    out.push_str("@inv");
                }
            }
        }
    }
    out.push(')');
}
