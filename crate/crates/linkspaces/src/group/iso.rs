use super::abelian::abelianize;
use super::expr::{ActionSpec, GroupExpr};
use super::normalize::normalize;

/// Tri-state isomorphism check result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    Equal,
    Distinct(String),
    Unknown,
}

/// Name-erased canonical key: generator identities are replaced by positions
/// so that Equal means "identical normal forms up to renaming".
fn erased_key(e: &GroupExpr) -> String {
    match e {
        GroupExpr::Trivial => "1".into(),
        GroupExpr::FreeAbelian(names) => format!("Z^{}", names.len()),
        GroupExpr::Cyclic(k) => format!("Z/{k}"),
        GroupExpr::PureBraid { strands, .. } => format!("PB({strands})"),
        GroupExpr::SpherePureMapping { punctures, .. } => format!("PModS({punctures})"),
        GroupExpr::YoungBraid { fixed, classes, .. } => {
            let mut cs = classes.clone();
            cs.sort_unstable();
            format!("YB({fixed};{cs:?})")
        }
        GroupExpr::Product(fs) => {
            let mut keys: Vec<String> = fs.iter().map(erased_key).collect();
            keys.sort();
            format!("({})", keys.join(" x "))
        }
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => {
            let ks: Vec<String> = kernel.iter().map(erased_key).collect();
            let _ = &kernel;
            let act = match action {
                ActionSpec::Trivial => "triv".to_string(),
                ActionSpec::ClassPermute => "class".to_string(),
                ActionSpec::SymbolicAut(_) => "symbolic".to_string(),
                ActionSpec::SignedPerm {
                    perm,
                    inversion_targets,
                } => {
                    // inversion targets are compared by count per factor:
                    // sign patterns of equal size on a free-abelian kernel
                    // factor are conjugate, so the count determines the
                    // isomorphism type
                    let targets: Vec<String> = inversion_targets
                        .iter()
                        .enumerate()
                        .map(|(i, t)| format!("{i}->{}", t.len()))
                        .collect();
                    format!("perm{}[{}]", perm, targets.join(";"))
                }
            };
            format!("([{}] rtimes {} : {act})", ks.join(" x "), erased_key(actor))
        }
        GroupExpr::QuotientByNormal { base, relators } => {
            format!("({} / {} relators)", erased_key(base), relators.len())
        }
        GroupExpr::KnotGroupOpaque(_) => "opaque".into(),
    }
}

/// Sound tri-state isomorphism check: Equal only for identical normal forms
/// up to renaming; Distinct on a differing computable invariant; Unknown
/// otherwise.
pub fn iso_check(a: &GroupExpr, b: &GroupExpr) -> IsoResult {
    let na = normalize(a);
    let nb = normalize(b);
    if erased_key(&na) == erased_key(&nb) {
        return IsoResult::Equal;
    }
    if na.contains_opaque() || nb.contains_opaque() {
        return IsoResult::Unknown;
    }

    match (abelianize(&na), abelianize(&nb)) {
        (Ok(aa), Ok(ab)) => {
            if aa != ab {
                return IsoResult::Distinct(format!("abelianizations differ: {aa} vs {ab}"));
            }
        }
        _ => return IsoResult::Unknown,
    }

    if na.is_certainly_abelian() && nb.is_certainly_nonabelian()
        || na.is_certainly_nonabelian() && nb.is_certainly_abelian()
    {
        return IsoResult::Distinct("one side is abelian, the other is not".into());
    }

    // both certainly abelian with equal abelianizations are isomorphic
    if na.is_certainly_abelian() && nb.is_certainly_abelian() {
        return IsoResult::Equal;
    }

    IsoResult::Unknown
}
