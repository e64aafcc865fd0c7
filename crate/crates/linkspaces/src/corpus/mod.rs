//! The bundled oracle corpus reproducing the published example tables, plus
//! shared link fixtures.

pub mod expect;
pub mod fixtures;

use crate::dsl;
use crate::group::{iso_check, normalize, GroupExpr, IsoResult};
use crate::homotopy::{
    pi1_framed, pi1_solid_torus, pi1_thickened_torus, pi1_unframed, EngineError, SpaceResult,
};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

/// Which embedding space a corpus expectation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Space {
    Framed,
    Unframed,
    SolidTorus,
    ThickenedTorus,
}

impl Space {
    pub fn all() -> [Space; 4] {
        [
            Space::Framed,
            Space::Unframed,
            Space::SolidTorus,
            Space::ThickenedTorus,
        ]
    }

    pub fn key(&self) -> &'static str {
        match self {
            Space::Framed => "framed",
            Space::Unframed => "unframed",
            Space::SolidTorus => "solid_torus",
            Space::ThickenedTorus => "thickened_torus",
        }
    }
}

impl std::str::FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "framed" => Ok(Space::Framed),
            "unframed" => Ok(Space::Unframed),
            "solid-torus" | "solid_torus" => Ok(Space::SolidTorus),
            "thickened-torus" | "thickened_torus" => Ok(Space::ThickenedTorus),
            other => Err(format!(
                "unknown space `{other}` (framed|unframed|solid-torus|thickened-torus)"
            )),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// One corpus entry.
#[derive(Clone, Debug, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    /// Table row or example number backing an oracle entry; snapshots carry
    /// no citation.
    #[serde(default)]
    pub citation: Option<String>,
    pub status: Status,
    pub program: String,
    /// Expected group expressions per space, in the expected-expression
    /// mini-grammar.
    #[serde(default)]
    pub expected: BTreeMap<String, String>,
    /// Expected generator-name multisets per space.
    #[serde(default)]
    pub generators: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Oracle,
    Snapshot,
}

/// Embedded corpus entries (TOML sources).
const EMBEDDED: &[&str] = &[
    include_str!("../../corpus/table1_unlink.toml"),
    include_str!("../../corpus/table1_hopf.toml"),
    include_str!("../../corpus/table1_seifert_2_5.toml"),
    include_str!("../../corpus/table1_seifert_3_4.toml"),
    include_str!("../../corpus/table1_whitehead.toml"),
    include_str!("../../corpus/table1_l8n1.toml"),
    include_str!("../../corpus/table1_l9a32.toml"),
    include_str!("../../corpus/table1_8_18.toml"),
    include_str!("../../corpus/table1_wh_cable.toml"),
    include_str!("../../corpus/table1_sum_j_empty.toml"),
    include_str!("../../corpus/table1_sum_jj_kc3.toml"),
    include_str!("../../corpus/table1_wh_wh.toml"),
    include_str!("../../corpus/table1_bing.toml"),
    include_str!("../../corpus/table1_kgl3.toml"),
    include_str!("../../corpus/table1_kgl5.toml"),
    include_str!("../../corpus/table1_stoimenow.toml"),
    include_str!("../../corpus/table1_sakuma.toml"),
    include_str!("../../corpus/table2_hopf_unknot.toml"),
    include_str!("../../corpus/table2_rlink.toml"),
    include_str!("../../corpus/table2_kc2.toml"),
    include_str!("../../corpus/table2_l6a5.toml"),
    include_str!("../../corpus/table2_wh_rlink.toml"),
    include_str!("../../corpus/framed_spots.toml"),
    include_str!("../../corpus/snapshot_ex617a.toml"),
    include_str!("../../corpus/snapshot_ex617b.toml"),
    include_str!("../../corpus/snapshot_ex617c.toml"),
];

/// Loads the corpus: the `LINKSPACES_CORPUS` directory when set, otherwise
/// the embedded copy.
pub fn load() -> Result<Vec<CorpusEntry>, String> {
    if let Ok(dir) = std::env::var("LINKSPACES_CORPUS") {
        return load_dir(&PathBuf::from(dir));
    }
    EMBEDDED
        .iter()
        .map(|src| toml::from_str::<CorpusEntry>(src).map_err(|e| e.to_string()))
        .collect()
}

pub fn load_dir(dir: &std::path::Path) -> Result<Vec<CorpusEntry>, String> {
    let mut entries = Vec::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|r| r.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    for p in paths {
        let src =
            std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
        entries
            .push(toml::from_str::<CorpusEntry>(&src).map_err(|e| format!("{}: {e}", p.display()))?);
    }
    Ok(entries)
}

/// Outcome of checking one entry for one space.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: String,
    pub space: Space,
    pub passed: bool,
    pub detail: String,
}

pub fn compute_space(
    desc: &crate::link_model::LinkDescription,
    space: Space,
) -> Result<SpaceResult, EngineError> {
    match space {
        Space::Framed => pi1_framed(desc),
        Space::Unframed => pi1_unframed(desc),
        Space::SolidTorus => pi1_solid_torus(desc),
        Space::ThickenedTorus => pi1_thickened_torus(desc),
    }
}

/// Runs one entry: every expected space is computed and compared via
/// iso_check (structural equality of normal forms) plus generator-name
/// multiset equality.
pub fn check_entry(entry: &CorpusEntry) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let desc = match dsl::parse(&entry.program) {
        Ok(d) => d,
        Err(e) => {
            out.push(CheckOutcome {
                id: entry.id.clone(),
                space: Space::Framed,
                passed: false,
                detail: format!("program does not parse: {e}"),
            });
            return out;
        }
    };
    for space in Space::all() {
        let Some(expected_text) = entry.expected.get(space.key()) else {
            continue;
        };
        out.push(check_one(entry, &desc, space, expected_text));
    }
    out
}

fn check_one(
    entry: &CorpusEntry,
    desc: &crate::link_model::LinkDescription,
    space: Space,
    expected_text: &str,
) -> CheckOutcome {
    let fail = |detail: String| CheckOutcome {
        id: entry.id.clone(),
        space,
        passed: false,
        detail,
    };
    let expected = match expect::parse_expected(expected_text) {
        Ok(e) => e,
        Err(e) => return fail(format!("expected expression malformed: {e}")),
    };
    // corpus lint: expectations must already be in normal form
    let expected_normal = normalize(&expected);
    if iso_check(&expected, &expected_normal) != IsoResult::Equal {
        return fail("expected expression is not in normal form".into());
    }
    let got = match compute_space(desc, space) {
        Ok(r) => r,
        Err(e) => return fail(format!("engine error: {e}")),
    };
    match iso_check(&got.pi1, &expected) {
        IsoResult::Equal => {}
        IsoResult::Distinct(w) => {
            return fail(format!("groups differ ({w}): got {}", got.pi1));
        }
        IsoResult::Unknown => {
            return fail(format!(
                "groups not recognized as equal: got {}, expected {}",
                got.pi1, expected
            ))
        }
    };
    if let Some(expected_names) = entry.generators.get(space.key()) {
        let mut got_names: Vec<String> = got
            .pi1
            .generator_names()
            .iter()
            .map(|n| n.to_string())
            .collect();
        got_names.sort();
        let mut want = expected_names.clone();
        want.sort();
        if got_names != want {
            return fail(format!(
                "generator names differ: got [{}], expected [{}]",
                got_names.join(", "),
                want.join(", ")
            ));
        }
    }
    CheckOutcome {
        id: entry.id.clone(),
        space,
        passed: true,
        detail: format!("{}", normalize(&got.pi1)),
    }
}

/// Computes the normalized expression text for a snapshot entry.
pub fn snapshot_value(
    desc: &crate::link_model::LinkDescription,
    space: Space,
) -> Result<String, EngineError> {
    let res = compute_space(desc, space)?;
    Ok(render_expected(&normalize(&res.pi1)))
}

/// Renders a normalized expression in the expected-expression grammar.
pub fn render_expected(e: &GroupExpr) -> String {
    match e {
        GroupExpr::Trivial => "1".into(),
        GroupExpr::FreeAbelian(ns) => format!("Z^{}", ns.len()),
        GroupExpr::Cyclic(k) => format!("Z/{k}"),
        GroupExpr::PureBraid { strands, .. } => format!("PB({strands})"),
        GroupExpr::SpherePureMapping { punctures, .. } => format!("PMod({punctures})"),
        GroupExpr::YoungBraid { fixed, classes, .. } => {
            let cs: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
            format!("YB({fixed};{})", cs.join(","))
        }
        GroupExpr::Product(fs) => fs
            .iter()
            .map(|f| match f {
                GroupExpr::SemiDirect { .. } => format!("({})", render_expected(f)),
                _ => render_expected(f),
            })
            .collect::<Vec<_>>()
            .join(" x "),
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => {
            let ks: Vec<String> = kernel.iter().map(render_expected).collect();
            let act = match action {
                crate::group::ActionSpec::ClassPermute => "class".to_string(),
                crate::group::ActionSpec::SignedPerm { perm, .. } => {
                    let imgs: Vec<String> = perm
                        .signed_images()
                        .iter()
                        .map(|v| v.to_string())
                        .collect();
                    format!("perm [{}]", imgs.join(","))
                }
                crate::group::ActionSpec::Trivial => "perm [1]".to_string(),
                crate::group::ActionSpec::SymbolicAut(_) => "class".to_string(),
            };
            format!(
                "SD({}; {}; {act})",
                render_expected(actor),
                ks.join(", ")
            )
        }
        GroupExpr::QuotientByNormal { base, .. } => {
            format!("({})", render_expected(base))
        }
        GroupExpr::KnotGroupOpaque(_) => "1".into(),
    }
}
