use crate::group::{abelianize, to_presentation, GroupError};
use crate::homotopy::SpaceResult;
use std::fmt::Write;

/// Output formats for computed results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Expr,
    Presentation,
    Abelianization,
    Space,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "expr" => Ok(ReportFormat::Expr),
            "presentation" => Ok(ReportFormat::Presentation),
            "abelianization" => Ok(ReportFormat::Abelianization),
            "space" => Ok(ReportFormat::Space),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!(
                "unknown output format `{other}` (expr|presentation|abelianization|space|json)"
            )),
        }
    }
}

/// Deterministic textual report of a space result.
pub fn render_report(result: &SpaceResult, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Expr => {
            let _ = writeln!(out, "pi1 = {}", result.pi1);
        }
        ReportFormat::Presentation => match to_presentation(&result.pi1) {
            Ok(p) => {
                let gens: Vec<String> = p.generators.iter().map(|g| g.to_string()).collect();
                let rels: Vec<String> = p.relators.iter().map(|r| r.to_string()).collect();
                let _ = writeln!(out, "<{} | {}>", gens.join(", "), rels.join(", "));
            }
            Err(GroupError::OpaqueFactor) => {
                let _ = writeln!(out, "presentation unavailable: opaque knot-group factor");
            }
            Err(GroupError::SymbolicAction) => {
                let _ = writeln!(
                    out,
                    "presentation withheld: the inversion action is symbolic"
                );
            }
            Err(e) => {
                let _ = writeln!(out, "presentation unavailable: {e}");
            }
        },
        ReportFormat::Abelianization => match abelianize(&result.pi1) {
            Ok(ab) => {
                let _ = writeln!(out, "H_1 = {ab}");
            }
            Err(e) => {
                let _ = writeln!(out, "abelianization unavailable: {e}");
            }
        },
        ReportFormat::Space => {
            let _ = writeln!(out, "{}", result.space);
        }
        ReportFormat::Json => {
            let glossary: serde_json::Map<String, serde_json::Value> = result
                .glossary
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect();
            let doc = serde_json::json!({
                "pi1": result.pi1,
                "pi1_text": result.pi1.to_string(),
                "space": result.space,
                "space_text": result.space.to_string(),
                "glossary": glossary,
                "caveats": result.caveats,
            });
            out = serde_json::to_string_pretty(&doc).expect("results serialize");
            out.push('\n');
        }
    }
    if format != ReportFormat::Json {
        if !result.glossary.is_empty() && matches!(format, ReportFormat::Expr) {
            let _ = writeln!(out, "generators:");
            for (k, v) in &result.glossary {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        for c in &result.caveats {
            let _ = writeln!(out, "caveat: {c}");
        }
    }
    out
}
