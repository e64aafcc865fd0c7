use super::simple::{canonicalize_simple, check_symmetry_entry, SimpleLink};
use super::tree::{CompanionshipTree, LinkDescription, Slot};
use std::collections::BTreeSet;
use std::fmt;

/// One validation problem. Violations are data, not failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An edge companion is an unknot, a Hopf link, or otherwise forbidden.
    ForbiddenCompanion { path: Vec<usize>, what: String },
    SlotCountMismatch {
        path: Vec<usize>,
        expected: usize,
        got: usize,
    },
    /// Splice pattern that cannot occur in a JSJ tree of a link in S^3,
    /// where checkable from parameters.
    KglViolation { path: Vec<usize>, detail: String },
    SymmetryInconsistency { path: Vec<usize>, detail: String },
    /// A needed symmetry entry is missing on a spliced hyperbolic vertex.
    SymmetryEntryMissing { path: Vec<usize>, fixed: Vec<usize> },
    /// @hopf annotation referencing missing or non-adjacent components.
    BadHopfAnnotation { detail: String },
    /// Split link with fewer than two summands, or a split summand that is
    /// itself degenerate.
    MalformedSplit { detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn path_str(p: &[usize]) -> String {
            if p.is_empty() {
                "root".into()
            } else {
                p.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            }
        }
        match self {
            Violation::ForbiddenCompanion { path, what } => {
                write!(f, "forbidden companion at {}: {}", path_str(path), what)
            }
            Violation::SlotCountMismatch {
                path,
                expected,
                got,
            } => write!(
                f,
                "slot count mismatch at {}: expected {expected}, got {got}",
                path_str(path)
            ),
            Violation::KglViolation { path, detail } => {
                write!(f, "invalid splice at {}: {}", path_str(path), detail)
            }
            Violation::SymmetryInconsistency { path, detail } => {
                write!(f, "symmetry table at {}: {}", path_str(path), detail)
            }
            Violation::SymmetryEntryMissing { path, fixed } => write!(
                f,
                "missing symmetry entry fix({:?}) at {}",
                fixed,
                path_str(path)
            ),
            Violation::BadHopfAnnotation { detail } => {
                write!(f, "bad @hopf annotation: {}", detail)
            }
            Violation::MalformedSplit { detail } => write!(f, "malformed split: {}", detail),
        }
    }
}

/// Result of validating a description; empty means accepted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Validates a link description. Structural companionship-tree rules,
/// checkable KGL conditions, symmetry tables, and annotations.
pub fn validate(desc: &LinkDescription) -> ValidationReport {
    let mut report = ValidationReport::default();
    match desc {
        LinkDescription::Irreducible(tree) => {
            validate_tree(tree, &mut Vec::new(), &mut report);
            validate_hopf_annotation(tree, &mut report);
        }
        LinkDescription::Split(summands) => {
            if summands.len() < 2 {
                report.violations.push(Violation::MalformedSplit {
                    detail: "split needs at least two summands".into(),
                });
            }
            for t in summands {
                validate_tree(t, &mut Vec::new(), &mut report);
            }
        }
    }
    report
}

fn validate_tree(tree: &CompanionshipTree, path: &mut Vec<usize>, report: &mut ValidationReport) {
    let expected = tree.vertex.components().saturating_sub(1);
    if tree.slots.len() != expected {
        report.violations.push(Violation::SlotCountMismatch {
            path: path.clone(),
            expected,
            got: tree.slots.len(),
        });
        return; // slot-indexed checks below would be meaningless
    }

    if let SimpleLink::Keychain { n, special } = &tree.vertex {
        if *special > *n {
            report.violations.push(Violation::KglViolation {
                path: path.clone(),
                detail: format!("keychain special index {special} out of range"),
            });
        }
    }

    if let SimpleLink::Hyperbolic(h) = &tree.vertex {
        if h.components == 0 {
            report.violations.push(Violation::SymmetryInconsistency {
                path: path.clone(),
                detail: "hyperbolic link with zero components".into(),
            });
        }
        for &i in &h.unknotted {
            if i >= h.components {
                report.violations.push(Violation::SymmetryInconsistency {
                    path: path.clone(),
                    detail: format!("unknotted index {i} out of range"),
                });
            }
        }
        for &(a, b) in &h.hopf_pairs {
            if a >= h.components || b >= h.components || a == b {
                report.violations.push(Violation::SymmetryInconsistency {
                    path: path.clone(),
                    detail: format!("hopf pair ({a},{b}) out of range"),
                });
            }
        }
        if h.invertible.len() != h.components {
            report.violations.push(Violation::SymmetryInconsistency {
                path: path.clone(),
                detail: "invertibility list length differs from component count".into(),
            });
        }
        for e in &h.symmetry.entries {
            if let Err(detail) = check_symmetry_entry(e, h.components) {
                report.violations.push(Violation::SymmetryInconsistency {
                    path: path.clone(),
                    detail,
                });
            }
        }
        // A spliced hyperbolic vertex needs the entry fixing exactly its
        // leaf components.
        if tree.has_edges() {
            let fixed: BTreeSet<usize> = std::iter::once(0)
                .chain(tree.slots.iter().enumerate().filter_map(|(i, s)| {
                    matches!(s, Slot::Leaf).then_some(i + 1)
                }))
                .collect();
            if h.symmetry.entry_for(&fixed).is_none() {
                report.violations.push(Violation::SymmetryEntryMissing {
                    path: path.clone(),
                    fixed: fixed.into_iter().collect(),
                });
            }
        }
    }

    // Companion rules.
    let mut knot_children = 0usize;
    for (i, slot) in tree.slots.iter().enumerate() {
        if let Slot::Edge { child, .. } = slot {
            let c = canonicalize_simple(&child.vertex);
            if child.is_unknot() || c == SimpleLink::Unknot && !child.has_edges() {
                report.violations.push(Violation::ForbiddenCompanion {
                    path: path.clone(),
                    what: "unknot".into(),
                });
            } else if child.is_hopf() {
                report.violations.push(Violation::ForbiddenCompanion {
                    path: path.clone(),
                    what: "Hopf link".into(),
                });
            }
            if child.is_knot() {
                knot_children += 1;
            }
            path.push(i);
            validate_tree(child, path, report);
            path.pop();
        }
    }

    // All pairwise linking is nonzero for the T/S/R families, so at most one
    // knot companion can be spliced into them.
    match tree.vertex {
        SimpleLink::Torus { .. } | SimpleLink::Seifert { .. } | SimpleLink::RLink { .. }
            if knot_children > 1 => {
                report.violations.push(Violation::KglViolation {
                    path: path.clone(),
                    detail: format!(
                        "{} knot companions on a torus-family vertex (pairwise linking is nonzero)",
                        knot_children
                    ),
                });
            }
        _ => {}
    }
}

fn validate_hopf_annotation(tree: &CompanionshipTree, report: &mut ValidationReport) {
    if let Some((a, b)) = tree.annotations.hopf {
        let table = tree.component_table();
        if a == b || a >= table.len() || b >= table.len() {
            report.violations.push(Violation::BadHopfAnnotation {
                detail: format!("components ({a},{b}) out of range"),
            });
            return;
        }
        if table[a].path != table[b].path {
            report.violations.push(Violation::BadHopfAnnotation {
                detail: format!("components {a} and {b} live on different vertices"),
            });
        }
    }
}
