use super::name::{GeneratorName, Path};
use crate::link_model::SignedPermutation;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How the actor of a semidirect product acts on the kernel factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionSpec {
    Trivial,
    /// A chosen generator of the (cyclic free or finite-quotient) actor acts
    /// by permuting kernel factors per the signed permutation; a sign -1 on a
    /// factor additionally inverts the listed generators of the target
    /// factor (identity on the rest).
    SignedPerm {
        perm: SignedPermutation,
        /// Per target factor: generator names negated by sign -1.
        inversion_targets: Vec<Vec<GeneratorName>>,
    },
    /// Young-braid actor permuting kernel factors through its class
    /// structure; factors are aligned with the moving strands in order.
    ClassPermute,
    /// Inversion automorphism of a composite factor that the engine cannot
    /// compute; results carrying this are flagged partially symbolic.
    SymbolicAut(String),
}

impl ActionSpec {
    pub fn is_trivial(&self) -> bool {
        match self {
            ActionSpec::Trivial => true,
            ActionSpec::SignedPerm {
                perm,
                inversion_targets,
            } => perm.is_identity() && inversion_targets.iter().all(|t| t.is_empty()),
            _ => false,
        }
    }
}

/// A structured group value: the target algebra of the homotopy recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupExpr {
    Trivial,
    /// Free abelian group on named generators.
    FreeAbelian(Vec<GeneratorName>),
    /// Finite cyclic group of order k >= 2.
    Cyclic(u64),
    /// The n-strand pure braid group, scoped to a vertex.
    PureBraid { strands: usize, scope: Path },
    /// Pure mapping class group of the sphere with `punctures` punctures:
    /// the quotient of PB_{punctures-1} by its center.
    SpherePureMapping { punctures: usize, scope: Path },
    /// Preimage in B_{fixed + sum(classes)} of the Young subgroup fixing the
    /// first `fixed` strands and permuting each class block. All-singleton
    /// classes give the pure braid group; one class of size r with fixed = 1
    /// is the annular braid group B_{1,r}.
    YoungBraid {
        fixed: usize,
        classes: Vec<usize>,
        scope: Path,
    },
    Product(Vec<GroupExpr>),
    SemiDirect {
        kernel: Vec<GroupExpr>,
        actor: Box<GroupExpr>,
        action: ActionSpec,
    },
    /// Residual quotient that could not be certified as a direct-factor
    /// split; reported as "not fully reduced".
    QuotientByNormal {
        base: Box<GroupExpr>,
        relators: Vec<super::present::Word>,
    },
    /// Opaque placeholder for the fundamental group of a knot complement
    /// (split-link output only).
    KnotGroupOpaque(String),
}

impl GroupExpr {
    pub fn free_abelian(names: Vec<GeneratorName>) -> GroupExpr {
        if names.is_empty() {
            GroupExpr::Trivial
        } else {
            GroupExpr::FreeAbelian(names)
        }
    }

    pub fn product(factors: Vec<GroupExpr>) -> GroupExpr {
        GroupExpr::Product(factors)
    }

    /// All generator names appearing at the top structural level (free
    /// abelian names plus implicit braid/Young names).
    pub fn generator_names(&self) -> Vec<GeneratorName> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<GeneratorName>) {
        match self {
            GroupExpr::Trivial | GroupExpr::Cyclic(_) | GroupExpr::KnotGroupOpaque(_) => {}
            GroupExpr::FreeAbelian(names) => out.extend(names.iter().cloned()),
            GroupExpr::PureBraid { strands, scope } => {
                for i in 1..=*strands {
                    for j in (i + 1)..=*strands {
                        out.push(GeneratorName::braid_p(scope, i, j));
                    }
                }
            }
            GroupExpr::SpherePureMapping { punctures, scope } => {
                let n = punctures.saturating_sub(1);
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        out.push(GeneratorName::braid_p(scope, i, j));
                    }
                }
            }
            GroupExpr::YoungBraid {
                fixed,
                classes,
                scope,
            } => {
                let strands = fixed + classes.iter().sum::<usize>();
                for i in 1..=strands {
                    for j in (i + 1)..=strands {
                        out.push(GeneratorName::braid_p(scope, i, j));
                    }
                }
                let mut base = *fixed + 1;
                for c in classes {
                    for t in base..base + c - 1 {
                        out.push(GeneratorName::braid_beta(scope, t));
                    }
                    base += c;
                }
            }
            GroupExpr::Product(fs) => {
                for f in fs {
                    f.collect_names(out);
                }
            }
            GroupExpr::SemiDirect { kernel, actor, .. } => {
                for k in kernel {
                    k.collect_names(out);
                }
                actor.collect_names(out);
            }
            GroupExpr::QuotientByNormal { base, .. } => base.collect_names(out),
        }
    }

    pub fn contains_opaque(&self) -> bool {
        match self {
            GroupExpr::KnotGroupOpaque(_) => true,
            GroupExpr::Product(fs) => fs.iter().any(|f| f.contains_opaque()),
            GroupExpr::SemiDirect { kernel, actor, .. } => {
                kernel.iter().any(|k| k.contains_opaque()) || actor.contains_opaque()
            }
            GroupExpr::QuotientByNormal { base, .. } => base.contains_opaque(),
            _ => false,
        }
    }

    pub fn contains_symbolic_action(&self) -> bool {
        match self {
            GroupExpr::Product(fs) => fs.iter().any(|f| f.contains_symbolic_action()),
            GroupExpr::SemiDirect {
                kernel,
                actor,
                action,
            } => {
                matches!(action, ActionSpec::SymbolicAut(_))
                    || kernel.iter().any(|k| k.contains_symbolic_action())
                    || actor.contains_symbolic_action()
            }
            GroupExpr::QuotientByNormal { base, .. } => base.contains_symbolic_action(),
            _ => false,
        }
    }

    /// Structurally certain abelianness of a normalized expression.
    pub fn is_certainly_abelian(&self) -> bool {
        match self {
            GroupExpr::Trivial | GroupExpr::FreeAbelian(_) | GroupExpr::Cyclic(_) => true,
            GroupExpr::PureBraid { strands, .. } => *strands <= 2,
            GroupExpr::SpherePureMapping { punctures, .. } => *punctures <= 3,
            GroupExpr::Product(fs) => fs.iter().all(|f| f.is_certainly_abelian()),
            _ => false,
        }
    }

    /// Structurally certain non-abelianness of a normalized expression.
    pub fn is_certainly_nonabelian(&self) -> bool {
        match self {
            GroupExpr::PureBraid { strands, .. } => *strands >= 3,
            GroupExpr::SpherePureMapping { punctures, .. } => *punctures >= 4,
            GroupExpr::YoungBraid { fixed, classes, .. } => {
                // contains PB_m for m = total strands
                fixed + classes.iter().sum::<usize>() >= 3
                    || classes.iter().any(|&c| c >= 2)
            }
            GroupExpr::Product(fs) => fs.iter().any(|f| f.is_certainly_nonabelian()),
            GroupExpr::SemiDirect { kernel, action, .. } => match action {
                ActionSpec::Trivial => false,
                ActionSpec::SignedPerm {
                    perm,
                    inversion_targets,
                } => {
                    // a nontrivial permutation of nontrivial factors, or an
                    // inversion of an actual generator, makes it nonabelian
                    !perm.is_identity() && kernel.iter().any(|k| *k != GroupExpr::Trivial)
                        || inversion_targets.iter().any(|t| !t.is_empty())
                }
                _ => false,
            },
            _ => false,
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Trivial => write!(f, "1"),
            GroupExpr::FreeAbelian(names) => {
                let ns: Vec<String> = names.iter().map(|n| n.to_string()).collect();
                write!(f, "Z<{}>", ns.join(","))
            }
            GroupExpr::Cyclic(k) => write!(f, "Z/{k}"),
            GroupExpr::PureBraid { strands, .. } => write!(f, "PB({strands})"),
            GroupExpr::SpherePureMapping { punctures, .. } => {
                write!(f, "PMod(S_0,{punctures})")
            }
            GroupExpr::YoungBraid { fixed, classes, .. } => {
                let cs: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
                write!(f, "B[{};{}]", fixed, cs.join(","))
            }
            GroupExpr::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|x| match x {
                        GroupExpr::SemiDirect { .. } | GroupExpr::QuotientByNormal { .. } => {
                            format!("({x})")
                        }
                        _ => format!("{x}"),
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupExpr::SemiDirect {
                kernel,
                actor,
                action,
            } => {
                let ks: Vec<String> = kernel.iter().map(|k| format!("{k}")).collect();
                let act = match action {
                    ActionSpec::Trivial => String::new(),
                    ActionSpec::ClassPermute => " : class permutation".into(),
                    ActionSpec::SymbolicAut(d) => format!(" : symbolic [{d}]"),
                    ActionSpec::SignedPerm {
                        perm,
                        inversion_targets,
                    } => {
                        let negs: Vec<String> = inversion_targets
                            .iter()
                            .flat_map(|t| t.iter().map(|n| n.to_string()))
                            .collect();
                        if negs.is_empty() {
                            format!(" : perm {perm}")
                        } else {
                            format!(" : perm {perm}, inverting {}", negs.join(","))
                        }
                    }
                };
                write!(f, "{} |x ({}){}", actor, ks.join(" x "), act)
            }
            GroupExpr::QuotientByNormal { base, relators } => {
                let rs: Vec<String> = relators.iter().map(|w| format!("{w}")).collect();
                write!(f, "({base}) / <<{}>>", rs.join(", "))
            }
            GroupExpr::KnotGroupOpaque(n) => write!(f, "pi1({n})"),
        }
    }
}

/// Errors from group-algebra operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    /// Operation undefined in the presence of an opaque knot-group factor.
    OpaqueFactor,
    /// Structural centrality of a quotient word could not be certified.
    NotCentral(String),
    /// Presentation withheld because an action is symbolic.
    SymbolicAction,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::OpaqueFactor => write!(f, "expression contains an opaque knot group"),
            GroupError::NotCentral(w) => write!(f, "word {w} is not certifiably central"),
            GroupError::SymbolicAction => {
                write!(f, "expression carries a symbolic automorphism")
            }
        }
    }
}

impl std::error::Error for GroupError {}
