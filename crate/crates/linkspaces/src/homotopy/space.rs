use crate::group::{ActionSpec, GeneratorName, GroupExpr};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Finite structure group of a twisted product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiniteGroupTag {
    Cyclic(u64),
    /// Young product of symmetric groups (class sizes).
    Young(Vec<usize>),
}

/// A homotopy-type expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceExpr {
    Point,
    Circle,
    /// Configuration space of n points in the plane.
    ConfPoints(usize),
    SO3,
    Product(Vec<SpaceExpr>),
    /// Quotient (base x fiber)/group: base carries a free action, the group
    /// acts on the fiber per the action spec.
    TwistedProduct {
        base: Box<SpaceExpr>,
        fiber: Box<SpaceExpr>,
        group: FiniteGroupTag,
        action: ActionSpec,
    },
    /// Fiber bundle, fiber first (split links only).
    Bundle {
        fiber: Box<SpaceExpr>,
        base: Box<SpaceExpr>,
    },
    ClassifyingSpace(GroupExpr),
    /// Complement of a named link in a 3-ball/sphere, left opaque.
    OpaqueComplement(String),
}

impl SpaceExpr {
    pub fn product(mut factors: Vec<SpaceExpr>) -> SpaceExpr {
        let mut flat = Vec::new();
        for f in factors.drain(..) {
            match f {
                SpaceExpr::Point => {}
                SpaceExpr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => SpaceExpr::Point,
            1 => flat.pop().unwrap(),
            _ => SpaceExpr::Product(flat),
        }
    }

    pub fn torus(n: usize) -> SpaceExpr {
        SpaceExpr::product(vec![SpaceExpr::Circle; n])
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Point => write!(f, "*"),
            SpaceExpr::Circle => write!(f, "S^1"),
            SpaceExpr::ConfPoints(n) => write!(f, "Conf({n},R^2)"),
            SpaceExpr::SO3 => write!(f, "SO(3)"),
            SpaceExpr::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|x| match x {
                        SpaceExpr::TwistedProduct { .. } | SpaceExpr::Bundle { .. } => {
                            format!("({x})")
                        }
                        _ => format!("{x}"),
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
            SpaceExpr::TwistedProduct {
                base,
                fiber,
                group,
                ..
            } => {
                let g = match group {
                    FiniteGroupTag::Cyclic(k) => format!("Z/{k}"),
                    FiniteGroupTag::Young(cs) => {
                        let parts: Vec<String> =
                            cs.iter().map(|c| format!("S_{c}")).collect();
                        parts.join("x")
                    }
                };
                write!(f, "{base} x_{{{g}}} ({fiber})")
            }
            SpaceExpr::Bundle { fiber, base } => write!(f, "({fiber}) ~> ({base})"),
            SpaceExpr::ClassifyingSpace(g) => write!(f, "B({g})"),
            SpaceExpr::OpaqueComplement(n) => write!(f, "C_{{{n}}}"),
        }
    }
}

/// A computed homotopy type with its fundamental group and generator
/// provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceResult {
    pub space: SpaceExpr,
    pub pi1: GroupExpr,
    /// Human description of each generator (rotation, braid move, ...).
    pub glossary: BTreeMap<String, String>,
    pub caveats: Vec<String>,
}

impl SpaceResult {
    pub fn new(space: SpaceExpr, pi1: GroupExpr) -> Self {
        SpaceResult {
            space,
            pi1,
            glossary: BTreeMap::new(),
            caveats: Vec::new(),
        }
    }

    pub fn note(&mut self, name: &GeneratorName, desc: impl Into<String>) {
        self.glossary.insert(name.to_string(), desc.into());
    }
}

/// Structural fundamental group of a space expression. Returns None for
/// bundle expressions whose fundamental group is not determined by the
/// structural rules.
pub fn pi1_of_space(s: &SpaceExpr) -> Option<GroupExpr> {
    let mut counter = 0usize;
    pi1_walk(s, &mut counter)
}

fn pi1_walk(s: &SpaceExpr, counter: &mut usize) -> Option<GroupExpr> {
    match s {
        SpaceExpr::Point => Some(GroupExpr::Trivial),
        SpaceExpr::Circle => {
            *counter += 1;
            Some(GroupExpr::FreeAbelian(vec![GeneratorName::named(&format!(
                "s{counter}"
            ))]))
        }
        SpaceExpr::ConfPoints(n) => Some(GroupExpr::PureBraid {
            strands: *n,
            scope: vec![*counter],
        }),
        SpaceExpr::SO3 => Some(GroupExpr::Cyclic(2)),
        SpaceExpr::Product(fs) => {
            let parts: Option<Vec<GroupExpr>> =
                fs.iter().map(|f| pi1_walk(f, counter)).collect();
            Some(GroupExpr::Product(parts?))
        }
        SpaceExpr::TwistedProduct {
            base,
            fiber,
            group,
            action,
        } => {
            // the fiber is kept as an unflattened product with one entry per
            // kernel factor
            let kernel: Option<Vec<GroupExpr>> = match fiber.as_ref() {
                SpaceExpr::Product(fs) => fs.iter().map(|f| pi1_walk(f, counter)).collect(),
                other => pi1_walk(other, counter).map(|g| vec![g]),
            };
            let actor = match (base.as_ref(), group) {
                (SpaceExpr::Circle, FiniteGroupTag::Cyclic(_)) => {
                    *counter += 1;
                    GroupExpr::FreeAbelian(vec![GeneratorName::named(&format!(
                        "a{counter}"
                    ))])
                }
                (SpaceExpr::ConfPoints(n), FiniteGroupTag::Young(classes)) => {
                    let fixed = n - classes.iter().sum::<usize>();
                    GroupExpr::YoungBraid {
                        fixed,
                        classes: classes.clone(),
                        scope: vec![],
                    }
                }
                _ => return None,
            };
            Some(GroupExpr::SemiDirect {
                kernel: kernel?,
                actor: Box::new(actor),
                action: action.clone(),
            })
        }
        SpaceExpr::Bundle { .. } => None,
        SpaceExpr::ClassifyingSpace(g) => Some(g.clone()),
        SpaceExpr::OpaqueComplement(n) => Some(GroupExpr::KnotGroupOpaque(n.clone())),
    }
}

/// Explicit space of a normalized group expression, when recognizable;
/// otherwise the classifying space.
pub fn space_of_group(g: &GroupExpr) -> SpaceExpr {
    match g {
        GroupExpr::Trivial => SpaceExpr::Point,
        GroupExpr::FreeAbelian(names) => SpaceExpr::torus(names.len()),
        GroupExpr::PureBraid { strands, .. } => SpaceExpr::ConfPoints(*strands),
        GroupExpr::Cyclic(2) => SpaceExpr::ClassifyingSpace(g.clone()),
        GroupExpr::Product(fs) => {
            SpaceExpr::product(fs.iter().map(space_of_group).collect())
        }
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => {
            // one fiber entry per kernel factor, unflattened, so the
            // structural fundamental-group rules can reconstruct the kernel
            let fiber = SpaceExpr::Product(kernel.iter().map(space_of_group).collect());
            match (actor.as_ref(), action) {
                (GroupExpr::FreeAbelian(ns), ActionSpec::SignedPerm { perm, .. }) if ns.len() == 1 => {
                    // finite-order action of a circle's worth of symmetry
                    SpaceExpr::TwistedProduct {
                        base: Box::new(SpaceExpr::Circle),
                        fiber: Box::new(fiber),
                        group: FiniteGroupTag::Cyclic(perm.order()),
                        action: action.clone(),
                    }
                }
                (
                    GroupExpr::YoungBraid {
                        fixed,
                        classes,
                        scope: _,
                    },
                    ActionSpec::ClassPermute,
                ) => SpaceExpr::TwistedProduct {
                    base: Box::new(SpaceExpr::ConfPoints(fixed + classes.iter().sum::<usize>())),
                    fiber: Box::new(fiber),
                    group: FiniteGroupTag::Young(classes.clone()),
                    action: action.clone(),
                },
                _ => SpaceExpr::ClassifyingSpace(g.clone()),
            }
        }
        other => SpaceExpr::ClassifyingSpace(other.clone()),
    }
}
