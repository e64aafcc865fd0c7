use crate::link_model::Rational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Slot-index path from the root of a companionship tree to a vertex; used
/// to scope generators so recursive assembly never collides.
pub type Path = Vec<usize>;

pub fn path_str(path: &[usize]) -> String {
    path.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

/// What a generator is, before scoping.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NameKind {
    /// Longitudinal rotation (reparametrization) of a total-link component.
    Lambda(usize),
    /// Meridional rotation of a total-link component.
    Mu(usize),
    /// Rotations of the splice torus of the companion at `path`:
    /// longitudinal and meridional rotations of its distinguished component.
    LambdaSplice(Path),
    MuSplice(Path),
    /// Gramain loop of the companion at `path` (the collapsed PB_2 factor of
    /// a torus-knot vertex).
    Gramain(Path),
    /// Standard pure-braid generator p_{ij} of the braid factor at `path`
    /// (1-based strand indices).
    BraidP(Path, usize, usize),
    /// Band generator of a Young-braid factor crossing strands t, t+1.
    BraidBeta(Path, usize),
    /// Fractional symmetry generator at `path`; the payload lists the
    /// rational lambda-coefficients (pairs of coefficient and base name).
    Alpha(Path, Vec<(Rational, Box<GeneratorName>)>),
    /// Integral combination of lambda generators (basis-completion vector).
    LambdaComb(Path, Vec<(i64, Box<GeneratorName>)>),
    /// Free-text generator.
    Named(String),
}

/// A generator name. Rational payloads are presentation metadata; the
/// algebra treats every name as an abstract generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorName {
    pub kind: NameKind,
}

impl GeneratorName {
    pub fn lambda(i: usize) -> Self {
        GeneratorName {
            kind: NameKind::Lambda(i),
        }
    }
    pub fn mu(i: usize) -> Self {
        GeneratorName {
            kind: NameKind::Mu(i),
        }
    }
    pub fn lambda_splice(path: &[usize]) -> Self {
        GeneratorName {
            kind: NameKind::LambdaSplice(path.to_vec()),
        }
    }
    pub fn mu_splice(path: &[usize]) -> Self {
        GeneratorName {
            kind: NameKind::MuSplice(path.to_vec()),
        }
    }
    pub fn gramain(path: &[usize]) -> Self {
        GeneratorName {
            kind: NameKind::Gramain(path.to_vec()),
        }
    }
    pub fn braid_p(path: &[usize], i: usize, j: usize) -> Self {
        GeneratorName {
            kind: NameKind::BraidP(path.to_vec(), i, j),
        }
    }
    pub fn braid_beta(path: &[usize], t: usize) -> Self {
        GeneratorName {
            kind: NameKind::BraidBeta(path.to_vec(), t),
        }
    }
    pub fn alpha(path: &[usize], payload: Vec<(Rational, GeneratorName)>) -> Self {
        GeneratorName {
            kind: NameKind::Alpha(
                path.to_vec(),
                payload.into_iter().map(|(c, n)| (c, Box::new(n))).collect(),
            ),
        }
    }
    pub fn lambda_comb(path: &[usize], payload: Vec<(i64, GeneratorName)>) -> Self {
        GeneratorName {
            kind: NameKind::LambdaComb(
                path.to_vec(),
                payload.into_iter().map(|(c, n)| (c, Box::new(n))).collect(),
            ),
        }
    }
    pub fn named(s: &str) -> Self {
        GeneratorName {
            kind: NameKind::Named(s.to_string()),
        }
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NameKind::Lambda(i) => write!(f, "lam{i}"),
            NameKind::Mu(i) => write!(f, "mu{i}"),
            NameKind::LambdaSplice(p) => write!(f, "lam'{}", path_str(p)),
            NameKind::MuSplice(p) => write!(f, "mu'{}", path_str(p)),
            NameKind::Gramain(p) => {
                if p.is_empty() {
                    write!(f, "g")
                } else {
                    write!(f, "g{}", path_str(p))
                }
            }
            NameKind::BraidP(p, i, j) => {
                if p.is_empty() {
                    write!(f, "p({i},{j})")
                } else {
                    write!(f, "p{}({i},{j})", path_str(p))
                }
            }
            NameKind::BraidBeta(p, t) => {
                if p.is_empty() {
                    write!(f, "b({t},{})", t + 1)
                } else {
                    write!(f, "b{}({t},{})", path_str(p), t + 1)
                }
            }
            NameKind::Alpha(p, payload) => {
                let terms: Vec<String> = payload
                    .iter()
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, n)| {
                        if c.is_one() {
                            format!("{n}")
                        } else if c.abs() != Rational::one() || c.is_negative() {
                            format!("{} {}", fmt_rat(c), n)
                        } else {
                            format!("{n}")
                        }
                    })
                    .collect();
                if p.is_empty() {
                    write!(f, "a({})", terms.join(" + "))
                } else {
                    write!(f, "a{}({})", path_str(p), terms.join(" + "))
                }
            }
            NameKind::LambdaComb(p, payload) => {
                let terms: Vec<String> = payload
                    .iter()
                    .filter(|(c, _)| *c != 0)
                    .map(|(c, n)| {
                        if *c == 1 {
                            format!("{n}")
                        } else {
                            format!("{c} {n}")
                        }
                    })
                    .collect();
                if p.is_empty() {
                    write!(f, "l({})", terms.join(" + "))
                } else {
                    write!(f, "l{}({})", path_str(p), terms.join(" + "))
                }
            }
            NameKind::Named(s) => write!(f, "{s}"),
        }
    }
}
