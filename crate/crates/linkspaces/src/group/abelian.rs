use super::expr::{ActionSpec, GroupExpr, GroupError};
use super::name::GeneratorName;
use super::present::{to_presentation, Presentation};
use super::smith::{cokernel, IntMat};
use std::collections::BTreeMap;
use std::fmt;

/// A finitely generated abelian group in invariant-factor normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    pub rank: usize,
    /// Divisibility chain d1 | d2 | ..., all entries >= 2.
    pub torsion: Vec<u64>,
}

impl FinAbGroup {
    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization of a presentation by integer Smith normal form.
pub fn abelianize_presentation(p: &Presentation) -> FinAbGroup {
    let index: BTreeMap<&GeneratorName, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, n)| (n, i))
        .collect();
    let mut rows = Vec::new();
    for rel in &p.relators {
        let mut row = vec![0i128; p.generators.len()];
        for (n, e) in &rel.0 {
            row[index[n]] += *e as i128;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        rows.push(vec![0i128; p.generators.len()]);
    }
    let m = IntMat::from_rows(&rows);
    let (rank, torsion) = cokernel(&m);
    FinAbGroup { rank, torsion }
}

/// Abelianization by structural rules, with the presentation route as the
/// engine for Young-braid and residual-quotient factors.
pub fn abelianize(e: &GroupExpr) -> Result<FinAbGroup, GroupError> {
    if e.contains_opaque() {
        return Err(GroupError::OpaqueFactor);
    }
    structural(e)
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn merge(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup {
    // direct sum, then renormalize the divisor chain
    let mut rows = Vec::new();
    let total = a.torsion.len() + b.torsion.len();
    if total == 0 {
        return FinAbGroup::free(a.rank + b.rank);
    }
    for (i, t) in a.torsion.iter().chain(b.torsion.iter()).enumerate() {
        let mut row = vec![0i128; total];
        row[i] = *t as i128;
        rows.push(row);
    }
    let (extra_rank, torsion) = cokernel(&IntMat::from_rows(&rows));
    FinAbGroup {
        rank: a.rank + b.rank + extra_rank,
        torsion,
    }
}

fn structural(e: &GroupExpr) -> Result<FinAbGroup, GroupError> {
    match e {
        GroupExpr::Trivial => Ok(FinAbGroup::free(0)),
        GroupExpr::FreeAbelian(names) => Ok(FinAbGroup::free(names.len())),
        GroupExpr::Cyclic(k) => Ok(FinAbGroup {
            rank: 0,
            torsion: vec![*k],
        }),
        GroupExpr::PureBraid { strands, .. } => Ok(FinAbGroup::free(choose2(*strands))),
        GroupExpr::SpherePureMapping { punctures, .. } => {
            // PB_{m}/Z: the center abelianizes to the sum of all generators
            let m = punctures - 1;
            Ok(FinAbGroup::free(choose2(m).saturating_sub(1)))
        }
        GroupExpr::YoungBraid { .. } | GroupExpr::QuotientByNormal { .. } => {
            let p = to_presentation(e)?;
            Ok(abelianize_presentation(&p))
        }
        GroupExpr::Product(fs) => {
            let mut acc = FinAbGroup::free(0);
            for f in fs {
                acc = merge(acc, structural(f)?);
            }
            Ok(acc)
        }
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => match action {
            ActionSpec::Trivial => {
                let mut acc = structural(actor)?;
                for k in kernel {
                    acc = merge(acc, structural(k)?);
                }
                Ok(acc)
            }
            ActionSpec::SymbolicAut(_) => Err(GroupError::SymbolicAction),
            // the Young-braid action is easiest to abelianize through the
            // full presentation (beta conjugations identify in-class factors)
            ActionSpec::ClassPermute => {
                let p = to_presentation(e)?;
                Ok(abelianize_presentation(&p))
            }
            ActionSpec::SignedPerm {
                perm,
                inversion_targets,
            } => {
                let actor_ab = structural(actor)?;
                let kernel_ab = coinvariants(kernel, perm, inversion_targets)?;
                Ok(merge(actor_ab, kernel_ab))
            }
        },
        GroupExpr::KnotGroupOpaque(_) => Err(GroupError::OpaqueFactor),
    }
}

/// Abelianization of the kernel modulo the signed-permutation action:
/// relations x - action(x) = 0 over the direct sum of the factor
/// abelianizations, computed by Smith normal form on the factor
/// presentations' abelianized relations plus the identifications.
fn coinvariants(
    kernel: &[GroupExpr],
    perm: &crate::link_model::SignedPermutation,
    inversion_targets: &[Vec<GeneratorName>],
) -> Result<FinAbGroup, GroupError> {
    let mut gen_index: BTreeMap<GeneratorName, usize> = BTreeMap::new();
    let mut factor_gens: Vec<Vec<GeneratorName>> = Vec::new();
    for k in kernel {
        let names = k.generator_names();
        if names.is_empty() && *k != GroupExpr::Trivial {
            return Err(GroupError::SymbolicAction);
        }
        let mut mine = Vec::new();
        for n in names {
            let idx = gen_index.len();
            gen_index.insert(n.clone(), idx);
            mine.push(n);
        }
        factor_gens.push(mine);
    }
    let total = gen_index.len();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for k in kernel {
        let p = to_presentation(k)?;
        for rel in &p.relators {
            let mut row = vec![0i128; total];
            for (n, e) in &rel.0 {
                row[gen_index[n]] += *e as i128;
            }
            rows.push(row);
        }
    }
    for (i, gens) in factor_gens.iter().enumerate() {
        let t = perm.image(i);
        let sign = perm.sign(i);
        let tgens = &factor_gens[t];
        if gens.len() != tgens.len() {
            return Err(GroupError::SymbolicAction);
        }
        for (x, y) in gens.iter().zip(tgens) {
            let mut row = vec![0i128; total];
            row[gen_index[x]] += 1;
            let neg = sign < 0 && inversion_targets[i].contains(y);
            row[gen_index[y]] += if neg { 1 } else { -1 };
            rows.push(row);
        }
    }
    if rows.is_empty() {
        rows.push(vec![0; total]);
    }
    let (rank, torsion) = cokernel(&IntMat::from_rows(&rows));
    Ok(FinAbGroup { rank, torsion })
}
