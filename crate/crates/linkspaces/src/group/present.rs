use super::expr::{ActionSpec, GroupExpr, GroupError};
use super::name::GeneratorName;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A word in generators and their inverses: list of (name, exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<(GeneratorName, i32)>);

impl Word {
    pub fn gen(n: GeneratorName) -> Self {
        Word(vec![(n, 1)])
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|(n, e)| (n.clone(), -e)).collect())
    }

    pub fn concat(words: &[&Word]) -> Word {
        let mut out = Vec::new();
        for w in words {
            out.extend(w.0.iter().cloned());
        }
        Word(out)
    }

    /// x^w = w^-1 x w.
    pub fn conjugate(&self, by: &Word) -> Word {
        Word::concat(&[&by.inverse(), self, by])
    }

    pub fn pow(&self, k: i32) -> Word {
        if k >= 0 {
            let mut out = Vec::new();
            for _ in 0..k {
                out.extend(self.0.iter().cloned());
            }
            Word(out)
        } else {
            self.inverse().pow(-k)
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = &GeneratorName> {
        self.0.iter().map(|(n, _)| n)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    format!("{n}")
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite presentation: ordered generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<GeneratorName>,
    pub relators: Vec<Word>,
}

/// Emits a presentation of the expression: standard pure-braid relators for
/// braid factors, commutators for products, conjugation relators for
/// semidirect parts.
pub fn to_presentation(e: &GroupExpr) -> Result<Presentation, GroupError> {
    let mut generators = Vec::new();
    let mut relators = Vec::new();
    let mut fresh = 0usize;
    emit(e, &mut generators, &mut relators, &mut fresh)?;
    Ok(Presentation {
        generators,
        relators,
    })
}

fn commutator(a: &Word, b: &Word) -> Word {
    Word::concat(&[&a.inverse(), &b.inverse(), a, b])
}

fn emit(
    e: &GroupExpr,
    generators: &mut Vec<GeneratorName>,
    relators: &mut Vec<Word>,
    fresh: &mut usize,
) -> Result<(), GroupError> {
    match e {
        GroupExpr::Trivial => Ok(()),
        GroupExpr::KnotGroupOpaque(_) => Err(GroupError::OpaqueFactor),
        GroupExpr::FreeAbelian(names) => {
            for (a, na) in names.iter().enumerate() {
                for nb in names.iter().skip(a + 1) {
                    relators.push(commutator(
                        &Word::gen(na.clone()),
                        &Word::gen(nb.clone()),
                    ));
                }
            }
            generators.extend(names.iter().cloned());
            Ok(())
        }
        GroupExpr::Cyclic(k) => {
            *fresh += 1;
            let n = GeneratorName::named(&format!("t{fresh}"));
            relators.push(Word::gen(n.clone()).pow(*k as i32));
            generators.push(n);
            Ok(())
        }
        GroupExpr::PureBraid { strands, scope } => {
            pure_braid_presentation(*strands, scope, generators, relators);
            Ok(())
        }
        GroupExpr::SpherePureMapping { punctures, scope } => {
            // PB_{m-1} modulo its center
            let m = punctures - 1;
            pure_braid_presentation(m, scope, generators, relators);
            relators.push(super::present::center_word(m, scope));
            Ok(())
        }
        GroupExpr::YoungBraid {
            fixed,
            classes,
            scope,
        } => {
            young_braid_presentation(*fixed, classes, scope, generators, relators);
            Ok(())
        }
        GroupExpr::Product(fs) => {
            let mut blocks: Vec<Vec<GeneratorName>> = Vec::new();
            for f in fs {
                let mut gens = Vec::new();
                emit(f, &mut gens, relators, fresh)?;
                blocks.push(gens);
            }
            for (a, ga) in blocks.iter().enumerate() {
                for gb in blocks.iter().skip(a + 1) {
                    for x in ga {
                        for y in gb {
                            relators
                                .push(commutator(&Word::gen(x.clone()), &Word::gen(y.clone())));
                        }
                    }
                }
            }
            for b in blocks {
                generators.extend(b);
            }
            Ok(())
        }
        GroupExpr::SemiDirect {
            kernel,
            actor,
            action,
        } => {
            let mut kernel_blocks: Vec<Vec<GeneratorName>> = Vec::new();
            for k in kernel {
                let mut gens = Vec::new();
                emit(k, &mut gens, relators, fresh)?;
                kernel_blocks.push(gens);
            }
            // kernel factors commute with each other
            for (a, ga) in kernel_blocks.iter().enumerate() {
                for gb in kernel_blocks.iter().skip(a + 1) {
                    for x in ga {
                        for y in gb {
                            relators
                                .push(commutator(&Word::gen(x.clone()), &Word::gen(y.clone())));
                        }
                    }
                }
            }
            let mut actor_gens = Vec::new();
            emit(actor, &mut actor_gens, relators, fresh)?;

            match action {
                ActionSpec::Trivial => {
                    for b in &kernel_blocks {
                        for x in b {
                            for y in &actor_gens {
                                relators.push(commutator(
                                    &Word::gen(x.clone()),
                                    &Word::gen(y.clone()),
                                ));
                            }
                        }
                    }
                }
                ActionSpec::SymbolicAut(_) => return Err(GroupError::SymbolicAction),
                ActionSpec::SignedPerm {
                    perm,
                    inversion_targets,
                } => {
                    // conjugation by the actor's distinguished generator; the
                    // actor here is cyclic on one generator
                    let a = actor_gens
                        .first()
                        .cloned()
                        .ok_or(GroupError::SymbolicAction)?;
                    let aw = Word::gen(a);
                    for (i, block) in kernel_blocks.iter().enumerate() {
                        let target = perm.image(i);
                        let sign = perm.sign(i);
                        let tblock = &kernel_blocks[target];
                        let negate = &inversion_targets[i];
                        if block.len() != tblock.len() {
                            return Err(GroupError::SymbolicAction);
                        }
                        for (x, y) in block.iter().zip(tblock.iter()) {
                            let img = if sign < 0 && negate.contains(y) {
                                Word::gen(y.clone()).inverse()
                            } else {
                                Word::gen(y.clone())
                            };
                            // x^a = img
                            relators.push(Word::concat(&[
                                &Word::gen(x.clone()).conjugate(&aw),
                                &img.inverse(),
                            ]));
                        }
                    }
                    // additional power relation when the actor is finite cyclic
                    // is emitted by the Cyclic factor itself
                }
                ActionSpec::ClassPermute => {
                    // the Young braid actor permutes kernel factors through
                    // its beta generators: beta_t swaps the factors at the
                    // moving strands t, t+1
                    let GroupExpr::YoungBraid {
                        fixed,
                        classes,
                        scope,
                    } = actor.as_ref()
                    else {
                        return Err(GroupError::SymbolicAction);
                    };
                    // kernel factor index of each moving strand
                    let mut strand_factor = std::collections::BTreeMap::new();
                    let mut fi = 0usize;
                    let mut strand = fixed + 1;
                    for &c in classes {
                        for _ in 0..c {
                            strand_factor.insert(strand, fi);
                            strand += 1;
                            fi += 1;
                        }
                    }
                    let strands = fixed + classes.iter().sum::<usize>();
                    // pure braid generators act trivially
                    for i in 1..=strands {
                        for j in (i + 1)..=strands {
                            let p = GeneratorName::braid_p(scope, i, j);
                            for block in &kernel_blocks {
                                for x in block {
                                    relators.push(commutator(
                                        &Word::gen(x.clone()),
                                        &Word::gen(p.clone()),
                                    ));
                                }
                            }
                        }
                    }
                    let mut base = *fixed + 1;
                    for &c in classes {
                        for t in base..base + c - 1 {
                            let b = Word::gen(GeneratorName::braid_beta(scope, t));
                            let f1 = strand_factor[&t];
                            let f2 = strand_factor[&(t + 1)];
                            for (x, y) in kernel_blocks[f1].iter().zip(&kernel_blocks[f2]) {
                                // x^b = y and y^b = x
                                relators.push(Word::concat(&[
                                    &Word::gen(x.clone()).conjugate(&b),
                                    &Word::gen(y.clone()).inverse(),
                                ]));
                                relators.push(Word::concat(&[
                                    &Word::gen(y.clone()).conjugate(&b),
                                    &Word::gen(x.clone()).inverse(),
                                ]));
                            }
                            // other factors commute with beta_t
                            for (fi2, block) in kernel_blocks.iter().enumerate() {
                                if fi2 != f1 && fi2 != f2 {
                                    for x in block {
                                        relators.push(commutator(&Word::gen(x.clone()), &b));
                                    }
                                }
                            }
                        }
                        base += c;
                    }
                }
            }
            for b in kernel_blocks {
                generators.extend(b);
            }
            generators.extend(actor_gens);
            Ok(())
        }
        GroupExpr::QuotientByNormal { base, relators: rs } => {
            emit(base, generators, relators, fresh)?;
            relators.extend(rs.iter().cloned());
            Ok(())
        }
    }
}

/// Word for the full twist generating the center of PB_n:
/// prod_{j=2..n} (A_{1j} A_{2j} ... A_{j-1,j}).
pub fn center_word(strands: usize, scope: &[usize]) -> Word {
    let mut w = Vec::new();
    for j in 2..=strands {
        for i in 1..j {
            w.push((GeneratorName::braid_p(scope, i, j), 1));
        }
    }
    Word(w)
}

/// The standard pure-braid presentation on generators A_{ij}.
fn pure_braid_presentation(
    strands: usize,
    scope: &[usize],
    generators: &mut Vec<GeneratorName>,
    relators: &mut Vec<Word>,
) {
    for i in 1..=strands {
        for j in (i + 1)..=strands {
            generators.push(GeneratorName::braid_p(scope, i, j));
        }
    }
    for (r, s) in pairs(strands) {
        for (i, j) in pairs(strands) {
            if (r, s) == (i, j) {
                continue;
            }
            let ars = Word::gen(GeneratorName::braid_p(scope, r, s));
            let aij = Word::gen(GeneratorName::braid_p(scope, i, j));
            let image = pb_conj_image(scope, r, s, i, j);
            relators.push(Word::concat(&[&aij.conjugate(&ars), &image.inverse()]));
        }
    }
}

pub(crate) fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            v.push((i, j));
        }
    }
    v
}

/// Image of A_{ij} under conjugation by A_{rs}: A_{rs}^-1 A_{ij} A_{rs}.
/// The case formulas were derived from and are verified against the faithful
/// Artin representation (tests below).
pub(crate) fn pb_conj_image(scope: &[usize], r: usize, s: usize, i: usize, j: usize) -> Word {
    let a = |x: usize, y: usize| Word::gen(GeneratorName::braid_p(scope, x, y));
    let aij = a(i, j);
    if (r, s) == (i, j) {
        return aij;
    }
    // disjoint or nested strand pairs commute
    if s < i || j < r || (r < i && j < s) || (i < r && s < j) {
        return aij;
    }
    if s == i {
        // r < s = i < j: conjugator A_{rj}^-1
        return aij.conjugate(&a(r, j).inverse());
    }
    if r == i {
        if s < j {
            // r = i < s < j: conjugator A_{sj}^-1 A_{rj}^-1
            return aij.conjugate(&Word::concat(&[&a(s, j).inverse(), &a(r, j).inverse()]));
        }
        // r = i < j < s: conjugator A_{js}^-1
        return aij.conjugate(&a(j, s).inverse());
    }
    if s == j {
        if i < r {
            // i < r < s = j: conjugator A_{ir}^-1
            return aij.conjugate(&a(i, r).inverse());
        }
        // r < i < s = j: conjugator A_{ri}^-1 A_{ij}^-1
        return aij.conjugate(&Word::concat(&[&a(r, i).inverse(), &aij.inverse()]));
    }
    if r == j {
        // i < j = r < s: conjugator A_{is}^-1 A_{ij}^-1
        return aij.conjugate(&Word::concat(&[&a(i, s).inverse(), &aij.inverse()]));
    }
    if r < i && i < s && s < j {
        // interleaved r < i < s < j: conjugator A_{ri} A_{is} A_{ri}^-1 A_{is}^-1
        let c = Word::concat(&[&a(r, i), &a(i, s), &a(r, i).inverse(), &a(i, s).inverse()]);
        return aij.conjugate(&c);
    }
    if i < r && r < j && j < s {
        // interleaved i < r < j < s: conjugator A_{is} A_{ir} A_{is}^-1 A_{ir}^-1
        let c = Word::concat(&[&a(i, s), &a(i, r), &a(i, s).inverse(), &a(i, r).inverse()]);
        return aij.conjugate(&c);
    }
    aij
}

/// Presentation of the Young-braid preimage: pure-braid generators plus one
/// band generator per adjacent in-class strand pair.
fn young_braid_presentation(
    fixed: usize,
    classes: &[usize],
    scope: &[usize],
    generators: &mut Vec<GeneratorName>,
    relators: &mut Vec<Word>,
) {
    let strands = fixed + classes.iter().sum::<usize>();
    pure_braid_presentation(strands, scope, generators, relators);

    let mut betas = Vec::new();
    let mut base = fixed + 1;
    for &c in classes {
        for t in base..base + c.saturating_sub(1) {
            betas.push(t);
        }
        base += c;
    }
    for &t in &betas {
        let b = GeneratorName::braid_beta(scope, t);
        generators.push(b.clone());
        // beta_t^2 = A_{t,t+1}
        relators.push(Word::concat(&[
            &Word::gen(b.clone()).pow(2),
            &Word::gen(GeneratorName::braid_p(scope, t, t + 1)).inverse(),
        ]));
        // beta conjugation on the pure generators
        for (i, j) in pairs(strands) {
            let img = sigma_conj_image(scope, t, i, j);
            relators.push(Word::concat(&[
                &Word::gen(GeneratorName::braid_p(scope, i, j))
                    .conjugate(&Word::gen(b.clone())),
                &img.inverse(),
            ]));
        }
    }
    // braid and commutation relations among the betas
    for (x, &t) in betas.iter().enumerate() {
        for &u in betas.iter().skip(x + 1) {
            let bt = Word::gen(GeneratorName::braid_beta(scope, t));
            let bu = Word::gen(GeneratorName::braid_beta(scope, u));
            if u == t + 1 {
                // adjacent in the same class: braid relation
                relators.push(Word::concat(&[
                    &bt,
                    &bu,
                    &bt,
                    &bu.inverse(),
                    &bt.inverse(),
                    &bu.inverse(),
                ]));
            } else if u > t + 1 {
                relators.push(Word::concat(&[
                    &bt.inverse(),
                    &bu.inverse(),
                    &bt,
                    &bu,
                ]));
            }
        }
    }
}

/// Image of A_{ij} under conjugation by sigma_t: sigma_t^-1 A_{ij} sigma_t.
/// Verified against the Artin representation in tests.
pub(crate) fn sigma_conj_image(scope: &[usize], t: usize, i: usize, j: usize) -> Word {
    let a = |x: usize, y: usize| Word::gen(GeneratorName::braid_p(scope, x, y));
    let swap = |x: usize| {
        if x == t {
            t + 1
        } else if x == t + 1 {
            t
        } else {
            x
        }
    };
    if (i, j) == (t, t + 1) {
        return a(i, j);
    }
    if j < t || i > t + 1 || (i != t && i != t + 1 && j != t && j != t + 1) {
        return a(i, j);
    }
    let (si, sj) = {
        let (x, y) = (swap(i), swap(j));
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    };
    if i == t + 1 || j == t + 1 {
        // the touched strand is t+1: plain index swap
        return a(si, sj);
    }
    // the touched strand is t: swap conjugated by A_{t,t+1}
    a(si, sj).conjugate(&a(t, t + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::braid::{a_ij_word, artin, braid_concat, braid_inverse, BraidWord};

    #[test]
    fn free_abelian_presentation() {
        let e = GroupExpr::FreeAbelian(vec![
            GeneratorName::named("x"),
            GeneratorName::named("y"),
        ]);
        let p = to_presentation(&e).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relators.len(), 1);
    }

    /// Expands a word in braid_p/braid_beta names to Artin generators.
    fn expand(w: &Word) -> BraidWord {
        use super::super::name::NameKind;
        let mut out: BraidWord = Vec::new();
        for (n, e) in &w.0 {
            let base: BraidWord = match &n.kind {
                NameKind::BraidP(_, i, j) => a_ij_word(*i, *j),
                NameKind::BraidBeta(_, t) => vec![(*t, false)],
                other => panic!("not a braid name: {other:?}"),
            };
            let k = e.abs();
            for _ in 0..k {
                if *e > 0 {
                    out.extend(base.iter().copied());
                } else {
                    out.extend(braid_inverse(&base));
                }
            }
        }
        out
    }

    #[test]
    fn pure_braid_conjugation_images_hold_in_artin_rep() {
        let n = 5;
        for (r, s) in pairs(n) {
            for (i, j) in pairs(n) {
                let lhs = braid_concat(&[
                    &braid_inverse(&a_ij_word(r, s)),
                    &a_ij_word(i, j),
                    &a_ij_word(r, s),
                ]);
                let rhs = expand(&pb_conj_image(&[], r, s, i, j));
                assert_eq!(
                    artin(n, &lhs),
                    artin(n, &rhs),
                    "conjugation of A({i},{j}) by A({r},{s})"
                );
            }
        }
    }

    #[test]
    fn sigma_conjugation_images_hold_in_artin_rep() {
        let n = 5;
        for t in 1..n {
            for (i, j) in pairs(n) {
                let lhs = braid_concat(&[
                    &vec![(t, true)],
                    &a_ij_word(i, j),
                    &vec![(t, false)],
                ]);
                let rhs = expand(&sigma_conj_image(&[], t, i, j));
                assert_eq!(
                    artin(n, &lhs),
                    artin(n, &rhs),
                    "conjugation of A({i},{j}) by sigma_{t}"
                );
            }
        }
    }

    #[test]
    fn young_braid_relators_hold_in_artin_rep() {
        // B_{1,2}: strands {1} fixed, class {2,3}
        let e = GroupExpr::YoungBraid {
            fixed: 1,
            classes: vec![2],
            scope: vec![],
        };
        let p = to_presentation(&e).unwrap();
        for rel in &p.relators {
            let w = expand(rel);
            assert!(
                artin(3, &w).is_identity(),
                "relator {rel} fails in the Artin representation"
            );
        }
    }

    #[test]
    fn center_word_is_central_in_artin_rep() {
        // the full twist commutes with every generator
        for n in 2..=4 {
            let c = expand(&center_word(n, &[]));
            for (i, j) in pairs(n) {
                let a = a_ij_word(i, j);
                let lhs = braid_concat(&[&c, &a]);
                let rhs = braid_concat(&[&a, &c]);
                assert_eq!(artin(n, &lhs), artin(n, &rhs), "center vs A({i},{j})");
            }
        }
    }
}

