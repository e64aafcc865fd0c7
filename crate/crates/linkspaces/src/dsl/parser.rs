use super::lexer::{lex, Span, Spanned, Tok};
use crate::link_model::{
    validate, CompanionshipTree, HypSymmetry, HyperbolicLink, LinkDescription, Rational,
    SignedPermutation, SimpleLink, Slot, SymmetryEntry, ValidationReport,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors from parsing a program.
#[derive(Clone, Debug, PartialEq)]
pub enum DslError {
    Syntax {
        span: Span,
        expected: String,
        found: String,
    },
    Resolution {
        span: Span,
        name: String,
    },
    Validation(ValidationReport),
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Syntax {
                span,
                expected,
                found,
            } => write!(
                f,
                "{}:{}: expected {expected}, found {found}",
                span.line, span.col
            ),
            DslError::Resolution { span, name } => write!(
                f,
                "{}:{}: unknown link name `{name}`",
                span.line, span.col
            ),
            DslError::Validation(report) => write!(f, "invalid link description:\n{report}"),
        }
    }
}

impl std::error::Error for DslError {}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    decls: BTreeMap<String, HyperbolicLink>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos.min(self.toks.len() - 1)].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T, DslError> {
        let t = self.peek();
        Err(DslError::Syntax {
            span: t.span,
            expected: expected.into(),
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, DslError> {
        if self.peek().tok == tok {
            Ok(self.next().span)
        } else {
            self.err(what)
        }
    }

    fn eat_ident(&mut self, kw: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == kw) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Span), DslError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let span = self.next().span;
                Ok((s, span))
            }
            _ => self.err("an identifier"),
        }
    }

    fn expect_int(&mut self) -> Result<i64, DslError> {
        match self.peek().tok {
            Tok::Int(v) => {
                self.next();
                Ok(v)
            }
            _ => self.err("an integer"),
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), DslError> {
        if self.eat_ident(kw) {
            Ok(())
        } else {
            self.err(&format!("keyword `{kw}`"))
        }
    }

    fn int_list(&mut self, open: Tok, close: Tok) -> Result<Vec<i64>, DslError> {
        self.expect(open, "a list")?;
        let mut out = Vec::new();
        if self.peek().tok != close {
            loop {
                out.push(self.expect_int()?);
                if self.peek().tok == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(close, "the end of the list")?;
        Ok(out)
    }

    fn rational(&mut self) -> Result<Rational, DslError> {
        let n = self.expect_int()?;
        if self.peek().tok == Tok::Slash {
            self.next();
            let d = self.expect_int()?;
            if d == 0 {
                return self.err("a nonzero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn rat_list(&mut self) -> Result<Vec<Rational>, DslError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = Vec::new();
        if self.peek().tok != Tok::RBracket {
            loop {
                out.push(self.rational()?);
                if self.peek().tok == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket, "']'")?;
        Ok(out)
    }

    fn bool_list(&mut self) -> Result<Vec<bool>, DslError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = Vec::new();
        if self.peek().tok != Tok::RBracket {
            loop {
                let (word, span) = self.expect_ident()?;
                match word.as_str() {
                    "true" => out.push(true),
                    "false" => out.push(false),
                    other => {
                        return Err(DslError::Syntax {
                            span,
                            expected: "`true` or `false`".into(),
                            found: format!("`{other}`"),
                        })
                    }
                }
                if self.peek().tok == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket, "']'")?;
        Ok(out)
    }

    fn hyperbolic_decl(&mut self) -> Result<(), DslError> {
        let (name, _) = self.expect_ident()?;
        self.expect(Tok::LBrace, "'{'")?;
        self.expect_kw("components")?;
        self.expect(Tok::Colon, "':'")?;
        let components = self.expect_int()?;
        if components <= 0 {
            return self.err("a positive component count");
        }
        let components = components as usize;
        self.expect(Tok::Semi, "';'")?;

        let mut unknotted = BTreeSet::new();
        let mut invertible = vec![false; components];
        let mut hopf_pairs = BTreeSet::new();
        let mut entries = Vec::new();

        loop {
            if self.eat_ident("unknotted") {
                self.expect(Tok::Colon, "':'")?;
                for v in self.int_list(Tok::LBracket, Tok::RBracket)? {
                    unknotted.insert(v.max(0) as usize);
                }
                self.expect(Tok::Semi, "';'")?;
            } else if self.eat_ident("invertible") {
                self.expect(Tok::Colon, "':'")?;
                let bs = self.bool_list()?;
                invertible = bs;
                self.expect(Tok::Semi, "';'")?;
            } else if self.eat_ident("hopf") {
                self.expect(Tok::Colon, "':'")?;
                let pair = self.int_list(Tok::LBracket, Tok::RBracket)?;
                if pair.len() != 2 {
                    return self.err("a pair of component indices");
                }
                hopf_pairs.insert((pair[0].max(0) as usize, pair[1].max(0) as usize));
                self.expect(Tok::Semi, "';'")?;
            } else if self.eat_ident("symmetry") {
                self.expect_kw("fix")?;
                let fixed: BTreeSet<usize> = self
                    .int_list(Tok::LParen, Tok::RParen)?
                    .into_iter()
                    .map(|v| v.max(0) as usize)
                    .collect();
                self.expect(Tok::Colon, "':'")?;
                self.expect_kw("order")?;
                let order = self.expect_int()?;
                if order <= 0 {
                    return self.err("a positive order");
                }
                let mut action_images: Vec<i64> =
                    (1..=(components - fixed.len()) as i64).collect();
                let mut shift = vec![Rational::from_integer(0); fixed.len()];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    if self.eat_ident("perm") {
                        action_images = self.int_list(Tok::LBracket, Tok::RBracket)?;
                    } else if self.eat_ident("shift") {
                        shift = self.rat_list()?;
                    } else {
                        return self.err("`perm` or `shift`");
                    }
                }
                self.expect(Tok::Semi, "';'")?;
                let action = SignedPermutation::from_signed_images(&action_images)
                    .ok_or_else(|| DslError::Syntax {
                        span: self.peek().span,
                        expected: "a signed permutation (each of 1..r once, signed)".into(),
                        found: format!("{action_images:?}"),
                    })?;
                entries.push(SymmetryEntry {
                    fixed_components: fixed,
                    order: order as u64,
                    action,
                    shift,
                });
            } else {
                break;
            }
        }
        self.expect(Tok::RBrace, "'}'")?;
        self.decls.insert(
            name.clone(),
            HyperbolicLink {
                name,
                components,
                unknotted,
                hopf_pairs,
                invertible,
                symmetry: HypSymmetry { entries },
            },
        );
        Ok(())
    }

    fn simple_or_named(&mut self, name: &str, span: Span) -> Result<SimpleLink, DslError> {
        match name {
            "torus" | "seifert" | "rlink" => {
                self.expect(Tok::LParen, "'('")?;
                let p = self.expect_int()?;
                self.expect(Tok::Comma, "','")?;
                let q = self.expect_int()?;
                self.expect(Tok::RParen, "')'")?;
                if p == 0 || q == 0 {
                    return Err(DslError::Syntax {
                        span,
                        expected: "nonzero parameters".into(),
                        found: format!("({p},{q})"),
                    });
                }
                Ok(match name {
                    "torus" => SimpleLink::Torus { p, q },
                    "seifert" => SimpleLink::Seifert { p, q },
                    _ => SimpleLink::RLink { p, q },
                })
            }
            "keychain" => {
                self.expect(Tok::LParen, "'('")?;
                let n = self.expect_int()?;
                self.expect(Tok::RParen, "')'")?;
                if n <= 0 {
                    return Err(DslError::Syntax {
                        span,
                        expected: "a positive keychain parameter".into(),
                        found: n.to_string(),
                    });
                }
                Ok(SimpleLink::keychain(n as usize))
            }
            "unknot" => Ok(SimpleLink::Unknot),
            other => match self.decls.get(other) {
                Some(h) => Ok(SimpleLink::Hyperbolic(h.clone())),
                None => Err(DslError::Resolution {
                    span,
                    name: other.into(),
                }),
            },
        }
    }

    fn link(&mut self) -> Result<CompanionshipTree, DslError> {
        let (word, span) = self.expect_ident()?;
        match word.as_str() {
            "splice" => {
                self.expect(Tok::LParen, "'('")?;
                let base = self.link()?;
                self.expect(Tok::Semi, "';' between the vertex and its slots")?;
                let mut slots = Vec::new();
                loop {
                    slots.push(self.slot()?);
                    if self.peek().tok == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RParen, "')'")?;
                if base.has_edges() {
                    return Err(DslError::Syntax {
                        span,
                        expected: "a simple link as the splice vertex".into(),
                        found: "a spliced link".into(),
                    });
                }
                Ok(CompanionshipTree::splice(base.vertex, slots))
            }
            "split" => Err(DslError::Syntax {
                span,
                expected: "`split` only at the top level".into(),
                found: "`split`".into(),
            }),
            _ => {
                let link = self.simple_or_named(&word, span)?;
                Ok(CompanionshipTree::leaf(link))
            }
        }
    }

    fn slot(&mut self) -> Result<Slot, DslError> {
        if self.peek().tok == Tok::Underscore {
            self.next();
            return Ok(Slot::Leaf);
        }
        let mut child = self.link()?;
        let mut reversed = false;
        while self.peek().tok == Tok::At {
            self.next();
            let (word, span) = self.expect_ident()?;
            match word.as_str() {
                "rev" => reversed = true,
                "inv" => child.annotations.invertible = Some(true),
                other => {
                    return Err(DslError::Syntax {
                        span,
                        expected: "`rev` or `inv`".into(),
                        found: format!("`{other}`"),
                    })
                }
            }
        }
        if child.has_edges() && child.annotations.invertible.is_none() {
            // composite companions default to the conservative flag
            child.annotations.invertible = Some(false);
        }
        Ok(Slot::Edge {
            child: Box::new(child),
            reversed,
        })
    }

    fn top_link(&mut self) -> Result<LinkDescription, DslError> {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == "split") {
            self.next();
            self.expect(Tok::LParen, "'('")?;
            let mut summands = Vec::new();
            loop {
                summands.push(self.link()?);
                if self.peek().tok == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen, "')'")?;
            Ok(LinkDescription::Split(summands))
        } else {
            Ok(LinkDescription::Irreducible(self.link()?))
        }
    }

    fn annotations(&mut self, desc: &mut LinkDescription) -> Result<(), DslError> {
        while self.peek().tok == Tok::At {
            self.next();
            let (word, span) = self.expect_ident()?;
            let tree = match desc {
                LinkDescription::Irreducible(t) => t,
                LinkDescription::Split(_) => {
                    return Err(DslError::Syntax {
                        span,
                        expected: "annotations only on irreducible links".into(),
                        found: format!("`@{word}`"),
                    })
                }
            };
            match word.as_str() {
                "hopf" => {
                    let pair = self.int_list(Tok::LParen, Tok::RParen)?;
                    if pair.len() != 2 {
                        return Err(DslError::Syntax {
                            span,
                            expected: "two component indices".into(),
                            found: format!("{} indices", pair.len()),
                        });
                    }
                    tree.annotations.hopf =
                        Some((pair[0].max(0) as usize, pair[1].max(0) as usize));
                }
                "unknotted" => {
                    for v in self.int_list(Tok::LParen, Tok::RParen)? {
                        tree.annotations.unknotted.push(v.max(0) as usize);
                    }
                }
                other => {
                    return Err(DslError::Syntax {
                        span,
                        expected: "`hopf` or `unknotted`".into(),
                        found: format!("`{other}`"),
                    })
                }
            }
        }
        Ok(())
    }
}

/// Parses a program into a validated link description.
pub fn parse(text: &str) -> Result<LinkDescription, DslError> {
    let toks = lex(text).map_err(|e| DslError::Syntax {
        span: e.span,
        expected: "a token".into(),
        found: e.message,
    })?;
    let mut p = Parser {
        toks,
        pos: 0,
        decls: BTreeMap::new(),
    };
    while p.eat_ident("hyperbolic") {
        p.hyperbolic_decl()?;
    }
    p.expect_kw("return")?;
    let mut desc = p.top_link()?;
    p.annotations(&mut desc)?;
    p.expect(Tok::Eof, "the end of the program")?;

    let report = validate(&desc);
    if !report.is_ok() {
        return Err(DslError::Validation(report));
    }
    Ok(desc)
}
