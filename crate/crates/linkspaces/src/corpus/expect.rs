//! Parser for hand-encoded expected group expressions in corpus entries.
//!
//! Grammar (whitespace-separated):
//!   expr   := atom { "x" atom }
//!   atom   := "1" | "Z" ["^" INT | "<" names ">"] | "Z/" INT
//!           | "PB(" INT ")" | "PMod(" INT ")"
//!           | "YB(" INT ";" INT {"," INT} ")"
//!           | "SD(" expr ";" expr {"," expr} ";" action ")"
//!           | "(" expr ")"
//!   action := "class" | "perm" "[" INT {"," INT} "]"
//!
//! A sign -1 in a perm action negates every generator of the target factor.

use crate::group::{ActionSpec, GeneratorName, GroupExpr};
use crate::link_model::SignedPermutation;

pub fn parse_expected(text: &str) -> Result<GroupExpr, String> {
    let mut p = P {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("trailing input at {}", p.pos));
    }
    Ok(e)
}

struct P {
    chars: Vec<char>,
    pos: usize,
}

impl P {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected '{c}' at {}", self.pos))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let neg = self.eat('-');
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected an integer at {}", self.pos));
        }
        let v: i64 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|e| format!("{e}"))?;
        Ok(if neg { -v } else { v })
    }

    fn int_list(&mut self) -> Result<Vec<i64>, String> {
        self.expect('[')?;
        let mut out = vec![self.int()?];
        while self.eat(',') {
            out.push(self.int()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<GroupExpr, String> {
        let mut factors = vec![self.atom()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.chars.get(self.pos) == Some(&'x')
                && !matches!(self.chars.get(self.pos + 1), Some(c) if c.is_alphanumeric())
            {
                self.pos += 1;
                factors.push(self.atom()?);
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupExpr::Product(factors)
        })
    }

    fn atom(&mut self) -> Result<GroupExpr, String> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.eat('1') {
            return Ok(GroupExpr::Trivial);
        }
        let w = self.word();
        match w.as_str() {
            "Z" => {
                if self.eat('^') {
                    let k = self.int()?;
                    Ok(GroupExpr::FreeAbelian(
                        (0..k).map(|i| GeneratorName::named(&format!("e{i}"))).collect(),
                    ))
                } else if self.eat('<') {
                    let mut names = Vec::new();
                    loop {
                        self.skip_ws();
                        let start = self.pos;
                        while self.pos < self.chars.len()
                            && !matches!(self.chars[self.pos], ',' | '>')
                        {
                            self.pos += 1;
                        }
                        let name: String =
                            self.chars[start..self.pos].iter().collect::<String>();
                        names.push(GeneratorName::named(name.trim()));
                        if !self.eat(',') {
                            break;
                        }
                    }
                    self.expect('>')?;
                    Ok(GroupExpr::FreeAbelian(names))
                } else if self.eat('/') {
                    let k = self.int()?;
                    Ok(GroupExpr::Cyclic(k as u64))
                } else {
                    Ok(GroupExpr::FreeAbelian(vec![GeneratorName::named("e")]))
                }
            }
            "PB" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                Ok(GroupExpr::PureBraid {
                    strands: n as usize,
                    scope: vec![],
                })
            }
            "PMod" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                Ok(GroupExpr::SpherePureMapping {
                    punctures: n as usize,
                    scope: vec![],
                })
            }
            "YB" => {
                self.expect('(')?;
                let fixed = self.int()? as usize;
                self.expect(';')?;
                let mut classes = vec![self.int()? as usize];
                while self.eat(',') {
                    classes.push(self.int()? as usize);
                }
                self.expect(')')?;
                Ok(GroupExpr::YoungBraid {
                    fixed,
                    classes,
                    scope: vec![],
                })
            }
            "SD" => {
                self.expect('(')?;
                let actor = self.expr()?;
                self.expect(';')?;
                let mut kernel = vec![self.expr()?];
                while self.eat(',') {
                    kernel.push(self.expr()?);
                }
                self.expect(';')?;
                let action_word = self.word();
                let action = match action_word.as_str() {
                    "class" => ActionSpec::ClassPermute,
                    "perm" => {
                        let images = self.int_list()?;
                        let perm = SignedPermutation::from_signed_images(&images)
                            .ok_or_else(|| format!("bad permutation {images:?}"))?;
                        let targets: Vec<Vec<GeneratorName>> = (0..kernel.len())
                            .map(|i| {
                                if perm.sign(i) < 0 {
                                    kernel[perm.image(i)].generator_names()
                                } else {
                                    Vec::new()
                                }
                            })
                            .collect();
                        ActionSpec::SignedPerm {
                            perm,
                            inversion_targets: targets,
                        }
                    }
                    other => return Err(format!("unknown action `{other}`")),
                };
                self.expect(')')?;
                Ok(GroupExpr::SemiDirect {
                    kernel,
                    actor: Box::new(actor),
                    action,
                })
            }
            other => Err(format!("unknown atom `{other}`")),
        }
    }
}
