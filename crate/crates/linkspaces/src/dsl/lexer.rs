use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Slash,
    At,
    Underscore,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
            Tok::Colon => write!(f, "':'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::At => write!(f, "'@'"),
            Tok::Underscore => write!(f, "'_'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

pub fn lex(text: &str) -> Result<Vec<Spanned>, LexError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' | ')' | '{' | '}' | '[' | ']' | ',' | ';' | ':' | '/' | '@' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        ',' => Tok::Comma,
                        ';' => Tok::Semi,
                        ':' => Tok::Colon,
                        '/' => Tok::Slash,
                        _ => Tok::At,
                    },
                    span,
                });
            }
            '-' | '0'..='9' => {
                let neg = c == '-';
                if neg {
                    chars.next();
                    col += 1;
                    if !matches!(chars.peek(), Some('0'..='9')) {
                        return Err(LexError {
                            span,
                            message: "expected digits after '-'".into(),
                        });
                    }
                }
                let mut v: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(digit) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(digit as i64))
                            .ok_or(LexError {
                                span,
                                message: "integer literal overflows".into(),
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(if neg { -v } else { v }),
                    span,
                });
            }
            '_' => {
                chars.next();
                col += 1;
                // a bare underscore is the leaf slot; an underscore leading
                // an identifier stays part of the identifier
                if matches!(chars.peek(), Some(c) if c.is_alphanumeric() || *c == '_') {
                    let mut s = String::from("_");
                    while let Some(&c) = chars.peek() {
                        if c.is_alphanumeric() || c == '_' || c == '\'' {
                            s.push(c);
                            chars.next();
                            col += 1;
                        } else {
                            break;
                        }
                    }
                    out.push(Spanned {
                        tok: Tok::Ident(s),
                        span,
                    });
                } else {
                    out.push(Spanned {
                        tok: Tok::Underscore,
                        span,
                    });
                }
            }
            c if c.is_alphabetic() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' || c == '-' && false {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    span,
                });
            }
            other => {
                return Err(LexError {
                    span,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(out)
}
