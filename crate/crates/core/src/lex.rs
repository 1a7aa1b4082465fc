//! Tokenizer shared by the type and term grammars.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Arrow,
    LParen,
    RParen,
    Lambda,
    Colon,
    Dot,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Lambda => "lambda".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push((pos, Tok::LParen));
            }
            ')' => {
                chars.next();
                out.push((pos, Tok::RParen));
            }
            '\\' | 'λ' => {
                chars.next();
                out.push((pos, Tok::Lambda));
            }
            ':' => {
                chars.next();
                out.push((pos, Tok::Colon));
            }
            '.' => {
                chars.next();
                out.push((pos, Tok::Dot));
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => out.push((pos, Tok::Arrow)),
                    _ => return Err(ParseError::new(pos, "expected `->`")),
                }
            }
            '→' => {
                chars.next();
                out.push((pos, Tok::Arrow));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(ident)));
            }
            other => {
                return Err(ParseError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Tokens {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Tokens {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            toks: tokenize(text)?,
            idx: 0,
            end: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    pub(crate) fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub(crate) fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError::new(
                pos,
                format!("expected {}, found {}", want.describe(), t.describe()),
            )),
            None => Err(ParseError::new(
                pos,
                format!("expected {}, found end of input", want.describe()),
            )),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(
                self.pos(),
                format!("unexpected {}", t.describe()),
            )),
        }
    }
}
