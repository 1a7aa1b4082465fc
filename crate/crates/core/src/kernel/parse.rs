use super::Term;
use crate::lex::{ParseError, Tok, Tokens};
use crate::types::parse::parse_arrow;

/// Parses `term ::= var | "\" var ":" type "." term | term term | "(" term ")"`.
/// Application associates to the left and a lambda body extends as far right
/// as possible. `λ` is accepted in place of `\`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut toks = Tokens::new(text)?;
    let t = parse_app(&mut toks)?;
    toks.finish()?;
    Ok(t)
}

fn parse_app(toks: &mut Tokens) -> Result<Term, ParseError> {
    let mut head = parse_operand(toks)?;
    loop {
        match toks.peek() {
            Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Lambda) => {
                let arg = parse_operand(toks)?;
                head = Term::app(head, arg);
            }
            _ => return Ok(head),
        }
    }
}

fn parse_operand(toks: &mut Tokens) -> Result<Term, ParseError> {
    let pos = toks.pos();
    match toks.bump() {
        Some(Tok::Ident(name)) => Ok(Term::Var(name)),
        Some(Tok::LParen) => {
            let t = parse_app(toks)?;
            toks.expect(Tok::RParen)?;
            Ok(t)
        }
        Some(Tok::Lambda) => {
            let pos = toks.pos();
            let name = match toks.bump() {
                Some(Tok::Ident(n)) => n,
                _ => return Err(ParseError::new(pos, "expected a binder name")),
            };
            toks.expect(Tok::Colon)?;
            let ty = parse_arrow(toks)?;
            toks.expect(Tok::Dot)?;
            let body = parse_app(toks)?;
            Ok(Term::abs(name, ty, body))
        }
        Some(t) => Err(ParseError::new(
            pos,
            format!("expected a term, found {}", t.describe()),
        )),
        None => Err(ParseError::new(pos, "expected a term, found end of input")),
    }
}
