use super::SimpleType;
use crate::lex::{ParseError, Tok, Tokens};

pub(super) fn parse_type(text: &str) -> Result<SimpleType, ParseError> {
    let mut toks = Tokens::new(text)?;
    let t = parse_arrow(&mut toks)?;
    toks.finish()?;
    Ok(t)
}

pub(crate) fn is_atom_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

/// Parses `type ::= primary ("->" type)?`. Stops at the first token that
/// cannot continue a type, so callers embedding types (binder annotations)
/// can resume after it.
pub(crate) fn parse_arrow(toks: &mut Tokens) -> Result<SimpleType, ParseError> {
    let lhs = parse_primary(toks)?;
    if toks.peek() == Some(&Tok::Arrow) {
        toks.bump();
        let rhs = parse_arrow(toks)?;
        Ok(SimpleType::arrow(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_primary(toks: &mut Tokens) -> Result<SimpleType, ParseError> {
    let pos = toks.pos();
    match toks.bump() {
        Some(Tok::Ident(name)) if is_atom_name(&name) => Ok(SimpleType::Atom(name)),
        Some(Tok::Ident(name)) => Err(ParseError::new(
            pos,
            format!("invalid atom `{name}` (atoms match [a-z][a-z0-9]*)"),
        )),
        Some(Tok::LParen) => {
            let t = parse_arrow(toks)?;
            toks.expect(Tok::RParen)?;
            Ok(t)
        }
        Some(t) => Err(ParseError::new(
            pos,
            format!("expected a type, found {}", t.describe()),
        )),
        None => Err(ParseError::new(pos, "expected a type, found end of input")),
    }
}
