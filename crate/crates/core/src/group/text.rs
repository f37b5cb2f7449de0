//! Canonical text form of words and presentations:
//! `gens: a, b; rels: a*b*a*b^-1*a^-1*b^-1;`
//!
//! Input may use `[g, h]` commutators, parentheses, integer exponents and
//! relations `r = s` (chains `r₁ = r₂ = … = rₖ` give one relator `rᵢ·rₖ⁻¹`
//! per member). Output is always flat letters with `^n` exponents.

use crate::lexer::{tokenize, Cursor, Span, SyntaxError, TokenKind};

use super::{Generator, Presentation, Word};

pub fn parse_word(text: &str) -> Result<Word, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut cur = Cursor::new(&tokens);
    let w = word(&mut cur)?;
    end(&mut cur)?;
    Ok(w)
}

/// Parses a relation and returns its relators.
pub fn parse_relation(text: &str) -> Result<Vec<Word>, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut cur = Cursor::new(&tokens);
    let r = relation(&mut cur)?;
    end(&mut cur)?;
    Ok(r)
}

/// Parses the text form. Structural errors (undeclared generators) are
/// reported as syntax errors at the offending symbol.
pub fn parse_presentation(text: &str) -> Result<Presentation, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut cur = Cursor::new(&tokens);
    cur.skip_newlines();
    let p = presentation_body(&mut cur, &TokenKind::Eof)?;
    cur.skip_newlines();
    end(&mut cur)?;
    Ok(p)
}

fn end(cur: &mut Cursor<'_>) -> Result<(), SyntaxError> {
    let t = cur.peek();
    if t.kind == TokenKind::Eof {
        Ok(())
    } else {
        Err(SyntaxError::expected(t.span, &t.kind, &["end of input"]))
    }
}

/// `gens: g, …; rels: r, …;` up to (not including) `close`.
pub fn presentation_body(cur: &mut Cursor<'_>, close: &TokenKind) -> Result<Presentation, SyntaxError> {
    let start = cur.peek().span;
    cur.expect_keyword("gens")?;
    cur.expect(TokenKind::Colon, "`:`")?;
    let mut gens: Vec<(Generator, Span)> = Vec::new();
    if cur.peek_kind() != &TokenKind::Semicolon {
        loop {
            let (g, span) = cur.expect_ident()?;
            if gens.iter().any(|(h, _)| h.name() == g) {
                return Err(SyntaxError::new(span, format!("generator `{g}` declared twice")));
            }
            gens.push((Generator::new(&g), span));
            if !cur.eat(&TokenKind::Comma) {
                break;
            }
        }
    }
    cur.expect(TokenKind::Semicolon, "`;`")?;
    cur.expect_keyword("rels")?;
    cur.expect(TokenKind::Colon, "`:`")?;
    let mut rels: Vec<(Word, Span)> = Vec::new();
    if cur.peek_kind() != &TokenKind::Semicolon {
        loop {
            let span = cur.peek().span;
            for r in relation(cur)? {
                rels.push((r, span));
            }
            if !cur.eat(&TokenKind::Comma) {
                break;
            }
        }
    }
    cur.expect(TokenKind::Semicolon, "`;`")?;
    if cur.peek_kind() != close {
        let t = cur.peek();
        return Err(SyntaxError::expected(t.span, &t.kind, &[&close.to_string()]));
    }
    let generators: Vec<Generator> = gens.into_iter().map(|(g, _)| g).collect();
    for (r, span) in &rels {
        if let Some(g) = r.generators().into_iter().find(|g| !generators.contains(g)) {
            return Err(SyntaxError::new(*span, format!("relator uses undeclared generator `{g}`")));
        }
    }
    Presentation::new(generators, rels.into_iter().map(|(r, _)| r).collect())
        .map_err(|e| SyntaxError::new(start, e.to_string()))
}

pub fn relation(cur: &mut Cursor<'_>) -> Result<Vec<Word>, SyntaxError> {
    let mut members = vec![word(cur)?];
    while cur.eat(&TokenKind::Eq) {
        members.push(word(cur)?);
    }
    let last = members.pop().expect("at least one member");
    if members.is_empty() {
        return Ok(vec![last]);
    }
    let last_inv = last.inverse();
    Ok(members.into_iter().map(|m| m.concat(&last_inv)).collect())
}

pub fn word(cur: &mut Cursor<'_>) -> Result<Word, SyntaxError> {
    let mut w = factor(cur)?;
    while cur.eat(&TokenKind::Star) {
        w = w.concat(&factor(cur)?);
    }
    Ok(w)
}

fn factor(cur: &mut Cursor<'_>) -> Result<Word, SyntaxError> {
    let base = atom(cur)?;
    if cur.eat(&TokenKind::Caret) {
        let neg = cur.eat(&TokenKind::Minus);
        let t = cur.bump();
        let TokenKind::Int(n) = t.kind else {
            return Err(SyntaxError::expected(t.span, &t.kind, &["integer exponent"]));
        };
        Ok(base.pow(if neg { -n } else { n }))
    } else {
        Ok(base)
    }
}

fn atom(cur: &mut Cursor<'_>) -> Result<Word, SyntaxError> {
    let t = cur.bump();
    match &t.kind {
        TokenKind::Ident(g) => Ok(Word::generator(g.as_str())),
        TokenKind::Int(1) => Ok(Word::identity()),
        TokenKind::LParen => {
            let w = word(cur)?;
            cur.expect(TokenKind::RParen, "`)`")?;
            Ok(w)
        }
        TokenKind::LBracket => {
            let g = word(cur)?;
            cur.expect(TokenKind::Comma, "`,`")?;
            let h = word(cur)?;
            cur.expect(TokenKind::RBracket, "`]`")?;
            Ok(Word::commutator(&g, &h))
        }
        other => Err(SyntaxError::expected(t.span, other, &["generator", "`1`", "`(`", "`[`"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_chain_expands() {
        let r = parse_relation("[x, a] = [x, b] = 1").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].to_string(), "x*a*x^-1*a^-1");
        let r = parse_relation("a*b*a = b*a*b").unwrap();
        assert_eq!(r[0].to_string(), "a*b*a*b^-1*a^-1*b^-1");
    }

    #[test]
    fn presentation_text_form() {
        let p = parse_presentation("gens: a, b; rels: a*b*a*b^-1*a^-1*b^-1;").unwrap();
        assert_eq!(p.to_string(), "gens: a, b; rels: a*b*a*b^-1*a^-1*b^-1;");
        let p = parse_presentation("gens: a; rels: ;").unwrap();
        assert!(p.relators().is_empty());
    }

    #[test]
    fn undeclared_generator_is_rejected() {
        let e = parse_presentation("gens: a; rels: a*b;").unwrap_err();
        assert!(e.message.contains("`b`"), "{e}");
    }

    #[test]
    fn exponents_and_groups() {
        assert_eq!(parse_word("(a*b)^-2").unwrap().to_string(), "b^-1*a^-1*b^-1*a^-1");
        assert_eq!(parse_word("a^0*1").unwrap(), Word::identity());
    }
}
