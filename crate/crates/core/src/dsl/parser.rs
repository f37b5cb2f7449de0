use std::collections::BTreeSet;

use crate::constructions::{GluingMap, MeridianImage};
use crate::group::{presentation_body, word};
use crate::lexer::{tokenize, Cursor, Span, SyntaxError, TokenKind};

use super::ast::{Expr, ExprKind, Script, Statement};
use super::{DslError, FUNCTIONS, RECORD_KINDS};

/// Parses a script; bare identifiers may refer to earlier `let`s or to
/// bundled items.
pub fn parse(text: &str) -> Result<Script, DslError> {
    parse_with(text, &|n| crate::constructions::BUNDLED_NAMES.contains(&n))
}

/// Parses with a caller-supplied set of external names.
pub fn parse_with(text: &str, external: &dyn Fn(&str) -> bool) -> Result<Script, DslError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { cur: Cursor::new(&tokens), defined: BTreeSet::new(), external };
    let mut statements = Vec::new();
    p.cur.skip_newlines();
    while p.cur.peek_kind() != &TokenKind::Eof {
        statements.push(p.statement()?);
        let t = p.cur.peek();
        match t.kind {
            TokenKind::Newline => p.cur.skip_newlines(),
            TokenKind::Eof => {}
            _ => return Err(SyntaxError::expected(t.span, &t.kind, &["end of line"]).into()),
        }
    }
    Ok(Script { statements })
}

struct Parser<'a, 'f> {
    cur: Cursor<'a>,
    defined: BTreeSet<String>,
    external: &'f dyn Fn(&str) -> bool,
}

const KEYWORDS: [&str; 9] = ["let", "assert", "budget", "cite", "true", "false", "presentation", "word", "glue"];

impl Parser<'_, '_> {
    fn statement(&mut self) -> Result<Statement, DslError> {
        let span = self.cur.peek().span;
        if self.cur.at_keyword("let") {
            self.cur.bump();
            let (name, nspan) = self.cur.expect_ident()?;
            if KEYWORDS.contains(&name.as_str()) || FUNCTIONS.contains(&name.as_str()) {
                return Err(SyntaxError::new(nspan, format!("`{name}` is reserved")).into());
            }
            self.cur.expect(TokenKind::Eq, "`=`")?;
            let value = self.expr()?;
            let cite = self.cite()?;
            if !self.defined.insert(name.clone()) {
                return Err(DslError::DuplicateName(name, nspan));
            }
            Ok(Statement::Let { name, value, cite, span })
        } else if self.cur.at_keyword("assert") {
            self.cur.bump();
            let expr = self.expr()?;
            let expected = if self.cur.eat(&TokenKind::EqEq) { Some(self.expr()?) } else { None };
            let budget = if self.cur.at_keyword("budget") {
                self.cur.bump();
                let t = self.cur.bump();
                match t.kind {
                    TokenKind::Int(n) if n > 0 => Some(n as usize),
                    _ => return Err(SyntaxError::expected(t.span, &t.kind, &["positive integer"]).into()),
                }
            } else {
                None
            };
            let cite = self.cite()?;
            Ok(Statement::Assert { expr, expected, budget, cite, span })
        } else {
            let t = self.cur.peek();
            Err(SyntaxError::expected(t.span, &t.kind, &["`let`", "`assert`"]).into())
        }
    }

    fn cite(&mut self) -> Result<Option<String>, DslError> {
        if !self.cur.at_keyword("cite") {
            return Ok(None);
        }
        self.cur.bump();
        let t = self.cur.bump();
        match &t.kind {
            TokenKind::Str(s) => Ok(Some(s.clone())),
            other => Err(SyntaxError::expected(t.span, other, &["string"]).into()),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let t = self.cur.peek();
        let span = t.span;
        let kind = match &t.kind {
            TokenKind::Int(v) => {
                self.cur.bump();
                ExprKind::Int(*v)
            }
            TokenKind::Minus => {
                self.cur.bump();
                let n = self.cur.bump();
                match n.kind {
                    TokenKind::Int(v) => ExprKind::Int(-v),
                    ref other => return Err(SyntaxError::expected(n.span, other, &["integer"]).into()),
                }
            }
            TokenKind::Str(s) => {
                self.cur.bump();
                ExprKind::Str(s.clone())
            }
            TokenKind::LBracket => {
                self.cur.bump();
                let mut items = Vec::new();
                if !self.cur.eat(&TokenKind::RBracket) {
                    loop {
                        items.push(self.expr()?);
                        if !self.cur.eat(&TokenKind::Comma) {
                            break;
                        }
                    }
                    self.cur.expect(TokenKind::RBracket, "`]`")?;
                }
                ExprKind::List(items)
            }
            TokenKind::Ident(name) => {
                self.cur.bump();
                self.ident_expr(name, span)?
            }
            other => {
                return Err(SyntaxError::expected(span, other, &["expression"]).into());
            }
        };
        Ok(Expr { kind, span })
    }

    fn ident_expr(&mut self, name: &str, span: Span) -> Result<ExprKind, DslError> {
        match name {
            "true" => return Ok(ExprKind::Bool(true)),
            "false" => return Ok(ExprKind::Bool(false)),
            "presentation" => {
                self.cur.expect(TokenKind::LBrace, "`{`")?;
                let p = presentation_body(&mut self.cur, &TokenKind::RBrace)?;
                self.cur.expect(TokenKind::RBrace, "`}`")?;
                return Ok(ExprKind::Presentation(p));
            }
            "word" => {
                self.cur.expect(TokenKind::LBrace, "`{`")?;
                let w = word(&mut self.cur)?;
                self.cur.expect(TokenKind::RBrace, "`}`")?;
                return Ok(ExprKind::Word(w));
            }
            "glue" => return self.glue().map(ExprKind::Glue),
            _ => {}
        }
        match self.cur.peek_kind() {
            TokenKind::LParen => {
                if !FUNCTIONS.contains(&name) {
                    return Err(DslError::UnknownFunction(name.to_string(), span));
                }
                self.cur.bump();
                let mut args = Vec::new();
                if !self.cur.eat(&TokenKind::RParen) {
                    loop {
                        args.push(self.expr()?);
                        if !self.cur.eat(&TokenKind::Comma) {
                            break;
                        }
                    }
                    self.cur.expect(TokenKind::RParen, "`)`")?;
                }
                Ok(ExprKind::Call { name: name.to_string(), args })
            }
            TokenKind::LBrace => {
                if !RECORD_KINDS.contains(&name) {
                    return Err(DslError::UnknownRecord(name.to_string(), span));
                }
                self.cur.bump();
                let mut fields: Vec<(String, Expr)> = Vec::new();
                while !self.cur.eat(&TokenKind::RBrace) {
                    let (key, kspan) = self.cur.expect_ident()?;
                    if fields.iter().any(|(k, _)| *k == key) {
                        return Err(SyntaxError::new(kspan, format!("field `{key}` given twice")).into());
                    }
                    self.cur.expect(TokenKind::Colon, "`:`")?;
                    fields.push((key, self.expr()?));
                    if !self.cur.eat(&TokenKind::Comma) {
                        self.cur.expect(TokenKind::RBrace, "`,` or `}`")?;
                        break;
                    }
                }
                Ok(ExprKind::Record { kind: name.to_string(), fields })
            }
            _ => {
                if KEYWORDS.contains(&name) {
                    return Err(SyntaxError::new(span, format!("unexpected keyword `{name}`")).into());
                }
                if !self.defined.contains(name) && !(self.external)(name) {
                    return Err(DslError::UnresolvedReference(name.to_string(), span));
                }
                Ok(ExprKind::Ident(name.to_string()))
            }
        }
    }

    fn glue(&mut self) -> Result<GluingMap, DslError> {
        self.cur.expect(TokenKind::LBrace, "`{`")?;
        let mut assignments = Vec::new();
        if !matches!(self.cur.peek_kind(), TokenKind::Semicolon) {
            loop {
                let s = word(&mut self.cur)?;
                self.cur.expect(TokenKind::Arrow, "`->`")?;
                let t = word(&mut self.cur)?;
                assignments.push((s, t));
                if !self.cur.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.cur.expect(TokenKind::Semicolon, "`;`")?;
        self.cur.expect_keyword("meridian")?;
        self.cur.expect(TokenKind::Arrow, "`->`")?;
        let t = self.cur.bump();
        let meridian_image = match &t.kind {
            TokenKind::Int(1) => MeridianImage::Trivial,
            TokenKind::Ident(s) if s == "meridian" => MeridianImage::Meridian,
            other => return Err(SyntaxError::expected(t.span, other, &["`1`", "`meridian`"]).into()),
        };
        self.cur.expect(TokenKind::RBrace, "`}`")?;
        Ok(GluingMap { assignments, meridian_image })
    }
}
