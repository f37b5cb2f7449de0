use std::fmt;

use crate::constructions::GluingMap;
use crate::group::{Presentation, Word};
use crate::lexer::Span;

#[derive(Clone, Debug, PartialEq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Let {
        name: String,
        value: Expr,
        cite: Option<String>,
        span: Span,
    },
    Assert {
        expr: Expr,
        expected: Option<Expr>,
        budget: Option<usize>,
        cite: Option<String>,
        span: Span,
    },
}

impl Statement {
    pub fn span(&self) -> Span {
        match self {
            Statement::Let { span, .. } | Statement::Assert { span, .. } => *span,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Ident(String),
    Int(i64),
    Bool(bool),
    Str(String),
    List(Vec<Expr>),
    Call { name: String, args: Vec<Expr> },
    /// `kind { field: expr, … }`
    Record { kind: String, fields: Vec<(String, Expr)> },
    Presentation(Presentation),
    Word(Word),
    Glue(GluingMap),
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn cite_suffix(f: &mut fmt::Formatter<'_>, cite: &Option<String>) -> fmt::Result {
    match cite {
        Some(c) => write!(f, " cite {}", quote(c)),
        None => Ok(()),
    }
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::from('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Let { name, value, cite, .. } => {
                write!(f, "let {name} = {value}")?;
                cite_suffix(f, cite)
            }
            Statement::Assert { expr, expected, budget, cite, .. } => {
                write!(f, "assert {expr}")?;
                if let Some(e) = expected {
                    write!(f, " == {e}")?;
                }
                if let Some(b) = budget {
                    write!(f, " budget {b}")?;
                }
                cite_suffix(f, cite)
            }
        }
    }
}

fn comma_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Ident(s) => f.write_str(s),
            ExprKind::Int(v) => write!(f, "{v}"),
            ExprKind::Bool(b) => write!(f, "{b}"),
            ExprKind::Str(s) => f.write_str(&quote(s)),
            ExprKind::List(items) => {
                f.write_str("[")?;
                comma_list(f, items)?;
                f.write_str("]")
            }
            ExprKind::Call { name, args } => {
                write!(f, "{name}(")?;
                comma_list(f, args)?;
                f.write_str(")")
            }
            ExprKind::Record { kind, fields } => {
                write!(f, "{kind} {{ ")?;
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {v}")?;
                }
                f.write_str(" }")
            }
            ExprKind::Presentation(p) => write!(f, "presentation {{ {p} }}"),
            ExprKind::Word(w) => write!(f, "word {{ {w} }}"),
            ExprKind::Glue(g) => write!(f, "{g}"),
        }
    }
}
