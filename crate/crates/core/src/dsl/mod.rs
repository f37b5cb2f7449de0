//! Construction scripts: a line-oriented language of `let` bindings and
//! `assert` checks over the library operations.
//!
//! ```text
//! let G = presentation { gens: a; rels: a^3; }
//! assert order(G) == 3
//! ```

mod ast;
mod exec;
mod parser;
mod report;
mod value;

use thiserror::Error;

use crate::lexer::{Span, SyntaxError};

pub use ast::{Expr, ExprKind, Script, Statement};
pub use exec::{execute, ExecConfig, DEFAULT_BUDGET};
pub(crate) use exec::evaluate_bindings;
pub use parser::{parse, parse_with};
pub use report::{AssertionResult, Status, Summary, VerificationReport};
pub use value::Value;

/// Function names callable from scripts.
pub const FUNCTIONS: &[&str] = &[
    "order",
    "index",
    "trivial",
    "abelianize",
    "free_rank",
    "null_homologous",
    "quotient",
    "tietze_eliminate",
    "generator_count",
    "relator_count",
    "van_kampen",
    "boundary_group",
    "closed_group",
    "surface_group",
    "lefschetz_pi1",
    "class_of_word",
    "transvection",
    "compose",
    "identity",
    "power",
    "preserves_pairing",
    "knot",
    "knot_group",
    "meridian",
    "longitude",
    "zero_surgery",
    "cross_circle",
    "bundled",
    "standard",
    "blow_up",
    "fiber_sum",
    "connected_sum",
    "freedman_type",
    "with_pi1",
    "declare",
    "with_parity",
    "named",
    "name",
    "c1sq",
    "sigma",
    "euler",
    "chi_h",
    "b1",
    "b2_plus",
    "b2_minus",
    "characteristic",
    "class",
    "pairing",
    "square",
    "adjunction_genus",
    "exceptional_disjoint",
    "usher_minimality",
    "fact",
    "deduce",
    "concluded",
    "rules",
    "exotic",
    "not",
];

/// Record literal kinds, written `kind { field: value, … }`.
pub const RECORD_KINDS: &[&str] = &["invariants", "lattice", "boundary", "summand", "fibersum", "knot_data"];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("{1}: `{0}` is already defined")]
    DuplicateName(String, Span),
    #[error("{1}: unresolved reference `{0}`")]
    UnresolvedReference(String, Span),
    #[error("{1}: unknown function `{0}`")]
    UnknownFunction(String, Span),
    #[error("{1}: unknown record kind `{0}`")]
    UnknownRecord(String, Span),
    #[error("{0}: {1}")]
    Runtime(Span, String),
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Syntax(e) => e.span,
            DslError::DuplicateName(_, s)
            | DslError::UnresolvedReference(_, s)
            | DslError::UnknownFunction(_, s)
            | DslError::UnknownRecord(_, s)
            | DslError::Runtime(s, _) => *s,
        }
    }
}

/// Parses and runs `text`.
pub fn run(text: &str, id: &str, config: &ExecConfig) -> Result<VerificationReport, DslError> {
    execute(&parse(text)?, id, config)
}

/// The scripts shipped with the crate, by file name.
pub const BUNDLED_SCRIPTS: &[(&str, &str)] = &[
    ("theorem_1_1.exo", include_str!("../../scripts/theorem_1_1.exo")),
    ("theorem_1_2.exo", include_str!("../../scripts/theorem_1_2.exo")),
    ("homology_ladder.exo", include_str!("../../scripts/homology_ladder.exo")),
    ("matsumoto.exo", include_str!("../../scripts/matsumoto.exo")),
];

#[cfg(test)]
mod tests;
