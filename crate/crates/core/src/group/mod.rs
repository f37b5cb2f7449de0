//! Free-group words, finite presentations and their invariants.

mod abelian;
mod amalgam;
mod coset;
mod presentation;
mod text;
mod tietze;
mod word;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use abelian::{abelianization, abelianize, AbelianGroupDescription, Abelianization};
pub use amalgam::{van_kampen_fiber_sum, BoundaryData};
pub use coset::{coset_enumerate, CosetStatus, CosetTable};
pub use presentation::Presentation;
pub use text::{parse_presentation, parse_relation, parse_word, presentation_body, relation, word};
pub use tietze::{defining_word, tietze_eliminate, tietze_eliminate_auto};
pub use word::{Generator, Letter, Word};

use crate::lexer::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("coset budget must be at least 1")]
    InvalidBudget,
    #[error("no relator defines `{0}` by the given word")]
    NoDefiningRelator(String),
    #[error("surface genus mismatch: {0} vs {1} surface generators")]
    GenusMismatch(usize, usize),
    #[error("matching is not a bijection: {0}")]
    NonBijectiveMatching(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Outcome of a triviality check. Never claims more than the coset table
/// certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Triviality {
    Trivial,
    Finite(usize),
    Unknown,
}

/// Commutator `[g, h] = g h g⁻¹ h⁻¹`.
pub fn commutator(g: &Word, h: &Word) -> Word {
    Word::commutator(g, h)
}

pub fn quotient(p: &Presentation, extra: &[Word]) -> Result<Presentation, GroupError> {
    p.quotient(extra)
}

/// Order of the group via enumeration over the trivial subgroup.
pub fn is_trivial(p: &Presentation, budget: usize) -> Result<Triviality, GroupError> {
    let table = coset_enumerate(p, &[], budget)?;
    Ok(match table.index() {
        Some(n) if table.verify(p, &[]) => {
            if n == 1 {
                Triviality::Trivial
            } else {
                Triviality::Finite(n)
            }
        }
        _ => Triviality::Unknown,
    })
}
