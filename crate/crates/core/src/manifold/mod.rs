//! Characteristic-number calculus for closed oriented 4-manifolds.

mod deduce;
mod invariants;
mod lattice;
mod minimality;

use thiserror::Error;

pub use deduce::{deduce, DeductionReport, DeductionStep, Fact, Rule};
pub use invariants::{
    blow_up, connected_sum, fiber_sum, freedman_type, standard, Flag, InvariantRecord, Parity, StandardSum,
};
pub use lattice::IntersectionLattice;
pub use minimality::{usher_minimality, FiberSumDescription, MinimalityVerdict, Summand};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ManifoldError {
    #[error("`{0}` is not in the catalog of standard manifolds")]
    UnknownStandard(String),
    #[error("{0} is not known to be simply connected")]
    NotSimplyConnected(String),
    #[error("{0} has an even intersection form; only odd forms are classified here")]
    EvenForm(String),
    #[error("parity of the intersection form of {0} is unknown")]
    ParityUnknown(String),
    #[error("inconsistent Betti data for {0}: {1}")]
    InconsistentBetti(String, String),
    #[error("first Betti number of {0} is pending; set it from a fundamental-group computation")]
    B1Pending(String),
    #[error("chi_h = (e + sigma)/4 is not an integer for {0} (e = {1}, sigma = {2})")]
    NonIntegralChiH(String, i64, i64),
    #[error("characteristic numbers of {0} disagree: c1^2 = {1} but 3 sigma + 2 e = {2}")]
    InconsistentCharacteristic(String, i64, i64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("unknown class symbol `{0}`")]
    UnknownClassSymbol(String),
    #[error("cannot parse class expression `{0}`")]
    BadClassExpression(String),
    #[error("K.C + C.C = {0} is odd; the class data is inconsistent")]
    ParityViolation(String),
    #[error("contradictory declarations: {0}")]
    ContradictoryDeclarations(String),
    #[error("contradictory facts: {0}")]
    ContradictoryFacts(String),
    #[error("fact refers to unknown manifold `{0}`")]
    UnknownManifold(String),
    #[error("cannot parse fact `{0}`")]
    BadFact(String),
    #[error("unknown flag `{0}`")]
    UnknownFlag(String),
}
