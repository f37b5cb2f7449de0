use std::fmt;

use crate::constructions::{BundledValue, GluingMap, KnotRecord};
use crate::group::{AbelianGroupDescription, BoundaryData, Presentation, Word};
use crate::manifold::{DeductionReport, Fact, FiberSumDescription, IntersectionLattice, InvariantRecord, MinimalityVerdict, Summand};
use crate::matrix::Matrix;
use crate::surfaces::HomologyClass;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Str(String),
    List(Vec<Value>),
    /// Result of a budget-limited computation that did not finish.
    Unknown(String),
    Presentation(Presentation),
    Word(Word),
    Boundary(BoundaryData),
    Glue(GluingMap),
    Knot(KnotRecord),
    Abelian(AbelianGroupDescription),
    Class(HomologyClass<i64>),
    Matrix(Matrix<i64>),
    Record(InvariantRecord),
    Lattice(IntersectionLattice<i64>),
    Summand(Summand),
    FiberSum(FiberSumDescription),
    Verdict { manifold: String, verdict: MinimalityVerdict },
    Fact(Fact),
    Report(DeductionReport),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Str(_) => "string",
            Value::List(_) => "list",
            Value::Unknown(_) => "unknown",
            Value::Presentation(_) => "presentation",
            Value::Word(_) => "word",
            Value::Boundary(_) => "boundary",
            Value::Glue(_) => "gluing map",
            Value::Knot(_) => "knot",
            Value::Abelian(_) => "abelian group",
            Value::Class(_) => "homology class",
            Value::Matrix(_) => "matrix",
            Value::Record(_) => "invariant record",
            Value::Lattice(_) => "lattice",
            Value::Summand(_) => "summand",
            Value::FiberSum(_) => "fiber sum",
            Value::Verdict { .. } => "minimality verdict",
            Value::Fact(_) => "fact",
            Value::Report(_) => "deduction report",
        }
    }

    /// Equality for assertions. Values of different types, and anything
    /// compared with a string, are compared through their display forms.
    pub fn matches(&self, other: &Value) -> bool {
        if std::mem::discriminant(self) == std::mem::discriminant(other) && !matches!(self, Value::Str(_)) {
            return self == other;
        }
        self.to_string() == other.to_string()
    }
}

impl From<BundledValue> for Value {
    fn from(b: BundledValue) -> Self {
        match b {
            BundledValue::Presentation(p) => Value::Presentation(p),
            BundledValue::Boundary(b) => Value::Boundary(b),
            BundledValue::Gluing(g) => Value::Glue(g),
            BundledValue::Words(ws) => Value::List(ws.into_iter().map(Value::Word).collect()),
            BundledValue::Knot(k) => Value::Knot(k),
        }
    }
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl IntoIterator<Item = T>) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => f.write_str(s),
            Value::List(items) => list(f, items),
            Value::Unknown(why) => write!(f, "unknown ({why})"),
            Value::Presentation(p) => write!(f, "{p}"),
            Value::Word(w) => write!(f, "{w}"),
            Value::Boundary(b) => {
                write!(f, "boundary of <{}> surface ", b.presentation)?;
                list(f, &b.surface_images)?;
                write!(f, " meridian {}", b.meridian)
            }
            Value::Glue(g) => write!(f, "{g}"),
            Value::Knot(k) => write!(f, "{k}"),
            Value::Abelian(a) => write!(f, "{a}"),
            Value::Class(c) => list(f, &c.coefficients),
            Value::Matrix(m) => write!(f, "{m}"),
            Value::Record(r) => write!(f, "{r}"),
            Value::Lattice(l) => {
                list(f, l.basis())?;
                write!(f, " {}", l.gram())
            }
            Value::Summand(s) => write!(f, "summand {}", s.name),
            Value::FiberSum(d) => write!(f, "fiber sum of {} and {}", d.summands[0].name, d.summands[1].name),
            Value::Verdict { verdict, .. } => write!(f, "{verdict}"),
            Value::Fact(x) => write!(f, "{x}"),
            Value::Report(r) => {
                let lines: Vec<String> = r.conclusions().map(|s| s.to_string()).collect();
                f.write_str(&lines.join("; "))
            }
        }
    }
}
