use std::fmt;

use serde::{Deserialize, Serialize};

use super::ManifoldError;

/// What is declared about one summand of a symplectic fiber sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub name: String,
    /// An embedded symplectic sphere of square −1 in the complement of the
    /// summing surface.
    pub minus_one_sphere_off_surface: bool,
    /// The summand is an S²-bundle over a surface and the summing surface
    /// is a section.
    pub sphere_bundle_with_section: bool,
    /// Declared minimality of the summand itself, if known.
    pub minimal: Option<bool>,
}

impl Summand {
    pub fn new(name: impl Into<String>) -> Self {
        Summand { name: name.into(), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSumDescription {
    pub summands: [Summand; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MinimalityVerdict {
    Minimal,
    NotMinimal,
    /// Minimal exactly when the named summand is.
    ConditionallyMinimal(String),
}

impl fmt::Display for MinimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalityVerdict::Minimal => f.write_str("minimal"),
            MinimalityVerdict::NotMinimal => f.write_str("not minimal"),
            MinimalityVerdict::ConditionallyMinimal(s) => write!(f, "minimal iff {s} is minimal"),
        }
    }
}

/// Minimality of a symplectic fiber sum from the three-case criterion:
/// a −1-sphere off the surface in either summand makes the sum non-minimal;
/// an S²-bundle summand with the surface as a section defers to the other
/// summand; otherwise the sum is minimal.
pub fn usher_minimality(d: &FiberSumDescription) -> Result<MinimalityVerdict, ManifoldError> {
    for s in &d.summands {
        if s.minus_one_sphere_off_surface && s.minimal == Some(true) {
            return Err(ManifoldError::ContradictoryDeclarations(format!(
                "{} is declared minimal but contains a -1-sphere",
                s.name
            )));
        }
    }
    if d.summands.iter().any(|s| s.minus_one_sphere_off_surface) {
        return Ok(MinimalityVerdict::NotMinimal);
    }
    if let Some(i) = d.summands.iter().position(|s| s.sphere_bundle_with_section) {
        let other = &d.summands[1 - i];
        return Ok(MinimalityVerdict::ConditionallyMinimal(other.name.clone()));
    }
    Ok(MinimalityVerdict::Minimal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(a: Summand, b: Summand) -> FiberSumDescription {
        FiberSumDescription { summands: [a, b] }
    }

    #[test]
    fn three_cases() {
        let plain = desc(Summand::new("X_K"), Summand::new("Z"));
        assert_eq!(usher_minimality(&plain).unwrap(), MinimalityVerdict::Minimal);

        let mut z = Summand::new("Z");
        z.minus_one_sphere_off_surface = true;
        assert_eq!(usher_minimality(&desc(Summand::new("A"), z)).unwrap(), MinimalityVerdict::NotMinimal);

        let mut bundle = Summand::new("S2xT2");
        bundle.sphere_bundle_with_section = true;
        assert_eq!(
            usher_minimality(&desc(bundle, Summand::new("W"))).unwrap(),
            MinimalityVerdict::ConditionallyMinimal("W".into())
        );
    }

    #[test]
    fn contradiction() {
        let mut s = Summand::new("A");
        s.minus_one_sphere_off_surface = true;
        s.minimal = Some(true);
        assert!(matches!(
            usher_minimality(&desc(s, Summand::new("B"))),
            Err(ManifoldError::ContradictoryDeclarations(_))
        ));
    }
}
