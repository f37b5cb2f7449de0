//! Bundled presentations, boundary data and gluing maps, plus the small
//! operations that build 3- and 4-manifold groups from knot data.
//!
//! The data ships as `.exo` scripts under `data/` and is evaluated the
//! first time it is asked for.

mod registry;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{abelianization, van_kampen_fiber_sum, BoundaryData, Generator, GroupError, Presentation, Word};

pub use registry::{bundled, bundled_names, BundledItem, BundledValue, BUNDLED_NAMES};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unknown knot `{0}` (expected trefoil or figure8)")]
    UnknownKnot(String),
    #[error("no bundled item named `{0}`")]
    UnknownBundled(String),
    #[error("bundled item `{0}` is a {1}, not a {2}")]
    WrongKind(String, &'static str, &'static str),
    #[error("bundled data is malformed: {0}")]
    Data(String),
    #[error("gluing map: {0}")]
    Gluing(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Copied from the source construction.
    Transcribed,
    /// Textbook data not stated in the source construction.
    Standard,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Transcribed => "transcribed",
            Provenance::Standard => "standard",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub group: Presentation,
    pub meridian: Word,
    pub longitude: Word,
    pub fibered_genus: u32,
    pub provenance: Provenance,
}

impl KnotRecord {
    pub fn new(
        name: impl Into<String>,
        group: Presentation,
        meridian: Word,
        longitude: Word,
        fibered_genus: u32,
        provenance: Provenance,
    ) -> Result<Self, ConstructionError> {
        group.check_word(&meridian)?;
        group.check_word(&longitude)?;
        let name = name.into();
        if !abelianization(&group).is_null_homologous(&longitude) {
            return Err(ConstructionError::Data(format!("longitude of {name} is not nullhomologous")));
        }
        Ok(KnotRecord { name, group, meridian, longitude, fibered_genus, provenance })
    }
}

impl fmt::Display for KnotRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> meridian {} longitude {}", self.name, self.group, self.meridian, self.longitude)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeridianImage {
    /// The meridian bounds a disk on the other side.
    Trivial,
    /// Meridian goes to meridian.
    Meridian,
}

/// Action of a gluing diffeomorphism on fundamental-group generators of
/// the boundary `Σ × S¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingMap {
    pub assignments: Vec<(Word, Word)>,
    pub meridian_image: MeridianImage,
}

impl GluingMap {
    /// Index pairs into the surface images of `a` and `b`.
    pub fn matching(&self, a: &BoundaryData, b: &BoundaryData) -> Result<Vec<(usize, usize)>, ConstructionError> {
        let find = |images: &[Word], w: &Word, side: &str| {
            images
                .iter()
                .position(|x| x == w)
                .ok_or_else(|| ConstructionError::Gluing(format!("`{w}` is not a surface generator of the {side} side")))
        };
        if self.assignments.len() != a.surface_images.len() {
            return Err(ConstructionError::Gluing(format!(
                "{} assignments for {} surface generators",
                self.assignments.len(),
                a.surface_images.len()
            )));
        }
        self.assignments
            .iter()
            .map(|(s, t)| Ok((find(&a.surface_images, s, "source")?, find(&b.surface_images, t, "target")?)))
            .collect()
    }

    /// π₁ of the glued manifold by Van Kampen.
    pub fn glue(&self, a: &BoundaryData, b: &BoundaryData) -> Result<Presentation, ConstructionError> {
        let matching = self.matching(a, b)?;
        Ok(van_kampen_fiber_sum(a, b, &matching, self.meridian_image == MeridianImage::Trivial)?)
    }
}

impl fmt::Display for GluingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("glue { ")?;
        for (i, (s, t)) in self.assignments.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s} -> {t}")?;
        }
        let m = match self.meridian_image {
            MeridianImage::Trivial => "1",
            MeridianImage::Meridian => "meridian",
        };
        write!(f, "; meridian -> {m} }}")
    }
}

pub fn knot(name: &str) -> Result<KnotRecord, ConstructionError> {
    match name {
        "trefoil" | "figure8" => match bundled(name)?.value.clone() {
            BundledValue::Knot(k) => Ok(k),
            other => Err(ConstructionError::WrongKind(name.into(), other.kind(), "knot")),
        },
        _ => Err(ConstructionError::UnknownKnot(name.to_string())),
    }
}

/// π₁ of 0-surgery: the knot group with the longitude killed.
pub fn zero_surgery(k: &KnotRecord) -> Presentation {
    k.group
        .quotient(std::slice::from_ref(&k.longitude))
        .expect("longitude is checked against the knot group")
}

/// Product with a circle: a fresh central generator.
pub fn cross_circle(p: &Presentation) -> Presentation {
    let taken: BTreeSet<&str> = p.generators().iter().map(Generator::name).collect();
    let mut name = String::from("x");
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    let x = Generator::new(&name);
    let mut gens = p.generators().to_vec();
    let xw = Word::generator(x.name());
    let mut rels = p.relators().to_vec();
    rels.extend(gens.iter().map(|g| Word::commutator(&xw, &Word::generator(g.name()))));
    gens.push(x);
    Presentation::new(gens, rels).expect("fresh generator")
}
