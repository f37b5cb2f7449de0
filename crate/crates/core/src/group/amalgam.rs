use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{GroupError, Presentation, Word};
use super::word::Generator;

/// Fundamental-group data of a 4-manifold with a surface neighbourhood
/// removed: the group, the images of the 2g surface generators and the
/// meridian of the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub presentation: Presentation,
    pub surface_images: Vec<Word>,
    pub meridian: Word,
}

impl BoundaryData {
    pub fn new(presentation: Presentation, surface_images: Vec<Word>, meridian: Word) -> Result<Self, GroupError> {
        for w in surface_images.iter().chain(std::iter::once(&meridian)) {
            presentation.check_word(w)?;
        }
        Ok(BoundaryData { presentation, surface_images, meridian })
    }

    pub fn surface_generator_count(&self) -> usize {
        self.surface_images.len()
    }
}

/// Van Kampen presentation of a generalized fiber sum.
///
/// Generators of `b` that clash with those of `a` are renamed by appending
/// primes. Matched surface images are identified. With `kill_meridians`
/// both meridians become relators; otherwise the two meridians are
/// identified with each other.
pub fn van_kampen_fiber_sum(
    a: &BoundaryData,
    b: &BoundaryData,
    matching: &[(usize, usize)],
    kill_meridians: bool,
) -> Result<Presentation, GroupError> {
    let n = a.surface_images.len();
    if n != b.surface_images.len() {
        return Err(GroupError::GenusMismatch(n, b.surface_images.len()));
    }
    if matching.len() != n {
        return Err(GroupError::NonBijectiveMatching(format!(
            "{} pairs for {n} surface generators",
            matching.len()
        )));
    }
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for &(i, j) in matching {
        if i >= n || j >= n {
            return Err(GroupError::NonBijectiveMatching(format!("pair ({i}, {j}) out of range")));
        }
        if !left.insert(i) || !right.insert(j) {
            return Err(GroupError::NonBijectiveMatching(format!("index repeated in pair ({i}, {j})")));
        }
    }

    let taken: BTreeSet<&str> = a.presentation.generators().iter().map(Generator::name).collect();
    let mut all: BTreeSet<String> = taken.iter().map(|s| s.to_string()).collect();
    all.extend(b.presentation.generators().iter().map(|g| g.name().to_string()));
    let mut renames = BTreeMap::new();
    for g in b.presentation.generators() {
        if taken.contains(g.name()) {
            let mut fresh = format!("{}'", g.name());
            while all.contains(&fresh) {
                fresh.push('\'');
            }
            all.insert(fresh.clone());
            renames.insert(g.clone(), Generator::new(&fresh));
        }
    }
    let b_pres = b.presentation.rename(&renames)?;
    let b_images: Vec<Word> = b.surface_images.iter().map(|w| w.rename(&renames)).collect();
    let b_meridian = b.meridian.rename(&renames);

    let mut gens = a.presentation.generators().to_vec();
    gens.extend(b_pres.generators().iter().cloned());
    let mut rels = a.presentation.relators().to_vec();
    rels.extend(b_pres.relators().iter().cloned());
    for &(i, j) in matching {
        rels.push(a.surface_images[i].concat(&b_images[j].inverse()));
    }
    if kill_meridians {
        rels.push(a.meridian.clone());
        rels.push(b_meridian);
    } else {
        rels.push(a.meridian.concat(&b_meridian.inverse()));
    }
    let mut notes = a.presentation.notes().to_vec();
    notes.extend(b_pres.notes().iter().cloned());
    let mut p = Presentation::new(gens, rels)?;
    for note in notes {
        p = p.with_note(note);
    }
    Ok(p)
}
