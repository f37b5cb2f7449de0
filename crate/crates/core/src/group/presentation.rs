use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GroupError, Letter, Word};
use super::word::Generator;
use crate::lexer::SyntaxError;

/// Finite presentation `⟨generators | relators⟩`.
///
/// Relators are kept freely reduced; trivial and duplicate relators are
/// dropped on construction.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
    /// Free-form annotations (e.g. relators known to exist but not listed).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(GroupError::DuplicateGenerator(g.name().to_string()));
            }
        }
        for r in &relators {
            if let Some(g) = r.generators().into_iter().find(|g| !seen.contains(g)) {
                return Err(GroupError::UnknownGenerator(g.name().to_string()));
            }
        }
        let mut p = Presentation { generators, relators: Vec::new(), notes: Vec::new() };
        p.push_relators(relators);
        Ok(p)
    }

    /// Builds from generator names and relator text (relations allowed).
    pub fn from_text(generators: &[&str], relations: &[&str]) -> Result<Self, GroupError> {
        let mut rels = Vec::new();
        for r in relations {
            rels.extend(super::text::parse_relation(r)?);
        }
        Presentation::new(generators.iter().map(|g| Generator::new(g)).collect(), rels)
    }

    pub fn free(generators: &[&str]) -> Self {
        Presentation::from_text(generators, &[]).expect("distinct generator names")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn generator_index(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    pub fn has_generator(&self, g: &Generator) -> bool {
        self.generator_index(g).is_some()
    }

    /// Reduces a raw letter sequence, checking every letter is declared.
    pub fn reduce(&self, letters: impl IntoIterator<Item = Letter>) -> Result<Word, GroupError> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        if let Some(l) = letters.iter().find(|l| !self.has_generator(&l.generator)) {
            return Err(GroupError::UnknownGenerator(l.generator.name().to_string()));
        }
        Ok(Word::reduce(letters))
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        match w.generators().into_iter().find(|g| !self.has_generator(g)) {
            Some(g) => Err(GroupError::UnknownGenerator(g.name().to_string())),
            None => Ok(()),
        }
    }

    /// Adds relators, keeping the presentation normalized.
    pub fn quotient(&self, extra: &[Word]) -> Result<Presentation, GroupError> {
        for w in extra {
            self.check_word(w)?;
        }
        let mut p = self.clone();
        p.push_relators(extra.iter().cloned());
        Ok(p)
    }

    fn push_relators(&mut self, rels: impl IntoIterator<Item = Word>) {
        for r in rels {
            if !r.is_identity() && !self.relators.contains(&r) {
                self.relators.push(r);
            }
        }
    }

    /// Relator exponent matrix: rows are relators, columns generators.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| self.exponent_vector(r)).collect()
    }

    pub fn exponent_vector(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.generators.len()];
        for l in w.letters() {
            if let Some(i) = self.generator_index(&l.generator) {
                v[i] += l.sign();
            }
        }
        v
    }

    /// Renames generators (relators follow). Names must stay distinct.
    pub fn rename(&self, names: &BTreeMap<Generator, Generator>) -> Result<Presentation, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|g| names.get(g).cloned().unwrap_or_else(|| g.clone()))
            .collect();
        let mut p = Presentation::new(gens, self.relators.iter().map(|r| r.rename(names)).collect())?;
        p.notes = self.notes.clone();
        Ok(p)
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<Generator>, relators: Vec<Word>, notes: Vec<String>) -> Self {
        let mut p = Presentation { generators, relators: Vec::new(), notes };
        p.push_relators(relators);
        p
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("gens: ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("; rels: ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(";")
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for Presentation {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, SyntaxError> {
        super::text::parse_presentation(s)
    }
}
