use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Generator symbol of a free group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Generator {
    fn from(s: &str) -> Self {
        Generator::new(s)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<Generator>, inverse: bool) -> Self {
        Letter { generator: generator.into(), inverse }
    }

    pub fn inv(&self) -> Letter {
        Letter { generator: self.generator.clone(), inverse: !self.inverse }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in a free group. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: impl Into<Generator>) -> Self {
        Word { letters: vec![Letter::new(g, false)] }
    }

    /// Free reduction of an arbitrary letter sequence (stack-based, so the
    /// result does not depend on the order in which cancellations are made).
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|top| top.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Parses `a*b^-1*[x,b]` style text.
    pub fn parse(text: &str) -> Result<Self, crate::lexer::SyntaxError> {
        super::text::parse_word(text)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inv).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(&other.letters).cloned())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(g: &Word, h: &Word) -> Word {
        Word::reduce(
            g.letters
                .iter()
                .chain(&h.letters)
                .cloned()
                .chain(g.inverse().letters)
                .chain(h.inverse().letters),
        )
    }

    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters.iter().filter(|l| &l.generator == g).map(Letter::sign).sum()
    }

    pub fn occurrences(&self, g: &Generator) -> usize {
        self.letters.iter().filter(|l| &l.generator == g).count()
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.letters.iter().map(|l| l.generator.clone()).collect()
    }

    pub fn involves(&self, g: &Generator) -> bool {
        self.letters.iter().any(|l| &l.generator == g)
    }

    /// Replaces every occurrence of `g` by `image` (and `g⁻¹` by its inverse).
    pub fn substitute(&self, g: &Generator, image: &Word) -> Word {
        let inv = image.inverse();
        Word::reduce(self.letters.iter().flat_map(|l| {
            if &l.generator == g {
                if l.inverse { inv.letters.clone() } else { image.letters.clone() }
            } else {
                vec![l.clone()]
            }
        }))
    }

    /// Applies a homomorphism given on generators; unmapped generators are kept.
    pub fn map_generators(&self, images: &BTreeMap<Generator, Word>) -> Word {
        Word::reduce(self.letters.iter().flat_map(|l| match images.get(&l.generator) {
            Some(w) if l.inverse => w.inverse().letters,
            Some(w) => w.letters.clone(),
            None => vec![l.clone()],
        }))
    }

    pub fn rename(&self, names: &BTreeMap<Generator, Generator>) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    generator: names.get(&l.generator).cloned().unwrap_or_else(|| l.generator.clone()),
                    inverse: l.inverse,
                })
                .collect(),
        }
    }

    /// Removes matching letter pairs from the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi >= lo + 2 && self.letters[lo].cancels(&self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word { letters: self.letters[lo..hi].to_vec() }
    }

    /// Cyclic rotation starting at `start`, freely reduced.
    pub fn rotate(&self, start: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::identity();
        }
        Word::reduce((0..n).map(|k| self.letters[(start + k) % n].clone()))
    }

    /// True when `other` is a cyclic permutation of `self` or of its inverse,
    /// after cyclic reduction of both.
    pub fn is_cyclic_conjugate_of(&self, other: &Word) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let b_inv = b.inverse();
        (0..a.len()).any(|k| {
            let r = a.rotate(k);
            r == b || r == b_inv
        })
    }

    /// Run-length encoding `(generator, exponent)` used by the text form.
    pub fn syllables(&self) -> Vec<(Generator, i64)> {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.generator => *e += l.sign(),
                _ => out.push((l.generator.clone(), l.sign())),
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.syllables().into_iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                1 => write!(f, "{g}")?,
                e => write!(f, "{g}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn raw(spec: &[(&str, bool)]) -> Vec<Letter> {
        spec.iter().map(|&(g, inv)| Letter::new(g, inv)).collect()
    }

    #[test]
    fn cancellation_to_identity() {
        assert!(Word::reduce(raw(&[("a", false), ("a", true)])).is_identity());
    }

    #[test]
    fn inner_cancellation() {
        let r = Word::reduce(raw(&[("a", false), ("b", false), ("b", true), ("a", false)]));
        assert_eq!(r, w("a^2"));
    }

    #[test]
    fn reduced_word_is_fixed() {
        let x = w("a*b^-1*a*c");
        assert_eq!(Word::reduce(x.letters().to_vec()), x);
    }

    #[test]
    fn commutator_conventions() {
        let (a, b) = (w("a"), w("b"));
        assert!(Word::commutator(&a, &a).is_identity());
        assert_eq!(Word::commutator(&a, &b).to_string(), "a*b*a^-1*b^-1");
    }

    #[test]
    fn substitution() {
        let r = w("c*a*c^-1");
        assert_eq!(r.substitute(&"c".into(), &w("a*b")), w("a*b*a*b^-1*a^-1"));
    }

    #[test]
    fn cyclic_conjugacy() {
        assert!(w("b1*b2").is_cyclic_conjugate_of(&w("b2*b1")));
        assert!(w("a*b*c").is_cyclic_conjugate_of(&w("c^-1*b^-1*a^-1")));
        assert!(!w("x*a*b*a^-1").is_cyclic_conjugate_of(&w("x*b")));
        assert!(!w("a*b").is_cyclic_conjugate_of(&w("a*b^-1")));
    }

    #[test]
    fn display_groups_runs() {
        assert_eq!(w("a*b*b*a*b^-4").to_string(), "a*b^2*a*b^-4");
        assert_eq!(Word::identity().to_string(), "1");
    }
}
