use super::{GroupError, Presentation, Word};
use super::word::Generator;

/// Removes `gen` using a relator equivalent to `gen · defining⁻¹`, replacing
/// every other occurrence of `gen` by `defining`.
pub fn tietze_eliminate(p: &Presentation, gen: &Generator, defining: &Word) -> Result<Presentation, GroupError> {
    if !p.has_generator(gen) {
        return Err(GroupError::UnknownGenerator(gen.name().to_string()));
    }
    p.check_word(defining)?;
    if defining.involves(gen) {
        return Err(GroupError::NoDefiningRelator(gen.name().to_string()));
    }
    let target = Word::generator(gen.clone()).concat(&defining.inverse());
    let pos = p
        .relators()
        .iter()
        .position(|r| r.is_cyclic_conjugate_of(&target))
        .ok_or_else(|| GroupError::NoDefiningRelator(gen.name().to_string()))?;
    let gens: Vec<Generator> = p.generators().iter().filter(|g| *g != gen).cloned().collect();
    let rels: Vec<Word> = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, r)| r.substitute(gen, defining))
        .collect();
    Ok(Presentation::from_parts_unchecked(gens, rels, p.notes().to_vec()))
}

/// Finds the first relator in which `gen` occurs exactly once and solves it
/// for `gen`.
pub fn defining_word(p: &Presentation, gen: &Generator) -> Option<Word> {
    p.relators().iter().find(|r| r.occurrences(gen) == 1).map(|r| {
        let k = r.letters().iter().position(|l| &l.generator == gen).expect("occurs once");
        let rotated = r.rotate(k);
        // rotated = gen^ε · rest
        let inverse = rotated.letters()[0].inverse;
        let rest = Word::reduce(rotated.letters()[1..].iter().cloned());
        if inverse {
            rest
        } else {
            rest.inverse()
        }
    })
}

pub fn tietze_eliminate_auto(p: &Presentation, gen: &Generator) -> Result<Presentation, GroupError> {
    let w = defining_word(p, gen).ok_or_else(|| GroupError::NoDefiningRelator(gen.name().to_string()))?;
    tietze_eliminate(p, gen, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelianize;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn eliminate_simple() {
        let p = Presentation::from_text(&["a", "b"], &["b*a^-1"]).unwrap();
        let q = tietze_eliminate(&p, &"b".into(), &w("a")).unwrap();
        assert_eq!(q.to_string(), "gens: a; rels: ;");
    }

    #[test]
    fn eliminate_by_substitution() {
        let p = Presentation::from_text(&["a", "b", "c"], &["c*(a*b)^-1", "c^3*a"]).unwrap();
        let q = tietze_eliminate(&p, &"c".into(), &w("a*b")).unwrap();
        let expected = Presentation::from_text(&["a", "b"], &["(a*b)^3*a"]).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn missing_defining_relator() {
        let p = Presentation::from_text(&["a", "b"], &["a^2"]).unwrap();
        assert_eq!(
            tietze_eliminate(&p, &"b".into(), &w("a")).unwrap_err(),
            GroupError::NoDefiningRelator("b".into())
        );
        assert!(tietze_eliminate(&p, &"b".into(), &w("b*a")).is_err());
    }

    #[test]
    fn solved_word_matches_relator() {
        let p = Presentation::from_text(&["a", "b", "c"], &["a*c^-1*b"]).unwrap();
        let d = defining_word(&p, &"c".into()).unwrap();
        assert_eq!(d, w("b*a"));
        let q = tietze_eliminate_auto(&p, &"c".into()).unwrap();
        assert_eq!(abelianize(&q), abelianize(&p));
    }
}
