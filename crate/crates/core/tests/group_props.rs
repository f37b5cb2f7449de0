use exotica::constructions::{bundled, BundledValue};
use exotica::group::{
    abelianize, coset_enumerate, defining_word, tietze_eliminate, Generator, Presentation, Word,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bundled_presentations() -> Vec<(String, Presentation)> {
    ["C_B", "C_F", "trefoil_uv", "Y_K", "X_K_complement", "Z_complement", "trefoil", "figure8"]
        .iter()
        .map(|n| {
            let p = match &bundled(n).unwrap().value {
                BundledValue::Presentation(p) => p.clone(),
                BundledValue::Boundary(b) => b.presentation.clone(),
                BundledValue::Knot(k) => k.group.clone(),
                other => panic!("{n} is a {}", other.kind()),
            };
            (n.to_string(), p)
        })
        .collect()
}

#[test]
fn bundled_presentations_round_trip_through_text() {
    for (name, p) in bundled_presentations() {
        let text = p.to_string();
        let again: Presentation = text.parse().unwrap();
        assert_eq!(again.to_string(), text, "{name}");
    }
}

#[test]
fn random_tietze_eliminations_keep_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pool = bundled_presentations();
    let mut done = 0;
    let mut attempts = 0;
    while done < 50 {
        attempts += 1;
        assert!(attempts < 10_000, "too few eliminable generators");
        let (name, mut p) = pool.choose(&mut rng).unwrap().clone();
        let before = abelianize(&p);
        // a short random chain of eliminations
        for _ in 0..3 {
            let candidates: Vec<(Generator, Word)> = p
                .generators()
                .iter()
                .filter_map(|g| defining_word(&p, g).map(|w| (g.clone(), w)))
                .collect();
            let Some((g, w)) = candidates.choose(&mut rng).cloned() else { break };
            p = tietze_eliminate(&p, &g, &w).unwrap();
            assert_eq!(abelianize(&p), before, "{name} after eliminating {g}");
            done += 1;
        }
    }
}

#[test]
fn tietze_reduces_z_presentation_to_two_generators() {
    let p = Presentation::from_text(&["a1", "b1", "a2", "b2"], &["b1*b2 = [a1, b1] = [a2, b2] = b2*a2*b2^-1*a1 = 1"])
        .unwrap();
    let q = tietze_eliminate(&p, &Generator::new("b2"), &Word::parse("b1^-1").unwrap()).unwrap();
    let r = tietze_eliminate(&q, &Generator::new("a1"), &Word::parse("b1^-1*a2^-1*b1").unwrap()).unwrap();
    let names: Vec<&str> = r.generators().iter().map(Generator::name).collect();
    assert_eq!(names, ["b1", "a2"]);
    assert_eq!(abelianize(&r).to_string(), "Z^2");
    assert!(r.relators().iter().all(|w| w.is_cyclic_conjugate_of(&Word::parse("[a2, b1]").unwrap())
        || w.inverse().is_cyclic_conjugate_of(&Word::parse("[a2, b1]").unwrap())));
}

#[test]
fn complete_tables_pass_audit() {
    // A5, A5 over a cyclic 3-subgroup, A4 over a cyclic 2-subgroup, Q16
    let cases: Vec<(Presentation, Vec<Word>, usize)> = vec![
        (Presentation::from_text(&["a", "b"], &["a^2", "b^3", "(a*b)^5"]).unwrap(), vec![], 60),
        (Presentation::from_text(&["a", "b"], &["a^2", "b^3", "(a*b)^5"]).unwrap(), vec![Word::parse("b").unwrap()], 20),
        (Presentation::from_text(&["a", "b"], &["a^3", "b^3", "(a*b)^2"]).unwrap(), vec![Word::parse("a*b").unwrap()], 6),
        (Presentation::from_text(&["a", "b"], &["a^8", "b^2*a^4", "b*a*b^-1*a"]).unwrap(), vec![], 16),
    ];
    for (p, h, index) in cases {
        let t = coset_enumerate(&p, &h, 100_000).unwrap();
        assert!(t.is_complete(), "{p}");
        assert_eq!(t.index(), Some(index), "{p}");
        assert!(t.verify(&p, &h), "{p}");
    }
}

#[test]
fn trefoil_presentations_agree_on_finite_quotients() {
    let wirtinger = Presentation::from_text(&["a", "b"], &["a*b*a = b*a*b", "a*b^2*a*b^-4"]).unwrap();
    let uv = Presentation::from_text(&["u", "v"], &["u^2 = v^3", "u^2*(u*v^-1)^-6"]).unwrap();
    assert_eq!(abelianize(&wirtinger), abelianize(&uv));
    // meridian m = b = u v^-1; killing m^n for n not divisible by 6 leaves a
    // finite group
    for n in 1..=5 {
        let w = wirtinger.quotient(&[Word::parse("b").unwrap().pow(n)]).unwrap();
        let u = uv.quotient(&[Word::parse("u*v^-1").unwrap().pow(n)]).unwrap();
        let tw = coset_enumerate(&w, &[], 200_000).unwrap();
        let tu = coset_enumerate(&u, &[], 200_000).unwrap();
        assert!(tw.is_complete() && tu.is_complete(), "n = {n}");
        assert_eq!(tw.index(), tu.index(), "n = {n}");
    }
}

fn letters() -> impl Strategy<Value = Vec<(usize, bool)>> {
    proptest::collection::vec((0usize..3, any::<bool>()), 0..24)
}

fn word_of(spec: &[(usize, bool)]) -> Word {
    let names = ["a", "b", "c"];
    let mut w = Word::identity();
    for &(g, inv) in spec {
        let x = Word::generator(names[g]);
        w = w.concat(&if inv { x.inverse() } else { x });
    }
    w
}

proptest! {
    #[test]
    fn words_form_a_group(x in letters(), y in letters(), z in letters()) {
        let (x, y, z) = (word_of(&x), word_of(&y), word_of(&z));
        prop_assert!(x.concat(&x.inverse()).is_identity());
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        prop_assert_eq!(x.concat(&y).concat(&z), x.concat(&y.concat(&z)));
        prop_assert_eq!(x.concat(&y).inverse(), y.inverse().concat(&x.inverse()));
        let text = x.to_string();
        prop_assert_eq!(Word::parse(&text).unwrap(), x);
    }

    #[test]
    fn reduced_words_have_no_cancelling_neighbours(x in letters()) {
        let w = word_of(&x);
        prop_assert!(w.letters().windows(2).all(|p| !p[0].cancels(&p[1])));
    }

    #[test]
    fn cyclic_rotations_are_conjugates(x in letters(), k in 0usize..24) {
        let w = word_of(&x).cyclically_reduced();
        if !w.is_empty() {
            let r = w.rotate(k % w.len());
            prop_assert!(r.is_cyclic_conjugate_of(&w));
        }
    }
}
