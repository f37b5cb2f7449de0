use exotica::group::Word;
use exotica::matrix::Matrix;
use exotica::surfaces::{class_of_word, compose, transvection, HomologyClass, SurfaceHomology, TwistSequence};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Standard symplectic form on (a1, b1, a2, b2), written out by hand.
fn j4() -> Matrix<i64> {
    Matrix::from_i64_rows(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]])
}

fn is_symplectic(m: &Matrix<i64>) -> bool {
    &(&m.transpose() * &j4()) * m == j4()
}

#[test]
fn transvections_of_random_classes_are_symplectic() {
    let s = SurfaceHomology::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..150 {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
        let m = transvection(&HomologyClass::new(c.clone()), &s).unwrap();
        assert!(is_symplectic(&m), "class {c:?}");
        // x ↦ x + <x, c> c computed directly
        let x: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
        let pairing = x[0] * c[1] - x[1] * c[0] + x[2] * c[3] - x[3] * c[2];
        let expect: Vec<i64> = x.iter().zip(&c).map(|(xi, ci)| xi + pairing * ci).collect();
        assert_eq!(m.apply(&x), expect);
    }
}

#[test]
fn matsumoto_monodromy_is_an_involution() {
    let s = SurfaceHomology::new(2).unwrap();
    let words = ["b1*b2", "[a1, b1]", "b2*a2*b2^-1*a1", "b2*a2*a1*b1"];
    let classes: Vec<HomologyClass<i64>> =
        words.iter().map(|w| class_of_word(&Word::parse(w).unwrap(), &s).unwrap()).collect();
    let expected = [[0, 1, 0, 1], [0, 0, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]];
    for (c, e) in classes.iter().zip(expected) {
        assert_eq!(c.coefficients, e);
    }
    let m = compose(&TwistSequence::new(&s, classes).unwrap(), &s).unwrap();
    let swap = Matrix::from_i64_rows(&[&[0, 0, -1, 0], &[0, 0, 0, -1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
    assert_eq!(m, swap);
    assert_eq!(m.pow(2), Matrix::identity(4));
}

proptest! {
    #[test]
    fn products_of_transvections_preserve_pairing(
        curves in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 4), 1..6)
    ) {
        let s = SurfaceHomology::new(2).unwrap();
        let seq = TwistSequence::new(&s, curves.into_iter().map(HomologyClass::new).collect()).unwrap();
        let m = compose(&seq, &s).unwrap();
        prop_assert!(is_symplectic(&m));
        prop_assert!(s.preserves_pairing(&m));
        prop_assert_eq!(m.determinant(), 1);
    }
}
