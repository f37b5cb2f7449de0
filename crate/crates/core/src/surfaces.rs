//! Homology of a closed genus-g surface, Dehn-twist transvections and
//! Lefschetz-fibration fundamental groups.
//!
//! Conventions: the basis is `(a₁, b₁, …, a_g, b_g)` with `⟨a_i, b_i⟩ = 1`;
//! a twist about `c` acts by `x ↦ x + ⟨x, c⟩ c`; a written product of twists
//! applies its rightmost factor first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, Presentation, Word};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("genus must be at least 1")]
    InvalidGenus,
    #[error("generator `{0}` is not a surface generator")]
    ForeignGenerator(String),
    #[error("class has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a twist sequence needs at least one curve")]
    EmptySequence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceHomology {
    genus: usize,
}

impl SurfaceHomology {
    pub fn new(genus: usize) -> Result<Self, SurfaceError> {
        if genus == 0 {
            return Err(SurfaceError::InvalidGenus);
        }
        Ok(SurfaceHomology { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn basis(&self) -> Vec<String> {
        (1..=self.genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
    }

    /// Intersection pairing matrix `J`, block diagonal with blocks `[[0, 1], [-1, 0]]`.
    pub fn pairing_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut j = Matrix::zeros(self.rank(), self.rank());
        for i in 0..self.genus {
            j[(2 * i, 2 * i + 1)] = T::one();
            j[(2 * i + 1, 2 * i)] = -T::one();
        }
        j
    }

    pub fn pairing<T: Scalar>(&self, x: &HomologyClass<T>, y: &HomologyClass<T>) -> Result<T, SurfaceError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.pairing_matrix::<T>().bilinear(&x.coefficients, &y.coefficients))
    }

    fn check<T>(&self, c: &HomologyClass<T>) -> Result<(), SurfaceError> {
        if c.coefficients.len() == self.rank() {
            Ok(())
        } else {
            Err(SurfaceError::DimensionMismatch { expected: self.rank(), found: c.coefficients.len() })
        }
    }

    /// True when `m` preserves the intersection form: `mᵀ J m = J`.
    pub fn preserves_pairing<T: Scalar>(&self, m: &Matrix<T>) -> bool {
        let j = self.pairing_matrix::<T>();
        m.nrows() == self.rank() && m.is_square() && &(&m.transpose() * &j) * m == j
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass<T> {
    pub coefficients: Vec<T>,
}

impl<T: Scalar> HomologyClass<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        HomologyClass { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        HomologyClass { coefficients: coefficients.iter().map(|&v| <T as Scalar>::from_i64(v)).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        HomologyClass { coefficients: vec![T::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn negate(&self) -> Self {
        HomologyClass { coefficients: self.coefficients.iter().map(|c| -c.clone()).collect() }
    }
}

/// Ordered curves of a monodromy word; the leftmost twist is applied last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSequence<T> {
    curves: Vec<HomologyClass<T>>,
}

impl<T: Scalar> TwistSequence<T> {
    pub fn new(surface: &SurfaceHomology, curves: Vec<HomologyClass<T>>) -> Result<Self, SurfaceError> {
        if curves.is_empty() {
            return Err(SurfaceError::EmptySequence);
        }
        for c in &curves {
            surface.check(c)?;
        }
        Ok(TwistSequence { curves })
    }

    pub fn curves(&self) -> &[HomologyClass<T>] {
        &self.curves
    }

    /// The sequence whose composite is the inverse: reversed order, each
    /// twist inverted. A transvection's inverse is not itself a
    /// transvection, so the inverse is returned as matrices.
    pub fn inverse_matrices(&self, surface: &SurfaceHomology) -> Result<Vec<Matrix<T>>, SurfaceError> {
        self.curves.iter().rev().map(|c| inverse_transvection(c, surface)).collect()
    }
}

/// Homology class of a word in the surface generators (exponent sums).
pub fn class_of_word<T: Scalar>(w: &Word, surface: &SurfaceHomology) -> Result<HomologyClass<T>, SurfaceError> {
    let basis = surface.basis();
    let mut coeffs = vec![T::zero(); basis.len()];
    for l in w.letters() {
        let i = basis
            .iter()
            .position(|b| b == l.generator.name())
            .ok_or_else(|| SurfaceError::ForeignGenerator(l.generator.name().to_string()))?;
        coeffs[i] = coeffs[i].clone() + <T as Scalar>::from_i64(l.sign());
    }
    Ok(HomologyClass { coefficients: coeffs })
}

/// Matrix of `x ↦ x + ⟨x, c⟩ c`, i.e. `I + c (J c)ᵀ`.
pub fn transvection<T: Scalar>(c: &HomologyClass<T>, surface: &SurfaceHomology) -> Result<Matrix<T>, SurfaceError> {
    twist_matrix(c, surface, T::one())
}

fn inverse_transvection<T: Scalar>(c: &HomologyClass<T>, surface: &SurfaceHomology) -> Result<Matrix<T>, SurfaceError> {
    twist_matrix(c, surface, -T::one())
}

fn twist_matrix<T: Scalar>(c: &HomologyClass<T>, surface: &SurfaceHomology, sign: T) -> Result<Matrix<T>, SurfaceError> {
    surface.check(c)?;
    let n = surface.rank();
    let jc = surface.pairing_matrix::<T>().apply(&c.coefficients);
    let mut m: Matrix<T> = Matrix::identity(n);
    for i in 0..n {
        for k in 0..n {
            let v = m[(i, k)].clone() + sign.clone() * c.coefficients[i].clone() * jc[k].clone();
            m[(i, k)] = v;
        }
    }
    Ok(m)
}

/// Composite of a twist sequence, rightmost curve applied first.
pub fn compose<T: Scalar>(seq: &TwistSequence<T>, surface: &SurfaceHomology) -> Result<Matrix<T>, SurfaceError> {
    let mut m = Matrix::identity(surface.rank());
    for c in seq.curves() {
        m = &m * &transvection(c, surface)?;
    }
    Ok(m)
}

/// Standard one-relator presentation of the closed genus-g surface group.
pub fn surface_group(genus: usize) -> Result<Presentation, SurfaceError> {
    let s = SurfaceHomology::new(genus)?;
    let names = s.basis();
    let relator = (0..genus).fold(Word::identity(), |acc, i| {
        acc.concat(&Word::commutator(&Word::generator(names[2 * i].as_str()), &Word::generator(names[2 * i + 1].as_str())))
    });
    let gens = names.iter().map(|n| n.as_str().into()).collect();
    Ok(Presentation::new(gens, vec![relator]).expect("surface generators are distinct"))
}

/// `π₁` of a Lefschetz fibration over the sphere: the fiber group modulo
/// the vanishing cycles.
pub fn lefschetz_pi1(genus: usize, cycles: &[Word]) -> Result<Presentation, LefschetzError> {
    let p = surface_group(genus)?;
    Ok(p.quotient(cycles)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelianize, is_trivial, Triviality};

    fn genus2() -> SurfaceHomology {
        SurfaceHomology::new(2).unwrap()
    }

    fn class(w: &str) -> HomologyClass<i64> {
        class_of_word(&Word::parse(w).unwrap(), &genus2()).unwrap()
    }

    #[test]
    fn classes_of_curve_words() {
        assert!(class("a1*b1*a1^-1*b1^-1").is_zero());
        assert_eq!(class("b1*b2"), HomologyClass::from_i64(&[0, 1, 0, 1]));
        assert_eq!(class("b2*a2*a1*b1"), HomologyClass::from_i64(&[1, 1, 1, 1]));
        assert_eq!(
            class_of_word::<i64>(&Word::parse("a3").unwrap(), &genus2()).unwrap_err(),
            SurfaceError::ForeignGenerator("a3".into())
        );
    }

    #[test]
    fn transvection_of_b1_b2() {
        let s = genus2();
        let m = transvection(&class("b1*b2"), &s).unwrap();
        // a1 ↦ a1 + b1 + b2
        assert_eq!(m.column(0), vec![1, 1, 0, 1]);
        // b1 pairs to zero with b1 + b2 and is fixed
        assert_eq!(m.column(1), vec![0, 1, 0, 0]);
        assert_eq!(transvection(&HomologyClass::<i64>::zero(4), &s).unwrap(), Matrix::identity(4));
        assert!(transvection(&HomologyClass::<i64>::zero(3), &s).is_err());
    }

    #[test]
    fn lefschetz_quotients() {
        assert_eq!(abelianize(&lefschetz_pi1(2, &[]).unwrap()).free_rank, 4);
        let all: Vec<Word> = ["a1", "b1", "a2", "b2"].iter().map(|g| Word::generator(*g)).collect();
        let p = lefschetz_pi1(2, &all).unwrap();
        assert_eq!(is_trivial(&p, 100).unwrap(), Triviality::Trivial);
        assert!(lefschetz_pi1(2, &[Word::generator("q")]).is_err());
    }

    #[test]
    fn inverse_sequence_cancels() {
        let s = genus2();
        let seq = TwistSequence::new(&s, vec![class("b1*b2"), class("a1"), class("b2*a2*a1*b1")]).unwrap();
        let m = compose(&seq, &s).unwrap();
        let inv = seq.inverse_matrices(&s).unwrap();
        let back = inv.iter().fold(m, |acc, t| &acc * t);
        assert_eq!(back, Matrix::identity(4));
    }
}
