use serde::{Deserialize, Serialize};

use super::ManifoldError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Integral second homology with its intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionLattice<T> {
    basis: Vec<String>,
    gram: Matrix<T>,
}

impl<T: Scalar> IntersectionLattice<T> {
    pub fn new(basis: Vec<String>, gram: Matrix<T>) -> Result<Self, ManifoldError> {
        if gram.nrows() != basis.len() || gram.ncols() != basis.len() {
            return Err(ManifoldError::DimensionMismatch { expected: basis.len(), found: gram.nrows() });
        }
        if !gram.is_symmetric() {
            return Err(ManifoldError::NotSymmetric);
        }
        Ok(IntersectionLattice { basis, gram })
    }

    /// `H ⊕ H ⊕ … ⊕ ⟨±1⟩ …` style lattices are easiest to state by blocks;
    /// this builds the orthogonal sum of `self` and `other`.
    pub fn orthogonal_sum(&self, other: &IntersectionLattice<T>) -> Result<Self, ManifoldError> {
        let n = self.rank();
        let m = other.rank();
        let mut g = Matrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        IntersectionLattice::new(basis, g)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    fn check(&self, v: &[T]) -> Result<(), ManifoldError> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(ManifoldError::DimensionMismatch { expected: self.rank(), found: v.len() })
        }
    }

    /// `xᵀ · gram · y`.
    pub fn pairing(&self, x: &[T], y: &[T]) -> Result<T, ManifoldError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.gram.bilinear(x, y))
    }

    pub fn square(&self, x: &[T]) -> Result<T, ManifoldError> {
        self.pairing(x, x)
    }

    /// Parses a linear combination such as `2T + S - E1 - E2`.
    pub fn class(&self, expr: &str) -> Result<Vec<T>, ManifoldError> {
        let bad = || ManifoldError::BadClassExpression(expr.to_string());
        let mut v = vec![T::zero(); self.rank()];
        let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(v);
        }
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(bad()),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let digits: String = term.chars().take_while(char::is_ascii_digit).collect();
            let symbol = term[digits.len()..].trim_start_matches('*');
            if symbol.is_empty() {
                return Err(bad());
            }
            let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let i = self
                .basis
                .iter()
                .position(|b| b == symbol)
                .ok_or_else(|| ManifoldError::UnknownClassSymbol(symbol.to_string()))?;
            let c = <T as Scalar>::from_i64(if negative { -coeff } else { coeff });
            v[i] = v[i].clone() + c;
        }
        Ok(v)
    }

    /// Genus of an embedded symplectic (or complex) curve in class `c`,
    /// `1 + (K·C + C²)/2`.
    pub fn adjunction_genus(&self, c: &[T], canonical: &[T]) -> Result<T, ManifoldError> {
        let total = self.pairing(canonical, c)? + self.square(c)?;
        let two = <T as Scalar>::from_i64(2);
        if !(total.clone() % two.clone()).is_zero() {
            return Err(ManifoldError::ParityViolation(total.to_string()));
        }
        Ok(T::one() + total / two)
    }

    /// Number of the given classes that have square −1 and pair to zero
    /// with `surface`.
    pub fn exceptional_disjoint_from(&self, surface: &[T], classes: &[Vec<T>]) -> Result<usize, ManifoldError> {
        let mut count = 0;
        for e in classes {
            if self.square(e)? == -T::one() && self.pairing(e, surface)?.is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `⟨T, S⟩` hyperbolic plus four `⟨−1⟩` summands.
    fn blown_up_torus_bundle() -> IntersectionLattice<i64> {
        let basis = ["T", "S", "E1", "E2", "E3", "E4"].map(String::from).to_vec();
        let mut g = Matrix::zeros(6, 6);
        g[(0, 1)] = 1;
        g[(1, 0)] = 1;
        for i in 2..6 {
            g[(i, i)] = -1;
        }
        IntersectionLattice::new(basis, g).unwrap()
    }

    #[test]
    fn canonical_square_and_fiber_square() {
        let l = blown_up_torus_bundle();
        let k = l.class("2T + E1 + E2 + E3 + E4").unwrap();
        assert_eq!(l.square(&k).unwrap(), -4);
        let f = l.class("2T + S - E1 - E2 - E3 - E4").unwrap();
        assert_eq!(l.square(&f).unwrap(), 0);
        // The computed K·F; see the design notes on the adjunction mismatch.
        assert_eq!(l.pairing(&k, &f).unwrap(), 6);
        assert_eq!(l.adjunction_genus(&f, &k).unwrap(), 4);
        let es: Vec<Vec<i64>> = (1..=4).map(|i| l.class(&format!("E{i}")).unwrap()).collect();
        assert_eq!(l.exceptional_disjoint_from(&f, &es).unwrap(), 0);
    }

    #[test]
    fn adjunction_examples() {
        // blown-up projective plane: H² = 1, E² = −1, K = −3H + E
        let l = IntersectionLattice::<i64>::new(vec!["H".into(), "E".into()], Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]))
            .unwrap();
        let k = l.class("-3H + E").unwrap();
        let e = l.class("E").unwrap();
        assert_eq!(l.pairing(&k, &e).unwrap(), -1);
        assert_eq!(l.adjunction_genus(&e, &k).unwrap(), 0);
        // a line: K·H + H² = −3 + 1 = −2, genus 0; a cubic has genus 1
        assert_eq!(l.adjunction_genus(&l.class("3H").unwrap(), &k).unwrap(), 1);
        assert!(matches!(
            l.adjunction_genus(&l.class("H+E").unwrap(), &l.class("H").unwrap()),
            Err(ManifoldError::ParityViolation(_))
        ));
    }

    #[test]
    fn torus_class_genus_one() {
        let l = blown_up_torus_bundle();
        let t = l.class("T").unwrap();
        let zero = l.class("0").unwrap();
        assert_eq!(l.adjunction_genus(&t, &zero).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            IntersectionLattice::new(vec!["A".into(), "B".into()], Matrix::<i64>::from_i64_rows(&[&[0, 1], &[0, 0]])),
            Err(ManifoldError::NotSymmetric)
        );
        let l = blown_up_torus_bundle();
        assert!(matches!(l.class("2Q"), Err(ManifoldError::UnknownClassSymbol(_))));
        assert!(l.pairing(&[1, 0], &[0, 1]).is_err());
    }
}
