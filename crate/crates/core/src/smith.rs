//! Smith normal form over exact integers.
//!
//! Pivoting is deterministic: at every stage the entry of smallest nonzero
//! absolute value in the active submatrix is chosen, ties broken in
//! row-major order.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm<T> {
    /// Positive diagonal entries `d₁ | d₂ | … | d_r`, units included.
    pub invariant_factors: Vec<T>,
    /// Number of zero entries on the diagonal, `min(rows, cols) - rank`.
    pub rank_deficiency: usize,
    pub rows: usize,
    pub cols: usize,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Factors strictly greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.invariant_factors.windows(2).all(|w| (w[1].clone() % w[0].clone()).is_zero())
    }
}

/// Full decomposition `left · input · right = diagonal`, with `left` and
/// `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub form: SmithForm<T>,
    pub diagonal: Matrix<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    smith_decomposition(m).form
}

pub fn smith_decomposition<T: Scalar>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);
    let steps = rows.min(cols);
    let mut rank = 0;

    for t in 0..steps {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        move_pivot(&mut a, &mut left, &mut right, t, pi, pj);
        loop {
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &-q.clone());
                left.add_row_multiple(i, t, &-q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &-q.clone());
                right.add_col_multiple(j, t, &-q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                let (pi, pj) = min_abs_entry(&a, t).expect("nonzero entries remain");
                move_pivot(&mut a, &mut left, &mut right, t, pi, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            match first_non_multiple(&a, t, &pivot) {
                Some(i) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        rank += 1;
    }

    let invariant_factors = (0..rank).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        form: SmithForm { invariant_factors, rank_deficiency: steps - rank, rows, cols },
        diagonal: a,
        left,
        right,
    }
}

fn min_abs_entry<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.nrows() {
        for j in t..a.ncols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn move_pivot<T: Scalar>(
    a: &mut Matrix<T>,
    left: &mut Matrix<T>,
    right: &mut Matrix<T>,
    t: usize,
    i: usize,
    j: usize,
) {
    a.swap_rows(t, i);
    left.swap_rows(t, i);
    a.swap_cols(t, j);
    right.swap_cols(t, j);
}

fn first_non_multiple<T: Scalar>(a: &Matrix<T>, t: usize, pivot: &T) -> Option<usize> {
    (t + 1..a.nrows())
        .find(|&i| (t + 1..a.ncols()).any(|j| !(a[(i, j)].clone() % pivot.clone()).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn identity_has_unit_factors() {
        let f = smith_normal_form(&Matrix::<i64>::identity(2));
        assert_eq!(f.invariant_factors, vec![1, 1]);
        assert_eq!(f.rank_deficiency, 0);
    }

    #[test]
    fn rank_one_example() {
        let m = Matrix::<i64>::from_i64_rows(&[&[1, -1], &[2, -2]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.invariant_factors, vec![1]);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.rank_deficiency, 1);
    }

    #[test]
    fn empty_and_zero_matrices() {
        let f = smith_normal_form(&Matrix::<i64>::zeros(0, 3));
        assert!(f.invariant_factors.is_empty());
        assert_eq!(f.rank_deficiency, 0);
        let f = smith_normal_form(&Matrix::<i64>::zeros(2, 3));
        assert!(f.invariant_factors.is_empty());
        assert_eq!(f.rank_deficiency, 2);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) is not in Smith form; the answer is diag(1, 6).
        let m = Matrix::<i64>::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&m).invariant_factors, vec![1, 6]);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = Matrix::<i64>::from_i64_rows(&[&[4, 6, 2], &[2, -8, 10], &[0, 3, 9], &[1, 1, 1]]);
        let d = smith_decomposition(&m);
        assert_eq!(&(&d.left * &m) * &d.right, d.diagonal);
        assert_eq!(d.left.determinant().abs(), 1);
        assert_eq!(d.right.determinant().abs(), 1);
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let rows: &[&[i64]] = &[&[3, 9, -6], &[12, 0, 4], &[5, 5, 5]];
        let small = smith_normal_form(&Matrix::<i64>::from_i64_rows(rows));
        let big = smith_normal_form(&Matrix::<BigInt>::from_i64_rows(rows));
        let big: Vec<i64> = big.invariant_factors.iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(small.invariant_factors, big);
    }
}
