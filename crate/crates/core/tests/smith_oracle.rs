//! Smith normal form against determinantal divisors: the product of the
//! first k invariant factors is the gcd of all k×k minors.

use exotica::matrix::Matrix;
use exotica::smith::{smith_decomposition, smith_normal_form};
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut c in combinations(last, k - 1) {
            c.push(last);
            out.push(c);
        }
    }
    out
}

/// Leibniz expansion; fine for k ≤ 4.
fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for (j, &x) in m[0].iter().enumerate() {
        if x == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * x * det(&minor);
    }
    total
}

fn oracle_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut divisors = vec![1i64];
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

#[test]
fn random_4x4_agree_with_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..250 {
        let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let m = Matrix::from_rows(rows.clone());
        let form = smith_normal_form(&m);
        assert_eq!(form.invariant_factors, oracle_factors(&rows), "{m}");
        assert!(form.is_divisibility_chain());
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn rectangular_agree_with_oracle(rows in small_matrix()) {
        let m = Matrix::from_rows(rows.clone());
        prop_assert_eq!(smith_normal_form(&m).invariant_factors, oracle_factors(&rows));
    }

    #[test]
    fn transforms_reproduce_diagonal(rows in small_matrix()) {
        let m = Matrix::from_rows(rows);
        let d = smith_decomposition(&m);
        prop_assert_eq!(&(&d.left * &m) * &d.right, d.diagonal.clone());
        prop_assert_eq!(d.left.determinant().abs(), 1);
        prop_assert_eq!(d.right.determinant().abs(), 1);
    }
}
