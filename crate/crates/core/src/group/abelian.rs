use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Presentation, Word};
use crate::matrix::Matrix;
use crate::smith::{smith_decomposition, SmithForm};

/// Finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupDescription {
    pub free_rank: usize,
    /// Entries greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupDescription {
    pub fn free(rank: usize) -> Self {
        AbelianGroupDescription { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization together with the coordinate change needed to express
/// words in the invariant-factor basis.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: AbelianGroupDescription,
    pub smith: SmithForm<BigInt>,
    presentation: Presentation,
    right: Matrix<BigInt>,
}

impl Abelianization {
    /// Coordinates of the image of `w`: torsion coordinates (reduced modulo
    /// their factor) followed by free coordinates.
    pub fn image(&self, w: &Word) -> Vec<BigInt> {
        let v: Vec<BigInt> =
            self.presentation.exponent_vector(w).into_iter().map(BigInt::from).collect();
        let n = v.len();
        let coords: Vec<BigInt> = (0..n)
            .map(|j| (0..n).fold(BigInt::zero(), |acc, i| acc + &v[i] * &self.right[(i, j)]))
            .collect();
        let factors = &self.smith.invariant_factors;
        let mut out = Vec::new();
        for (j, c) in coords.into_iter().enumerate() {
            match factors.get(j) {
                Some(d) if d.is_one() => {}
                Some(d) => out.push(c.mod_floor(d)),
                None => out.push(c),
            }
        }
        out
    }

    pub fn is_null_homologous(&self, w: &Word) -> bool {
        self.image(w).iter().all(Zero::is_zero)
    }
}

pub fn abelianize(p: &Presentation) -> AbelianGroupDescription {
    abelianization(p).group
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.generators().len();
    let rows: Vec<Vec<BigInt>> = p
        .exponent_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let m = if rows.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(rows) };
    let d = smith_decomposition(&m);
    let group = AbelianGroupDescription {
        free_rank: n - d.form.rank(),
        torsion: d.form.torsion(),
    };
    Abelianization { group, smith: d.form, presentation: p.clone(), right: d.right }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_is_z() {
        let p: Presentation = "gens: a, b; rels: a*b*a*b^-1*a^-1*b^-1;".parse().unwrap();
        assert_eq!(abelianize(&p), AbelianGroupDescription::free(1));
    }

    #[test]
    fn torsion_and_display() {
        let p = Presentation::from_text(&["a", "b", "c"], &["a^2", "b^4*a^2", "[a,c]"]).unwrap();
        let g = abelianize(&p);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/4");
        assert_eq!(abelianize(&Presentation::from_text(&["a"], &["a"]).unwrap()).to_string(), "0");
    }

    #[test]
    fn images_respect_torsion() {
        let p = Presentation::from_text(&["a", "b"], &["a^3", "[a,b]"]).unwrap();
        let ab = abelianization(&p);
        assert!(ab.is_null_homologous(&Word::parse("a^5*b*a*b^-1").unwrap()));
        assert!(!ab.is_null_homologous(&Word::parse("a").unwrap()));
        assert!(!ab.is_null_homologous(&Word::parse("b^2").unwrap()));
    }
}
