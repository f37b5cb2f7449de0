//! Peripheral data of the bundled knots checked against permutation
//! representations, independently of the library's own algebra.

use std::collections::{BTreeMap, BTreeSet};

use exotica::constructions::{knot, zero_surgery, KnotRecord};
use exotica::group::{abelianize, Generator, Word};

type Perm = Vec<usize>;

fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

fn invert(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn eval(w: &Word, images: &BTreeMap<Generator, Perm>, n: usize) -> Perm {
    let mut acc: Perm = (0..n).collect();
    for l in w.letters() {
        let p = &images[&l.generator];
        acc = compose(&acc, &if l.inverse { invert(p) } else { p.clone() });
    }
    acc
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Perm, n: usize, out: &mut Vec<Perm>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn dihedral5() -> Vec<Perm> {
    let mut out = Vec::new();
    for k in 0..5 {
        out.push((0..5).map(|i| (i + k) % 5).collect());
        out.push((0..5).map(|i| (k + 5 - i) % 5).collect());
    }
    out
}

fn closure(gens: &[Perm]) -> BTreeSet<Perm> {
    let n = gens[0].len();
    let mut seen: BTreeSet<Perm> = BTreeSet::from([(0..n).collect()]);
    let mut frontier: Vec<Perm> = seen.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen
}

/// Every pair of images in `pool` satisfying the knot group relators.
fn representations(k: &KnotRecord, pool: &[Perm]) -> Vec<BTreeMap<Generator, Perm>> {
    let gens = k.group.generators();
    assert_eq!(gens.len(), 2);
    let n = pool[0].len();
    let id: Perm = (0..n).collect();
    let mut out = Vec::new();
    for x in pool {
        for y in pool {
            let images = BTreeMap::from([(gens[0].clone(), x.clone()), (gens[1].clone(), y.clone())]);
            if k.group.relators().iter().all(|r| eval(r, &images, n) == id) {
                out.push(images);
            }
        }
    }
    out
}

#[test]
fn longitudes_commute_with_meridians_in_s5() {
    let s5 = all_perms(5);
    for name in ["trefoil", "figure8"] {
        let k = knot(name).unwrap();
        let reps = representations(&k, &s5);
        let mut nontrivial = false;
        for images in &reps {
            let m = eval(&k.meridian, images, 5);
            let l = eval(&k.longitude, images, 5);
            assert_eq!(compose(&m, &l), compose(&l, &m), "{name}");
            nontrivial |= l != (0..5).collect::<Perm>();
        }
        assert!(nontrivial, "{name}: longitude trivial in every S5 representation");
    }
}

#[test]
fn dihedral_quotient_separates_the_knots() {
    // determinant 5 for the figure eight, 3 for the trefoil
    let d5 = dihedral5();
    let onto = |name: &str| {
        let k = knot(name).unwrap();
        representations(&k, &d5).iter().any(|images| {
            let gens: Vec<Perm> = images.values().cloned().collect();
            closure(&gens).len() == 10
        })
    };
    assert!(onto("figure8"));
    assert!(!onto("trefoil"));
}

#[test]
fn surgeries_have_infinite_cyclic_homology() {
    for name in ["trefoil", "figure8"] {
        let k = knot(name).unwrap();
        assert_eq!(abelianize(&k.group).to_string(), "Z", "{name}");
        assert_eq!(abelianize(&zero_surgery(&k)).to_string(), "Z", "{name}");
    }
}
