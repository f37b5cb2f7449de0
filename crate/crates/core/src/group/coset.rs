//! Todd–Coxeter coset enumeration, HLT strategy.
//!
//! Cosets are defined in a fixed order (first undefined entry of the
//! earliest live coset), relators are scanned in presentation order and
//! coincidences are processed immediately. The budget bounds the total
//! number of cosets ever defined, including those later found coincident.

use serde::{Deserialize, Serialize};

use super::{GroupError, Presentation, Word};
use super::word::Generator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetStatus {
    Complete { index: usize },
    Exhausted { budget: usize },
}

/// Result of an enumeration. When complete, `action[c][col]` is the coset
/// reached from `c` by column `col`; column `2i` is generator `i`, `2i+1`
/// its inverse. Cosets are numbered from 0 (the subgroup itself) in the
/// order they were first defined.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetTable {
    pub generators: Vec<Generator>,
    pub action: Vec<Vec<usize>>,
    pub status: CosetStatus,
    /// Total cosets defined during the run.
    pub defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> Option<usize> {
        match self.status {
            CosetStatus::Complete { index } => Some(index),
            CosetStatus::Exhausted { .. } => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.status, CosetStatus::Complete { .. })
    }

    fn column(&self, g: &Generator, inverse: bool) -> Option<usize> {
        self.generators.iter().position(|h| h == g).map(|i| 2 * i + inverse as usize)
    }

    /// Coset reached from `start` by reading `w`.
    pub fn trace(&self, start: usize, w: &Word) -> Option<usize> {
        let mut c = start;
        for l in w.letters() {
            let col = self.column(&l.generator, l.inverse)?;
            c = *self.action.get(c)?.get(col)?;
        }
        Some(c)
    }

    /// Independent audit of a complete table: every entry filled, inverse
    /// columns mutually inverse, every relator closes at every coset and
    /// every subgroup generator fixes coset 0.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        let CosetStatus::Complete { index } = self.status else { return false };
        if self.action.len() != index || index == 0 || self.generators != p.generators() {
            return false;
        }
        let cols = 2 * self.generators.len();
        for (c, row) in self.action.iter().enumerate() {
            if row.len() != cols {
                return false;
            }
            for (col, &d) in row.iter().enumerate() {
                if d >= index || self.action[d][col ^ 1] != c {
                    return false;
                }
            }
        }
        let closes = |c: usize, w: &Word| self.trace(c, w) == Some(c);
        (0..index).all(|c| p.relators().iter().all(|r| closes(c, r)))
            && subgroup.iter().all(|w| closes(0, w))
    }
}

pub fn coset_enumerate(p: &Presentation, subgroup: &[Word], budget: usize) -> Result<CosetTable, GroupError> {
    if budget == 0 {
        return Err(GroupError::InvalidBudget);
    }
    for w in subgroup {
        p.check_word(w)?;
    }
    let gens = p.generators().to_vec();
    let to_cols = |w: &Word| -> Vec<usize> {
        w.letters()
            .iter()
            .map(|l| 2 * p.generator_index(&l.generator).expect("checked") + l.inverse as usize)
            .collect()
    };
    let mut relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.cyclically_reduced())
        .filter(|r| !r.is_identity())
        .map(|r| to_cols(&r))
        .collect();
    relators.sort_by_key(Vec::len);
    let subgroup: Vec<Vec<usize>> = subgroup.iter().filter(|w| !w.is_identity()).map(to_cols).collect();

    let mut e = Enumerator::new(2 * gens.len(), budget);
    let outcome = e.run(&relators, &subgroup);
    let (action, status) = match outcome {
        Ok(()) => {
            let action = e.compact();
            let index = action.len();
            (action, CosetStatus::Complete { index })
        }
        Err(Exhausted) => (Vec::new(), CosetStatus::Exhausted { budget }),
    };
    Ok(CosetTable { generators: gens, action, status, defined: e.defined })
}

struct Exhausted;

const NONE: u32 = 0;

/// Working state. Cosets are 1-based; entry 0 means undefined.
struct Enumerator {
    cols: usize,
    budget: usize,
    defined: usize,
    table: Vec<u32>,
    /// Forwarding pointer; `parent[c] == c` for live cosets.
    parent: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    last: u32,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(cols: usize, budget: usize) -> Self {
        let mut e = Enumerator {
            cols,
            budget,
            defined: 0,
            table: vec![NONE; cols],
            parent: vec![0],
            next: vec![0],
            prev: vec![0],
            last: 0,
            queue: Vec::new(),
        };
        e.new_coset().ok().expect("budget is at least one");
        e
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.cols + col] = d;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32, Exhausted> {
        if self.defined >= self.budget {
            return Err(Exhausted);
        }
        self.defined += 1;
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.next.push(0);
        self.prev.push(self.last);
        if self.last != 0 {
            self.next[self.last as usize] = c;
        }
        self.last = c;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        Ok(c)
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), Exhausted> {
        let d = self.new_coset()?;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), Exhausted> {
        for w in subgroup {
            self.scan_and_fill(1, w)?;
        }
        let mut alpha = 1u32;
        while alpha != 0 {
            for r in relators {
                if !self.live(alpha) {
                    break;
                }
                self.scan_and_fill(alpha, r)?;
            }
            if self.live(alpha) {
                for col in 0..self.cols {
                    if !self.live(alpha) {
                        break;
                    }
                    if self.get(alpha, col) == NONE {
                        self.define(alpha, col)?;
                    }
                }
            }
            alpha = self.next_live_after(alpha);
        }
        Ok(())
    }

    /// Next coset in definition order after `alpha`, which may have died.
    fn next_live_after(&self, mut alpha: u32) -> u32 {
        // A dead coset keeps its old `next` link; follow it until a live one.
        loop {
            alpha = self.next[alpha as usize];
            if alpha == 0 || self.live(alpha) {
                return alpha;
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, w: &[usize]) -> Result<(), Exhausted> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut i = 0usize;
        let mut b = alpha;
        let mut j = w.len() - 1;
        loop {
            // forward
            while i <= j {
                let n = self.get(f, w[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            // backward
            while j >= i {
                let n = self.get(b, w[j] ^ 1);
                if n == NONE {
                    break;
                }
                b = n;
                if j == 0 {
                    // whole word traced backwards
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // deduction
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let up = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = up;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
        // unlink
        let (p, n) = (self.prev[kill as usize], self.next[kill as usize]);
        if p != 0 {
            self.next[p as usize] = n;
        }
        if n != 0 {
            self.prev[n as usize] = p;
        } else {
            self.last = p;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let gamma = self.queue[qi];
            qi += 1;
            for col in 0..self.cols {
                let delta = self.get(gamma, col);
                if delta == NONE {
                    continue;
                }
                // remove the back pointer δ --col⁻¹--> γ
                if self.get(delta, col ^ 1) == gamma {
                    self.set(delta, col ^ 1, NONE);
                }
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    let t = self.rep(mu_x);
                    self.merge(nu, t);
                } else {
                    let nu_xi = self.get(nu, col ^ 1);
                    if nu_xi != NONE {
                        let t = self.rep(nu_xi);
                        self.merge(mu, t);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Renumbers live cosets 0.. in definition order.
    fn compact(&mut self) -> Vec<Vec<usize>> {
        let mut order = Vec::new();
        let mut c = 1u32;
        while c != 0 {
            order.push(c);
            c = self.next[c as usize];
        }
        let mut number = vec![usize::MAX; self.parent.len()];
        for (k, &c) in order.iter().enumerate() {
            number[c as usize] = k;
        }
        order
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|col| {
                        let d = self.get(c, col);
                        number[self.rep_ro(d) as usize]
                    })
                    .collect()
            })
            .collect()
    }

    fn rep_ro(&self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            c = self.parent[c as usize];
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(gens: &[&str], rels: &[&str], budget: usize) -> CosetTable {
        let p = Presentation::from_text(gens, rels).unwrap();
        let t = coset_enumerate(&p, &[], budget).unwrap();
        if t.is_complete() {
            assert!(t.verify(&p, &[]));
        }
        t
    }

    #[test]
    fn cyclic_of_order_three() {
        assert_eq!(enumerate(&["a"], &["a^3"], 100).index(), Some(3));
    }

    #[test]
    fn symmetric_group_s3() {
        assert_eq!(enumerate(&["a", "b"], &["a^2", "b^2", "(a*b)^3"], 100).index(), Some(6));
    }

    #[test]
    fn trivial_group() {
        assert_eq!(enumerate(&["a"], &["a"], 10).index(), Some(1));
    }

    #[test]
    fn zero_budget_rejected() {
        let p = Presentation::free(&["a"]);
        assert_eq!(coset_enumerate(&p, &[], 0).unwrap_err(), GroupError::InvalidBudget);
    }

    #[test]
    fn surface_group_exhausts() {
        let t = enumerate(&["a1", "b1", "a2", "b2"], &["[a1,b1]*[a2,b2]"], 500);
        assert_eq!(t.status, CosetStatus::Exhausted { budget: 500 });
        assert_eq!(t.defined, 500);
    }

    #[test]
    fn subgroup_index() {
        let p = Presentation::from_text(&["a", "b"], &["a^2", "b^3", "(a*b)^5"]).unwrap();
        let h = [Word::parse("a").unwrap(), Word::parse("b").unwrap()];
        let t = coset_enumerate(&p, &h, 1000).unwrap();
        assert_eq!(t.index(), Some(1));
        let t = coset_enumerate(&p, &h[1..], 10_000).unwrap();
        assert_eq!(t.index(), Some(20));
        assert!(t.verify(&p, &h[1..]));
        let t = coset_enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(t.index(), Some(60));
    }

    #[test]
    fn tampered_table_fails_audit() {
        let p = Presentation::from_text(&["a"], &["a^3"]).unwrap();
        let mut t = coset_enumerate(&p, &[], 10).unwrap();
        t.action[0][0] = 0;
        assert!(!t.verify(&p, &[]));
    }
}
