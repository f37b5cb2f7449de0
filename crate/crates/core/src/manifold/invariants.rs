use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ManifoldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
    Unknown,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::Unknown => "unknown",
        })
    }
}

impl FromStr for Parity {
    type Err = ManifoldError;
    fn from_str(s: &str) -> Result<Self, ManifoldError> {
        match s.to_ascii_lowercase().as_str() {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            "unknown" => Ok(Parity::Unknown),
            _ => Err(ManifoldError::UnknownFlag(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flag {
    SimplyConnected,
    Symplectic,
    Minimal,
    Irreducible,
    SWNontrivial,
    SWTrivial,
    Standard,
}

impl Flag {
    pub const ALL: [Flag; 7] = [
        Flag::SimplyConnected,
        Flag::Symplectic,
        Flag::Minimal,
        Flag::Irreducible,
        Flag::SWNontrivial,
        Flag::SWTrivial,
        Flag::Standard,
    ];
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Flag {
    type Err = ManifoldError;
    fn from_str(s: &str) -> Result<Self, ManifoldError> {
        let norm: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_lowercase();
        Flag::ALL
            .into_iter()
            .find(|f| f.to_string().to_ascii_lowercase() == norm)
            .ok_or_else(|| ManifoldError::UnknownFlag(s.to_string()))
    }
}

/// Invariants of a closed oriented 4-manifold.
///
/// `c1sq = 3σ + 2e` and `chi_h = (e + σ)/4` are kept consistent by every
/// operation. `b1` is `None` while pending: fiber sums do not determine it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub name: String,
    pub e: i64,
    pub sigma: i64,
    pub b1: Option<i64>,
    pub c1sq: i64,
    pub chi_h: Option<i64>,
    pub parity: Parity,
    pub flags: BTreeSet<Flag>,
}

impl InvariantRecord {
    pub fn from_euler_signature(name: impl Into<String>, e: i64, sigma: i64, b1: Option<i64>) -> Self {
        InvariantRecord {
            name: name.into(),
            e,
            sigma,
            b1,
            c1sq: 3 * sigma + 2 * e,
            chi_h: chi_h_of(e, sigma),
            parity: Parity::Unknown,
            flags: BTreeSet::new(),
        }
    }

    /// Builds from `(c1², σ, χ_h)`, recovering `e = 4χ_h − σ` and checking
    /// `c1² = 3σ + 2e`.
    pub fn from_characteristic(
        name: impl Into<String>,
        c1sq: i64,
        sigma: i64,
        chi_h: i64,
        b1: Option<i64>,
    ) -> Result<Self, ManifoldError> {
        let name = name.into();
        let e = 4 * chi_h - sigma;
        let expected = 3 * sigma + 2 * e;
        if expected != c1sq {
            return Err(ManifoldError::InconsistentCharacteristic(name, c1sq, expected));
        }
        Ok(InvariantRecord::from_euler_signature(name, e, sigma, b1))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        self.flags.insert(flag);
        self
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_b1(mut self, b1: i64) -> Self {
        self.b1 = Some(b1);
        self
    }

    /// Even unimodular forms have signature divisible by 8, so any other
    /// signature forces an odd form. Leaves a declared parity untouched.
    pub fn infer_parity(mut self) -> Self {
        if self.parity == Parity::Unknown && self.sigma.rem_euclid(8) != 0 {
            self.parity = Parity::Odd;
        }
        self
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn b2(&self) -> Result<i64, ManifoldError> {
        let b1 = self.b1.ok_or_else(|| ManifoldError::B1Pending(self.name.clone()))?;
        Ok(self.e - 2 + 2 * b1)
    }

    pub fn b2_plus(&self) -> Result<i64, ManifoldError> {
        let b2 = self.b2()?;
        if (b2 + self.sigma) % 2 != 0 {
            return Err(self.betti_error(format!("b2 = {b2} and sigma = {} differ in parity", self.sigma)));
        }
        let plus = (b2 + self.sigma) / 2;
        let minus = plus - self.sigma;
        if plus < 0 || minus < 0 {
            return Err(self.betti_error(format!("b2+ = {plus}, b2- = {minus}")));
        }
        Ok(plus)
    }

    pub fn b2_minus(&self) -> Result<i64, ManifoldError> {
        Ok(self.b2_plus()? - self.sigma)
    }

    fn betti_error(&self, detail: String) -> ManifoldError {
        ManifoldError::InconsistentBetti(self.name.clone(), detail)
    }

    /// Checks the record invariants.
    pub fn validate(&self) -> Result<(), ManifoldError> {
        if self.c1sq != 3 * self.sigma + 2 * self.e {
            return Err(ManifoldError::InconsistentCharacteristic(
                self.name.clone(),
                self.c1sq,
                3 * self.sigma + 2 * self.e,
            ));
        }
        if self.chi_h.is_none() && self.has(Flag::SimplyConnected) && self.has(Flag::Symplectic) {
            return Err(ManifoldError::NonIntegralChiH(self.name.clone(), self.e, self.sigma));
        }
        if let Some(b1) = self.b1 {
            if b1 < 0 {
                return Err(self.betti_error(format!("b1 = {b1}")));
            }
            if self.has(Flag::SimplyConnected) && b1 != 0 {
                return Err(self.betti_error(format!("simply connected with b1 = {b1}")));
            }
            self.b2_plus()?;
        }
        if self.has(Flag::SWTrivial) && self.has(Flag::SWNontrivial) {
            return Err(ManifoldError::ContradictoryFacts(format!("{} flagged SW trivial and nontrivial", self.name)));
        }
        Ok(())
    }

    /// `(p, q)` when this is a standard `p CP2 # q CP2bar`.
    pub fn standard_sum(&self) -> Option<StandardSum> {
        if !self.has(Flag::Standard) {
            return None;
        }
        let s: StandardSum = self.name.parse().ok()?;
        s.only_projective_planes().then_some(s)
    }
}

impl fmt::Display for InvariantRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: e = {}, sigma = {}, b1 = ", self.name, self.e, self.sigma)?;
        match self.b1 {
            Some(b) => write!(f, "{b}")?,
            None => f.write_str("pending")?,
        }
        write!(f, ", c1sq = {}, chi_h = ", self.c1sq)?;
        match self.chi_h {
            Some(c) => write!(f, "{c}")?,
            None => f.write_str("non-integral")?,
        }
        write!(f, ", parity = {}", self.parity)?;
        if !self.flags.is_empty() {
            let flags: Vec<String> = self.flags.iter().map(Flag::to_string).collect();
            write!(f, ", flags = {}", flags.join(" "))?;
        }
        Ok(())
    }
}

fn chi_h_of(e: i64, sigma: i64) -> Option<i64> {
    ((e + sigma) % 4 == 0).then_some((e + sigma) / 4)
}

/// Multiplicities of catalog pieces in a connected sum, printed in the
/// canonical order `CP2, S2xS2, T2xS2, CP2bar`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardSum {
    pub cp2: u32,
    pub s2xs2: u32,
    pub t2xs2: u32,
    pub cp2bar: u32,
}

const PIECES: [&str; 4] = ["CP2", "S2xS2", "T2xS2", "CP2bar"];

impl StandardSum {
    pub fn projective(p: u32, q: u32) -> Self {
        StandardSum { cp2: p, cp2bar: q, ..Default::default() }
    }

    fn counts(&self) -> [u32; 4] {
        [self.cp2, self.s2xs2, self.t2xs2, self.cp2bar]
    }

    pub fn only_projective_planes(&self) -> bool {
        self.s2xs2 == 0 && self.t2xs2 == 0
    }

    fn add(self, o: StandardSum) -> StandardSum {
        StandardSum {
            cp2: self.cp2 + o.cp2,
            s2xs2: self.s2xs2 + o.s2xs2,
            t2xs2: self.t2xs2 + o.t2xs2,
            cp2bar: self.cp2bar + o.cp2bar,
        }
    }

    pub fn record(&self) -> InvariantRecord {
        let pieces = [(3, 1, 0, Parity::Odd), (4, 0, 0, Parity::Even), (0, 0, 2, Parity::Even), (3, -1, 0, Parity::Odd)];
        let mut acc = sphere();
        for (count, (e, sigma, b1, parity)) in self.counts().into_iter().zip(pieces) {
            for _ in 0..count {
                let piece = InvariantRecord::from_euler_signature("", e, sigma, Some(b1)).with_parity(parity);
                acc = connected_sum_raw(&acc, &piece);
            }
        }
        let mut r = acc.with_name(self.to_string()).with_flag(Flag::Standard);
        if r.b1 == Some(0) {
            r.flags.insert(Flag::SimplyConnected);
        }
        if self.counts().iter().all(|&c| c == 0) {
            r.parity = Parity::Even;
        }
        r
    }
}

impl fmt::Display for StandardSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .counts()
            .into_iter()
            .zip(PIECES)
            .filter(|(c, _)| *c > 0)
            .map(|(c, name)| if c == 1 { name.to_string() } else { format!("{c}{name}") })
            .collect();
        if terms.is_empty() {
            f.write_str("S4")
        } else {
            f.write_str(&terms.join(" # "))
        }
    }
}

impl FromStr for StandardSum {
    type Err = ManifoldError;

    fn from_str(s: &str) -> Result<Self, ManifoldError> {
        let unknown = || ManifoldError::UnknownStandard(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut sum = StandardSum::default();
        for term in compact.split('#') {
            let digits: String = term.chars().take_while(char::is_ascii_digit).collect();
            let base = &term[digits.len()..];
            let count: u32 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| unknown())? };
            let piece = match base {
                "S4" => StandardSum::default(),
                "CP2" => StandardSum { cp2: 1, ..Default::default() },
                "CP2bar" => StandardSum { cp2bar: 1, ..Default::default() },
                "S2xS2" => StandardSum { s2xs2: 1, ..Default::default() },
                "T2xS2" | "S2xT2" => StandardSum { t2xs2: 1, ..Default::default() },
                _ => return Err(unknown()),
            };
            for _ in 0..count {
                sum = sum.add(piece);
            }
        }
        Ok(sum)
    }
}

fn sphere() -> InvariantRecord {
    InvariantRecord::from_euler_signature("S4", 2, 0, Some(0)).with_parity(Parity::Even)
}

/// Catalog lookup: `CP2`, `CP2bar`, `S2xS2`, `T2xS2`, `S4` and connected
/// sums of them such as `3CP2 # 7CP2bar`.
pub fn standard(name: &str) -> Result<InvariantRecord, ManifoldError> {
    Ok(name.parse::<StandardSum>()?.record())
}

/// Blows up `n` points: connected sum with `n` copies of `CP2bar`.
pub fn blow_up(a: &InvariantRecord, n: u32) -> InvariantRecord {
    if n == 0 {
        return a.clone();
    }
    let n64 = i64::from(n);
    let mut r = a.clone();
    r.e += n64;
    r.sigma -= n64;
    r.c1sq -= n64;
    r.parity = Parity::Odd;
    r.flags.retain(|f| matches!(f, Flag::SimplyConnected | Flag::Symplectic | Flag::Standard));
    r.name = if let Some(s) = a.has(Flag::Standard).then(|| a.name.parse::<StandardSum>().ok()).flatten() {
        s.add(StandardSum::projective(0, n)).to_string()
    } else {
        format!("{} # {}", a.name, StandardSum::projective(0, n))
    };
    r
}

/// Generalized fiber sum along genus-g surfaces of square zero.
///
/// `b1` becomes pending and parity unknown; the result is symplectic when
/// both summands are (the surfaces are assumed symplectic).
pub fn fiber_sum(a: &InvariantRecord, b: &InvariantRecord, genus: i64) -> InvariantRecord {
    let (first, second) = if a.name <= b.name { (a, b) } else { (b, a) };
    let mut flags = BTreeSet::new();
    if a.has(Flag::Symplectic) && b.has(Flag::Symplectic) {
        flags.insert(Flag::Symplectic);
    }
    InvariantRecord {
        name: format!("({} #g{genus} {})", first.name, second.name),
        e: a.e + b.e - 2 * (2 - 2 * genus),
        sigma: a.sigma + b.sigma,
        b1: None,
        c1sq: a.c1sq + b.c1sq + 8 * (genus - 1),
        chi_h: a.chi_h.zip(b.chi_h).map(|(x, y)| x + y + genus - 1),
        parity: Parity::Unknown,
        flags,
    }
}

fn connected_sum_raw(a: &InvariantRecord, b: &InvariantRecord) -> InvariantRecord {
    let e = a.e + b.e - 2;
    let sigma = a.sigma + b.sigma;
    let parity = match (a.parity, b.parity) {
        (Parity::Odd, _) | (_, Parity::Odd) => Parity::Odd,
        (Parity::Even, Parity::Even) => Parity::Even,
        _ => Parity::Unknown,
    };
    let mut flags = BTreeSet::new();
    for f in [Flag::SimplyConnected, Flag::Standard] {
        if a.has(f) && b.has(f) {
            flags.insert(f);
        }
    }
    InvariantRecord {
        name: format!("{} # {}", a.name, b.name),
        e,
        sigma,
        b1: a.b1.zip(b.b1).map(|(x, y)| x + y),
        c1sq: 3 * sigma + 2 * e,
        chi_h: chi_h_of(e, sigma),
        parity,
        flags,
    }
}

pub fn connected_sum(a: &InvariantRecord, b: &InvariantRecord) -> InvariantRecord {
    let is_sphere = |r: &InvariantRecord| r.has(Flag::Standard) && r.name == "S4";
    if is_sphere(b) {
        return a.clone();
    }
    if is_sphere(a) {
        return b.clone();
    }
    let mut r = connected_sum_raw(a, b);
    if r.has(Flag::Standard) {
        if let (Ok(x), Ok(y)) = (a.name.parse::<StandardSum>(), b.name.parse::<StandardSum>()) {
            r.name = x.add(y).to_string();
        }
    }
    r
}

/// Homeomorphism type of a simply connected record with odd form.
pub fn freedman_type(a: &InvariantRecord) -> Result<String, ManifoldError> {
    if !a.has(Flag::SimplyConnected) {
        return Err(ManifoldError::NotSimplyConnected(a.name.clone()));
    }
    match a.b1 {
        Some(0) => {}
        Some(b1) => return Err(ManifoldError::InconsistentBetti(a.name.clone(), format!("simply connected with b1 = {b1}"))),
        None => return Err(ManifoldError::B1Pending(a.name.clone())),
    }
    let plus = a.b2_plus()?;
    let minus = a.b2_minus()?;
    match (a.parity, plus + minus) {
        (Parity::Odd, 0) => Err(ManifoldError::InconsistentBetti(a.name.clone(), "odd form of rank zero".into())),
        (Parity::Odd, _) => Ok(StandardSum::projective(plus as u32, minus as u32).to_string()),
        (Parity::Even, 0) => Ok("S4".to_string()),
        (Parity::Even, _) => Err(ManifoldError::EvenForm(a.name.clone())),
        (Parity::Unknown, _) => Err(ManifoldError::ParityUnknown(a.name.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(r: &InvariantRecord) -> (i64, i64, Option<i64>) {
        (r.c1sq, r.sigma, r.chi_h)
    }

    #[test]
    fn catalog_values() {
        let cp2 = standard("CP2").unwrap();
        assert_eq!((cp2.e, cp2.sigma, cp2.b1, cp2.parity), (3, 1, Some(0), Parity::Odd));
        let t = standard("T2xS2").unwrap();
        assert_eq!((t.e, t.sigma, t.b1), (0, 0, Some(2)));
        assert!(!t.has(Flag::SimplyConnected));
        let n = standard("3CP2#7CP2bar").unwrap();
        assert_eq!((n.e, n.sigma, n.b1, n.parity), (12, -4, Some(0), Parity::Odd));
        assert_eq!(n.name, "3CP2 # 7CP2bar");
        assert!(standard("K3").is_err());
    }

    #[test]
    fn blowups() {
        let z = blow_up(&standard("T2xS2").unwrap(), 4);
        assert_eq!((z.e, z.sigma, z.c1sq, z.chi_h), (4, -4, -4, Some(0)));
        assert_eq!(z.parity, Parity::Odd);
        let cp2 = standard("CP2").unwrap();
        assert_eq!(blow_up(&cp2, 0), cp2);
        let b = blow_up(&cp2, 1);
        assert_eq!((b.e, b.sigma), (4, 0));
        assert_eq!(b.name, "CP2 # CP2bar");
    }

    #[test]
    fn fiber_sums() {
        let xk = InvariantRecord::from_characteristic("X_K", 8, 0, 1, Some(0)).unwrap();
        let yk = InvariantRecord::from_characteristic("Y_K", 0, 0, 0, None).unwrap();
        let z = blow_up(&standard("T2xS2").unwrap(), 4);
        assert_eq!(triple(&fiber_sum(&xk, &z, 2)), (12, -4, Some(2)));
        assert_eq!(triple(&fiber_sum(&yk, &z, 2)), (4, -4, Some(1)));
        let mk = InvariantRecord::from_characteristic("M_K x S1", 0, 0, 0, Some(2)).unwrap();
        let s = fiber_sum(&mk, &mk, 1);
        assert_eq!((s.e, s.sigma, s.c1sq, s.chi_h), (0, 0, 0, Some(0)));
        assert_eq!(s.b1, None);
    }

    #[test]
    fn connected_sums() {
        let cp2 = standard("CP2").unwrap();
        let bar = standard("CP2bar").unwrap();
        let s = connected_sum(&cp2, &bar);
        assert_eq!((s.e, s.sigma), (4, 0));
        let mut n = standard("S4").unwrap();
        for _ in 0..3 {
            n = connected_sum(&n, &cp2);
        }
        for _ in 0..7 {
            n = connected_sum(&n, &bar);
        }
        assert_eq!((n.e, n.sigma, n.b2_plus().unwrap(), n.b2_minus().unwrap()), (12, -4, 3, 7));
        assert_eq!(n, standard("3CP2 # 7CP2bar").unwrap());
        assert_eq!(connected_sum(&cp2, &standard("S4").unwrap()), cp2);
    }

    #[test]
    fn freedman_names() {
        let rec = |plus: i64, minus: i64| {
            InvariantRecord::from_euler_signature("M", 2 + plus + minus, plus - minus, Some(0))
                .with_parity(Parity::Odd)
                .with_flag(Flag::SimplyConnected)
        };
        assert_eq!(freedman_type(&rec(3, 7)).unwrap(), "3CP2 # 7CP2bar");
        assert_eq!(freedman_type(&rec(1, 5)).unwrap(), "CP2 # 5CP2bar");
        assert_eq!(freedman_type(&rec(1, 0)).unwrap(), "CP2");
        assert!(matches!(freedman_type(&rec(0, 0)), Err(ManifoldError::InconsistentBetti(..))));
        assert!(matches!(freedman_type(&rec(1, 1).with_parity(Parity::Even)), Err(ManifoldError::EvenForm(_))));
        let mut nsc = rec(1, 1);
        nsc.flags.clear();
        assert!(matches!(freedman_type(&nsc), Err(ManifoldError::NotSimplyConnected(_))));
        assert_eq!(freedman_type(&standard("S4").unwrap()).unwrap(), "S4");
    }

    #[test]
    fn validation() {
        let mut r = InvariantRecord::from_euler_signature("bad", 3, -1, Some(0));
        assert!(r.validate().is_ok());
        r.flags.insert(Flag::SimplyConnected);
        r.flags.insert(Flag::Symplectic);
        assert!(matches!(r.validate(), Err(ManifoldError::NonIntegralChiH(..))));
        assert!(InvariantRecord::from_characteristic("x", 9, 0, 1, None).is_err());
        let neg = InvariantRecord::from_euler_signature("neg", 0, 0, Some(0));
        assert!(matches!(neg.b2_plus(), Err(ManifoldError::InconsistentBetti(..))));
        assert_eq!("simply_connected".parse::<Flag>().unwrap(), Flag::SimplyConnected);
        assert_eq!("SWTrivial".parse::<Flag>().unwrap(), Flag::SWTrivial);
    }
}
