//! Forward-chaining engine over named manifolds.
//!
//! Gauge-theoretic and classification theorems enter as rules with
//! recorded premises; nothing here computes a Seiberg–Witten invariant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Flag, InvariantRecord, ManifoldError, MinimalityVerdict, Parity};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fact {
    Symplectic(String),
    SimplyConnected(String),
    Standard(String),
    Minimal(String),
    NotMinimal(String),
    Irreducible(String),
    SwNontrivial(String),
    SwTrivial(String),
    /// Declared: admits a metric of positive scalar curvature.
    PositiveScalarCurvature(String),
    RationalOrRuled(String),
    /// Outcome of the fiber-sum minimality criterion for a manifold.
    FiberSumMinimality(String, MinimalityVerdict),
    Homeomorphic(String, String),
    NotDiffeomorphic(String, String),
}

impl Fact {
    fn manifolds(&self) -> Vec<&str> {
        use Fact::*;
        match self {
            Symplectic(m) | SimplyConnected(m) | Standard(m) | Minimal(m) | NotMinimal(m) | Irreducible(m)
            | SwNontrivial(m) | SwTrivial(m) | PositiveScalarCurvature(m) | RationalOrRuled(m) => vec![m],
            FiberSumMinimality(m, MinimalityVerdict::ConditionallyMinimal(o)) => vec![m, o],
            FiberSumMinimality(m, _) => vec![m],
            Homeomorphic(a, b) | NotDiffeomorphic(a, b) => vec![a, b],
        }
    }

    /// The same fact with a symmetric relation's arguments swapped.
    fn mirrored(&self) -> Option<Fact> {
        match self {
            Fact::Homeomorphic(a, b) => Some(Fact::Homeomorphic(b.clone(), a.clone())),
            Fact::NotDiffeomorphic(a, b) => Some(Fact::NotDiffeomorphic(b.clone(), a.clone())),
            _ => None,
        }
    }

    fn from_flag(flag: Flag, m: &str) -> Fact {
        let m = m.to_string();
        match flag {
            Flag::SimplyConnected => Fact::SimplyConnected(m),
            Flag::Symplectic => Fact::Symplectic(m),
            Flag::Minimal => Fact::Minimal(m),
            Flag::Irreducible => Fact::Irreducible(m),
            Flag::SWNontrivial => Fact::SwNontrivial(m),
            Flag::SWTrivial => Fact::SwTrivial(m),
            Flag::Standard => Fact::Standard(m),
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Fact::*;
        match self {
            Symplectic(m) => write!(f, "symplectic({m})"),
            SimplyConnected(m) => write!(f, "simply_connected({m})"),
            Standard(m) => write!(f, "standard({m})"),
            Minimal(m) => write!(f, "minimal({m})"),
            NotMinimal(m) => write!(f, "not_minimal({m})"),
            Irreducible(m) => write!(f, "irreducible({m})"),
            SwNontrivial(m) => write!(f, "sw_nontrivial({m})"),
            SwTrivial(m) => write!(f, "sw_trivial({m})"),
            PositiveScalarCurvature(m) => write!(f, "psc({m})"),
            RationalOrRuled(m) => write!(f, "rational_or_ruled({m})"),
            FiberSumMinimality(m, MinimalityVerdict::Minimal) => write!(f, "fiber_sum_minimal({m})"),
            FiberSumMinimality(m, MinimalityVerdict::NotMinimal) => write!(f, "fiber_sum_not_minimal({m})"),
            FiberSumMinimality(m, MinimalityVerdict::ConditionallyMinimal(o)) => {
                write!(f, "fiber_sum_minimal_iff({m}, {o})")
            }
            Homeomorphic(a, b) => write!(f, "homeomorphic({a}, {b})"),
            NotDiffeomorphic(a, b) => write!(f, "not_diffeomorphic({a}, {b})"),
        }
    }
}

impl FromStr for Fact {
    type Err = ManifoldError;

    fn from_str(s: &str) -> Result<Self, ManifoldError> {
        let bad = || ManifoldError::BadFact(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let head = s[..open].trim();
        let args: Vec<String> = s[open + 1..s.len() - 1].split(',').map(|a| a.trim().to_string()).collect();
        let one = || if args.len() == 1 && !args[0].is_empty() { Ok(args[0].clone()) } else { Err(bad()) };
        let two = || if args.len() == 2 { Ok((args[0].clone(), args[1].clone())) } else { Err(bad()) };
        Ok(match head {
            "symplectic" => Fact::Symplectic(one()?),
            "simply_connected" => Fact::SimplyConnected(one()?),
            "standard" => Fact::Standard(one()?),
            "minimal" => Fact::Minimal(one()?),
            "not_minimal" => Fact::NotMinimal(one()?),
            "irreducible" => Fact::Irreducible(one()?),
            "sw_nontrivial" => Fact::SwNontrivial(one()?),
            "sw_trivial" => Fact::SwTrivial(one()?),
            "psc" => Fact::PositiveScalarCurvature(one()?),
            "rational_or_ruled" => Fact::RationalOrRuled(one()?),
            "fiber_sum_minimal" => Fact::FiberSumMinimality(one()?, MinimalityVerdict::Minimal),
            "fiber_sum_not_minimal" => Fact::FiberSumMinimality(one()?, MinimalityVerdict::NotMinimal),
            "fiber_sum_minimal_iff" => {
                let (a, b) = two()?;
                Fact::FiberSumMinimality(a, MinimalityVerdict::ConditionallyMinimal(b))
            }
            "homeomorphic" => {
                let (a, b) = two()?;
                Fact::Homeomorphic(a, b)
            }
            "not_diffeomorphic" => {
                let (a, b) = two()?;
                Fact::NotDiffeomorphic(a, b)
            }
            _ => return Err(bad()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    Given,
    /// Symplectic with b2+ > 1 has nontrivial Seiberg–Witten invariant.
    R1Taubes,
    /// Standard `p CP2 # q CP2bar` with p ≥ 2 has vanishing invariant.
    R2ConnectedSumVanishing,
    /// Simply connected, same (b2+, b2-, parity) implies homeomorphic.
    R3Freedman,
    /// Nontrivial versus trivial invariant implies not diffeomorphic.
    R4SwDistinguishes,
    /// Fiber-sum minimality criterion.
    R5Usher,
    /// Minimal symplectic simply connected implies irreducible.
    R6Irreducible,
    /// Irreducible versus a nontrivial standard connected sum.
    R7ReducibleTarget,
    /// b2+ = 1 minimal symplectic: positive scalar curvature iff rational or ruled.
    R8RationalOrRuled,
}

impl Rule {
    pub fn code(&self) -> &'static str {
        match self {
            Rule::Given => "given",
            Rule::R1Taubes => "R1",
            Rule::R2ConnectedSumVanishing => "R2",
            Rule::R3Freedman => "R3",
            Rule::R4SwDistinguishes => "R4",
            Rule::R5Usher => "R5",
            Rule::R6Irreducible => "R6",
            Rule::R7ReducibleTarget => "R7",
            Rule::R8RationalOrRuled => "R8",
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            Rule::Given => "premise",
            Rule::R1Taubes => "Taubes: symplectic with b2+ > 1 has SW(K) = ±1",
            Rule::R2ConnectedSumVanishing => "connected-sum vanishing of SW",
            Rule::R3Freedman => "Freedman classification",
            Rule::R4SwDistinguishes => "SW invariants are diffeomorphism invariants",
            Rule::R5Usher => "Usher: minimality of symplectic sums",
            Rule::R6Irreducible => "minimal symplectic simply connected is irreducible",
            Rule::R7ReducibleTarget => "irreducible manifold versus reducible connected sum",
            Rule::R8RationalOrRuled => "Liu / Ohta-Ono: b2+ = 1 minimal, psc iff rational or ruled",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeductionStep {
    pub rule: Rule,
    pub premises: Vec<Fact>,
    pub conclusion: Fact,
    /// Numeric side conditions checked when the rule fired.
    pub note: String,
}

impl fmt::Display for DeductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.conclusion)?;
        if !self.premises.is_empty() {
            let p: Vec<String> = self.premises.iter().map(Fact::to_string).collect();
            write!(f, " <= {}", p.join(", "))?;
        }
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeductionReport {
    pub steps: Vec<DeductionStep>,
}

impl DeductionReport {
    pub fn holds(&self, fact: &Fact) -> bool {
        self.step_for(fact).is_some()
    }

    fn step_for(&self, fact: &Fact) -> Option<&DeductionStep> {
        let mirror = fact.mirrored();
        self.steps.iter().find(|s| &s.conclusion == fact || Some(&s.conclusion) == mirror.as_ref())
    }

    /// Rules used anywhere in the derivation of `fact`, premises excluded.
    pub fn rules_for(&self, fact: &Fact) -> Option<BTreeSet<Rule>> {
        let mut rules = BTreeSet::new();
        let mut stack = vec![fact.clone()];
        let mut seen = BTreeSet::new();
        while let Some(f) = stack.pop() {
            if !seen.insert(f.clone()) {
                continue;
            }
            let step = self.step_for(&f)?;
            if step.rule != Rule::Given {
                rules.insert(step.rule);
            }
            stack.extend(step.premises.iter().cloned());
        }
        Some(rules)
    }

    /// Homeomorphic and not diffeomorphic.
    pub fn exotic(&self, m: &str, n: &str) -> bool {
        self.holds(&Fact::Homeomorphic(m.into(), n.into()))
            && self.holds(&Fact::NotDiffeomorphic(m.into(), n.into()))
    }

    pub fn conclusions(&self) -> impl Iterator<Item = &DeductionStep> {
        self.steps.iter().filter(|s| s.rule != Rule::Given)
    }
}

impl fmt::Display for DeductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

struct Engine<'a> {
    records: BTreeMap<&'a str, &'a InvariantRecord>,
    report: DeductionReport,
}

impl<'a> Engine<'a> {
    fn has(&self, fact: &Fact) -> bool {
        self.report.holds(fact)
    }

    fn add(&mut self, rule: Rule, premises: Vec<Fact>, conclusion: Fact, note: String) -> Result<bool, ManifoldError> {
        if self.has(&conclusion) {
            return Ok(false);
        }
        let clash = match &conclusion {
            Fact::SwTrivial(m) => Some(Fact::SwNontrivial(m.clone())),
            Fact::SwNontrivial(m) => Some(Fact::SwTrivial(m.clone())),
            Fact::Minimal(m) => Some(Fact::NotMinimal(m.clone())),
            Fact::NotMinimal(m) => Some(Fact::Minimal(m.clone())),
            _ => None,
        };
        if let Some(c) = clash.filter(|c| self.has(c)) {
            return Err(ManifoldError::ContradictoryFacts(format!("{conclusion} and {c}")));
        }
        if let Fact::NotDiffeomorphic(a, b) = &conclusion {
            if a == b {
                return Err(ManifoldError::ContradictoryFacts(format!("{a} not diffeomorphic to itself")));
            }
        }
        self.report.steps.push(DeductionStep { rule, premises, conclusion, note });
        Ok(true)
    }

    fn b2_plus(&self, m: &str) -> Option<i64> {
        self.records.get(m).and_then(|r| r.b2_plus().ok())
    }

    fn names(&self) -> Vec<&'a str> {
        self.records.keys().copied().collect()
    }

    fn pass(&mut self) -> Result<bool, ManifoldError> {
        let mut changed = false;
        let names = self.names();

        for &m in &names {
            let sym = Fact::Symplectic(m.into());
            if let Some(bp) = self.b2_plus(m).filter(|&b| b > 1) {
                if self.has(&sym) {
                    changed |= self.add(Rule::R1Taubes, vec![sym], Fact::SwNontrivial(m.into()), format!("b2+ = {bp}"))?;
                }
            }
        }

        for &n in &names {
            let std = Fact::Standard(n.into());
            if let Some(s) = self.records[n].standard_sum().filter(|s| s.cp2 >= 2) {
                if self.has(&std) {
                    changed |= self.add(
                        Rule::R2ConnectedSumVanishing,
                        vec![std],
                        Fact::SwTrivial(n.into()),
                        format!("{} summands with b2+ > 0", s.cp2),
                    )?;
                }
            }
        }

        for &m in &names {
            for &n in &names {
                if m == n {
                    continue;
                }
                let (rm, rn) = (self.records[m], self.records[n]);
                // one direction per pair: non-standard first, then by name
                let key = |name: &str| (self.has(&Fact::Standard(name.into())), name.to_string());
                if key(m) > key(n) {
                    continue;
                }
                let (scm, scn) = (Fact::SimplyConnected(m.into()), Fact::SimplyConnected(n.into()));
                if !self.has(&scm) || !self.has(&scn) {
                    continue;
                }
                let forms = (rm.b2_plus(), rm.b2_minus(), rn.b2_plus(), rn.b2_minus());
                let (Ok(pm), Ok(qm), Ok(pn), Ok(qn)) = forms else { continue };
                if rm.parity == Parity::Unknown || rm.parity != rn.parity || (pm, qm) != (pn, qn) {
                    continue;
                }
                changed |= self.add(
                    Rule::R3Freedman,
                    vec![scm, scn],
                    Fact::Homeomorphic(m.into(), n.into()),
                    format!("b2+ = {pm}, b2- = {qm}, {} form", rm.parity),
                )?;
            }
        }

        for &m in &names {
            for &n in &names {
                let (a, b) = (Fact::SwNontrivial(m.into()), Fact::SwTrivial(n.into()));
                if m != n && self.has(&a) && self.has(&b) {
                    changed |= self.add(
                        Rule::R4SwDistinguishes,
                        vec![a, b],
                        Fact::NotDiffeomorphic(m.into(), n.into()),
                        String::new(),
                    )?;
                }
            }
        }

        let verdicts: Vec<Fact> = self
            .report
            .steps
            .iter()
            .filter(|s| matches!(s.conclusion, Fact::FiberSumMinimality(..)))
            .map(|s| s.conclusion.clone())
            .collect();
        for v in verdicts {
            let Fact::FiberSumMinimality(m, verdict) = &v else { unreachable!() };
            let (conclusion, mut premises) = match verdict {
                MinimalityVerdict::Minimal => (Fact::Minimal(m.clone()), vec![]),
                MinimalityVerdict::NotMinimal => (Fact::NotMinimal(m.clone()), vec![]),
                MinimalityVerdict::ConditionallyMinimal(o) => {
                    if self.has(&Fact::Minimal(o.clone())) {
                        (Fact::Minimal(m.clone()), vec![Fact::Minimal(o.clone())])
                    } else if self.has(&Fact::NotMinimal(o.clone())) {
                        (Fact::NotMinimal(m.clone()), vec![Fact::NotMinimal(o.clone())])
                    } else {
                        continue;
                    }
                }
            };
            premises.insert(0, v.clone());
            changed |= self.add(Rule::R5Usher, premises, conclusion, String::new())?;
        }

        for &m in &names {
            let premises = vec![Fact::Minimal(m.into()), Fact::Symplectic(m.into()), Fact::SimplyConnected(m.into())];
            let Some(bp) = self.b2_plus(m).filter(|&b| b >= 1) else { continue };
            if premises.iter().all(|p| self.has(p)) {
                let note = if bp > 1 { "b2+ > 1" } else { "b2+ = 1" };
                changed |= self.add(Rule::R6Irreducible, premises, Fact::Irreducible(m.into()), note.into())?;
            }
        }

        for &m in &names {
            for &n in &names {
                let irr = Fact::Irreducible(m.into());
                let std = Fact::Standard(n.into());
                let Some(s) = self.records[n].standard_sum() else { continue };
                if m != n && s.cp2bar >= 1 && s.cp2 + s.cp2bar >= 2 && self.has(&irr) && self.has(&std) {
                    changed |= self.add(
                        Rule::R7ReducibleTarget,
                        vec![irr, std],
                        Fact::NotDiffeomorphic(m.into(), n.into()),
                        format!("{n} is a nontrivial connected sum"),
                    )?;
                }
            }
        }

        for &m in &names {
            if self.b2_plus(m) != Some(1) {
                continue;
            }
            let base = [Fact::Minimal(m.into()), Fact::Symplectic(m.into())];
            if !base.iter().all(|p| self.has(p)) {
                continue;
            }
            let pairs = [
                (Fact::PositiveScalarCurvature(m.into()), Fact::RationalOrRuled(m.into())),
                (Fact::RationalOrRuled(m.into()), Fact::PositiveScalarCurvature(m.into())),
            ];
            for (from, to) in pairs {
                if self.has(&from) {
                    let mut premises = base.to_vec();
                    premises.push(from);
                    changed |= self.add(Rule::R8RationalOrRuled, premises, to, "b2+ = 1".into())?;
                }
            }
        }
        Ok(changed)
    }
}

/// Forward-chains the rule set to a fixpoint.
///
/// Record flags and the extra `facts` are premises. Inputs are sorted
/// canonically first, so the report depends only on their content.
pub fn deduce(records: &[InvariantRecord], facts: &[Fact]) -> Result<DeductionReport, ManifoldError> {
    let mut map = BTreeMap::new();
    for r in records {
        r.validate()?;
        map.insert(r.name.as_str(), r);
    }
    let mut given: BTreeSet<Fact> = facts.iter().cloned().collect();
    for f in &given {
        if let Some(m) = f.manifolds().into_iter().find(|m| !map.contains_key(m)) {
            return Err(ManifoldError::UnknownManifold(m.to_string()));
        }
    }
    for r in map.values() {
        given.extend(r.flags.iter().map(|&fl| Fact::from_flag(fl, &r.name)));
    }
    let mut engine = Engine { records: map, report: DeductionReport::default() };
    for f in given {
        engine.add(Rule::Given, Vec::new(), f, String::new())?;
    }
    while engine.pass()? {}
    Ok(engine.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::standard;

    fn exotic_candidate(name: &str, c1sq: i64, chi_h: i64) -> InvariantRecord {
        InvariantRecord::from_characteristic(name, c1sq, -4, chi_h, Some(0))
            .unwrap()
            .with_parity(Parity::Odd)
            .with_flag(Flag::SimplyConnected)
            .with_flag(Flag::Symplectic)
    }

    #[test]
    fn b2_plus_three_chain() {
        let x = exotic_candidate("X", 12, 2);
        let n = standard("3CP2 # 7CP2bar").unwrap();
        let facts = [Fact::FiberSumMinimality("X".into(), MinimalityVerdict::Minimal)];
        let r = deduce(&[x, n], &facts).unwrap();
        let nd = Fact::NotDiffeomorphic("X".into(), "3CP2 # 7CP2bar".into());
        let rules: Vec<&str> = r.rules_for(&nd).unwrap().iter().map(Rule::code).collect();
        assert_eq!(rules, ["R1", "R2", "R4"]);
        assert!(r.exotic("X", "3CP2 # 7CP2bar"));
        assert!(r.holds(&Fact::Irreducible("X".into())));
        assert!(r.holds(&Fact::Homeomorphic("3CP2 # 7CP2bar".into(), "X".into())));
    }

    #[test]
    fn b2_plus_one_chain() {
        let y = exotic_candidate("Y", 4, 1);
        let n = standard("CP2 # 5CP2bar").unwrap();
        let facts = [Fact::FiberSumMinimality("Y".into(), MinimalityVerdict::Minimal)];
        let r = deduce(&[y, n], &facts).unwrap();
        assert!(!r.holds(&Fact::SwNontrivial("Y".into())));
        assert!(!r.holds(&Fact::SwTrivial("CP2 # 5CP2bar".into())));
        let nd = Fact::NotDiffeomorphic("Y".into(), "CP2 # 5CP2bar".into());
        let rules: Vec<&str> = r.rules_for(&nd).unwrap().iter().map(Rule::code).collect();
        assert_eq!(rules, ["R5", "R6", "R7"]);
        assert!(r.exotic("Y", "CP2 # 5CP2bar"));
    }

    #[test]
    fn standard_alone_concludes_nothing_exotic() {
        let n = standard("3CP2 # 7CP2bar").unwrap();
        let r = deduce(&[n], &[]).unwrap();
        assert!(r.conclusions().all(|s| !matches!(s.conclusion, Fact::NotDiffeomorphic(..))));
    }

    #[test]
    fn contradictions_error() {
        let x = exotic_candidate("X", 12, 2).with_flag(Flag::SWTrivial);
        assert!(matches!(deduce(&[x], &[]), Err(ManifoldError::ContradictoryFacts(_))));
        let y = exotic_candidate("Y", 4, 1);
        let facts = [Fact::Minimal("Y".into()), Fact::NotMinimal("Y".into())];
        assert!(deduce(&[y], &facts).is_err());
        assert!(matches!(deduce(&[], &[Fact::Minimal("W".into())]), Err(ManifoldError::UnknownManifold(_))));
    }

    #[test]
    fn psc_rule_is_premise_gated() {
        let y = exotic_candidate("Y", 4, 1).with_flag(Flag::Minimal);
        let r = deduce(std::slice::from_ref(&y), &[]).unwrap();
        assert!(!r.holds(&Fact::RationalOrRuled("Y".into())));
        let r = deduce(&[y], &[Fact::PositiveScalarCurvature("Y".into())]).unwrap();
        assert!(r.holds(&Fact::RationalOrRuled("Y".into())));
    }

    #[test]
    fn fact_text_round_trip() {
        for s in ["homeomorphic(X, 3CP2 # 7CP2bar)", "sw_trivial(N)", "fiber_sum_minimal_iff(A, B)"] {
            assert_eq!(s.parse::<Fact>().unwrap().to_string(), s);
        }
        assert!("nonsense(X)".parse::<Fact>().is_err());
    }
}
