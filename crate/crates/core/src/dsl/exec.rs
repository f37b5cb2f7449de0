use std::collections::BTreeMap;
use std::time::Instant;

use crate::constructions::{
    bundled, cross_circle, knot, zero_surgery, BundledItem, ConstructionError, KnotRecord, Provenance,
};
use crate::group::{
    abelianization, abelianize, coset_enumerate, tietze_eliminate, tietze_eliminate_auto, BoundaryData, CosetStatus,
    Generator, Presentation, Word,
};
use crate::lexer::Span;
use crate::manifold::{
    blow_up, connected_sum, deduce, fiber_sum, freedman_type, standard, usher_minimality, Fact, FiberSumDescription,
    Flag, IntersectionLattice, InvariantRecord, Parity, Summand,
};
use crate::matrix::Matrix;
use crate::surfaces::{class_of_word, compose, lefschetz_pi1, surface_group, transvection, HomologyClass, SurfaceHomology, TwistSequence};

use super::ast::{Expr, ExprKind, Script, Statement};
use super::report::{AssertionResult, Status, VerificationReport};
use super::value::Value;
use super::DslError;

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExecConfig {
    /// Coset budget for statements without their own `budget` clause.
    pub budget: usize,
    pub parallel_asserts: bool,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig { budget: DEFAULT_BUDGET, parallel_asserts: false }
    }
}

type Env = BTreeMap<String, Value>;

struct Ctx<'a> {
    env: &'a Env,
    external: &'a dyn Fn(&str) -> Option<Value>,
    budget: usize,
}

fn bundled_value(name: &str) -> Option<Value> {
    bundled(name).ok().map(|item: &BundledItem| item.value.clone().into())
}

/// Runs every statement in order. Failing assertions do not stop the run;
/// evaluation errors do.
pub fn execute(script: &Script, id: &str, config: &ExecConfig) -> Result<VerificationReport, DslError> {
    execute_with(script, id, config, &bundled_value)
}

pub(crate) fn execute_with(
    script: &Script,
    id: &str,
    config: &ExecConfig,
    external: &dyn Fn(&str) -> Option<Value>,
) -> Result<VerificationReport, DslError> {
    let mut env = Env::new();
    let mut pending = Vec::new();
    let mut results = Vec::new();
    for stmt in &script.statements {
        match stmt {
            Statement::Let { name, value, .. } => {
                let ctx = Ctx { env: &env, external, budget: config.budget };
                let v = ctx.eval(value)?;
                env.insert(name.clone(), v);
            }
            Statement::Assert { .. } => {
                let index = pending.len() + results.len() + 1;
                if config.parallel_asserts {
                    pending.push((index, stmt));
                } else {
                    results.push(run_assert(index, stmt, &env, external, config.budget)?);
                }
            }
        }
    }
    if !pending.is_empty() {
        let env = &env;
        let outcomes: Vec<Result<AssertionResult, DslError>> = std::thread::scope(|s| {
            let handles: Vec<_> = pending
                .iter()
                .map(|&(i, stmt)| s.spawn(move || run_assert(i, stmt, env, &bundled_value, config.budget)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("assertion thread panicked")).collect()
        });
        for r in outcomes {
            results.push(r?);
        }
    }
    Ok(VerificationReport::new(id, results))
}

fn run_assert(
    index: usize,
    stmt: &Statement,
    env: &Env,
    external: &dyn Fn(&str) -> Option<Value>,
    default_budget: usize,
) -> Result<AssertionResult, DslError> {
    let Statement::Assert { expr, expected, budget, cite, .. } = stmt else { unreachable!() };
    let ctx = Ctx { env, external, budget: budget.unwrap_or(default_budget) };
    let start = Instant::now();
    let (status, detail) = ctx.check(expr, expected.as_ref())?;
    Ok(AssertionResult {
        index,
        text: stmt.to_string(),
        status,
        detail,
        citation: cite.clone(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

/// Evaluates the `let` statements of a data script and returns them in
/// order with their citations.
pub(crate) fn evaluate_bindings(
    script: &Script,
    external: &dyn Fn(&str) -> Option<Value>,
) -> Result<Vec<(String, Value, Option<String>)>, DslError> {
    let mut env = Env::new();
    let mut out = Vec::new();
    for stmt in &script.statements {
        if let Statement::Let { name, value, cite, .. } = stmt {
            let v = Ctx { env: &env, external, budget: DEFAULT_BUDGET }.eval(value)?;
            env.insert(name.clone(), v.clone());
            out.push((name.clone(), v, cite.clone()));
        }
    }
    Ok(out)
}

fn rt(span: Span, msg: impl std::fmt::Display) -> DslError {
    DslError::Runtime(span, msg.to_string())
}

struct Args<'a> {
    name: &'a str,
    span: Span,
    values: Vec<Value>,
}

macro_rules! getter {
    ($fn:ident, $variant:ident, $ty:ty, $what:literal) => {
        fn $fn(&self, i: usize) -> Result<&$ty, DslError> {
            match self.get(i)? {
                Value::$variant(x) => Ok(x),
                other => Err(self.type_error(i, $what, other)),
            }
        }
    };
}

impl Args<'_> {
    fn arity(&self, allowed: &[usize]) -> Result<(), DslError> {
        if allowed.contains(&self.values.len()) {
            Ok(())
        } else {
            let want: Vec<String> = allowed.iter().map(usize::to_string).collect();
            Err(rt(
                self.span,
                format!("{} takes {} argument(s), got {}", self.name, want.join(" or "), self.values.len()),
            ))
        }
    }

    fn get(&self, i: usize) -> Result<&Value, DslError> {
        self.values.get(i).ok_or_else(|| rt(self.span, format!("{}: missing argument {}", self.name, i + 1)))
    }

    fn type_error(&self, i: usize, want: &str, got: &Value) -> DslError {
        rt(self.span, format!("{}: argument {} must be a {want}, got a {}", self.name, i + 1, got.type_name()))
    }

    getter!(presentation, Presentation, Presentation, "presentation");
    getter!(word, Word, Word, "word");
    getter!(string, Str, String, "string");
    getter!(record, Record, InvariantRecord, "invariant record");
    getter!(lattice, Lattice, IntersectionLattice<i64>, "lattice");
    getter!(matrix, Matrix, Matrix<i64>, "matrix");
    getter!(class, Class, HomologyClass<i64>, "class");
    getter!(knot, Knot, KnotRecord, "knot");
    getter!(boundary, Boundary, BoundaryData, "boundary");
    getter!(list, List, Vec<Value>, "list");

    fn int(&self, i: usize) -> Result<i64, DslError> {
        match self.get(i)? {
            Value::Int(v) => Ok(*v),
            other => Err(self.type_error(i, "integer", other)),
        }
    }

    fn count(&self, i: usize) -> Result<usize, DslError> {
        let v = self.int(i)?;
        usize::try_from(v).map_err(|_| rt(self.span, format!("{}: argument {} must be non-negative", self.name, i + 1)))
    }

    /// Words from the arguments starting at `from`; lists are flattened.
    fn words(&self, from: usize) -> Result<Vec<Word>, DslError> {
        let mut out = Vec::new();
        for (i, v) in self.values.iter().enumerate().skip(from) {
            match v {
                Value::Word(w) => out.push(w.clone()),
                Value::List(items) => {
                    for x in items {
                        match x {
                            Value::Word(w) => out.push(w.clone()),
                            other => return Err(self.type_error(i, "list of words", other)),
                        }
                    }
                }
                other => return Err(self.type_error(i, "word or list of words", other)),
            }
        }
        Ok(out)
    }

    fn lattice_classes(&self, i: usize) -> Result<Vec<Vec<i64>>, DslError> {
        self.list(i)?
            .iter()
            .map(|v| match v {
                Value::Class(c) => Ok(c.coefficients.clone()),
                other => Err(self.type_error(i, "list of classes", other)),
            })
            .collect()
    }
}

fn fact_from(text: &str, span: Span) -> Result<Fact, DslError> {
    text.parse().map_err(|e| rt(span, e))
}

impl Ctx<'_> {
    fn check(&self, expr: &Expr, expected: Option<&Expr>) -> Result<(Status, String), DslError> {
        let v = self.eval(expr)?;
        if let Value::Unknown(why) = &v {
            return Ok((Status::Unknown, why.clone()));
        }
        match expected {
            None => match v {
                Value::Bool(true) => Ok((Status::Pass, "true".into())),
                Value::Bool(false) => Ok((Status::Fail, "actual false".into())),
                other => Err(rt(expr.span, format!("assertion needs a boolean, got a {}", other.type_name()))),
            },
            Some(e) => {
                let w = self.eval(e)?;
                if let Value::Unknown(why) = &w {
                    return Ok((Status::Unknown, why.clone()));
                }
                if v.matches(&w) {
                    Ok((Status::Pass, v.to_string()))
                } else {
                    Ok((Status::Fail, format!("actual {v}")))
                }
            }
        }
    }

    fn eval(&self, e: &Expr) -> Result<Value, DslError> {
        match &e.kind {
            ExprKind::Ident(name) => self
                .env
                .get(name)
                .cloned()
                .or_else(|| (self.external)(name))
                .ok_or_else(|| match bundled(name) {
                    Err(err @ ConstructionError::Data(_)) => rt(e.span, err),
                    _ => DslError::UnresolvedReference(name.clone(), e.span),
                }),
            ExprKind::Int(v) => Ok(Value::Int(*v)),
            ExprKind::Bool(b) => Ok(Value::Bool(*b)),
            ExprKind::Str(s) => Ok(Value::Str(s.clone())),
            ExprKind::Presentation(p) => Ok(Value::Presentation(p.clone())),
            ExprKind::Word(w) => Ok(Value::Word(w.clone())),
            ExprKind::Glue(g) => Ok(Value::Glue(g.clone())),
            ExprKind::List(items) => {
                let mut out = Vec::with_capacity(items.len());
                for x in items {
                    let v = self.eval(x)?;
                    if matches!(v, Value::Unknown(_)) {
                        return Ok(v);
                    }
                    out.push(v);
                }
                Ok(Value::List(out))
            }
            ExprKind::Call { name, args } => {
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    let v = self.eval(a)?;
                    if matches!(v, Value::Unknown(_)) {
                        return Ok(v);
                    }
                    values.push(v);
                }
                self.call(&Args { name, span: e.span, values })
            }
            ExprKind::Record { kind, fields } => {
                let mut values = BTreeMap::new();
                for (k, x) in fields {
                    let v = self.eval(x)?;
                    if matches!(v, Value::Unknown(_)) {
                        return Ok(v);
                    }
                    values.insert(k.as_str(), v);
                }
                record(kind, values, e.span)
            }
        }
    }

    fn call(&self, a: &Args<'_>) -> Result<Value, DslError> {
        let span = a.span;
        let budget = self.budget;
        let v = match a.name {
            "order" | "trivial" | "index" => {
                a.arity(if a.name == "index" { &[2] } else { &[1] })?;
                let p = a.presentation(0)?;
                let subgroup = if a.name == "index" { a.words(1)? } else { Vec::new() };
                let table = coset_enumerate(p, &subgroup, budget).map_err(|e| rt(span, e))?;
                match table.status {
                    CosetStatus::Complete { index } => {
                        if !table.verify(p, &subgroup) {
                            return Err(rt(span, "coset table failed its audit"));
                        }
                        if a.name == "trivial" {
                            Value::Bool(index == 1)
                        } else {
                            Value::Int(index as i64)
                        }
                    }
                    CosetStatus::Exhausted { budget } => Value::Unknown(format!("coset budget {budget} exhausted")),
                }
            }
            "abelianize" => {
                a.arity(&[1])?;
                Value::Abelian(abelianize(a.presentation(0)?))
            }
            "free_rank" => {
                a.arity(&[1])?;
                match a.get(0)? {
                    Value::Abelian(g) => Value::Int(g.free_rank as i64),
                    Value::Presentation(p) => Value::Int(abelianize(p).free_rank as i64),
                    other => return Err(a.type_error(0, "abelian group or presentation", other)),
                }
            }
            "null_homologous" => {
                a.arity(&[2])?;
                let p = a.presentation(0)?;
                let w = a.word(1)?;
                p.check_word(w).map_err(|e| rt(span, e))?;
                Value::Bool(abelianization(p).is_null_homologous(w))
            }
            "quotient" => {
                let p = a.presentation(0)?;
                Value::Presentation(p.quotient(&a.words(1)?).map_err(|e| rt(span, e))?)
            }
            "tietze_eliminate" => {
                a.arity(&[2, 3])?;
                let p = a.presentation(0)?;
                let g = Generator::new(a.string(1)?);
                let out = if a.values.len() == 3 {
                    tietze_eliminate(p, &g, a.word(2)?)
                } else {
                    tietze_eliminate_auto(p, &g)
                };
                Value::Presentation(out.map_err(|e| rt(span, e))?)
            }
            "generator_count" | "relator_count" => {
                a.arity(&[1])?;
                let p = a.presentation(0)?;
                let n = if a.name == "generator_count" { p.generators().len() } else { p.relators().len() };
                Value::Int(n as i64)
            }
            "van_kampen" => {
                a.arity(&[3])?;
                let g = match a.get(2)? {
                    Value::Glue(g) => g,
                    other => return Err(a.type_error(2, "gluing map", other)),
                };
                Value::Presentation(g.glue(a.boundary(0)?, a.boundary(1)?).map_err(|e| rt(span, e))?)
            }
            "boundary_group" => {
                a.arity(&[1])?;
                let b = a.boundary(0)?;
                Value::Presentation(b.presentation.clone())
            }
            "closed_group" => {
                a.arity(&[1])?;
                let b = a.boundary(0)?;
                let p = b.presentation.quotient(std::slice::from_ref(&b.meridian)).map_err(|e| rt(span, e))?;
                Value::Presentation(p)
            }
            "surface_group" => {
                a.arity(&[1])?;
                Value::Presentation(surface_group(a.count(0)?).map_err(|e| rt(span, e))?)
            }
            "lefschetz_pi1" => {
                a.arity(&[2])?;
                Value::Presentation(lefschetz_pi1(a.count(0)?, &a.words(1)?).map_err(|e| rt(span, e))?)
            }
            "class_of_word" => {
                a.arity(&[2])?;
                let s = SurfaceHomology::new(a.count(1)?).map_err(|e| rt(span, e))?;
                Value::Class(class_of_word(a.word(0)?, &s).map_err(|e| rt(span, e))?)
            }
            "transvection" => {
                a.arity(&[1])?;
                let c = a.class(0)?;
                let s = surface_of(c.coefficients.len(), span)?;
                Value::Matrix(transvection(c, &s).map_err(|e| rt(span, e))?)
            }
            "compose" => {
                a.arity(&[2])?;
                let s = SurfaceHomology::new(a.count(1)?).map_err(|e| rt(span, e))?;
                let mut curves = Vec::new();
                for v in a.list(0)? {
                    curves.push(match v {
                        Value::Class(c) => c.clone(),
                        Value::Word(w) => class_of_word(w, &s).map_err(|e| rt(span, e))?,
                        other => return Err(a.type_error(0, "list of classes or words", other)),
                    });
                }
                let seq = TwistSequence::new(&s, curves).map_err(|e| rt(span, e))?;
                Value::Matrix(compose(&seq, &s).map_err(|e| rt(span, e))?)
            }
            "identity" => {
                a.arity(&[1])?;
                Value::Matrix(Matrix::identity(a.count(0)?))
            }
            "power" => {
                a.arity(&[2])?;
                let m = a.matrix(0)?;
                if !m.is_square() {
                    return Err(rt(span, "power of a non-square matrix"));
                }
                let k = u32::try_from(a.int(1)?).map_err(|_| rt(span, "power: exponent must be non-negative"))?;
                Value::Matrix(m.pow(k))
            }
            "preserves_pairing" => {
                a.arity(&[1])?;
                let m = a.matrix(0)?;
                let s = surface_of(m.nrows(), span)?;
                Value::Bool(s.preserves_pairing(m))
            }
            "knot" => {
                a.arity(&[1])?;
                Value::Knot(knot(a.string(0)?).map_err(|e| rt(span, e))?)
            }
            "knot_group" => {
                a.arity(&[1])?;
                Value::Presentation(a.knot(0)?.group.clone())
            }
            "meridian" => {
                a.arity(&[1])?;
                match a.get(0)? {
                    Value::Knot(k) => Value::Word(k.meridian.clone()),
                    Value::Boundary(b) => Value::Word(b.meridian.clone()),
                    other => return Err(a.type_error(0, "knot or boundary", other)),
                }
            }
            "longitude" => {
                a.arity(&[1])?;
                Value::Word(a.knot(0)?.longitude.clone())
            }
            "zero_surgery" => {
                a.arity(&[1])?;
                Value::Presentation(zero_surgery(a.knot(0)?))
            }
            "cross_circle" => {
                a.arity(&[1])?;
                Value::Presentation(cross_circle(a.presentation(0)?))
            }
            "bundled" => {
                a.arity(&[1])?;
                let name = a.string(0)?;
                bundled(name).map_err(|e| rt(span, e))?.value.clone().into()
            }
            "standard" => {
                a.arity(&[1])?;
                Value::Record(standard(a.string(0)?).map_err(|e| rt(span, e))?)
            }
            "blow_up" => {
                a.arity(&[2])?;
                let n = u32::try_from(a.int(1)?).map_err(|_| rt(span, "blow_up: count must be non-negative"))?;
                Value::Record(blow_up(a.record(0)?, n))
            }
            "fiber_sum" => {
                a.arity(&[3])?;
                let g = a.int(2)?;
                if g < 1 {
                    return Err(rt(span, "fiber_sum: genus must be at least 1"));
                }
                Value::Record(fiber_sum(a.record(0)?, a.record(1)?, g))
            }
            "connected_sum" => {
                a.arity(&[2])?;
                Value::Record(connected_sum(a.record(0)?, a.record(1)?))
            }
            "freedman_type" => {
                a.arity(&[1])?;
                Value::Str(freedman_type(a.record(0)?).map_err(|e| rt(span, e))?)
            }
            "with_pi1" => {
                a.arity(&[2])?;
                let r = a.record(0)?.clone();
                let p = a.presentation(1)?;
                let h1 = abelianize(p);
                if !h1.is_trivial() {
                    Value::Record(r.with_b1(h1.free_rank as i64))
                } else {
                    let table = coset_enumerate(p, &[], budget).map_err(|e| rt(span, e))?;
                    match table.status {
                        CosetStatus::Complete { index: 1 } if table.verify(p, &[]) => {
                            Value::Record(r.with_b1(0).with_flag(Flag::SimplyConnected).infer_parity())
                        }
                        CosetStatus::Complete { .. } => Value::Record(r.with_b1(0)),
                        CosetStatus::Exhausted { budget } => Value::Unknown(format!(
                            "simple connectivity of {} undecided: coset budget {budget} exhausted",
                            r.name
                        )),
                    }
                }
            }
            "declare" => {
                let mut r = a.record(0)?.clone();
                for i in 1..a.values.len() {
                    let flag: Flag = a.string(i)?.parse().map_err(|e| rt(span, e))?;
                    r = r.with_flag(flag);
                }
                r.validate().map_err(|e| rt(span, e))?;
                Value::Record(r)
            }
            "with_parity" => {
                a.arity(&[2])?;
                let p: Parity = a.string(1)?.parse().map_err(|e| rt(span, e))?;
                Value::Record(a.record(0)?.clone().with_parity(p))
            }
            "named" => {
                a.arity(&[2])?;
                Value::Record(a.record(0)?.clone().with_name(a.string(1)?.as_str()))
            }
            "name" => {
                a.arity(&[1])?;
                Value::Str(a.record(0)?.name.clone())
            }
            "c1sq" | "sigma" | "euler" | "chi_h" | "b1" | "b2_plus" | "b2_minus" | "characteristic" => {
                a.arity(&[1])?;
                let r = a.record(0)?;
                let chi = || r.chi_h.ok_or_else(|| rt(span, format!("chi_h of {} is not an integer", r.name)));
                match a.name {
                    "c1sq" => Value::Int(r.c1sq),
                    "sigma" => Value::Int(r.sigma),
                    "euler" => Value::Int(r.e),
                    "chi_h" => Value::Int(chi()?),
                    "b1" => Value::Int(r.b1.ok_or_else(|| rt(span, format!("b1 of {} is pending", r.name)))?),
                    "b2_plus" => Value::Int(r.b2_plus().map_err(|e| rt(span, e))?),
                    "b2_minus" => Value::Int(r.b2_minus().map_err(|e| rt(span, e))?),
                    _ => Value::List(vec![Value::Int(r.c1sq), Value::Int(r.sigma), Value::Int(chi()?)]),
                }
            }
            "class" => {
                a.arity(&[2])?;
                let c = a.lattice(0)?.class(a.string(1)?).map_err(|e| rt(span, e))?;
                Value::Class(HomologyClass::new(c))
            }
            "pairing" => {
                a.arity(&[3])?;
                let l = a.lattice(0)?;
                Value::Int(l.pairing(&a.class(1)?.coefficients, &a.class(2)?.coefficients).map_err(|e| rt(span, e))?)
            }
            "square" => {
                a.arity(&[2])?;
                Value::Int(a.lattice(0)?.square(&a.class(1)?.coefficients).map_err(|e| rt(span, e))?)
            }
            "adjunction_genus" => {
                a.arity(&[3])?;
                let l = a.lattice(0)?;
                let g = l.adjunction_genus(&a.class(1)?.coefficients, &a.class(2)?.coefficients);
                Value::Int(g.map_err(|e| rt(span, e))?)
            }
            "exceptional_disjoint" => {
                a.arity(&[3])?;
                let l = a.lattice(0)?;
                let n = l.exceptional_disjoint_from(&a.class(1)?.coefficients, &a.lattice_classes(2)?);
                Value::Int(n.map_err(|e| rt(span, e))? as i64)
            }
            "usher_minimality" => {
                a.arity(&[2])?;
                let d = match a.get(0)? {
                    Value::FiberSum(d) => d,
                    other => return Err(a.type_error(0, "fiber sum", other)),
                };
                let verdict = usher_minimality(d).map_err(|e| rt(span, e))?;
                Value::Verdict { manifold: a.string(1)?.clone(), verdict }
            }
            "fact" => {
                a.arity(&[1])?;
                Value::Fact(fact_from(a.string(0)?, span)?)
            }
            "deduce" => {
                a.arity(&[1, 2])?;
                let mut records = Vec::new();
                for v in a.list(0)? {
                    match v {
                        Value::Record(r) => records.push(r.clone()),
                        other => return Err(a.type_error(0, "list of invariant records", other)),
                    }
                }
                let mut facts = Vec::new();
                if a.values.len() == 2 {
                    for v in a.list(1)? {
                        facts.push(match v {
                            Value::Fact(f) => f.clone(),
                            Value::Str(s) => fact_from(s, span)?,
                            Value::Verdict { manifold, verdict } => {
                                Fact::FiberSumMinimality(manifold.clone(), verdict.clone())
                            }
                            other => return Err(a.type_error(1, "list of facts", other)),
                        });
                    }
                }
                Value::Report(deduce(&records, &facts).map_err(|e| rt(span, e))?)
            }
            "concluded" | "rules" => {
                a.arity(&[2])?;
                let r = match a.get(0)? {
                    Value::Report(r) => r,
                    other => return Err(a.type_error(0, "deduction report", other)),
                };
                let f = fact_from(a.string(1)?, span)?;
                if a.name == "concluded" {
                    Value::Bool(r.holds(&f))
                } else {
                    match r.rules_for(&f) {
                        None => Value::Str("not derived".into()),
                        Some(rules) if rules.is_empty() => Value::Str("given".into()),
                        Some(rules) => {
                            let codes: Vec<&str> = rules.iter().map(|r| r.code()).collect();
                            Value::Str(codes.join("+"))
                        }
                    }
                }
            }
            "exotic" => {
                a.arity(&[3])?;
                let r = match a.get(0)? {
                    Value::Report(r) => r,
                    other => return Err(a.type_error(0, "deduction report", other)),
                };
                Value::Bool(r.exotic(a.string(1)?, a.string(2)?))
            }
            "not" => {
                a.arity(&[1])?;
                match a.get(0)? {
                    Value::Bool(b) => Value::Bool(!b),
                    other => return Err(a.type_error(0, "boolean", other)),
                }
            }
            other => return Err(DslError::UnknownFunction(other.to_string(), span)),
        };
        Ok(v)
    }
}

fn surface_of(dim: usize, span: Span) -> Result<SurfaceHomology, DslError> {
    if !dim.is_multiple_of(2) {
        return Err(rt(span, format!("{dim} coordinates is not a surface homology rank")));
    }
    SurfaceHomology::new(dim / 2).map_err(|e| rt(span, e))
}

struct Fields<'a> {
    kind: &'a str,
    span: Span,
    values: BTreeMap<&'a str, Value>,
}

impl Fields<'_> {
    fn take(&mut self, key: &str) -> Option<Value> {
        self.values.remove(key)
    }

    fn need(&mut self, key: &str) -> Result<Value, DslError> {
        self.take(key).ok_or_else(|| rt(self.span, format!("{} is missing field `{key}`", self.kind)))
    }

    fn bad(&self, key: &str, want: &str, got: &Value) -> DslError {
        rt(self.span, format!("{}: field `{key}` must be a {want}, got a {}", self.kind, got.type_name()))
    }

    fn int(&mut self, key: &str) -> Result<Option<i64>, DslError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Int(v)) => Ok(Some(v)),
            Some(other) => Err(self.bad(key, "integer", &other)),
        }
    }

    fn string(&mut self, key: &str) -> Result<Option<String>, DslError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Str(s)) => Ok(Some(s)),
            Some(other) => Err(self.bad(key, "string", &other)),
        }
    }

    fn boolean(&mut self, key: &str) -> Result<Option<bool>, DslError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(b)),
            Some(other) => Err(self.bad(key, "boolean", &other)),
        }
    }

    fn word(&mut self, key: &str) -> Result<Word, DslError> {
        match self.need(key)? {
            Value::Word(w) => Ok(w),
            other => Err(self.bad(key, "word", &other)),
        }
    }

    fn finish(self) -> Result<(), DslError> {
        match self.values.keys().next() {
            Some(k) => Err(rt(self.span, format!("{} has no field `{k}`", self.kind))),
            None => Ok(()),
        }
    }
}

fn record(kind: &str, values: BTreeMap<&str, Value>, span: Span) -> Result<Value, DslError> {
    let mut f = Fields { kind, span, values };
    let v = match kind {
        "invariants" => {
            let name = f.string("name")?.unwrap_or_default();
            let b1 = f.int("b1")?;
            let sigma = f.int("sigma")?.ok_or_else(|| rt(span, "invariants needs `sigma`"))?;
            let mut r = match (f.int("e")?, f.int("c1sq")?, f.int("chi_h")?) {
                (Some(e), c1sq, None) => {
                    let r = InvariantRecord::from_euler_signature(name, e, sigma, b1);
                    if c1sq.is_some_and(|c| c != r.c1sq) {
                        return Err(rt(span, format!("c1sq disagrees with 3 sigma + 2 e = {}", r.c1sq)));
                    }
                    r
                }
                (e, Some(c1sq), Some(chi)) => {
                    let r = InvariantRecord::from_characteristic(name, c1sq, sigma, chi, b1).map_err(|x| rt(span, x))?;
                    if e.is_some_and(|e| e != r.e) {
                        return Err(rt(span, format!("e disagrees with 4 chi_h - sigma = {}", r.e)));
                    }
                    r
                }
                _ => return Err(rt(span, "invariants needs `e` or both `c1sq` and `chi_h`")),
            };
            if let Some(p) = f.string("parity")? {
                r = r.with_parity(p.parse().map_err(|e| rt(span, e))?);
            }
            if let Some(flags) = f.take("flags") {
                let Value::List(items) = flags else { return Err(f.bad("flags", "list of strings", &flags)) };
                for x in items {
                    let Value::Str(s) = &x else { return Err(f.bad("flags", "list of strings", &x)) };
                    r = r.with_flag(s.parse().map_err(|e| rt(span, e))?);
                }
            }
            r.validate().map_err(|e| rt(span, e))?;
            Value::Record(r)
        }
        "lattice" => {
            let basis = match f.need("basis")? {
                Value::List(items) => items
                    .into_iter()
                    .map(|v| match v {
                        Value::Str(s) => Ok(s),
                        other => Err(f.bad("basis", "list of strings", &other)),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                other => return Err(f.bad("basis", "list of strings", &other)),
            };
            let gram = match f.need("gram")? {
                Value::Matrix(m) => m,
                Value::List(rows) => {
                    let mut out = Vec::new();
                    for r in rows {
                        let Value::List(cells) = &r else { return Err(f.bad("gram", "list of integer rows", &r)) };
                        let mut row = Vec::new();
                        for c in cells {
                            let Value::Int(v) = c else { return Err(f.bad("gram", "list of integer rows", c)) };
                            row.push(*v);
                        }
                        out.push(row);
                    }
                    if out.iter().any(|r| r.len() != out.len()) {
                        return Err(rt(span, "lattice: gram must be square"));
                    }
                    Matrix::from_rows(out)
                }
                other => return Err(f.bad("gram", "matrix", &other)),
            };
            Value::Lattice(IntersectionLattice::new(basis, gram).map_err(|e| rt(span, e))?)
        }
        "boundary" => {
            let p = match f.need("presentation")? {
                Value::Presentation(p) => p,
                other => return Err(f.bad("presentation", "presentation", &other)),
            };
            let surface = match f.need("surface")? {
                Value::List(items) => items
                    .into_iter()
                    .map(|v| match v {
                        Value::Word(w) => Ok(w),
                        other => Err(f.bad("surface", "list of words", &other)),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                other => return Err(f.bad("surface", "list of words", &other)),
            };
            let meridian = f.word("meridian")?;
            Value::Boundary(BoundaryData::new(p, surface, meridian).map_err(|e| rt(span, e))?)
        }
        "summand" => {
            let name = f.string("name")?.ok_or_else(|| rt(span, "summand needs `name`"))?;
            let off = match f.take("exceptional_off_surface") {
                None => false,
                Some(Value::Bool(b)) => b,
                Some(Value::Int(n)) => n > 0,
                Some(other) => return Err(f.bad("exceptional_off_surface", "boolean or count", &other)),
            };
            let mut s = Summand::new(name);
            s.minus_one_sphere_off_surface = off;
            s.sphere_bundle_with_section = f.boolean("sphere_bundle_section")?.unwrap_or(false);
            s.minimal = f.boolean("minimal")?;
            Value::Summand(s)
        }
        "fibersum" => {
            let mut side = |key: &str| match f.need(key)? {
                Value::Summand(s) => Ok(s),
                other => Err(f.bad(key, "summand", &other)),
            };
            let left = side("left")?;
            let right = side("right")?;
            Value::FiberSum(FiberSumDescription { summands: [left, right] })
        }
        "knot_data" => {
            let name = f.string("name")?.ok_or_else(|| rt(span, "knot_data needs `name`"))?;
            let group = match f.need("group")? {
                Value::Presentation(p) => p,
                other => return Err(f.bad("group", "presentation", &other)),
            };
            let meridian = f.word("meridian")?;
            let longitude = f.word("longitude")?;
            let genus = f.int("fibered_genus")?.ok_or_else(|| rt(span, "knot_data needs `fibered_genus`"))?;
            let provenance = match f.string("provenance")?.as_deref() {
                None | Some("transcribed") => Provenance::Transcribed,
                Some("standard") => Provenance::Standard,
                Some(other) => return Err(rt(span, format!("unknown provenance `{other}`"))),
            };
            let genus = u32::try_from(genus).map_err(|_| rt(span, "fibered_genus must be non-negative"))?;
            let k = KnotRecord::new(name, group, meridian, longitude, genus, provenance)
                .map_err(|e: ConstructionError| rt(span, e))?;
            Value::Knot(k)
        }
        other => return Err(DslError::UnknownRecord(other.to_string(), span)),
    };
    f.finish()?;
    Ok(v)
}
