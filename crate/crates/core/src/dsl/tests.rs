use super::*;

fn report(text: &str) -> VerificationReport {
    run(text, "test", &ExecConfig::default()).unwrap()
}

#[test]
fn two_statement_script() {
    let s = parse("let G = presentation { gens: a; rels: a^3; }\nassert order(G) == 3").unwrap();
    assert_eq!(s.statements.len(), 2);
    let r = execute(&s, "t", &ExecConfig::default()).unwrap();
    assert_eq!(r.summary, Summary { pass: 1, fail: 0, unknown: 0 });
}

#[test]
fn failing_order_reports_actual() {
    let r = report("let G = presentation { gens: a; rels: a^3; }\nassert order(G) == 5\nassert order(G) == 3");
    assert_eq!(r.assertions[0].status, Status::Fail);
    assert_eq!(r.assertions[0].detail, "actual 3");
    assert_eq!(r.assertions[1].status, Status::Pass);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn exhausted_budget_is_unknown() {
    let r = report("let G = surface_group(2)\nassert trivial(G) budget 50\nassert order(G) == 1 budget 50");
    assert!(r.assertions.iter().all(|a| a.status == Status::Unknown));
    assert_eq!(r.exit_code(), 2);
}

#[test]
fn unbalanced_brace_position() {
    let e = parse("let G = presentation { gens: a; rels: a^3;\nassert x").unwrap_err();
    let DslError::Syntax(s) = e else { panic!("{e:?}") };
    assert_eq!((s.span.line, s.span.col), (1, 22));
}

#[test]
fn resolution_errors() {
    assert!(matches!(parse("assert trivial(H)"), Err(DslError::UnresolvedReference(..))));
    assert!(matches!(parse("let a = 1\nlet a = 2"), Err(DslError::DuplicateName(..))));
    assert!(matches!(parse("assert frobnicate(1)"), Err(DslError::UnknownFunction(..))));
    assert!(matches!(parse("let x = widget { a: 1 }"), Err(DslError::UnknownRecord(..))));
    assert!(parse("assert trivial(Y_K)").is_ok());
}

#[test]
fn type_errors_carry_location() {
    let e = run("let Z = standard(\"CP2\")\nassert order(Z) == 1", "t", &ExecConfig::default()).unwrap_err();
    let DslError::Runtime(span, msg) = e else { panic!() };
    assert_eq!(span.line, 2);
    assert!(msg.contains("presentation"), "{msg}");
}

#[test]
fn display_round_trip() {
    for (_, text) in BUNDLED_SCRIPTS {
        let s = parse(text).unwrap();
        let again = parse(&s.to_string()).unwrap();
        assert_eq!(s, again);
    }
}

#[test]
fn parallel_matches_sequential() {
    let text = BUNDLED_SCRIPTS[2].1;
    let seq = run(text, "t", &ExecConfig::default()).unwrap();
    let par = run(text, "t", &ExecConfig { parallel_asserts: true, ..Default::default() }).unwrap();
    assert_eq!(seq.without_timing().to_json(), par.without_timing().to_json());
}

#[test]
fn bundled_scripts_pass() {
    for (name, text) in BUNDLED_SCRIPTS {
        let r = run(text, name, &ExecConfig::default()).unwrap();
        for a in &r.assertions {
            assert_eq!(a.status, Status::Pass, "{name} #{}: {} ({})", a.index, a.text, a.detail);
        }
    }
}
