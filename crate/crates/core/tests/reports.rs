use exotica::dsl::{run, ExecConfig, Status, BUNDLED_SCRIPTS};

#[test]
fn reports_are_byte_identical_modulo_timing() {
    for (name, text) in BUNDLED_SCRIPTS {
        let seq = ExecConfig::default();
        let par = ExecConfig { parallel_asserts: true, ..ExecConfig::default() };
        let a = run(text, name, &seq).unwrap().without_timing().to_json();
        let b = run(text, name, &seq).unwrap().without_timing().to_json();
        let c = run(text, name, &par).unwrap().without_timing().to_json();
        assert_eq!(a, b, "{name}");
        assert_eq!(a, c, "{name}");
    }
}

#[test]
fn theorem_scripts_cite_every_assertion() {
    for (name, text) in BUNDLED_SCRIPTS.iter().filter(|(n, _)| n.starts_with("theorem")) {
        let r = run(text, name, &ExecConfig::default()).unwrap();
        assert!(!r.assertions.is_empty());
        for a in &r.assertions {
            assert!(a.citation.as_deref().is_some_and(|c| !c.is_empty()), "{name} #{}", a.index);
            assert_eq!(a.status, Status::Pass, "{name} #{}: {}", a.index, a.detail);
        }
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn exit_code_contract() {
    let cfg = ExecConfig::default();
    let pass = run("let G = presentation { gens: a; rels: a^3; }\nassert order(G) == 3", "t", &cfg).unwrap();
    assert_eq!(pass.exit_code(), 0);
    let fail = run("let G = presentation { gens: a; rels: a^3; }\nassert order(G) == 5\nassert order(G) == 3", "t", &cfg).unwrap();
    assert_eq!(fail.exit_code(), 1);
    assert_eq!(fail.assertions[0].detail, "actual 3");
    assert_eq!(fail.assertions[1].status, Status::Pass);
    let unknown = run("assert trivial(surface_group(2)) budget 50", "t", &cfg).unwrap();
    assert_eq!(unknown.exit_code(), 2);
    assert!(run("assert fiber_sum(surface_group(2), 1, 2)", "t", &cfg).is_err());
}
