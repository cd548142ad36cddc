//! JSON documents and the command-line frontend.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use common::{free, random_poly, rng};
use ncpot::catalog;
use ncpot::cli::{effective_seed, run, EXIT_FAIL, EXIT_INPUT, EXIT_OK};
use ncpot::io::{
    parse_potential, poly_to_terms, potential_to_json, quiver_to_json, OneFormJson, SCHEMA,
};
use ncpot::poly::{CyclicPoly, NCPoly};
use ncpot::random::random_quiver_with_potential;
use ncpot::Rational;
use proptest::prelude::*;

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ncpot(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ncpot").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncpot-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn derive_prints_the_cyclic_derivative() {
    let (code, out, _) = ncpot(&["derive", "--potential", &data("basic.json"), "--var", "x"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "yz - zy");
}

#[test]
fn hilbert_prints_polynomial_ring_dims() {
    let (code, out, _) = ncpot(&["hilbert", "--potential", &data("basic.json"), "--degree", "4", "--oracle"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1 3 6 10 15");
}

#[test]
fn cy_check_exit_codes() {
    let (code, out, _) = ncpot(&["cy-check", "--potential", &data("conifold.json"), "--degree", "6"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PASS cy-check"));
    let (code, out, _) = ncpot(&["cy-check", "--potential", &data("cube.json"), "--degree", "4"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("degree 2"));
}

#[test]
fn malformed_json_is_an_input_error_with_location() {
    let p = scratch("bad.json", "{\"quiver\": {\"vertices\": [\"v0\"], \n \"edges\": [}");
    let (code, _, err) = ncpot(&["derive", "--potential", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_edges_are_input_errors() {
    let (code, _, err) = ncpot(&["derive", "--potential", &data("basic.json"), "--var", "w"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("unknown edge"));
    let doc = r#"{"quiver":{"vertices":["v0"],"edges":[{"name":"x","src":"v0","tgt":"v0"}]},
                  "potential":[{"coeff":{"num":1,"den":1},"cycle":["x","q"]}]}"#;
    let p = scratch("unknown.json", doc);
    let (code, _, err) = ncpot(&["derive", "--potential", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("unknown edge"), "{err}");
}

#[test]
fn unknown_verb_or_missing_file_is_an_input_error() {
    assert_eq!(ncpot(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(ncpot(&["derive", "--potential", "/nonexistent/phi.json"]).0, EXIT_INPUT);
}

#[test]
fn json_output_carries_the_schema() {
    for args in [
        vec!["--json", "zeta", "--potential", "basic", "--degree", "4"],
        vec!["--json", "derive", "--potential", "basic"],
        vec!["--json", "cy-check", "--potential", "cube", "--degree", "3"],
        vec!["--json", "mckay", "--group", "GROUP", "--degree", "3"],
    ] {
        let g = data("group_z3_111.json");
        let args: Vec<&str> = args.iter().map(|a| if *a == "GROUP" { g.as_str() } else { a }).collect();
        let (_, out, _) = ncpot(&args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], SCHEMA, "{args:?}");
    }
    let (_, out, _) = ncpot(&["--json", "zeta", "--potential", "basic", "--degree", "4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "3", "9", "22", "51"]));
}

#[test]
fn same_seed_gives_identical_output() {
    let a = ncpot(&["--seed", "17", "dg-check", "--potential", "basic", "--samples", "10"]);
    let b = ncpot(&["--seed", "17", "dg-check", "--potential", "basic", "--samples", "10"]);
    assert_eq!(a, b);
    let r = data("rep_basic_random.json");
    let a = ncpot(&["--seed", "3", "rep-check", "--potential", "basic", "--rep", &r, "--fd-check"]);
    let b = ncpot(&["--seed", "3", "rep-check", "--potential", "basic", "--rep", &r, "--fd-check"]);
    assert_eq!(a, b);
}

#[test]
fn environment_seed_overrides_the_flag() {
    assert_eq!(effective_seed(5, None).unwrap(), 5);
    assert_eq!(effective_seed(5, Some("42".into())).unwrap(), 42);
    assert!(effective_seed(5, Some("x".into())).is_err());
}

fn one_form(components: &[(&str, &str)], degree: i32) -> String {
    let q = free(&["x", "y", "z"]);
    let mut comps = BTreeMap::new();
    for (e, text) in components {
        comps.insert(e.to_string(), poly_to_terms(&NCPoly::<Rational>::parse(&q, text).unwrap()));
    }
    serde_json::to_string(&OneFormJson { schema: None, quiver: quiver_to_json(&q), components: comps, degree }).unwrap()
}

#[test]
fn integrate_closed_and_non_closed_forms() {
    let closed = scratch("closed.json", &one_form(&[("x", "y z - z y"), ("y", "z x - x z"), ("z", "x y - y x")], 3));
    let (code, out, _) = ncpot(&["integrate", "--one-form", closed.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = ncpot(&["--json", "integrate", "--one-form", closed.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let (_, phi) = parse_potential::<Rational>(&v["potential"].to_string()).unwrap();
    assert_eq!(phi, catalog::basic().with_quiver(phi.quiver()).unwrap());

    let open = scratch("open.json", &one_form(&[("x", "y")], 2));
    let (code, out, _) = ncpot(&["integrate", "--one-form", open.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("FAIL"));
}

#[test]
fn mckay_emits_a_parsable_potential() {
    let dir = std::env::temp_dir().join(format!("ncpot-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("z3_potential.json");
    let (code, out, _) = ncpot(&[
        "mckay",
        "--group",
        &data("group_z3_111.json"),
        "--degree",
        "6",
        "--emit-potential",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let text = std::fs::read_to_string(&target).unwrap();
    let (q, phi) = parse_potential::<Rational>(&text).unwrap();
    assert_eq!((q.num_vertices(), phi.len()), (3, 6));
    let (code, _, _) = ncpot(&["cy-check", "--potential", target.to_str().unwrap(), "--degree", "5"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn mckay_on_explicit_group_file() {
    let (code, out, _) = ncpot(&["mckay", "--group", &data("group_s3.json"), "--degree", "6"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn rep_check_cases() {
    let run_rep = |pot: &str, rep: &str, extra: &[&str]| {
        let r = data(rep);
        let mut args = vec!["rep-check", "--potential", pot, "--rep", r.as_str()];
        args.extend_from_slice(extra);
        ncpot(&args).0
    };
    assert_eq!(run_rep("basic", "rep_basic_commuting.json", &[]), EXIT_OK);
    assert_eq!(run_rep("sl2", "rep_sl2_triple.json", &[]), EXIT_OK);
    assert_eq!(run_rep("sl2", "rep_sl2_triple.json", &["--star"]), EXIT_OK);
    assert_eq!(run_rep("conifold", "rep_conifold_scalar.json", &["--fd-check"]), EXIT_OK);
    assert_eq!(run_rep("basic", "rep_basic_random.json", &[]), EXIT_FAIL);
    assert_eq!(run_rep("conifold", "rep_basic_random.json", &[]), EXIT_INPUT);
}

#[test]
fn bundled_potential_files_match_the_catalog() {
    for name in catalog::NAMES {
        let text = std::fs::read_to_string(data(&format!("{name}.json"))).unwrap();
        let (q, phi) = parse_potential::<Rational>(&text).unwrap();
        let cat = catalog::by_name(name).unwrap();
        assert_eq!(phi, cat.with_quiver(&q).unwrap(), "{name}");
    }
}

#[test]
fn every_verb_runs_on_bundled_data() {
    let g = data("group_trivial.json");
    let r = data("rep_basic_commuting.json");
    for args in [
        vec!["derive", "--potential", "basic"],
        vec!["hessian", "--potential", "basic"],
        vec!["dg-check", "--potential", "conifold", "--samples", "5"],
        vec!["hilbert", "--potential", "conifold", "--degree", "4", "--from-cartan"],
        vec!["cy-check", "--potential", "sklyanin2", "--degree", "4", "--certify"],
        vec!["zeta", "--potential", "sklyanin3", "--degree", "6"],
        vec!["mckay", "--group", g.as_str(), "--degree", "4"],
        vec!["rep-check", "--potential", "basic", "--rep", r.as_str(), "--fd-check"],
    ] {
        let (code, out, err) = ncpot(&args);
        assert_eq!(code, EXIT_OK, "{args:?}\n{out}\n{err}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn potential_documents_round_trip(seed in any::<u64>()) {
        let (_, phi) = random_quiver_with_potential(&mut rng(seed));
        let text = serde_json::to_string(&potential_to_json(&phi)).unwrap();
        let (q, back) = parse_potential::<Rational>(&text).unwrap();
        prop_assert_eq!(back, phi.with_quiver(&q).unwrap());
    }

    #[test]
    fn polynomial_terms_round_trip(seed in any::<u64>()) {
        let q = free(&["x", "y"]);
        let a = random_poly(&q, &mut rng(seed), 4, 4);
        let terms = poly_to_terms(&a);
        let back: NCPoly<Rational> = ncpot::io::poly_from_terms(&q, &terms).unwrap();
        prop_assert_eq!(back, a.clone());
        let c = CyclicPoly::project(&a);
        let back: CyclicPoly<Rational> = ncpot::io::cyclic_from_terms(&q, &ncpot::io::cyclic_to_terms(&c)).unwrap();
        prop_assert_eq!(back, c);
    }
}
