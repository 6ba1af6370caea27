mod common;

use std::path::PathBuf;
use std::sync::Arc;

use leavitt::cli::run;
use leavitt::fixtures;
use leavitt::graph::Graph;
use leavitt::hom::{tidy_decide, TidyOptions};
use leavitt::lpa::Element;
use leavitt::maps::{extract_matrix_form, DEFAULT_CAP};
use leavitt::random;
use leavitt::text::{self, HomFile, MatMap};
use proptest::prelude::*;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn leavitt(args: &[&str]) -> (i32, String) {
    run(std::iter::once("leavitt").chain(args.iter().copied()))
}

fn resolve_with(extra: Vec<Arc<Graph>>) -> impl Fn(&str) -> Option<Arc<Graph>> {
    move |name: &str| {
        extra
            .iter()
            .find(|g| g.name() == name)
            .cloned()
            .or_else(|| fixtures::by_name(name).map(Arc::new))
    }
}

#[test]
fn cli_lift_on_the_worked_example() {
    let (code, out) = leavitt(&["lift", &data("example.map")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("eimage x1 := e1 + e2"), "{out}");
    assert!(out.contains("eimage x2 := f1 + f2"), "{out}");
    assert!(out.contains("vimage z := u + v"), "{out}");
    let (code, out) = leavitt(&["extract", &data("example.map")]);
    assert_eq!(code, 0);
    assert_eq!(out, "form R2 -> FK level 0\nR\n1 1\n");
}

#[test]
fn cli_pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let lifted = dir.path().join("lifted.hom");
    let lifted = lifted.to_str().unwrap();
    assert_eq!(leavitt(&["lift", &data("example.map"), "--out", lifted]).0, 0);
    let (code, out) = leavitt(&["verify", lifted]);
    assert_eq!((code, out.as_str()), (0, "ok\ngraded true\nstar true\ndiagonal true\n"));
    assert_eq!(leavitt(&["tidy", lifted]).0, 0);
    let (code, out) = leavitt(&["induced", lifted, "--check-against", &data("example.map")]);
    assert_eq!(code, 0, "{out}");
    let composed = dir.path().join("twice.hom");
    let (code, out) = leavitt(&["compose", &data("swap.hom"), &data("swap.hom"), "-o", composed.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("eimage x1 := x1"), "{out}");
    assert_eq!(leavitt(&["verify", composed.to_str().unwrap()]).0, 0);
}

#[test]
fn cli_eval() {
    assert_eq!(leavitt(&["eval", "R2", "x1* . x2"]), (0, "0\n".to_string()));
    assert_eq!(leavitt(&["eval", "R2", "x1 x1* + x2 x2*", "--normal-form"]), (0, "z\n".to_string()));
    assert_eq!(leavitt(&["eval", "R2", "z", "--expand", "1"]), (0, "x1 x1* + x2 x2*\n".to_string()));
    let (code, out) = leavitt(&["eval", "R2", "x1 + y"]);
    assert_eq!(code, 2);
    assert!(out.contains("column 6"), "{out}");
    assert_eq!(leavitt(&["eval", "R2", "x1 x2*", "--expand", "0"]).0, 1);
}

#[test]
fn cli_tidy_rejects_the_negated_loop() {
    let (code, out) = leavitt(&["tidy", &data("negloop.hom")]);
    assert_eq!(code, 1);
    assert!(out.contains("certificate coefficient -1"), "{out}");
    let (code, _) = leavitt(&["verify", &data("negloop.hom")]);
    assert_eq!(code, 0);
    let (code, out) = leavitt(&["induced", &data("negloop.hom")]);
    assert_eq!(code, 0);
    assert!(out.contains("coord z 0 1"));
}

#[test]
fn cli_reports_violations_and_bad_maps() {
    let (code, out) = leavitt(&["verify", &data("broken.hom")]);
    assert_eq!(code, 1);
    assert!(out.contains("violation CK1"), "{out}");
    let (code, out) = leavitt(&["check-map", &data("bad_unit.map")]);
    assert_eq!(code, 1);
    assert!(out.contains("unitality"), "{out}");
    assert_eq!(leavitt(&["check-map", &data("example.map")]).0, 0);
    assert_eq!(leavitt(&["check-map", &data("ls_shifted.map")]).0, 0);
    let (code, out) = leavitt(&["matmap", "R2", "FK", &data("split.mat")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("coord u 1 2"));
}

#[test]
fn cli_usage_and_parse_errors() {
    assert_eq!(leavitt(&["no-such-command"]).0, 2);
    assert_eq!(leavitt(&["bf", "NOPE"]).0, 2);
    assert_eq!(leavitt(&["verify", "/nonexistent/file.hom"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.map");
    std::fs::write(&bad, "bfmap R2 -> FK level 0\nimage z\ncoord w 0 1\n").unwrap();
    let (code, out) = leavitt(&["check-map", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("line 3"), "{out}");
}

#[test]
fn cli_graph_lookup() {
    // LS.graph sits next to the map file
    assert_eq!(leavitt(&["lift", &data("ls_shifted.map")]).0, 0);
    let (code, out) = leavitt(&["--graph", &data("LS.graph"), "bf", "LS", "--level", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("coord s 1 1"), "{out}");
    let (code, out) = leavitt(&["bf", &data("LS.graph")]);
    assert_eq!(code, 0);
    assert!(out.contains("bfvec LS level 0"), "{out}");
}

#[test]
fn cli_is_deterministic() {
    let a = leavitt(&["lift", &data("ls_shifted.map")]);
    let b = leavitt(&["lift", &data("ls_shifted.map")]);
    assert_eq!(a, b);
}

#[test]
fn data_files_parse() {
    for name in ["R1", "R2", "FK", "S1"] {
        let parsed = text::parse_graph(&std::fs::read_to_string(data(&format!("{name}.graph"))).unwrap()).unwrap();
        assert_eq!(parsed, fixtures::by_name(name).unwrap());
    }
}

#[test]
fn hom_files_round_trip_with_witnesses_and_certificates() {
    let mut rng = random::rng(common::seed(31));
    let (maps, _) = random::sample_valid_maps(&mut rng, 25, 4);
    for spec in maps {
        let resolve = resolve_with(vec![spec.source().clone(), spec.target().clone()]);
        let map_text = text::write_bfmap(&spec);
        assert_eq!(text::parse_bfmap(&map_text, &resolve).unwrap(), spec);
        let form = extract_matrix_form(&spec, 0, DEFAULT_CAP).unwrap();
        assert_eq!(text::parse_form(&text::write_form(&form), &resolve).unwrap(), form);
        let mut h = common::lift_spec(&spec);
        let file = HomFile::plain(h.clone());
        assert_eq!(text::parse_hom(&text::write_hom(&file), &resolve).unwrap(), file);
        h.set_witness(tidy_decide(&h, TidyOptions::default()).witness().cloned());
        let file = HomFile::plain(h);
        let back = text::parse_hom(&text::write_hom(&file), &resolve).unwrap();
        assert_eq!(back, file);
        let w = back.hom.witness().unwrap();
        w.validate().unwrap();
        assert!(w.certifies(&back.hom).unwrap());
    }
    let r2 = Arc::new(fixtures::r2());
    let p = |s: &str| Element::parse(r2.clone(), s).unwrap();
    let broken = leavitt::hom::GradedHom::new(r2.clone(), r2.clone(), vec![p("z")], vec![p("x1"), p("x1")]).unwrap();
    let file = HomFile {
        violation: Some(broken.verify().unwrap_err()),
        certificate: Some("coefficient -1 at x1 in the image of `x1` (order preservation fails)".into()),
        hom: broken,
    };
    let resolve = resolve_with(vec![]);
    assert_eq!(text::parse_hom(&text::write_hom(&file), &resolve).unwrap(), file);
}

#[test]
fn matmap_round_trip() {
    let m = MatMap {
        source: Arc::new(fixtures::r2()),
        target: Arc::new(fixtures::fk()),
        shift: 1,
        matrix: leavitt::matrix::IntMatrix::from_i64(&[&[2, 2]]),
    };
    let resolve = resolve_with(vec![]);
    assert_eq!(text::parse_matmap(&text::write_matmap(&m), &resolve).unwrap(), m);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_round_trip(g in common::graph_strategy(5, 8)) {
        prop_assert_eq!(text::parse_graph(&g.to_text()).unwrap(), (*g).clone());
    }

    #[test]
    fn elements_round_trip_through_display(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(random::random_graph(&mut rng, "G", 4, 6));
        let x = random::random_element(&mut rng, &g, 5, 3, 4);
        prop_assert_eq!(Element::parse(g.clone(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn level_vectors_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(random::random_graph(&mut rng, "G", 4, 6));
        let x = leavitt::bf::order_unit_vector(&g, (seed % 4) as usize).sigma_inverse();
        let resolve = resolve_with(vec![g.clone()]);
        prop_assert_eq!(text::parse_bfvec(&text::write_bfvec(&x), &resolve).unwrap(), x);
    }
}
