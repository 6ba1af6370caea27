//! Acceptance criteria, one line each. Run with
//! `cargo test -p leavitt --test acceptance [-- --seed N]`.
//!
//! Exits nonzero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use leavitt::bf::order_unit_vector;
use leavitt::cli;
use leavitt::fixtures;
use leavitt::graph::Graph;
use leavitt::hom::{tidy_decide, GradedHom, NotTidy, TidyOptions, TidyOutcome};
use leavitt::lift::lift;
use leavitt::lpa::{level_projection_sum, Element};
use leavitt::maps::{extract_matrix_form, map_from_matrix, DEFAULT_CAP};
use leavitt::matrix::IntMatrix;
use leavitt::random;
use num_bigint::BigInt;

const DEFAULT_SEED: u64 = 20_240_601;
const ELEMENTS_PER_FIXTURE: usize = 1000;
const VALID_MAPS: usize = 200;
const COMPOSITES: usize = 100;
const WORKED_EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const PROPERTY_SUITE_BUDGET: Duration = Duration::from_secs(60);
const SEARCH_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn leavitt(args: &[&str]) -> (i32, String) {
    cli::run(std::iter::once("leavitt").chain(args.iter().copied()))
}

fn within(budget: Duration, start: Instant) -> Result<Duration, String> {
    let spent = start.elapsed();
    if spent < budget {
        Ok(spent)
    } else {
        Err(format!("took {spent:.2?}, budget {budget:?}"))
    }
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let (code, form) = leavitt(&["extract", &data("example.map")]);
    ensure!(code == 0 && form == "form R2 -> FK level 0\nR\n1 1\n", "extract gave {code}: {form}");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let hom_path = dir.path().join("example.hom");
    let hom_path = hom_path.to_str().unwrap();
    let (code, hom) = leavitt(&["lift", &data("example.map"), "--out", hom_path]);
    ensure!(code == 0, "lift failed: {hom}");
    let images: Vec<&str> = hom.lines().filter(|l| l.starts_with("vimage") || l.starts_with("eimage")).collect();
    ensure!(
        images == ["vimage z := u + v", "eimage x1 := e1 + e2", "eimage x2 := f1 + f2"],
        "lift emitted {images:?}"
    );
    for args in [
        vec!["verify", hom_path],
        vec!["tidy", hom_path],
        vec!["induced", hom_path, "--check-against", &data("example.map")],
    ] {
        let (code, out) = leavitt(&args);
        ensure!(code == 0, "{} failed: {out}", args[0]);
    }
    let spent = within(WORKED_EXAMPLE_BUDGET, start)?;
    Ok(format!("L=0, R=(1 1), φ(x1)=e1+e2, φ(x2)=f1+f2; verify/tidy/induced ok in {spent:.2?}"))
}

fn corpus(seed: u64) -> Vec<Arc<Graph>> {
    common::corpus(seed, 20)
}

fn projections_sum_to_one(seed: u64) -> Outcome {
    let graphs = corpus(seed);
    for g in &graphs {
        for n in 0..=4 {
            let nf = level_projection_sum(g, n).normal_form_default();
            ensure!(nf == Element::one(g.clone()), "{} at N={n}: {nf}", g.name());
        }
    }
    Ok(format!("{} graphs x N=0..4", graphs.len()))
}

fn order_unit_counts(seed: u64) -> Outcome {
    let graphs = corpus(seed);
    for g in &graphs {
        for n in 0..=6 {
            let x = order_unit_vector(g, n);
            for v in g.vertices() {
                let indices: Vec<usize> = if g.is_sink(v) { (0..=n).collect() } else { vec![n] };
                for i in indices {
                    let paths = g.paths_into(v, i).unwrap().len();
                    let coord = x.coord(v, i as i64).unwrap();
                    ensure!(coord == BigInt::from(paths), "{} N={n} at {}_{i}: {coord} vs {paths} paths", g.name(), g.vertex_name(v));
                }
            }
        }
    }
    Ok(format!("{} graphs x N=0..6", graphs.len()))
}

fn expands_to_zero(x: &Element) -> bool {
    x.degree_components()
        .values()
        .all(|c| c.uniform_expansion(c.required_level()).unwrap().is_zero())
}

fn oracle_equivalence(seed: u64) -> Outcome {
    let mut rng = random::rng(seed);
    let (mut zeros, mut nonzeros) = (0, 0);
    for g in fixtures::all() {
        for i in 0..ELEMENTS_PER_FIXTURE {
            let x = match i % 4 {
                0 => random::random_zero(&mut rng, &g, 3),
                1 => {
                    let y = random::random_element(&mut rng, &g, 3, 2, 3);
                    let z = random::random_element(&mut rng, &g, 3, 2, 3);
                    &(&y * &z) - &(&z * &y)
                }
                _ => random::random_element(&mut rng, &g, 4, 3, 3),
            };
            let nf_zero = x.normal_form_default().is_zero();
            ensure!(nf_zero == expands_to_zero(&x), "oracles disagree on {x} over {}", g.name());
            if nf_zero {
                zeros += 1;
            } else {
                nonzeros += 1;
            }
            let y = random::random_element(&mut rng, &g, 3, 2, 2);
            let z = random::random_element(&mut rng, &g, 2, 2, 2);
            let nf = |e: &Element| e.normal_form_default();
            ensure!(nf(&(&(&x * &y) * &z)) == nf(&(&x * &(&y * &z))), "associativity fails on {x}, {y}, {z}");
            ensure!(nf(&(&x * &(&y + &z))) == nf(&(&(&x * &y) + &(&x * &z))), "left distributivity fails");
            ensure!(nf(&(&(&y + &z) * &x)) == nf(&(&(&y * &x) + &(&z * &x))), "right distributivity fails");
            let one = Element::one(g.clone());
            ensure!(nf(&(&one * &x)) == nf(&x) && nf(&(&x * &one)) == nf(&x), "1 is not an identity for {x}");
            ensure!(nf(&x.star().star()) == nf(&x), "star is not an involution on {x}");
            ensure!(nf(&(&x * &y).star()) == nf(&(&y.star() * &x.star())), "star is not anti-multiplicative");
            ensure!(nf(&nf(&x).star()) == nf(&x.star()), "star does not respect normal forms on {x}");
        }
    }
    ensure!(zeros > 0 && nonzeros > 0, "degenerate sample: {zeros} zero, {nonzeros} nonzero");
    Ok(format!("{} elements per fixture; {zeros} zero, {nonzeros} nonzero; oracles and axioms agree", ELEMENTS_PER_FIXTURE))
}

/// Criterion 5, and the lifts it produces for criterion 6.
fn property_suite(seed: u64, lifts: &mut Vec<(GradedHom, usize)>) -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(seed);
    let (maps, draws) = random::sample_valid_maps(&mut rng, VALID_MAPS, 4);
    for spec in &maps {
        let name = format!("{} -> {}", spec.source().name(), spec.target().name());
        ensure!(spec.source().vertex_count() <= 4 && spec.target().vertex_count() <= 4 && spec.level() <= 1, "sample out of range: {name}");
        let form = extract_matrix_form(spec, 0, DEFAULT_CAP).map_err(|e| format!("{name}: {e}"))?;
        common::form_equations(&form).map_err(|e| format!("{name}: {e}"))?;
        common::reconstructs(spec, &form).map_err(|e| format!("{name}: {e}"))?;
        let h = lift(&form).map_err(|e| format!("{name}: {e}"))?;
        h.verify().map_err(|v| format!("{name}: {v}"))?;
        ensure!(h.check_graded() && h.check_star() && h.check_diagonal(), "{name}: lift fails graded/star/diagonal");
        let induced = h.induced_bf_map().map_err(|e| format!("{name}: {e}"))?;
        ensure!(induced.same_map(spec).unwrap(), "{name}: induced map differs from the input");
        lifts.push((h, form.level));
    }
    let spent = within(PROPERTY_SUITE_BUDGET, start)?;
    Ok(format!("{} valid maps from {draws} draws; forms, lifts, induced maps ok in {spent:.2?}", maps.len()))
}

fn tidy_suite(seed: u64, lifts: &[(GradedHom, usize)]) -> Outcome {
    ensure!(!lifts.is_empty(), "no constructed lifts to check");
    for (h, level) in lifts {
        let outcome = tidy_decide(h, TidyOptions { min_level: *level, ..TidyOptions::default() });
        let w = outcome.witness().ok_or_else(|| format!("constructed lift not tidy: {outcome:?}"))?;
        let induced = h.induced_bf_map().map_err(|e| e.to_string())?;
        let form = extract_matrix_form(&induced, w.level, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure!(w.matrix_form() == form, "witness matrices differ from re-extraction");
    }
    let mut rng = random::rng(seed ^ 0xc0de);
    for _ in 0..COMPOSITES {
        let ((inner, _), (outer, _)) = common::tidy_chain(&mut rng);
        let c = outer.compose(&inner).map_err(|e| e.to_string())?;
        let outcome = tidy_decide(&c, TidyOptions::default());
        let w = outcome.witness().ok_or_else(|| format!("composite not tidy: {outcome:?}"))?;
        ensure!(w.certifies(&c).unwrap(), "composite witness does not certify");
    }
    let (code, out) = leavitt(&["tidy", &data("negloop.hom")]);
    ensure!(code != 0 && out.contains("certificate coefficient -1"), "negloop.hom: exit {code}, {out}");
    let r1 = Arc::new(fixtures::r1());
    let negated = GradedHom::new(
        r1.clone(),
        r1.clone(),
        vec![Element::parse(r1.clone(), "z").unwrap()],
        vec![Element::parse(r1.clone(), "-x").unwrap()],
    )
    .unwrap();
    match tidy_decide(&negated, TidyOptions::default()) {
        TidyOutcome::NotTidy(reason @ NotTidy::Coefficient { .. }) => {
            ensure!(reason.to_string().contains("order preservation"), "certificate: {reason}");
        }
        other => return Err(format!("t -> -t: {other:?}")),
    }
    Ok(format!("{} lifts tidy with matching witnesses; {COMPOSITES} composites tidy; t ↦ -t rejected", lifts.len()))
}

fn no_maps_into_sinks() -> Outcome {
    let start = Instant::now();
    let (r2, s1) = (Arc::new(fixtures::r2()), Arc::new(fixtures::s1()));
    let mut tried = 0;
    for a in 0..=2 {
        for b in 0..=2 {
            for k in 0..=1 {
                let p = IntMatrix::from_i64(&[&[a, b]]);
                let spec = map_from_matrix(r2.clone(), s1.clone(), &p, k).map_err(|e| e.to_string())?;
                ensure!(!spec.is_valid(), "valid map R2 -> S1 with P=({a} {b}), k={k}");
                tried += 1;
            }
        }
    }
    let spent = within(SEARCH_BUDGET, start)?;
    Ok(format!("{tried} candidates R2 -> S1, none valid, in {spent:.2?}"))
}

/// `--seed N` or `--seed=N`; other arguments (from the test runner) are
/// ignored.
fn parse_seed() -> u64 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let value = args.iter().enumerate().find_map(|(i, a)| match a.strip_prefix("--seed") {
        Some("") => args.get(i + 1).cloned(),
        Some(rest) => rest.strip_prefix('=').map(str::to_string),
        None => None,
    });
    match value {
        Some(s) => s.parse().unwrap_or_else(|_| {
            eprintln!("--seed expects an integer, got `{s}`");
            std::process::exit(2);
        }),
        None => common::seed(DEFAULT_SEED),
    }
}

fn main() {
    let seed = parse_seed();
    println!("acceptance (seed {seed})");
    std::panic::set_hook(Box::new(|_| {}));
    let mut lifts = Vec::new();
    let mut failed = 0;
    let mut report = |n: u32, title: &str, f: &mut dyn FnMut() -> Outcome| {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {n}. {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {n}. {title}: {detail}");
            }
        }
    };
    report(1, "worked example end to end", &mut worked_example);
    report(2, "level projections sum to 1", &mut || projections_sum_to_one(seed));
    report(3, "order unit equals path counts", &mut || order_unit_counts(seed));
    report(4, "normal form vs expansion oracles", &mut || oracle_equivalence(seed));
    report(5, "matrix forms and lifts of random maps", &mut || property_suite(seed, &mut lifts));
    report(6, "tidiness of lifts and composites", &mut || tidy_suite(seed, &lifts));
    report(7, "no map from R2 into S1", &mut no_maps_into_sinks);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
