#![allow(dead_code)]

use std::sync::Arc;

use leavitt::graph::Graph;
use leavitt::random;
use proptest::prelude::*;

/// Graphs with `1..=max_v` vertices and up to `max_e` edges; shrinks toward
/// fewer edges.
pub fn graph_strategy(max_v: usize, max_e: usize) -> impl Strategy<Value = Arc<Graph>> {
    (1..=max_v)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_e)))
        .prop_map(|(n, es)| {
            let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, String)> = es
                .iter()
                .enumerate()
                .map(|(i, &(s, r))| (format!("e{i}"), vs[s].clone(), vs[r].clone()))
                .collect();
            Arc::new(Graph::new("G", &vs, &edges).unwrap())
        })
}

/// Fixtures plus `extra` random graphs (at most 5 vertices, 8 edges).
pub fn corpus(seed: u64, extra: usize) -> Vec<Arc<Graph>> {
    let mut rng = random::rng(seed);
    let mut out = leavitt::fixtures::all();
    for i in 0..extra {
        out.push(Arc::new(random::random_graph(&mut rng, &format!("G{i}"), 5, 8)));
    }
    out
}

pub fn seed(default: u64) -> u64 {
    random::seed_from_env(default)
}

use leavitt::hom::GradedHom;
use leavitt::lift::lift;
use leavitt::maps::{extract_matrix_form, map_from_matrix, BfMapSpec, DEFAULT_CAP};
use rand::Rng;

pub fn lift_spec(spec: &BfMapSpec) -> GradedHom {
    let form = extract_matrix_form(spec, 0, DEFAULT_CAP).expect("valid map");
    lift(&form).expect("lift of a valid form")
}

/// Two composable constructed lifts `E -> F -> G` with their module maps.
/// The first is an out-split map (shift 0, or shift 1 when `F` has no
/// sinks); the second splits `F` again, or undoes the first split when `E`
/// is regular.
pub fn tidy_chain(rng: &mut impl Rng) -> ((GradedHom, BfMapSpec), (GradedHom, BfMapSpec)) {
    let e = Arc::new(random::random_graph(rng, "E", 3, 5));
    let first = random::out_split(rng, &e, "F", 2);
    let f = Arc::new(first.graph);
    let inner = if f.sinks().is_empty() && rng.gen_bool(0.5) {
        let m = first.r.mul(&f.adjacency().full).unwrap();
        map_from_matrix(e.clone(), f.clone(), &m, 1).unwrap()
    } else {
        map_from_matrix(e.clone(), f.clone(), &first.r, 0).unwrap()
    };
    let outer = if e.is_regular_graph() && rng.gen_bool(0.5) {
        map_from_matrix(f.clone(), e.clone(), &first.s, 1).unwrap()
    } else {
        let second = random::out_split(rng, &f, "G", 2);
        let g = Arc::new(second.graph);
        map_from_matrix(f.clone(), g, &second.r, 0).unwrap()
    };
    assert!(inner.is_valid() && outer.is_valid());
    ((lift_spec(&inner), inner), (lift_spec(&outer), outer))
}

use leavitt::bf::{bf_equal, LevelVector};
use leavitt::maps::BfMatrixForm;
use leavitt::matrix::IntMatrix;
use num_bigint::BigInt;

fn entry(m: &IntMatrix, i: usize, j: usize) -> BigInt {
    m[(i, j)].clone()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// The matrix-form identities recomputed from scratch: column sums against
/// enumerated path counts, and the recursion, splice and intertwining
/// identities as explicit sums over the adjacency matrices.
pub fn form_equations(form: &BfMatrixForm) -> Result<(), String> {
    let (e, f) = (&form.source, &form.target);
    let l = form.level;
    let a_e = &e.adjacency().full;
    let a_f = &f.adjacency().full;
    let r = &form.regular_block;
    let s = &form.sink_blocks;
    ensure!(s.len() == l + 1, "{} sink blocks at level {l}", s.len());
    for (col, &w) in f.regular().iter().enumerate() {
        let total: BigInt = e.vertices().map(|z| entry(r, z.0, col)).sum();
        let paths = f.paths_into(w, l).unwrap().len();
        ensure!(total == BigInt::from(paths), "column sum of R at {} is {total}, not {paths}", f.vertex_name(w));
    }
    for (i, block) in s.iter().enumerate() {
        for (col, &u) in f.sinks().iter().enumerate() {
            let total: BigInt = e.vertices().map(|z| entry(block, z.0, col)).sum();
            let paths = f.paths_into(u, i).unwrap().len();
            ensure!(total == BigInt::from(paths), "column sum of S^({i}) at {} is {total}, not {paths}", f.vertex_name(u));
        }
    }
    let ae_times = |m: &IntMatrix, v: usize, col: usize| -> BigInt {
        e.vertices().map(|x| entry(a_e, v, x.0) * entry(m, x.0, col)).sum()
    };
    let r_times_af = |v: usize, target: usize| -> BigInt {
        f.regular().iter().enumerate().map(|(k, &w)| entry(r, v, k) * entry(a_f, w.0, target)).sum()
    };
    for &v in e.regular() {
        let name = e.vertex_name(v);
        for col in 0..f.sinks().len() {
            ensure!(entry(&s[0], v.0, col) == BigInt::from(0), "S^(0) nonzero on regular row {name}");
            for i in 1..=l {
                ensure!(entry(&s[i], v.0, col) == ae_times(&s[i - 1], v.0, col), "recursion fails for S^({i}) at row {name}");
            }
            ensure!(ae_times(&s[l], v.0, col) == r_times_af(v.0, f.sinks()[col].0), "splice fails at row {name}");
        }
        for (col, &w) in f.regular().iter().enumerate() {
            ensure!(ae_times(r, v.0, col) == r_times_af(v.0, w.0), "intertwining fails at ({name}, {})", f.vertex_name(w));
        }
    }
    Ok(())
}

/// Every input image equals the image read back from the matrix form:
/// `Σ_u Σ_i S^(i)_{v,u} u_i + Σ_w R_{v,w} w_L`.
pub fn reconstructs(spec: &BfMapSpec, form: &BfMatrixForm) -> Result<(), String> {
    let f = &form.target;
    for v in spec.source().vertices() {
        let mut x = LevelVector::zero(f.clone(), form.level);
        for (i, block) in form.sink_blocks.iter().enumerate() {
            for (col, &u) in f.sinks().iter().enumerate() {
                x.add_to(u, i as i64, &entry(block, v.0, col)).unwrap();
            }
        }
        for (col, &w) in f.regular().iter().enumerate() {
            x.add_to(w, form.level as i64, &entry(&form.regular_block, v.0, col)).unwrap();
        }
        ensure!(bf_equal(&x, spec.image(v)).unwrap(), "image of {} not recovered", spec.source().vertex_name(v));
    }
    ensure!(form.reconstruct().same_map(spec).unwrap(), "reconstructed map differs");
    Ok(())
}
