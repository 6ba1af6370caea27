//! Small named graphs used throughout the docs, examples and tests.
//!
//! - `R1`: one vertex `z` with one loop `x`.
//! - `R2`: one vertex `z` with two loops `x1`, `x2`.
//! - `FK`: vertices `u`, `v`; edges `e1: u->u`, `e2: u->v`, `f1: v->v`, `f2: v->u`.
//! - `S1`: vertices `v`, `u`; one edge `a: v->u` (so `u` is a sink).

use std::sync::Arc;

use crate::graph::Graph;

pub fn r1() -> Graph {
    Graph::new("R1", &["z"], &[("x", "z", "z")]).expect("fixture")
}

pub fn r2() -> Graph {
    Graph::new("R2", &["z"], &[("x1", "z", "z"), ("x2", "z", "z")]).expect("fixture")
}

pub fn fk() -> Graph {
    Graph::new(
        "FK",
        &["u", "v"],
        &[
            ("e1", "u", "u"),
            ("e2", "u", "v"),
            ("f1", "v", "v"),
            ("f2", "v", "u"),
        ],
    )
    .expect("fixture")
}

pub fn s1() -> Graph {
    Graph::new("S1", &["v", "u"], &[("a", "v", "u")]).expect("fixture")
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Graph> {
    match name {
        "R1" => Some(r1()),
        "R2" => Some(r2()),
        "FK" => Some(fk()),
        "S1" => Some(s1()),
        _ => None,
    }
}

pub fn all() -> Vec<Arc<Graph>> {
    vec![Arc::new(r1()), Arc::new(r2()), Arc::new(fk()), Arc::new(s1())]
}
