//! Maps induced by an out-splitting: A_E = R S, A_F = S R.

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::maps::{is_isomorphism_pair, map_from_matrix};
use leavitt::random;

fn main() {
    let mut rng = random::rng(random::seed_from_env(4));
    let e = fixtures::fk();
    let split = random::out_split(&mut rng, &e, "F", 2);
    println!("{}", split.graph);
    println!("R =\n{}", split.r);
    println!("S =\n{}", split.s);
    println!("R S == A_E: {}", split.r.mul(&split.s).as_ref() == Some(&e.adjacency().full));
    println!("S R == A_F: {}", split.s.mul(&split.r).as_ref() == Some(&split.graph.adjacency().full));

    let (e, f) = (Arc::new(e), Arc::new(split.graph));
    let forward = map_from_matrix(e.clone(), f.clone(), &split.r, 0).unwrap();
    let backward = map_from_matrix(f, e, &split.s, 1).unwrap();
    println!("forward valid: {}, backward valid: {}", forward.is_valid(), backward.is_valid());
    println!("mutually inverse: {}", is_isomorphism_pair(&forward, &backward).unwrap());
}
