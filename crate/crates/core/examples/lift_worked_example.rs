//! From a matrix form to partitions, matchings and an algebra map.

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::lift::{build_bijections, build_partitions, emit_hom};
use leavitt::maps::{extract_matrix_form, map_from_matrix, DEFAULT_CAP};
use leavitt::matrix::IntMatrix;
use leavitt::text::{self, HomFile};

fn main() {
    let (r2, fk) = (Arc::new(fixtures::r2()), Arc::new(fixtures::fk()));
    let spec = map_from_matrix(r2.clone(), fk.clone(), &IntMatrix::from_i64(&[&[1, 1]]), 0).unwrap();
    let form = extract_matrix_form(&spec, 0, DEFAULT_CAP).unwrap();

    let partitions = build_partitions(&form).unwrap();
    for (&(v, w), paths) in &partitions.gamma {
        let shown: Vec<String> = paths.iter().map(|p| fk.display_path(p)).collect();
        println!("Γ({}, {}) = {{{}}}", r2.vertex_name(v), fk.vertex_name(w), shown.join(", "));
    }
    let tables = build_bijections(&partitions).unwrap();
    for ((e, alpha), image) in &tables.xi {
        println!("ξ({}, {}) = {}", r2.edge_name(*e), fk.display_path(alpha), fk.display_path(image));
    }

    let h = emit_hom(&partitions, &tables);
    h.verify().unwrap();
    print!("{}", text::write_hom(&HomFile::plain(h)));
}
