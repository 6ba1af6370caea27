//! Composition of algebra maps and the induced maps on modules.

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::hom::{tidy_decide, TidyOptions};
use leavitt::lift::lift;
use leavitt::maps::{extract_matrix_form, map_from_matrix, BfMapSpec, DEFAULT_CAP};
use leavitt::matrix::IntMatrix;
use leavitt::text;

fn lifted(spec: &BfMapSpec) -> leavitt::hom::GradedHom {
    lift(&extract_matrix_form(spec, 0, DEFAULT_CAP).unwrap()).unwrap()
}

fn main() {
    let (r2, fk) = (Arc::new(fixtures::r2()), Arc::new(fixtures::fk()));
    let into_fk = map_from_matrix(r2.clone(), fk.clone(), &IntMatrix::from_i64(&[&[1, 1]]), 0).unwrap();
    // FK -> R2 sending u and v to the two halves of z one level down
    let back = map_from_matrix(fk.clone(), r2.clone(), &IntMatrix::from_i64(&[&[1], &[1]]), 1).unwrap();
    println!("back is valid: {}", back.is_valid());

    let there = lifted(&into_fk);
    let home = lifted(&back);
    let round_trip = home.compose(&there).unwrap();
    print!("{}", text::write_hom(&text::HomFile::plain(round_trip.clone())));

    let induced = round_trip.induced_bf_map().unwrap();
    let expected = back.compose(&into_fk).unwrap();
    println!("induced map agrees with the composite module map: {}", induced.same_map(&expected).unwrap());
    println!("composite is tidy: {}", tidy_decide(&round_trip, TidyOptions::default()).is_tidy());
}
