//! Validating module maps and extracting their matrix form.

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::maps::{extract_matrix_form, map_from_matrix, BfMapSpec, DEFAULT_CAP};
use leavitt::matrix::IntMatrix;
use leavitt::text;

fn main() {
    let (r2, fk) = (Arc::new(fixtures::r2()), Arc::new(fixtures::fk()));
    let spec = map_from_matrix(r2.clone(), fk, &IntMatrix::from_i64(&[&[1, 1]]), 0).unwrap();
    print!("{}", text::write_bfmap(&spec));
    let form = extract_matrix_form(&spec, 0, DEFAULT_CAP).unwrap();
    print!("{}", text::write_form(&form));

    let s1 = Arc::new(fixtures::s1());
    let form = extract_matrix_form(&BfMapSpec::identity(s1), 2, DEFAULT_CAP).unwrap();
    println!("identity on S1 read at level 2:");
    print!("{}", text::write_form(&form));

    let doubled = map_from_matrix(r2.clone(), r2, &IntMatrix::from_i64(&[&[2]]), 0).unwrap();
    match doubled.validate() {
        Ok(()) => println!("z -> 2 z_0 is valid"),
        Err(reason) => println!("z -> 2 z_0 is rejected: {reason}"),
    }
}
