//! Arithmetic in the Leavitt path algebra over the integers.

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::lpa::{level_projection_sum, Element};

fn main() {
    let r2 = Arc::new(fixtures::r2());
    let parse = |s: &str| Element::parse(r2.clone(), s).unwrap();

    println!("x1* x2 = {}", &parse("x1*") * &parse("x2"));
    println!("x1* x1 = {}", &parse("x1*") * &parse("x1"));
    println!("(x1 x1*)(x1 x2*) = {}", &parse("x1 x1*") * &parse("x1 x2*"));
    println!("star(2 x1 x2* - z) = {}", parse("2 x1 x2* - z").star());

    let p = parse("x1 x1*");
    println!("normal form of {p}: {}", p.normal_form_default());
    println!("expansion of z at level 2: {}", parse("z").uniform_expansion(2).unwrap());
    println!("sum over level 2 projections: {}", level_projection_sum(&r2, 2).normal_form_default());

    for s in ["z - x2 x2*", "x1 - x2", "x1 x2*"] {
        let x = parse(s);
        println!("{s}: positive cone {}, diagonal {}", x.pc_member(), x.in_diagonal());
    }
    match Element::parse(r2.clone(), "x1 + y") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
