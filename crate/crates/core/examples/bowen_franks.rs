//! Level vectors, transitions, the shift action and the order unit.

use std::sync::Arc;

use leavitt::bf::{bf_equal, is_positive, order_unit_vector, LevelVector};
use leavitt::fixtures;
use num_bigint::BigInt;

fn main() {
    let r2 = Arc::new(fixtures::r2());
    let z = r2.vertex("z").unwrap();
    let z0 = LevelVector::vertex_at(r2.clone(), z, 0);
    let z1 = LevelVector::vertex_at(r2.clone(), z, 1);
    println!("R2: z_0 at level 1 is {}", z0.transition(1).unwrap());
    println!("R2: z_0 == z_1 ? {}", bf_equal(&z0, &z1).unwrap());
    println!("R2: z_0 == 2 z_1 ? {}", bf_equal(&z0, &z1.scale(&BigInt::from(2))).unwrap());

    let fk = Arc::new(fixtures::fk());
    let unit = LevelVector::unit(fk.clone());
    println!("FK: σ^-1(u_0 + v_0) = {}", unit.sigma_inverse());
    for n in 0..=3 {
        println!("FK: order unit at level {n}: {}", order_unit_vector(&fk, n));
    }

    let s1 = Arc::new(fixtures::s1());
    let (v, u) = (s1.vertex("v").unwrap(), s1.vertex("u").unwrap());
    let v0 = LevelVector::vertex_at(s1.clone(), v, 0);
    let u1 = LevelVector::basis(s1.clone(), 1, u, 1).unwrap();
    println!("S1: v_0 == u_1 ? {}", bf_equal(&v0, &u1).unwrap());
    let minus_u = LevelVector::basis(s1.clone(), 0, u, 0).unwrap().scale(&BigInt::from(-1));
    println!("S1: is -u_0 positive? {:?}", is_positive(&minus_u, 3));
}
