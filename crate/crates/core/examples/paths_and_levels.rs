//! Paths, level sets and line points on the built-in graphs.

use leavitt::fixtures;

fn main() {
    let fk = fixtures::fk();
    println!("{fk}");
    println!("adjacency:\n{}", fk.adjacency().full);

    let u = fk.vertex("u").unwrap();
    for k in 0..=2 {
        let paths: Vec<String> = fk.paths_into(u, k).unwrap().iter().map(|p| fk.display_path(p)).collect();
        println!("paths of length {k} into u: {}", paths.join(", "));
    }

    let s1 = fixtures::s1();
    for n in 0..=2 {
        let (r, s) = s1.level_sets(n);
        let show = |ps: &[leavitt::Path]| ps.iter().map(|p| s1.display_path(p)).collect::<Vec<_>>().join(" ");
        println!("S1 level {n}: R = {{{}}}  S = {{{}}}", show(&r), show(&s));
    }
    let lines: Vec<&str> = s1.line_points().into_iter().map(|v| s1.vertex_name(v)).collect();
    println!("S1 line points: {}", lines.join(" "));
}
