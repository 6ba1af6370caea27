//! Deciding tidiness: witnesses for constructed maps, certificates otherwise.

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::hom::{tidy_decide, GradedHom, TidyOptions, TidyOutcome};
use leavitt::lpa::Element;
use leavitt::maps::{extract_matrix_form, BfMapSpec, DEFAULT_CAP};

fn report(label: &str, h: &GradedHom) {
    match tidy_decide(h, TidyOptions::default()) {
        TidyOutcome::Tidy(w) => println!("{label}: tidy at level {}", w.level),
        TidyOutcome::NotTidy(reason) => println!("{label}: not tidy ({reason})"),
    }
}

fn main() {
    let r1 = Arc::new(fixtures::r1());
    let el = |g: &Arc<leavitt::Graph>, s: &str| Element::parse(g.clone(), s).unwrap();

    report("identity on R1", &GradedHom::identity(r1.clone()));
    let negated = GradedHom::new(r1.clone(), r1.clone(), vec![el(&r1, "z")], vec![el(&r1, "-x")]).unwrap();
    println!("t -> -t satisfies the relations: {}", negated.verify().is_ok());
    report("t -> -t", &negated);
    let squared = GradedHom::new(r1.clone(), r1.clone(), vec![el(&r1, "z")], vec![el(&r1, "x.x")]).unwrap();
    report("t -> t^2", &squared);

    // conjugation by the unit z + x1 x2*, whose inverse is not its adjoint
    let r2 = Arc::new(fixtures::r2());
    let conj = GradedHom::with_ghosts(
        r2.clone(),
        r2.clone(),
        vec![el(&r2, "z")],
        vec![el(&r2, "x1"), el(&r2, "x2 + x1")],
        vec![el(&r2, "x1* - x2*"), el(&r2, "x2*")],
    )
    .unwrap();
    println!("conjugation: graded {}, star {}", conj.check_graded(), conj.check_star());
    report("conjugation", &conj);

    let s1 = Arc::new(fixtures::s1());
    let form = extract_matrix_form(&BfMapSpec::identity(s1), 1, DEFAULT_CAP).unwrap();
    let lifted = leavitt::lift::lift(&form).unwrap();
    report("identity on S1 lifted at level 1", &lifted);
}
