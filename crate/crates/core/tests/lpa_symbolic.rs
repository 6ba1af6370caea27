mod common;

use std::sync::Arc;

use leavitt::fixtures;
use leavitt::graph::Graph;
use leavitt::lpa::{level_projection_sum, Element, SpecialEdgeChoice};
use leavitt::random;
use proptest::prelude::*;

fn el(g: &Arc<Graph>, s: &str) -> Element {
    Element::parse(g.clone(), s).unwrap()
}

/// Zero in the algebra, decided by expanding each degree component at its
/// own required level. Shares nothing with the rewriting normal form.
fn expands_to_zero(x: &Element) -> bool {
    x.degree_components().values().all(|c| c.uniform_expansion(c.required_level()).unwrap().is_zero())
}

fn equal_by_expansion(x: &Element, y: &Element) -> bool {
    expands_to_zero(&(x - y))
}

#[test]
fn product_examples() {
    let r2 = Arc::new(fixtures::r2());
    assert_eq!(&el(&r2, "x1 x1*") * &el(&r2, "x1 x2*"), el(&r2, "x1 x2*"));
    assert!((&el(&r2, "x1*") * &el(&r2, "x2")).is_zero());
    let s1 = Arc::new(fixtures::s1());
    assert_eq!(&el(&s1, "a*") * &el(&s1, "a"), el(&s1, "u"));
    let p = el(&s1, "a a*");
    assert_eq!(&p * &p, p);
}

#[test]
fn star_examples() {
    let r2 = Arc::new(fixtures::r2());
    assert_eq!(el(&r2, "x1 x2*").star(), el(&r2, "x2 x1*"));
    assert_eq!(el(&r2, "z").star(), el(&r2, "z"));
}

#[test]
fn normal_form_examples() {
    let r2 = Arc::new(fixtures::r2());
    let z = r2.vertex("z").unwrap();
    let x1 = r2.edge_by_name("x1").unwrap();
    let choice = SpecialEdgeChoice::with_overrides(&r2, &[(z, x1)]).unwrap();
    assert_eq!(el(&r2, "x1 x1*").normal_form(&choice), el(&r2, "z - x2 x2*"));
    assert_eq!(el(&r2, "x1 x1* + x2 x2*").normal_form_default(), el(&r2, "z"));
    // a is the special edge at v, so a a* is rewritten to v
    let s1 = Arc::new(fixtures::s1());
    assert_eq!(el(&s1, "a a*").normal_form_default(), el(&s1, "v"));
    assert!(equal_by_expansion(&el(&s1, "a a*"), &el(&s1, "v")));
    // the other choice on R2 rewrites the other projection
    let x2 = r2.edge_by_name("x2").unwrap();
    let other = SpecialEdgeChoice::with_overrides(&r2, &[(z, x2)]).unwrap();
    assert_eq!(el(&r2, "x1 x1*").normal_form(&other), el(&r2, "x1 x1*"));
    assert_eq!(el(&r2, "x2 x2*").normal_form(&other), el(&r2, "z - x1 x1*"));
}

#[test]
fn expansion_examples() {
    let r2 = Arc::new(fixtures::r2());
    assert_eq!(el(&r2, "z").uniform_expansion(1).unwrap(), el(&r2, "x1 x1* + x2 x2*"));
    assert_eq!(el(&r2, "x1").uniform_expansion(1).unwrap(), el(&r2, "x1.x1 x1* + x1.x2 x2*"));
    let s1 = Arc::new(fixtures::s1());
    assert_eq!(el(&s1, "v").uniform_expansion(1).unwrap(), el(&s1, "a a*"));
    assert!(el(&r2, "x1 x2*").uniform_expansion(0).is_err());
    assert!(el(&s1, "a a* - v").uniform_expansion(0).is_err());
    assert!(el(&s1, "a a* - v").uniform_expansion(1).unwrap().is_zero());
}

#[test]
fn degree_examples() {
    let r2 = Arc::new(fixtures::r2());
    let parts = el(&r2, "x1 + z").degree_components();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[&1], el(&r2, "x1"));
    assert_eq!(parts[&0], el(&r2, "z"));
    let parts = el(&r2, "x1 x2*").degree_components();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), [0]);
}

#[test]
fn positive_cone_and_diagonal_examples() {
    let r2 = Arc::new(fixtures::r2());
    assert!(el(&r2, "z - x2 x2*").pc_member());
    assert!(!el(&r2, "-z").pc_member());
    assert!(!el(&r2, "x1 - x2").pc_member());
    assert!(el(&r2, "z - x2 x2*").in_diagonal());
    assert!(!el(&r2, "x1 x2*").in_diagonal());
    assert!(!el(&r2, "x1").in_diagonal());
}

#[test]
fn level_projections_sum_to_one() {
    for g in common::corpus(common::seed(5), 20) {
        for n in 0..=4 {
            let s = level_projection_sum(&g, n);
            assert_eq!(s.normal_form_default(), Element::one(g.clone()).normal_form_default(), "{} N={n}", g.name());
            assert!(equal_by_expansion(&s, &Element::one(g.clone())));
        }
    }
}

fn element_pair(seed: u64) -> (Arc<Graph>, Element, Element, Element) {
    let mut rng = random::rng(seed);
    let g = Arc::new(random::random_graph(&mut rng, "G", 4, 6));
    let x = random::random_element(&mut rng, &g, 4, 3, 3);
    let y = random::random_element(&mut rng, &g, 4, 3, 3);
    let z = random::random_element(&mut rng, &g, 3, 2, 2);
    (g, x, y, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_and_expansion_agree_on_zero(seed in any::<u64>()) {
        let (g, x, y, _) = element_pair(seed);
        let mut rng = random::rng(seed ^ 0x5eed);
        let hidden_zero = random::random_zero(&mut rng, &g, 3);
        prop_assert!(hidden_zero.normal_form_default().is_zero());
        prop_assert!(expands_to_zero(&hidden_zero));
        let e = &(&x * &y) - &(&y * &x);
        prop_assert_eq!(e.normal_form_default().is_zero(), expands_to_zero(&e));
        let shifted = &x + &hidden_zero;
        prop_assert_eq!(shifted.normal_form_default(), x.normal_form_default());
    }

    #[test]
    fn normal_form_is_a_canonical_representative(seed in any::<u64>()) {
        let (_, x, _, _) = element_pair(seed);
        let n = x.normal_form_default();
        prop_assert_eq!(n.normal_form_default(), n.clone());
        prop_assert!(equal_by_expansion(&n, &x));
    }

    #[test]
    fn ring_axioms_after_normal_form(seed in any::<u64>()) {
        let (g, x, y, z) = element_pair(seed);
        let nf = |e: &Element| e.normal_form_default();
        prop_assert_eq!(nf(&(&(&x * &y) * &z)), nf(&(&x * &(&y * &z))));
        prop_assert_eq!(nf(&(&x * &(&y + &z))), nf(&(&(&x * &y) + &(&x * &z))));
        prop_assert_eq!(nf(&(&(&x + &y) * &z)), nf(&(&(&x * &z) + &(&y * &z))));
        let one = Element::one(g.clone());
        prop_assert_eq!(nf(&(&one * &x)), nf(&x));
        prop_assert_eq!(nf(&(&x * &one)), nf(&x));
        prop_assert_eq!(nf(&(&nf(&x) * &nf(&y))), nf(&(&x * &y)));
    }

    #[test]
    fn involution_axioms(seed in any::<u64>()) {
        let (_, x, y, _) = element_pair(seed);
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
        prop_assert!(equal_by_expansion(&x.normal_form_default().star(), &x.star()));
        for (d, c) in x.degree_components() {
            prop_assert!(c.star().is_homogeneous_of(-d));
        }
    }

    #[test]
    fn special_edge_choice_does_not_change_the_element(seed in any::<u64>()) {
        let (g, x, _, _) = element_pair(seed);
        let overrides: Vec<_> = g.regular().iter().map(|&v| (v, *g.out_edges(v).last().unwrap())).collect();
        let last = SpecialEdgeChoice::with_overrides(&g, &overrides).unwrap();
        let a = x.normal_form_default();
        let b = x.normal_form(&last);
        prop_assert!(equal_by_expansion(&a, &b));
        prop_assert_eq!(b.normal_form_default(), a);
    }

    #[test]
    fn expansion_is_stable_under_raising(seed in any::<u64>(), extra in 0usize..2) {
        let (_, x, _, _) = element_pair(seed);
        for c in x.degree_components().values() {
            let n = c.required_level();
            let low = c.uniform_expansion(n).unwrap();
            prop_assert_eq!(low.uniform_expansion(n + extra).unwrap(), c.uniform_expansion(n + extra).unwrap());
        }
    }

    #[test]
    fn positive_elements_are_in_the_cone(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Arc::new(random::random_graph(&mut rng, "G", 4, 6));
        let p = random::random_positive_element(&mut rng, &g, 4, 3);
        prop_assert!(p.pc_member());
        prop_assert!(p.normal_form_default().pc_member());
        if !p.is_zero() {
            prop_assert!(!p.scale(&(-1).into()).pc_member());
        }
        let diag = level_projection_sum(&g, 2);
        prop_assert!(diag.in_diagonal() && diag.pc_member());
    }
}
