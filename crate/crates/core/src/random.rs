//! Seeded generators for property tests and demos: small graphs, algebra
//! elements, and valid module maps.
//!
//! Valid maps are rare among arbitrary matrices, so most candidates are
//! proposed from out-splittings. If `F` is an out-splitting of `E`, with
//! `R` (`E^0 × F^0`) sending each vertex to its copies and `S` (`F^0 × E^0`)
//! counting the edges of each group, then `A_E = R S` and `A_F = S R`, and
//! both `R` and `R A_F` (at shift 1) define unital maps `E → F`.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Path};
use crate::lpa::{Element, Monomial};
use crate::maps::{map_from_matrix, BfMapSpec};
use crate::matrix::IntMatrix;

/// Environment variable overriding the default seed of randomized suites.
pub const SEED_VAR: &str = "LEAVITT_TEST_SEED";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `default`, unless [`SEED_VAR`] holds an integer.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

/// A graph with `1..=max_vertices` vertices and `0..=max_edges` edges with
/// uniformly chosen endpoints. Loops and parallel edges occur.
pub fn random_graph(rng: &mut impl Rng, name: &str, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..m)
        .map(|i| {
            let s = rng.gen_range(0..n);
            let r = rng.gen_range(0..n);
            (format!("e{i}"), vertices[s].clone(), vertices[r].clone())
        })
        .collect();
    Graph::new(name, &vertices, &edges).expect("generated names are valid")
}

/// A random path of length at most `max_len`, built backwards from a random
/// vertex; shorter when no edge enters the current source.
pub fn random_path(rng: &mut impl Rng, g: &Graph, max_len: usize) -> Path {
    let v = g.vertices().nth(rng.gen_range(0..g.vertex_count())).expect("nonempty");
    let len = rng.gen_range(0..=max_len);
    let mut p = Path::vertex(v);
    for _ in 0..len {
        let ins = g.in_edges(p.source());
        match ins.choose(rng) {
            Some(&e) => p = p.prepend(e, g),
            None => break,
        }
    }
    p
}

/// A random path of length at most `max_len` ending at `range`.
fn random_path_into(rng: &mut impl Rng, g: &Graph, range: crate::graph::VertexId, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut p = Path::vertex(range);
    for _ in 0..len {
        match g.in_edges(p.source()).choose(rng) {
            Some(&e) => p = p.prepend(e, g),
            None => break,
        }
    }
    p
}

/// A random monomial `α β*` with legs of length at most `max_len`.
pub fn random_monomial(rng: &mut impl Rng, g: &Graph, max_len: usize) -> Monomial {
    let alpha = random_path(rng, g, max_len);
    let beta = random_path_into(rng, g, alpha.range(), max_len);
    Monomial::new(alpha, beta).expect("common range")
}

/// Up to `max_terms` monomials with coefficients in `-coef..=coef`.
pub fn random_element(
    rng: &mut impl Rng,
    g: &Arc<Graph>,
    max_terms: usize,
    max_len: usize,
    coef: i64,
) -> Element {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(BigInt, Monomial)> = (0..n)
        .map(|_| {
            (
                BigInt::from(rng.gen_range(-coef..=coef)),
                random_monomial(rng, g, max_len),
            )
        })
        .collect();
    Element::from_terms(g.clone(), terms)
}

/// Nonnegative combination of projections and monomials, for semiring tests.
pub fn random_positive_element(
    rng: &mut impl Rng,
    g: &Arc<Graph>,
    max_terms: usize,
    max_len: usize,
) -> Element {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(BigInt, Monomial)> = (0..n)
        .map(|_| (BigInt::from(rng.gen_range(1..=3)), random_monomial(rng, g, max_len)))
        .collect();
    Element::from_terms(g.clone(), terms)
}

/// An element that is zero in the algebra but not as a stored combination:
/// `α β* - Σ_e (α e)(β e)*` at a regular `r(β)`, or `α* β` for distinct
/// equal-length paths, scaled and added to noise that cancels.
pub fn random_zero(rng: &mut impl Rng, g: &Arc<Graph>, max_len: usize) -> Element {
    let m = random_monomial(rng, g, max_len);
    let c = BigInt::from(rng.gen_range(1..=3));
    let mut x = Element::from_terms(g.clone(), [(c.clone(), m.clone())]);
    match m.split(g) {
        Some(parts) => {
            for p in parts {
                x.add_term(p, &-&c);
            }
            x
        }
        None => Element::zero(g.clone()),
    }
}

/// An out-splitting of `g` together with the matrices `R` and `S`.
pub struct OutSplit {
    pub graph: Graph,
    /// `E^0 × F^0`: each vertex to its copies.
    pub r: IntMatrix,
    /// `F^0 × E^0`: edges of each group by range.
    pub s: IntMatrix,
}

/// Splits the out-edges of each regular vertex into at most `max_groups`
/// nonempty groups; every group becomes a vertex of the new graph.
pub fn out_split(rng: &mut impl Rng, g: &Graph, name: &str, max_groups: usize) -> OutSplit {
    // copies[v] = list of (new vertex index, edges of the group)
    let mut copies: Vec<Vec<Vec<crate::graph::EdgeId>>> = Vec::new();
    for v in g.vertices() {
        let out = g.out_edges(v);
        if out.is_empty() {
            copies.push(vec![Vec::new()]);
            continue;
        }
        let k = rng.gen_range(1..=max_groups.max(1).min(out.len()));
        let mut order: Vec<_> = out.to_vec();
        order.shuffle(rng);
        let mut groups = vec![Vec::new(); k];
        for (i, e) in order.into_iter().enumerate() {
            // the first k edges seed the groups so none is empty
            let slot = if i < k { i } else { rng.gen_range(0..k) };
            groups[slot].push(e);
        }
        for grp in &mut groups {
            grp.sort();
        }
        copies.push(groups);
    }
    let mut names = Vec::new();
    let mut owner = Vec::new();
    for (v, groups) in copies.iter().enumerate() {
        for j in 0..groups.len() {
            names.push(format!("{}_{j}", g.vertex_name(crate::graph::VertexId(v))));
            owner.push(v);
        }
    }
    let first_copy: Vec<usize> = copies
        .iter()
        .scan(0, |acc, groups| {
            let start = *acc;
            *acc += groups.len();
            Some(start)
        })
        .collect();
    let mut edges = Vec::new();
    let mut s = IntMatrix::zeros(names.len(), g.vertex_count());
    for (v, groups) in copies.iter().enumerate() {
        for (j, grp) in groups.iter().enumerate() {
            let from = first_copy[v] + j;
            for &e in grp {
                let r = g.range(e);
                s[(from, r.0)] += 1;
                for t in 0..copies[r.0].len() {
                    edges.push((
                        format!("{}_{t}", g.edge_name(e)),
                        names[from].clone(),
                        names[first_copy[r.0] + t].clone(),
                    ));
                }
            }
        }
    }
    let mut r = IntMatrix::zeros(g.vertex_count(), names.len());
    for (k, &v) in owner.iter().enumerate() {
        r[(v, k)] = BigInt::from(1);
    }
    let graph = Graph::new(name, &names, &edges).expect("generated names are valid");
    OutSplit { graph, r, s }
}

/// A candidate map between two graphs, before validation.
pub struct Candidate {
    pub source: Arc<Graph>,
    pub target: Arc<Graph>,
    pub matrix: IntMatrix,
    pub shift: usize,
}

impl Candidate {
    pub fn spec(&self) -> BfMapSpec {
        map_from_matrix(self.source.clone(), self.target.clone(), &self.matrix, self.shift)
            .expect("generated matrices are nonnegative and well-shaped")
    }
}

/// Proposes a candidate over graphs with at most `max_vertices` vertices:
/// usually a splitting map or its reverse, sometimes an arbitrary matrix
/// with entries in `0..=2`. Callers keep the candidates that validate.
pub fn propose_candidate(rng: &mut impl Rng, max_vertices: usize) -> Candidate {
    let kind = rng.gen_range(0..10);
    if kind == 0 {
        let e = Arc::new(random_graph(rng, "E", max_vertices, 6));
        let f = Arc::new(random_graph(rng, "F", max_vertices, 6));
        let mut p = IntMatrix::zeros(e.vertex_count(), f.vertex_count());
        for i in 0..p.nrows() {
            for j in 0..p.ncols() {
                p[(i, j)] = BigInt::from(rng.gen_range(0..=2));
            }
        }
        let shift = rng.gen_range(0..=1);
        return Candidate {
            source: e,
            target: f,
            matrix: p,
            shift,
        };
    }
    let base_vertices = rng.gen_range(1..=max_vertices.clamp(1, 3));
    let base = random_graph(rng, "E", base_vertices, 5);
    let budget = max_vertices.saturating_sub(base.vertex_count());
    let split = out_split(rng, &base, "F", 1 + budget.min(2));
    let (e, f) = (Arc::new(base), Arc::new(split.graph));
    if f.vertex_count() > max_vertices {
        return Candidate {
            matrix: IntMatrix::identity(e.vertex_count()),
            source: e.clone(),
            target: e,
            shift: 0,
        };
    }
    match kind {
        1..=4 => Candidate {
            source: e,
            target: f,
            matrix: split.r,
            shift: 0,
        },
        5..=6 => {
            let m = split.r.mul(&f.adjacency().full).expect("shapes agree");
            Candidate {
                source: e,
                target: f,
                matrix: m,
                shift: 1,
            }
        }
        _ => {
            // The reverse map only validates when the unsplit graph is regular.
            let f_named = Arc::new(rename(&f, "E"));
            let e_named = Arc::new(rename(&e, "F"));
            Candidate {
                source: f_named,
                target: e_named,
                matrix: split.s,
                shift: 1,
            }
        }
    }
}

fn rename(g: &Graph, name: &str) -> Graph {
    let vs: Vec<&str> = g.vertices().map(|v| g.vertex_name(v)).collect();
    let es: Vec<(&str, &str, &str)> = g
        .edge_ids()
        .map(|e| (g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))))
        .collect();
    Graph::new(name, &vs, &es).expect("names already valid")
}

/// Draws candidates until `count` validate; returns them with the number of
/// draws it took.
pub fn sample_valid_maps(rng: &mut impl Rng, count: usize, max_vertices: usize) -> (Vec<BfMapSpec>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count {
        draws += 1;
        let spec = propose_candidate(rng, max_vertices).spec();
        if spec.is_valid() {
            out.push(spec);
        }
    }
    (out, draws)
}
