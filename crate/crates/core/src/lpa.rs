//! Exact arithmetic in the Leavitt path algebra of a graph over the integers.
//!
//! Elements are finite integer combinations of monomials `α β*` with
//! `r(α) = r(β)`. Monomials multiply by prefix matching:
//!
//! ```text
//! (α β*)(γ δ*) = (α τ) δ*   if γ = β τ
//!              = α (δ τ)*   if β = γ τ
//!              = 0          otherwise
//! ```
//!
//! Monomials are not linearly independent (the relation `v = Σ e e*` over the
//! edges leaving a regular vertex links them), so equality is decided either
//! by [`Element::normal_form`] or by comparing [`Element::uniform_expansion`]s.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expr::ParseError;
use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpaError {
    #[error("elements live over different graphs (`{0}` vs `{1}`)")]
    GraphMismatch(String, String),
    #[error("expansion level {given} is below the required level {required}")]
    LevelTooLow { required: usize, given: usize },
    #[error("edge `{edge}` does not start at vertex `{vertex}`")]
    BadSpecialEdge { vertex: String, edge: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// The monomial `α β*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    /// `None` unless `r(α) = r(β)`.
    pub fn new(alpha: Path, beta: Path) -> Option<Monomial> {
        (alpha.range() == beta.range()).then_some(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    /// The path `p` as the monomial `p · r(p)*`.
    pub fn path(p: Path) -> Monomial {
        let r = Path::vertex(p.range());
        Monomial { alpha: p, beta: r }
    }

    /// The ghost path `p*` as `r(p) · p*`.
    pub fn ghost(p: Path) -> Monomial {
        let r = Path::vertex(p.range());
        Monomial { alpha: r, beta: p }
    }

    /// The projection `p p*`.
    pub fn projection(p: Path) -> Monomial {
        Monomial {
            alpha: p.clone(),
            beta: p,
        }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.alpha == self.beta
    }

    /// Product of two monomials, `None` when it vanishes.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(tau) = other.alpha.strip_prefix(&self.beta) {
            let alpha = self.alpha.concat(&tau).expect("r(α) = r(β) = s(τ)");
            Some(Monomial {
                alpha,
                beta: other.beta.clone(),
            })
        } else if let Some(tau) = self.beta.strip_prefix(&other.alpha) {
            let beta = other.beta.concat(&tau).expect("r(δ) = r(γ) = s(τ)");
            Some(Monomial {
                alpha: self.alpha.clone(),
                beta,
            })
        } else {
            None
        }
    }

    /// `Σ_{e ∈ s^{-1}(r(β))} (α e)(β e)*`; `None` when `r(β)` is a sink.
    pub fn split(&self, g: &Graph) -> Option<Vec<Monomial>> {
        let out = g.out_edges(self.beta.range());
        if out.is_empty() {
            return None;
        }
        Some(
            out.iter()
                .map(|&e| Monomial {
                    alpha: self.alpha.extend(e, g),
                    beta: self.beta.extend(e, g),
                })
                .collect(),
        )
    }
}

/// A chosen out-edge for every regular vertex, used to pick the normal-form
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialEdgeChoice {
    choice: Vec<Option<EdgeId>>,
}

impl SpecialEdgeChoice {
    /// The first edge in declaration order at each regular vertex.
    pub fn first_edges(g: &Graph) -> Self {
        SpecialEdgeChoice {
            choice: g.vertices().map(|v| g.out_edges(v).first().copied()).collect(),
        }
    }

    /// Overrides the default at the given vertices.
    pub fn with_overrides(g: &Graph, overrides: &[(VertexId, EdgeId)]) -> Result<Self, LpaError> {
        let mut c = Self::first_edges(g);
        for &(v, e) in overrides {
            if g.source(e) != v {
                return Err(LpaError::BadSpecialEdge {
                    vertex: g.vertex_name(v).to_string(),
                    edge: g.edge_name(e).to_string(),
                });
            }
            c.choice[v.0] = Some(e);
        }
        Ok(c)
    }

    pub fn special(&self, v: VertexId) -> Option<EdgeId> {
        self.choice.get(v.0).copied().flatten()
    }

    /// Whether both legs end in the special edge of their common range.
    fn reducible(&self, m: &Monomial, g: &Graph) -> bool {
        match (m.alpha.last_edge(), m.beta.last_edge()) {
            (Some(a), Some(b)) if a == b => self.special(g.source(a)) == Some(a),
            _ => false,
        }
    }
}

/// A finite integer combination of monomials over a fixed graph.
#[derive(Clone, Debug)]
pub struct Element {
    graph: Arc<Graph>,
    terms: BTreeMap<Monomial, BigInt>,
}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Element {
    /// Equality of the stored combinations. Two different combinations can
    /// still be equal in the algebra; use [`Element::equals`] for that.
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(graph: Arc<Graph>) -> Element {
        Element {
            graph,
            terms: BTreeMap::new(),
        }
    }

    /// `1 = Σ_v v`.
    pub fn one(graph: Arc<Graph>) -> Element {
        let mut x = Element::zero(graph.clone());
        for v in graph.vertices() {
            x.add_term(Monomial::vertex(v), &BigInt::one());
        }
        x
    }

    pub fn monomial(graph: Arc<Graph>, m: Monomial) -> Element {
        let mut x = Element::zero(graph);
        x.add_term(m, &BigInt::one());
        x
    }

    pub fn vertex(graph: Arc<Graph>, v: VertexId) -> Element {
        Self::monomial(graph, Monomial::vertex(v))
    }

    pub fn edge(graph: Arc<Graph>, e: EdgeId) -> Element {
        let p = graph.path(&[e]).expect("single edge");
        Self::monomial(graph, Monomial::path(p))
    }

    pub fn ghost(graph: Arc<Graph>, e: EdgeId) -> Element {
        let p = graph.path(&[e]).expect("single edge");
        Self::monomial(graph, Monomial::ghost(p))
    }

    pub fn path(graph: Arc<Graph>, p: Path) -> Element {
        Self::monomial(graph, Monomial::path(p))
    }

    /// Builds an element from `(coefficient, monomial)` pairs.
    pub fn from_terms<I>(graph: Arc<Graph>, terms: I) -> Element
    where
        I: IntoIterator<Item = (BigInt, Monomial)>,
    {
        let mut x = Element::zero(graph);
        for (c, m) in terms {
            x.add_term(m, &c);
        }
        x
    }

    /// Parses an element expression; see [`crate::expr`].
    pub fn parse(graph: Arc<Graph>, text: &str) -> Result<Element, LpaError> {
        Ok(crate::expr::parse_element(graph, text)?)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_graph(&self, other: &Element) -> Result<(), LpaError> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(LpaError::GraphMismatch(
                self.graph.name().to_string(),
                other.graph.name().to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, LpaError> {
        self.check_graph(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element, LpaError> {
        self.try_add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Element {
        if k.is_zero() {
            return Element::zero(self.graph.clone());
        }
        Element {
            graph: self.graph.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Bilinear extension of the monomial product.
    pub fn multiply(&self, other: &Element) -> Result<Element, LpaError> {
        self.check_graph(other)?;
        let mut out = Element::zero(self.graph.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.mul(m2) {
                    out.add_term(m, &(c1 * c2));
                }
            }
        }
        Ok(out)
    }

    /// The involution `α β* ↦ β α*`, identity on coefficients.
    pub fn star(&self) -> Element {
        Element {
            graph: self.graph.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect(),
        }
    }

    /// Splits by degree `|α| - |β|`.
    pub fn degree_components(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Element::zero(self.graph.clone()))
                .add_term(m.clone(), c);
        }
        out
    }

    /// Whether every stored monomial has degree `d`.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Rewrites `(α γ)(β γ)* ↦ α β* - Σ_{e ≠ γ} (α e)(β e)*` where `γ` is the
    /// special edge at `r(α)`, until no monomial has both legs ending in a
    /// special edge.
    ///
    /// Each rewrite trades one reducible monomial of total length `ℓ` for one
    /// of length `ℓ - 2` plus irreducible ones of length `ℓ`, so the process
    /// terminates. The irreducible monomials form a basis of the algebra, so
    /// two elements are equal iff their normal forms coincide.
    pub fn normal_form(&self, choice: &SpecialEdgeChoice) -> Element {
        let g = self.graph.clone();
        let mut out = self.clone();
        loop {
            let pending: Vec<Monomial> = out
                .terms
                .keys()
                .filter(|m| choice.reducible(m, &g))
                .cloned()
                .collect();
            if pending.is_empty() {
                return out;
            }
            for m in pending {
                let Some(c) = out.terms.remove(&m) else { continue };
                let special = m.alpha.last_edge().expect("reducible monomials have edges");
                let alpha = m.alpha.truncate_last(&g).expect("nonempty");
                let beta = m.beta.truncate_last(&g).expect("nonempty");
                let v = g.source(special);
                for &e in g.out_edges(v) {
                    if e != special {
                        let sib = Monomial {
                            alpha: alpha.extend(e, &g),
                            beta: beta.extend(e, &g),
                        };
                        out.add_term(sib, &-&c);
                    }
                }
                out.add_term(Monomial { alpha, beta }, &c);
            }
        }
    }

    pub fn normal_form_default(&self) -> Element {
        self.normal_form(&SpecialEdgeChoice::first_edges(&self.graph))
    }

    /// Equality in the algebra.
    pub fn equals(&self, other: &Element) -> Result<bool, LpaError> {
        Ok(self.try_sub(other)?.normal_form_default().is_zero())
    }

    /// The smallest level a uniform expansion accepts: the longest `β` leg.
    ///
    /// Legs into sinks count too. At level `N` a sink leg must have length at
    /// most `N` to be a basis leg: on S1, `a a*` and `v` are the same element
    /// but at level 0 both would be left alone.
    pub fn required_level(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.beta.len())
            .max()
            .unwrap_or(0)
    }

    /// Longest leg (either side) among the stored monomials.
    pub fn max_leg_len(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.alpha.len().max(m.beta.len()))
            .max()
            .unwrap_or(0)
    }

    /// Rewrites every `α β*` with `r(β)` regular and `|β| < level` as
    /// `Σ_e (α e)(β e)*`, until each `β` is a length-`level` path into a
    /// regular vertex or a path of length at most `level` into a sink.
    ///
    /// The resulting monomials are linearly independent (right multiplication
    /// by `β` isolates the coefficients of `α`), so the expansion is canonical
    /// for the given level.
    pub fn uniform_expansion(&self, level: usize) -> Result<Element, LpaError> {
        let required = self.required_level();
        if level < required {
            return Err(LpaError::LevelTooLow {
                required,
                given: level,
            });
        }
        let g = &self.graph;
        let mut out = Element::zero(g.clone());
        let mut stack: Vec<(Monomial, BigInt)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = stack.pop() {
            if m.beta.len() >= level {
                out.add_term(m, &c);
                continue;
            }
            match m.split(g) {
                Some(parts) => stack.extend(parts.into_iter().map(|p| (p, c.clone()))),
                None => out.add_term(m, &c),
            }
        }
        Ok(out)
    }

    /// Expansion at [`Element::required_level`].
    pub fn canonical_expansion(&self) -> Element {
        self.uniform_expansion(self.required_level())
            .expect("required level is always accepted")
    }

    /// Membership in the diagonal, the span of projections `α α*`.
    ///
    /// Splitting maps distinct level-`N` basis monomials to disjoint sets of
    /// level-`N+1` ones and keeps `α ≠ β` off-diagonal, so one canonical
    /// expansion decides.
    pub fn in_diagonal(&self) -> bool {
        self.canonical_expansion().terms.keys().all(Monomial::is_diagonal)
    }

    /// Membership in the positive cone, the nonnegative combinations of
    /// monomials.
    ///
    /// Splitting copies a coefficient onto disjoint monomials and never merges
    /// two basis monomials, so signs at the smallest admissible level persist
    /// at every higher one.
    pub fn pc_member(&self) -> bool {
        self.canonical_expansion().terms.values().all(|c| !c.is_negative())
    }

    /// Replaces each monomial `α β*` by `f(α) g(β)` where `path_image` maps a
    /// path and `ghost_image` maps a ghost path; used for applying
    /// homomorphisms.
    pub(crate) fn substitute<F, G>(
        &self,
        target: Arc<Graph>,
        mut path_image: F,
        mut ghost_image: G,
    ) -> Result<Element, LpaError>
    where
        F: FnMut(&Path) -> Element,
        G: FnMut(&Path) -> Element,
    {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let a = path_image(&m.alpha);
            let b = ghost_image(&m.beta);
            out = out.try_add(&a.multiply(&b)?.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_element(self))
    }
}

impl Add for &Element {
    type Output = Element;

    /// Panics if the operands live over different graphs.
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("graph mismatch in addition")
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("graph mismatch in subtraction")
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("graph mismatch in multiplication")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&BigInt::from(-1))
    }
}

/// `Σ_{α ∈ R_N} α α* + Σ_{β ∈ S_N} β β*`.
pub fn level_projection_sum(graph: &Arc<Graph>, n: usize) -> Element {
    let (regular, sinks) = graph.level_sets(n);
    Element::from_terms(
        graph.clone(),
        regular
            .into_iter()
            .chain(sinks)
            .map(|p| (BigInt::one(), Monomial::projection(p))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn parse(g: &Arc<Graph>, s: &str) -> Element {
        Element::parse(g.clone(), s).unwrap()
    }

    #[test]
    fn monomial_product_cases() {
        let r2 = Arc::new(fixtures::r2());
        // x1 x1* · x1 x2* = x1 x2*
        let lhs = &parse(&r2, "x1 x1*") * &parse(&r2, "x1 x2*");
        assert_eq!(lhs, parse(&r2, "x1 x2*"));
        // x1* x2 = 0
        assert!((&parse(&r2, "x1*") * &parse(&r2, "x2")).is_zero());
        // x1* x1.x2 = x2
        assert_eq!(&parse(&r2, "x1*") * &parse(&r2, "x1.x2"), parse(&r2, "x2"));
        // (x1 x2)* x1 = x2* x1* x1 = x2*
        assert_eq!(&parse(&r2, "x1.x2*") * &parse(&r2, "x1"), parse(&r2, "x2*"));
    }

    #[test]
    fn sink_projection_is_idempotent() {
        let s1 = Arc::new(fixtures::s1());
        let a = parse(&s1, "a");
        let u = parse(&s1, "u");
        assert_eq!(&a.star() * &a, u);
        let p = &a * &a.star();
        assert_eq!(&p * &p, p);
    }

    #[test]
    fn normal_form_single_step() {
        let r2 = Arc::new(fixtures::r2());
        let nf = parse(&r2, "x1 x1*").normal_form_default();
        assert_eq!(nf, parse(&r2, "z - x2 x2*"));
        assert_eq!(parse(&r2, "x1 x1* + x2 x2*").normal_form_default(), parse(&r2, "z"));
    }

    #[test]
    fn normal_form_respects_override() {
        let r2 = Arc::new(fixtures::r2());
        let z = r2.vertex("z").unwrap();
        let x2 = r2.edge_by_name("x2").unwrap();
        let choice = SpecialEdgeChoice::with_overrides(&r2, &[(z, x2)]).unwrap();
        let nf = parse(&r2, "x1 x1*").normal_form(&choice);
        assert_eq!(nf, parse(&r2, "x1 x1*"));
        let nf = parse(&r2, "x2 x2*").normal_form(&choice);
        assert_eq!(nf, parse(&r2, "z - x1 x1*"));
        let fk = fixtures::fk();
        let bad = SpecialEdgeChoice::with_overrides(&fk, &[(fk.vertex("u").unwrap(), fk.edge_by_name("f1").unwrap())]);
        assert!(bad.is_err());
    }

    #[test]
    fn expansion_requires_enough_levels() {
        let r2 = Arc::new(fixtures::r2());
        let x = parse(&r2, "x1.x2 x1.x1*");
        assert_eq!(
            x.uniform_expansion(1).unwrap_err(),
            LpaError::LevelTooLow {
                required: 2,
                given: 1
            }
        );
        assert_eq!(x.uniform_expansion(2).unwrap(), x);
    }

    #[test]
    fn degree_components_split_and_sum() {
        let r2 = Arc::new(fixtures::r2());
        let x = parse(&r2, "x1 + z");
        let parts = x.degree_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], parse(&r2, "x1"));
        assert_eq!(parts[&0], parse(&r2, "z"));
        let sum = parts.values().fold(Element::zero(r2.clone()), |a, b| &a + b);
        assert_eq!(sum, x);
    }

    #[test]
    fn diagonal_membership() {
        let r2 = Arc::new(fixtures::r2());
        assert!(parse(&r2, "z - x2 x2*").in_diagonal());
        assert!(!parse(&r2, "x1 x2*").in_diagonal());
        assert!(!parse(&r2, "x1").in_diagonal());
        // x1 x2* + x2 x1* is not diagonal even after expansion
        assert!(!parse(&r2, "x1 x2* + x2 x1*").in_diagonal());
    }
}
