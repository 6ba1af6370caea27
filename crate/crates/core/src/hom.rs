//! Homomorphisms `L_Z(E) → L_Z(F)` given by images of generators.
//!
//! A [`GradedHom`] stores the image of every vertex, edge and ghost edge of
//! the source graph. Nothing about it is assumed: [`GradedHom::verify`]
//! checks the defining relations, the `check_*` methods check the extra
//! properties, and [`tidy_decide`] either recovers partitions and matchings
//! that reproduce the homomorphism or explains why none exist.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bf::LevelVector;
use crate::expr::format_monomial;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::lift::{emit_images, BijectionData, LiftError, PartitionData};
use crate::lpa::{Element, LpaError};
use crate::maps::{BfMapSpec, BfMatrixForm, MapError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("expected {expected} {kind} images, got {got}")]
    ImageCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("image of `{generator}` lives over `{found}`, expected `{expected}`")]
    WrongGraph {
        generator: String,
        found: String,
        expected: String,
    },
    #[error("cannot compose: `{0}` is not `{1}`")]
    NotComposable(String, String),
    #[error("induced map undefined: image of `{vertex}` {reason}")]
    InducedUndefined { vertex: String, reason: String },
    #[error(transparent)]
    Lpa(#[from] LpaError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Where a homomorphism came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Emitted by the lift construction.
    Constructed,
    /// Read from user input.
    UserSupplied,
    /// Produced by composing two homomorphisms.
    Composite,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Constructed => "constructed",
            Provenance::UserSupplied => "user",
            Provenance::Composite => "composite",
        }
    }

    pub fn parse(s: &str) -> Option<Provenance> {
        match s {
            "constructed" => Some(Provenance::Constructed),
            "user" => Some(Provenance::UserSupplied),
            "composite" => Some(Provenance::Composite),
            _ => None,
        }
    }
}

/// A relation family checked by [`GradedHom::verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Unitality,
    P,
    V,
    E,
    Star,
    Ck1,
    Ck2,
}

impl Relation {
    pub fn tag(self) -> &'static str {
        match self {
            Relation::Unitality => "unitality",
            Relation::P => "P",
            Relation::V => "V",
            Relation::E => "E",
            Relation::Star => "STAR",
            Relation::Ck1 => "CK1",
            Relation::Ck2 => "CK2",
        }
    }

    pub fn parse(s: &str) -> Option<Relation> {
        [
            Relation::Unitality,
            Relation::P,
            Relation::V,
            Relation::E,
            Relation::Star,
            Relation::Ck1,
            Relation::Ck2,
        ]
        .into_iter()
        .find(|r| r.tag() == s)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The first relation that fails, where, and the nonzero normal form of
/// `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub locus: String,
    pub residual: Element,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation {} fails at {}: residual {}",
            self.relation, self.locus, self.residual
        )
    }
}

/// Level, partitions and matchings certifying tidiness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TidyWitness {
    pub level: usize,
    pub partitions: PartitionData,
    pub bijections: BijectionData,
}

impl TidyWitness {
    /// Checks the witness on its own: blocks partition the path sets and
    /// every table is a bijection between the prescribed sets.
    pub fn validate(&self) -> Result<(), LiftError> {
        if self.partitions.level != self.level {
            return Err(LiftError::Table("witness level disagrees with its partitions".into()));
        }
        self.partitions.check()?;
        self.bijections.check(&self.partitions)
    }

    /// Whether the homomorphism built from this witness equals `hom` on
    /// every generator.
    pub fn certifies(&self, hom: &GradedHom) -> Result<bool, HomError> {
        let (vs, es) = emit_images(&self.partitions, &self.bijections);
        for (x, y) in vs.iter().zip(&hom.vertex_images) {
            if !x.equals(y)? {
                return Ok(false);
            }
        }
        for (x, y) in es.iter().zip(&hom.edge_images) {
            if !x.equals(y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Block sizes as a matrix form.
    pub fn matrix_form(&self) -> BfMatrixForm {
        self.partitions.matrix_form()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHom {
    source: Arc<Graph>,
    target: Arc<Graph>,
    vertex_images: Vec<Element>,
    edge_images: Vec<Element>,
    ghost_images: Vec<Element>,
    provenance: Provenance,
    witness: Option<TidyWitness>,
}

impl GradedHom {
    /// Ghost images default to the stars of the edge images.
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        vertex_images: Vec<Element>,
        edge_images: Vec<Element>,
    ) -> Result<GradedHom, HomError> {
        let ghost_images = edge_images.iter().map(Element::star).collect();
        Self::with_ghosts(source, target, vertex_images, edge_images, ghost_images)
    }

    pub fn with_ghosts(
        source: Arc<Graph>,
        target: Arc<Graph>,
        vertex_images: Vec<Element>,
        edge_images: Vec<Element>,
        ghost_images: Vec<Element>,
    ) -> Result<GradedHom, HomError> {
        let counts = [
            ("vertex", source.vertex_count(), vertex_images.len()),
            ("edge", source.edge_count(), edge_images.len()),
            ("ghost", source.edge_count(), ghost_images.len()),
        ];
        for (kind, expected, got) in counts {
            if expected != got {
                return Err(HomError::ImageCount {
                    kind,
                    expected,
                    got,
                });
            }
        }
        let named = source
            .vertices()
            .map(|v| source.vertex_name(v).to_string())
            .zip(&vertex_images)
            .chain(source.edge_ids().map(|e| source.edge_name(e).to_string()).zip(&edge_images))
            .chain(
                source
                    .edge_ids()
                    .map(|e| format!("{}*", source.edge_name(e)))
                    .zip(&ghost_images),
            );
        for (generator, x) in named {
            if **x.graph() != *target {
                return Err(HomError::WrongGraph {
                    generator,
                    found: x.graph().name().to_string(),
                    expected: target.name().to_string(),
                });
            }
        }
        Ok(GradedHom {
            source,
            target,
            vertex_images,
            edge_images,
            ghost_images,
            provenance: Provenance::UserSupplied,
            witness: None,
        })
    }

    pub fn identity(graph: Arc<Graph>) -> GradedHom {
        let vs = graph.vertices().map(|v| Element::vertex(graph.clone(), v)).collect();
        let es = graph.edge_ids().map(|e| Element::edge(graph.clone(), e)).collect();
        let mut h = Self::new(graph.clone(), graph, vs, es).expect("own generators");
        h.provenance = Provenance::Constructed;
        h
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn vertex_image(&self, v: VertexId) -> &Element {
        &self.vertex_images[v.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> &Element {
        &self.edge_images[e.0]
    }

    pub fn ghost_image(&self, e: EdgeId) -> &Element {
        &self.ghost_images[e.0]
    }

    pub fn vertex_images(&self) -> &[Element] {
        &self.vertex_images
    }

    pub fn edge_images(&self) -> &[Element] {
        &self.edge_images
    }

    pub fn ghost_images(&self) -> &[Element] {
        &self.ghost_images
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn set_provenance(&mut self, p: Provenance) {
        self.provenance = p;
    }

    pub fn witness(&self) -> Option<&TidyWitness> {
        self.witness.as_ref()
    }

    pub fn set_witness(&mut self, w: Option<TidyWitness>) {
        self.witness = w;
    }

    /// Whether ghost images are exactly the stored stars of edge images, so
    /// a file need not list them.
    pub fn ghosts_are_literal_stars(&self) -> bool {
        self.edge_images
            .iter()
            .zip(&self.ghost_images)
            .all(|(e, g)| e.star() == *g)
    }

    fn zero(&self) -> Element {
        Element::zero(self.target.clone())
    }

    fn residual(
        &self,
        relation: Relation,
        locus: impl FnOnce() -> String,
        lhs: &Element,
        rhs: &Element,
    ) -> Result<(), Violation> {
        let residual = (lhs - rhs).normal_form_default();
        if residual.is_zero() {
            Ok(())
        } else {
            Err(Violation {
                relation,
                locus: locus(),
                residual,
            })
        }
    }

    /// Checks unitality, (P), (V), (E) for edges and ghosts, star
    /// compatibility of the ghost images, (CK1) and (CK2) in that order and
    /// reports the first failure.
    pub fn verify(&self) -> Result<(), Violation> {
        let e = &self.source;
        let vname = |v: VertexId| e.vertex_name(v).to_string();
        let ename = |x: EdgeId| e.edge_name(x).to_string();
        let total = self.vertex_images.iter().fold(self.zero(), |acc, x| &acc + x);
        self.residual(
            Relation::Unitality,
            || "1".into(),
            &total,
            &Element::one(self.target.clone()),
        )?;
        for v in e.vertices() {
            let x = self.vertex_image(v);
            self.residual(Relation::P, || vname(v), x, &x.star())?;
        }
        for v in e.vertices() {
            for w in e.vertices() {
                let prod = self.vertex_image(v) * self.vertex_image(w);
                let rhs = if v == w { self.vertex_image(v).clone() } else { self.zero() };
                self.residual(Relation::V, || format!("{} {}", vname(v), vname(w)), &prod, &rhs)?;
            }
        }
        for x in e.edge_ids() {
            let img = self.edge_image(x);
            let left = self.vertex_image(e.source(x)) * img;
            self.residual(Relation::E, || format!("s({}) {}", ename(x), ename(x)), &left, img)?;
            let right = img * self.vertex_image(e.range(x));
            self.residual(Relation::E, || format!("{} r({})", ename(x), ename(x)), &right, img)?;
        }
        for x in e.edge_ids() {
            let img = self.ghost_image(x);
            let left = self.vertex_image(e.range(x)) * img;
            self.residual(Relation::E, || format!("r({}) {}*", ename(x), ename(x)), &left, img)?;
            let right = img * self.vertex_image(e.source(x));
            self.residual(Relation::E, || format!("{}* s({})", ename(x), ename(x)), &right, img)?;
        }
        for x in e.edge_ids() {
            self.residual(
                Relation::Star,
                || format!("{}*", ename(x)),
                self.ghost_image(x),
                &self.edge_image(x).star(),
            )?;
        }
        for g in e.edge_ids() {
            for x in e.edge_ids() {
                let prod = self.ghost_image(g) * self.edge_image(x);
                let rhs = if g == x {
                    self.vertex_image(e.range(x)).clone()
                } else {
                    self.zero()
                };
                self.residual(Relation::Ck1, || format!("{}* {}", ename(g), ename(x)), &prod, &rhs)?;
            }
        }
        for &v in e.regular() {
            let sum = e
                .out_edges(v)
                .iter()
                .fold(self.zero(), |acc, &x| &acc + &(self.edge_image(x) * self.ghost_image(x)));
            self.residual(Relation::Ck2, || vname(v), self.vertex_image(v), &sum)?;
        }
        Ok(())
    }

    /// Vertex images have degree 0, edge images degree 1, ghost images
    /// degree -1. Decided on normal forms, which are unique.
    pub fn check_graded(&self) -> bool {
        self.first_ungraded().is_none()
    }

    fn first_ungraded(&self) -> Option<String> {
        let e = &self.source;
        let homogeneous = |x: &Element, d: i64| x.normal_form_default().is_homogeneous_of(d);
        for v in e.vertices() {
            if !homogeneous(self.vertex_image(v), 0) {
                return Some(e.vertex_name(v).to_string());
            }
        }
        for x in e.edge_ids() {
            if !homogeneous(self.edge_image(x), 1) {
                return Some(e.edge_name(x).to_string());
            }
            if !homogeneous(self.ghost_image(x), -1) {
                return Some(format!("{}*", e.edge_name(x)));
            }
        }
        None
    }

    /// Ghost images equal the stars of edge images in the algebra.
    pub fn check_star(&self) -> bool {
        self.first_non_star().is_none()
    }

    fn first_non_star(&self) -> Option<EdgeId> {
        self.source.edge_ids().find(|&x| {
            !self
                .ghost_image(x)
                .equals(&self.edge_image(x).star())
                .expect("same target graph")
        })
    }

    /// `φ(α α*)` lies in the diagonal for every path `α` of length at most 3.
    ///
    /// The diagonal at level `n` is spanned by such projections and `φ` is
    /// multiplicative, so this sample covers the generators that matter for
    /// small graphs.
    pub fn check_diagonal(&self) -> bool {
        self.source.paths_up_to(3).into_iter().all(|a| {
            let proj = Element::monomial(
                self.source.clone(),
                crate::lpa::Monomial::projection(a),
            );
            self.apply(&proj).expect("element over the source").in_diagonal()
        })
    }

    /// `φ(α)` for a path, as the product of edge images.
    fn path_image(&self, p: &Path) -> Element {
        if p.is_vertex() {
            return self.vertex_image(p.source()).clone();
        }
        let mut it = p.edges().iter();
        let first = self.edge_image(*it.next().expect("nonempty")).clone();
        it.fold(first, |acc, &x| &acc * self.edge_image(x))
    }

    /// `φ(β*)`: ghost images multiplied in reverse order.
    fn ghost_path_image(&self, p: &Path) -> Element {
        if p.is_vertex() {
            return self.vertex_image(p.source()).clone();
        }
        let mut it = p.edges().iter().rev();
        let first = self.ghost_image(*it.next().expect("nonempty")).clone();
        it.fold(first, |acc, &x| &acc * self.ghost_image(x))
    }

    /// Image of an arbitrary element of the source algebra.
    pub fn apply(&self, x: &Element) -> Result<Element, HomError> {
        if **x.graph() != *self.source {
            return Err(HomError::NotComposable(
                x.graph().name().to_string(),
                self.source.name().to_string(),
            ));
        }
        Ok(x.substitute(
            self.target.clone(),
            |p| self.path_image(p),
            |p| self.ghost_path_image(p),
        )?)
    }

    /// `self ∘ inner`; images are normal-formed.
    pub fn compose(&self, inner: &GradedHom) -> Result<GradedHom, HomError> {
        if *inner.target != *self.source {
            return Err(HomError::NotComposable(
                inner.target.name().to_string(),
                self.source.name().to_string(),
            ));
        }
        let map = |xs: &[Element]| -> Result<Vec<Element>, HomError> {
            xs.iter()
                .map(|x| Ok(self.apply(x)?.normal_form_default()))
                .collect()
        };
        let mut h = GradedHom::with_ghosts(
            inner.source.clone(),
            self.target.clone(),
            map(&inner.vertex_images)?,
            map(&inner.edge_images)?,
            map(&inner.ghost_images)?,
        )?;
        h.provenance = Provenance::Composite;
        Ok(h)
    }

    /// The induced map on Bowen-Franks modules: a projection `β β*` in a
    /// vertex image contributes `r(β)` at index `|β|`.
    pub fn induced_bf_map(&self) -> Result<BfMapSpec, HomError> {
        let level = self
            .vertex_images
            .iter()
            .map(Element::max_leg_len)
            .max()
            .unwrap_or(0);
        let f = &self.target;
        let mut images = Vec::new();
        for v in self.source.vertices() {
            let undefined = |reason: String| HomError::InducedUndefined {
                vertex: self.source.vertex_name(v).to_string(),
                reason,
            };
            let expanded = self.vertex_image(v).uniform_expansion(level)?;
            let mut x = LevelVector::zero(f.clone(), level);
            for (m, c) in expanded.terms() {
                if !m.is_diagonal() {
                    return Err(undefined(format!(
                        "has off-diagonal term {}",
                        format_monomial(f, m)
                    )));
                }
                if !c.is_one() {
                    return Err(undefined(format!(
                        "has coefficient {c} at {}",
                        format_monomial(f, m)
                    )));
                }
                let b = m.beta();
                let index = if f.is_sink(b.range()) { b.len() } else { level };
                x.add_to(b.range(), index as i64, c).expect("index within level");
            }
            images.push(x);
        }
        Ok(BfMapSpec::new(self.source.clone(), f.clone(), images)?)
    }
}

/// Why a homomorphism is not tidy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotTidy {
    Relation(Violation),
    NotGraded { generator: String },
    NotStar { edge: String },
    /// A vertex image has an off-diagonal term at every level.
    OffDiagonal { vertex: String, term: String },
    /// A coefficient outside `{0, 1}`; negative ones mean positivity fails.
    Coefficient {
        generator: String,
        term: String,
        coefficient: BigInt,
    },
    /// No level up to the cap produced consistent partitions and matchings.
    NoWitness { cap: usize, last: String },
}

impl fmt::Display for NotTidy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotTidy::Relation(v) => write!(f, "not a homomorphism: {v}"),
            NotTidy::NotGraded { generator } => write!(f, "image of `{generator}` is not homogeneous of the right degree"),
            NotTidy::NotStar { edge } => write!(f, "ghost image of `{edge}` is not the star of its edge image"),
            NotTidy::OffDiagonal { vertex, term } => {
                write!(f, "image of `{vertex}` has off-diagonal term {term}")
            }
            NotTidy::Coefficient {
                generator,
                term,
                coefficient,
            } => {
                let why = if coefficient < &BigInt::zero() {
                    "order preservation fails"
                } else {
                    "not an idempotent coefficient"
                };
                write!(f, "coefficient {coefficient} at {term} in the image of `{generator}` ({why})")
            }
            NotTidy::NoWitness { cap, last } => {
                write!(f, "no witness up to level {cap}: {last}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TidyOutcome {
    Tidy(TidyWitness),
    NotTidy(NotTidy),
}

impl TidyOutcome {
    pub fn is_tidy(&self) -> bool {
        matches!(self, TidyOutcome::Tidy(_))
    }

    pub fn witness(&self) -> Option<&TidyWitness> {
        match self {
            TidyOutcome::Tidy(w) => Some(w),
            TidyOutcome::NotTidy(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TidyOptions {
    /// Lowest level to try.
    pub min_level: usize,
    /// Highest level to try.
    pub cap: usize,
}

impl Default for TidyOptions {
    fn default() -> Self {
        TidyOptions {
            min_level: 0,
            cap: 16,
        }
    }
}

/// A level-specific failure: either final or worth retrying one level up.
enum Attempt {
    Final(NotTidy),
    Retry(String),
}

/// Decides whether `hom` is tidy.
///
/// After the relation, degree and star checks, the vertex images are
/// expanded at a common level `N`. Splitting copies coefficients onto
/// disjoint monomials and keeps off-diagonal terms off-diagonal, so a
/// coefficient outside `{0, 1}` or an off-diagonal term at one level is a
/// final certificate. Otherwise the supports give the blocks, and the
/// expanded edge images must assign to every block path `β` exactly one
/// path with coefficient 1; those assignments are the matchings. If the
/// blocks or matchings are inconsistent at `N`, the next level is tried.
pub fn tidy_decide(hom: &GradedHom, options: TidyOptions) -> TidyOutcome {
    if let Err(v) = hom.verify() {
        return TidyOutcome::NotTidy(NotTidy::Relation(v));
    }
    if let Some(generator) = hom.first_ungraded() {
        return TidyOutcome::NotTidy(NotTidy::NotGraded { generator });
    }
    if let Some(x) = hom.first_non_star() {
        return TidyOutcome::NotTidy(NotTidy::NotStar {
            edge: hom.source.edge_name(x).to_string(),
        });
    }
    let depth = hom
        .vertex_images
        .iter()
        .chain(&hom.edge_images)
        .flat_map(|x| x.terms().keys().map(|m| m.beta().len()))
        .max()
        .unwrap_or(0);
    let start = depth.max(options.min_level);
    let mut last = String::from("cap below the starting level");
    for level in start..=options.cap.max(start) {
        match attempt(hom, level) {
            Ok(w) => return TidyOutcome::Tidy(w),
            Err(Attempt::Final(reason)) => return TidyOutcome::NotTidy(reason),
            Err(Attempt::Retry(reason)) => last = reason,
        }
        if level >= options.cap {
            break;
        }
    }
    TidyOutcome::NotTidy(NotTidy::NoWitness {
        cap: options.cap,
        last,
    })
}

fn attempt(hom: &GradedHom, level: usize) -> Result<TidyWitness, Attempt> {
    let (e, f) = (&hom.source, &hom.target);
    let mut gamma: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    let mut sigma: BTreeMap<(usize, VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    for v in e.vertices() {
        let vertex = e.vertex_name(v).to_string();
        let expanded = hom
            .vertex_image(v)
            .uniform_expansion(level)
            .map_err(|err| Attempt::Retry(err.to_string()))?;
        for (m, c) in expanded.terms() {
            if !m.is_diagonal() {
                return Err(Attempt::Final(NotTidy::OffDiagonal {
                    vertex,
                    term: format_monomial(f, m),
                }));
            }
            if !c.is_one() {
                return Err(Attempt::Final(NotTidy::Coefficient {
                    generator: vertex,
                    term: format_monomial(f, m),
                    coefficient: c.clone(),
                }));
            }
            let b = m.beta().clone();
            let r = b.range();
            if f.is_sink(r) {
                sigma.entry((b.len(), v, r)).or_default().push(b);
            } else {
                gamma.entry((v, r)).or_default().push(b);
            }
        }
    }
    for block in gamma.values_mut().chain(sigma.values_mut()) {
        block.sort();
    }
    let partitions = PartitionData {
        source: e.clone(),
        target: f.clone(),
        level,
        gamma,
        sigma,
    };
    partitions
        .check()
        .map_err(|err| Attempt::Retry(err.to_string()))?;

    // Which block, if any, each path of the target belongs to, as seen from
    // the range vertex of an edge.
    let mut bijections = BijectionData::default();
    for x in e.edge_ids() {
        let edge = e.edge_name(x).to_string();
        let r = e.range(x);
        let mut slots: BTreeSet<Path> = BTreeSet::new();
        for &w in f.regular() {
            slots.extend(partitions.gamma(r, w).iter().cloned());
        }
        for &u in f.sinks() {
            for i in 0..=level {
                slots.extend(partitions.sigma(i, r, u).iter().cloned());
            }
        }
        let expanded = hom
            .edge_image(x)
            .uniform_expansion(level)
            .map_err(|err| Attempt::Retry(err.to_string()))?;
        let mut filled: BTreeSet<Path> = BTreeSet::new();
        for (m, c) in expanded.terms() {
            if !c.is_one() {
                return Err(Attempt::Final(NotTidy::Coefficient {
                    generator: edge,
                    term: format_monomial(f, m),
                    coefficient: c.clone(),
                }));
            }
            let beta = m.beta().clone();
            if !slots.contains(&beta) {
                return Err(Attempt::Retry(format!(
                    "image of `{edge}` has ghost leg {} outside the blocks of `{}`",
                    f.display_path(&beta),
                    e.vertex_name(r)
                )));
            }
            if !filled.insert(beta.clone()) {
                return Err(Attempt::Retry(format!(
                    "image of `{edge}` has two terms ending in {}*",
                    f.display_path(&beta)
                )));
            }
            let value = m.alpha().clone();
            if f.is_sink(beta.range()) {
                bijections.zeta.insert((beta.len(), x, beta), value);
            } else {
                bijections.xi.insert((x, beta), value);
            }
        }
        if filled.len() != slots.len() {
            return Err(Attempt::Retry(format!(
                "image of `{edge}` leaves some block paths of `{}` unmatched",
                e.vertex_name(r)
            )));
        }
    }
    bijections
        .check(&partitions)
        .map_err(|err| Attempt::Retry(err.to_string()))?;
    Ok(TidyWitness {
        level,
        partitions,
        bijections,
    })
}
