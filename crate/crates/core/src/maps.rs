//! Unital order-preserving module maps between Bowen-Franks modules.
//!
//! A map is given by nonnegative representatives `x_v` of the images of the
//! vertex classes of the source graph, all at one level of the target. From
//! such data [`extract_matrix_form`] recovers the integer matrices
//! `(L; S^(0..L); R)` with
//!
//! ```text
//! φ([v]) = Σ_u Σ_i S^(i)_{v,u} [u_i] + Σ_w R_{v,w} [w_L]
//! ```
//!
//! which is what the lift in [`crate::lift`] consumes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bf::{bf_equal, order_unit_vector, BfError, LevelVector};
use crate::graph::{Graph, VertexId};
use crate::matrix::IntMatrix;

/// Default stabilization budget for [`extract_matrix_form`].
pub const DEFAULT_CAP: usize = 64;

/// Why a well-formed spec is not a unital module map.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Invalidity {
    #[error("σ-linearity fails at regular vertex `{vertex}`")]
    SigmaLinearity { vertex: String },
    #[error("unitality fails: the images do not sum to the order unit")]
    Unitality,
    #[error("image of `{vertex}` has support {value} at negative index {index} of sink `{sink}`")]
    NegativeSinkSupport {
        vertex: String,
        sink: String,
        index: i64,
        value: BigInt,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("expected {expected} images (one per source vertex), got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image of `{vertex}` is a vector over `{found}`, expected `{expected}`")]
    WrongGraph {
        vertex: String,
        found: String,
        expected: String,
    },
    #[error("image of `{vertex}` is at level {found}, expected common level {expected}")]
    LevelMismatch {
        vertex: String,
        found: usize,
        expected: usize,
    },
    #[error("image of `{vertex}` has negative coordinate {value} at `{target}` index {index}")]
    NegativeCoordinate {
        vertex: String,
        target: String,
        index: i64,
        value: BigInt,
    },
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("maps do not compose: `{0}` is not `{1}`")]
    NotComposable(String, String),
    #[error("invalid map: {0}")]
    Invalid(#[from] Invalidity),
    #[error("no stabilization within cap {cap}")]
    NoStabilization { cap: usize },
    #[error("matrix form violates {0}")]
    Form(#[from] FormViolation),
    #[error(transparent)]
    Bf(#[from] BfError),
}

/// Nonnegative representatives `x_v` over the target graph at a common level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfMapSpec {
    source: Arc<Graph>,
    target: Arc<Graph>,
    level: usize,
    images: Vec<LevelVector>,
}

impl BfMapSpec {
    /// Checks shape, graph, common level and nonnegativity; does not check
    /// that the data defines a module map (see [`BfMapSpec::validate`]).
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        images: Vec<LevelVector>,
    ) -> Result<BfMapSpec, MapError> {
        if images.len() != source.vertex_count() {
            return Err(MapError::ImageCount {
                expected: source.vertex_count(),
                got: images.len(),
            });
        }
        let level = images.first().map_or(0, LevelVector::level);
        for (v, x) in source.vertices().zip(&images) {
            let vertex = source.vertex_name(v).to_string();
            if **x.graph() != *target {
                return Err(MapError::WrongGraph {
                    vertex,
                    found: x.graph().name().to_string(),
                    expected: target.name().to_string(),
                });
            }
            if x.level() != level {
                return Err(MapError::LevelMismatch {
                    vertex,
                    found: x.level(),
                    expected: level,
                });
            }
            if let Some((w, index, value)) =
                x.nonzero_coords().into_iter().find(|(_, _, c)| c.is_negative())
            {
                return Err(MapError::NegativeCoordinate {
                    vertex,
                    target: target.vertex_name(w).to_string(),
                    index,
                    value,
                });
            }
        }
        Ok(BfMapSpec {
            source,
            target,
            level,
            images,
        })
    }

    /// Like [`BfMapSpec::new`] but first transitions every image to the
    /// highest level among them.
    pub fn from_mixed_levels(
        source: Arc<Graph>,
        target: Arc<Graph>,
        images: Vec<LevelVector>,
    ) -> Result<BfMapSpec, MapError> {
        let top = images.iter().map(LevelVector::level).max().unwrap_or(0);
        let images = images
            .iter()
            .map(|x| x.transition(top))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    /// `x_v = v_0`.
    pub fn identity(graph: Arc<Graph>) -> BfMapSpec {
        let images = graph
            .vertices()
            .map(|v| LevelVector::vertex_at(graph.clone(), v, 0))
            .collect();
        BfMapSpec {
            source: graph.clone(),
            target: graph,
            level: 0,
            images,
        }
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn images(&self) -> &[LevelVector] {
        &self.images
    }

    pub fn image(&self, v: VertexId) -> &LevelVector {
        &self.images[v.0]
    }

    /// Checks the absence of negative sink support, σ-linearity at regular
    /// vertices and unitality, in that order.
    pub fn validate(&self) -> Result<(), Invalidity> {
        let e = &self.source;
        for (v, x) in e.vertices().zip(&self.images) {
            if let Some((&(p, index), value)) = x.sink_part().iter().find(|(k, _)| k.1 < 0) {
                return Err(Invalidity::NegativeSinkSupport {
                    vertex: e.vertex_name(v).to_string(),
                    sink: self.target.vertex_name(self.target.sinks()[p]).to_string(),
                    index,
                    value: value.clone(),
                });
            }
        }
        for &v in e.regular() {
            let lhs = self.images[v.0].sigma_inverse();
            let mut rhs = LevelVector::zero(self.target.clone(), self.level);
            for &edge in e.out_edges(v) {
                rhs = rhs.add(&self.images[e.range(edge).0]).expect("common level");
            }
            if !bf_equal(&lhs, &rhs).expect("same graph") {
                return Err(Invalidity::SigmaLinearity {
                    vertex: e.vertex_name(v).to_string(),
                });
            }
        }
        let total = self.sum_of_images(&self.images);
        if !bf_equal(&total, &order_unit_vector(&self.target, self.level)).expect("same graph") {
            return Err(Invalidity::Unitality);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn sum_of_images(&self, images: &[LevelVector]) -> LevelVector {
        let level = images.first().map_or(self.level, LevelVector::level);
        images.iter().fold(LevelVector::zero(self.target.clone(), level), |acc, x| {
            acc.add(x).expect("common level")
        })
    }

    /// Image of an arbitrary source vector: the basis vector at `v`, index
    /// `i` is `σ^i v` and maps to `σ^i x_v`.
    pub fn apply(&self, x: &LevelVector) -> Result<LevelVector, MapError> {
        if **x.graph() != *self.source {
            return Err(MapError::NotComposable(
                x.graph().name().to_string(),
                self.source.name().to_string(),
            ));
        }
        let mut terms = Vec::new();
        for (v, index, c) in x.nonzero_coords() {
            terms.push(self.images[v.0].sigma_shift(index).scale(&c));
        }
        let top = terms.iter().map(LevelVector::level).max().unwrap_or(self.level);
        let mut out = LevelVector::zero(self.target.clone(), top);
        for t in terms {
            out = out.add(&t.transition(top)?)?;
        }
        Ok(out)
    }

    /// `self ∘ inner`, mapping `inner.source()` to `self.target()`.
    pub fn compose(&self, inner: &BfMapSpec) -> Result<BfMapSpec, MapError> {
        if *inner.target != *self.source {
            return Err(MapError::NotComposable(
                inner.target.name().to_string(),
                self.source.name().to_string(),
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_mixed_levels(inner.source.clone(), self.target.clone(), images)
    }

    /// Whether the two specs define the same module map.
    pub fn same_map(&self, other: &BfMapSpec) -> Result<bool, MapError> {
        if *self.source != *other.source || *self.target != *other.target {
            return Ok(false);
        }
        for (x, y) in self.images.iter().zip(&other.images) {
            if !bf_equal(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks that `forward` and `backward` are mutually inverse by composing
/// them both ways and comparing with the identity.
pub fn is_isomorphism_pair(forward: &BfMapSpec, backward: &BfMapSpec) -> Result<bool, MapError> {
    let there_and_back = backward.compose(forward)?;
    let back_and_there = forward.compose(backward)?;
    Ok(there_and_back.same_map(&BfMapSpec::identity(forward.source.clone()))?
        && back_and_there.same_map(&BfMapSpec::identity(forward.target.clone()))?)
}

/// `x_v := Σ_w P_{v,w} · w_k` for a nonnegative matrix `P` indexed
/// `E^0 × F^0`.
pub fn map_from_matrix(
    source: Arc<Graph>,
    target: Arc<Graph>,
    p: &IntMatrix,
    shift: usize,
) -> Result<BfMapSpec, MapError> {
    if p.nrows() != source.vertex_count() || p.ncols() != target.vertex_count() {
        return Err(MapError::DimensionMismatch {
            rows: p.nrows(),
            cols: p.ncols(),
            expected_rows: source.vertex_count(),
            expected_cols: target.vertex_count(),
        });
    }
    let images = source
        .vertices()
        .map(|v| {
            let mut x = LevelVector::zero(target.clone(), shift);
            for w in target.vertices() {
                x.add_to(w, shift as i64, &p[(v.0, w.0)]).expect("index within level");
            }
            x
        })
        .collect();
    BfMapSpec::new(source, target, images)
}

/// An identity of the matrix form that fails.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormViolation {
    #[error("wrong matrix shapes")]
    Shape,
    #[error("negative entry")]
    Negative,
    #[error("column sums of R differ from #F^L_w")]
    RegularColumnSums,
    #[error("column sums of S^({0}) differ from #F^{0}_u")]
    SinkColumnSums(usize),
    #[error("S^(0) is nonzero on regular vertex `{0}`")]
    RegularRowAtZero(String),
    #[error("S^({0}) ≠ A_E S^({prev}) on regular rows", prev = .0 - 1)]
    SinkRecursion(usize),
    #[error("A_E S^(L) ≠ R A_F on sink columns")]
    Splice,
    #[error("A_E R ≠ R A_F on regular columns")]
    Intertwining,
}

/// The normal form `(L; S^(0..L); R)` of a unital module map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfMatrixForm {
    pub source: Arc<Graph>,
    pub target: Arc<Graph>,
    pub level: usize,
    /// `S^(i)`, `E^0 × sink(F)`, for `i = 0..=level`.
    pub sink_blocks: Vec<IntMatrix>,
    /// `R`, `E^0 × reg(F)`.
    pub regular_block: IntMatrix,
}

impl BfMatrixForm {
    /// Checks every identity the form must satisfy as an exact matrix
    /// equation. Rows are the source vertices, sink and regular columns
    /// follow the target's sink and regular orders.
    pub fn check(&self) -> Result<(), FormViolation> {
        let e = &self.source;
        let f = &self.target;
        let l = self.level;
        let n = e.vertex_count();
        let (f_sinks, f_reg) = (f.sinks(), f.regular());
        let r = &self.regular_block;
        if self.sink_blocks.len() != l + 1
            || (r.nrows(), r.ncols()) != (n, f_reg.len())
            || self
                .sink_blocks
                .iter()
                .any(|s| (s.nrows(), s.ncols()) != (n, f_sinks.len()))
        {
            return Err(FormViolation::Shape);
        }
        if !r.is_nonnegative() || self.sink_blocks.iter().any(|s| !s.is_nonnegative()) {
            return Err(FormViolation::Negative);
        }

        let counts_at = |i: usize| f.path_counts(i);
        let top = counts_at(l);
        let reg_counts: Vec<BigInt> = f_reg.iter().map(|w| top[w.0].clone()).collect();
        if r.column_sums() != reg_counts {
            return Err(FormViolation::RegularColumnSums);
        }
        for (i, s) in self.sink_blocks.iter().enumerate() {
            let counts = counts_at(i);
            let expected: Vec<BigInt> = f_sinks.iter().map(|u| counts[u.0].clone()).collect();
            if s.column_sums() != expected {
                return Err(FormViolation::SinkColumnSums(i));
            }
        }

        let e_reg: Vec<usize> = e.regular().iter().map(|v| v.0).collect();
        for &v in &e_reg {
            if self.sink_blocks[0].row(v).iter().any(|c| !c.is_zero()) {
                return Err(FormViolation::RegularRowAtZero(
                    e.vertex_name(VertexId(v)).to_string(),
                ));
            }
        }
        // Full adjacency restricted to regular rows is the reduced matrix.
        let a_e = &e.adjacency().full;
        for i in 1..=l {
            let prod = a_e.mul(&self.sink_blocks[i - 1]).expect("shapes checked");
            for &v in &e_reg {
                if prod.row(v) != self.sink_blocks[i].row(v) {
                    return Err(FormViolation::SinkRecursion(i));
                }
            }
        }
        let r_af = r.mul(&f.adjacency().reduced).expect("E^0 x F^0");
        let splice = a_e.mul(&self.sink_blocks[l]).expect("shapes checked");
        for &v in &e_reg {
            for (col, u) in f_sinks.iter().enumerate() {
                if splice[(v, col)] != r_af[(v, u.0)] {
                    return Err(FormViolation::Splice);
                }
            }
        }
        let a_r = a_e.mul(r).expect("shapes checked");
        for &v in &e_reg {
            for (col, w) in f_reg.iter().enumerate() {
                if a_r[(v, col)] != r_af[(v, w.0)] {
                    return Err(FormViolation::Intertwining);
                }
            }
        }
        Ok(())
    }

    /// `x_v = Σ_u Σ_i S^(i)_{v,u} u_i + Σ_w R_{v,w} w_L` at level `L`.
    pub fn reconstruct(&self) -> BfMapSpec {
        let f = &self.target;
        let images = self
            .source
            .vertices()
            .map(|v| {
                let mut x = LevelVector::zero(f.clone(), self.level);
                for (i, s) in self.sink_blocks.iter().enumerate() {
                    for (col, &u) in f.sinks().iter().enumerate() {
                        x.add_to(u, i as i64, &s[(v.0, col)]).expect("index within level");
                    }
                }
                for (col, &w) in f.regular().iter().enumerate() {
                    x.add_to(w, self.level as i64, &self.regular_block[(v.0, col)])
                        .expect("regular index at level");
                }
                x
            })
            .collect();
        BfMapSpec::new(self.source.clone(), self.target.clone(), images)
            .expect("matrix forms are nonnegative")
    }
}

/// Pushes all representatives up one level at a time until the unitality
/// and σ-linearity identities hold exactly as vectors, then reads off the
/// matrices.
pub fn extract_matrix_form(
    spec: &BfMapSpec,
    min_level: usize,
    cap: usize,
) -> Result<BfMatrixForm, MapError> {
    spec.validate()?;
    let e = &spec.source;
    let f = &spec.target;
    let start = spec.level.max(min_level);
    for extra in 0..=cap {
        let l = start + extra;
        let xs = spec
            .images
            .iter()
            .map(|x| x.transition(l))
            .collect::<Result<Vec<_>, _>>()?;
        if spec.sum_of_images(&xs) != order_unit_vector(f, l) {
            continue;
        }
        let linear = e.regular().iter().all(|&v| {
            let lhs = xs[v.0].sigma_inverse();
            if lhs.level() != l {
                return false;
            }
            let mut rhs = LevelVector::zero(f.clone(), l);
            for &edge in e.out_edges(v) {
                rhs = rhs.add(&xs[e.range(edge).0]).expect("common level");
            }
            lhs == rhs
        });
        if !linear {
            continue;
        }
        let n = e.vertex_count();
        let mut sink_blocks = vec![IntMatrix::zeros(n, f.sinks().len()); l + 1];
        let mut regular_block = IntMatrix::zeros(n, f.regular().len());
        for (v, x) in xs.iter().enumerate() {
            for (col, &u) in f.sinks().iter().enumerate() {
                for (i, block) in sink_blocks.iter_mut().enumerate() {
                    block[(v, col)] = x.coord(u, i as i64)?;
                }
            }
            for (col, &w) in f.regular().iter().enumerate() {
                regular_block[(v, col)] = x.coord(w, l as i64)?;
            }
        }
        let form = BfMatrixForm {
            source: e.clone(),
            target: f.clone(),
            level: l,
            sink_blocks,
            regular_block,
        };
        form.check()?;
        return Ok(form);
    }
    Err(MapError::NoStabilization { cap })
}
