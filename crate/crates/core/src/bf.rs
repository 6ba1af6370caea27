//! Bowen-Franks modules as a filtered colimit of integer vectors.
//!
//! A level-`n` vector has one coordinate `u_i` for every sink `u` and every
//! `|i| <= n`, and one coordinate `w_n` for every regular vertex `w`. The
//! transition map to level `n + 1` keeps the sink coordinates and pushes the
//! regular block through the transposed adjacency matrix: its regular part
//! lands in the new regular block, its sink part in the new sink index `n + 1`.
//! The class of `v_n` corresponds to `σ^n v`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, VertexClass, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BfError {
    #[error("vectors live over different graphs (`{0}` vs `{1}`)")]
    GraphMismatch(String, String),
    #[error("cannot transition from level {from} down to level {to}")]
    LevelBelowCurrent { from: usize, to: usize },
    #[error("index {index} is not a coordinate of `{vertex}` at level {level}")]
    IndexOutOfRange {
        vertex: String,
        index: i64,
        level: usize,
    },
    #[error("vectors are at different levels ({0} vs {1})")]
    LevelMismatch(usize, usize),
}

/// Integer vector indexed by `V_n`.
///
/// Sink coordinates are stored sparsely (nonzero entries only), regular
/// coordinates densely in `reg(E)` order.
#[derive(Clone, Debug)]
pub struct LevelVector {
    graph: Arc<Graph>,
    level: usize,
    sinks: BTreeMap<(usize, i64), BigInt>,
    regular: Vec<BigInt>,
}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for LevelVector {
    /// Literal equality of representatives (same graph, same level, same
    /// coordinates). Use [`bf_equal`] for equality of classes.
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph)
            && self.level == other.level
            && self.sinks == other.sinks
            && self.regular == other.regular
    }
}

impl Eq for LevelVector {}

impl LevelVector {
    pub fn zero(graph: Arc<Graph>, level: usize) -> Self {
        let regular = vec![BigInt::zero(); graph.regular().len()];
        LevelVector {
            graph,
            level,
            sinks: BTreeMap::new(),
            regular,
        }
    }

    /// The basis vector `v_index`. Regular vertices only have the index equal
    /// to the level.
    pub fn basis(
        graph: Arc<Graph>,
        level: usize,
        v: VertexId,
        index: i64,
    ) -> Result<Self, BfError> {
        let mut x = Self::zero(graph, level);
        x.add_to(v, index, &BigInt::one())?;
        Ok(x)
    }

    /// `v_n` for a vertex and a level `n`.
    pub fn vertex_at(graph: Arc<Graph>, v: VertexId, level: usize) -> Self {
        Self::basis(graph, level, v, level as i64).expect("v_n is always a coordinate of V_n")
    }

    /// `Σ_v v_0`, the representative of the order unit at level 0.
    pub fn unit(graph: Arc<Graph>) -> Self {
        let mut x = Self::zero(graph.clone(), 0);
        for v in graph.vertices() {
            x.add_to(v, 0, &BigInt::one()).expect("level 0 coordinate");
        }
        x
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn regular_part(&self) -> &[BigInt] {
        &self.regular
    }

    /// Nonzero sink coordinates keyed by `(sink position, index)`.
    pub fn sink_part(&self) -> &BTreeMap<(usize, i64), BigInt> {
        &self.sinks
    }

    fn check_index(&self, v: VertexId, index: i64) -> Result<VertexClass, BfError> {
        let class = self.graph.class(v);
        let ok = match class {
            VertexClass::Regular(_) => index == self.level as i64,
            VertexClass::Sink(_) => index.unsigned_abs() as usize <= self.level,
        };
        if ok {
            Ok(class)
        } else {
            Err(BfError::IndexOutOfRange {
                vertex: self.graph.vertex_name(v).to_string(),
                index,
                level: self.level,
            })
        }
    }

    pub fn coord(&self, v: VertexId, index: i64) -> Result<BigInt, BfError> {
        Ok(match self.check_index(v, index)? {
            VertexClass::Regular(p) => self.regular[p].clone(),
            VertexClass::Sink(p) => self.sinks.get(&(p, index)).cloned().unwrap_or_default(),
        })
    }

    pub fn add_to(&mut self, v: VertexId, index: i64, amount: &BigInt) -> Result<(), BfError> {
        match self.check_index(v, index)? {
            VertexClass::Regular(p) => self.regular[p] += amount,
            VertexClass::Sink(p) => add_sparse(&mut self.sinks, (p, index), amount),
        }
        Ok(())
    }

    pub fn set(&mut self, v: VertexId, index: i64, value: BigInt) -> Result<(), BfError> {
        let current = self.coord(v, index)?;
        self.add_to(v, index, &(value - current))
    }

    /// All nonzero coordinates as `(vertex, index, value)` in canonical order
    /// (vertex declaration order, then index).
    pub fn nonzero_coords(&self) -> Vec<(VertexId, i64, BigInt)> {
        let mut out: Vec<(VertexId, i64, BigInt)> = self
            .sinks
            .iter()
            .map(|(&(p, i), c)| (self.graph.sinks()[p], i, c.clone()))
            .chain(
                self.regular
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| (self.graph.regular()[p], self.level as i64, c.clone())),
            )
            .collect();
        out.sort_by_key(|(v, i, _)| (*v, *i));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.sinks.is_empty() && self.regular.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.sinks.values().all(|c| !c.is_negative()) && self.regular.iter().all(|c| !c.is_negative())
    }

    /// Whether any sink coordinate with a negative index is nonzero.
    pub fn has_negative_sink_support(&self) -> bool {
        self.sinks.keys().any(|&(_, i)| i < 0)
    }

    fn check_compatible(&self, other: &LevelVector) -> Result<(), BfError> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(BfError::GraphMismatch(
                self.graph.name().to_string(),
                other.graph.name().to_string(),
            ));
        }
        if self.level != other.level {
            return Err(BfError::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    /// Sum at equal levels.
    pub fn add(&self, other: &LevelVector) -> Result<LevelVector, BfError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.sinks {
            add_sparse(&mut out.sinks, *k, c);
        }
        for (a, b) in out.regular.iter_mut().zip(&other.regular) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LevelVector) -> Result<LevelVector, BfError> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> LevelVector {
        let mut out = self.clone();
        if k.is_zero() {
            out.sinks.clear();
        } else {
            for c in out.sinks.values_mut() {
                *c *= k;
            }
        }
        for c in out.regular.iter_mut() {
            *c *= k;
        }
        out
    }

    fn step(&self) -> LevelVector {
        let adj = self.graph.adjacency();
        let next = self.level + 1;
        let mut out = LevelVector {
            graph: self.graph.clone(),
            level: next,
            sinks: self.sinks.clone(),
            regular: adj.b.mul_vec(&self.regular).expect("b is reg x reg"),
        };
        let spill = adj.c.mul_vec(&self.regular).expect("c is sink x reg");
        for (p, c) in spill.iter().enumerate() {
            add_sparse(&mut out.sinks, (p, next as i64), c);
        }
        out
    }

    /// Image under the transition map to level `k >= level`.
    pub fn transition(&self, k: usize) -> Result<LevelVector, BfError> {
        if k < self.level {
            return Err(BfError::LevelBelowCurrent {
                from: self.level,
                to: k,
            });
        }
        let mut x = self.clone();
        while x.level < k {
            x = x.step();
        }
        Ok(x)
    }

    /// A representative of `σ^{-1}[x]`.
    ///
    /// Sink indices move down by one and the regular block is replaced by its
    /// image under the transposed adjacency matrix, staying at the same level.
    /// When a sink coordinate sits at index `-level` the vector is first
    /// pushed one level up so that the shifted index still fits.
    pub fn sigma_inverse(&self) -> LevelVector {
        let base = if self.sinks.keys().any(|&(_, i)| i == -(self.level as i64)) {
            self.step()
        } else {
            self.clone()
        };
        let adj = self.graph.adjacency();
        let level = base.level;
        let mut out = LevelVector {
            graph: base.graph.clone(),
            level,
            sinks: BTreeMap::new(),
            regular: adj.b.mul_vec(&base.regular).expect("b is reg x reg"),
        };
        for (&(p, i), c) in &base.sinks {
            add_sparse(&mut out.sinks, (p, i - 1), c);
        }
        let spill = adj.c.mul_vec(&base.regular).expect("c is sink x reg");
        for (p, c) in spill.iter().enumerate() {
            add_sparse(&mut out.sinks, (p, level as i64), c);
        }
        out
    }

    /// A representative of `σ[x]`: every index moves up by one, so the
    /// result lives one level higher with the same regular block.
    pub fn sigma(&self) -> LevelVector {
        LevelVector {
            graph: self.graph.clone(),
            level: self.level + 1,
            sinks: self.sinks.iter().map(|(&(p, i), c)| ((p, i + 1), c.clone())).collect(),
            regular: self.regular.clone(),
        }
    }

    /// A representative of `σ^p[x]` for any integer `p`.
    pub fn sigma_shift(&self, p: i64) -> LevelVector {
        let mut x = self.clone();
        if p >= 0 {
            for _ in 0..p {
                x = x.sigma();
            }
        } else {
            for _ in 0..(-p) {
                x = x.sigma_inverse();
            }
        }
        x
    }
}

fn add_sparse(map: &mut BTreeMap<(usize, i64), BigInt>, key: (usize, i64), amount: &BigInt) {
    if amount.is_zero() {
        return;
    }
    let entry = map.entry(key).or_default();
    *entry += amount;
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Brings two vectors over the same graph to their common level.
pub fn to_common_level(
    x: &LevelVector,
    y: &LevelVector,
) -> Result<(LevelVector, LevelVector), BfError> {
    if !same_graph(&x.graph, &y.graph) {
        return Err(BfError::GraphMismatch(
            x.graph.name().to_string(),
            y.graph.name().to_string(),
        ));
    }
    let n = x.level.max(y.level);
    Ok((x.transition(n)?, y.transition(n)?))
}

/// Decides `[x] = [y]` in the Bowen-Franks module.
///
/// With `z = x - y = (s, r)` at a common level, the class of `z` vanishes iff
/// some transition kills it, i.e. iff `s = 0`, `C B^j r = 0` for all `j < M`
/// and `B^M r = 0` for some `M`. The chain `ker B ⊆ ker B² ⊆ ...` stabilizes
/// after at most `d = #reg(E)` steps, so `M = d` suffices.
pub fn bf_equal(x: &LevelVector, y: &LevelVector) -> Result<bool, BfError> {
    let (x, y) = to_common_level(x, y)?;
    let z = x.sub(&y)?;
    Ok(class_is_zero(&z))
}

fn class_is_zero(z: &LevelVector) -> bool {
    if !z.sinks.is_empty() {
        return false;
    }
    let adj = z.graph.adjacency();
    let d = z.graph.regular().len();
    let mut r = z.regular.clone();
    for _ in 0..d {
        if r.iter().all(Zero::is_zero) {
            return true;
        }
        let spill = adj.c.mul_vec(&r).expect("c is sink x reg");
        if spill.iter().any(|c| !c.is_zero()) {
            return false;
        }
        r = adj.b.mul_vec(&r).expect("b is reg x reg");
    }
    r.iter().all(Zero::is_zero)
}

/// An element of the Bowen-Franks module, held through a representative.
/// Equality is equality of classes.
#[derive(Clone, Debug)]
pub struct BfElement(pub LevelVector);

impl PartialEq for BfElement {
    fn eq(&self, other: &Self) -> bool {
        bf_equal(&self.0, &other.0).unwrap_or(false)
    }
}

impl BfElement {
    pub fn order_unit(graph: Arc<Graph>) -> Self {
        BfElement(LevelVector::unit(graph))
    }
}

/// Outcome of the bounded positivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// All coordinates are nonnegative after transitioning to `level`.
    Positive { level: usize },
    /// A sink coordinate is negative; sink coordinates never change under
    /// transitions, so no representative is nonnegative.
    Negative {
        vertex: VertexId,
        index: i64,
        value: BigInt,
    },
    /// Neither conclusion was reached within `bound` extra levels.
    Undetermined { bound: usize },
}

/// Looks for a nonnegative representative within `bound` transitions.
pub fn is_positive(x: &LevelVector, bound: usize) -> Positivity {
    let mut cur = x.clone();
    for extra in 0..=bound {
        if extra > 0 {
            cur = cur.step();
        }
        if let Some((&(p, i), c)) = cur.sinks.iter().find(|(_, c)| c.is_negative()) {
            return Positivity::Negative {
                vertex: x.graph.sinks()[p],
                index: i,
                value: c.clone(),
            };
        }
        if cur.regular.iter().all(|c| !c.is_negative()) {
            return Positivity::Positive { level: cur.level };
        }
    }
    Positivity::Undetermined { bound }
}

/// The representative `ι_{0,N}(1_E)` of the order unit at level `N`, computed
/// from path counts: `#E^i_u` at `u_i` for sinks and `0 <= i <= N`, and
/// `#E^N_w` at `w_N` for regular `w`.
pub fn order_unit_vector(graph: &Arc<Graph>, level: usize) -> LevelVector {
    let mut x = LevelVector::zero(graph.clone(), level);
    let full = &graph.adjacency().full;
    let mut power = crate::matrix::IntMatrix::identity(graph.vertex_count());
    for i in 0..=level {
        if i > 0 {
            power = power.mul(full).expect("square");
        }
        let counts = power.column_sums();
        for &u in graph.sinks() {
            x.add_to(u, i as i64, &counts[u.0]).expect("sink index within level");
        }
        if i == level {
            for &w in graph.regular() {
                x.add_to(w, level as i64, &counts[w.0]).expect("regular index at level");
            }
        }
    }
    x
}

impl fmt::Display for LevelVector {
    /// Human-readable sum such as `2 u_0 + v_3`; `0` for the zero vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.nonzero_coords();
        if coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (v, i, c)) in coords.iter().enumerate() {
            let name = self.graph.vertex_name(*v);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{name}_{i}")?;
            } else {
                write!(f, "{mag} {name}_{i}")?;
            }
        }
        Ok(())
    }
}
