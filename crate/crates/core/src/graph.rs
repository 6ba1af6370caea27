//! Finite directed multigraphs, paths, and adjacency data.
//!
//! Vertices and edges are kept in declaration order; that order is the
//! canonical order used everywhere else (path ordering, matrix rows and
//! columns, output files).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("edge `{edge}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("a path needs at least one edge")]
    EmptyPath,
    #[error("edges `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

/// Whether a vertex emits edges, together with its position inside
/// `reg(E)` or `sink(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Regular(usize),
    Sink(usize),
}

/// Adjacency matrices of a graph.
///
/// `full` is indexed by all vertices, `reduced` drops the sink rows, and `b`,
/// `c` are the regular and sink blocks of the transposed reduced matrix:
/// `b[v][w] = reduced[w][v]` for regular `v, w`, `c[u][v] = reduced[v][u]` for
/// a sink `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyData {
    pub full: IntMatrix,
    pub reduced: IntMatrix,
    pub b: IntMatrix,
    pub c: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    class: Vec<VertexClass>,
    regular: Vec<VertexId>,
    sinks: Vec<VertexId>,
    adjacency: AdjacencyData,
}

pub(crate) fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Graph {
    /// Builds a graph from vertex names and `(name, source, range)` triples.
    ///
    /// Vertex and edge names share one namespace since element expressions
    /// mention both.
    pub fn new<S: AsRef<str>>(
        name: &str,
        vertices: &[S],
        edges: &[(S, S, S)],
    ) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut index: HashMap<&str, VertexId> = HashMap::new();
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref();
            if !is_valid_name(v) {
                return Err(GraphError::InvalidName(v.to_string()));
            }
            if seen.insert(v, ()).is_some() {
                return Err(GraphError::DuplicateName(v.to_string()));
            }
            index.insert(v, VertexId(i));
        }
        let mut built = Vec::with_capacity(edges.len());
        for (e, s, r) in edges {
            let (e, s, r) = (e.as_ref(), s.as_ref(), r.as_ref());
            if !is_valid_name(e) {
                return Err(GraphError::InvalidName(e.to_string()));
            }
            if seen.insert(e, ()).is_some() {
                return Err(GraphError::DuplicateName(e.to_string()));
            }
            let lookup = |x: &str| {
                index.get(x).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: e.to_string(),
                    vertex: x.to_string(),
                })
            };
            built.push(Edge {
                name: e.to_string(),
                source: lookup(s)?,
                range: lookup(r)?,
            });
        }
        let names = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        Ok(Self::assemble(name.to_string(), names, built))
    }

    fn assemble(name: String, vertices: Vec<String>, edges: Vec<Edge>) -> Graph {
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.range.0].push(EdgeId(i));
        }
        let mut regular = Vec::new();
        let mut sinks = Vec::new();
        let class = (0..n)
            .map(|v| {
                if out_edges[v].is_empty() {
                    sinks.push(VertexId(v));
                    VertexClass::Sink(sinks.len() - 1)
                } else {
                    regular.push(VertexId(v));
                    VertexClass::Regular(regular.len() - 1)
                }
            })
            .collect();

        let mut full = IntMatrix::zeros(n, n);
        for e in &edges {
            full[(e.source.0, e.range.0)] += BigInt::one();
        }
        let reg_idx: Vec<usize> = regular.iter().map(|v| v.0).collect();
        let sink_idx: Vec<usize> = sinks.iter().map(|v| v.0).collect();
        let all: Vec<usize> = (0..n).collect();
        let reduced = full.select(&reg_idx, &all);
        let b = full.select(&reg_idx, &reg_idx).transpose();
        let c = full.select(&reg_idx, &sink_idx).transpose();

        Graph {
            name,
            vertices,
            edges,
            out_edges,
            in_edges,
            class,
            regular,
            sinks,
            adjacency: AdjacencyData {
                full,
                reduced,
                b,
                c,
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(VertexId)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .map(EdgeId)
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    /// `s^{-1}(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r^{-1}(v)` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn class(&self, v: VertexId) -> VertexClass {
        self.class[v.0]
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        matches!(self.class[v.0], VertexClass::Regular(_))
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        !self.is_regular(v)
    }

    pub fn is_regular_graph(&self) -> bool {
        self.sinks.is_empty()
    }

    pub fn regular(&self) -> &[VertexId] {
        &self.regular
    }

    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    pub fn adjacency(&self) -> &AdjacencyData {
        &self.adjacency
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertices.len()
    }

    /// Builds a path from an edge sequence, checking composability.
    pub fn path(&self, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let Some(first) = edges.first() else {
            return Err(GraphError::EmptyPath);
        };
        for pair in edges.windows(2) {
            if self.range(pair[0]) != self.source(pair[1]) {
                return Err(GraphError::NotComposable(
                    self.edge_name(pair[0]).to_string(),
                    self.edge_name(pair[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            source: self.source(*first),
            range: self.range(*edges.last().unwrap()),
            edges: edges.to_vec(),
        })
    }

    /// Path from edge names, e.g. `["x1", "x2"]`.
    pub fn path_by_names(&self, names: &[&str]) -> Result<Path, GraphError> {
        if names.len() == 1 {
            if let Ok(v) = self.vertex(names[0]) {
                return Ok(Path::vertex(v));
            }
        }
        let ids = names
            .iter()
            .map(|n| self.edge_by_name(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.path(&ids)
    }

    /// All paths of length `k` with range `w`, in canonical order.
    ///
    /// Enumerates by prepending edges, so the count is an independent check
    /// on the column sums of powers of the adjacency matrix.
    pub fn paths_into(&self, w: VertexId, k: usize) -> Result<Vec<Path>, GraphError> {
        if !self.contains_vertex(w) {
            return Err(GraphError::UnknownVertex(format!("#{}", w.0)));
        }
        let mut frontier = vec![Path::vertex(w)];
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.in_edges(p.source) {
                    next.push(p.prepend(e, self));
                }
            }
            frontier = next;
        }
        frontier.sort();
        Ok(frontier)
    }

    /// All paths of length `k` starting at `v`, in canonical order.
    pub fn paths_from(&self, v: VertexId, k: usize) -> Vec<Path> {
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range) {
                    next.push(p.extend(e, self));
                }
            }
            frontier = next;
        }
        frontier.sort();
        frontier
    }

    /// Every path of length at most `max_len`, in canonical order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self
            .vertices()
            .flat_map(|v| (0..=max_len).flat_map(move |k| self.paths_from(v, k)))
            .collect();
        all.sort();
        all
    }

    /// `(R_n, S_n)`: length-`n` paths into regular vertices and paths of
    /// length at most `n` into sinks.
    pub fn level_sets(&self, n: usize) -> (Vec<Path>, Vec<Path>) {
        let mut regular: Vec<Path> = self
            .regular
            .iter()
            .flat_map(|&w| self.paths_into(w, n).expect("own vertex"))
            .collect();
        let mut sinks: Vec<Path> = self
            .sinks
            .iter()
            .flat_map(|&u| (0..=n).flat_map(move |i| self.paths_into(u, i).expect("own vertex")))
            .collect();
        regular.sort();
        sinks.sort();
        (regular, sinks)
    }

    /// Sinks, and vertices whose chain of unique out-edges runs into a sink.
    pub fn line_points(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| {
                let mut cur = v;
                // a chain longer than the vertex count has revisited a vertex
                for _ in 0..=self.vertex_count() {
                    match self.out_edges(cur) {
                        [] => return true,
                        [e] => cur = self.range(*e),
                        _ => return false,
                    }
                }
                false
            })
            .collect()
    }

    /// `#E^k_w` for every vertex `w`, as column sums of the `k`-th power of the
    /// adjacency matrix.
    pub fn path_counts(&self, k: usize) -> Vec<BigInt> {
        self.adjacency.full.pow(k as u32).column_sums()
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.source).to_string()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Serializes in the line-based graph file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.name);
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.name,
                self.vertex_name(e.source),
                self.vertex_name(e.range)
            ));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A finite path. Length-zero paths are vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self · e`; the caller guarantees `r(self) = s(e)`.
    pub fn extend(&self, e: EdgeId, g: &Graph) -> Path {
        debug_assert_eq!(self.range, g.source(e));
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            source: self.source,
            range: g.range(e),
            edges,
        }
    }

    /// `e · self`; the caller guarantees `r(e) = s(self)`.
    pub fn prepend(&self, e: EdgeId, g: &Graph) -> Path {
        debug_assert_eq!(g.range(e), self.source);
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        Path {
            source: g.source(e),
            range: self.range,
            edges,
        }
    }

    /// Concatenation, `None` unless `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.source != self.source
            || prefix.edges.len() > self.edges.len()
            || self.edges[..prefix.edges.len()] != prefix.edges[..]
        {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }

    /// Drops the last edge; `None` for a vertex.
    pub fn truncate_last(&self, g: &Graph) -> Option<Path> {
        let last = *self.edges.last()?;
        Some(Path {
            source: self.source,
            range: g.source(last),
            edges: self.edges[..self.edges.len() - 1].to_vec(),
        })
    }

    /// The first `k` edges (`k <= len`).
    pub fn prefix(&self, k: usize, g: &Graph) -> Path {
        if k == 0 {
            return Path::vertex(self.source);
        }
        Path {
            source: self.source,
            range: g.range(self.edges[k - 1]),
            edges: self.edges[..k].to_vec(),
        }
    }
}

impl Ord for Path {
    /// Length first, then edge sequence by declaration order; vertices by
    /// declaration order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
