//! Lifting a matrix form to a homomorphism of Leavitt path algebras.
//!
//! Given `(L; S^(0..L); R)`, the paths of length `L` into each regular
//! vertex `w` of the target are split into blocks `Γ_{v,w}` of sizes
//! `R_{v,w}`, and the paths of length `i` into each sink `u` into blocks
//! `Σ^i_{v,u}` of sizes `S^(i)_{v,u}`. For every edge `e` out of a regular
//! source vertex `v`, the pairs `(e, α)` with `α` in a block of `r(e)` are
//! matched with one-edge extensions of paths in the blocks of `v`. The
//! homomorphism is then
//!
//! ```text
//! φ(v) = Σ_{α ∈ Γ_{v,·}} α α* + Σ_{β ∈ Σ^·_{v,·}} β β*
//! φ(e) = Σ_{α ∈ Γ_{r(e),·}} ξ(e,α) α* + Σ_{β ∈ Σ^i_{r(e),·}} ζ^i(e,β) β*
//! ```
//!
//! Blocks are filled in canonical path order, source vertex by source
//! vertex, and each matching pairs the `k`-th domain element (ordered by
//! edge, then path) with the `k`-th codomain path.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::hom::{GradedHom, Provenance, TidyWitness};
use crate::lpa::{Element, Monomial};
use crate::maps::{BfMatrixForm, FormViolation};
use crate::matrix::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("matrix form is inconsistent: {0}")]
    Form(#[from] FormViolation),
    #[error("block sizes for `{target}` do not add up: {requested} requested, {available} paths")]
    BlockSizes {
        target: String,
        requested: BigInt,
        available: usize,
    },
    #[error("{table} at `{vertex}` -> `{target}`: domain has {domain} elements, codomain {codomain}")]
    Cardinality {
        table: String,
        vertex: String,
        target: String,
        domain: usize,
        codomain: usize,
    },
    #[error("partition of {what} is not a disjoint cover")]
    NotAPartition { what: String },
    #[error("{0}")]
    Table(String),
}

/// The blocks `Γ_{v,w}` and `Σ^i_{v,u}`. Only nonempty blocks are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionData {
    pub source: Arc<Graph>,
    pub target: Arc<Graph>,
    pub level: usize,
    /// `(v, w) ↦ Γ_{v,w}`, `w` regular in the target, paths sorted.
    pub gamma: BTreeMap<(VertexId, VertexId), Vec<Path>>,
    /// `(i, v, u) ↦ Σ^i_{v,u}`, `u` a sink of the target, paths sorted.
    pub sigma: BTreeMap<(usize, VertexId, VertexId), Vec<Path>>,
}

impl PartitionData {
    pub fn gamma(&self, v: VertexId, w: VertexId) -> &[Path] {
        self.gamma.get(&(v, w)).map_or(&[], Vec::as_slice)
    }

    pub fn sigma(&self, i: usize, v: VertexId, u: VertexId) -> &[Path] {
        self.sigma.get(&(i, v, u)).map_or(&[], Vec::as_slice)
    }

    /// Checks that the blocks partition `F^L_w` and each `F^i_u`, and that
    /// `Σ^0_{v,u}` is empty for regular `v`.
    pub fn check(&self) -> Result<(), LiftError> {
        let (e, f) = (&self.source, &self.target);
        for &w in f.regular() {
            let blocks: Vec<&[Path]> = e.vertices().map(|v| self.gamma(v, w)).collect();
            check_cover(&blocks, &f.paths_into(w, self.level).expect("own vertex"), || {
                format!("paths of length {} into `{}`", self.level, f.vertex_name(w))
            })?;
        }
        for &u in f.sinks() {
            for i in 0..=self.level {
                let blocks: Vec<&[Path]> = e.vertices().map(|v| self.sigma(i, v, u)).collect();
                check_cover(&blocks, &f.paths_into(u, i).expect("own vertex"), || {
                    format!("paths of length {i} into `{}`", f.vertex_name(u))
                })?;
            }
            for &v in e.regular() {
                if !self.sigma(0, v, u).is_empty() {
                    return Err(LiftError::NotAPartition {
                        what: format!(
                            "length-0 paths into `{}`: regular `{}` owns one",
                            f.vertex_name(u),
                            e.vertex_name(v)
                        ),
                    });
                }
            }
        }
        let stray_gamma = self.gamma.keys().any(|&(v, w)| {
            !e.contains_vertex(v) || !f.contains_vertex(w) || !f.is_regular(w)
        });
        let stray_sigma = self.sigma.keys().any(|&(i, v, u)| {
            i > self.level || !e.contains_vertex(v) || !f.contains_vertex(u) || !f.is_sink(u)
        });
        if stray_gamma || stray_sigma {
            return Err(LiftError::NotAPartition {
                what: "blocks indexed outside the graphs".into(),
            });
        }
        Ok(())
    }

    /// Block sizes as a matrix form.
    pub fn matrix_form(&self) -> BfMatrixForm {
        let (e, f) = (&self.source, &self.target);
        let n = e.vertex_count();
        let mut regular_block = IntMatrix::zeros(n, f.regular().len());
        for (col, &w) in f.regular().iter().enumerate() {
            for v in e.vertices() {
                regular_block[(v.0, col)] = BigInt::from(self.gamma(v, w).len());
            }
        }
        let sink_blocks = (0..=self.level)
            .map(|i| {
                let mut s = IntMatrix::zeros(n, f.sinks().len());
                for (col, &u) in f.sinks().iter().enumerate() {
                    for v in e.vertices() {
                        s[(v.0, col)] = BigInt::from(self.sigma(i, v, u).len());
                    }
                }
                s
            })
            .collect();
        BfMatrixForm {
            source: e.clone(),
            target: f.clone(),
            level: self.level,
            sink_blocks,
            regular_block,
        }
    }

    /// `{α f : f ∈ F^1, r(f) = x, α ∈ Γ_{v,s(f)}}` in canonical order.
    fn extensions(&self, v: VertexId, x: VertexId) -> Vec<Path> {
        let f = &self.target;
        let mut out: Vec<Path> = f
            .in_edges(x)
            .iter()
            .flat_map(|&edge| {
                self.gamma(v, f.source(edge))
                    .iter()
                    .map(move |alpha| alpha.extend(edge, f))
            })
            .collect();
        out.sort();
        out
    }
}

fn check_cover(
    blocks: &[&[Path]],
    whole: &[Path],
    what: impl Fn() -> String,
) -> Result<(), LiftError> {
    let mut seen = BTreeSet::new();
    for p in blocks.iter().flat_map(|b| b.iter()) {
        if !seen.insert(p.clone()) {
            return Err(LiftError::NotAPartition { what: what() });
        }
    }
    if seen.len() != whole.len() || whole.iter().any(|p| !seen.contains(p)) {
        return Err(LiftError::NotAPartition { what: what() });
    }
    Ok(())
}

/// The matchings `ξ` and `ζ^i` as explicit tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BijectionData {
    /// `(e, α) ↦ ξ(e, α)` for `α ∈ Γ_{r(e), w}`.
    pub xi: BTreeMap<(EdgeId, Path), Path>,
    /// `(i, e, β) ↦ ζ^i(e, β)` for `β ∈ Σ^i_{r(e), u}`.
    pub zeta: BTreeMap<(usize, EdgeId, Path), Path>,
}

/// One matching problem: its domain in order and its codomain in order.
struct Table {
    name: String,
    vertex: VertexId,
    target: VertexId,
    domain: Vec<(EdgeId, Path)>,
    codomain: Vec<Path>,
}

/// Enumerates every table the partitions call for, with domains ordered by
/// edge then path and codomains in canonical path order.
fn tables(p: &PartitionData) -> Vec<(Option<usize>, Table)> {
    let (e, f) = (&p.source, &p.target);
    let mut out = Vec::new();
    for &v in e.regular() {
        let mut edges = e.out_edges(v).to_vec();
        edges.sort();
        let domain_for = |block: &dyn Fn(VertexId) -> Vec<Path>| -> Vec<(EdgeId, Path)> {
            edges
                .iter()
                .flat_map(|&edge| block(e.range(edge)).into_iter().map(move |a| (edge, a)))
                .collect()
        };
        for &w in f.regular() {
            out.push((
                None,
                Table {
                    name: "xi".into(),
                    vertex: v,
                    target: w,
                    domain: domain_for(&|x| p.gamma(x, w).to_vec()),
                    codomain: p.extensions(v, w),
                },
            ));
        }
        for &u in f.sinks() {
            for i in 0..=p.level {
                let codomain = if i < p.level {
                    p.sigma(i + 1, v, u).to_vec()
                } else {
                    p.extensions(v, u)
                };
                out.push((
                    Some(i),
                    Table {
                        name: format!("zeta^{i}"),
                        vertex: v,
                        target: u,
                        domain: domain_for(&|x| p.sigma(i, x, u).to_vec()),
                        codomain,
                    },
                ));
            }
        }
    }
    out
}

impl BijectionData {
    /// Checks every table against the domains and codomains the partitions
    /// prescribe, and that each is a bijection.
    pub fn check(&self, p: &PartitionData) -> Result<(), LiftError> {
        let f = &p.target;
        let mut xi_used = 0;
        let mut zeta_used = 0;
        for (index, t) in tables(p) {
            let mut image = BTreeSet::new();
            for (edge, path) in &t.domain {
                let value = match index {
                    None => self.xi.get(&(*edge, path.clone())),
                    Some(i) => self.zeta.get(&(i, *edge, path.clone())),
                };
                let Some(value) = value else {
                    return Err(LiftError::Table(format!(
                        "{} has no value at ({}, {})",
                        t.name,
                        p.source.edge_name(*edge),
                        f.display_path(path)
                    )));
                };
                if !image.insert(value.clone()) {
                    return Err(LiftError::Table(format!(
                        "{} is not injective: {} is hit twice",
                        t.name,
                        f.display_path(value)
                    )));
                }
            }
            let codomain: BTreeSet<Path> = t.codomain.iter().cloned().collect();
            if image != codomain {
                return Err(LiftError::Table(format!(
                    "{} at `{}` -> `{}` does not map onto its codomain",
                    t.name,
                    p.source.vertex_name(t.vertex),
                    f.vertex_name(t.target)
                )));
            }
            match index {
                None => xi_used += t.domain.len(),
                Some(_) => zeta_used += t.domain.len(),
            }
        }
        if xi_used != self.xi.len() || zeta_used != self.zeta.len() {
            return Err(LiftError::Table("tables have entries outside their domains".into()));
        }
        Ok(())
    }
}

/// Fills the blocks in canonical path order, source vertices in declaration
/// order.
pub fn build_partitions(form: &BfMatrixForm) -> Result<PartitionData, LiftError> {
    form.check()?;
    let (e, f) = (&form.source, &form.target);
    let l = form.level;
    let mut gamma = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    for (col, &w) in f.regular().iter().enumerate() {
        let paths = f.paths_into(w, l).expect("own vertex");
        let sizes: Vec<&BigInt> = e.vertices().map(|v| &form.regular_block[(v.0, col)]).collect();
        for (v, block) in split_blocks(&paths, &sizes, f.vertex_name(w))? {
            gamma.insert((VertexId(v), w), block);
        }
    }
    for (col, &u) in f.sinks().iter().enumerate() {
        for (i, s) in form.sink_blocks.iter().enumerate() {
            let paths = f.paths_into(u, i).expect("own vertex");
            let sizes: Vec<&BigInt> = e.vertices().map(|v| &s[(v.0, col)]).collect();
            for (v, block) in split_blocks(&paths, &sizes, f.vertex_name(u))? {
                sigma.insert((i, VertexId(v), u), block);
            }
        }
    }
    Ok(PartitionData {
        source: e.clone(),
        target: f.clone(),
        level: l,
        gamma,
        sigma,
    })
}

/// Consecutive runs of `paths` with the given sizes; empty runs omitted.
fn split_blocks(
    paths: &[Path],
    sizes: &[&BigInt],
    target: &str,
) -> Result<Vec<(usize, Vec<Path>)>, LiftError> {
    let total: BigInt = sizes.iter().copied().sum();
    if total != BigInt::from(paths.len()) {
        return Err(LiftError::BlockSizes {
            target: target.to_string(),
            requested: total,
            available: paths.len(),
        });
    }
    let mut out = Vec::new();
    let mut start = 0;
    for (v, size) in sizes.iter().enumerate() {
        let size = size.to_usize().expect("bounded by the path count");
        if size > 0 {
            out.push((v, paths[start..start + size].to_vec()));
        }
        start += size;
    }
    Ok(out)
}

/// Matches each domain with its codomain by rank.
pub fn build_bijections(p: &PartitionData) -> Result<BijectionData, LiftError> {
    let mut data = BijectionData::default();
    for (index, t) in tables(p) {
        if t.domain.len() != t.codomain.len() {
            return Err(LiftError::Cardinality {
                table: t.name,
                vertex: p.source.vertex_name(t.vertex).to_string(),
                target: p.target.vertex_name(t.target).to_string(),
                domain: t.domain.len(),
                codomain: t.codomain.len(),
            });
        }
        for ((edge, path), value) in t.domain.into_iter().zip(t.codomain) {
            match index {
                None => data.xi.insert((edge, path), value),
                Some(i) => data.zeta.insert((i, edge, path), value),
            };
        }
    }
    Ok(data)
}

/// The homomorphism determined by the partitions and matchings.
pub fn emit_images(p: &PartitionData, b: &BijectionData) -> (Vec<Element>, Vec<Element>) {
    let (e, f) = (&p.source, &p.target);
    let one = BigInt::from(1);
    let vertex_images = e
        .vertices()
        .map(|v| {
            let mut x = Element::zero(f.clone());
            for &w in f.regular() {
                for a in p.gamma(v, w) {
                    x.add_term(Monomial::projection(a.clone()), &one);
                }
            }
            for &u in f.sinks() {
                for i in 0..=p.level {
                    for b in p.sigma(i, v, u) {
                        x.add_term(Monomial::projection(b.clone()), &one);
                    }
                }
            }
            x
        })
        .collect();
    let edge_images = e
        .edge_ids()
        .map(|edge| {
            let r = e.range(edge);
            let mut x = Element::zero(f.clone());
            for &w in f.regular() {
                for a in p.gamma(r, w) {
                    let image = &b.xi[&(edge, a.clone())];
                    let m = Monomial::new(image.clone(), a.clone()).expect("same range");
                    x.add_term(m, &one);
                }
            }
            for &u in f.sinks() {
                for i in 0..=p.level {
                    for beta in p.sigma(i, r, u) {
                        let image = &b.zeta[&(i, edge, beta.clone())];
                        let m = Monomial::new(image.clone(), beta.clone()).expect("same range");
                        x.add_term(m, &one);
                    }
                }
            }
            x
        })
        .collect();
    (vertex_images, edge_images)
}

/// Wraps the emitted images as a constructed homomorphism carrying its
/// witness.
pub fn emit_hom(p: &PartitionData, b: &BijectionData) -> GradedHom {
    let (vertex_images, edge_images) = emit_images(p, b);
    let mut hom = GradedHom::new(p.source.clone(), p.target.clone(), vertex_images, edge_images)
        .expect("images are built over the target");
    hom.set_provenance(Provenance::Constructed);
    hom.set_witness(Some(TidyWitness {
        level: p.level,
        partitions: p.clone(),
        bijections: b.clone(),
    }));
    hom
}

/// Partitions, matchings and emission in one step.
pub fn lift(form: &BfMatrixForm) -> Result<GradedHom, LiftError> {
    let p = build_partitions(form)?;
    let b = build_bijections(&p)?;
    Ok(emit_hom(&p, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::maps::{extract_matrix_form, map_from_matrix, BfMapSpec, DEFAULT_CAP};

    #[test]
    fn worked_example_tables() {
        let (r2, fk) = (Arc::new(fixtures::r2()), Arc::new(fixtures::fk()));
        let spec = map_from_matrix(r2.clone(), fk.clone(), &IntMatrix::from_i64(&[&[1, 1]]), 0).unwrap();
        let form = extract_matrix_form(&spec, 0, DEFAULT_CAP).unwrap();
        let p = build_partitions(&form).unwrap();
        let (z, u, v) = (r2.vertex("z").unwrap(), fk.vertex("u").unwrap(), fk.vertex("v").unwrap());
        assert_eq!(p.gamma(z, u), &[Path::vertex(u)]);
        assert_eq!(p.gamma(z, v), &[Path::vertex(v)]);
        let b = build_bijections(&p).unwrap();
        let name = |x: &Path| fk.display_path(x);
        let x1 = r2.edge_by_name("x1").unwrap();
        let x2 = r2.edge_by_name("x2").unwrap();
        assert_eq!(name(&b.xi[&(x1, Path::vertex(u))]), "e1");
        assert_eq!(name(&b.xi[&(x2, Path::vertex(u))]), "f2");
        assert_eq!(name(&b.xi[&(x1, Path::vertex(v))]), "e2");
        assert_eq!(name(&b.xi[&(x2, Path::vertex(v))]), "f1");
        b.check(&p).unwrap();
    }

    #[test]
    fn identity_on_sink_graph() {
        let s1 = Arc::new(fixtures::s1());
        let form = extract_matrix_form(&BfMapSpec::identity(s1.clone()), 0, DEFAULT_CAP).unwrap();
        let p = build_partitions(&form).unwrap();
        p.check().unwrap();
        let (v, u) = (s1.vertex("v").unwrap(), s1.vertex("u").unwrap());
        assert_eq!(p.gamma(v, v), &[Path::vertex(v)]);
        assert_eq!(p.sigma(0, u, u), &[Path::vertex(u)]);
        let b = build_bijections(&p).unwrap();
        let a = s1.edge_by_name("a").unwrap();
        assert_eq!(s1.display_path(&b.zeta[&(0, a, Path::vertex(u))]), "a");
        assert_eq!(p.matrix_form(), form);
    }

    #[test]
    fn tampered_tables_are_rejected() {
        let r1 = Arc::new(fixtures::r1());
        let form = extract_matrix_form(&BfMapSpec::identity(r1.clone()), 1, DEFAULT_CAP).unwrap();
        let p = build_partitions(&form).unwrap();
        let mut b = build_bijections(&p).unwrap();
        b.check(&p).unwrap();
        b.xi.clear();
        assert!(b.check(&p).is_err());
    }
}
