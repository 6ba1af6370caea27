//! Line-based text formats.
//!
//! Every format ignores blank lines and `#` comments and starts with a
//! header line naming its kind:
//!
//! ```text
//! graph <name>                       vertex <v> / edge <e> <s> <r>
//! bfvec <graph> level <n>            coord <vertex> <index> <int>
//! bfmap <E> -> <F> level <N>         image <v>, then coord lines
//! matmap <E> -> <F> shift <k>        one row of integers per vertex of E
//! form <E> -> <F> level <L>          R, rows; S <i>, rows (only if F has sinks)
//! hom <E> -> <F>                     vimage/eimage/gimage <x> := <expr>
//! ```
//!
//! A hom file may carry a `witness level <L>` ... `end` section and a
//! `violation` or `certificate` line. Graphs named in headers are looked up
//! through a caller-supplied resolver.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bf::LevelVector;
use crate::expr::{format_element, parse_element, parse_path, ParseError};
use crate::graph::{is_valid_name, Graph, Path, VertexId};
use crate::hom::{GradedHom, HomError, Provenance, Relation, TidyWitness, Violation};
use crate::lift::{BijectionData, PartitionData};
use crate::lpa::Element;
use crate::maps::{BfMapSpec, BfMatrixForm, MapError};
use crate::matrix::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Looks graphs up by the names used in file headers.
pub type Resolver<'a> = &'a dyn Fn(&str) -> Option<Arc<Graph>>;

/// A non-comment line split into tokens with 1-based columns.
struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn error(&self, token: usize, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(token).map_or(self.text.len() + 1, |t| t.0);
        ParseError::new(self.number, column, message)
    }

    fn keyword(&self) -> &'a str {
        self.tokens[0].1
    }

    fn token(&self, i: usize, what: &str) -> Result<&'a str, ParseError> {
        self.tokens
            .get(i)
            .map(|t| t.1)
            .ok_or_else(|| self.error(i, format!("missing {what}")))
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        if self.tokens.len() > n {
            Err(self.error(n, format!("unexpected `{}`", self.tokens[n].1)))
        } else if self.tokens.len() < n {
            Err(self.error(self.tokens.len(), "line is too short"))
        } else {
            Ok(())
        }
    }

    fn literal(&self, i: usize, word: &str) -> Result<(), ParseError> {
        match self.tokens.get(i) {
            Some(&(_, t)) if t == word => Ok(()),
            Some(&(_, t)) => Err(self.error(i, format!("expected `{word}`, found `{t}`"))),
            None => Err(self.error(i, format!("expected `{word}`"))),
        }
    }

    fn integer<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        let t = self.token(i, what)?;
        t.parse()
            .map_err(|_| self.error(i, format!("expected {what}, found `{t}`")))
    }

    /// Text after the token `:=`, with its starting column.
    fn rhs_after(&self, i: usize) -> Result<(usize, &'a str), ParseError> {
        self.literal(i, ":=")?;
        let start = self.tokens[i].0 - 1 + 2;
        Ok((start, &self.text[start..]))
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (true, Some(s)) => {
                        tokens.push((s + 1, &body[s..pos]));
                        start = None;
                    }
                    (false, None) => start = Some(pos),
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line {
                number: i + 1,
                text: body,
                tokens,
            })
        })
        .collect()
}

fn header<'a>(ls: &'a [Line<'a>], kind: &str) -> Result<&'a Line<'a>, ParseError> {
    match ls.first() {
        None => Err(ParseError::new(1, 1, format!("empty input, expected `{kind}` header"))),
        Some(l) if l.keyword() == kind => Ok(l),
        Some(l) => Err(l.error(0, format!("expected `{kind}` header, found `{}`", l.keyword()))),
    }
}

fn resolve(line: &Line, i: usize, resolver: Resolver) -> Result<Arc<Graph>, ParseError> {
    let name = line.token(i, "graph name")?;
    resolver(name).ok_or_else(|| line.error(i, format!("unknown graph `{name}`")))
}

fn vertex_of(line: &Line, i: usize, g: &Graph) -> Result<VertexId, ParseError> {
    let name = line.token(i, "vertex name")?;
    g.vertex(name)
        .map_err(|_| line.error(i, format!("`{name}` is not a vertex of `{}`", g.name())))
}

/// Parses a graph file.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let ls = lines(text);
    let head = header(&ls, "graph")?;
    head.expect_len(2)?;
    let name = head.tokens[1].1;
    let mut vertices: Vec<&str> = Vec::new();
    let mut edges: Vec<(&str, &str, &str)> = Vec::new();
    let mut where_: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for l in &ls[1..] {
        match l.keyword() {
            "vertex" => {
                l.expect_len(2)?;
                vertices.push(l.tokens[1].1);
                where_.entry(l.tokens[1].1).or_insert((l.number, l.tokens[1].0));
            }
            "edge" => {
                l.expect_len(4)?;
                edges.push((l.tokens[1].1, l.tokens[2].1, l.tokens[3].1));
                where_.entry(l.tokens[1].1).or_insert((l.number, l.tokens[1].0));
            }
            other => return Err(l.error(0, format!("expected `vertex` or `edge`, found `{other}`"))),
        }
    }
    Graph::new(name, &vertices, &edges).map_err(|err| {
        let (line, column) = match &err {
            crate::graph::GraphError::DuplicateName(n)
            | crate::graph::GraphError::InvalidName(n) => {
                let later = ls[1..]
                    .iter()
                    .filter(|l| l.tokens.get(1).is_some_and(|t| t.1 == n.as_str()))
                    .nth(1)
                    .or_else(|| {
                        ls.iter().find(|l| l.tokens.iter().skip(1).any(|t| t.1 == n.as_str()))
                    });
                later.map_or((head.number, 1), |l| (l.number, l.tokens[1].0))
            }
            crate::graph::GraphError::DanglingEndpoint { edge, .. } => {
                where_.get(edge.as_str()).copied().unwrap_or((head.number, 1))
            }
            _ => (head.number, 1),
        };
        ParseError::new(line, column, err.to_string())
    })
}

/// Parses a vector file.
pub fn parse_bfvec(text: &str, resolver: Resolver) -> Result<LevelVector, ParseError> {
    let ls = lines(text);
    let head = header(&ls, "bfvec")?;
    head.expect_len(4)?;
    let g = resolve(head, 1, resolver)?;
    head.literal(2, "level")?;
    let level: usize = head.integer(3, "a level")?;
    let x = read_coords(&ls[1..], &g, level)?;
    if let Some(l) = ls[1..].iter().find(|l| l.keyword() != "coord") {
        return Err(l.error(0, format!("expected `coord`, found `{}`", l.keyword())));
    }
    Ok(x)
}

fn read_coords(ls: &[Line], g: &Arc<Graph>, level: usize) -> Result<LevelVector, ParseError> {
    let mut x = LevelVector::zero(g.clone(), level);
    let mut seen = BTreeMap::new();
    for l in ls.iter().take_while(|l| l.keyword() == "coord") {
        l.expect_len(4)?;
        let v = vertex_of(l, 1, g)?;
        let index: i64 = l.integer(2, "an index")?;
        let value: BigInt = l.integer(3, "an integer")?;
        if seen.insert((v, index), l.number).is_some() {
            return Err(l.error(1, "coordinate given twice"));
        }
        x.set(v, index, value).map_err(|err| l.error(2, err.to_string()))?;
    }
    Ok(x)
}

fn write_coords(out: &mut String, x: &LevelVector) {
    let g = x.graph();
    for (v, index, c) in x.nonzero_coords() {
        out.push_str(&format!("coord {} {index} {c}\n", g.vertex_name(v)));
    }
}

pub fn write_bfvec(x: &LevelVector) -> String {
    let mut out = format!("bfvec {} level {}\n", x.graph().name(), x.level());
    write_coords(&mut out, x);
    out
}

/// Header `<kind> <E> -> <F> <word> <n>`.
fn map_header(
    head: &Line,
    word: &str,
    resolver: Resolver,
) -> Result<(Arc<Graph>, Arc<Graph>, usize), ParseError> {
    head.expect_len(6)?;
    let e = resolve(head, 1, resolver)?;
    head.literal(2, "->")?;
    let f = resolve(head, 3, resolver)?;
    head.literal(4, word)?;
    let n = head.integer(5, "a nonnegative integer")?;
    Ok((e, f, n))
}

/// Parses a map file. Omitted images are zero.
pub fn parse_bfmap(text: &str, resolver: Resolver) -> Result<BfMapSpec, TextError> {
    let ls = lines(text);
    let head = header(&ls, "bfmap")?;
    let (e, f, level) = map_header(head, "level", resolver)?;
    let mut images: Vec<Option<LevelVector>> = vec![None; e.vertex_count()];
    let mut i = 1;
    while i < ls.len() {
        let l = &ls[i];
        if l.keyword() != "image" {
            return Err(l.error(0, format!("expected `image`, found `{}`", l.keyword())).into());
        }
        l.expect_len(2)?;
        let v = vertex_of(l, 1, &e)?;
        if images[v.0].is_some() {
            return Err(l.error(1, "image given twice").into());
        }
        let block: Vec<&Line> = ls[i + 1..].iter().take_while(|l| l.keyword() == "coord").collect();
        images[v.0] = Some(read_coords(&ls[i + 1..i + 1 + block.len()], &f, level)?);
        i += 1 + block.len();
    }
    let images = images
        .into_iter()
        .map(|x| x.unwrap_or_else(|| LevelVector::zero(f.clone(), level)))
        .collect();
    Ok(BfMapSpec::new(e, f, images)?)
}

pub fn write_bfmap(spec: &BfMapSpec) -> String {
    let mut out = format!(
        "bfmap {} -> {} level {}\n",
        spec.source().name(),
        spec.target().name(),
        spec.level()
    );
    for v in spec.source().vertices() {
        out.push_str(&format!("image {}\n", spec.source().vertex_name(v)));
        write_coords(&mut out, spec.image(v));
    }
    out
}

fn read_rows(ls: &[Line], rows: usize, cols: usize) -> Result<IntMatrix, ParseError> {
    let mut data = Vec::with_capacity(rows);
    for l in ls.iter().take(rows) {
        if l.tokens.len() != cols {
            return Err(l.error(
                cols.min(l.tokens.len()),
                format!("expected {cols} entries, found {}", l.tokens.len()),
            ));
        }
        let row = (0..cols)
            .map(|j| l.integer::<BigInt>(j, "an integer"))
            .collect::<Result<Vec<_>, _>>()?;
        data.push(row);
    }
    if data.len() < rows {
        let at = ls.last().map_or(1, |l| l.number + 1);
        return Err(ParseError::new(at, 1, format!("expected {rows} rows, found {}", data.len())));
    }
    Ok(IntMatrix::from_rows(data, cols).expect("row lengths checked"))
}

fn write_rows(out: &mut String, m: &IntMatrix) {
    if m.ncols() == 0 {
        return;
    }
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// A matrix with its graphs and shift, as read from a matrix file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatMap {
    pub source: Arc<Graph>,
    pub target: Arc<Graph>,
    pub shift: usize,
    pub matrix: IntMatrix,
}

pub fn parse_matmap(text: &str, resolver: Resolver) -> Result<MatMap, ParseError> {
    let ls = lines(text);
    let head = header(&ls, "matmap")?;
    let (e, f, shift) = map_header(head, "shift", resolver)?;
    let rows = e.vertex_count();
    let matrix = read_rows(&ls[1..], rows, f.vertex_count())?;
    if let Some(l) = ls.get(1 + rows) {
        return Err(l.error(0, "unexpected extra row"));
    }
    Ok(MatMap {
        source: e,
        target: f,
        shift,
        matrix,
    })
}

pub fn write_matmap(m: &MatMap) -> String {
    let mut out = format!(
        "matmap {} -> {} shift {}\n",
        m.source.name(),
        m.target.name(),
        m.shift
    );
    write_rows(&mut out, &m.matrix);
    out
}

pub fn write_form(form: &BfMatrixForm) -> String {
    let mut out = format!(
        "form {} -> {} level {}\nR\n",
        form.source.name(),
        form.target.name(),
        form.level
    );
    write_rows(&mut out, &form.regular_block);
    if !form.target.sinks().is_empty() {
        for (i, s) in form.sink_blocks.iter().enumerate() {
            out.push_str(&format!("S {i}\n"));
            write_rows(&mut out, s);
        }
    }
    out
}

pub fn parse_form(text: &str, resolver: Resolver) -> Result<BfMatrixForm, ParseError> {
    let ls = lines(text);
    let head = header(&ls, "form")?;
    let (e, f, level) = map_header(head, "level", resolver)?;
    let n = e.vertex_count();
    let (n_reg, n_sink) = (f.regular().len(), f.sinks().len());
    let mut at = 1;
    let r_line = ls.get(at).ok_or_else(|| ParseError::new(head.number + 1, 1, "missing `R`"))?;
    r_line.literal(0, "R")?;
    r_line.expect_len(1)?;
    at += 1;
    let r_rows = if n_reg == 0 { 0 } else { n };
    let regular_block = if n_reg == 0 {
        IntMatrix::zeros(n, 0)
    } else {
        read_rows(&ls[at..], r_rows, n_reg)?
    };
    at += r_rows;
    let mut sink_blocks = Vec::new();
    if n_sink == 0 {
        sink_blocks = vec![IntMatrix::zeros(n, 0); level + 1];
    } else {
        for i in 0..=level {
            let l = ls
                .get(at)
                .ok_or_else(|| ParseError::new(ls.last().unwrap().number + 1, 1, format!("missing `S {i}`")))?;
            l.literal(0, "S")?;
            l.expect_len(2)?;
            let k: usize = l.integer(1, "a block index")?;
            if k != i {
                return Err(l.error(1, format!("expected block {i}, found {k}")));
            }
            at += 1;
            sink_blocks.push(read_rows(&ls[at..], n, n_sink)?);
            at += n;
        }
    }
    if let Some(l) = ls.get(at) {
        return Err(l.error(0, format!("unexpected `{}`", l.keyword())));
    }
    Ok(BfMatrixForm {
        source: e,
        target: f,
        level,
        sink_blocks,
        regular_block,
    })
}

/// A hom file: the homomorphism plus any recorded failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFile {
    pub hom: GradedHom,
    pub violation: Option<Violation>,
    /// Free-text reason a tidiness check failed.
    pub certificate: Option<String>,
}

impl HomFile {
    pub fn plain(hom: GradedHom) -> Self {
        HomFile {
            hom,
            violation: None,
            certificate: None,
        }
    }
}

fn expr_at(line: &Line, i: usize, g: &Arc<Graph>) -> Result<Element, ParseError> {
    let (start, rhs) = line.rhs_after(i)?;
    let col = line.text[..start].chars().count();
    parse_element(g.clone(), rhs).map_err(|e| e.shifted(line.number, col))
}

fn path_at(line: &Line, i: usize, g: &Arc<Graph>) -> Result<Path, ParseError> {
    let t = line.token(i, "a path")?;
    parse_path(g, t).map_err(|e| e.shifted(line.number, line.tokens[i].0 - 1))
}

pub fn parse_hom(text: &str, resolver: Resolver) -> Result<HomFile, TextError> {
    let ls = lines(text);
    let head = header(&ls, "hom")?;
    head.expect_len(4)?;
    let e = resolve(head, 1, resolver)?;
    head.literal(2, "->")?;
    let f = resolve(head, 3, resolver)?;
    let mut vs: Vec<Option<Element>> = vec![None; e.vertex_count()];
    let mut es: Vec<Option<Element>> = vec![None; e.edge_count()];
    let mut gs: Vec<Option<Element>> = vec![None; e.edge_count()];
    let mut provenance = Provenance::UserSupplied;
    let mut witness = None;
    let mut violation = None;
    let mut certificate = None;
    let mut i = 1;
    while i < ls.len() {
        let l = &ls[i];
        match l.keyword() {
            "provenance" => {
                l.expect_len(2)?;
                provenance = Provenance::parse(l.tokens[1].1)
                    .ok_or_else(|| l.error(1, "expected `constructed`, `user` or `composite`"))?;
            }
            "vimage" => {
                let v = vertex_of(l, 1, &e)?;
                if vs[v.0].replace(expr_at(l, 2, &f)?).is_some() {
                    return Err(l.error(1, "image given twice").into());
                }
            }
            kind @ ("eimage" | "gimage") => {
                let name = l.token(1, "edge name")?;
                let x = e
                    .edge_by_name(name)
                    .map_err(|_| l.error(1, format!("`{name}` is not an edge of `{}`", e.name())))?;
                let slot = if kind == "eimage" { &mut es } else { &mut gs };
                if slot[x.0].replace(expr_at(l, 2, &f)?).is_some() {
                    return Err(l.error(1, "image given twice").into());
                }
            }
            "witness" => {
                l.expect_len(3)?;
                l.literal(1, "level")?;
                let level: usize = l.integer(2, "a level")?;
                let end = ls[i..]
                    .iter()
                    .position(|l| l.keyword() == "end")
                    .map(|p| p + i)
                    .ok_or_else(|| l.error(0, "witness section has no `end`"))?;
                witness = Some(parse_witness(&ls[i + 1..end], &e, &f, level)?);
                i = end;
            }
            "violation" => {
                let tag = l.token(1, "relation")?;
                let relation = Relation::parse(tag).ok_or_else(|| l.error(1, format!("unknown relation `{tag}`")))?;
                let sep = l
                    .tokens
                    .iter()
                    .position(|t| t.1 == ":=")
                    .ok_or_else(|| l.error(l.tokens.len(), "expected `:=`"))?;
                let locus = l.tokens[2..sep].iter().map(|t| t.1).collect::<Vec<_>>().join(" ");
                let residual = expr_at(l, sep, &f)?;
                violation = Some(Violation {
                    relation,
                    locus,
                    residual,
                });
            }
            "certificate" => {
                let start = l.tokens[0].0 - 1 + "certificate".len();
                certificate = Some(l.text[start..].trim().to_string());
            }
            other => return Err(l.error(0, format!("unexpected `{other}`")).into()),
        }
        i += 1;
    }
    let missing = |what: &str, name: &str| {
        ParseError::new(head.number, 1, format!("no image given for {what} `{name}`"))
    };
    let vertex_images = vs
        .into_iter()
        .enumerate()
        .map(|(k, x)| x.ok_or_else(|| missing("vertex", e.vertex_name(VertexId(k)))))
        .collect::<Result<Vec<_>, _>>()?;
    let edge_images = es
        .into_iter()
        .enumerate()
        .map(|(k, x)| x.ok_or_else(|| missing("edge", e.edge_name(crate::graph::EdgeId(k)))))
        .collect::<Result<Vec<_>, _>>()?;
    let ghost_images = gs
        .into_iter()
        .zip(&edge_images)
        .map(|(g, x)| g.unwrap_or_else(|| x.star()))
        .collect();
    let mut hom = GradedHom::with_ghosts(e, f, vertex_images, edge_images, ghost_images)?;
    hom.set_provenance(provenance);
    hom.set_witness(witness);
    Ok(HomFile {
        hom,
        violation,
        certificate,
    })
}

fn parse_witness(
    ls: &[Line],
    e: &Arc<Graph>,
    f: &Arc<Graph>,
    level: usize,
) -> Result<TidyWitness, ParseError> {
    let mut gamma: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    let mut sigma: BTreeMap<(usize, VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    let mut b = BijectionData::default();
    let edge_of = |l: &Line, i: usize| -> Result<crate::graph::EdgeId, ParseError> {
        let name = l.token(i, "edge name")?;
        e.edge_by_name(name)
            .map_err(|_| l.error(i, format!("`{name}` is not an edge of `{}`", e.name())))
    };
    let paths_after = |l: &Line, from: usize| -> Result<Vec<Path>, ParseError> {
        l.literal(from, ":")?;
        (from + 1..l.tokens.len()).map(|k| path_at(l, k, f)).collect()
    };
    for l in ls {
        match l.keyword() {
            "gamma" => {
                let v = vertex_of(l, 1, e)?;
                let w = vertex_of(l, 2, f)?;
                let mut ps = paths_after(l, 3)?;
                ps.sort();
                gamma.insert((v, w), ps);
            }
            "sigma" => {
                let i: usize = l.integer(1, "a length")?;
                let v = vertex_of(l, 2, e)?;
                let u = vertex_of(l, 3, f)?;
                let mut ps = paths_after(l, 4)?;
                ps.sort();
                sigma.insert((i, v, u), ps);
            }
            "xi" => {
                l.expect_len(5)?;
                let x = edge_of(l, 1)?;
                let a = path_at(l, 2, f)?;
                l.literal(3, "->")?;
                b.xi.insert((x, a), path_at(l, 4, f)?);
            }
            "zeta" => {
                l.expect_len(6)?;
                let i: usize = l.integer(1, "a length")?;
                let x = edge_of(l, 2)?;
                let beta = path_at(l, 3, f)?;
                l.literal(4, "->")?;
                b.zeta.insert((i, x, beta), path_at(l, 5, f)?);
            }
            other => return Err(l.error(0, format!("unexpected `{other}` in witness"))),
        }
    }
    gamma.retain(|_, ps| !ps.is_empty());
    sigma.retain(|_, ps| !ps.is_empty());
    Ok(TidyWitness {
        level,
        partitions: PartitionData {
            source: e.clone(),
            target: f.clone(),
            level,
            gamma,
            sigma,
        },
        bijections: b,
    })
}

fn write_witness(out: &mut String, w: &TidyWitness) {
    let p = &w.partitions;
    let (e, f) = (&p.source, &p.target);
    let names = |ps: &[Path]| ps.iter().map(|x| f.display_path(x)).collect::<Vec<_>>().join(" ");
    out.push_str(&format!("witness level {}\n", w.level));
    for ((v, x), ps) in &p.gamma {
        out.push_str(&format!("gamma {} {} : {}\n", e.vertex_name(*v), f.vertex_name(*x), names(ps)));
    }
    for ((i, v, u), ps) in &p.sigma {
        out.push_str(&format!(
            "sigma {i} {} {} : {}\n",
            e.vertex_name(*v),
            f.vertex_name(*u),
            names(ps)
        ));
    }
    for ((x, a), img) in &w.bijections.xi {
        out.push_str(&format!(
            "xi {} {} -> {}\n",
            e.edge_name(*x),
            f.display_path(a),
            f.display_path(img)
        ));
    }
    for ((i, x, beta), img) in &w.bijections.zeta {
        out.push_str(&format!(
            "zeta {i} {} {} -> {}\n",
            e.edge_name(*x),
            f.display_path(beta),
            f.display_path(img)
        ));
    }
    out.push_str("end\n");
}

pub fn write_hom(file: &HomFile) -> String {
    let h = &file.hom;
    let (e, f) = (h.source(), h.target());
    let mut out = format!("hom {} -> {}\n", e.name(), f.name());
    out.push_str(&format!("provenance {}\n", h.provenance().as_str()));
    for v in e.vertices() {
        out.push_str(&format!(
            "vimage {} := {}\n",
            e.vertex_name(v),
            format_element(h.vertex_image(v))
        ));
    }
    for x in e.edge_ids() {
        out.push_str(&format!(
            "eimage {} := {}\n",
            e.edge_name(x),
            format_element(h.edge_image(x))
        ));
    }
    for x in e.edge_ids() {
        if h.edge_image(x).star() != *h.ghost_image(x) {
            out.push_str(&format!(
                "gimage {} := {}\n",
                e.edge_name(x),
                format_element(h.ghost_image(x))
            ));
        }
    }
    if let Some(w) = h.witness() {
        write_witness(&mut out, w);
    }
    if let Some(v) = &file.violation {
        out.push_str(&format!(
            "violation {} {} := {}\n",
            v.relation,
            v.locus,
            format_element(&v.residual)
        ));
    }
    if let Some(c) = &file.certificate {
        out.push_str(&format!("certificate {c}\n"));
    }
    out
}

/// Whether `name` may be used for a vertex, edge or graph.
pub fn valid_name(name: &str) -> bool {
    is_valid_name(name)
}
