//! Command-line frontend.
//!
//! [`run`] takes the full argument vector and returns the exit code and the
//! report text, so it can be driven from tests without a subprocess. Exit
//! codes: 0 success, 1 validation failure or violated relation, 2 usage or
//! parse error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::bf::order_unit_vector;
use crate::expr::parse_element;
use crate::fixtures;
use crate::graph::Graph;
use crate::hom::{tidy_decide, TidyOptions, TidyOutcome};
use crate::lift::lift;
use crate::maps::{extract_matrix_form, map_from_matrix, MapError, DEFAULT_CAP};
use crate::text::{self, HomFile, TextError};

#[derive(Parser, Debug)]
#[command(name = "leavitt", version, about = "Bowen-Franks modules and tidy lifts of Leavitt path algebra maps")]
struct Cli {
    /// Graph file to make available by its declared name (repeatable).
    #[arg(long = "graph", global = true, value_name = "FILE")]
    graphs: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the presentation data and the order unit at a level.
    Bf {
        graph: String,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Check that a map file defines a unital module map.
    CheckMap { mapfile: PathBuf },
    /// Extract the matrix form of a map.
    Extract {
        mapfile: PathBuf,
        #[arg(long, default_value_t = 0)]
        min_level: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Extract, build partitions and matchings, and print the lifted hom.
    Lift {
        mapfile: PathBuf,
        #[arg(long, default_value_t = 0)]
        min_level: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Also write the hom file here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check the defining relations of a hom file.
    Verify { homfile: PathBuf },
    /// Decide tidiness and print a witness or a certificate.
    Tidy {
        homfile: PathBuf,
        #[arg(long, default_value_t = 0)]
        min_level: usize,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Compose two hom files: the result is `outer ∘ inner`.
    Compose {
        outer: PathBuf,
        inner: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print the induced map on Bowen-Franks modules.
    Induced {
        homfile: PathBuf,
        #[arg(long)]
        check_against: Option<PathBuf>,
    },
    /// Turn a matrix file into a map file and validate it.
    Matmap {
        source: String,
        target: String,
        matrixfile: PathBuf,
    },
    /// Evaluate an element expression.
    Eval {
        graph: String,
        expression: String,
        #[arg(long, conflicts_with = "expand")]
        normal_form: bool,
        #[arg(long, value_name = "N")]
        expand: Option<usize>,
    },
}

/// Outcome of a command: exit code and text.
struct Report {
    code: i32,
    text: String,
}

impl Report {
    fn ok(text: impl Into<String>) -> Self {
        Report {
            code: 0,
            text: text.into(),
        }
    }

    fn failed(text: impl Into<String>) -> Self {
        Report {
            code: 1,
            text: text.into(),
        }
    }

    fn usage(text: impl Into<String>) -> Self {
        Report {
            code: 2,
            text: text.into(),
        }
    }
}

impl From<TextError> for Report {
    fn from(e: TextError) -> Self {
        match e {
            TextError::Parse(p) => Report::usage(format!("parse error: {p}")),
            other => Report::failed(format!("error: {other}")),
        }
    }
}

/// Graphs available to file headers: explicit registrations, files next to
/// the input named `<name>.graph`, and the built-in fixtures.
struct Graphs {
    registered: BTreeMap<String, Arc<Graph>>,
}

impl Graphs {
    fn load(paths: &[PathBuf]) -> Result<Graphs, Report> {
        let mut registered = BTreeMap::new();
        for p in paths {
            let g = read_graph_file(p)?;
            registered.insert(g.name().to_string(), Arc::new(g));
        }
        Ok(Graphs { registered })
    }

    fn lookup(&self, name: &str, near: Option<&FsPath>) -> Option<Arc<Graph>> {
        if let Some(g) = self.registered.get(name) {
            return Some(g.clone());
        }
        if let Some(dir) = near.and_then(FsPath::parent) {
            let candidate = dir.join(format!("{name}.graph"));
            if let Ok(g) = read_graph_file(&candidate) {
                return Some(Arc::new(g));
            }
        }
        fixtures::by_name(name).map(Arc::new)
    }

    /// A command-line graph argument: a file path or a graph name.
    fn argument(&self, arg: &str) -> Result<Arc<Graph>, Report> {
        let path = FsPath::new(arg);
        if path.is_file() {
            return read_graph_file(path).map(Arc::new);
        }
        self.lookup(arg, None)
            .ok_or_else(|| Report::usage(format!("unknown graph `{arg}` (not a file, fixture or --graph name)")))
    }
}

fn read(path: &FsPath) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| Report::usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph_file(path: &FsPath) -> Result<Graph, Report> {
    let s = read(path)?;
    text::parse_graph(&s).map_err(|e| Report::usage(format!("{}: {e}", path.display())))
}

fn located(path: &FsPath) -> impl Fn(TextError) -> Report + '_ {
    move |e| {
        let r = Report::from(e);
        Report {
            code: r.code,
            text: format!("{}: {}", path.display(), r.text),
        }
    }
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), Report> {
    if let Some(p) = path {
        fs::write(p, content).map_err(|e| Report::failed(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_map(graphs: &Graphs, path: &FsPath) -> Result<crate::maps::BfMapSpec, Report> {
    let s = read(path)?;
    let resolver = |n: &str| graphs.lookup(n, Some(path));
    text::parse_bfmap(&s, &resolver).map_err(located(path))
}

fn load_hom(graphs: &Graphs, path: &FsPath) -> Result<HomFile, Report> {
    let s = read(path)?;
    let resolver = |n: &str| graphs.lookup(n, Some(path));
    text::parse_hom(&s, &resolver).map_err(located(path))
}

fn map_failure(e: MapError) -> Report {
    Report::failed(format!("error: {e}"))
}

fn execute(cli: Cli) -> Result<Report, Report> {
    let graphs = Graphs::load(&cli.graphs)?;
    match cli.command {
        Command::Bf { graph, level } => {
            let g = graphs.argument(&graph)?;
            Ok(Report::ok(bf_report(&g, level)))
        }
        Command::CheckMap { mapfile } => {
            let spec = load_map(&graphs, &mapfile)?;
            Ok(match spec.validate() {
                Ok(()) => Report::ok("valid\n"),
                Err(reason) => Report::failed(format!("invalid: {reason}\n")),
            })
        }
        Command::Extract {
            mapfile,
            min_level,
            cap,
        } => {
            let spec = load_map(&graphs, &mapfile)?;
            let form = extract_matrix_form(&spec, min_level, cap).map_err(map_failure)?;
            Ok(Report::ok(text::write_form(&form)))
        }
        Command::Lift {
            mapfile,
            min_level,
            cap,
            out,
        } => {
            let spec = load_map(&graphs, &mapfile)?;
            let form = extract_matrix_form(&spec, min_level, cap).map_err(map_failure)?;
            let hom = lift(&form).map_err(|e| Report::failed(format!("error: {e}")))?;
            let body = text::write_hom(&HomFile::plain(hom));
            write_out(&out, &body)?;
            Ok(Report::ok(body))
        }
        Command::Verify { homfile } => {
            let file = load_hom(&graphs, &homfile)?;
            let h = &file.hom;
            Ok(match h.verify() {
                Ok(()) => Report::ok(format!(
                    "ok\ngraded {}\nstar {}\ndiagonal {}\n",
                    h.check_graded(),
                    h.check_star(),
                    h.check_diagonal()
                )),
                Err(v) => {
                    let body = text::write_hom(&HomFile {
                        hom: h.clone(),
                        violation: Some(v.clone()),
                        certificate: None,
                    });
                    Report::failed(format!("# {v}\n{body}"))
                }
            })
        }
        Command::Tidy {
            homfile,
            min_level,
            cap,
        } => {
            let file = load_hom(&graphs, &homfile)?;
            let mut h = file.hom;
            Ok(match tidy_decide(&h, TidyOptions { min_level, cap }) {
                TidyOutcome::Tidy(w) => {
                    let level = w.level;
                    h.set_witness(Some(w));
                    Report::ok(format!("# tidy at level {level}\n{}", text::write_hom(&HomFile::plain(h))))
                }
                TidyOutcome::NotTidy(reason) => {
                    h.set_witness(None);
                    let body = text::write_hom(&HomFile {
                        hom: h,
                        violation: None,
                        certificate: Some(reason.to_string()),
                    });
                    Report::failed(format!("# not tidy: {reason}\n{body}"))
                }
            })
        }
        Command::Compose { outer, inner, out } => {
            let g = load_hom(&graphs, &outer)?.hom;
            let h = load_hom(&graphs, &inner)?.hom;
            let c = g.compose(&h).map_err(|e| Report::failed(format!("error: {e}")))?;
            let body = text::write_hom(&HomFile::plain(c));
            write_out(&out, &body)?;
            Ok(Report::ok(body))
        }
        Command::Induced {
            homfile,
            check_against,
        } => {
            let h = load_hom(&graphs, &homfile)?.hom;
            let induced = h.induced_bf_map().map_err(|e| Report::failed(format!("error: {e}")))?;
            let body = text::write_bfmap(&induced);
            match check_against {
                None => Ok(Report::ok(body)),
                Some(p) => {
                    let expected = load_map(&graphs, &p)?;
                    let same = induced.same_map(&expected).map_err(map_failure)?;
                    Ok(if same {
                        Report::ok(format!("# induced map agrees with {}\n{body}", p.display()))
                    } else {
                        Report::failed(format!("# induced map differs from {}\n{body}", p.display()))
                    })
                }
            }
        }
        Command::Matmap {
            source,
            target,
            matrixfile,
        } => {
            let e = graphs.argument(&source)?;
            let f = graphs.argument(&target)?;
            let s = read(&matrixfile)?;
            let resolver = |n: &str| {
                if n == e.name() {
                    Some(e.clone())
                } else if n == f.name() {
                    Some(f.clone())
                } else {
                    None
                }
            };
            let m = text::parse_matmap(&s, &resolver)
                .map_err(|err| Report::from(TextError::from(err)))?;
            if *m.source != *e || *m.target != *f {
                return Err(Report::usage(format!(
                    "{} declares {} -> {}, expected {} -> {}",
                    matrixfile.display(),
                    m.source.name(),
                    m.target.name(),
                    e.name(),
                    f.name()
                )));
            }
            let spec = map_from_matrix(e, f, &m.matrix, m.shift).map_err(map_failure)?;
            let body = text::write_bfmap(&spec);
            Ok(match spec.validate() {
                Ok(()) => Report::ok(format!("# valid\n{body}")),
                Err(reason) => Report::failed(format!("# invalid: {reason}\n{body}")),
            })
        }
        Command::Eval {
            graph,
            expression,
            normal_form,
            expand,
        } => {
            let g = graphs.argument(&graph)?;
            let x = parse_element(g, &expression).map_err(|e| Report::usage(format!("parse error: {e}")))?;
            let x = if normal_form {
                x.normal_form_default()
            } else if let Some(n) = expand {
                x.uniform_expansion(n).map_err(|e| Report::failed(format!("error: {e}")))?
            } else {
                x
            };
            Ok(Report::ok(format!("{x}\n")))
        }
    }
}

fn bf_report(g: &Arc<Graph>, level: usize) -> String {
    let adj = g.adjacency();
    let names = |vs: &[crate::graph::VertexId]| {
        vs.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    out.push_str(&format!("# graph {}\n", g.name()));
    out.push_str(&format!("# regular: {}\n", names(g.regular())));
    out.push_str(&format!("# sinks: {}\n", names(g.sinks())));
    out.push_str(&format!("# line points: {}\n", names(&g.line_points())));
    for (label, m) in [("A (all vertices)", &adj.full), ("B", &adj.b), ("C", &adj.c)] {
        out.push_str(&format!("# {label}\n"));
        for line in m.to_string().lines() {
            out.push_str(&format!("#   {line}\n"));
        }
    }
    out.push_str("# relations\n");
    for &v in g.regular() {
        let targets: Vec<&str> = g.out_edges(v).iter().map(|&e| g.vertex_name(g.range(e))).collect();
        out.push_str(&format!("#   {} = σ({})\n", g.vertex_name(v), targets.join(" + ")));
    }
    out.push_str(&format!("# order unit at level {level}\n"));
    out.push_str(&text::write_bfvec(&order_unit_vector(g, level)));
    out
}

/// Runs the CLI on `argv` (program name first) and returns the exit code
/// and report.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let mut report = execute(cli).unwrap_or_else(|r| r);
    if !report.text.ends_with('\n') {
        report.text.push('\n');
    }
    (report.code, report.text)
}
