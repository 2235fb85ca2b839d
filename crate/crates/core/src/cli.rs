//! Command-line front end. Reports go to standard output, progress to
//! standard error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{classify_pair, diff_lattices, materialize, predicted_shape, PredictedShape};
use crate::congruence::{all_congruences_with, generated_congruence, CongruenceLattice, DEFAULT_LATTICE_GUARD};
use crate::diagram::{Diagram, Family};
use crate::error::Error;
use crate::monoid::{enumerate_with, EnumerateOptions, Monoid};
use crate::suite;

#[derive(Parser, Debug)]
#[command(name = "diacong", version, about = "Congruence lattices of diagram monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Monoid family: P, PB, B, PP, M, J, I, O or S.
    #[arg(short = 'f', long)]
    family: Family,
    /// Degree.
    #[arg(short = 'n', long = "degree")]
    degree: usize,
    /// Largest monoid to enumerate.
    #[arg(long)]
    max_elements: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate a monoid and print its size.
    Enumerate {
        #[command(flatten)]
        target: Target,
        /// Print every element.
        #[arg(long)]
        list: bool,
    },
    /// Print a congruence lattice.
    Lattice {
        #[command(flatten)]
        target: Target,
        /// Compute every congruence by closure.
        #[arg(long, conflicts_with = "predicted")]
        brute: bool,
        /// Build the predicted lattice.
        #[arg(long)]
        predicted: bool,
    },
    /// Compare the brute-force lattice with the predicted one.
    Diff {
        #[command(flatten)]
        target: Target,
    },
    /// Name the principal congruence generated by a pair.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long, num_args = 2, value_names = ["D1", "D2"], required = true)]
        pair: Vec<String>,
    },
    /// Run the invariant suite and print a scoreboard.
    Verify {
        /// Restrict to one family.
        #[arg(short = 'f', long)]
        family: Option<Family>,
        /// Restrict to one degree (requires a family).
        #[arg(short = 'n', long = "degree", requires = "family")]
        degree: Option<usize>,
    },
    /// Write a lattice as DOT or JSON.
    Export {
        #[command(flatten)]
        target: Target,
        #[arg(long, required_unless_present = "json")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Export the predicted lattice instead of the brute-force one.
        #[arg(long)]
        predicted: bool,
    },
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit status: 0 on success, 1 when a verification fails or
/// the computation errors, 2 on a usage error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut out = String::new();
    let status = match execute(cli.command, &mut out) {
        Ok(ok) => {
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            1
        }
    };
    let _ = std::io::stdout().write_all(out.as_bytes());
    status
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(Error::Construction(e.to_string()))
    }
}

fn load(t: &Target) -> std::result::Result<Monoid, Failure> {
    if t.degree == 0 {
        return Err(Failure::Usage("degree must be at least 1".into()));
    }
    let mut opts = EnumerateOptions::default();
    if let Some(max) = t.max_elements {
        opts.max_elements = max;
    }
    eprintln!("enumerating {}_{}", t.family, t.degree);
    Ok(enumerate_with(t.family, t.degree, &opts)?)
}

fn guard(t: &Target) -> usize {
    t.max_elements.unwrap_or(DEFAULT_LATTICE_GUARD)
}

fn execute(cmd: Command, out: &mut String) -> std::result::Result<bool, Failure> {
    match cmd {
        Command::Enumerate { target, list } => {
            let m = load(&target)?;
            let _ = writeln!(out, "{}_{}: {} elements", target.family, target.degree, m.len());
            if list {
                for d in m.elements() {
                    let _ = writeln!(out, "{d}");
                }
            }
            Ok(true)
        }
        Command::Lattice {
            target,
            brute,
            predicted,
        } => {
            if !brute && !predicted {
                return Err(Failure::Usage("pass --brute or --predicted".into()));
            }
            let lattice = if predicted {
                let shape = predicted_shape(target.family, target.degree).map_err(usage_if_range)?;
                match load(&target) {
                    Ok(m) => materialize(&m, &shape)?.0,
                    Err(Failure::Run(Error::SizeGuard { .. })) => {
                        eprintln!("too large to enumerate; structure only, unverified");
                        write_shape(out, &shape);
                        return Ok(true);
                    }
                    Err(e) => return Err(e),
                }
            } else {
                let m = load(&target)?;
                eprintln!("computing all congruences of {} elements", m.len());
                all_congruences_with(&m, guard(&target))?
            };
            write_lattice(out, &lattice);
            Ok(true)
        }
        Command::Diff { target } => {
            let shape = match predicted_shape(target.family, target.degree) {
                Ok(s) => Some(s),
                Err(Error::OutOfRange { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let m = load(&target)?;
            let brute = all_congruences_with(&m, guard(&target))?;
            let Some(shape) = shape else {
                let _ = writeln!(out, "no prediction; brute force: {} nodes", brute.len());
                return Ok(true);
            };
            let d = diff_lattices(&m, &brute, &shape)?;
            if d.pass() {
                let _ = writeln!(out, "PASS, {} = {} nodes", d.brute_nodes, d.predicted_nodes);
                return Ok(true);
            }
            let _ = writeln!(out, "FAIL, {} brute vs {} predicted nodes", d.brute_nodes, d.predicted_nodes);
            for &j in &d.missing {
                let _ = writeln!(out, "missing: brute node {j} ({} classes)", brute.congruences[j].num_classes());
            }
            for &i in &d.extra {
                let _ = writeln!(out, "extra: {}", shape.name(i));
            }
            for &(a, b) in &d.coincident {
                let _ = writeln!(out, "coincide: {} and {}", shape.name(a), shape.name(b));
            }
            for &(a, b) in &d.order {
                let rel = if shape.leq[a][b] { "<=" } else { "not <=" };
                let _ = writeln!(out, "order: predicted {} {rel} {}", shape.name(a), shape.name(b));
            }
            for &i in &d.star {
                let _ = writeln!(out, "star compatibility: {}", shape.name(i));
            }
            Ok(false)
        }
        Command::Classify { target, pair } => {
            let n = target.degree;
            let parse = |s: &str| Diagram::parse(s, Some(n)).map_err(|e| Failure::Usage(format!("{s}: {e}")));
            let (a, b) = (parse(&pair[0])?, parse(&pair[1])?);
            let label = classify_pair(target.family, n, &a, &b).map_err(usage_if_range)?;
            let m = load(&target)?;
            let c = generated_congruence(&m, &[(m.require(&a)?, m.require(&b)?)])?;
            let shape = predicted_shape(target.family, n)?;
            let (lattice, _) = materialize(&m, &shape)?;
            let agrees = lattice
                .position_of_label(&label)
                .is_some_and(|i| lattice.congruences[i] == c);
            let _ = writeln!(out, "ranks {} and {}", a.rank(), b.rank());
            let _ = writeln!(out, "{label}");
            let _ = writeln!(
                out,
                "closure: {} classes, {}",
                c.num_classes(),
                if agrees { "agrees" } else { "DISAGREES" }
            );
            Ok(agrees)
        }
        Command::Verify { family, degree } => {
            let cells: Vec<(Family, usize)> = match (family, degree) {
                (Some(f), Some(n)) => vec![(f, n)],
                (Some(f), None) => suite::default_cells().into_iter().filter(|c| c.0 == f).collect(),
                _ => suite::default_cells(),
            };
            let checks = suite::run(&cells, |c| eprintln!("checking {c}"))?;
            let passed = checks.iter().filter(|c| c.pass).count();
            for c in &checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "{verdict} {}", c.name);
                } else {
                    let _ = writeln!(out, "{verdict} {} ({})", c.name, c.detail);
                }
            }
            let _ = writeln!(out, "{passed}/{} checks passed", checks.len());
            Ok(passed == checks.len())
        }
        Command::Export {
            target,
            dot,
            json,
            predicted,
        } => {
            let m = load(&target)?;
            let lattice = if predicted {
                let shape = predicted_shape(target.family, target.degree).map_err(usage_if_range)?;
                materialize(&m, &shape)?.0
            } else {
                all_congruences_with(&m, guard(&target))?
            };
            if let Some(path) = dot {
                std::fs::write(&path, export_dot(&lattice))?;
                let _ = writeln!(out, "wrote {}", path.display());
            }
            if let Some(path) = json {
                std::fs::write(&path, export_json(&m, &lattice))?;
                let _ = writeln!(out, "wrote {}", path.display());
            }
            Ok(true)
        }
    }
}

fn usage_if_range(e: Error) -> Failure {
    match e {
        Error::OutOfRange { .. } | Error::NotMember(_) | Error::DegreeMismatch { .. } => Failure::Usage(e.to_string()),
        e => Failure::Run(e),
    }
}

fn write_lattice(out: &mut String, l: &CongruenceLattice) {
    if l.is_chain() {
        let names: Vec<String> = (0..l.len()).map(|i| l.name(i)).collect();
        let _ = writeln!(out, "{} nodes: {}", l.len(), names.join(" < "));
        return;
    }
    let _ = writeln!(out, "{} nodes", l.len());
    for (i, c) in l.congruences.iter().enumerate() {
        let _ = writeln!(out, "{i}: {} ({} classes)", l.name(i), c.num_classes());
    }
    for &(a, b) in &l.hasse {
        let _ = writeln!(out, "{} < {}", l.name(a), l.name(b));
    }
}

fn write_shape(out: &mut String, s: &PredictedShape) {
    let _ = writeln!(out, "{} nodes", s.nodes.len());
    for i in 0..s.nodes.len() {
        let _ = writeln!(out, "{i}: {}", s.name(i));
    }
    for &(a, b) in &s.hasse {
        let _ = writeln!(out, "{} < {}", s.name(a), s.name(b));
    }
}

/// The Hasse diagram as a DOT digraph, drawn bottom to top.
pub fn export_dot(l: &CongruenceLattice) -> String {
    let mut s = String::from("digraph congruences {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, c) in l.congruences.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{} ({} classes)\"];", l.name(i), c.num_classes());
    }
    for &(a, b) in &l.hasse {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct JsonNode {
    label: String,
    num_classes: usize,
    class_sizes: Vec<usize>,
}

#[derive(Serialize)]
struct JsonLattice {
    family: String,
    degree: usize,
    nodes: Vec<JsonNode>,
    hasse: Vec<[usize; 2]>,
}

/// The lattice as pretty-printed JSON.
pub fn export_json(m: &Monoid, l: &CongruenceLattice) -> String {
    let doc = JsonLattice {
        family: m.family().to_string(),
        degree: m.degree(),
        nodes: l
            .congruences
            .iter()
            .enumerate()
            .map(|(i, c)| JsonNode {
                label: l.name(i),
                num_classes: c.num_classes(),
                class_sizes: c.class_sizes(),
            })
            .collect(),
        hasse: l.hasse.iter().map(|&(a, b)| [a, b]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}
