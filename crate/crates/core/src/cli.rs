//! Command line front end. Every subcommand writes deterministic output in
//! `text`, `json` or `csv` format.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coeff_quiver::{
    arrange, cell_dims, enumerate_fixed_points, euler_characteristic, grading, poincare_polynomial_with,
    to_dot, to_svg, CellDimMethod, FixedPoint,
};
use crate::cyclic_rep::{hom_dim, DimVector, NilpRep};
use crate::dellac::{enumerate, enumerate_c_degenerate, AffineDellacConfig, CorankTuple};
use crate::error::{Error, Result};
use crate::flag::{
    build_custom, build_degenerate_flag_rep, build_partial_degeneration, count_grand_motzkin,
    grand_motzkin, irreducible_components, FlagApprox,
};
use crate::oracle::{hom_dim_matrix, verify_suite, VerifyLevel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "cyclequiv", version, about = "Quiver Grassmannians for the cyclic quiver")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for cell dimensions (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// Which Grassmannian to work on.
#[derive(Args, Debug, Clone)]
struct Source {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    omega: usize,
    /// Corank tuple such as `1,2,2`.
    #[arg(long)]
    corank: Option<CorankTuple>,
    /// Representation as JSON `{"n", "summands": [{"end","len","mult"}]}`.
    #[arg(long)]
    rep_file: Option<PathBuf>,
    /// Dimension vector such as `2,2` (with --rep-file).
    #[arg(long)]
    e: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hom dimension between two representations.
    Homdim {
        #[arg(long)]
        rep_file: PathBuf,
        /// Second argument (defaults to the first).
        #[arg(long)]
        target: Option<PathBuf>,
        /// Also compute the dimension by linear algebra.
        #[arg(long)]
        matrix: bool,
    },
    /// Torus fixed points as suffix tuples.
    FixedPoints(Source),
    /// Fixed points with their cell dimensions.
    Cells {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "elim")]
        method: Method,
    },
    /// Poincaré polynomial and Euler characteristic.
    Poincare {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "elim")]
        method: Method,
    },
    /// Euler characteristic.
    Euler(Source),
    /// Irreducible components of the flag approximation with their Motzkin paths.
    Components {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        omega: usize,
    },
    /// Number of grand Motzkin paths of length n.
    Motzkin {
        #[arg(long)]
        n: usize,
    },
    /// Affine Dellac configurations.
    Dellac {
        #[command(subcommand)]
        action: DellacAction,
    },
    /// Coefficient quiver as DOT or SVG.
    Draw {
        #[command(flatten)]
        source: Source,
        /// Suffix tuple of a fixed point to highlight, e.g. `2,0,1,1`.
        #[arg(long)]
        fixed_point: Option<String>,
        #[arg(long, value_enum, default_value = "dot")]
        kind: DrawKind,
        /// Label points with their weights.
        #[arg(long)]
        weights: bool,
    },
    /// Cross-check against the brute-force oracles.
    Verify {
        #[arg(long, value_enum, default_value = "smoke")]
        level: Level,
    },
}

#[derive(Subcommand, Debug)]
enum DellacAction {
    /// Check a configuration file.
    Validate { file: PathBuf },
    /// List all (c-degenerate) configurations.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        omega: usize,
        #[arg(long)]
        corank: Option<CorankTuple>,
    },
    /// Fixed point of the degenerate flag labelled by a configuration.
    ToCell { file: PathBuf },
    /// Configuration of a fixed point given by its suffix tuple.
    FromCell {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        omega: usize,
        #[arg(long)]
        suffix: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Elim,
    Tangent,
}

impl From<Method> for CellDimMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Elim => CellDimMethod::Elim,
            Method::Tangent => CellDimMethod::Tangent,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DrawKind {
    Dot,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Smoke,
    Full,
}

/// Failure of a command, with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OracleSizeLimit(_) => 3,
            Error::InvalidParameter(_) | Error::VertexCountMismatch { .. } | Error::VertexOutOfRange { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("bad list entry {t:?}"))))
        .collect()
}

fn read_rep(path: &PathBuf) -> Result<NilpRep> {
    NilpRep::from_json(&std::fs::read_to_string(path)?)
}

fn load(source: &Source) -> std::result::Result<FlagApprox, Failure> {
    match (&source.rep_file, source.n) {
        (Some(path), _) => {
            let rep = read_rep(path)?;
            let e = match &source.e {
                Some(s) => DimVector(parse_list(s)?),
                None => return Err(usage("--rep-file needs --e")),
            };
            Ok(build_custom(rep, e)?)
        }
        (None, Some(n)) => {
            if n == 0 || source.omega == 0 {
                return Err(usage("--n and --omega must be positive"));
            }
            Ok(match &source.corank {
                Some(c) => build_partial_degeneration(n, source.omega, c)?,
                None => build_degenerate_flag_rep(n, source.omega),
            })
        }
        (None, None) => Err(usage("give --n (with --omega, --corank) or --rep-file with --e")),
    }
}

fn csv_line(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn suffix_text(fp: &FixedPoint) -> String {
    csv_line(&fp.suffix)
}

fn execute(cli: &Cli) -> std::result::Result<(String, i32), Failure> {
    let fmt = cli.format;
    let mut out = String::new();
    let mut code = 0;
    match &cli.command {
        Command::Homdim {
            rep_file,
            target,
            matrix,
        } => {
            let a = read_rep(rep_file)?;
            let b = match target {
                Some(p) => read_rep(p)?,
                None => a.clone(),
            };
            let words = hom_dim(&a, &b);
            let by_matrix = if *matrix { Some(hom_dim_matrix(&a, &b)?) } else { None };
            match fmt {
                Format::Json => {
                    out = json!({ "hom_dim": words, "matrix": by_matrix }).to_string();
                    out.push('\n');
                }
                Format::Csv => {
                    writeln!(out, "hom_dim,matrix").unwrap();
                    writeln!(out, "{},{}", words, by_matrix.map_or(String::new(), |m| m.to_string())).unwrap();
                }
                Format::Text => {
                    writeln!(out, "[{a}, {b}] = {words}").unwrap();
                    if let Some(m) = by_matrix {
                        writeln!(out, "matrix oracle: {m}").unwrap();
                    }
                }
            }
            if by_matrix.is_some_and(|m| m != words) {
                code = 1;
            }
        }
        Command::FixedPoints(source) => {
            let flag = load(source)?;
            let cq = arrange(&flag.rep);
            let points: Vec<FixedPoint> = enumerate_fixed_points(&cq, &flag.e).collect();
            match fmt {
                Format::Json => {
                    let list: Vec<&Vec<usize>> = points.iter().map(|p| &p.suffix).collect();
                    out = json!({ "rep": flag.rep.to_file(), "e": flag.e, "fixed_points": list }).to_string();
                    out.push('\n');
                }
                Format::Csv => {
                    for p in &points {
                        writeln!(out, "{}", suffix_text(p)).unwrap();
                    }
                }
                Format::Text => {
                    writeln!(out, "M = {}, e = {}", flag.rep, flag.e).unwrap();
                    for p in &points {
                        writeln!(out, "({})", suffix_text(p)).unwrap();
                    }
                    writeln!(out, "{} fixed points", points.len()).unwrap();
                }
            }
        }
        Command::Cells { source, method } => {
            let flag = load(source)?;
            let cq = arrange(&flag.rep);
            let cells = cell_dims(&cq, &flag.e, (*method).into())?;
            match fmt {
                Format::Json => {
                    let list: Vec<_> = cells
                        .iter()
                        .map(|(p, d)| json!({ "suffix": p.suffix, "dim": d }))
                        .collect();
                    out = json!({ "cells": list }).to_string();
                    out.push('\n');
                }
                Format::Csv => {
                    writeln!(out, "suffix,dim").unwrap();
                    for (p, d) in &cells {
                        writeln!(out, "\"{}\",{}", suffix_text(p), d).unwrap();
                    }
                }
                Format::Text => {
                    for (p, d) in &cells {
                        writeln!(out, "({})  dim {}", suffix_text(p), d).unwrap();
                    }
                    writeln!(out, "{} cells", cells.len()).unwrap();
                }
            }
        }
        Command::Poincare { source, method } => {
            let flag = load(source)?;
            let cq = arrange(&flag.rep);
            let p = poincare_polynomial_with(&cq, &flag.e, (*method).into(), cli.threads)?;
            let chi = p.cell_count();
            match fmt {
                Format::Json => {
                    let chi: u64 = chi.try_into().unwrap_or(u64::MAX);
                    out = json!({ "coeffs": p.coeffs, "euler": chi }).to_string();
                    out.push('\n');
                }
                Format::Csv => {
                    writeln!(out, "degree,cells").unwrap();
                    for (d, c) in p.coeffs.iter().enumerate() {
                        writeln!(out, "{d},{c}").unwrap();
                    }
                }
                Format::Text => {
                    writeln!(out, "{p}").unwrap();
                    writeln!(out, "χ = {chi}").unwrap();
                }
            }
        }
        Command::Euler(source) => {
            let flag = load(source)?;
            let chi = euler_characteristic(&arrange(&flag.rep), &flag.e)?;
            match fmt {
                Format::Json => writeln!(out, "{}", json!({ "euler": chi.to_string() })).unwrap(),
                Format::Csv => writeln!(out, "euler\n{chi}").unwrap(),
                Format::Text => writeln!(out, "χ = {chi}").unwrap(),
            }
        }
        Command::Components { n, omega } => {
            if *n == 0 || *omega == 0 {
                return Err(usage("--n and --omega must be positive"));
            }
            let labels = irreducible_components(&vec![1; *n], &vec![1; *n], *omega)?;
            let dim = crate::flag::flag_dimension(*n, *omega);
            let rows: Vec<(String, String)> = labels
                .iter()
                .map(|l| {
                    let path: String = grand_motzkin(l)
                        .map(|steps| steps.iter().map(|s| s.symbol()).collect())
                        .unwrap_or_default();
                    (csv_line(&l.p), path)
                })
                .collect();
            match fmt {
                Format::Json => {
                    let list: Vec<_> = labels
                        .iter()
                        .zip(&rows)
                        .map(|(l, (_, path))| json!({ "p": l.p, "path": path, "dim": dim }))
                        .collect();
                    out = json!({ "components": list }).to_string();
                    out.push('\n');
                }
                Format::Csv => {
                    writeln!(out, "p,path,dim").unwrap();
                    for (p, path) in &rows {
                        writeln!(out, "\"{p}\",{path},{dim}").unwrap();
                    }
                }
                Format::Text => {
                    for (p, path) in &rows {
                        writeln!(out, "({p})  {path}").unwrap();
                    }
                    writeln!(out, "{} components of dimension {dim}", rows.len()).unwrap();
                }
            }
        }
        Command::Motzkin { n } => {
            let count = count_grand_motzkin(*n);
            match fmt {
                Format::Json => writeln!(out, "{}", json!({ "n": n, "count": count.to_string() })).unwrap(),
                Format::Csv => writeln!(out, "n,count\n{n},{count}").unwrap(),
                Format::Text => writeln!(out, "{count}").unwrap(),
            }
        }
        Command::Dellac { action } => return dellac(action, fmt),
        Command::Draw {
            source,
            fixed_point,
            kind,
            weights,
        } => {
            let flag = load(source)?;
            let cq = arrange(&flag.rep);
            let g = grading(&cq);
            let fp = match fixed_point {
                Some(s) => {
                    let fp = FixedPoint::new(parse_list(s)?);
                    if !fp.is_valid_for(&cq) {
                        return Err(usage("fixed point does not fit the segments"));
                    }
                    Some(fp)
                }
                None => None,
            };
            let g = weights.then_some(&g);
            out = match kind {
                DrawKind::Dot => to_dot(&cq, g, fp.as_ref()),
                DrawKind::Svg => to_svg(&cq, g, fp.as_ref()),
            };
        }
        Command::Verify { level } => {
            let level = match level {
                Level::Smoke => VerifyLevel::Smoke,
                Level::Full => VerifyLevel::Full,
            };
            let report = verify_suite(level, cli.seed);
            out = match fmt {
                Format::Json => report.to_json() + "\n",
                Format::Csv => {
                    let mut s = String::from("name,passed,millis\n");
                    for c in &report.checks {
                        writeln!(s, "{},{},{}", c.name, c.passed, c.millis).unwrap();
                    }
                    s
                }
                Format::Text => report.to_text(),
            };
            code = if report.passed() { 0 } else { 1 };
        }
    }
    Ok((out, code))
}

fn read_config(path: &PathBuf) -> Result<AffineDellacConfig> {
    AffineDellacConfig::from_json(&std::fs::read_to_string(path)?)
}

fn dellac(action: &DellacAction, fmt: Format) -> std::result::Result<(String, i32), Failure> {
    let mut out = String::new();
    let mut code = 0;
    match action {
        DellacAction::Validate { file } => {
            let config = read_config(file)?;
            let v = config.validate()?;
            match fmt {
                Format::Json => {
                    out = serde_json::to_string(&v).map_err(Error::from)? + "\n";
                }
                Format::Csv => {
                    writeln!(out, "row,col,k,p,r").unwrap();
                    for (j, row) in config.rows.iter().enumerate() {
                        writeln!(out, "{},{},{},{},{}", j + 1, row.col, row.k, v.p[j], v.r[j]).unwrap();
                    }
                }
                Format::Text => {
                    out.push_str(&config.render());
                    writeln!(out, "p: {}", csv_line(&v.p)).unwrap();
                    writeln!(out, "r: {}", csv_line(&v.r)).unwrap();
                }
            }
            match &v.violation {
                None => {
                    if fmt == Format::Text {
                        writeln!(out, "sum {} = {}·{}²", v.sum, config.omega, config.n).unwrap();
                    }
                }
                Some(why) => {
                    if fmt == Format::Text {
                        writeln!(out, "invalid: {why}").unwrap();
                    }
                    code = 1;
                }
            }
        }
        DellacAction::Enumerate { n, omega, corank } => {
            if *n == 0 || *omega == 0 {
                return Err(usage("--n and --omega must be positive"));
            }
            let configs: Vec<AffineDellacConfig> = match corank {
                Some(c) => {
                    if c.n() != *n {
                        return Err(usage("corank tuple length differs from n"));
                    }
                    enumerate_c_degenerate(*n, *omega, c).collect()
                }
                None => enumerate(*n, *omega).collect(),
            };
            match fmt {
                Format::Json => {
                    out = serde_json::to_string(&configs).map_err(Error::from)? + "\n";
                }
                Format::Csv => {
                    for c in &configs {
                        let cells: Vec<String> = c.rows.iter().map(|r| format!("{}:{}", r.col, r.k)).collect();
                        writeln!(out, "{}", cells.join(",")).unwrap();
                    }
                }
                Format::Text => {
                    for c in &configs {
                        out.push_str(&c.render());
                        out.push('\n');
                    }
                    writeln!(out, "{} configurations", configs.len()).unwrap();
                }
            }
        }
        DellacAction::ToCell { file } => {
            let config = read_config(file)?;
            let lengths = config.to_length_tuple()?;
            let fp = config.to_fixed_point()?;
            match fmt {
                Format::Json => {
                    out = json!({ "lengths": lengths, "suffix": fp.suffix }).to_string() + "\n";
                }
                Format::Csv => writeln!(out, "{}", suffix_text(&fp)).unwrap(),
                Format::Text => {
                    writeln!(out, "lengths by row: {}", csv_line(&lengths)).unwrap();
                    writeln!(out, "suffix tuple: ({})", suffix_text(&fp)).unwrap();
                }
            }
        }
        DellacAction::FromCell { n, omega, suffix } => {
            let fp = FixedPoint::new(parse_list(suffix)?);
            let config = AffineDellacConfig::from_fixed_point(*n, *omega, &fp)?;
            match fmt {
                Format::Json => out = config.to_json() + "\n",
                Format::Csv => {
                    for r in &config.rows {
                        writeln!(out, "{},{}", r.col, r.k).unwrap();
                    }
                }
                Format::Text => out = config.render(),
            }
        }
    }
    Ok((out, code))
}

/// Runs the command line `argv` (including the program name), writing to the
/// given streams. Returns the exit code.
pub fn run_with(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
