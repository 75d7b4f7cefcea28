//! Command-line front end for the n-ary BiHom-Lie algebra library.
//!
//! Subcommands: `verify` (axiom checks with witnesses), `spaces`
//! (derivation-type space grids), `construct` (twist induction, derivation
//! extension, two-block t-extension, trace induction), `theorems` (the
//! structural theorem suite), and `example` (built-in example documents).
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
//! input error.

use anyhow::{anyhow, bail, Context, Result};
use bihom_core::constructions::{
    derivation_extension, t_extension, tau_induce, twist_induce, twisted_trace_space,
};
use bihom_core::doc::AlgebraDoc;
use bihom_core::spaces::{self, Flags, SpaceComputer, SpaceKind};
use bihom_core::verifier::{self, Conclusion, TheoremReport, Window};
use bihom_core::{Matrix, NAryBiHomAlgebra, Scalar, Subspace, Vector};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bihom",
    version,
    about = "Exact computations with n-ary BiHom-Lie algebras given by structure constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining axioms of an algebra document.
    Verify {
        /// Algebra document (JSON).
        file: PathBuf,
    },
    /// Compute derivation-type spaces over a bidegree window.
    Spaces {
        /// Algebra document (JSON).
        file: PathBuf,
        /// Which space to compute.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Largest power of the first twist.
        #[arg(long, default_value_t = 0)]
        smax: usize,
        /// Largest power of the second twist.
        #[arg(long, default_value_t = 0)]
        rmax: usize,
        /// Drop the twist-commuting constraint from centroid-type spaces.
        #[arg(long)]
        no_strict_commuting: bool,
        /// Require center membership in the first slot only.
        #[arg(long)]
        no_strict_all_slots: bool,
    },
    /// Build a new algebra document from an existing one.
    Construct {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Run the structural theorem suite.
    Theorems {
        /// Algebra document (JSON).
        file: PathBuf,
        /// Largest power of the first twist.
        #[arg(long, default_value_t = 1)]
        smax: usize,
        /// Largest power of the second twist.
        #[arg(long, default_value_t = 1)]
        rmax: usize,
        /// Drop the twist-commuting constraint from centroid-type spaces.
        #[arg(long)]
        no_strict_commuting: bool,
        /// Require center membership in the first slot only.
        #[arg(long)]
        no_strict_all_slots: bool,
    },
    /// Emit a built-in example document.
    Example {
        /// One of: example-3lie-dim4, example-3bihom-dim4, example-bihom-dim2.
        name: String,
        /// First parameter of the two-dimensional family (nonzero rational).
        #[arg(long, default_value = "2")]
        m: String,
        /// Second parameter of the two-dimensional family (nonzero rational).
        #[arg(long, default_value = "3")]
        n: String,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Twist a bracket by composing its slots with the algebra's own maps.
    TwistInduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Adjoin one extra dimension acting on a binary algebra by a given map.
    DerExtend {
        file: PathBuf,
        /// JSON file with the d×d map as rows of scalar strings.
        #[arg(long)]
        map: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two-block extension with the degree-graded bracket.
    TExtend {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Induce an (n+1)-ary bracket from a twisted trace form.
    TauInduce {
        file: PathBuf,
        /// Comma-separated coordinates of the trace form.
        #[arg(long)]
        tau: String,
        /// Build the bracket even if the form fails the trace conditions.
        #[arg(long)]
        override_trace: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Der,
    Gder,
    Qder,
    C,
    Qc,
    Zder,
    Center,
    Abcenter,
}

impl KindArg {
    fn space_kind(self) -> Option<SpaceKind> {
        match self {
            KindArg::Der => Some(SpaceKind::Derivation),
            KindArg::Gder => Some(SpaceKind::GeneralizedDerivation),
            KindArg::Qder => Some(SpaceKind::QuasiDerivation),
            KindArg::C => Some(SpaceKind::Centroid),
            KindArg::Qc => Some(SpaceKind::QuasiCentroid),
            KindArg::Zder => Some(SpaceKind::CentralDerivation),
            KindArg::Center | KindArg::Abcenter => None,
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Verify { file } => cmd_verify(&file),
        Command::Spaces { file, kind, smax, rmax, no_strict_commuting, no_strict_all_slots } => {
            let flags = Flags {
                strict_commuting: !no_strict_commuting,
                strict_all_slots: !no_strict_all_slots,
            };
            cmd_spaces(&file, kind, smax, rmax, flags)
        }
        Command::Construct { construction } => cmd_construct(construction),
        Command::Theorems { file, smax, rmax, no_strict_commuting, no_strict_all_slots } => {
            let flags = Flags {
                strict_commuting: !no_strict_commuting,
                strict_all_slots: !no_strict_all_slots,
            };
            cmd_theorems(&file, smax, rmax, flags)
        }
        Command::Example { name, m, n, output } => cmd_example(&name, &m, &n, output.as_deref()),
    }
}

fn load_algebra(path: &Path) -> Result<NAryBiHomAlgebra> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let doc = AlgebraDoc::parse_json(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    doc.to_algebra()
        .with_context(|| format!("validating {}", path.display()))
}

fn emit_document(doc: &AlgebraDoc, output: Option<&Path>) -> Result<()> {
    let text = doc.to_json();
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_verify(file: &Path) -> Result<ExitCode> {
    let alg = load_algebra(file)?;
    if alg.dim() > 6 || alg.arity() > 4 {
        eprintln!(
            "warning: axiom checking scales as dim^(2·arity−1); \
             dim {} arity {} may be slow",
            alg.dim(),
            alg.arity()
        );
    }
    let report = alg.check_axioms();
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(exit_flag(report.axioms_pass()))
}

fn render_vector(v: &Vector) -> Vec<String> {
    v.iter().map(Scalar::render).collect()
}

fn subspace_basis(space: &Subspace) -> Vec<Vec<String>> {
    space.basis_rows().iter().map(render_vector).collect()
}

fn cmd_spaces(
    file: &Path,
    kind: KindArg,
    smax: usize,
    rmax: usize,
    flags: Flags,
) -> Result<ExitCode> {
    let alg = load_algebra(file)?;
    match kind.space_kind() {
        Some(space_kind) => {
            let mut sc = SpaceComputer::new(&alg, flags);
            let grid = sc.graded(space_kind, smax, rmax);
            for cell in &grid.cells {
                let line = json!({
                    "kind": space_kind.as_str(),
                    "s": cell.sr.s,
                    "r": cell.sr.r,
                    "dim": cell.dim(),
                    "basis": subspace_basis(&cell.space),
                });
                println!("{line}");
            }
            if !grid.window_exhaustive {
                eprintln!(
                    "note: twist powers did not become periodic within the window; \
                     larger bidegrees may carry further spaces"
                );
            }
        }
        None => {
            let space = match kind {
                KindArg::Center => spaces::center(&alg, flags),
                KindArg::Abcenter => spaces::ab_center(&alg),
                _ => unreachable!("vector-space kinds handled above"),
            };
            let line = json!({
                "kind": if kind == KindArg::Center { "center" } else { "abcenter" },
                "dim": space.dim(),
                "basis": subspace_basis(&space),
            });
            println!("{line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_map_file(path: &Path, alg: &NAryBiHomAlgebra) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<Vec<String>> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Matrix::parse(alg.field(), &rows, alg.dim(), alg.dim())
        .map_err(|e| anyhow!("map in {}: {e}", path.display()))
}

fn cmd_construct(construction: Construction) -> Result<ExitCode> {
    match construction {
        Construction::TwistInduce { file, output } => {
            let alg = load_algebra(&file)?;
            let induced = twist_induce(&alg)?;
            emit_document(&AlgebraDoc::of_algebra(&induced), output.as_deref())?;
        }
        Construction::DerExtend { file, map, output } => {
            let alg = load_algebra(&file)?;
            let d = parse_map_file(&map, &alg)?;
            let extended = derivation_extension(&alg, &d)?;
            emit_document(&AlgebraDoc::of_algebra(&extended), output.as_deref())?;
        }
        Construction::TExtend { file, output } => {
            let alg = load_algebra(&file)?;
            let ext = t_extension(&alg)?;
            emit_document(&AlgebraDoc::of_extension(&ext), output.as_deref())?;
        }
        Construction::TauInduce { file, tau, override_trace, output } => {
            let alg = load_algebra(&file)?;
            let coords = tau
                .split(',')
                .map(|s| alg.field().parse(s))
                .collect::<bihom_core::Result<Vec<_>>>()
                .context("parsing --tau")?;
            if !override_trace && !twisted_trace_space(&alg).contains(&coords)? {
                // Mathematical rejection, surfaced as an input error: the
                // caller asked for a construction whose hypothesis fails.
                bail!(
                    "the given form is not a twisted trace of this algebra \
                     (pass --override-trace to build the bracket anyway)"
                );
            }
            let induced = tau_induce(&alg, &coords, true)?;
            emit_document(&AlgebraDoc::of_algebra(&induced), output.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn conclusion_label(c: Conclusion) -> &'static str {
    match c {
        Conclusion::Pass => "pass",
        Conclusion::Fail => "FAIL",
        Conclusion::Skipped => "skipped",
    }
}

fn summarize(reports: &[TheoremReport]) -> String {
    let width = reports.iter().map(|r| r.theorem_id.len()).max().unwrap_or(10).max(10);
    let mut out = String::new();
    out.push_str(&format!("{:<width$}  {:<8}  hypotheses\n", "theorem", "verdict"));
    for r in reports {
        let hyps = if r.hypotheses_checked.is_empty() {
            "—".to_string()
        } else {
            r.hypotheses_checked
                .iter()
                .map(|h| format!("{}: {}", h.name, if h.holds { "ok" } else { "FAILED" }))
                .collect::<Vec<_>>()
                .join("; ")
        };
        out.push_str(&format!(
            "{:<width$}  {:<8}  {}\n",
            r.theorem_id,
            conclusion_label(r.conclusion),
            hyps
        ));
    }
    out
}

fn cmd_theorems(file: &Path, smax: usize, rmax: usize, flags: Flags) -> Result<ExitCode> {
    let alg = load_algebra(file)?;
    let reports = verifier::run_all(&alg, Window::new(smax, rmax), flags);
    for report in &reports {
        println!("{}", serde_json::to_string(report)?);
    }
    println!();
    print!("{}", summarize(&reports));
    Ok(exit_flag(reports.iter().all(TheoremReport::passed)))
}

fn cmd_example(name: &str, m: &str, n: &str, output: Option<&Path>) -> Result<ExitCode> {
    use bihom_core::builtins;
    let alg = match name {
        "example-3lie-dim4" => builtins::ternary_nlie_dim4_with_twists(),
        "example-3bihom-dim4" => builtins::twisted_ternary_dim4(),
        "example-bihom-dim2" => {
            let field = bihom_core::Field::Q;
            let m = field.parse(m).context("parsing --m")?;
            let n = field.parse(n).context("parsing --n")?;
            builtins::twisted_binary_dim2(&m, &n)?
        }
        other => bail!(
            "unknown example {other:?}; available: example-3lie-dim4, \
             example-3bihom-dim4, example-bihom-dim2"
        ),
    };
    emit_document(&AlgebraDoc::of_algebra(&alg), output)?;
    Ok(ExitCode::SUCCESS)
}

fn exit_flag(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
