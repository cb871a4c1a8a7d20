//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 negative answer
//! (not isomorphic, no path within budget, not thick, not geometric),
//! 3 resource cap reached.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cusptri_core::bounds::{bounds_report, systole_bounds, ThicknessParams, DEFAULT_EPSILON};
use cusptri_core::cusp::develop_cusp;
use cusptri_core::moves::apply_with_inverse;
use cusptri_core::search::{connect, sphere, SearchBudget, SearchError};
use cusptri_core::shape::{check_thickness, GLUING_TOLERANCE, THETA_SLACK};
use cusptri_core::{applicable_moves, canonical_signature, is_isomorphic, Move, MoveSequence, ShapeAssignment};
use serde::Serialize;

use crate::format::{parse_triangulation, serialize, TriFile};
use crate::json::{
    describe_defect, BoundsJson, CuspJson, MoveJson, MoveSequenceJson, SphereJson, SystoleJson, ThicknessJson,
    ValidationJson,
};

#[derive(Debug, Parser)]
#[command(name = "cusptri", version, about = "Triangulations of cusped 3-manifolds: moves, signatures, geometry and bounds")]
pub struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a triangulation file and report its skeleton.
    Validate { file: PathBuf },
    /// Print the canonical signature; with two files, compare them.
    Canon { file: PathBuf, other: Option<PathBuf> },
    /// List or apply Pachner moves.
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Search the move graph.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Every explicit bound for a pair of triangulations.
    Bounds {
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
        #[arg(long)]
        theta0: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Lower bounds on the systole.
    Systole(SystoleArgs),
    /// Develop a cusp cross-section from the file's shapes.
    Cusp {
        file: PathBuf,
        /// Index among the ideal vertex classes.
        #[arg(long, default_value_t = 0)]
        cusp: usize,
        #[arg(long, default_value_t = GLUING_TOLERANCE)]
        tolerance: f64,
    },
    /// Check that every dihedral angle is at least theta0.
    Thickness {
        file: PathBuf,
        #[arg(long)]
        theta0: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum MovesCommand {
    /// Every applicable move, one JSON object per line.
    List { file: PathBuf },
    /// Apply a move (a JSON object) or moves (a JSON array) and print the result.
    Apply {
        file: PathBuf,
        #[arg(long = "move")]
        moves: String,
    },
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Longest path considered.
    #[arg(long, default_value_t = 6)]
    pub max_moves: usize,
    /// Largest triangulation visited; defaults to the larger endpoint plus 4.
    #[arg(long)]
    pub max_tets: Option<usize>,
    /// Largest number of distinct triangulations stored.
    #[arg(long, default_value_t = 200_000)]
    pub max_states: usize,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Shortest move sequence between two triangulations, up to isomorphism.
    Connect {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        budget: Budget,
    },
    /// Number of distinct triangulations at each distance.
    Sphere {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SystoleSource {
    /// Take m from this file's tetrahedron count.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Number of tetrahedra.
    #[arg(long)]
    pub m: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SystoleArgs {
    #[command(flatten)]
    pub source: SystoleSource,
    /// Radians, or `auto` for the least dihedral angle of the file's shapes.
    #[arg(long)]
    pub theta0: String,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Negative(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Negative(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Negative(m) | Failure::Cap(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Output gathered before anything is written.
#[derive(Default)]
struct Report {
    stdout: String,
    /// Set when the command answers in the negative but still prints a result.
    negative: Option<String>,
}

impl Report {
    fn line(&mut self, text: impl std::fmt::Display) {
        writeln!(self.stdout, "{text}").expect("string write");
    }

    fn json<T: Serialize>(&mut self, value: &T) {
        let text = serde_json::to_string(value).expect("serializable");
        self.line(text);
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut report = Report::default();
    match execute(&cli, &mut report) {
        Ok(()) => match report.negative {
            Some(reason) => Outcome { code: 2, stdout: report.stdout, stderr: format!("{reason}\n") },
            None => Outcome { code: 0, stdout: report.stdout, stderr: String::new() },
        },
        Err(failure) => Outcome {
            code: failure.code(),
            stdout: report.stdout,
            stderr: format!("error: {}\n", failure.message()),
        },
    }
}

fn load(path: &Path) -> Result<TriFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_triangulation(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn require_shapes<'a>(file: &'a TriFile, path: &Path) -> Result<&'a ShapeAssignment, Failure> {
    file.shapes.as_ref().ok_or_else(|| usage(format!("{}: no shapes given", path.display())))
}

fn execute(cli: &Cli, out: &mut Report) -> Result<(), Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let tri = load(file)?.triangulation;
            let report = tri.validate();
            if cli.json {
                out.json(&ValidationJson::from(&report));
            } else {
                out.line(format_args!("tetrahedra: {}", tri.tet_count()));
                out.line(format_args!("orientable: {}", report.orientable));
                out.line(format_args!("cusps: {}", report.cusp_count));
                out.line(format_args!("edge degrees: {:?}", report.edge_degrees));
                for defect in &report.defects {
                    out.line(format_args!("defect: {}", describe_defect(defect)));
                }
            }
            if !report.is_valid() {
                out.negative = Some(format!("{} defect(s) found", report.defects.len()));
            }
        }
        Command::Canon { file, other } => {
            let first = load(file)?.triangulation;
            let signature = canonical_signature(&first).map_err(usage)?;
            match other {
                None => out.line(signature),
                Some(path) => {
                    let second = load(path)?.triangulation;
                    let other_signature = canonical_signature(&second).map_err(usage)?;
                    let same = is_isomorphic(&first, &second).map_err(usage)?.is_some();
                    if cli.json {
                        out.json(&serde_json::json!({
                            "first": signature.as_str(),
                            "second": other_signature.as_str(),
                            "isomorphic": same,
                        }));
                    } else {
                        out.line(&signature);
                        out.line(&other_signature);
                        out.line(if same { "isomorphic" } else { "not isomorphic" });
                    }
                    if !same {
                        out.negative = Some("triangulations are not isomorphic".into());
                    }
                }
            }
        }
        Command::Moves(MovesCommand::List { file }) => {
            let tri = load(file)?.triangulation;
            for mv in applicable_moves(&tri) {
                out.json(&MoveJson::from(mv));
            }
        }
        Command::Moves(MovesCommand::Apply { file, moves }) => {
            let tri = load(file)?.triangulation;
            let moves: Vec<Move> = match serde_json::from_str::<Vec<MoveJson>>(moves) {
                Ok(list) => list.into_iter().map(Move::from).collect(),
                Err(_) => vec![serde_json::from_str::<MoveJson>(moves).map_err(|e| usage(format!("--move: {e}")))?.into()],
            };
            let mut current = tri.clone();
            for (step, &mv) in moves.iter().enumerate() {
                current = apply_with_inverse(&current, mv)
                    .map_err(|e| Failure::Negative(format!("step {step}: {e}")))?
                    .0;
            }
            if cli.json {
                let sequence = MoveSequence::record(&tri, moves).map_err(usage)?;
                out.json(&serde_json::json!({
                    "sequence": MoveSequenceJson::from(&sequence),
                    "triangulation": serialize(&current, None),
                }));
            } else {
                out.stdout.push_str(&serialize(&current, None));
            }
        }
        Command::Search(SearchCommand::Connect { first, second, budget }) => {
            let a = load(first)?.triangulation;
            let b = load(second)?.triangulation;
            let mut limits = SearchBudget::for_endpoints(&a, &b, budget.max_moves, budget.max_states);
            if let Some(cap) = budget.max_tets {
                limits.max_tetrahedra = cap;
            }
            match connect(&a, &b, &limits) {
                Ok(sequence) => out.json(&MoveSequenceJson::from(&sequence)),
                Err(e @ SearchError::NotFound { .. }) => return Err(Failure::Negative(e.to_string())),
                Err(e @ SearchError::StateCap { .. }) => return Err(Failure::Cap(e.to_string())),
                Err(e) => return Err(usage(e)),
            }
        }
        Command::Search(SearchCommand::Sphere { file, radius, budget }) => {
            let tri = load(file)?.triangulation;
            let mut limits = SearchBudget::for_endpoints(&tri, &tri, budget.max_moves, budget.max_states);
            if let Some(cap) = budget.max_tets {
                limits.max_tetrahedra = cap;
            }
            let report = sphere(&tri, *radius, &limits).map_err(usage)?;
            out.json(&SphereJson::new(*radius, &report));
            if report.truncated {
                return Err(Failure::Cap(format!("state cap of {} reached", limits.max_states)));
            }
        }
        Command::Bounds { m1, m2, theta0, epsilon } => {
            let report = bounds_report(*m1, *m2, *theta0, *epsilon).map_err(usage)?;
            if cli.json {
                out.json(&BoundsJson::new(*m1, *m2, &report));
            } else {
                for entry in report.entries() {
                    match entry.value {
                        Some(v) => out.line(format_args!("{:<20} {v}", entry.name)),
                        None => out.line(format_args!("{:<20} not applicable", entry.name)),
                    }
                }
            }
        }
        Command::Systole(args) => systole(cli.json, args, out)?,
        Command::Cusp { file, cusp, tolerance } => {
            let loaded = load(file)?;
            let shapes = require_shapes(&loaded, file)?;
            shapes.check_matches(&loaded.triangulation).map_err(usage)?;
            let section = develop_cusp(&loaded.triangulation, shapes, *cusp, *tolerance)
                .map_err(|e| Failure::Negative(e.to_string()))?;
            out.json(&CuspJson::from(&section));
        }
        Command::Thickness { file, theta0 } => {
            let loaded = load(file)?;
            let shapes = require_shapes(&loaded, file)?;
            let report = check_thickness(shapes, *theta0).map_err(usage)?;
            if cli.json {
                out.json(&ThicknessJson { theta0: *theta0, is_thick: report.is_thick, min_angle: report.min_angle });
            } else {
                out.line(format_args!("thick: {}", report.is_thick));
                out.line(format_args!("min angle: {}", report.min_angle));
            }
            if !report.is_thick {
                out.negative = Some(format!("least dihedral angle {} is below theta0", report.min_angle));
            }
        }
    }
    Ok(())
}

fn systole(json: bool, args: &SystoleArgs, out: &mut Report) -> Result<(), Failure> {
    let (m, measured) = match (&args.source.file, args.source.m) {
        (Some(path), _) => {
            let loaded = load(path)?;
            let measured = loaded.shapes.as_ref().map(ShapeAssignment::min_angle);
            (loaded.triangulation.tet_count() as u64, measured)
        }
        (None, Some(m)) => (m, None),
        (None, None) => return Err(usage("one of --file or --m is required")),
    };
    let theta0 = if args.theta0 == "auto" {
        measured.ok_or_else(|| usage("--theta0 auto needs a file with shapes"))?
    } else {
        let value: f64 = args.theta0.parse().map_err(|_| usage(format!("--theta0: `{}` is not a number", args.theta0)))?;
        if let Some(least) = measured {
            if value > least + THETA_SLACK {
                return Err(Failure::Negative(format!(
                    "theta0 {value} exceeds the least dihedral angle {least} of the given shapes"
                )));
            }
        }
        value
    };
    let params = ThicknessParams::new(m, theta0, args.epsilon).map_err(usage)?;
    let (exact, simplified) = systole_bounds(&params);
    if json {
        out.json(&SystoleJson {
            m,
            theta0: params.theta0(),
            epsilon: params.epsilon(),
            s0_exact: exact.into(),
            s0_simplified: simplified.into(),
        });
    } else {
        out.line(format_args!("m: {m}"));
        out.line(format_args!("theta0: {}", params.theta0()));
        out.line(format_args!("exact: {exact}"));
        out.line(format_args!("simplified: {simplified}"));
    }
    Ok(())
}
