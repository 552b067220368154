//! Command-line front end for the `smallgon` library.

pub mod format;
pub mod record;
pub mod table;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use smallgon::{
    construct_q, construct_q_theorem, regular_area, solve_full_nlp, upper_bound, validate,
    vertices_from_angles, AngleVector, AreaReport, NlpOptions, QOptions, SmallPolygon,
};

use crate::record::{regular_polygon, Method, PolygonRecord};

#[derive(Debug, Parser)]
#[command(name = "smallgon", version, about = "Small polygons with large area")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper bound and regular-polygon area for n vertices.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced construction Q_{n,r}; without --r, the piecewise choice of r.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "regular")]
        r: Option<usize>,
        /// Emit the regular n-gon instead.
        #[arg(long)]
        regular: bool,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Full program over all n/2 angles.
    Optimize {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Recompute a reference table and report per-cell deltas.
    Table {
        #[arg(long, value_enum)]
        which: table::Which,
        /// Vertex counts (table3, table5).
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Values of r (table2).
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Re-validate a polygon file (JSON record or CSV vertices).
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a polygon file as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SolveFlags {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub multistart: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SolveFlags {
    pub fn q_options(&self) -> QOptions {
        let d = QOptions::default();
        QOptions {
            tol: self.tol,
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            multistart: self.multistart,
            seed: self.seed,
            ..d
        }
    }

    pub fn nlp_options(&self) -> NlpOptions {
        let d = NlpOptions::default();
        NlpOptions {
            constraint_tol: self.tol,
            max_outer: self.max_iter.unwrap_or(d.max_outer),
            multistart: self.multistart,
            seed: self.seed,
            ..d
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

/// Failures that carry their own exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NotConverged(String),
    Validation(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage error: {m}"),
            Self::NotConverged(m) => write!(f, "not converged: {m}"),
            Self::Validation(m) => write!(f, "validation failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;

/// 2 for bad arguments or input, 3 for infeasible or non-convergent
/// solves, 4 for a polygon failing validation, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::NotConverged(_) => EXIT_SOLVER,
                CliError::Validation(_) => EXIT_VALIDATION,
            };
        }
        if let Some(e) = cause.downcast_ref::<smallgon::Error>() {
            return match e {
                smallgon::Error::Domain(_) => EXIT_USAGE,
                _ => EXIT_SOLVER,
            };
        }
        if cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return EXIT_USAGE;
        }
    }
    1
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct BoundReport {
    n: usize,
    upper_bound: f64,
    regular_area: f64,
    gap: f64,
}

fn cmd_bound(n: usize, format: Format, out: Option<&Path>) -> Result<()> {
    let ub = upper_bound(n)?;
    let reg = regular_area(n)?;
    let text = match format {
        Format::Json => format::to_json(&BoundReport {
            n,
            upper_bound: ub,
            regular_area: reg,
            gap: ub - reg,
        })?,
        Format::Text => format!(
            "upper_bound  {ub}\nregular_area {reg}\ngap          {}\n",
            ub - reg
        ),
        other => {
            return Err(CliError::Usage(format!("bound does not support {other:?} output")).into())
        }
    };
    emit(out, &text)
}

/// Writes the record in the requested format, then reports validation or
/// convergence failures through the error path.
fn emit_record(record: &PolygonRecord, polygon: &SmallPolygon, flags: &SolveFlags) -> Result<()> {
    let text = match flags.format {
        Format::Json => format::to_json(record)?,
        Format::Csv => format::to_csv(&record.vertices),
        Format::Svg => format::to_svg(polygon),
        Format::Text => format::record_text(record),
    };
    emit(flags.out.as_deref(), &text)?;
    if !record.valid.all() {
        return Err(CliError::Validation(format!("{:?}", record.valid)).into());
    }
    if let Some(d) = &record.diagnostics {
        if !d.converged {
            return Err(CliError::NotConverged(format!(
                "{} stopped after {} iterations",
                d.solver, d.iterations
            ))
            .into());
        }
    }
    Ok(())
}

fn cmd_construct(n: usize, r: Option<usize>, regular: bool, flags: &SolveFlags) -> Result<()> {
    if regular {
        let area = regular_area(n)?;
        let polygon = regular_polygon(n);
        return emit_record(
            &PolygonRecord::from_regular(&polygon, area),
            &polygon,
            flags,
        );
    }
    let opts = flags.q_options();
    let (q, method) = match r {
        Some(r) => (construct_q(n, r, &opts)?, Method::Reduced),
        None => (construct_q_theorem(n, &opts)?, Method::Theorem),
    };
    emit_record(&PolygonRecord::from_reduced(&q, method), &q.polygon, flags)
}

fn cmd_optimize(n: usize, flags: &SolveFlags) -> Result<()> {
    let sol = solve_full_nlp(n, None, &flags.nlp_options())?;
    let polygon = vertices_from_angles(&sol.angles)?;
    emit_record(&PolygonRecord::from_nlp(&sol, &polygon), &polygon, flags)
}

fn cmd_table(which: table::Which, n: &[usize], r: &[usize], flags: &SolveFlags) -> Result<()> {
    let keys = match which {
        table::Which::Table2 if !n.is_empty() => {
            return Err(CliError::Usage("table2 rows are selected with --r".into()).into())
        }
        table::Which::Table2 => r,
        _ if !r.is_empty() => {
            return Err(
                CliError::Usage("table3 and table5 rows are selected with --n".into()).into(),
            )
        }
        _ => n,
    };
    let opts = table::TableOptions {
        q: flags.q_options(),
        nlp: flags.nlp_options(),
    };
    let report = table::build(which, keys, &opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match flags.format {
        Format::Json => format::to_json(&report)?,
        Format::Text => table::to_text(&report),
        other => {
            return Err(CliError::Usage(format!("table does not support {other:?} output")).into())
        }
    };
    emit(flags.out.as_deref(), &text)?;
    if !report.pass {
        return Err(CliError::Validation(format!(
            "{} has cells out of tolerance (max |delta| {:.2e})",
            report.table, report.max_abs_delta
        ))
        .into());
    }
    Ok(())
}

/// A polygon read back from disk, with the record when the file had one.
pub struct LoadedPolygon {
    pub polygon: SmallPolygon,
    pub record: Option<PolygonRecord>,
}

/// Reads a JSON record or a CSV vertex list. Records carrying angles are
/// rebuilt from the vertices as written, with skeleton edges from the
/// angle expansion when it reproduces those vertices.
pub fn load_polygon(path: &Path) -> Result<LoadedPolygon> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let record: PolygonRecord =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let mut polygon = SmallPolygon::from_vertices(record.points());
        if let Some(expanded) = AngleVector::new(record.n, record.angles.clone())
            .ok()
            .and_then(|a| vertices_from_angles(&a).ok())
        {
            if expanded.vertices == polygon.vertices {
                polygon.skeleton_edges = expanded.skeleton_edges;
            }
        }
        Ok(LoadedPolygon {
            polygon,
            record: Some(record),
        })
    } else {
        let pts = format::parse_csv(&text).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(LoadedPolygon {
            polygon: SmallPolygon::from_vertices(pts),
            record: None,
        })
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    n: usize,
    area: f64,
    upper_bound: Option<f64>,
    gap: Option<f64>,
    diameter: f64,
    is_convex: bool,
    is_symmetric: bool,
    is_small: bool,
}

fn checked_polygon(file: &Path) -> Result<SmallPolygon> {
    let polygon = load_polygon(file)?.polygon;
    if polygon.n() < 3 {
        return Err(
            CliError::Usage(format!("{} has fewer than 3 vertices", file.display())).into(),
        );
    }
    Ok(polygon)
}

pub fn cmd_verify(file: &Path) -> Result<AreaReport> {
    Ok(validate(&checked_polygon(file)?))
}

fn run_verify(file: &Path, format: Format, out: Option<&Path>) -> Result<()> {
    let polygon = checked_polygon(file)?;
    let report = validate(&polygon);
    let v = VerifyReport {
        n: polygon.n(),
        area: report.area,
        upper_bound: report.upper_bound,
        gap: report.gap,
        diameter: report.diameter,
        is_convex: report.is_convex,
        is_symmetric: report.is_symmetric,
        is_small: report.is_small,
    };
    let text = match format {
        Format::Json => format::to_json(&v)?,
        Format::Text => format!(
            "n            {}\narea         {}\nupper_bound  {}\ndiameter     {}\nis_convex    {}\nis_symmetric {}\nis_small     {}\n",
            v.n,
            v.area,
            v.upper_bound.map_or("-".into(), |u| u.to_string()),
            v.diameter,
            v.is_convex,
            v.is_symmetric,
            v.is_small
        ),
        other => return Err(CliError::Usage(format!("verify does not support {other:?} output")).into()),
    };
    emit(out, &text)?;
    if !report.all_valid() {
        return Err(CliError::Validation(format!(
            "convex={} symmetric={} small={}",
            report.is_convex, report.is_symmetric, report.is_small
        ))
        .into());
    }
    Ok(())
}

pub fn cmd_render(file: &Path, out: Option<&Path>) -> Result<()> {
    let loaded = load_polygon(file)?;
    emit(out, &format::to_svg(&loaded.polygon))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bound { n, format, out } => cmd_bound(n, format, out.as_deref()),
        Command::Construct {
            n,
            r,
            regular,
            solve,
        } => cmd_construct(n, r, regular, &solve),
        Command::Optimize { n, solve } => cmd_optimize(n, &solve),
        Command::Table { which, n, r, solve } => cmd_table(which, &n, &r, &solve),
        Command::Verify { file, format, out } => run_verify(&file, format, out.as_deref()),
        Command::Render { file, out } => cmd_render(&file, out.as_deref()),
    }
}
