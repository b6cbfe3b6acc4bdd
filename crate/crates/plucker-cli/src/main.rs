//! Command-line front end: parses vectors, matrices and tensors from JSON
//! or CSV, dispatches to the library, and prints results in the canonical
//! formats (17 significant digits, deterministic field and entry order).
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O, usage or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use plucker::grassmann::{antisymmetrize, grassmann_from_vectors, wedge, AntisymTensor};
use plucker::io;
use plucker::multiview::{
    epipolar_residual, intersect_planes, plane_tensor, plucker_equivalent, plucker_line,
};
use plucker::tensor::{contract_mode, contract_paired, poly_eval, DenseTensor};

#[derive(Parser)]
#[command(
    name = "plucker",
    version,
    about = "Antisymmetric tensor calculus: wedge products, line matrices, planes and polytopes",
    after_help = "Inputs ending in .json use the tensor interchange formats; anything else is \
                  read as CSV (one row per line). Indices in files and flags are 1-based."
)]
struct Cli {
    /// Layout for tensor results (antisymmetric results default to sparse,
    /// dense tensors to dense)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Tolerance for equivalence and membership decisions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Write the result to a file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum OutputFormat {
    Dense,
    Sparse,
}

#[derive(Subcommand)]
enum Command {
    /// Wedge product of two cubical tensors
    Wedge { a: PathBuf, b: PathBuf },
    /// Antisymmetrize a cubical tensor (unnormalized)
    Antisym { tensor: PathBuf },
    /// Grassmann tensor of a vector family (one vector per CSV row)
    Grassmann {
        #[arg(long)]
        vectors: PathBuf,
    },
    /// 4x4 line matrix through two homogeneous points
    PluckerLine { x: PathBuf, y: PathBuf },
    /// Scale relating two projectively equivalent line matrices
    PluckerEquiv { p1: PathBuf, p2: PathBuf },
    /// Plane tensor of three homogeneous points (one per CSV row)
    Plane { points: PathBuf },
    /// Intersection point of three planes (one per CSV row)
    IntersectPlanes { planes: PathBuf },
    /// Epipolar residual x'ᵀ F x
    Epipolar { f: PathBuf, x: PathBuf, xp: PathBuf },
    /// Halfspace membership and wedge surface residual of a point
    PolytopeCheck {
        polytope: PathBuf,
        point: PathBuf,
        /// Basis columns (1-based, comma-separated); default: first
        /// independent columns
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
    },
    /// Contractive product: paired (trailing half) or --mode k
    Contract {
        a: PathBuf,
        b: PathBuf,
        /// Contract a single mode (1-based) by a matrix instead
        #[arg(long)]
        mode: Option<usize>,
    },
    /// Homogeneous form A x^m
    EvalPoly { tensor: PathBuf, x: PathBuf },
}

/// Command outcome: what to print and how to exit.
struct Outcome {
    text: String,
    failure: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            failure: false,
        }
    }
}

enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<plucker::Error> for CliError {
    fn from(e: plucker::Error) -> Self {
        match e {
            plucker::Error::Parse(_) => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn in_file(path: &Path, err: plucker::Error) -> CliError {
    let wrapped = format!("{}: {}", path.display(), err);
    match err {
        plucker::Error::Parse(_) => CliError::Io(wrapped),
        _ => CliError::Validation(wrapped),
    }
}

/// Tensor from JSON (dense, sparse or antisymmetric layout) or CSV.
fn read_tensor(path: &Path) -> Result<io::TensorInput, CliError> {
    let text = read_file(path)?;
    if is_json(path) {
        io::parse_tensor_json(&text).map_err(|e| in_file(path, e))
    } else {
        let rows = io::parse_csv(&text).map_err(|e| in_file(path, e))?;
        io::csv_to_tensor(&rows)
            .map(io::TensorInput::Dense)
            .map_err(|e| in_file(path, e))
    }
}

fn read_dense(path: &Path) -> Result<DenseTensor, CliError> {
    read_tensor(path)?.into_dense().map_err(CliError::from)
}

/// Rows of a CSV file, or the rows of a dense order-2 JSON tensor.
fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = read_file(path)?;
    if is_json(path) {
        let t = io::parse_tensor_json(&text)
            .map_err(|e| in_file(path, e))?
            .into_dense()
            .map_err(CliError::from)?;
        match t.order() {
            1 => Ok(vec![t.values().to_vec()]),
            2 => {
                let cols = t.shape()[1];
                Ok(t.values().chunks(cols).map(<[f64]>::to_vec).collect())
            }
            other => Err(CliError::Validation(format!(
                "{}: expected a vector or matrix, got order {}",
                path.display(),
                other
            ))),
        }
    } else {
        io::parse_csv(&text).map_err(|e| in_file(path, e))
    }
}

fn read_vector(path: &Path) -> Result<Vec<f64>, CliError> {
    let rows = read_rows(path)?;
    if rows.len() != 1 {
        return Err(CliError::Validation(format!(
            "{}: expected a single vector, found {} rows",
            path.display(),
            rows.len()
        )));
    }
    Ok(rows.into_iter().next().unwrap())
}

fn read_point4(path: &Path) -> Result<[f64; 4], CliError> {
    let v = read_vector(path)?;
    <[f64; 4]>::try_from(v.as_slice()).map_err(|_| {
        CliError::Validation(format!(
            "{}: expected a homogeneous 4-vector, found length {}",
            path.display(),
            v.len()
        ))
    })
}

fn read_three_rows(path: &Path, what: &str) -> Result<[[f64; 4]; 3], CliError> {
    let rows = read_rows(path)?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 4) {
        return Err(CliError::Validation(format!(
            "{}: expected three {} as rows of four values",
            path.display(),
            what
        )));
    }
    let mut out = [[0.0; 4]; 3];
    for (dst, src) in out.iter_mut().zip(&rows) {
        dst.copy_from_slice(src);
    }
    Ok(out)
}

fn scalar_line(v: f64) -> String {
    format!("{}\n", io::format_float(v))
}

fn dense_output(t: &DenseTensor, format: Option<OutputFormat>) -> String {
    let text = match format {
        Some(OutputFormat::Sparse) => io::sparse_to_json(t),
        _ => io::dense_to_json(t),
    };
    text + "\n"
}

fn antisym_output(a: &AntisymTensor, format: Option<OutputFormat>) -> Result<String, CliError> {
    match format {
        Some(OutputFormat::Dense) => {
            let dense = a.to_dense().map_err(CliError::from)?;
            Ok(io::dense_to_json(&dense) + "\n")
        }
        _ => Ok(io::antisym_to_json(a) + "\n"),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(CliError::Validation(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    match &cli.command {
        Command::Wedge { a, b } => {
            let a = read_dense(a)?;
            let b = read_dense(b)?;
            let w = wedge(&a, &b)?;
            Ok(Outcome::ok(dense_output(&w, cli.format)))
        }
        Command::Antisym { tensor } => {
            let t = read_dense(tensor)?;
            let result = antisymmetrize(&t)?;
            match cli.format {
                Some(OutputFormat::Sparse) => {
                    let compact = AntisymTensor::from_dense(&result)?;
                    Ok(Outcome::ok(io::antisym_to_json(&compact) + "\n"))
                }
                _ => Ok(Outcome::ok(dense_output(&result, None))),
            }
        }
        Command::Grassmann { vectors } => {
            let rows = read_rows(vectors)?;
            let t = grassmann_from_vectors(&rows)?;
            Ok(Outcome::ok(antisym_output(&t, cli.format)?))
        }
        Command::PluckerLine { x, y } => {
            let p = plucker_line(read_point4(x)?, read_point4(y)?);
            Ok(Outcome::ok(io::plucker_to_json(&p) + "\n"))
        }
        Command::PluckerEquiv { p1, p2 } => {
            let text1 = read_file(p1)?;
            let text2 = read_file(p2)?;
            let m1 = io::parse_plucker(&text1).map_err(|e| in_file(p1, e))?;
            let m2 = io::parse_plucker(&text2).map_err(|e| in_file(p2, e))?;
            match plucker_equivalent(&m1, &m2, cli.tol)? {
                Some(lambda) => Ok(Outcome::ok(scalar_line(lambda))),
                None => Ok(Outcome {
                    text: "not equivalent\n".into(),
                    failure: true,
                }),
            }
        }
        Command::Plane { points } => {
            let [p1, p2, p3] = read_three_rows(points, "points")?;
            let t = plane_tensor(p1, p2, p3)?;
            Ok(Outcome::ok(antisym_output(&t, cli.format)?))
        }
        Command::IntersectPlanes { planes } => {
            let [a1, a2, a3] = read_three_rows(planes, "planes")?;
            let x = intersect_planes(a1, a2, a3)?;
            Ok(Outcome::ok(io::rows_to_csv(&[x.to_vec()])))
        }
        Command::Epipolar { f, x, xp } => {
            let f = read_dense(f)?;
            let x = read_vector(x)?;
            let xp = read_vector(xp)?;
            let r = epipolar_residual(&f, &x, &xp)?;
            Ok(Outcome::ok(scalar_line(r)))
        }
        Command::PolytopeCheck {
            polytope,
            point,
            basis,
        } => {
            let text = read_file(polytope)?;
            let w = io::parse_polytope(&text).map_err(|e| in_file(polytope, e))?;
            let x = read_vector(point)?;
            let basis = match basis {
                Some(file_indices) => file_indices
                    .iter()
                    .map(|&i| {
                        i.checked_sub(1).ok_or_else(|| {
                            CliError::Validation("--basis indices are 1-based".into())
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                None => w.default_basis(),
            };
            let residual = w.surface_residual(&basis, &x)?;
            let contains = w.contains(&x, cli.tol)?;
            let scale: f64 = basis
                .iter()
                .map(|&k| {
                    let col = &w.columns()[k];
                    col.iter().map(|v| v * v).sum::<f64>().sqrt()
                })
                .product::<f64>()
                * x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let on_surface = residual.max_abs() <= cli.tol * scale;
            let report = format!(
                "{{\"contains\":{},\"on_surface\":{},\"residual\":{}}}\n",
                contains,
                on_surface,
                io::dense_to_json(&residual)
            );
            Ok(Outcome::ok(report))
        }
        Command::Contract { a, b, mode } => {
            let a = read_dense(a)?;
            let b = read_dense(b)?;
            let result = match mode {
                Some(k) => {
                    let mode = k
                        .checked_sub(1)
                        .ok_or_else(|| CliError::Validation("--mode is 1-based".into()))?;
                    contract_mode(&a, &b, mode)?
                }
                None => contract_paired(&a, &b)?,
            };
            Ok(Outcome::ok(dense_output(&result, cli.format)))
        }
        Command::EvalPoly { tensor, x } => {
            let t = read_dense(tensor)?;
            let x = read_vector(x)?;
            Ok(Outcome::ok(scalar_line(poly_eval(&t, &x)?)))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
        }
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: {}", e.message());
                return ExitCode::from(e.exit_code());
            }
            if outcome.failure {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
