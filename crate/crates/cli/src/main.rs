use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyrel::format::{emit_pmat, parse_pmat, parse_shift};
use polyrel::{approx, division, hermite, oracle, relations, Error, PolyMat};

/// Relation bases and normal forms of univariate polynomial matrices over
/// prime fields.
#[derive(Parser)]
#[command(name = "polyrel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ShiftArg {
    /// Comma-separated shift, e.g. `0,-2,3`; defaults to all zeros.
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Quotient and remainder of F by the column-reduced M.
    Quorem { m: PathBuf, f: PathBuf },
    /// rem(P·F, M) for column-reduced M and F reduced modulo M.
    Residual { m: PathBuf, p: PathBuf, f: PathBuf },
    /// Shifted Popov basis of { p : p·F ≡ 0 mod M }.
    Relations {
        m: PathBuf,
        f: PathBuf,
        #[command(flatten)]
        shift: ShiftArg,
        /// Treat M as a Hermite form and skip computing one.
        #[arg(long)]
        assume_hermite: bool,
        /// Check the result against the brute-force oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Shifted Popov approximant basis of G at the given order.
    Approx {
        g: PathBuf,
        /// Comma-separated order, one entry per column of G.
        #[arg(long)]
        order: String,
        #[command(flatten)]
        shift: ShiftArg,
    },
    /// Shifted Popov form of a nonsingular M.
    Popov {
        m: PathBuf,
        #[command(flatten)]
        shift: ShiftArg,
        /// Check the result against the brute-force oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Hermite form of a nonsingular M.
    Hermite { m: PathBuf },
    /// Exit with status 0 if the matrix has the property, 1 otherwise.
    Check {
        #[arg(long, group = "property", required = true)]
        popov: Option<PathBuf>,
        #[arg(long, group = "property")]
        hermite: Option<PathBuf>,
        #[arg(long, group = "property")]
        reduced: Option<PathBuf>,
        #[command(flatten)]
        shift: ShiftArg,
    },
}

enum Failure {
    Shape(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_shape_error() {
            Failure::Shape(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<PolyMat, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Shape(format!("{}: {e}", path.display())))?;
    parse_pmat(&text).map_err(|e| Failure::Shape(format!("{}: {e}", path.display())))
}

fn shift_for(arg: &ShiftArg, len: usize) -> Result<Vec<i64>, Failure> {
    match &arg.shift {
        None => Ok(vec![0; len]),
        Some(text) => {
            let s = parse_shift(text).map_err(|e| Failure::Shape(format!("--shift: {e}")))?;
            if s.len() != len {
                return Err(Failure::Shape(format!("--shift has {} entries, expected {len}", s.len())));
            }
            Ok(s)
        }
    }
}

fn verified(p: PolyMat, m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<PolyMat, Failure> {
    if oracle::verify_relation_basis(&p, m, f, s) {
        Ok(p)
    } else {
        Err(Failure::Precondition("result failed oracle verification".into()))
    }
}

/// Returns the text to print, or the exit status of a predicate.
fn run(cmd: Command) -> Result<Result<String, u8>, Failure> {
    let out = match cmd {
        Command::Quorem { m, f } => {
            let (m, f) = (read(&m)?, read(&f)?);
            let (q, r) = division::quo_rem(&m, &f)?;
            format!("# quotient\n{}# remainder\n{}", emit_pmat(&q), emit_pmat(&r))
        }
        Command::Residual { m, p, f } => {
            let (m, p, f) = (read(&m)?, read(&p)?, read(&f)?);
            emit_pmat(&division::residual(&m, &p, &f)?)
        }
        Command::Relations { m, f, shift, assume_hermite, verify } => {
            let (m, f) = (read(&m)?, read(&f)?);
            let s = shift_for(&shift, f.rows())?;
            relations::set_self_check(verify);
            let p = if assume_hermite {
                relations::relations_mod_hermite_reducing(&m, &f, &s)?
            } else {
                relations::relation_basis(&m, &f, &s)?
            };
            let p = if verify { verified(p, &m, &f, &s)? } else { p };
            emit_pmat(&p)
        }
        Command::Approx { g, order, shift } => {
            let g = read(&g)?;
            let tau = parse_shift(&order)
                .map_err(|e| Failure::Shape(format!("--order: {e}")))?
                .into_iter()
                .map(|t| usize::try_from(t).map_err(|_| Failure::Shape("--order entries must be nonnegative".into())))
                .collect::<Result<Vec<_>, _>>()?;
            let s = shift_for(&shift, g.rows())?;
            emit_pmat(&approx::approximant_basis_popov(&g, &tau, &s)?.0)
        }
        Command::Popov { m, shift, verify } => {
            let m = read(&m)?;
            let s = shift_for(&shift, m.rows())?;
            relations::set_self_check(verify);
            let p = relations::popov_form(&m, &s)?;
            let p = if verify {
                verified(p, &m, &PolyMat::identity(m.field(), m.rows()), &s)?
            } else {
                p
            };
            emit_pmat(&p)
        }
        Command::Hermite { m } => emit_pmat(&hermite::hermite_form(&read(&m)?)?),
        Command::Check { popov, hermite, reduced, shift } => {
            let holds = if let Some(path) = popov {
                let p = read(&path)?;
                p.is_popov(&shift_for(&shift, p.cols())?)
            } else if let Some(path) = hermite {
                read(&path)?.is_hermite()
            } else if let Some(path) = reduced {
                let p = read(&path)?;
                p.is_reduced(&shift_for(&shift, p.cols())?)
            } else {
                unreachable!("clap requires one property")
            };
            return Ok(Err(if holds { 0 } else { 1 }));
        }
    };
    Ok(Ok(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(code)) => ExitCode::from(code),
        Err(Failure::Shape(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
