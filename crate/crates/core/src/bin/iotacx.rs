//! Command-line front end. Exit status: 0 success or true, 1 false or not
//! found, 2 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use iotacx::chain::localized_tower;
use iotacx::cli::{deserialize, run_yn_pipeline, ComplexDocument};
use iotacx::equivalence::{
    iota_k_equivalent, is_equivalent, standard_complex, standard_rep_search, SearchBounds, Sign, StandardParams,
};
use iotacx::group::{sf_member, simplified_sum_params, SignedCnTerm};
use iotacx::involutive::{a0_subcomplex, dual, tensor_iota, tensor_iota_k, Mode, VerifyInvolution};
use iotacx::knots::{box_complex, staircase, torus_alexander, StaircaseSpec};
use iotacx::{Error, Result};

/// Environment variable that caps the number of worker threads.
const THREADS_VAR: &str = "IOTACX_THREADS";

#[derive(Parser)]
#[command(name = "iotacx", version, about = "Involutive chain complexes over F2: construction and local equivalence")]
struct Cli {
    /// Write complexes here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Staircase complex of the torus knot T(P,Q).
    TorusCfk { p: u32, q: u32 },
    /// Staircase complex with the given step lengths.
    Staircase {
        #[arg(required = true)]
        steps: Vec<u32>,
    },
    /// The five-generator box complex for odd N.
    Box { n: u32 },
    /// The standard complex with parameters like `+,-1,+,-2`.
    Standard {
        #[arg(allow_hyphen_values = true, default_value = "")]
        params: String,
    },
    /// Tensor product of two complexes.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        /// Expect knot complexes over F2[U,V].
        #[arg(long)]
        knot: bool,
    },
    /// Dual complex.
    Dual { a: PathBuf },
    /// Alexander-grading-zero subcomplex of a knot complex.
    A0 {
        a: PathBuf,
        /// Surgery framing; only +1 is supported.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        framing: i64,
    },
    /// Cancel every unit differential entry.
    Reduce { a: PathBuf },
    /// Check the involution axioms.
    Verify {
        a: PathBuf,
        #[arg(long)]
        almost: bool,
    },
    /// Decide (almost) local equivalence.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        almost: bool,
    },
    /// Find the standard complex almost locally equivalent to A.
    StandardRep {
        a: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
    },
    /// Parameters of a sum of C(n) terms, written like `+3,-2`.
    SumParams {
        #[arg(allow_hyphen_values = true, required = true)]
        terms: Vec<String>,
    },
    /// Whether parameters lie in the Seifert fibered image.
    SfCheck {
        #[arg(allow_hyphen_values = true, default_value = "")]
        params: String,
    },
    /// Standard parameters and SF verdict for Y_n.
    Yn {
        n: u32,
        #[arg(long)]
        full_check: bool,
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
        #[arg(long)]
        max_weight: Option<u32>,
    },
}

fn read(path: &Path) -> Result<ComplexDocument> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    deserialize(&text)
}

fn read_iota(path: &Path) -> Result<iotacx::involutive::IotaComplex> {
    match read(path)? {
        ComplexDocument::Iota(x) => Ok(x),
        ComplexDocument::Knot(_) => {
            Err(Error::invalid(format!("{} is a knot complex; expected F2[U]", path.display())))
        }
    }
}

fn read_knot(path: &Path) -> Result<iotacx::involutive::IotaKComplex> {
    match read(path)? {
        ComplexDocument::Knot(x) => Ok(x),
        ComplexDocument::Iota(_) => Err(Error::invalid(format!("{} is over F2[U]; expected F2[U,V]", path.display()))),
    }
}

fn emit(out: &Option<PathBuf>, doc: ComplexDocument) -> Result<ExitCode> {
    let text = doc.to_text();
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::invalid(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict(b: bool) -> ExitCode {
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_terms(args: &[String]) -> Result<Vec<SignedCnTerm>> {
    let mut out = Vec::new();
    for tok in args.iter().flat_map(|a| a.split(',')).map(str::trim).filter(|t| !t.is_empty()) {
        let (sign, rest) = match tok.as_bytes()[0] {
            b'+' => (Sign::Plus, &tok[1..]),
            b'-' => (Sign::Minus, &tok[1..]),
            _ => (Sign::Plus, tok),
        };
        let n: u32 = rest.parse().map_err(|_| Error::invalid(format!("bad term {tok:?}; expected like +3 or -2")))?;
        out.push(SignedCnTerm::new(sign, n)?);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = &cli.output;
    match cli.command {
        Command::TorusCfk { p, q } => {
            let poly = torus_alexander(p, q)?;
            emit(out, ComplexDocument::Knot(staircase(&StaircaseSpec::from_polynomial(&poly)?)))
        }
        Command::Staircase { steps } => emit(out, ComplexDocument::Knot(staircase(&StaircaseSpec::new(steps)?))),
        Command::Box { n } => emit(out, ComplexDocument::Knot(box_complex(n)?)),
        Command::Standard { params } => {
            let p: StandardParams = params.parse()?;
            emit(out, ComplexDocument::Iota(standard_complex(&p)))
        }
        Command::Tensor { a, b, knot } => {
            if knot {
                emit(out, ComplexDocument::Knot(tensor_iota_k(&read_knot(&a)?, &read_knot(&b)?)))
            } else {
                emit(out, ComplexDocument::Iota(tensor_iota(&read_iota(&a)?, &read_iota(&b)?)))
            }
        }
        Command::Dual { a } => match read(&a)? {
            ComplexDocument::Knot(x) => emit(out, ComplexDocument::Knot(dual(&x))),
            ComplexDocument::Iota(x) => emit(out, ComplexDocument::Iota(dual(&x))),
        },
        Command::A0 { a, framing } => {
            if framing != 1 {
                return Err(Error::OutOfScope(format!("only +1 surgery is supported, got framing {framing}")));
            }
            emit(out, ComplexDocument::Iota(a0_subcomplex(&read_knot(&a)?)?))
        }
        Command::Reduce { a } => match read(&a)? {
            ComplexDocument::Knot(x) => emit(out, ComplexDocument::Knot(x.cancel_reduce())),
            ComplexDocument::Iota(x) => emit(out, ComplexDocument::Iota(x.cancel_reduce())),
        },
        Command::Verify { a, almost } => {
            let mode = if almost { Mode::Almost } else { Mode::Strict };
            let result = match read(&a)? {
                ComplexDocument::Knot(x) => x.verify_involution(mode).map(|_| ()).map_err(|f| f.to_string()),
                ComplexDocument::Iota(x) => {
                    let rank = localized_tower(x.complex()).rank;
                    if rank != 1 {
                        Err(format!("localized homology has rank {rank}, not 1"))
                    } else {
                        x.verify_involution(mode).map(|_| ()).map_err(|f| f.to_string())
                    }
                }
            };
            match result {
                Ok(()) => {
                    println!("ok ({mode})");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("fails: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Equiv { a, b, almost } => {
            let found = match (read(&a)?, read(&b)?) {
                (ComplexDocument::Knot(x), ComplexDocument::Knot(y)) => {
                    if almost {
                        log::warn!("--almost is ignored for knot complexes");
                    }
                    iota_k_equivalent(&x, &y).is_some()
                }
                (ComplexDocument::Iota(x), ComplexDocument::Iota(y)) => {
                    let mode = if almost { Mode::Almost } else { Mode::Strict };
                    is_equivalent(&x, &y, mode).is_some()
                }
                _ => return Err(Error::invalid("both complexes must be over the same ring")),
            };
            println!("{}", if found { "equivalent" } else { "not equivalent" });
            Ok(verdict(found))
        }
        Command::StandardRep { a, max_steps, max_weight } => {
            let x = read_iota(&a)?;
            match standard_rep_search(&x, SearchBounds::new(max_steps, max_weight)?) {
                Some(p) => {
                    println!("({p})");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not found within --max-steps {max_steps} --max-weight {max_weight}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::SumParams { terms } => {
            println!("({})", simplified_sum_params(&parse_terms(&terms)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::SfCheck { params } => {
            let p: StandardParams = params.parse()?;
            let sf = sf_member(&p);
            println!("{sf}");
            Ok(verdict(sf))
        }
        Command::Yn { n, full_check, max_steps, max_weight } => {
            let bounds = SearchBounds::new(max_steps, max_weight.unwrap_or(n))?;
            let r = run_yn_pipeline(n, bounds, full_check)?;
            println!("params ({})", r.params);
            println!("sf {}", r.sf);
            if let Some(ok) = r.reduction_certified {
                println!("reduction certified {ok}");
                return Ok(verdict(ok));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = std::env::var(THREADS_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
