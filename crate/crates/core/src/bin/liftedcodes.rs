use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use liftedcodes::code::{format_parity_file, parse_parity_file};
use liftedcodes::config::{Caps, OutputFormat, RunConfig, CAP_ENV};
use liftedcodes::lifted::{
    ground_field, hamming_parity_matrix, non_hamming_refutation, Refutation,
};
use liftedcodes::verify::{verify, Status};
use liftedcodes::{suite, Error};

/// Lifted Hamming codes: construction, complete-regularity checks and decoding.
///
/// Exit codes: 0 all claims pass, 1 a claim failed, 2 invalid input or
/// violated hypothesis, 3 an enumeration cap was hit.
#[derive(Parser)]
#[command(name = "liftedcodes", version)]
struct Cli {
    /// Enumeration caps, e.g. `coset=1e8,vector=1048576,codeword=65536,field=65536`.
    /// A bare number sets the vector and codeword caps. Applied on top of $LIFTEDCODES_CAP.
    #[arg(long, global = true)]
    caps: Option<String>,

    /// Output format.
    #[arg(long, global = true, default_value = "json")]
    format: OutputFormat,

    /// Seed for sampled sweeps and random column-equivalence checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parity-check matrix H_(m,q) of the q-ary Hamming code.
    ///
    /// Text output is the parity file format accepted by `refute`: a header
    /// line `q n rows`, then one row of canonical element integers per line.
    Hamming {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        m: u32,
    },
    /// Lift H_(m,q) to F_(q^r) and check every claim about the result.
    ///
    /// CSV columns: claim,status,detail.
    Verify {
        #[arg(short)]
        q: u64,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        r: u32,
    },
    /// Lift a non-Hamming base code and exhibit the failure of complete regularity.
    ///
    /// FILE holds `q n rows` followed by the rows of a parity-check matrix.
    /// CSV columns: verdict,distance,x,x_prime,distribution_x,distribution_x_prime.
    Refute {
        file: PathBuf,
        #[arg(short)]
        r: u32,
    },
    /// Run the reproduction suite.
    ///
    /// CSV columns: id,criterion,pass,detail,runtime_ms.
    PaperSuite {
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

enum Outcome {
    Pass,
    ClaimFailed,
    Capped,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, outcome)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(match outcome {
                Outcome::Pass => 0,
                Outcome::ClaimFailed => 1,
                Outcome::Capped => 3,
            })
        }
        Err(e) if e.is_cap() => {
            eprintln!("cap exceeded: {e} (raise it with --caps or ${CAP_ENV})");
            ExitCode::from(3)
        }
        Err(Error::Hypothesis(msg)) => {
            eprintln!("hypothesis violated: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn caps(cli: &Cli) -> liftedcodes::Result<Caps> {
    let caps = Caps::from_env()?;
    match &cli.caps {
        Some(spec) => caps.with_overrides(spec),
        None => Ok(caps),
    }
}

fn run(cli: &Cli) -> liftedcodes::Result<(String, Outcome)> {
    let caps = caps(cli)?;
    match &cli.command {
        Command::Hamming { q, m } => {
            let ground = ground_field(*q)?;
            let h = hamming_parity_matrix(&ground, *m)?;
            #[derive(Serialize)]
            struct Report<'a> {
                q: u64,
                m: u32,
                n: usize,
                field: String,
                rows: &'a liftedcodes::matq::MatQ,
            }
            let text = match cli.format {
                OutputFormat::Json => liftedcodes::report::to_json(&Report {
                    q: *q,
                    m: *m,
                    n: h.cols(),
                    field: ground.to_string(),
                    rows: &h,
                }),
                OutputFormat::Csv => h
                    .to_rows()
                    .iter()
                    .map(|row| join(row, ",") + "\n")
                    .collect(),
                OutputFormat::Text => format_parity_file(&h),
            };
            Ok((text, Outcome::Pass))
        }
        Command::Verify { q, m, r } => {
            let mut cfg = RunConfig::new(*q, *m, *r)?;
            cfg.caps = caps;
            cfg.format = cli.format;
            cfg.seed = cli.seed;
            let report = verify(&cfg)?;
            let outcome = if !report.passed() {
                Outcome::ClaimFailed
            } else if report.claims.iter().any(|c| c.status == Status::Skipped) {
                Outcome::Capped
            } else {
                Outcome::Pass
            };
            Ok((report.render(cli.format), outcome))
        }
        Command::Refute { file, r } => {
            let text = std::fs::read_to_string(file)?;
            let h = parse_parity_file(&text)?;
            let refutation = non_hamming_refutation(&h, *r, &caps)?;
            let outcome = if refutation.holds() {
                Outcome::Pass
            } else {
                Outcome::ClaimFailed
            };
            Ok((render_refutation(&refutation, cli.format), outcome))
        }
        Command::PaperSuite { only } => {
            let report = suite::run(only, &caps)?;
            let outcome = if report.passed {
                Outcome::Pass
            } else if report.capped() {
                Outcome::Capped
            } else {
                Outcome::ClaimFailed
            };
            Ok((report.render(cli.format), outcome))
        }
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn render_refutation(rf: &Refutation, format: OutputFormat) -> String {
    let verdict = if rf.regularity.is_regular() {
        "completely regular"
    } else {
        "not completely regular"
    };
    match format {
        OutputFormat::Json => liftedcodes::report::to_json(rf),
        OutputFormat::Csv => {
            let mut out =
                String::from("verdict,distance,x,x_prime,distribution_x,distribution_x_prime\n");
            if let Some(w) = &rf.witness {
                out += &format!(
                    "{verdict},2,{},{},{},{}\n",
                    join(&w.x, " "),
                    join(&w.x_prime, " "),
                    join(&w.distribution_x, " "),
                    join(&w.distribution_x_prime, " ")
                );
            } else {
                out += &format!("{verdict},,,,,\n");
            }
            out
        }
        OutputFormat::Text => {
            let b = &rf.base;
            let mut out = format!(
                "base [{}, {}, {}]_{} code, covering radius {}\nlift to {} : {verdict}\n",
                b.n, b.k, b.min_distance, b.q, b.covering_radius, rf.field
            );
            if let Some(w) = &rf.witness {
                out += &format!(
                    "x  = {:?}  coset distribution {:?}\nx' = {:?}  coset distribution {:?}\n",
                    w.x, w.distribution_x, w.x_prime, w.distribution_x_prime
                );
            }
            out
        }
    }
}
