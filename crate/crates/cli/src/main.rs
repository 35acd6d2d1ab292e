use clap::{Args, Parser, Subcommand, ValueEnum};
use fastsyrk::{BinaryField, ComplexField, Error, PrimeField, QuadExtField, RecursionPolicy};
use std::path::PathBuf;
use std::process::ExitCode;

mod bench;
mod commands;
mod verify;

#[derive(Parser)]
#[command(name = "fastsyrk", version, about = "Fast symmetric products A*A^T over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fast products against classical ones on random inputs.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        rec: RecArgs,
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Columns of A (defaults to --n).
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scalars for the accumulating check (random when absent).
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Operation counts: the full table, or one size measured and modeled.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, conflicts_with_all = ["n", "rec"])]
        table5: bool,
        #[arg(long, required_unless_present = "table5")]
        n: Option<u64>,
        #[arg(long, required_unless_present = "table5")]
        rec: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV without the aligned layout (the table is always CSV).
        #[arg(long)]
        csv: bool,
    },
    /// Time classical and fast variants over powers of two up to --n.
    Bench {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        rec: RecArgs,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        start: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Read A from a file and write Low(A*A^T).
    Syrk {
        input: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        rec: RecArgs,
        /// Write the full symmetric matrix.
        #[arg(long)]
        mirror: bool,
        /// Block-diagonal scaling file (`S d` / `T beta gamma` lines).
        #[arg(long)]
        scaling: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write k as a sum of two squares modulo a prime.
    Sos {
        #[arg(long)]
        prime: u64,
        k: u64,
    },
    /// Factor diag(alpha, beta) as Y*Y^T for two non-squares.
    Nrsyf {
        #[arg(long)]
        prime: u64,
        alpha: u64,
        beta: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    /// Prime field F_p.
    Fp,
    /// Quadratic extension F_{p^2}.
    Fp2,
    /// Binary field GF(2^k).
    Gf2k,
    /// Double-precision complex numbers.
    Complex,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, value_enum, default_value = "fp")]
    field: FieldKind,
    #[arg(long, default_value_t = 131071)]
    prime: u64,
    /// Extension degree for gf2k.
    #[arg(long, default_value_t = 8)]
    k: u32,
}

#[derive(Args)]
struct RecArgs {
    /// Smallest dimension that is still split.
    #[arg(long, default_value_t = 64)]
    threshold: usize,
    /// Maximum recursion levels (unbounded when absent).
    #[arg(long)]
    rec: Option<usize>,
}

impl RecArgs {
    fn policy(&self) -> Result<RecursionPolicy, Error> {
        RecursionPolicy::new(self.threshold, self.rec)
    }
}

enum AnyField {
    Fp(PrimeField),
    Fp2(QuadExtField),
    Gf2k(BinaryField),
    Complex(ComplexField),
}

impl FieldArgs {
    fn build(&self) -> Result<AnyField, Error> {
        Ok(match self.field {
            FieldKind::Fp => AnyField::Fp(PrimeField::new(self.prime)?),
            FieldKind::Fp2 => AnyField::Fp2(QuadExtField::new(self.prime)?),
            FieldKind::Gf2k => AnyField::Gf2k(BinaryField::new(self.k)?),
            FieldKind::Complex => AnyField::Complex(ComplexField),
        })
    }
}

/// Failure of a command: usage/IO problems exit with 2, failed
/// verification with 1.
pub enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            field,
            rec,
            n,
            cols,
            seed,
            alpha,
            beta,
        } => {
            let cfg = verify::Config {
                policy: rec.policy()?,
                n,
                k: cols.unwrap_or(n),
                seed,
                alpha,
                beta,
            };
            let ok = match field.build()? {
                AnyField::Fp(f) => verify::run_prime(&f, &cfg)?,
                AnyField::Fp2(f) => verify::run_quad(&f, &cfg)?,
                AnyField::Gf2k(f) => verify::run_binary(&f, &cfg)?,
                AnyField::Complex(_) => verify::run_complex(&cfg)?,
            };
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Count {
            field,
            table5,
            n,
            rec,
            seed,
            csv,
        } => {
            if table5 {
                print!("{}", fastsyrk::table5_csv());
                return Ok(());
            }
            let (n, rec) = (n.expect("required by clap"), rec.expect("required by clap"));
            match field.build()? {
                AnyField::Fp(f) => commands::count(f, n, rec, seed, csv),
                AnyField::Fp2(f) => commands::count(f, n, rec, seed, csv),
                AnyField::Gf2k(f) => commands::count(f, n, rec, seed, csv),
                AnyField::Complex(f) => commands::count(f, n, rec, seed, csv),
            }
        }
        Command::Bench {
            field,
            rec,
            n,
            start,
            seed,
            csv,
        } => {
            let policy = rec.policy()?;
            let cfg = bench::Config {
                start,
                max: n,
                seed,
                csv,
            };
            match field.build()? {
                AnyField::Fp(f) => bench::run(f, &policy, &cfg),
                AnyField::Fp2(f) => bench::run(f, &policy, &cfg),
                AnyField::Gf2k(f) => bench::run(f, &policy, &cfg),
                AnyField::Complex(f) => bench::run(f, &policy, &cfg),
            }
        }
        Command::Syrk {
            input,
            field,
            rec,
            mirror,
            scaling,
            output,
        } => {
            let job = commands::SyrkJob {
                input,
                policy: rec.policy()?,
                mirror,
                scaling,
                output,
            };
            match field.build()? {
                AnyField::Fp(f) => commands::syrk_scalable(f, &job),
                AnyField::Fp2(f) => commands::syrk_scalable(f, &job),
                AnyField::Gf2k(f) => commands::syrk_scalable(f, &job),
                AnyField::Complex(f) => commands::syrk_plain(f, &job),
            }
        }
        Command::Sos { prime, k } => {
            let f = PrimeField::new(prime)?;
            let (a, b) = f.sos(k)?;
            println!("{a} {b}");
            Ok(())
        }
        Command::Nrsyf { prime, alpha, beta } => {
            let f = PrimeField::new(prime)?;
            let y = f.nrsyf_mod(alpha, beta)?;
            for row in y {
                println!("{} {}", row[0], row[1]);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
