use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pgst_core::oracle::{brute_force_relations, verify_relation};
use pgst_core::report::{format_significant, ReportRecord, SpectrumListing, CSV_HEADER};
use pgst_core::walk::{default_step, TransferWalk};
use pgst_core::{decide_pgst, PathSpec, PgstError, PgstVerdict, Precision};

/// Times and fidelities are printed round-trip safe.
const TIME_DIGITS: usize = 17;

#[derive(Parser)]
#[command(name = "pgst", version, about = "Pretty good state transfer on paths: exact decisions and walk simulation")]
#[command(after_help = "The working precision of the simulator is read from PGST_PRECISION_BITS (default 128).")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide transfer between vertices a and b of P_n.
    Decide {
        n: usize,
        a: usize,
        b: usize,
        /// Print a single JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide every pair in scope for n_min..=n_max.
    Scan {
        n_min: usize,
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Pairs::Ends)]
        pairs: Pairs,
        /// Also write the CSV table to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Print JSON lines instead of CSV.
        #[arg(long)]
        json: bool,
        /// Largest n accepted.
        #[arg(long, default_value_t = 128)]
        cap: usize,
    },
    /// Search for the best transfer time from a to b on [0, t_max].
    Simulate {
        n: usize,
        a: usize,
        b: usize,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        /// Grid spacing; defaults to min(0.01, pi / (8 theta_1)).
        #[arg(long)]
        step: Option<f64>,
        /// Bracket-shrinking rounds around the best grid point.
        #[arg(long, default_value_t = 60)]
        refine: usize,
        /// Write the grid curve (t,fidelity) to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List eigenvalues and per-vertex eigenvalue supports of P_n.
    Spectrum {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive bounded relation search.
    #[command(hide = true)]
    Oracle {
        n: usize,
        a: usize,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pairs {
    /// The pair (1, n).
    Ends,
    /// Every (a, n + 1 - a) with a <= n + 1 - a.
    AllCospectral,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<PgstError> for Failure {
    fn from(e: PgstError) -> Self {
        match e {
            PgstError::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(format!("i/o error: {e}"))
    }
}

type CliResult = Result<(), Failure>;

/// Fail-stop check of any witness before it is shown.
fn record_of(spec: &PathSpec, verdict: &PgstVerdict) -> Result<ReportRecord, Failure> {
    if let Some(w) = &verdict.witness {
        if !verify_relation(spec, verdict.a, &w.coefficients)? {
            return Err(Failure::Internal(format!(
                "witness for n = {}, a = {} failed re-verification",
                verdict.n, verdict.a
            )));
        }
    }
    Ok(ReportRecord::from_verdict(verdict))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn decide(n: usize, a: usize, b: usize, json: bool, out: &mut impl Write) -> CliResult {
    let spec = PathSpec::new(n)?;
    let verdict = decide_pgst(&spec, a, b)?;
    let record = record_of(&spec, &verdict)?;
    if json {
        writeln!(out, "{}", record.to_json_line())?;
        return Ok(());
    }
    writeln!(out, "P{n}: {a} -> {b}: {} ({})", record.verdict.as_str(), record.reason.as_str())?;
    if !verdict.parities.is_empty() {
        let parities: Vec<u8> = verdict.parities.iter().map(|p| p.parity).collect();
        writeln!(
            out,
            "relation lattice rank {}, basis parities [{}]",
            parities.len(),
            join(&parities)
        )?;
    }
    if let Some(w) = &record.witness {
        writeln!(out, "witness over j = [{}]: ({})", join(&w.support), join(&w.coefficients))?;
    }
    Ok(())
}

fn scan(
    n_min: usize,
    n_max: usize,
    pairs: Pairs,
    csv: Option<&Path>,
    json: bool,
    cap: usize,
    out: &mut impl Write,
) -> CliResult {
    if n_min < 2 || n_min > n_max || n_max > cap {
        return Err(Failure::Usage(format!(
            "need 2 <= n_min <= n_max <= {cap}, got {n_min}..{n_max}"
        )));
    }
    let mut records = Vec::new();
    for n in n_min..=n_max {
        let spec = PathSpec::new(n)?;
        let firsts = match pairs {
            Pairs::Ends => 1..=1,
            Pairs::AllCospectral => 1..=(n + 1) / 2,
        };
        for a in firsts {
            records.push(record_of(&spec, &decide_pgst(&spec, a, n + 1 - a)?)?);
        }
    }
    let mut table = String::from(CSV_HEADER);
    table.push('\n');
    for r in &records {
        table.push_str(&r.to_csv_row());
        table.push('\n');
    }
    if let Some(path) = csv {
        std::fs::write(path, &table)?;
    }
    if json {
        for r in &records {
            writeln!(out, "{}", r.to_json_line())?;
        }
    } else {
        out.write_all(table.as_bytes())?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    n: usize,
    a: usize,
    b: usize,
    t_max: f64,
    step: Option<f64>,
    refine: usize,
    csv: Option<&Path>,
    json: bool,
    out: &mut impl Write,
) -> CliResult {
    let precision = Precision::from_env()?;
    let spec = PathSpec::new(n)?;
    let step = step.unwrap_or_else(|| default_step(&spec));
    let mut walk = TransferWalk::new(&spec, a, b, precision)?;
    let result = match csv {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            writeln!(file, "t,fidelity")?;
            let mut write_error = None;
            let result = walk.scan(t_max, step, refine, |s| {
                if write_error.is_none() {
                    let line = format!(
                        "{},{}",
                        format_significant(s.t, TIME_DIGITS),
                        format_significant(s.fidelity, TIME_DIGITS)
                    );
                    if let Err(e) = writeln!(file, "{line}") {
                        write_error = Some(e);
                    }
                }
            })?;
            if let Some(e) = write_error {
                return Err(e.into());
            }
            file.flush()?;
            result
        }
        None => walk.scan(t_max, step, refine, |_| {})?,
    };
    if json {
        let value = serde_json::json!({
            "n": n,
            "a": a,
            "b": b,
            "precision_bits": precision.bits(),
            "scan": result,
        });
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "P{n}: {a} -> {b} on [0, {}] step {}", t_max, step)?;
        writeln!(out, "best t = {}", format_significant(result.best_t, TIME_DIGITS))?;
        writeln!(out, "best fidelity = {}", format_significant(result.best_fidelity, TIME_DIGITS))?;
        writeln!(out, "samples evaluated = {}", result.samples_evaluated)?;
    }
    Ok(())
}

fn spectrum(n: usize, json: bool, out: &mut impl Write) -> CliResult {
    let listing = SpectrumListing::new(&PathSpec::new(n)?);
    if json {
        writeln!(out, "{}", serde_json::to_string(&listing).expect("listing serializes"))?;
    } else {
        out.write_all(listing.to_text().as_bytes())?;
    }
    Ok(())
}

fn oracle(n: usize, a: usize, bound: u32, out: &mut impl Write) -> CliResult {
    let spec = PathSpec::new(n)?;
    let relations = brute_force_relations(&spec, a, bound)?;
    if let Some(r) = relations.first() {
        writeln!(out, "support j = [{}]", join(&r.support))?;
    }
    for r in &relations {
        if !r.verified {
            return Err(Failure::Internal(format!("relation ({}) failed verification", join(&r.vector))));
        }
        writeln!(out, "({})", join(&r.vector))?;
    }
    writeln!(out, "{} relations with entries in [-{bound}, {bound}]", relations.len())?;
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Decide { n, a, b, json } => decide(n, a, b, json, &mut out)?,
        Command::Scan {
            n_min,
            n_max,
            pairs,
            csv,
            json,
            cap,
        } => scan(n_min, n_max, pairs, csv.as_deref(), json, cap, &mut out)?,
        Command::Simulate {
            n,
            a,
            b,
            t_max,
            step,
            refine,
            csv,
            json,
        } => simulate(n, a, b, t_max, step, refine, csv.as_deref(), json, &mut out)?,
        Command::Spectrum { n, json } => spectrum(n, json, &mut out)?,
        Command::Oracle { n, a, bound } => oracle(n, a, bound, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
