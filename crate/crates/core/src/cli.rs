//! Command-line front end. `run` parses argv, writes to the given sinks and
//! returns the process exit code: 0 success, 1 usage or input error,
//! 2 an internal inconsistency (a failed identity or an invalid witness).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::criterion::{classify_range_with, decide, Verdict};
use crate::curve::burnside_search;
use crate::error::Error;
use crate::identities::{Expansions, run_suite};
use crate::lfunction::{central_value, LReport};
use crate::theta::{batch_counts, Q1, Q2, Q3, Q4};

#[derive(Debug, Parser)]
#[command(name = "cubefermat", version, about = "Decide solvability of x³ + y³ = z³ over Q(√d)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the representation-count criterion to Q(√d).
    Decide {
        #[arg(short = 'd', allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        json: bool,
    },
    /// Search Burnside parameters k = p/q up to the given height.
    Search {
        #[arg(short = 'd', allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 50)]
        height: u64,
        #[arg(long)]
        json: bool,
    },
    /// Central value L(E_d, 1) with root number, conductor and error bound.
    Lvalue {
        #[arg(short = 'd', allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        json: bool,
    },
    /// Classify every squarefree 2 ≤ d ≤ max-d, one row per d.
    Table {
        #[arg(long = "max-d")]
        max_d: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        shards: Option<usize>,
    },
    /// Check the Hecke, Shimura and vanishing identities on q-expansions.
    VerifyIdentities {
        #[arg(long, default_value_t = 1000)]
        depth: usize,
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Time the representation-count sieve for all four forms.
    Bench {
        #[arg(short = 'N', long = "n")]
        n: u64,
        #[arg(long)]
        shards: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn default_shards() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn lreport_json(r: &LReport) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    v["value"] = json!(round6(r.value));
    v
}

pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Inconsistent(msg)) => {
            let _ = writeln!(err, "inconsistency: {msg}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Decide { d, json } => {
            let v = decide(d)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&v).expect("verdict serializes"))?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Command::Search { d, height, json } => {
            let found = burnside_search(d, height).map_err(|e| match e {
                Error::InvalidArgument(msg) => Failure::Inconsistent(msg),
                other => other.into(),
            })?;
            match (found, json) {
                (Some(w), true) => writeln!(out, "{}", w.to_json())?,
                (Some(w), false) => writeln!(out, "k = {}: {}", w.k, w.solution)?,
                (None, true) => writeln!(out, "{}", json!({ "d": d, "height": height, "witness": null }))?,
                (None, false) => writeln!(out, "none found at height {height}")?,
            }
        }
        Command::Lvalue { d, json } => {
            let r = central_value(d)?;
            if json {
                writeln!(out, "{}", lreport_json(&r))?;
            } else {
                writeln!(
                    out,
                    "L(E_{}, 1) = {:.6} (computed as d = {}, conductor {}, root number {:+}, {} terms, tail bound {:.1e})",
                    r.d, r.value, r.d_reduced, r.conductor, r.root_number, r.terms_used, r.tail_bound
                )?;
            }
        }
        Command::Table { max_d, format, out: path, shards } => {
            let shards = shards.unwrap_or_else(default_shards).max(1);
            match path {
                Some(p) => {
                    let mut file = BufWriter::new(File::create(&p)?);
                    write_table(max_d, format, shards, &mut file)?;
                    file.flush()?;
                }
                None => write_table(max_d, format, shards, out)?,
            }
        }
        Command::VerifyIdentities { depth, dump, json } => {
            let expansions = Expansions::new(depth);
            if let Some(dir) = dump {
                expansions.dump(&dir)?;
            }
            let results = run_suite(&expansions);
            if json {
                writeln!(out, "{}", serde_json::to_string(&results).expect("results serialize"))?;
            } else {
                for r in &results {
                    let mark = if r.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{mark} {} (to q^{})", r.name, r.depth)?;
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Inconsistent(format!(
                    "{failed} of {} identities failed at depth {depth}",
                    results.len()
                )));
            }
        }
        Command::Bench { n, shards } => {
            let shards = shards.unwrap_or_else(default_shards).max(1);
            let mut forms = Vec::new();
            let start = Instant::now();
            for (name, q) in [("Q1", Q1), ("Q2", Q2), ("Q3", Q3), ("Q4", Q4)] {
                let counts = batch_counts(&q, n, shards)?;
                let total: u64 = counts.iter().map(|&c| c as u64).sum();
                let represented = counts.iter().filter(|&&c| c > 0).count();
                forms.push(json!({ "form": name, "vectors": total, "represented": represented }));
            }
            let secs = start.elapsed().as_secs_f64();
            let doc = json!({
                "n": n,
                "shards": shards,
                "forms": forms,
                "timing": { "seconds": secs, "coefficients_per_second": 4.0 * n as f64 / secs },
            });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(())
}

fn write_table(max_d: u64, format: Format, shards: usize, out: &mut dyn Write) -> Result<(), Failure> {
    let mut io_failure: Option<io::Error> = None;
    let mut keep = |r: io::Result<()>| -> crate::Result<()> {
        r.map_err(|e| {
            let msg = e.to_string();
            io_failure = Some(e);
            Error::InvalidArgument(msg)
        })
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let to_io = |e: csv::Error| io::Error::other(e.to_string());
            w.write_record(["d", "case", "left_count", "right_count", "status"])
                .map_err(to_io)?;
            classify_range_with(max_d, shards, |v: Verdict| {
                keep(
                    w.write_record([
                        v.d_input.to_string(),
                        v.case_used.to_string(),
                        v.counts.0.to_string(),
                        v.counts.1.to_string(),
                        v.status.to_string(),
                    ])
                    .map_err(to_io),
                )
            })?;
            w.flush()?;
        }
        Format::Json => {
            out.write_all(b"[")?;
            let mut first = true;
            classify_range_with(max_d, shards, |v: Verdict| {
                let sep = if first { "\n" } else { ",\n" };
                first = false;
                let row = serde_json::to_string(&v).expect("verdict serializes");
                keep(write!(out, "{sep}{row}"))
            })?;
            out.write_all(b"\n]\n")?;
        }
    }
    Ok(())
}
