use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spwave_core::graphs::{count_connected, word_to_graph};
use spwave_core::partitions::{invariant_dimension, multiplicity};
use spwave_core::tensors::build_invariant;
use spwave_core::verify::{certify_basis, CertifyOptions, DEFAULT_BUDGET};
use spwave_core::words::{enumerate_balanced_words, parse_letters};
use spwave_core::{Partition, Verdict, WaveGraph};

/// Symplectic wave graphs and the invariant tensors they index.
#[derive(Parser)]
#[command(name = "spwave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the invariant subspace of the m-th tensor power.
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Count connected wave graphs only.
        #[arg(long)]
        connected: bool,
    },
    /// List every wave graph with its lattice word.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Invariant tensor of the graph for a word such as "1 2 -2 -1".
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Number of lattice words of length m ending at shape lambda.
    Multiplicity {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        lambda: String,
    },
    /// Certify the graph tensors as a basis of the invariants.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also compute the kernel dimension directly.
        #[arg(long)]
        brute_force: bool,
        /// Column limit for the brute-force kernel.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
struct CountOut {
    count: u128,
}

#[derive(Serialize)]
struct EnumerateLine<'a> {
    word: String,
    graph: &'a WaveGraph,
}

#[derive(Serialize)]
struct MultiplicityOut {
    m: usize,
    n: usize,
    lambda: Partition,
    multiplicity: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut out = BufWriter::new(io::stdout().lock());
    match command {
        Command::Count { m, n, connected } => {
            let n = n as usize;
            let count = if connected {
                count_connected(m, n)?
            } else {
                invariant_dimension(m, n)?
            };
            serde_json::to_writer(&mut out, &CountOut { count })?;
            writeln!(out)?;
        }
        Command::Enumerate { m, n, format } => {
            let n = n as usize;
            for w in enumerate_balanced_words(m, n) {
                let graph = word_to_graph(w.letters(), n)?;
                match format {
                    Format::Json => {
                        let line = EnumerateLine {
                            word: w.to_string(),
                            graph: &graph,
                        };
                        serde_json::to_writer(&mut out, &line)?;
                        writeln!(out)?;
                    }
                    Format::Text => writeln!(out, "{w}\t{graph}")?,
                }
            }
        }
        Command::Tensor { word, n } => {
            let n = n as usize;
            let letters = parse_letters(&word)?;
            let graph = word_to_graph(&letters, n)?;
            let t = build_invariant(&graph, n)?;
            serde_json::to_writer(&mut out, &t.to_document(n))?;
            writeln!(out)?;
        }
        Command::Multiplicity { m, n, lambda } => {
            let n = n as usize;
            let lambda: Partition = lambda.parse()?;
            let multiplicity = multiplicity(&lambda, m, n)?;
            serde_json::to_writer(
                &mut out,
                &MultiplicityOut {
                    m,
                    n,
                    lambda,
                    multiplicity,
                },
            )?;
            writeln!(out)?;
        }
        Command::Verify {
            m,
            n,
            brute_force,
            budget,
        } => {
            let report = certify_basis(
                m,
                n as usize,
                &CertifyOptions {
                    brute_force,
                    budget,
                },
            )?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            out.flush()?;
            for f in &report.failures {
                eprintln!("{f}");
            }
            if report.verdict == Verdict::Fail {
                return Ok(ExitCode::from(1));
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
