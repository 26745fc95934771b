//! `bijectlab`: counts, enumerates, converts and verifies Barrucand, Franel
//! and Hanna objects from the command line.
//!
//! stdout carries data only; diagnostics go to stderr. Exit status is 0 on
//! success, 1 when a check or an input line fails, 2 on usage errors.

mod biject;
mod count;
mod oeis;
mod sample;
mod verify;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bijectlab_core::verifier::{Family, Statistic, Suite};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bijectlab",
    version,
    about = "Exact counting and bijections for Barrucand, Franel and Hanna objects"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count a family at n, optionally split by statistics.
    Count {
        /// deals:barrucand|deals:franel|deals:hanna|matrices:abelian|matrices:offset:<a>|matrices:hanna|paths
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Comma-separated statistics to group by.
        #[arg(long, value_delimiter = ',')]
        by: Vec<Statistic>,
        /// Evaluate the closed form instead of enumerating.
        #[arg(long)]
        closed_form: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print every member of a family at n, one JSON object per line.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Stop after this many members.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Convert JSON objects read line by line from stdin.
    Biject {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "default")]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Draw seeded uniform samples of Hanna or abelian matrices.
    Sample {
        #[arg(long, default_value = "matrices:hanna")]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Also convert each sample to a deal and a path and back.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Compare local sequence prefixes with OEIS b-files.
    Oeis {
        /// A000172, A005259 or A084771; all three when omitted.
        #[arg(long)]
        id: Vec<String>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Download b-files missing from the cache.
        #[arg(long)]
        online: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Only check the closed forms against each other.
        #[arg(long)]
        local: bool,
    },
    /// Markdown summary of counts, checks and sequence consistency.
    Report {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Deal,
    Matrix,
    Path,
}

/// Why a command stopped early.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    /// Already reported on stdout/stderr.
    Quiet,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) => f.write_str(m),
            Failure::Quiet => Ok(()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Quiet
        } else {
            Failure::Data(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Count {
            family,
            n,
            by,
            closed_form,
            format,
        } => count::run(&mut out, family, n, &by, closed_form, format),
        Command::Enumerate { family, n, limit } => count::enumerate(&mut out, family, n, limit),
        Command::Biject { from, to } => biject::run(io::stdin().lock(), &mut out, from, to),
        Command::Verify {
            suite,
            n_max,
            format,
        } => verify::run(&mut out, suite, n_max, format),
        Command::Sample {
            family,
            n,
            seed,
            count,
            roundtrip,
        } => sample::run(&mut out, family, n, seed, count, roundtrip),
        Command::Oeis {
            id,
            depth,
            online,
            cache_dir,
            local,
        } => oeis::run(&mut out, &id, depth, online, cache_dir, local),
        Command::Report { n_max } => verify::report(&mut out, n_max),
    };
    let flushed = out.flush().map_err(Failure::from);
    match result.and(flushed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Quiet) => ExitCode::from(1),
    }
}
