//! The `msieve` command line. [`run`] takes the argument vector and two
//! writers and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | integrity failure (an exact division did not divide, an identity failed) |
//! | 3 | invalid input, or a request above an enumeration ceiling |
//! | 4 | sieve and oracle disagree |

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use multiset_sieve::apps;
use multiset_sieve::brute::{self, inclusion_exclusion_distinct, INCLUSION_EXCLUSION_MAX_K};
use multiset_sieve::identities;
use multiset_sieve::io::{load_set, save_canonical};
use multiset_sieve::sieve::{self, sieve_term_count};
use multiset_sieve::{Error, ExplicitSet, FieldSpec, SymmetricSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTEGRITY: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "msieve", version, about = "Exact restricted multiset counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count multisets of an explicit symmetric set read from JSON.
    Count(CountArgs),
    /// Partitions of a field element into k nonzero parts.
    Ffpartitions(FfArgs),
    /// Necklaces of length n over q colours.
    Necklaces {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Enumerate rotation-minimal strings instead of using the formula.
        #[arg(long)]
        brute: bool,
    },
    /// Zero-sum multisets over Z/nZ with multiplicities below q.
    Zerosum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Only multisets of this size.
        #[arg(long)]
        k: Option<u64>,
        /// Enumerate multiplicity vectors instead of using the formula.
        #[arg(long)]
        brute: bool,
    },
    /// Run the identity suites and print a summary table.
    Identities {
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
    /// Compare inclusion-exclusion and the sieve on the distinct-tuple count of D^k.
    Bench {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ground_size: usize,
    },
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    input: PathBuf,
    /// Every multiplicity at most J.
    #[arg(long, value_name = "J", group = "query")]
    bound: Option<usize>,
    /// Exactly D distinct elements.
    #[arg(long, value_name = "D", group = "query")]
    distinct: Option<usize>,
    /// Tuples with pairwise distinct coordinates.
    #[arg(long, group = "query")]
    all_distinct: bool,
    #[arg(long)]
    json: bool,
    /// Also count by enumeration and report MATCH or MISMATCH.
    #[arg(long)]
    compare_oracle: bool,
    /// Write the loaded set in canonical form to PATH.
    #[arg(long, value_name = "PATH")]
    dump_canonical: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Sieve,
    Brute,
    All,
}

#[derive(Args, Debug)]
struct FfArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    k: usize,
    /// Comma-separated residues, lowest degree first. Omit for a table over F_q.
    #[arg(long)]
    b: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
}

/// What `count` computes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Query {
    All,
    Bounded(usize),
    Distinct(usize),
    AllDistinct,
}

/// The brute-force side of `--compare-oracle`. Replaceable so that tests can
/// inject a faulty oracle.
pub type Oracle = dyn Fn(&ExplicitSet, Query) -> multiset_sieve::Result<BigInt>;

pub fn brute_oracle(x: &ExplicitSet, q: Query) -> multiset_sieve::Result<BigInt> {
    match q {
        Query::All => brute::brute_count_multisets(x),
        Query::Bounded(j) => brute::brute_count_bounded(x, j),
        Query::Distinct(d) => brute::brute_count_distinct(x, d),
        Query::AllDistinct => brute::brute_count_distinct_tuples(x),
    }
}

fn sieve_count(x: &SymmetricSet, q: Query) -> multiset_sieve::Result<BigInt> {
    match q {
        Query::All => sieve::count_multisets(x),
        Query::Bounded(j) => sieve::count_multisets_bounded(x, j),
        Query::Distinct(d) => sieve::count_multisets_distinct(x, d),
        Query::AllDistinct => sieve::count_distinct_tuples(x),
    }
}

/// Either a library error or an explicit exit code (with the message already
/// written).
enum Failure {
    Lib(Error),
    Exit(i32),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::InvalidInput(format!("output error: {e}")))
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Integrity(_) | Error::BeyondTruncation { .. } => EXIT_INTEGRITY,
        Error::InvalidInput(_) | Error::Refused(_) => EXIT_INPUT,
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_oracle(args, out, err, &brute_oracle)
}

pub fn run_with_oracle<I, T>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    oracle: &Oracle,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(a, out, oracle),
        Command::Ffpartitions(a) => cmd_ffpartitions(a, out, err),
        Command::Necklaces { n, q, brute } => cmd_necklaces(n, q, brute, out),
        Command::Zerosum { n, q, k, brute } => cmd_zerosum(n, q, k, brute, out, err),
        Command::Identities { k_max } => cmd_identities(k_max, out),
        Command::Bench { k, ground_size } => cmd_bench(k, ground_size, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Exit(code)) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Serialize)]
struct CountJson {
    count: String,
    k: usize,
    terms: usize,
}

fn cmd_count(a: CountArgs, out: &mut dyn Write, oracle: &Oracle) -> CmdResult {
    let x = load_set(&a.input)?;
    if let Some(path) = &a.dump_canonical {
        save_canonical(&x, path)?;
    }
    let query = match (a.bound, a.distinct, a.all_distinct) {
        (Some(j), _, _) => Query::Bounded(j),
        (_, Some(d), _) => Query::Distinct(d),
        (_, _, true) => Query::AllDistinct,
        _ => Query::All,
    };
    let k = x.k();
    let set = SymmetricSet::Explicit(x);
    let count = sieve_count(&set, query)?;
    if a.compare_oracle {
        let brute = oracle(set.as_explicit()?, query)?;
        writeln!(out, "sieve {count}")?;
        writeln!(out, "brute {brute}")?;
        if brute == count {
            writeln!(out, "MATCH")?;
        } else {
            writeln!(out, "MISMATCH")?;
            return Err(Failure::Exit(EXIT_MISMATCH));
        }
    } else if a.json {
        let j = CountJson { count: count.to_string(), k, terms: sieve_term_count(k) };
        writeln!(out, "{}", serde_json::to_string(&j).expect("plain struct serializes"))?;
    } else {
        writeln!(out, "{count}")?;
    }
    Ok(())
}

fn ff_values(
    field: &FieldSpec,
    k: usize,
    b: &multiset_sieve::FqElement,
    method: Method,
) -> multiset_sieve::Result<Vec<BigInt>> {
    let one = |m: Method| match m {
        Method::Closed => apps::partition_count_closed(field, k, b),
        Method::Sieve => apps::partition_count_sieve(field, k, b),
        _ => apps::partition_count_brute(field, k, b),
    };
    match method {
        Method::All => [Method::Closed, Method::Sieve, Method::Brute].into_iter().map(one).collect(),
        m => Ok(vec![one(m)?]),
    }
}

fn cmd_ffpartitions(a: FfArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let field = FieldSpec::new(a.p, a.a)?;
    let mut mismatch = false;
    match &a.b {
        Some(text) => {
            let b = field.parse_element(text)?;
            let values = ff_values(&field, a.k, &b, a.method)?;
            for v in &values {
                writeln!(out, "{v}")?;
            }
            mismatch = values.windows(2).any(|w| w[0] != w[1]);
        }
        None => {
            let header = match a.method {
                Method::All => "b\tclosed\tsieve\tbrute",
                Method::Closed => "b\tclosed",
                Method::Sieve => "b\tsieve",
                Method::Brute => "b\tbrute",
            };
            writeln!(out, "{header}")?;
            for b in field.enumerate_elements() {
                let values = ff_values(&field, a.k, &b, a.method)?;
                mismatch |= values.windows(2).any(|w| w[0] != w[1]);
                let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{b}\t{}", cells.join("\t"))?;
            }
        }
    }
    if mismatch {
        writeln!(err, "MISMATCH between methods")?;
        return Err(Failure::Exit(EXIT_MISMATCH));
    }
    Ok(())
}

fn cmd_necklaces(n: u64, q: u64, brute: bool, out: &mut dyn Write) -> CmdResult {
    let v = if brute { apps::necklace_count_brute(n, q)? } else { apps::necklace_count(n, q)? };
    writeln!(out, "{v}")?;
    Ok(())
}

fn cmd_zerosum(
    n: u64,
    q: u64,
    k: Option<u64>,
    brute: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let v = match (k, brute) {
        (Some(k), false) => apps::zerosum_bounded_count(n, q, k)?,
        (Some(k), true) => apps::zerosum_bounded_brute(n, q, k)?,
        (None, true) => apps::zerosum_brute(n, q)?,
        (None, false) => {
            let total = apps::zerosum_total(n, q)?;
            if !total.coprime {
                writeln!(
                    err,
                    "warning: gcd(n, q) != 1, so this count need not equal the necklace count"
                )?;
            }
            total.count
        }
    };
    writeln!(out, "{v}")?;
    Ok(())
}

fn cmd_identities(k_max: usize, out: &mut dyn Write) -> CmdResult {
    let reports = identities::run_all(k_max)?;
    let width = reports.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
    writeln!(out, "{:<width$}  {:>6}  {:>8}  status", "suite", "cases", "failures")?;
    let mut failed = false;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let pad = width - r.name.chars().count();
        writeln!(out, "{}{}  {:>6}  {:>8}  {status}", r.name, " ".repeat(pad), r.cases, r.failures.len())?;
        for f in &r.failures {
            writeln!(out, "    {f}")?;
        }
        failed |= !r.passed();
    }
    if failed {
        return Err(Failure::Exit(EXIT_INTEGRITY));
    }
    Ok(())
}

fn cmd_bench(k: usize, m: usize, out: &mut dyn Write) -> CmdResult {
    let x = ExplicitSet::full(m, k)?;
    let pairs = k * k.saturating_sub(1) / 2;
    writeln!(out, "k {k}, |D| {m}, |X| {}", x.len())?;

    let start = Instant::now();
    let set = SymmetricSet::Explicit(x.clone());
    let sieve_value = sieve::count_distinct_tuples(&set)?;
    let sieve_time = start.elapsed();
    writeln!(
        out,
        "sieve: {} terms, value {sieve_value}, {:.3} ms",
        sieve_term_count(k),
        sieve_time.as_secs_f64() * 1e3
    )?;

    if k <= INCLUSION_EXCLUSION_MAX_K {
        let start = Instant::now();
        let ie = inclusion_exclusion_distinct(&x)?;
        let ie_time = start.elapsed();
        writeln!(
            out,
            "inclusion-exclusion: {} terms, value {}, {:.3} ms",
            ie.terms,
            ie.value,
            ie_time.as_secs_f64() * 1e3
        )?;
        if ie.value != sieve_value {
            return Err(Error::Integrity(format!(
                "inclusion-exclusion gives {}, sieve gives {sieve_value}",
                ie.value
            ))
            .into());
        }
    } else {
        writeln!(out, "inclusion-exclusion: 2^{pairs} terms, skipped")?;
    }
    Ok(())
}
