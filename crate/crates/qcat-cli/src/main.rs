//! Command-line frontend for the q-congruence verifiers.
//!
//! Three subcommands cover the library surface:
//!
//! * `verify` runs one or more claim verifiers over a range of indices and
//!   emits one report per `(claim, n)` pair, as text lines or as a JSON
//!   array. The exit status encodes the outcome: `0` when every non-skipped
//!   claim holds, `1` when any claim is falsified, `2` on usage errors.
//! * `show` prints one of the basic q-objects (cyclotomic polynomial,
//!   q-binomial, q-Catalan, q-integer) in the canonical textual grammar.
//! * `cache` manages the persistent cyclotomic cache: `warm` precomputes and
//!   persists an initial segment, `stat` reports entry count and file size,
//!   `clear` removes the cache file.
//!
//! The cache directory comes from `--cache-dir` when given, falling back to
//! the `QCAT_CACHE_DIR` environment variable. Range verification runs on a
//! rayon pool sized by `--parallel`; reports are aggregated in ascending
//! `(n, claim)` order regardless of scheduling, so runs at different
//! parallelism levels print identical reports.

use num::Zero;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcat_core::cyclotomic::{resolve_cache_dir, CACHE_FILE_NAME};
use qcat_core::{
    cyclotomic, global_cache, q_binomial, q_catalan, q_integer, run_claim_range_with,
    verify_claim_with_power, ClaimId, ClaimReport, RangeOptions, RatPoly, Status, VerifyError,
};

/// Maximum number of terms a witness polynomial may show in text mode
/// before it is truncated with an ellipsis and a degree note.
const WITNESS_TEXT_TERMS: usize = 12;

/// Default index range when `--n` is not given (half-open `1..100`).
const DEFAULT_RANGE: (u64, u64) = (1, 99);

#[derive(Parser)]
#[command(
    name = "qcat",
    version,
    about = "Exact verifier for q-binomial and q-Catalan congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify claims over a range of indices and report the outcomes.
    Verify(VerifyArgs),
    /// Print one of the basic q-objects as a polynomial in q.
    #[command(subcommand)]
    Show(ShowObject),
    /// Manage the persistent cyclotomic polynomial cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id to verify (repeatable, comma-separable); `all` selects every claim.
    #[arg(long = "claim", value_name = "ID", default_value = "all")]
    claims: Vec<String>,

    /// Index range: half-open `A..B`, inclusive `A..=B`, or a single index `A`.
    #[arg(long, value_name = "RANGE")]
    n: Option<String>,

    /// Largest prime for the classical claims (primes 5..=P).
    #[arg(long = "p-max", value_name = "P")]
    p_max: Option<u64>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for range verification.
    #[arg(
        long,
        value_name = "N",
        default_value_t = default_parallelism(),
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    parallel: u64,

    /// Directory for the persistent cyclotomic cache (overrides QCAT_CACHE_DIR).
    #[arg(long = "cache-dir", value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Stop scheduling new work after the first falsified claim.
    #[arg(long = "fail-fast")]
    fail_fast: bool,

    /// Modulus power override, only where the claim admits it (power 1 is a
    /// diagnostic weakening of a squared-modulus claim).
    #[arg(
        long = "modulus-power",
        value_name = "E",
        value_parser = clap::value_parser!(u32).range(1..=2)
    )]
    modulus_power: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum ShowObject {
    /// The cyclotomic polynomial Phi_n(q).
    Cyclotomic { n: u64 },
    /// The q-binomial coefficient [n k]_q.
    Qbinom { n: u64, k: u64 },
    /// The q-Catalan number C_n(q).
    Qcatalan { n: u64 },
    /// The q-integer [n]_q = 1 + q + ... + q^(n-1).
    Qint { n: u64 },
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,

    /// Directory for the persistent cache (overrides QCAT_CACHE_DIR).
    #[arg(long = "cache-dir", value_name = "PATH", global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Compute Phi_1 .. Phi_N and persist them to the cache file.
    Warm {
        #[arg(value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// Report the entry count and cache file size.
    Stat,
    /// Remove the cache file.
    Clear,
}

/// A diagnostic destined for stderr together with the process exit code.
#[derive(Debug)]
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 2,
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 1,
        }
    }
}

/// Verification errors signal bad usage (unknown claim, bad range, claim not
/// stated at the requested index or power) except for cache I/O trouble.
fn verify_failure(err: VerifyError) -> Failure {
    match err {
        VerifyError::Cyclotomic(inner) => Failure::io(inner.to_string()),
        other => Failure::usage(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Show(object) => cmd_show(object),
        Command::Cache(args) => cmd_cache(args),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Parsed form of the `--n` argument.
#[derive(Clone, Copy)]
enum NRange {
    /// A single index: inapplicable single-claim requests are usage errors.
    Single(u64),
    /// An inclusive span, already normalized from the `A..B` / `A..=B` forms.
    Span(u64, u64),
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let claims = parse_claims(&args.claims)?;
    let range = args.n.as_deref().map(parse_n_range).transpose()?;

    if args.p_max.is_some() && !claims.iter().any(|c| c.is_classical()) {
        return Err(Failure::usage(
            "--p-max applies only to the classical claims",
        ));
    }

    if let Some(dir) = resolve_cache_dir(args.cache_dir.clone()) {
        global_cache()
            .attach_dir(&dir)
            .map_err(|e| Failure::io(e.to_string()))?;
    }

    let reports = if let (&[claim], Some(NRange::Single(n))) = (claims.as_slice(), range) {
        // A single claim at a single index is checked directly so that an
        // index outside the claim's statement is a hard usage error rather
        // than a silently skipped report.
        vec![verify_claim_with_power(claim, n, args.modulus_power).map_err(verify_failure)?]
    } else {
        run_ranges(&claims, range, &args)?
    };

    match args.format {
        Format::Text => print_text(&reports),
        Format::Json => print_json(&reports),
    }

    if reports.iter().any(|r| r.status == Status::Fails) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// Runs every selected claim over its range on a dedicated thread pool and
/// returns the merged reports in ascending `(n, claim id)` order.
fn run_ranges(
    claims: &[ClaimId],
    range: Option<NRange>,
    args: &VerifyArgs,
) -> Result<Vec<ClaimReport>, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallel as usize)
        .build()
        .map_err(|e| Failure::io(format!("cannot build thread pool: {e}")))?;
    let options = RangeOptions {
        power: args.modulus_power,
        fail_fast: args.fail_fast,
    };

    let mut reports: Vec<ClaimReport> = Vec::new();
    pool.install(|| -> Result<(), VerifyError> {
        for &claim in claims {
            let (from, to) = claim_bounds(claim, range, args.p_max);
            let batch = run_claim_range_with(claim, from, to, &options)?;
            let falsified = batch.iter().any(|r| r.status == Status::Fails);
            reports.extend(batch);
            if falsified && args.fail_fast {
                break;
            }
        }
        Ok(())
    })
    .map_err(verify_failure)?;

    reports.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then_with(|| a.claim.as_str().cmp(b.claim.as_str()))
    });
    Ok(reports)
}

/// The inclusive index range a claim runs over. `--p-max` pins the classical
/// prime bound; otherwise `--n` governs every claim, and the default range
/// is `1..100`.
fn claim_bounds(claim: ClaimId, range: Option<NRange>, p_max: Option<u64>) -> (u64, u64) {
    if claim.is_classical() {
        if let Some(p) = p_max {
            return (1, p);
        }
    }
    match range {
        Some(NRange::Single(n)) => (n, n),
        Some(NRange::Span(from, to)) => (from, to),
        None => DEFAULT_RANGE,
    }
}

/// Expands the `--claim` values into claim ids, deduplicated and ordered as
/// in [`ClaimId::ALL`]. `all` anywhere selects the full set.
fn parse_claims(values: &[String]) -> Result<Vec<ClaimId>, Failure> {
    let mut selected = Vec::new();
    for value in values.iter().flat_map(|v| v.split(',')) {
        let value = value.trim();
        if value.is_empty() {
            continue;
        }
        if value == "all" {
            return Ok(ClaimId::ALL.to_vec());
        }
        let claim: ClaimId = value
            .parse()
            .map_err(|e: VerifyError| Failure::usage(e.to_string()))?;
        selected.push(claim);
    }
    if selected.is_empty() {
        return Err(Failure::usage("no claim selected"));
    }
    let mut ordered: Vec<ClaimId> = ClaimId::ALL
        .into_iter()
        .filter(|c| selected.contains(c))
        .collect();
    ordered.dedup();
    Ok(ordered)
}

/// Parses `A..B` (half-open), `A..=B` (inclusive), or a bare index `A`.
fn parse_n_range(text: &str) -> Result<NRange, Failure> {
    let invalid = || Failure::usage(format!("invalid range: {text}"));
    if let Some((a, rest)) = text.split_once("..") {
        let (b, inclusive) = match rest.strip_prefix('=') {
            Some(tail) => (tail, true),
            None => (rest, false),
        };
        let from: u64 = a.trim().parse().map_err(|_| invalid())?;
        let upper: u64 = b.trim().parse().map_err(|_| invalid())?;
        let to = if inclusive {
            upper
        } else {
            upper.checked_sub(1).ok_or_else(invalid)?
        };
        Ok(NRange::Span(from, to))
    } else {
        text.trim()
            .parse()
            .map(NRange::Single)
            .map_err(|_| invalid())
    }
}

fn default_parallelism() -> u64 {
    std::thread::available_parallelism()
        .map(|n| n.get() as u64)
        .unwrap_or(1)
}

// ---------------------------------------------------------------------------
// report rendering
// ---------------------------------------------------------------------------

#[derive(serde::Serialize)]
struct ReportRow<'a> {
    claim: &'a str,
    n: u64,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    ms: f64,
}

impl<'a> From<&'a ClaimReport> for ReportRow<'a> {
    fn from(report: &'a ClaimReport) -> Self {
        ReportRow {
            claim: report.claim.as_str(),
            n: report.n,
            status: report.status.as_str(),
            witness: report.witness.as_ref().map(RatPoly::to_string),
            // Microsecond resolution keeps the JSON free of float dust.
            ms: (report.elapsed.as_secs_f64() * 1e6).round() / 1e3,
        }
    }
}

fn print_json(reports: &[ClaimReport]) {
    let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
    let rendered = serde_json::to_string_pretty(&rows).expect("reports serialize to JSON");
    emit(&rendered);
}

fn print_text(reports: &[ClaimReport]) {
    let mut holds = 0usize;
    let mut fails = 0usize;
    let mut skipped = 0usize;
    let mut out = String::new();
    for report in reports {
        match report.status {
            Status::Holds => holds += 1,
            Status::Fails => fails += 1,
            Status::Skipped => skipped += 1,
        }
        let ms = report.elapsed.as_secs_f64() * 1e3;
        let _ = writeln!(
            out,
            "{} n={}: {} ({ms:.2} ms)",
            report.claim.as_str(),
            report.n,
            report.status.as_str()
        );
        if let Some(witness) = &report.witness {
            let _ = writeln!(out, "  witness: {}", truncated_witness(witness));
        }
    }
    let _ = write!(
        out,
        "summary: {holds} holds, {fails} fails, {skipped} skipped"
    );
    emit(&out);
}

/// Writes a report block to stdout. A closed pipe (for example `qcat ... |
/// head`) ends the process quietly instead of panicking mid-print.
fn emit(text: &str) {
    use std::io::Write as _;
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    let outcome = handle
        .write_all(text.as_bytes())
        .and_then(|_| handle.write_all(b"\n"));
    if let Err(err) = outcome {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed printing to stdout: {err}");
    }
}

/// Renders a witness for text mode, truncating after [`WITNESS_TEXT_TERMS`]
/// terms with an ellipsis and a degree note. JSON always carries the full
/// rendering, so nothing is lost by keeping terminal lines short.
fn truncated_witness(witness: &RatPoly) -> String {
    let nonzero = witness.coeffs().iter().filter(|c| !c.is_zero()).count();
    if nonzero <= WITNESS_TEXT_TERMS {
        return witness.to_string();
    }
    let mut kept = 0usize;
    let mut prefix = Vec::new();
    for coeff in witness.coeffs() {
        if !coeff.is_zero() {
            kept += 1;
        }
        prefix.push(coeff.clone());
        if kept == WITNESS_TEXT_TERMS {
            break;
        }
    }
    let degree = witness.degree().expect("a truncated witness is nonzero");
    let mut text = RatPoly::new(prefix).to_string();
    let _ = write!(text, " + ... (degree {degree})");
    text
}

// ---------------------------------------------------------------------------
// show
// ---------------------------------------------------------------------------

fn cmd_show(object: ShowObject) -> Result<ExitCode, Failure> {
    let rendered = match object {
        ShowObject::Cyclotomic { n } => cyclotomic(n)
            .map_err(|e| Failure::usage(e.to_string()))?
            .to_string(),
        ShowObject::Qbinom { n, k } => q_binomial(signed(n)?, signed(k)?).to_string(),
        ShowObject::Qcatalan { n } => q_catalan(n).to_string(),
        ShowObject::Qint { n } => q_integer(n).to_string(),
    };
    println!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn signed(value: u64) -> Result<i64, Failure> {
    i64::try_from(value).map_err(|_| Failure::usage(format!("index {value} is out of range")))
}

// ---------------------------------------------------------------------------
// cache
// ---------------------------------------------------------------------------

fn cmd_cache(args: CacheArgs) -> Result<ExitCode, Failure> {
    let dir = resolve_cache_dir(args.cache_dir.clone()).ok_or_else(|| {
        Failure::usage("no cache directory configured; pass --cache-dir or set QCAT_CACHE_DIR")
    })?;
    let cache = global_cache();
    cache
        .attach_dir(&dir)
        .map_err(|e| Failure::io(e.to_string()))?;

    match args.action {
        CacheAction::Warm { n_max } => {
            cache.warm(n_max).map_err(|e| Failure::io(e.to_string()))?;
            cache.persist().map_err(|e| Failure::io(e.to_string()))?;
            println!("{} entries persisted", cache.len());
        }
        CacheAction::Stat => {
            let bytes = fs::metadata(dir.join(CACHE_FILE_NAME))
                .map(|meta| meta.len())
                .unwrap_or(0);
            println!("{} entries, {bytes} bytes", cache.len());
        }
        CacheAction::Clear => {
            let removed = cache.clear().map_err(|e| Failure::io(e.to_string()))?;
            if removed {
                println!("cache file removed");
            } else {
                println!("no cache file present");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use std::time::Duration;

    use num::BigRational;
    use qcat_core::ClaimReport;

    use super::*;

    fn rational(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    // ---- witness rendering ----

    #[test]
    fn short_witnesses_render_in_full() {
        let witness = RatPoly::new(vec![rational(1), rational(0), rational(-2)]);
        assert_eq!(truncated_witness(&witness), "1 - 2*q^2");
    }

    #[test]
    fn long_witnesses_truncate_with_a_degree_note() {
        let coeffs: Vec<BigRational> = (1..=20).map(rational).collect();
        let witness = RatPoly::new(coeffs);
        let text = truncated_witness(&witness);
        assert!(text.starts_with("1 + 2*q + 3*q^2"), "{text}");
        assert!(text.ends_with("+ ... (degree 19)"), "{text}");
        assert!(!text.contains("13*q^12"), "{text}");
    }

    #[test]
    fn truncation_counts_nonzero_terms_only() {
        // Twelve nonzero terms spread over a large span stay untruncated.
        let mut coeffs = vec![rational(0); 40];
        for i in 0..12 {
            coeffs[3 * i] = rational(1);
        }
        let witness = RatPoly::new(coeffs);
        assert!(!truncated_witness(&witness).contains("..."));
    }

    // ---- JSON rows ----

    #[test]
    fn json_rows_carry_witnesses_only_on_failures() {
        let failing = ClaimReport {
            claim: ClaimId::CatalanSum,
            n: 5,
            status: Status::Fails,
            witness: Some(RatPoly::new(vec![rational(0), rational(3)])),
            elapsed: Duration::from_millis(4),
        };
        let value = serde_json::to_value(ReportRow::from(&failing)).unwrap();
        assert_eq!(value["claim"], "catalan_sum");
        assert_eq!(value["n"], 5);
        assert_eq!(value["status"], "fails");
        assert_eq!(value["witness"], "3*q");
        assert_eq!(value["ms"], 4.0);

        let holding = ClaimReport {
            claim: ClaimId::CentralSum,
            n: 9,
            status: Status::Holds,
            witness: None,
            elapsed: Duration::from_millis(1),
        };
        let value = serde_json::to_value(ReportRow::from(&holding)).unwrap();
        assert!(value.get("witness").is_none());
    }

    // ---- argument parsing helpers ----

    #[test]
    fn n_ranges_parse_in_all_three_forms() {
        assert!(matches!(parse_n_range("7"), Ok(NRange::Single(7))));
        assert!(matches!(parse_n_range("2..9"), Ok(NRange::Span(2, 8))));
        assert!(matches!(parse_n_range("2..=9"), Ok(NRange::Span(2, 9))));
        for bad in ["", "x", "4..", "..4", "1..=", "2..=two"] {
            assert!(parse_n_range(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn claim_lists_deduplicate_into_presentation_order() {
        let parsed = parse_claims(&["central_sum".into(), "catalan_sum,central_sum".into()]);
        assert_eq!(
            parsed.unwrap(),
            vec![ClaimId::CentralSum, ClaimId::CatalanSum]
        );
        let everything = parse_claims(&["all".into()]).unwrap();
        assert_eq!(everything, ClaimId::ALL.to_vec());
        assert!(parse_claims(&["nope".into()]).is_err());
        assert!(parse_claims(&[",".into()]).is_err());
    }
}
