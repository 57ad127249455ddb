use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use lsg_core::arith::parse_rational;
use lsg_core::classify::Witness;
use lsg_core::pipeline::{self, SweepGrid};
use lsg_core::report::Report;
use lsg_core::{
    classify_global, classify_local, exponent_semigroup_2x2_exact, exponent_semigroup_bruteforce, oracle_global,
    oracle_local, rank_of_appearance, realizability_verdict, realize, LucasParams, Prime, Rational, RationalMatrix,
    SemigroupDescriptor, Verdict,
};

/// Brute-force bound used when no exact answer is available.
const FALLBACK_BOUND: u64 = 200;
/// Verification bounds derived from a closed form are floored here so that
/// tiny periods still get a meaningful scan.
const MIN_VERIFY_BOUND: u64 = 60;
/// Above this the derived default would take too long; `--verify` still
/// accepts larger values explicitly.
const MAX_DEFAULT_VERIFY_BOUND: u64 = 20_000;

/// Lucas semigroups and exponent semigroups of rational matrices.
///
/// Every command prints one line per check (or JSON lines with `--json`) and
/// exits 0 iff all checks pass, 1 if some check fails and 2 on bad input.
#[derive(Parser)]
#[command(name = "lsg", version)]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lucas sequence utilities.
    Lucas {
        #[command(subcommand)]
        command: LucasCommand,
    },
    /// Closed-form Lucas semigroups.
    Classify {
        #[command(subcommand)]
        command: ClassifyCommand,
    },
    /// Exponent semigroup `{ n : A^n is integral }` of a matrix file.
    ///
    /// The file holds `{"entries": [["0", "1/96"], ["-768", "18"]]}`. For 2x2
    /// matrices the brute-force bound defaults to 4 * (conductor + period) of
    /// the exact answer, otherwise to 200.
    Expsg {
        #[arg(long)]
        matrix: PathBuf,
        /// Brute-force bound.
        #[arg(long)]
        limit: Option<u64>,
        /// Also compute the exact 2x2 answer and compare.
        #[arg(long)]
        exact: bool,
    },
    /// Build a 2x2 matrix whose exponent semigroup is L(P, Q, R).
    Realize {
        #[arg(allow_hyphen_values = true)]
        p: BigInt,
        #[arg(allow_hyphen_values = true)]
        q: BigInt,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        r: Rational,
        /// Brute-force bound for the round-trip check.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Invariants and dimension-2 realizability of `<generators>`.
    Check {
        #[arg(required = true)]
        generators: Vec<u64>,
    },
    /// Reproduce one of the embedded tables.
    Tables {
        #[arg(value_enum)]
        which: Table,
    },
    /// The `<5, 7, 16, 18>` counterexample pipeline.
    Counterexample,
    /// The nonlocal semigroup `L(18, 8, 1/96) = <6, 8, 10>`.
    Nonlocal,
    /// Compare every local closed form with the oracle over a grid.
    ///
    /// `LSG_SWEEP_JOBS` caps the number of worker threads.
    Sweep {
        #[arg(long, default_value_t = 12)]
        max_p: i64,
        #[arg(long, default_value_t = 12)]
        max_q: i64,
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
        #[arg(long, default_value_t = 6)]
        max_r: i64,
    },
}

#[derive(Subcommand)]
enum LucasCommand {
    /// Print `n, U_n, V_n` for `n = 0..=N` as TSV.
    Seq {
        #[arg(allow_hyphen_values = true)]
        p: BigInt,
        #[arg(allow_hyphen_values = true)]
        q: BigInt,
        n: u64,
    },
    /// Rank of appearance and rank exponent of a prime.
    Rank {
        #[arg(allow_hyphen_values = true)]
        p: BigInt,
        #[arg(allow_hyphen_values = true)]
        q: BigInt,
        prime: BigInt,
    },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// `{ n : p^r | U_n }`.
    Local {
        #[arg(allow_hyphen_values = true)]
        p: BigInt,
        #[arg(allow_hyphen_values = true)]
        q: BigInt,
        prime: BigInt,
        r: i64,
        /// Oracle bound; the default is derived from the closed form.
        #[arg(long)]
        verify: Option<u64>,
    },
    /// `{ n : U_n * R is an integer }`.
    Global {
        #[arg(allow_hyphen_values = true)]
        p: BigInt,
        #[arg(allow_hyphen_values = true)]
        q: BigInt,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        r: Rational,
        /// Oracle bound; the default is derived from the closed form.
        #[arg(long)]
        verify: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Report(report)) => {
            let lines = if cli.json { report.json_lines() } else { report.text_lines() };
            if !cli.json && !report.result.is_null() {
                println!("{}", report.result);
            }
            for line in lines {
                println!("{line}");
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Plain) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

enum Output {
    Report(Report),
    /// Already printed; nothing to check.
    Plain,
}

fn run(cli: &Cli) -> Result<Output> {
    let report = match &cli.command {
        Command::Lucas { command: LucasCommand::Seq { p, q, n } } => {
            lucas_seq(LucasParams::new(p.clone(), q.clone()), *n, cli.json);
            return Ok(Output::Plain);
        }
        Command::Lucas { command: LucasCommand::Rank { p, q, prime } } => lucas_rank(p, q, prime)?,
        Command::Classify { command: ClassifyCommand::Local { p, q, prime, r, verify } } => {
            classify_local_cmd(p, q, prime, *r, *verify)?
        }
        Command::Classify { command: ClassifyCommand::Global { p, q, r, verify } } => {
            classify_global_cmd(p, q, r, *verify)?
        }
        Command::Expsg { matrix, limit, exact } => expsg(matrix, *limit, *exact)?,
        Command::Realize { p, q, r, limit } => realize_cmd(p, q, r, *limit)?,
        Command::Check { generators } => check(generators)?,
        Command::Tables { which: Table::One } => pipeline::table_one(),
        Command::Tables { which: Table::Two } => pipeline::table_two(),
        Command::Tables { which: Table::Three } => pipeline::table_three(),
        Command::Counterexample => pipeline::counterexample(),
        Command::Nonlocal => pipeline::nonlocal(),
        Command::Sweep { max_p, max_q, max_prime, max_r } => {
            if *max_p < 0 || *max_q < 0 || *max_prime < 2 || *max_r < 1 {
                bail!("sweep bounds must be non-negative, with --max-prime >= 2 and --max-r >= 1");
            }
            pipeline::sweep(&SweepGrid { max_abs_p: *max_p, max_abs_q: *max_q, max_prime: *max_prime, max_r: *max_r })
        }
    };
    Ok(Output::Report(report))
}

fn lucas_seq(params: LucasParams, n: u64, json: bool) {
    let (us, vs) = (params.u_terms(n), params.v_terms(n));
    if !json {
        println!("n\tU_n\tV_n");
    }
    for (i, (u, v)) in us.iter().zip(&vs).enumerate() {
        if json {
            println!("{}", json!({"n": i, "u": u.to_string(), "v": v.to_string()}));
        } else {
            println!("{i}\t{u}\t{v}");
        }
    }
}

fn lucas_rank(p: &BigInt, q: &BigInt, prime: &BigInt) -> Result<Report> {
    let params = LucasParams::new(p.clone(), q.clone());
    let prime = Prime::new(prime.clone())?;
    let rank = rank_of_appearance(&params, &prime)?;
    let mut report = Report::new(format!("lucas rank {p} {q} {prime}"));
    report.result = json!({"rho": rank.rho, "nu": rank.nu});
    let first = (1..=rank.rho).find(|&k| k >= 1 && prime.divides(&params.u(k)));
    report.check("rank is the first index", first == Some(rank.rho), json!({"first_index": first}));
    let nu = prime.valuation(&params.u(rank.rho));
    report.check("rank exponent", nu == rank.nu, json!({"valuation": nu}));
    Ok(report)
}

/// Default oracle bound for a closed form with the given threshold and period.
fn derived_bound(threshold: u64, period: u64) -> Option<u64> {
    let bound = threshold.checked_add(period)?.checked_mul(4)?.max(MIN_VERIFY_BOUND);
    (bound <= MAX_DEFAULT_VERIFY_BOUND).then_some(bound)
}

fn verify_bound(threshold: u64, period: u64, requested: Option<u64>) -> Option<u64> {
    match (derived_bound(threshold, period), requested) {
        (Some(d), Some(n)) => Some(d.max(n)),
        (d, n) => d.or(n),
    }
}

fn check_members(report: &mut Report, what: &str, expected: Vec<u64>, actual: Vec<u64>, bound: u64) {
    let mismatch = expected.iter().zip(&actual).position(|(a, b)| a != b).or_else(|| {
        (expected.len() != actual.len()).then(|| expected.len().min(actual.len()))
    });
    let detail = match mismatch {
        None => json!({"bound": bound, "members": actual.len()}),
        Some(i) => json!({
            "bound": bound,
            "closed_form": expected.get(i),
            "oracle": actual.get(i),
        }),
    };
    report.check(what, mismatch.is_none(), detail);
}

fn with_case(descriptor: &SemigroupDescriptor, case: &str) -> Value {
    let mut value = descriptor.to_json();
    value["case"] = json!(case);
    value
}

fn classify_local_cmd(p: &BigInt, q: &BigInt, prime: &BigInt, r: i64, verify: Option<u64>) -> Result<Report> {
    let params = LucasParams::new(p.clone(), q.clone());
    let prime = Prime::new(prime.clone())?;
    let local = classify_local(&params, &prime, r)?;
    let mut report = Report::new(format!("classify local {p} {q} {prime} {r}"));
    report.result = with_case(&local.descriptor, local.case.label());
    report.result["semigroup"] = json!(local.descriptor.to_string());
    match verify_bound(local.set.threshold(), local.set.period(), verify) {
        Some(bound) => {
            let oracle = oracle_local(&params, &prime, r, bound)?;
            check_members(&mut report, "oracle agreement", local.set.members_up_to(bound), oracle, bound);
        }
        None => {
            report.check("oracle agreement", true, json!({"skipped": "period too large; pass --verify N"}));
        }
    }
    Ok(report)
}

fn classify_global_cmd(p: &BigInt, q: &BigInt, r: &Rational, verify: Option<u64>) -> Result<Report> {
    let params = LucasParams::new(p.clone(), q.clone());
    let global = classify_global(&params, r)?;
    let mut report = Report::new(format!("classify global {p} {q} {r}"));
    let cases: Vec<&str> = global.locals.iter().map(|l| l.result.case.label()).collect();
    let case = if cases.is_empty() { "integral".to_string() } else { cases.join(" & ") };
    report.result = with_case(&global.descriptor, &case);
    report.result["semigroup"] = json!(global.descriptor.to_string());
    report.result["locals"] = global
        .locals
        .iter()
        .map(|l| {
            json!({
                "prime": l.prime.to_string(),
                "r": l.r,
                "case": l.result.case.label(),
                "semigroup": l.result.descriptor.to_string(),
            })
        })
        .collect();
    match verify_bound(global.set.threshold(), global.set.period(), verify) {
        Some(bound) => {
            let oracle = oracle_global(&params, r, bound)?;
            check_members(&mut report, "oracle agreement", global.set.members_up_to(bound), oracle, bound);
        }
        None => {
            report.check("oracle agreement", true, json!({"skipped": "period too large; pass --verify N"}));
        }
    }
    Ok(report)
}

fn default_bound(exact: Option<&SemigroupDescriptor>) -> u64 {
    exact
        .map(|s| {
            let set = s.to_periodic_set();
            (set.threshold() + set.period()) * 4
        })
        .unwrap_or(FALLBACK_BOUND)
}

fn expsg(path: &PathBuf, limit: Option<u64>, exact: bool) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let matrix = RationalMatrix::from_json(&value)?;
    let closed = if matrix.dim() == 2 {
        Some(exponent_semigroup_2x2_exact(&matrix)?)
    } else if exact {
        bail!("--exact needs a 2x2 matrix, got {0}x{0}", matrix.dim());
    } else {
        None
    };
    let bound = limit.unwrap_or_else(|| default_bound(closed.as_ref()));
    let sample = exponent_semigroup_bruteforce(&matrix, bound);
    let mut report = Report::new(format!("expsg {}", path.display()));
    report.result = json!({"matrix": matrix.to_string(), "bound": bound, "members": sample.members});
    let contains_zero = sample.members.first() == Some(&0);
    report.check("contains 0", contains_zero, json!({"members": sample.members.len()}));
    if exact {
        let closed = closed.expect("2x2 checked above");
        report.result["exact"] = closed.to_json();
        report.result["semigroup"] = json!(closed.to_string());
        let expected: Vec<u64> = (0..=bound).filter(|&n| closed.contains(n)).collect();
        check_members(&mut report, "exact vs brute force", expected, sample.members, bound);
    }
    Ok(report)
}

fn realize_cmd(p: &BigInt, q: &BigInt, r: &Rational, limit: Option<u64>) -> Result<Report> {
    let params = LucasParams::new(p.clone(), q.clone());
    let global = classify_global(&params, r)?;
    let matrix = realize(p, q, r)?;
    let mut report = Report::new(format!("realize {p} {q} {r}"));
    report.result = json!({
        "matrix": matrix.to_json(),
        "semigroup": global.descriptor.to_string(),
    });
    let exact = exponent_semigroup_2x2_exact(&matrix)?;
    report.check(
        "exact semigroup of the matrix",
        exact == global.descriptor,
        json!({"matrix": exact.to_string(), "lucas": global.descriptor.to_string()}),
    );
    let bound = limit.unwrap_or_else(|| default_bound(Some(&global.descriptor)));
    let sample = exponent_semigroup_bruteforce(&matrix, bound);
    let expected: Vec<u64> = (0..=bound).filter(|&n| global.descriptor.contains(n)).collect();
    check_members(&mut report, "brute force round trip", expected, sample.members, bound);
    Ok(report)
}

fn check(generators: &[u64]) -> Result<Report> {
    let s = SemigroupDescriptor::from_generators(generators)?;
    let gens: Vec<String> = generators.iter().map(u64::to_string).collect();
    let mut report = Report::new(format!("check {}", gens.join(" ")));
    let small = s.small_elements().ok();
    let lonely: Option<Vec<u64>> = small.as_ref().map(|sm| sm.iter().copied().filter(|&n| s.is_lonely(n)).collect());
    let verdict = realizability_verdict(&s);
    let mut result = s.to_json();
    result["semigroup"] = json!(s.to_string());
    result["gcd"] = json!(s.gcd());
    result["small_elements"] = json!(small);
    result["lonely"] = json!(lonely);
    result["plus_plus_minus_avoiding"] = json!(s.is_plus_plus_minus_avoiding());
    result["verdict"] = serde_json::to_value(&verdict)?;
    report.result = result;
    check_witness(&mut report, &s, &verdict)?;
    Ok(report)
}

/// A positive verdict is only trusted once its witness reproduces `s`.
fn check_witness(report: &mut Report, s: &SemigroupDescriptor, verdict: &Verdict) -> Result<()> {
    let Verdict::Yes { witness, .. } = verdict else {
        report.check("verdict", true, json!({"verdict": verdict_name(verdict)}));
        return Ok(());
    };
    let realized = match witness {
        Witness::Matrix { matrix } => exponent_semigroup_2x2_exact(matrix)?,
        Witness::Lucas { p, q, r } => classify_global(&LucasParams::new(p.clone(), q.clone()), r)?.descriptor,
    };
    report.check(
        "witness reproduces the semigroup",
        &realized == s,
        json!({"witness": realized.to_string(), "expected": s.to_string()}),
    );
    Ok(())
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Yes { .. } => "yes",
        Verdict::No { .. } => "no",
        Verdict::Unknown { .. } => "unknown",
    }
}
