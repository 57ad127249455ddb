use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arith::{is_prime_u64, Prime};
use crate::classify::{classify_local, oracle_local, LocalResult, ALL_LEAVES};
use crate::lucas::word::{zero_indices_batch, WordJob, WordLucas, WORD_MODULUS_LIMIT};
use crate::lucas::LucasParams;
use crate::report::Report;

/// Environment variable capping the number of sweep worker threads.
pub const SWEEP_JOBS_ENV: &str = "LSG_SWEEP_JOBS";

/// Oracle scans at least this far even for tiny periods.
const MIN_SCAN: u64 = 60;

/// Jobs per parallel work unit (a multiple of the lockstep width).
const CHUNK: usize = 64;

/// `|P| <= max_abs_p`, `|Q| <= max_abs_q`, primes `p <= max_prime`,
/// `1 <= r <= max_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub max_abs_p: i64,
    pub max_abs_q: i64,
    pub max_prime: u64,
    pub max_r: i64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid { max_abs_p: 12, max_abs_q: 12, max_prime: 13, max_r: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub p: i64,
    pub q: i64,
    pub prime: u64,
    pub r: i64,
    pub case: String,
    pub closed_form: Vec<u64>,
    pub oracle: Vec<u64>,
}

impl Mismatch {
    fn size_key(&self) -> (i64, u64, i64, i64, i64) {
        (self.p.abs() + self.q.abs(), self.prime, self.r, self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub grid: SweepGrid,
    pub instances: u64,
    /// Total recurrence steps taken by the oracle.
    pub oracle_steps: u64,
    pub coverage: BTreeMap<&'static str, u64>,
    pub mismatches: Vec<Mismatch>,
}

struct Instance {
    p: i64,
    q: i64,
    prime: u64,
    r: i64,
    n_max: u64,
    result: Result<LocalResult, String>,
}

/// Runs the closed form against the modular oracle on every grid point and
/// tallies how often each case fires.
pub fn sweep_stats(grid: &SweepGrid) -> SweepStats {
    let primes: Vec<u64> = (2..=grid.max_prime).filter(|&p| is_prime_u64(p)).collect();
    let mut points = Vec::new();
    for p in -grid.max_abs_p..=grid.max_abs_p {
        for q in -grid.max_abs_q..=grid.max_abs_q {
            for &prime in &primes {
                for r in 1..=grid.max_r {
                    points.push((p, q, prime, r));
                }
            }
        }
    }
    let work = || {
        let mut instances: Vec<Instance> = points
            .par_iter()
            .map(|&(p, q, prime, r)| {
                let result = classify_local(&LucasParams::new(p, q), &Prime::new(prime).expect("prime"), r)
                    .map_err(|e| e.to_string());
                let n_max = match &result {
                    Ok(res) => (4 * (res.set.period() + res.set.threshold())).max(MIN_SCAN),
                    Err(_) => 0,
                };
                Instance { p, q, prime, r, n_max, result }
            })
            .collect();
        // Similar scan lengths share a lockstep group.
        instances.sort_by_key(|i| i.n_max);
        let mismatches: Vec<Mismatch> = instances.par_chunks(CHUNK).flat_map_iter(check_chunk).collect();
        (instances, mismatches)
    };
    let (instances, mut mismatches) = match sweep_threads() {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(work),
        None => work(),
    };
    mismatches.sort_by_key(Mismatch::size_key);
    let mut coverage: BTreeMap<&'static str, u64> = ALL_LEAVES.iter().map(|&l| (l, 0)).collect();
    for inst in &instances {
        if let Ok(res) = &inst.result {
            *coverage.entry(res.case.label()).or_default() += 1;
        }
    }
    SweepStats {
        grid: *grid,
        instances: instances.len() as u64,
        oracle_steps: instances.iter().map(|i| i.n_max + 1).sum(),
        coverage,
        mismatches,
    }
}

fn sweep_threads() -> Option<usize> {
    std::env::var(SWEEP_JOBS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn check_chunk(chunk: &[Instance]) -> Vec<Mismatch> {
    let mut word_jobs = Vec::new();
    let mut word_index = Vec::new();
    let mut oracles: Vec<Option<Vec<u64>>> = vec![None; chunk.len()];
    for (i, inst) in chunk.iter().enumerate() {
        let modulus = u32::try_from(inst.r).ok().and_then(|r| inst.prime.checked_pow(r));
        match modulus {
            Some(m) if m < WORD_MODULUS_LIMIT && inst.result.is_ok() => {
                word_jobs.push(WordJob { seq: WordLucas::new(inst.p, inst.q, m), n_max: inst.n_max });
                word_index.push(i);
            }
            _ => {
                let params = LucasParams::new(inst.p, inst.q);
                let prime = Prime::new(inst.prime).expect("prime");
                oracles[i] = oracle_local(&params, &prime, inst.r, inst.n_max).ok();
            }
        }
    }
    for (i, zeros) in word_index.into_iter().zip(zero_indices_batch(&word_jobs)) {
        oracles[i] = Some(zeros);
    }
    chunk
        .iter()
        .zip(oracles)
        .filter_map(|(inst, oracle)| {
            let oracle = oracle.unwrap_or_default();
            let (case, closed) = match &inst.result {
                Ok(res) => (res.case.label().to_owned(), res.set.members_up_to(inst.n_max)),
                Err(e) => (format!("error: {e}"), Vec::new()),
            };
            (inst.result.is_err() || closed != oracle).then_some(Mismatch {
                p: inst.p,
                q: inst.q,
                prime: inst.prime,
                r: inst.r,
                case,
                closed_form: closed,
                oracle,
            })
        })
        .collect()
}

/// [`sweep_stats`] as a report: one check for agreement and one per case.
pub fn sweep(grid: &SweepGrid) -> Report {
    let stats = sweep_stats(grid);
    let mut report = Report::new(format!(
        "sweep |P|<={} |Q|<={} p<={} r<={}",
        grid.max_abs_p, grid.max_abs_q, grid.max_prime, grid.max_r
    ));
    let first = stats.mismatches.first().map(|m| serde_json::to_value(m).unwrap_or_default());
    report.check(
        "closed form equals oracle",
        stats.mismatches.is_empty(),
        json!({"instances": stats.instances, "mismatches": stats.mismatches.len(), "minimal_counterexample": first}),
    );
    for (&leaf, &count) in &stats.coverage {
        report.check(format!("case {leaf} exercised"), count > 0, json!(count));
    }
    report.result = json!({
        "grid": stats.grid,
        "instances": stats.instances,
        "oracle_steps": stats.oracle_steps,
        "coverage": stats.coverage,
        "mismatches": stats.mismatches.len(),
    });
    report
}
