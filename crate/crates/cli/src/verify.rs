//! The exhaustive harness: every nonconstant `f` up to a degree bound.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use gf2dav_core::zerosum::DEFAULT_BUDGET;
use gf2dav_core::{davenport_group, davenport_semigroup, delta_f, GroupTable, Poly, RingCtx, SearchOptions, ZeroSumError};
use rayon::prelude::*;

use crate::cache::{Cache, Lookup};
use crate::error::CliError;
use crate::report::{texts, PerConstant, SuiteReport, Summary, SummaryLine, Timings, VerifyRecord};
use crate::suites::{self, Suite, Tally};

pub const DEFAULT_MAX_DEGREE: usize = 4;
/// Degrees above the default need a raised budget and the cyclic fast path.
pub const MAX_VERIFY_DEGREE: usize = 6;

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub budget: Option<u64>,
    pub cyclic_fast_path: bool,
    pub suites: Vec<Suite>,
    /// Report per-modulus wall time on stderr.
    pub wall_clock: bool,
}

impl VerifyConfig {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            cyclic_fast_path: self.cyclic_fast_path,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let d = self.max_degree;
        if d == 0 || d > MAX_VERIFY_DEGREE {
            return Err(CliError::Usage(format!("--max-degree must be between 1 and {MAX_VERIFY_DEGREE}, got {d}")));
        }
        if d > DEFAULT_MAX_DEGREE && !(self.budget.is_some_and(|b| b > DEFAULT_BUDGET) && self.cyclic_fast_path) {
            return Err(CliError::Usage(format!(
                "--max-degree {d} needs --budget above {DEFAULT_BUDGET} and --cyclic-fast-path"
            )));
        }
        if self.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        Ok(())
    }
}

struct Exhausted {
    what: &'static str,
    budget: u64,
    lower_bound: usize,
}

struct Computed {
    f: Poly,
    record: Result<VerifyRecord, Exhausted>,
    warning: Option<String>,
    elapsed: Duration,
}

/// The record for one modulus; on budget exhaustion, which constant ran out.
pub fn compute_record(f: &Poly, opts: SearchOptions) -> Result<VerifyRecord, (&'static str, ZeroSumError)> {
    let ctx = RingCtx::new(*f).expect("verify moduli are small and nonconstant");
    let units = GroupTable::unit_group(&ctx);
    let du = davenport_group(&units, opts).map_err(|e| ("D_U", e))?;
    let ds = davenport_semigroup(&ctx, opts.budget).map_err(|e| ("D_S", e))?;
    let delta = delta_f(f).expect("nonconstant").value;
    Ok(VerifyRecord {
        f: f.to_string(),
        degree: ctx.degree(),
        factorization: ctx.factorization().to_string(),
        unit_count: units.order(),
        d_u: du.value,
        d_s: ds.value,
        delta,
        bound_ok: du.value <= ds.value && ds.value <= du.value + delta as usize,
        gap: ds.value as i64 - du.value as i64,
        provenance: PerConstant {
            d_u: du.provenance.to_string(),
            d_s: ds.provenance.to_string(),
        },
        extremal: PerConstant {
            d_u: texts(&du.extremal),
            d_s: texts(&ds.extremal),
        },
        timings: Timings {
            d_u_nodes: du.nodes,
            d_s_nodes: ds.nodes,
        },
    })
}

fn compute(f: Poly, opts: SearchOptions, cache: Option<&Cache>) -> Computed {
    let start = Instant::now();
    let key = Cache::key(&f, opts.budget, opts.cyclic_fast_path);
    let mut warning = None;
    if let Some(c) = cache {
        match c.get(&key, &f) {
            Lookup::Hit(record) => {
                return Computed {
                    f,
                    record: Ok(record),
                    warning,
                    elapsed: start.elapsed(),
                }
            }
            Lookup::Miss => {}
            Lookup::Corrupt(why) => {
                warning = Some(format!("warning: cache entry for f = {f} is corrupt ({why}); recomputing"))
            }
        }
    }
    let record = compute_record(&f, opts).map_err(|(what, e)| match e {
        ZeroSumError::BudgetExceeded { budget, lower_bound } => Exhausted {
            what,
            budget,
            lower_bound,
        },
        other => panic!("unexpected search failure for f = {f}: {other}"),
    });
    if let (Some(c), Ok(r)) = (cache, &record) {
        if let Err(e) = c.put(&key, r) {
            warning = Some(format!("warning: cannot write cache entry in {}: {e}", c.dir().display()));
        }
    }
    Computed {
        f,
        record,
        warning,
        elapsed: start.elapsed(),
    }
}

fn moduli_of_degree(d: usize) -> Vec<Poly> {
    (1u64 << d..1 << (d + 1)).map(Poly::from_bits).collect()
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string(value).expect("reports serialize"))?;
    Ok(())
}

/// Streams one record per modulus (by degree, then bit value), then one line
/// per requested suite, then a summary.
pub fn run(cfg: &VerifyConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    cfg.validate()?;
    let opts = cfg.options();
    let cache = Cache::locate(cfg.cache_dir.as_deref());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;

    let mut records: Vec<VerifyRecord> = Vec::new();
    let mut exhausted = 0;
    let mut first_exhausted: Option<CliError> = None;
    for d in 1..=cfg.max_degree {
        let batch: Vec<Computed> = pool.install(|| {
            moduli_of_degree(d)
                .into_par_iter()
                .map(|f| compute(f, opts, cache.as_ref()))
                .collect()
        });
        for c in batch {
            if let Some(w) = &c.warning {
                writeln!(err, "{w}")?;
            }
            if cfg.wall_clock {
                writeln!(err, "f = {}: {:.3} ms", c.f, c.elapsed.as_secs_f64() * 1e3)?;
            }
            match c.record {
                Ok(r) => {
                    writeln!(out, "{}", r.to_line())?;
                    records.push(r);
                }
                Err(Exhausted { what, budget, lower_bound }) => {
                    writeln!(err, "f = {}: budget of {budget} nodes exhausted; {what} >= {lower_bound}", c.f)?;
                    exhausted += 1;
                    first_exhausted.get_or_insert(CliError::Budget { what, budget, lower_bound });
                }
            }
        }
        out.flush()?;
    }

    let mut problems: Vec<String> = records
        .iter()
        .filter(|r| !r.bound_ok)
        .map(|r| format!("bound fails for f = {}", r.f))
        .collect();

    let by_f: HashMap<&str, &VerifyRecord> = records.iter().map(|r| (r.f.as_str(), r)).collect();
    let mut symmetry_ok = true;
    for r in &records {
        let g = gf2dav_core::gf2poly::parse(&r.f).expect("records hold parseable moduli").compose_x_plus_one();
        if let Some(s) = by_f.get(g.to_string().as_str()) {
            if (s.d_s, s.d_u, s.delta) != (r.d_s, r.d_u, r.delta) {
                symmetry_ok = false;
                problems.push(format!("f = {} and f(x+1) = {} disagree", r.f, s.f));
            }
        }
    }

    let mut suites_wanted = cfg.suites.clone();
    suites_wanted.sort();
    suites_wanted.dedup();
    for suite in suites_wanted {
        let tallies: Vec<Tally> = pool.install(|| {
            records
                .par_iter()
                .map(|r| {
                    let f = gf2dav_core::gf2poly::parse(&r.f).expect("records hold parseable moduli");
                    let ctx = RingCtx::new(f).expect("verify moduli are small");
                    suites::run(suite, &ctx, r, opts)
                })
                .collect()
        });
        let mut total = Tally::default();
        tallies.into_iter().for_each(|t| total.absorb(t));
        json_line(
            out,
            &SuiteReport {
                suite: suite.name(),
                checked: total.checked,
                failures: total.failures.len(),
                skipped: total.skipped,
                proof_path: (suite == Suite::Reduce).then_some(total.proof_path),
                band: (suite == Suite::Reduce).then_some([total.band_sampled, total.band_reducible]),
            },
        )?;
        problems.extend(total.failures.into_iter().map(|m| format!("{}: {m}", suite.name())));
    }

    let mut gaps_by_delta: BTreeMap<u8, BTreeMap<i64, usize>> = BTreeMap::new();
    for r in &records {
        *gaps_by_delta.entry(r.delta).or_default().entry(r.gap).or_default() += 1;
    }
    json_line(
        out,
        &SummaryLine {
            summary: Summary {
                records: records.len(),
                budget_exhausted: exhausted,
                all_bound_ok: records.iter().all(|r| r.bound_ok),
                symmetry_ok,
                gaps_by_delta,
            },
        },
    )?;
    out.flush()?;

    if let Some(first) = problems.first() {
        for p in &problems {
            writeln!(err, "{p}")?;
        }
        return Err(CliError::Invariant(format!("{} problem(s), first: {first}", problems.len())));
    }
    match first_exhausted {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
