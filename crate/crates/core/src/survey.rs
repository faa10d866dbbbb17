//! Batch runs of the subset-length bound check and certification over families
//! of automata. Instances are independent and run through [`Execution`]; the
//! records come back in instance order whatever the scheduling.

use serde::Serialize;

use crate::automaton::Automaton;
use crate::contraction::{circular_fast_path, find_aperiodic_collection_with_limit, is_one_contracting};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::generators::{enumeration_size, GeneratorSpec};
use crate::oracle::{reachability_table, subset_bound_report, BoundViolation};

/// Exhaustive runs refuse families larger than this.
pub const MAX_EXHAUSTIVE_INSTANCES: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurveyFamily {
    /// Every automaton with `n` states over `k` letters.
    Exhaustive { n: usize, k: usize },
    /// `count` random automata; instance `i` uses seed `seed + i`.
    Random { n: usize, k: usize, count: u64, seed: u64 },
}

impl SurveyFamily {
    pub fn len(&self) -> Result<u64> {
        match *self {
            SurveyFamily::Exhaustive { n, k } => {
                let size = enumeration_size(n, k).unwrap_or(u64::MAX);
                if size > MAX_EXHAUSTIVE_INSTANCES {
                    return Err(Error::Capacity {
                        what: "exhaustive survey instances",
                        requested: size.min(usize::MAX as u64) as usize,
                        limit: MAX_EXHAUSTIVE_INSTANCES as usize,
                    });
                }
                Ok(size)
            }
            SurveyFamily::Random { count, .. } => Ok(count),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.len(), Ok(0))
    }

    pub fn instance(&self, i: u64) -> GeneratorSpec {
        match *self {
            SurveyFamily::Exhaustive { n, k } => GeneratorSpec::Enumerated { n, k, index: i },
            SurveyFamily::Random { n, k, seed, .. } => GeneratorSpec::Random {
                n,
                k,
                seed: seed.wrapping_add(i),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SurveyFamily::Exhaustive { n, k } => format!("exhaustive n={n} k={k}"),
            SurveyFamily::Random { n, k, count, seed } => {
                format!("random n={n} k={k} count={count} seed={seed}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub family: SurveyFamily,
    pub capacity: usize,
    /// Length bound for the aperiodic-collection search; `None` means `n`.
    pub length_bound: Option<usize>,
    pub transformation_limit: usize,
}

impl SurveyConfig {
    pub fn new(family: SurveyFamily) -> Self {
        SurveyConfig {
            family,
            capacity: crate::oracle::DEFAULT_ORACLE_CAPACITY,
            length_bound: None,
            transformation_limit: crate::contraction::DEFAULT_TRANSFORMATION_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    /// Generator spec that rebuilds this instance.
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub synchronizing: bool,
    pub shortest_sync: Option<usize>,
    pub one_contracting: bool,
    /// `None` when the search hit its capacity limit.
    pub aperiodic: Option<bool>,
    pub circular_certified: bool,
    pub worst_margin: Option<i64>,
    pub violations: Vec<BoundViolation>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub family: String,
    pub instances: u64,
    pub skipped: u64,
    pub synchronizing: u64,
    pub one_contracting: u64,
    pub aperiodic: u64,
    pub circular_certified: u64,
    pub violations: u64,
    pub worst_margin: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub summary: SurveySummary,
    pub records: Vec<SurveyRecord>,
}

pub fn examine(automaton: &Automaton, id: String, config: &SurveyConfig) -> SurveyRecord {
    let n = automaton.n();
    let mut record = SurveyRecord {
        id: id.clone(),
        n,
        k: automaton.letter_count(),
        synchronizing: crate::oracle::is_synchronizing(automaton),
        shortest_sync: None,
        one_contracting: is_one_contracting(automaton),
        aperiodic: None,
        circular_certified: circular_fast_path(automaton).is_some(),
        worst_margin: None,
        violations: Vec::new(),
        skipped: None,
    };
    let bound = config.length_bound.unwrap_or(n).max(1);
    match find_aperiodic_collection_with_limit(automaton, bound, config.transformation_limit) {
        Ok(found) => record.aperiodic = Some(found.is_some()),
        Err(e) => record.skipped = Some(e.to_string()),
    }
    match reachability_table(automaton, config.capacity) {
        Ok(table) => {
            record.shortest_sync = table.nearest_singleton().map(|(_, d)| d);
            let report = subset_bound_report(automaton, &table, id);
            record.worst_margin = report.worst_margin();
            record.violations = report.violations;
        }
        Err(e) => record.skipped = Some(e.to_string()),
    }
    record
}

pub fn run_survey(config: &SurveyConfig, exec: Execution) -> Result<SurveyReport> {
    let total = config.family.len()?;
    let count = usize::try_from(total).map_err(|_| Error::Capacity {
        what: "survey instances",
        requested: usize::MAX,
        limit: usize::MAX,
    })?;
    let records = exec.map_range(count, |i| {
        let spec = config.family.instance(i as u64);
        match spec.build() {
            Ok(a) => examine(&a, spec.to_string(), config),
            Err(e) => SurveyRecord {
                id: spec.to_string(),
                n: 0,
                k: 0,
                synchronizing: false,
                shortest_sync: None,
                one_contracting: false,
                aperiodic: None,
                circular_certified: false,
                worst_margin: None,
                violations: Vec::new(),
                skipped: Some(e.to_string()),
            },
        }
    });
    let mut summary = SurveySummary {
        family: config.family.describe(),
        instances: total,
        ..SurveySummary::default()
    };
    for r in &records {
        summary.skipped += r.skipped.is_some() as u64;
        summary.synchronizing += r.synchronizing as u64;
        summary.one_contracting += r.one_contracting as u64;
        summary.aperiodic += (r.aperiodic == Some(true)) as u64;
        summary.circular_certified += r.circular_certified as u64;
        summary.violations += r.violations.len() as u64;
        if let Some(m) = r.worst_margin {
            summary.worst_margin = Some(summary.worst_margin.map_or(m, |w| w.min(m)));
        }
    }
    Ok(SurveyReport { summary, records })
}
