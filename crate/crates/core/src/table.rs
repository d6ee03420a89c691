//! The built-in registry of signatures with known defect and count, and the
//! row-by-row procedure that checks them: defect first, then a closed form,
//! apolarity or monodromy count.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apolarity::{decompose, BundleSpec, WaringDecomposition};
use crate::combinatorics::{pair_lower_bound, veronese_count, CaseSpec};
use crate::error::{Result, WaringError};
use crate::homotopy::{count_decompositions, CountOptions, CountStatus};
use crate::polycore::LinearForm;
use crate::random::{complex_gaussian_vec, seeded_rng};
use crate::terracini::secant_defect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Desk,
    Extended,
}

impl Tier {
    pub fn parse(s: &str) -> Result<Tier> {
        match s {
            "fast" => Ok(Tier::Fast),
            "desk" => Ok(Tier::Desk),
            "extended" => Ok(Tier::Extended),
            _ => Err(WaringError::OutOfRange(format!("unknown tier {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Defect,
    Count,
    Bound,
    Formula,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCount {
    pub relation: Relation,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: usize,
    pub r: usize,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub k: usize,
    pub delta: usize,
    pub count: Option<ExpectedCount>,
    pub bold: bool,
    pub kind: RowKind,
    pub tier: Tier,
    pub source: String,
}

impl TableRow {
    pub fn case(&self) -> CaseSpec {
        CaseSpec::new(self.n, &self.degrees).expect("registry rows are valid")
    }

    pub fn label(&self) -> String {
        self.case().label()
    }
}

static TABLE: Lazy<Vec<TableRow>> =
    Lazy::new(|| serde_json::from_str(include_str!("../data/table.json")).expect("bundled table parses"));

pub fn table_rows() -> &'static [TableRow] {
    &TABLE
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The count did not stabilize but is consistent with the entry.
    LowerBound,
    /// The budget ran out below the expected count.
    BudgetMismatch,
    Open,
    Skipped,
    Inconclusive,
}

impl RowStatus {
    pub fn is_failure(&self) -> bool {
        matches!(
            self,
            RowStatus::Fail | RowStatus::BudgetMismatch | RowStatus::Inconclusive
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowOutcome {
    pub id: usize,
    pub label: String,
    pub k: usize,
    pub expected_delta: usize,
    pub observed_delta: Option<usize>,
    pub gap: Option<f64>,
    pub expected_count: Option<String>,
    pub observed_count: Option<String>,
    pub method: &'static str,
    pub status: RowStatus,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub seed: u64,
    /// Highest tier whose count rows are run.
    pub tier: Tier,
    pub workers: usize,
    pub count: CountOptions,
    /// Restrict to these ids; empty means all rows.
    pub rows: Vec<usize>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            seed: 0,
            tier: Tier::Fast,
            workers: 1,
            count: CountOptions::default(),
            rows: Vec::new(),
        }
    }
}

fn expected_text(c: &ExpectedCount) -> String {
    match c.relation {
        Relation::Eq => c.value.to_string(),
        Relation::Ge => format!(">= {}", c.value),
    }
}

/// Forward-construct a random vector with `k` summands and check that the
/// apolarity route returns exactly that decomposition.
fn apolarity_check(case: &CaseSpec, seed: u64) -> Result<f64> {
    let k = case.require_k()?;
    let mut rng = seeded_rng(seed, 0xa901);
    let forms: Vec<LinearForm> = (0..k)
        .map(|_| LinearForm::new(complex_gaussian_vec(&mut rng, case.num_vars())))
        .collect();
    let lambdas: Vec<Vec<Complex64>> = (0..k).map(|_| complex_gaussian_vec(&mut rng, case.r())).collect();
    let truth = WaringDecomposition::new(case.degrees().to_vec(), forms, lambdas);
    let f = truth.reconstruct();
    let got = decompose(&f, &BundleSpec::for_case(case)?, seed)?;
    got.distance(&truth, 1e-6)
        .ok_or_else(|| WaringError::DegenerateCase("recovered a different decomposition".into()))
}

pub fn run_row(row: &TableRow, opts: &TableOptions) -> RowOutcome {
    let case = row.case();
    let mut out = RowOutcome {
        id: row.id,
        label: row.label(),
        k: row.k,
        expected_delta: row.delta,
        observed_delta: None,
        gap: None,
        expected_count: row.count.as_ref().map(expected_text),
        observed_count: None,
        method: "terracini",
        status: RowStatus::Pass,
        note: String::new(),
    };
    match secant_defect(&case, row.k, opts.seed) {
        Ok(rep) => {
            out.observed_delta = Some(rep.defect);
            out.gap = Some(rep.gap);
            if rep.defect != row.delta {
                out.status = RowStatus::Fail;
                out.note = format!("defect {} instead of {}", rep.defect, row.delta);
                return out;
            }
            if rep.defect > 0 {
                return out;
            }
        }
        Err(e) => {
            out.status = RowStatus::Inconclusive;
            out.note = e.to_string();
            return out;
        }
    }
    match row.kind {
        RowKind::Defect => out,
        RowKind::Formula if row.degrees.iter().all(|&a| a == row.degrees[0]) && row.r == row.k => {
            out.method = "veronese";
            match veronese_count(row.degrees[0], row.n) {
                Ok(v) => {
                    let observed = v.count.to_string();
                    if Some(&observed) != out.expected_count.as_ref() {
                        out.status = RowStatus::Fail;
                    }
                    out.observed_count = Some(observed);
                }
                Err(e) => {
                    out.status = RowStatus::Fail;
                    out.note = e.to_string();
                }
            }
            out
        }
        RowKind::Formula => {
            out.method = "apolarity";
            match apolarity_check(&case, opts.seed) {
                Ok(err) if err < 1e-8 => out.observed_count = Some("1".into()),
                Ok(err) => {
                    out.status = RowStatus::Fail;
                    out.note = format!("recovery error {err:.2e}");
                }
                Err(e) => {
                    out.status = RowStatus::Fail;
                    out.note = e.to_string();
                }
            }
            out
        }
        RowKind::Count | RowKind::Bound | RowKind::Open => {
            out.method = "monodromy";
            if row.tier > opts.tier {
                out.status = if row.kind == RowKind::Open {
                    RowStatus::Open
                } else {
                    RowStatus::Skipped
                };
                out.note = format!("{:?} tier not requested", row.tier).to_lowercase();
                return out;
            }
            let count_opts = CountOptions {
                seed: opts.seed,
                check_defect: false,
                ..opts.count.clone()
            };
            match count_decompositions(&case, &count_opts) {
                Ok(rep) => {
                    let stabilized = rep.status == CountStatus::Stabilized;
                    out.observed_count = Some(if stabilized {
                        rep.count.to_string()
                    } else {
                        format!(">= {}", rep.count)
                    });
                    out.note = format!("{} loops, {} path failures", rep.loops, rep.path_failures);
                    let got = rep.count as u64;
                    out.status = match (row.kind, row.count) {
                        (RowKind::Open, _) | (_, None) => RowStatus::Open,
                        (
                            _,
                            Some(ExpectedCount {
                                relation: Relation::Eq,
                                value,
                            }),
                        ) => {
                            if got == value {
                                if stabilized {
                                    RowStatus::Pass
                                } else {
                                    RowStatus::LowerBound
                                }
                            } else if !stabilized && got < value {
                                RowStatus::BudgetMismatch
                            } else {
                                RowStatus::Fail
                            }
                        }
                        (
                            _,
                            Some(ExpectedCount {
                                relation: Relation::Ge,
                                value,
                            }),
                        ) => {
                            if got >= value {
                                RowStatus::Pass
                            } else if !stabilized {
                                RowStatus::LowerBound
                            } else {
                                RowStatus::Fail
                            }
                        }
                    };
                }
                Err(e) => {
                    out.status = if row.kind == RowKind::Open {
                        RowStatus::Open
                    } else {
                        RowStatus::Fail
                    };
                    out.note = e.to_string();
                }
            }
            out
        }
    }
}

/// Run the selected rows, `workers` at a time. Results come back in row
/// order.
pub fn run_table(opts: &TableOptions) -> Result<Vec<RowOutcome>> {
    let rows: Vec<&TableRow> = if opts.rows.is_empty() {
        table_rows().iter().collect()
    } else {
        opts.rows
            .iter()
            .map(|id| {
                table_rows()
                    .iter()
                    .find(|r| r.id == *id)
                    .ok_or_else(|| WaringError::OutOfRange(format!("no table row {id}")))
            })
            .collect::<Result<_>>()?
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| WaringError::OutOfRange(e.to_string()))?;
    Ok(pool.install(|| rows.par_iter().map(|r| run_row(r, opts)).collect()))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub t: u64,
    pub degrees: [u32; 2],
    pub perfect: bool,
    pub k: usize,
    pub lower_bound: u64,
    pub count: Option<usize>,
    pub status: Option<CountStatus>,
    pub bound_holds: Option<bool>,
}

/// Ternary pair `(2t, 2t + 1)`: perfectness, `k = (t + 1)²`, the lower bound
/// on the number of decompositions and, for `t ≤ count_up_to`, a monodromy
/// count.
pub fn run_pair_analysis(t: u64, count_up_to: u64, count: &CountOptions) -> Result<PairReport> {
    if t == 0 {
        return Err(WaringError::OutOfRange("t must be at least 1".into()));
    }
    let a = u32::try_from(2 * t).map_err(|_| WaringError::OutOfRange("t too large".into()))?;
    let case = CaseSpec::new(2, &[a, a + 1])?;
    let k = case.require_k()?;
    let lower_bound = pair_lower_bound(t);
    let mut report = PairReport {
        t,
        degrees: [a, a + 1],
        perfect: true,
        k,
        lower_bound,
        count: None,
        status: None,
        bound_holds: None,
    };
    if t <= count_up_to {
        let rep = count_decompositions(&case, count)?;
        report.count = Some(rep.count);
        report.status = Some(rep.status);
        report.bound_holds = Some(rep.count as u64 >= lower_bound);
    }
    Ok(report)
}
