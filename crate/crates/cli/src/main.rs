//! `waring`: perfectness screening, defect checks, decomposition counts,
//! explicit decompositions and the table of known signatures.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use waring_core::apolarity::{decompose_with_report, BundleSpec};
use waring_core::combinatorics::{identifiability_flags, CaseSpec};
use waring_core::homotopy::{count_decompositions, CountOptions, CountStatus, DEFAULT_BUDGET_LOOPS, DEFAULT_STALL};
use waring_core::polycore::PolyVector;
use waring_core::table::{run_pair_analysis, run_table, RowStatus, TableOptions, Tier};
use waring_core::terracini::secant_defect;
use waring_core::WaringError;

use output::{emit, write_with_header, Failure};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "waring",
    version,
    about = "Simultaneous Waring decompositions of polynomial vectors"
)]
pub struct Cli {
    /// Master seed; fixes every random draw of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Maximum number of monodromy loops.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_LOOPS)]
    budget_loops: usize,
    /// Consecutive loops without a new solution before a count is final.
    #[arg(long, global = true, default_value_t = DEFAULT_STALL)]
    stall: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CaseArgs {
    /// Projective dimension.
    #[arg(long)]
    n: usize,
    /// Degrees, comma separated or repeated.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    degrees: Vec<u32>,
}

impl CaseArgs {
    fn case(&self) -> Result<CaseSpec, Failure> {
        Ok(CaseSpec::new(self.n, &self.degrees)?)
    }
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Check whether a signature is perfect and report k.
    Perfect {
        #[command(flatten)]
        case: CaseArgs,
        /// Expected k; rejected unless it matches.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Probabilistic k-defect from the span of tangent spaces.
    Defect {
        #[command(flatten)]
        case: CaseArgs,
        /// Number of points; defaults to the perfect k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Count decompositions of a random vector by monodromy.
    Count {
        #[command(flatten)]
        case: CaseArgs,
        /// Write all canonical decompositions here.
        #[arg(long)]
        dump_solutions: Option<PathBuf>,
        /// Expected count; a budget-exhausted run below it exits with 4.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Recover the unique decomposition of a vector read as JSON.
    Decompose {
        /// Path to a polynomial-vector JSON file, or `-` for stdin.
        #[arg(long = "case")]
        input: String,
        /// `auto`, `line:<e>` or `quotient:<e>`.
        #[arg(long, default_value = "auto")]
        bundle: String,
    },
    /// Ternary pair of degrees (2t, 2t + 1).
    Pair {
        #[arg(long)]
        t: u64,
        /// Run the monodromy count for t up to this value.
        #[arg(long, default_value_t = 2)]
        count_up_to: u64,
    },
    /// Check rows of the built-in table.
    Table {
        /// Row ids, comma separated; all rows by default.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        /// Highest tier of count rows to run: fast, desk or extended.
        #[arg(long, default_value = "fast")]
        tier: String,
        /// Also write JSON lines here, after a config header.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn count_options(cli: &Cli) -> CountOptions {
    CountOptions {
        seed: cli.seed,
        budget_loops: cli.budget_loops,
        stall: cli.stall,
        ..CountOptions::default()
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.workers == 0 {
        return Err(Failure::validation("--workers must be at least 1"));
    }
    rayon_threads(cli.workers);
    match &cli.command {
        Command::Perfect { case, k } => {
            let spec = case.case()?;
            let got = spec.k();
            if let Some(want) = k {
                if got != Some(*want) {
                    return Err(Failure::validation(format!(
                        "k = {want} does not satisfy the perfectness condition for {} (N = {}, r + n = {})",
                        spec.label(),
                        spec.ambient_dim(),
                        spec.block()
                    )));
                }
            }
            let flags = identifiability_flags(&spec);
            emit(
                cli.json,
                &json!({
                    "n": spec.n(),
                    "degrees": spec.degrees(),
                    "ambient": spec.ambient_dim(),
                    "block": spec.block(),
                    "perfect": got.is_some(),
                    "k": got,
                    "identifiability": flags,
                }),
            );
            Ok(())
        }
        Command::Defect { case, k } => {
            let spec = case.case()?;
            let k = match k {
                Some(k) => *k,
                None => spec.require_k()?,
            };
            let rep = secant_defect(&spec, k, cli.seed)?;
            emit(cli.json, &serde_json::to_value(&rep).expect("report serializes"));
            Ok(())
        }
        Command::Count {
            case,
            dump_solutions,
            expect,
        } => {
            let spec = case.case()?;
            let rep = count_decompositions(&spec, &count_options(cli))?;
            if let Some(path) = dump_solutions {
                let lines = rep
                    .solutions
                    .iter()
                    .map(|s| serde_json::to_value(s).expect("decomposition serializes"))
                    .collect::<Vec<_>>();
                write_with_header(path, cli, &lines)?;
            }
            emit(
                cli.json,
                &json!({
                    "k": rep.k,
                    "count": rep.count,
                    "status": rep.status.as_str(),
                    "loops": rep.loops,
                    "path_failures": rep.path_failures,
                }),
            );
            match expect {
                Some(want) if rep.status == CountStatus::BudgetExhausted && rep.count < *want => Err(Failure::budget(
                    format!("found {} of {want} before the budget ran out", rep.count),
                )),
                Some(want) if rep.count != *want => {
                    Err(Failure::mismatch(format!("count {} differs from {want}", rep.count)))
                }
                _ => Ok(()),
            }
        }
        Command::Decompose { input, bundle } => {
            let text = if input == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::validation(e.to_string()))?
            } else {
                std::fs::read_to_string(input).map_err(|e| Failure::validation(format!("{input}: {e}")))?
            };
            let f: PolyVector = serde_json::from_str(&text).map_err(|e| Failure::validation(e.to_string()))?;
            let spec = CaseSpec::new(f.num_vars() - 1, f.degrees())?;
            let bundle = BundleSpec::parse(bundle, &spec)?;
            let rep = decompose_with_report(&f, &bundle, cli.seed)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&rep.decomposition).expect("decomposition serializes")
                );
            } else {
                emit(false, &serde_json::to_value(&rep).expect("report serializes"));
            }
            Ok(())
        }
        Command::Pair { t, count_up_to } => {
            let rep = run_pair_analysis(*t, *count_up_to, &count_options(cli))?;
            emit(cli.json, &serde_json::to_value(&rep).expect("report serializes"));
            match rep.bound_holds {
                Some(false) if rep.status == Some(CountStatus::BudgetExhausted) => {
                    Err(Failure::budget("count below the lower bound when the budget ran out"))
                }
                Some(false) => Err(Failure::mismatch("count below the lower bound")),
                _ => Ok(()),
            }
        }
        Command::Table { rows, tier, output } => {
            let opts = TableOptions {
                seed: cli.seed,
                tier: Tier::parse(tier)?,
                workers: cli.workers,
                count: count_options(cli),
                rows: rows.clone(),
            };
            let outcomes = run_table(&opts)?;
            let values: Vec<_> = outcomes
                .iter()
                .map(|o| serde_json::to_value(o).expect("row serializes"))
                .collect();
            if let Some(path) = output {
                write_with_header(path, cli, &values)?;
            }
            if cli.json {
                for v in &values {
                    println!("{v}");
                }
            } else {
                output::print_table(&outcomes);
            }
            let worst = outcomes.iter().map(|o| o.status).fold(None, |acc: Option<Failure>, s| {
                let this = match s {
                    RowStatus::Inconclusive => Some(Failure::inconclusive("a defect check was inconclusive")),
                    RowStatus::BudgetMismatch => Some(Failure::budget("a count ran out of budget below its value")),
                    RowStatus::Fail => Some(Failure::mismatch("a row disagrees with the table")),
                    _ => None,
                };
                match (acc, this) {
                    (Some(a), Some(b)) => Some(if b.code > a.code { b } else { a }),
                    (a, b) => a.or(b),
                }
            });
            worst.map_or(Ok(()), Err)
        }
    }
}

fn rayon_threads(workers: usize) {
    // The global pool can only be configured once per process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

impl From<WaringError> for Failure {
    fn from(e: WaringError) -> Self {
        let code = match e {
            WaringError::DegreeMismatch(_)
            | WaringError::ShapeMismatch(_)
            | WaringError::InvalidCase(_)
            | WaringError::NotPerfect { .. }
            | WaringError::OutOfRange(_)
            | WaringError::IncompatibleBundle { .. }
            | WaringError::Serialization(_)
            | WaringError::Defective { .. } => output::EXIT_VALIDATION,
            WaringError::WrongKernelDim { .. }
            | WaringError::MissingPoints { .. }
            | WaringError::IllConditioned(_)
            | WaringError::DegenerateCase(_)
            | WaringError::Inconclusive { .. }
            | WaringError::AllPathsFailed(_) => output::EXIT_INCONCLUSIVE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}
