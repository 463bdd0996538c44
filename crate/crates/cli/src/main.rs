//! Command-line front end: load a transaction database, run one of the
//! mining modes, and print the result as a classic text report, JSON, or
//! CSV.

mod report;

use std::fs::File;
use std::io::{self, Read, Write};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pnmine::apriori::{self, MiningConfig, RuleForms, SupportThreshold};
use pnmine::coherent::{self, CoherentSearchConfig};
use pnmine::correlator::{self, CorrelatorConfig};
use pnmine::dataset::{self, TabularOptions, TransactionDb};
use pnmine::oracle;
use pnmine::rule;

use report::Outcome;

#[derive(Parser)]
#[command(
    name = "pnmine",
    version,
    about = "Association rule mining over transaction databases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a dataset and mine rules
    Mine(MineArgs),
    /// Slow reference implementations, for ad-hoc cross-checks
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Mode {
    /// Frequent itemsets and purely positive rules
    Apriori,
    /// Also derive rules with one negated literal
    Negative,
    /// Threshold-free equivalence-shaped pairs
    Coherent,
    /// Correlation-gated rules with a decaying threshold
    Correlated,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Apriori => "apriori",
            Mode::Negative => "negative",
            Mode::Coherent => "coherent",
            Mode::Correlated => "correlated",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
pub struct MineArgs {
    /// Input path; "-" reads standard input
    #[arg(long, default_value = "-")]
    pub input: String,

    /// Treat the input as whitespace-separated item baskets, one
    /// transaction per line, instead of a delimited table
    #[arg(long)]
    pub basket: bool,

    /// Attributes to drop while loading tabular input
    #[arg(long, value_delimiter = ',', value_name = "ATTR,...")]
    pub exclude: Vec<String>,

    #[arg(long, value_enum, default_value_t = Mode::Apriori)]
    pub mode: Mode,

    /// Minimum support as a fraction of the transactions
    #[arg(long, default_value_t = 0.1)]
    pub min_support: f64,

    /// Minimum support as an absolute transaction count (instead of
    /// --min-support)
    #[arg(long, conflicts_with = "min_support")]
    pub min_count: Option<usize>,

    #[arg(long, default_value_t = 0.9)]
    pub min_confidence: f64,

    /// Starting correlation threshold (correlated mode)
    #[arg(long, default_value_t = 0.9)]
    pub initial_threshold: f64,

    /// Correlation threshold decay applied after an empty pass
    /// (correlated mode)
    #[arg(long, default_value_t = 0.9)]
    pub decay: f64,

    /// Stop relaxing once the threshold falls below this (correlated mode)
    #[arg(long, default_value_t = 0.05)]
    pub floor: f64,

    /// Antecedent size bound (coherent mode)
    #[arg(long, default_value_t = 2)]
    pub max_antecedent: usize,

    /// Consequent size bound (coherent mode)
    #[arg(long, default_value_t = 2)]
    pub max_consequent: usize,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Print the contingency quadrants (and measures) with each rule
    #[arg(long)]
    pub explain: bool,

    /// Exit with status 2 when no rules qualify
    #[arg(long)]
    pub fail_if_empty: bool,

    /// Worker threads; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

impl MineArgs {
    /// The resolved support threshold: an explicit count wins over the
    /// fraction flag.
    fn support(&self) -> SupportThreshold {
        match self.min_count {
            Some(c) => SupportThreshold::Count(c),
            None => SupportThreshold::Fraction(self.min_support),
        }
    }

    pub fn input_label(&self) -> &str {
        if self.input == "-" {
            "stdin"
        } else {
            &self.input
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OracleOp {
    Frequent,
    Rules,
    Coherent,
}

#[derive(Args)]
struct OracleArgs {
    /// Input path; "-" reads standard input
    #[arg(long, default_value = "-")]
    input: String,

    #[arg(long)]
    basket: bool,

    #[arg(long, value_delimiter = ',', value_name = "ATTR,...")]
    exclude: Vec<String>,

    #[arg(long, value_enum)]
    op: OracleOp,

    #[arg(long, default_value_t = 1)]
    min_count: usize,

    #[arg(long, default_value_t = 0.9)]
    min_confidence: f64,

    /// Negated literals allowed per itemset (0 or 1)
    #[arg(long, default_value_t = 1)]
    max_negations: usize,

    #[arg(long, default_value_t = 2)]
    max_antecedent: usize,

    #[arg(long, default_value_t = 2)]
    max_consequent: usize,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let result = match cli.command {
        Command::Mine(args) => run_mine(&args),
        Command::Oracle(args) => run_oracle(&args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn load(input: &str, basket: bool, exclude: &[String]) -> anyhow::Result<TransactionDb> {
    let name = if input == "-" { "stdin" } else { input };
    let reader: Box<dyn Read> = if input == "-" {
        Box::new(io::stdin().lock())
    } else {
        Box::new(File::open(input).with_context(|| format!("opening {input}"))?)
    };
    let db = if basket {
        if !exclude.is_empty() {
            bail!("--exclude applies only to tabular input");
        }
        dataset::load_basket(reader, name)?
    } else {
        let options = TabularOptions {
            delimiter: None,
            exclude: exclude.to_vec(),
            header: None,
        };
        dataset::load_tabular(reader, name, &options)?
    };
    Ok(db)
}

fn run_mine(args: &MineArgs) -> anyhow::Result<i32> {
    if args.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build_global()
            .context("initializing the thread pool")?;
    }

    let db = load(&args.input, args.basket, &args.exclude)?;
    let started = Instant::now();

    let outcome = match args.mode {
        Mode::Apriori | Mode::Negative => {
            let mut cfg = MiningConfig::new(args.support(), args.min_confidence);
            if args.mode == Mode::Negative {
                cfg.rule_forms = RuleForms::all();
            }
            let mined = apriori::mine(&db, &cfg)?;
            // Listings report confidence at two decimals; only rules whose
            // reported value actually exceeds the threshold are kept.
            let rules: Vec<_> = apriori::derive_rules(&mined, &cfg)?
                .into_iter()
                .filter(|r| {
                    rule::clears_reported_threshold(
                        r.joint_count,
                        r.antecedent_count,
                        args.min_confidence,
                    )
                })
                .collect();
            Outcome::Mined {
                result: mined,
                rules,
            }
        }
        Mode::Coherent => {
            let cfg = CoherentSearchConfig::new(args.max_antecedent, args.max_consequent);
            Outcome::Coherent {
                rules: coherent::mine_coherent(&db, &cfg)?,
            }
        }
        Mode::Correlated => {
            let cfg = CorrelatorConfig {
                initial_threshold: args.initial_threshold,
                decay: args.decay,
                floor: args.floor,
                min_support: args.support(),
                min_confidence: args.min_confidence,
            };
            Outcome::Correlated {
                outcome: correlator::mine_correlated(&db, &cfg)?,
            }
        }
    };

    let elapsed = started.elapsed();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    report::render(args, &db, &outcome, elapsed, &mut out)?;
    out.flush()?;

    Ok(if args.fail_if_empty && outcome.is_empty() {
        2
    } else {
        0
    })
}

fn run_oracle(args: &OracleArgs) -> anyhow::Result<i32> {
    let db = load(&args.input, args.basket, &args.exclude)?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match args.op {
        OracleOp::Frequent => {
            for (set, count) in oracle::oracle_frequent(&db, args.min_count, args.max_negations)? {
                writeln!(out, "{} {}", rule::format_itemset(&set, &db)?, count)?;
            }
        }
        OracleOp::Rules => {
            for r in oracle::oracle_rules(
                &db,
                args.min_count,
                args.min_confidence,
                args.max_negations,
            )? {
                writeln!(out, "{}", r.format(&db)?)?;
            }
        }
        OracleOp::Coherent => {
            for r in oracle::oracle_coherent(&db, args.max_antecedent, args.max_consequent)? {
                writeln!(
                    out,
                    "{} {} ==> {} {}",
                    rule::format_itemset(&r.antecedent, &db)?,
                    r.quad.antecedent_count(),
                    rule::format_itemset(&r.consequent, &db)?,
                    r.quad.n11
                )?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}
