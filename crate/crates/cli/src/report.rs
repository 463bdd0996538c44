//! Turns a mining outcome into the printed report: a classic text layout,
//! a JSON document, or CSV rows.

use std::io::Write;
use std::time::Duration;

use serde_json::json;

use pnmine::apriori::{MineResult, SupportThreshold};
use pnmine::coherent::CoherentRule;
use pnmine::correlator::CorrelatedOutcome;
use pnmine::dataset::TransactionDb;
use pnmine::measures::MeasureValues;
use pnmine::rule::{self, Rule};
use pnmine::supports::{ContingencyQuad, SignedItemset};

use crate::{Format, MineArgs, Mode};

/// What a mining run produced, by mode.
pub enum Outcome {
    Mined { result: MineResult, rules: Vec<Rule> },
    Coherent { rules: Vec<CoherentRule> },
    Correlated { outcome: CorrelatedOutcome },
}

impl Outcome {
    pub fn is_empty(&self) -> bool {
        match self {
            Outcome::Mined { rules, .. } => rules.is_empty(),
            Outcome::Coherent { rules } => rules.is_empty(),
            Outcome::Correlated { outcome } => outcome.rules.is_empty(),
        }
    }
}

pub fn render(
    args: &MineArgs,
    db: &TransactionDb,
    outcome: &Outcome,
    elapsed: Duration,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    match args.format {
        Format::Text => render_text(args, db, outcome, elapsed, out),
        Format::Json => render_json(args, db, outcome, out),
        Format::Csv => render_csv(args, db, outcome, out),
    }
}

/// The number of support-relaxation cycles a stepwise search would take to
/// reach the threshold, counting down from full support in steps of 0.05.
/// Computed in basis points so thresholds like 0.6 land exactly.
fn cycles(min_count: usize, support: &SupportThreshold, n: usize) -> usize {
    let bp: u64 = match support {
        SupportThreshold::Fraction(f) => (f * 10_000.0).round() as u64,
        SupportThreshold::Count(_) => {
            ((min_count as f64 / n as f64) * 10_000.0).round() as u64
        }
    };
    let remaining = 10_000u64.saturating_sub(bp);
    (remaining.div_ceil(500).max(1)) as usize
}

/// "0.6 (61 instances)" for a fraction threshold, "61 instances" for an
/// absolute one.
fn support_echo(args: &MineArgs, min_count: usize) -> String {
    match args.min_count {
        Some(c) => format!("{c} instances"),
        None => format!("{} ({} instances)", args.min_support, min_count),
    }
}

fn banner(mode: Mode) -> &'static str {
    match mode {
        Mode::Apriori | Mode::Negative => "ARM RULES:",
        Mode::Coherent => "POSITIVE COHERENT BASED RULES:",
        Mode::Correlated => "CORRELATED RULES:",
    }
}

/// The Mode/Input/Layout/Threads echo shared by every text report.
fn meta_block(args: &MineArgs, db: &TransactionDb) -> String {
    let mut lines = vec![
        format!("Mode: {}", args.mode.name()),
        format!(
            "Input: {} ({} transactions, {} items)",
            args.input_label(),
            db.n_transactions(),
            db.n_items()
        ),
        format!(
            "Layout: {}",
            if args.basket { "basket" } else { "tabular" }
        ),
    ];
    if !args.exclude.is_empty() {
        lines.push(format!("Excluded attributes: {}", args.exclude.join(", ")));
    }
    lines.push(if args.threads == 0 {
        "Threads: auto".to_string()
    } else {
        format!("Threads: {}", args.threads)
    });
    lines.join("\n")
}

fn quad_suffix(q: &ContingencyQuad) -> String {
    format!(" quad:({}, {}, {}, {})", q.n11, q.n10, q.n01, q.n00)
}

fn render_text(
    args: &MineArgs,
    db: &TransactionDb,
    outcome: &Outcome,
    elapsed: Duration,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    // The report is assembled as paragraphs joined by blank lines.
    let mut paragraphs: Vec<String> = vec![
        banner(args.mode).to_string(),
        "=====".to_string(),
        meta_block(args, db),
    ];

    match outcome {
        Outcome::Mined { result, rules } => {
            paragraphs.push(format!(
                "Minimum support: {}",
                support_echo(args, result.min_count)
            ));
            paragraphs.push(format!(
                "Minimum metric <confidence>: {}",
                args.min_confidence
            ));
            paragraphs.push(format!(
                "Number of cycles performed: {}",
                cycles(result.min_count, &args.support(), db.n_transactions())
            ));
            paragraphs.push("Generated sets of large itemsets:".to_string());
            let mut sizes = Vec::new();
            for level in &result.levels {
                sizes.push(format!(
                    "Size of set of large itemsets L({}): {}",
                    level.k,
                    level.positive.len()
                ));
                if args.mode == Mode::Negative {
                    sizes.push(format!(
                        "Size of set of negative itemsets N({}): {}",
                        level.k,
                        level.negated.len()
                    ));
                }
            }
            if !sizes.is_empty() {
                paragraphs.push(sizes.join("\n"));
            }
            paragraphs.push("Best rules found:".to_string());
            let mut listing = Vec::new();
            for (i, r) in rules.iter().enumerate() {
                let mut line = format!("{}. {}", i + 1, r.format(db)?);
                if args.explain {
                    line.push_str(&quad_suffix(&r.quad(db)?));
                }
                listing.push(line);
            }
            if !listing.is_empty() {
                paragraphs.push(listing.join("\n"));
            }
        }
        Outcome::Coherent { rules } => {
            paragraphs.push(format!(
                "Antecedent size limit: {}\nConsequent size limit: {}",
                args.max_antecedent, args.max_consequent
            ));
            paragraphs.push("Best rules found:".to_string());
            let mut listing = Vec::new();
            for r in rules {
                let mut line = format!(
                    "{} {} ==> {} {}",
                    rule::format_itemset(&r.antecedent, db)?,
                    r.quad.antecedent_count(),
                    rule::format_itemset(&r.consequent, db)?,
                    r.quad.n11
                );
                if args.explain {
                    line.push_str(&quad_suffix(&r.quad));
                }
                listing.push(line);
            }
            if !listing.is_empty() {
                paragraphs.push(listing.join("\n"));
            }
        }
        Outcome::Correlated { outcome } => {
            let min_count = args.support().min_count(db.n_transactions())?;
            paragraphs.push(format!(
                "Minimum support: {}",
                support_echo(args, min_count)
            ));
            paragraphs.push(format!(
                "Minimum metric <confidence>: {}",
                args.min_confidence
            ));
            paragraphs.push(format!(
                "Initial correlation threshold: {}\nCorrelation decay: {}\nCorrelation floor: {}",
                args.initial_threshold, args.decay, args.floor
            ));
            paragraphs.push(format!(
                "Final correlation threshold: {:.4}\nIterations: {}",
                outcome.final_threshold, outcome.iterations
            ));
            paragraphs.push("Best rules found:".to_string());
            let mut listing = Vec::new();
            for (i, r) in outcome.rules.iter().enumerate() {
                let mut line =
                    format!("{}. {} phi:({:.2})", i + 1, r.rule.format(db)?, r.phi);
                if args.explain {
                    line.push_str(&quad_suffix(&r.rule.quad(db)?));
                }
                listing.push(line);
            }
            if !listing.is_empty() {
                paragraphs.push(listing.join("\n"));
            }
        }
    }

    paragraphs.push("=== Evaluation ===".to_string());
    paragraphs.push(format!("Elapsed time: {:.2}s", elapsed.as_secs_f64()));

    writeln!(out, "{}", paragraphs.join("\n\n"))?;
    Ok(())
}

fn literal_array(s: &SignedItemset, db: &TransactionDb) -> anyhow::Result<serde_json::Value> {
    let mut items = Vec::new();
    for l in s.literals() {
        let item = db.item(l.item)?;
        items.push(json!({
            "attribute": item.attribute,
            "value": item.value,
            "negated": l.negated,
        }));
    }
    Ok(serde_json::Value::Array(items))
}

fn quad_json(q: &ContingencyQuad) -> serde_json::Value {
    json!({ "n11": q.n11, "n10": q.n10, "n01": q.n01, "n00": q.n00 })
}

fn measures_json(m: &MeasureValues) -> serde_json::Value {
    json!({
        "confidence": m.confidence,
        "lift": m.lift,
        "leverage": m.leverage,
        "phi": m.phi,
    })
}

fn rule_json(r: &Rule, db: &TransactionDb, explain: bool) -> anyhow::Result<serde_json::Value> {
    let mut obj = json!({
        "antecedent": literal_array(&r.antecedent, db)?,
        "consequent": literal_array(&r.consequent, db)?,
        "antecedent_count": r.antecedent_count,
        "joint_count": r.joint_count,
        "confidence": r.confidence,
    });
    if explain {
        let quad = r.quad(db)?;
        obj["quad"] = quad_json(&quad);
        obj["measures"] = measures_json(&MeasureValues::from_quad(&quad)?);
    }
    Ok(obj)
}

fn render_json(
    args: &MineArgs,
    db: &TransactionDb,
    outcome: &Outcome,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let doc = match outcome {
        Outcome::Mined { result, rules } => {
            let rendered: Vec<_> = rules
                .iter()
                .map(|r| rule_json(r, db, args.explain))
                .collect::<anyhow::Result<_>>()?;
            json!({
                "mode": args.mode.name(),
                "params": {
                    "min_support": args.min_count.map_or(json!(args.min_support), |_| json!(null)),
                    "min_count": result.min_count,
                    "min_confidence": args.min_confidence,
                    "cycles": cycles(result.min_count, &args.support(), db.n_transactions()),
                },
                "n_transactions": db.n_transactions(),
                "rules": rendered,
            })
        }
        Outcome::Coherent { rules } => {
            let mut rendered = Vec::new();
            for r in rules {
                let mut obj = json!({
                    "antecedent": literal_array(&r.antecedent, db)?,
                    "consequent": literal_array(&r.consequent, db)?,
                    "antecedent_count": r.quad.antecedent_count(),
                    "joint_count": r.quad.n11,
                    "confidence": r.forward_confidence,
                    "quad": quad_json(&r.quad),
                });
                if args.explain {
                    obj["measures"] = measures_json(&MeasureValues::from_quad(&r.quad)?);
                }
                rendered.push(obj);
            }
            json!({
                "mode": args.mode.name(),
                "params": {
                    "max_antecedent": args.max_antecedent,
                    "max_consequent": args.max_consequent,
                },
                "n_transactions": db.n_transactions(),
                "rules": rendered,
            })
        }
        Outcome::Correlated { outcome } => {
            let min_count = args.support().min_count(db.n_transactions())?;
            let mut rendered = Vec::new();
            for r in &outcome.rules {
                let mut obj = rule_json(&r.rule, db, args.explain)?;
                let quad = r.rule.quad(db)?;
                obj["measures"] = measures_json(&MeasureValues::from_quad(&quad)?);
                rendered.push(obj);
            }
            json!({
                "mode": args.mode.name(),
                "params": {
                    "min_support": args.min_count.map_or(json!(args.min_support), |_| json!(null)),
                    "min_count": min_count,
                    "min_confidence": args.min_confidence,
                    "initial_threshold": args.initial_threshold,
                    "decay": args.decay,
                    "floor": args.floor,
                },
                "n_transactions": db.n_transactions(),
                "final_threshold": outcome.final_threshold,
                "iterations": outcome.iterations,
                "rules": rendered,
            })
        }
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

fn render_csv(
    args: &MineArgs,
    db: &TransactionDb,
    outcome: &Outcome,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let quad_cols = ["n11", "n10", "n01", "n00"];
    match outcome {
        Outcome::Mined { rules, .. } => {
            let mut header = vec![
                "antecedent",
                "antecedent_count",
                "consequent",
                "joint_count",
                "confidence",
            ];
            if args.explain {
                header.extend(quad_cols);
            }
            w.write_record(&header)?;
            for r in rules {
                let mut row = vec![
                    rule::format_itemset(&r.antecedent, db)?,
                    r.antecedent_count.to_string(),
                    rule::format_itemset(&r.consequent, db)?,
                    r.joint_count.to_string(),
                    r.confidence.to_string(),
                ];
                if args.explain {
                    let q = r.quad(db)?;
                    row.extend([q.n11, q.n10, q.n01, q.n00].map(|c| c.to_string()));
                }
                w.write_record(&row)?;
            }
        }
        Outcome::Coherent { rules } => {
            w.write_record([
                "antecedent",
                "consequent",
                "n11",
                "n10",
                "n01",
                "n00",
                "forward_confidence",
                "reverse_confidence",
            ])?;
            for r in rules {
                w.write_record(&[
                    rule::format_itemset(&r.antecedent, db)?,
                    rule::format_itemset(&r.consequent, db)?,
                    r.quad.n11.to_string(),
                    r.quad.n10.to_string(),
                    r.quad.n01.to_string(),
                    r.quad.n00.to_string(),
                    r.forward_confidence.to_string(),
                    r.reverse_confidence.to_string(),
                ])?;
            }
        }
        Outcome::Correlated { outcome } => {
            let mut header = vec![
                "antecedent",
                "antecedent_count",
                "consequent",
                "joint_count",
                "confidence",
                "phi",
            ];
            if args.explain {
                header.extend(quad_cols);
            }
            w.write_record(&header)?;
            for r in &outcome.rules {
                let mut row = vec![
                    rule::format_itemset(&r.rule.antecedent, db)?,
                    r.rule.antecedent_count.to_string(),
                    rule::format_itemset(&r.rule.consequent, db)?,
                    r.rule.joint_count.to_string(),
                    r.rule.confidence.to_string(),
                    r.phi.to_string(),
                ];
                if args.explain {
                    let q = r.rule.quad(db)?;
                    row.extend([q.n11, q.n10, q.n01, q.n00].map(|c| c.to_string()));
                }
                w.write_record(&row)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
