//! Correlation-gated rule mining with automatic threshold relaxation.
//!
//! Candidate itemsets grow level by level (frequent sets extended by
//! frequent single items) and every candidate — frequent or not — is split
//! into ordered (X, Y) pairs whose contingency quadrants and phi
//! coefficients are computed once. The search then walks a decaying
//! correlation threshold: at each value it keeps the pairs whose |phi|
//! clears it, emits the rules that also pass their own support and
//! confidence tests, and only lowers the threshold when nothing qualified.
//! Strong positive correlation yields X ⇒ Y; strong negative correlation
//! yields the absence forms X ⇒ ¬y and ¬x ⇒ Y, each judged on its own
//! quadrant count.

use crate::apriori::{self, SupportThreshold};
use crate::dataset::{ItemId, TransactionDb};
use crate::error::{Error, Result};
use crate::measures;
use crate::rule::{self, Rule};
use crate::supports::{self, ContingencyQuad, Literal, SignedItemset};

#[derive(Clone, PartialEq, Debug)]
pub struct CorrelatorConfig {
    /// Starting correlation threshold, in (0, 1].
    pub initial_threshold: f64,
    /// Multiplier applied when a pass finds nothing, in (0, 1).
    pub decay: f64,
    /// Relaxation stops once the threshold drops below this; must be
    /// positive (a floor of zero could never be crossed) and below the
    /// starting threshold.
    pub floor: f64,
    pub min_support: SupportThreshold,
    pub min_confidence: f64,
}

impl CorrelatorConfig {
    pub fn new(min_support: SupportThreshold, min_confidence: f64) -> Self {
        CorrelatorConfig {
            initial_threshold: 0.9,
            decay: 0.9,
            floor: 0.05,
            min_support,
            min_confidence,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.initial_threshold > 0.0 && self.initial_threshold <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "initial threshold must be in (0, 1], got {}",
                self.initial_threshold
            )));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "decay must be in (0, 1), got {}",
                self.decay
            )));
        }
        if !(self.floor > 0.0 && self.floor < self.initial_threshold) {
            return Err(Error::InvalidConfig(format!(
                "threshold floor must be positive and below the initial threshold, got {} with initial {}",
                self.floor, self.initial_threshold
            )));
        }
        if !(self.min_confidence >= 0.0 && self.min_confidence <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "minimum confidence must be in [0, 1], got {}",
                self.min_confidence
            )));
        }
        Ok(())
    }
}

/// A rule together with the phi coefficient of the positive pair that
/// produced it (for absence forms, the original (X, Y) pair's phi, which
/// is what cleared the negated threshold).
#[derive(Clone, PartialEq, Debug)]
pub struct CorrelatedRule {
    pub rule: Rule,
    pub phi: f64,
}

/// What a run found: the qualifying rules, the threshold in force when
/// the search stopped, and how many threshold values were evaluated.
#[derive(Clone, PartialEq, Debug)]
pub struct CorrelatedOutcome {
    pub rules: Vec<CorrelatedRule>,
    pub final_threshold: f64,
    pub iterations: usize,
}

/// One ordered bipartition of a candidate itemset, with everything the
/// threshold loop needs precomputed.
struct PairRecord {
    antecedent: SignedItemset,
    consequent: SignedItemset,
    quad: ContingencyQuad,
    phi: f64,
}

/// All candidate itemsets of size ≥ 2: frequent sets extended by frequent
/// single items, level by level. Extensions are kept as candidates even
/// when infrequent — their disagreement quadrants may still carry enough
/// weight for absence rules — but only frequent sets seed the next level.
fn candidate_pool(db: &TransactionDb, min_count: usize) -> Result<Vec<SignedItemset>> {
    let mut singles = Vec::new();
    for id in 0..db.n_items() as ItemId {
        if db.item_count(id)? >= min_count {
            singles.push(SignedItemset::positive([id])?);
        }
    }

    let mut pool = Vec::new();
    let mut frontier = singles.clone();
    while !frontier.is_empty() {
        let candidates = apriori::extend_candidates(&frontier, &singles);
        if candidates.is_empty() {
            break;
        }
        frontier = candidates
            .iter()
            .filter(|c| supports::count(db, c).map(|n| n >= min_count).unwrap_or(false))
            .cloned()
            .collect();
        pool.extend(candidates);
    }
    Ok(pool)
}

fn pair_records(db: &TransactionDb, pool: &[SignedItemset]) -> Result<Vec<PairRecord>> {
    let mut records = Vec::new();
    for set in pool {
        let lits = set.literals();
        for mask in 1..(1u32 << lits.len()) - 1 {
            let (mut ant, mut cons) = (Vec::new(), Vec::new());
            for (i, l) in lits.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    ant.push(*l);
                } else {
                    cons.push(*l);
                }
            }
            let antecedent = SignedItemset::new(ant)?;
            let consequent = SignedItemset::new(cons)?;
            let quad = supports::contingency(db, &antecedent, &consequent)?;
            if let Some(phi) = measures::phi(&quad) {
                records.push(PairRecord {
                    antecedent,
                    consequent,
                    quad,
                    phi,
                });
            }
        }
    }
    Ok(records)
}

fn rules_at(
    records: &[PairRecord],
    theta: f64,
    min_count: usize,
    min_confidence: f64,
) -> Vec<CorrelatedRule> {
    let mut out = Vec::new();
    for r in records {
        let q = &r.quad;
        if r.phi >= theta {
            let cx = q.antecedent_count();
            if q.n11 >= min_count && q.n11 as f64 / cx as f64 >= min_confidence {
                out.push(CorrelatedRule {
                    rule: Rule::new(r.antecedent.clone(), r.consequent.clone(), cx, q.n11),
                    phi: r.phi,
                });
            }
        } else if r.phi <= -theta {
            // X ⇒ ¬y: supported by the X-without-Y quadrant. Only a
            // single-item consequent can be negated as a conjunction.
            if r.consequent.len() == 1 {
                let cx = q.antecedent_count();
                if q.n10 >= min_count && q.n10 as f64 / cx as f64 >= min_confidence {
                    let negated = SignedItemset::new(vec![Literal::neg(
                        r.consequent.literals()[0].item,
                    )])
                    .expect("single literal");
                    out.push(CorrelatedRule {
                        rule: Rule::new(r.antecedent.clone(), negated, cx, q.n10),
                        phi: r.phi,
                    });
                }
            }
            // ¬x ⇒ Y: supported by the Y-without-X quadrant.
            if r.antecedent.len() == 1 {
                let absent = q.n01 + q.n00;
                if q.n01 >= min_count && q.n01 as f64 / absent as f64 >= min_confidence {
                    let negated = SignedItemset::new(vec![Literal::neg(
                        r.antecedent.literals()[0].item,
                    )])
                    .expect("single literal");
                    out.push(CorrelatedRule {
                        rule: Rule::new(negated, r.consequent.clone(), absent, q.n01),
                        phi: r.phi,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| rule::compare(&a.rule, &b.rule));
    out.dedup_by(|a, b| {
        a.rule.antecedent == b.rule.antecedent && a.rule.consequent == b.rule.consequent
    });
    out
}

/// Run the relaxation loop: evaluate the precomputed pairs at the current
/// threshold, return on the first nonempty result, otherwise decay the
/// threshold until it falls below the floor.
pub fn mine_correlated(db: &TransactionDb, cfg: &CorrelatorConfig) -> Result<CorrelatedOutcome> {
    cfg.validate()?;
    let min_count = cfg.min_support.min_count(db.n_transactions())?;
    let pool = candidate_pool(db, min_count)?;
    let records = pair_records(db, &pool)?;

    let mut theta = cfg.initial_threshold;
    let mut iterations = 0;
    loop {
        if theta < cfg.floor {
            return Ok(CorrelatedOutcome {
                rules: Vec::new(),
                final_threshold: theta,
                iterations,
            });
        }
        let rules = rules_at(&records, theta, min_count, cfg.min_confidence);
        iterations += 1;
        if !rules.is_empty() {
            return Ok(CorrelatedOutcome {
                rules,
                final_threshold: theta,
                iterations,
            });
        }
        theta *= cfg.decay;
    }
}
