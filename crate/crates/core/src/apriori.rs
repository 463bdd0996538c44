//! Level-wise frequent itemset mining over positive items and
//! single-literal negations, followed by rule derivation from the
//! discovered level sets.
//!
//! Mining proceeds one itemset size at a time: candidates of size `k` are
//! built from the frequent positive sets of size `k − 1`, pruned by the
//! anti-monotonicity of support (a set with an infrequent subset cannot be
//! frequent), counted against the database, and split into the frequent
//! positive sets and the frequent single-negation sets of that size.
//! Negated sets never seed further candidate generation; they are a
//! per-level byproduct of the positive candidates.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::dataset::{ItemId, TransactionDb};
use crate::error::{Error, Result};
use crate::rule::{self, Rule};
use crate::supports::{self, Literal, SignedItemset};

/// Minimum support expressed either as a fraction of the database or as an
/// absolute transaction count.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum SupportThreshold {
    Fraction(f64),
    Count(usize),
}

impl SupportThreshold {
    /// The absolute count an itemset must reach. Fractions convert by
    /// ceiling (an itemset in 60.6% of 101 rows needs 61 of them), with a
    /// small snap so that a product like 0.3 × 10 = 2.999…96 lands on the
    /// integer it arithmetically is.
    pub fn min_count(&self, n_transactions: usize) -> Result<usize> {
        match *self {
            SupportThreshold::Count(c) => {
                if c == 0 {
                    return Err(Error::InvalidConfig(
                        "minimum support count must be at least 1".into(),
                    ));
                }
                Ok(c)
            }
            SupportThreshold::Fraction(f) => {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(Error::InvalidConfig(format!(
                        "minimum support fraction must be in (0, 1], got {f}"
                    )));
                }
                let raw = f * n_transactions as f64;
                let snapped = if (raw - raw.round()).abs() < 1e-9 {
                    raw.round()
                } else {
                    raw.ceil()
                };
                Ok((snapped as usize).max(1))
            }
        }
    }
}

/// How size-k candidates are generated from the frequent (k−1)-sets.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum JoinStrategy {
    /// Merge pairs of (k−1)-sets sharing their first k−2 items. This is
    /// the default; the prune step makes it lossless.
    #[default]
    PrefixJoin,
    /// Extend every (k−1)-set by every frequent single item it lacks. A
    /// wider generator with the same post-prune candidate set.
    ExtendByOne,
}

/// Which shapes of rule `derive_rules` may emit. Itemsets carry at most
/// one negated literal, so at most one side of a rule can be negated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RuleForms {
    /// X ⇒ Y with every literal positive.
    pub positive: bool,
    /// The negated literal sits in the antecedent.
    pub negated_antecedent: bool,
    /// The negated literal sits in the consequent.
    pub negated_consequent: bool,
}

impl RuleForms {
    pub fn positive_only() -> Self {
        RuleForms {
            positive: true,
            negated_antecedent: false,
            negated_consequent: false,
        }
    }

    pub fn all() -> Self {
        RuleForms {
            positive: true,
            negated_antecedent: true,
            negated_consequent: true,
        }
    }

    pub fn admits(&self, antecedent: &SignedItemset, consequent: &SignedItemset) -> bool {
        match (
            antecedent.negation_count() > 0,
            consequent.negation_count() > 0,
        ) {
            (false, false) => self.positive,
            (true, false) => self.negated_antecedent,
            (false, true) => self.negated_consequent,
            (true, true) => self.negated_antecedent && self.negated_consequent,
        }
    }
}

/// Parameters for `mine` and `derive_rules`.
#[derive(Clone, PartialEq, Debug)]
pub struct MiningConfig {
    pub min_support: SupportThreshold,
    /// Fraction in [0, 1]; rules below it are not derived.
    pub min_confidence: f64,
    /// Largest itemset size to mine, if capped.
    pub max_k: Option<usize>,
    pub rule_forms: RuleForms,
    pub join_strategy: JoinStrategy,
}

impl MiningConfig {
    pub fn new(min_support: SupportThreshold, min_confidence: f64) -> Self {
        MiningConfig {
            min_support,
            min_confidence,
            max_k: None,
            rule_forms: RuleForms::positive_only(),
            join_strategy: JoinStrategy::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.min_support {
            SupportThreshold::Fraction(f) if !(f > 0.0 && f <= 1.0) => {
                return Err(Error::InvalidConfig(format!(
                    "minimum support fraction must be in (0, 1], got {f}"
                )));
            }
            SupportThreshold::Count(0) => {
                return Err(Error::InvalidConfig(
                    "minimum support count must be at least 1".into(),
                ));
            }
            _ => {}
        }
        if !(self.min_confidence >= 0.0 && self.min_confidence <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "minimum confidence must be in [0, 1], got {}",
                self.min_confidence
            )));
        }
        if self.max_k == Some(0) {
            return Err(Error::InvalidConfig(
                "level cap must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// The frequent itemsets of one size: the positive sets and the sets with
/// exactly one negated literal, each with its transaction count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelSets {
    pub k: usize,
    pub positive: Vec<(SignedItemset, usize)>,
    pub negated: Vec<(SignedItemset, usize)>,
}

impl LevelSets {
    pub fn is_empty(&self) -> bool {
        self.positive.is_empty() && self.negated.is_empty()
    }
}

/// Everything `mine` found: the resolved absolute threshold and one
/// `LevelSets` per itemset size, in increasing size order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MineResult {
    pub min_count: usize,
    pub levels: Vec<LevelSets>,
}

impl MineResult {
    /// All stored itemsets with their counts, across sizes and polarities.
    pub fn iter_itemsets(&self) -> impl Iterator<Item = (&SignedItemset, usize)> {
        self.levels.iter().flat_map(|lv| {
            lv.positive
                .iter()
                .chain(lv.negated.iter())
                .map(|(s, c)| (s, *c))
        })
    }
}

/// The size-1 level: every item whose count clears the threshold, and
/// every negated item whose absence count (N − count) clears it. Negations
/// are considered for all items, not only the infrequent ones.
pub fn frequent_1(db: &TransactionDb, cfg: &MiningConfig) -> Result<LevelSets> {
    cfg.validate()?;
    let min_count = cfg.min_support.min_count(db.n_transactions())?;
    let n = db.n_transactions();
    let mut positive = Vec::new();
    let mut negated = Vec::new();
    for id in 0..db.n_items() as ItemId {
        let c = db.item_count(id)?;
        if c >= min_count {
            positive.push((SignedItemset::positive([id])?, c));
        }
        if n - c >= min_count {
            negated.push((SignedItemset::new(vec![Literal::neg(id)])?, n - c));
        }
    }
    Ok(LevelSets {
        k: 1,
        positive,
        negated,
    })
}

/// Classic candidate join: two positive (k−1)-sets sharing their first
/// k−2 items, last items in increasing order, merge into one k-set.
/// Output is canonical and duplicate-free.
pub fn join_candidates(prev: &[SignedItemset]) -> Vec<SignedItemset> {
    let mut sorted: Vec<&SignedItemset> = prev.iter().collect();
    sorted.sort();
    sorted.dedup();

    let mut out = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        let a_lits = a.literals();
        let (prefix, last_a) = match a_lits.split_last() {
            Some((last, prefix)) => (prefix, *last),
            None => continue,
        };
        for b in &sorted[i + 1..] {
            let b_lits = b.literals();
            let (b_prefix, last_b) = match b_lits.split_last() {
                Some((last, prefix)) => (prefix, *last),
                None => continue,
            };
            if b_prefix != prefix {
                break; // sorted order: once prefixes diverge they stay diverged
            }
            let mut lits = prefix.to_vec();
            lits.push(last_a);
            lits.push(last_b);
            out.push(SignedItemset::new(lits).expect("joined candidate is well-formed"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The wider candidate generator: extend each (k−1)-set by each frequent
/// single item it does not already contain.
pub fn extend_candidates(prev: &[SignedItemset], singles: &[SignedItemset]) -> Vec<SignedItemset> {
    let mut out = Vec::new();
    for s in prev {
        for one in singles {
            debug_assert_eq!(one.len(), 1);
            if !s.contains_item(one.literals()[0].item) {
                out.push(s.union(one).expect("disjoint extension is well-formed"));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Drop every candidate that has a (k−1)-subset missing from the frequent
/// (k−1)-sets; by anti-monotonicity such a candidate cannot be frequent.
pub fn prune_candidates(
    candidates: &[SignedItemset],
    prev: &[SignedItemset],
) -> Vec<SignedItemset> {
    let keep: HashSet<&SignedItemset> = prev.iter().collect();
    candidates
        .iter()
        .filter(|c| {
            let lits = c.literals();
            (0..lits.len()).all(|drop| {
                let mut sub = lits.to_vec();
                sub.remove(drop);
                let sub = SignedItemset::new(sub).expect("subset of a valid itemset is valid");
                keep.contains(&sub)
            })
        })
        .cloned()
        .collect()
}

/// For each positive k-set, the k variants obtained by negating exactly
/// one literal: {A,B,C} yields {¬A,B,C}, {A,¬B,C}, {A,B,¬C}.
pub fn negate_candidates(candidates: &[SignedItemset]) -> Vec<SignedItemset> {
    let mut out = Vec::new();
    for c in candidates {
        for idx in 0..c.len() {
            let mut lits = c.literals().to_vec();
            lits[idx] = Literal::neg(lits[idx].item);
            out.push(SignedItemset::new(lits).expect("single negation preserves validity"));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn count_all(db: &TransactionDb, sets: &[SignedItemset]) -> Result<Vec<usize>> {
    sets.par_iter().map(|s| supports::count(db, s)).collect()
}

fn filter_frequent(
    sets: Vec<SignedItemset>,
    counts: Vec<usize>,
    min_count: usize,
) -> Vec<(SignedItemset, usize)> {
    sets.into_iter()
        .zip(counts)
        .filter(|&(_, c)| c >= min_count)
        .collect()
}

/// Run the full level-wise search. Levels advance while the previous
/// level's positive sets are nonempty (negated sets never seed joins) and
/// any `max_k` cap allows; a level is kept only if it found something.
pub fn mine(db: &TransactionDb, cfg: &MiningConfig) -> Result<MineResult> {
    cfg.validate()?;
    let min_count = cfg.min_support.min_count(db.n_transactions())?;
    let mut levels = vec![frequent_1(db, cfg)?];

    let singles: Vec<SignedItemset> = levels[0]
        .positive
        .iter()
        .map(|(s, _)| s.clone())
        .collect();

    let mut k = 2;
    while cfg.max_k.is_none_or(|cap| k <= cap) {
        let prev: Vec<SignedItemset> = levels[k - 2]
            .positive
            .iter()
            .map(|(s, _)| s.clone())
            .collect();
        if prev.is_empty() {
            break;
        }

        let candidates = match cfg.join_strategy {
            JoinStrategy::PrefixJoin => join_candidates(&prev),
            JoinStrategy::ExtendByOne => extend_candidates(&prev, &singles),
        };
        let pruned = prune_candidates(&candidates, &prev);

        let positive = filter_frequent(pruned.clone(), count_all(db, &pruned)?, min_count);
        let negated_candidates = negate_candidates(&pruned);
        let negated = filter_frequent(
            negated_candidates.clone(),
            count_all(db, &negated_candidates)?,
            min_count,
        );

        let level = LevelSets {
            k,
            positive,
            negated,
        };
        if level.is_empty() {
            break;
        }
        levels.push(level);
        k += 1;
    }

    Ok(MineResult { min_count, levels })
}

/// Derive every rule a frequent itemset of size ≥ 2 supports: each split
/// of its literals into a nonempty antecedent and consequent whose
/// confidence reaches `min_confidence` and whose shape `rule_forms`
/// admits. Antecedent counts are lookups — every sub-itemset of a stored
/// itemset is itself stored, so no recounting is needed.
pub fn derive_rules(result: &MineResult, cfg: &MiningConfig) -> Result<Vec<Rule>> {
    cfg.validate()?;
    let counts: HashMap<&SignedItemset, usize> = result.iter_itemsets().collect();

    let mut rules = Vec::new();
    for level in &result.levels {
        if level.k < 2 {
            continue;
        }
        for (set, joint) in level.positive.iter().chain(level.negated.iter()) {
            let lits = set.literals();
            debug_assert!(lits.len() < u32::BITS as usize);
            for mask in 1..(1u32 << lits.len()) - 1 {
                let (mut ant, mut cons) = (Vec::new(), Vec::new());
                for (i, l) in lits.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        ant.push(*l);
                    } else {
                        cons.push(*l);
                    }
                }
                let ant = SignedItemset::new(ant)?;
                let cons = SignedItemset::new(cons)?;
                if !cfg.rule_forms.admits(&ant, &cons) {
                    continue;
                }
                let ant_count = *counts
                    .get(&ant)
                    .expect("sub-itemset of a frequent itemset is recorded at its own level");
                if *joint as f64 / ant_count as f64 >= cfg.min_confidence {
                    rules.push(Rule::new(ant, cons, ant_count, *joint));
                }
            }
        }
    }

    rule::sort_rules(&mut rules);
    rules.dedup_by(|a, b| a.antecedent == b.antecedent && a.consequent == b.consequent);
    Ok(rules)
}
