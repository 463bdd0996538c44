//! Slow, audit-by-eye reference implementations for the test suite: row
//! scans instead of bit-parallel kernels, exhaustive bitmask enumeration
//! instead of joins. Decision logic is written out inline here on purpose
//! — these functions exist to catch bugs in the fast paths, so they avoid
//! calling them.

use crate::coherent::{self, CoherentRule};
use crate::dataset::{ItemId, TransactionDb};
use crate::error::{Error, Result};
use crate::rule::{self, Rule};
use crate::supports::{ContingencyQuad, Literal, SignedItemset};

/// Size limits for the exponential searches. Exhaustive enumeration over
/// `n` items touches all 2^n subsets, so the defaults keep runs fast;
/// raise them deliberately for deeper soak tests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OracleGuard {
    pub max_items: usize,
    pub max_rows: usize,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard {
            max_items: 10,
            max_rows: 64,
        }
    }
}

impl OracleGuard {
    fn check(&self, db: &TransactionDb) -> Result<()> {
        // Subset enumeration uses 32-bit masks; no guard may lift this.
        if db.n_items() > 31 {
            return Err(Error::TooLargeForOracle(format!(
                "{} items cannot be enumerated in a 32-bit subset mask",
                db.n_items()
            )));
        }
        if db.n_items() > self.max_items {
            return Err(Error::TooLargeForOracle(format!(
                "{} items exceeds the oracle limit of {}",
                db.n_items(),
                self.max_items
            )));
        }
        if db.n_transactions() > self.max_rows {
            return Err(Error::TooLargeForOracle(format!(
                "{} rows exceeds the oracle limit of {}",
                db.n_transactions(),
                self.max_rows
            )));
        }
        Ok(())
    }
}

/// Row-by-row support count: walk every transaction and test every
/// literal. No size guard — this is linear and safe at any scale.
pub fn oracle_count(db: &TransactionDb, s: &SignedItemset) -> Result<usize> {
    for l in s.literals() {
        db.item(l.item)?;
    }
    let mut total = 0;
    for t in 0..db.n_transactions() {
        let mut satisfied = true;
        for l in s.literals() {
            if db.contains(l.item, t)? == l.negated {
                satisfied = false;
                break;
            }
        }
        if satisfied {
            total += 1;
        }
    }
    Ok(total)
}

fn items_of_mask(mask: u32) -> Vec<ItemId> {
    (0..u32::BITS)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i as ItemId)
        .collect()
}

/// Every signed itemset with at most `max_negations` (0 or 1) negated
/// literals whose count reaches `min_count`, found by enumerating all item
/// subsets and polarity variants. A set with a negated literal of size
/// k ≥ 2 is additionally admitted only when every (k−1)-item subset of
/// its item set is frequent as a positive set — absence counts are only
/// defined over the space the level-wise candidates span, and without
/// this clause a set like {¬a, b} would qualify on count alone even when
/// the item `a` never occurs at all.
pub fn oracle_frequent(
    db: &TransactionDb,
    min_count: usize,
    max_negations: usize,
) -> Result<Vec<(SignedItemset, usize)>> {
    oracle_frequent_guarded(db, min_count, max_negations, &OracleGuard::default())
}

pub fn oracle_frequent_guarded(
    db: &TransactionDb,
    min_count: usize,
    max_negations: usize,
    guard: &OracleGuard,
) -> Result<Vec<(SignedItemset, usize)>> {
    guard.check(db)?;
    if max_negations > 1 {
        return Err(Error::InvalidConfig(
            "the oracle enumerates at most one negated literal per itemset".into(),
        ));
    }

    let n_items = db.n_items();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n_items) {
        let items = items_of_mask(mask);
        let k = items.len();

        let positive = SignedItemset::positive(items.iter().copied())?;
        let count = oracle_count(db, &positive)?;
        if count >= min_count {
            out.push((positive, count));
        }

        if max_negations == 0 {
            continue;
        }
        // Admission for negated variants: every drop-one positive subset
        // must itself be frequent (vacuous at k = 1).
        let in_candidate_space = k == 1
            || items.iter().all(|&dropped| {
                let sub = SignedItemset::positive(items.iter().copied().filter(|&i| i != dropped))
                    .expect("items are distinct");
                matches!(oracle_count(db, &sub), Ok(c) if c >= min_count)
            });
        if !in_candidate_space {
            continue;
        }
        for &negated_item in &items {
            let lits = items
                .iter()
                .map(|&i| {
                    if i == negated_item {
                        Literal::neg(i)
                    } else {
                        Literal::pos(i)
                    }
                })
                .collect();
            let set = SignedItemset::new(lits)?;
            let count = oracle_count(db, &set)?;
            if count >= min_count {
                out.push((set, count));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Every rule any frequent itemset of size ≥ 2 supports: all bipartitions,
/// confidence from freshly scanned counts, no form filtering.
pub fn oracle_rules(
    db: &TransactionDb,
    min_count: usize,
    min_confidence: f64,
    max_negations: usize,
) -> Result<Vec<Rule>> {
    let frequent = oracle_frequent(db, min_count, max_negations)?;
    let mut rules = Vec::new();
    for (set, joint) in &frequent {
        let lits = set.literals();
        if lits.len() < 2 {
            continue;
        }
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
            let ant_count = oracle_count(db, &ant)?;
            if *joint as f64 / ant_count as f64 >= min_confidence {
                rules.push(Rule::new(ant, cons, ant_count, *joint));
            }
        }
    }
    rule::sort_rules(&mut rules);
    rules.dedup_by(|a, b| a.antecedent == b.antecedent && a.consequent == b.consequent);
    Ok(rules)
}

/// Exhaustive coherent-pair search over positive sides within the size
/// bounds: classify every transaction into the four quadrants, then apply
/// the dominance inequalities spelled out inline.
pub fn oracle_coherent(
    db: &TransactionDb,
    max_antecedent: usize,
    max_consequent: usize,
) -> Result<Vec<CoherentRule>> {
    oracle_coherent_guarded(db, max_antecedent, max_consequent, &OracleGuard::default())
}

pub fn oracle_coherent_guarded(
    db: &TransactionDb,
    max_antecedent: usize,
    max_consequent: usize,
    guard: &OracleGuard,
) -> Result<Vec<CoherentRule>> {
    guard.check(db)?;
    if max_antecedent == 0 || max_consequent == 0 {
        return Err(Error::InvalidConfig(
            "side size bounds must be at least 1".into(),
        ));
    }

    let n_items = db.n_items();
    let all_masks: Vec<u32> = (1u32..(1 << n_items)).collect();
    let mut rules = Vec::new();
    for &x_mask in &all_masks {
        if (x_mask.count_ones() as usize) > max_antecedent {
            continue;
        }
        let x_items = items_of_mask(x_mask);
        for &y_mask in &all_masks {
            if (y_mask.count_ones() as usize) > max_consequent || x_mask & y_mask != 0 {
                continue;
            }
            let y_items = items_of_mask(y_mask);

            let (mut n11, mut n10, mut n01, mut n00) = (0, 0, 0, 0);
            for t in 0..db.n_transactions() {
                let mut has_x = true;
                for &i in &x_items {
                    has_x &= db.contains(i, t)?;
                }
                let mut has_y = true;
                for &i in &y_items {
                    has_y &= db.contains(i, t)?;
                }
                match (has_x, has_y) {
                    (true, true) => n11 += 1,
                    (true, false) => n10 += 1,
                    (false, true) => n01 += 1,
                    (false, false) => n00 += 1,
                }
            }

            if n11 > n10 && n11 > n01 && n00 > n10 && n00 > n01 {
                rules.push(CoherentRule {
                    antecedent: SignedItemset::positive(x_items.iter().copied())?,
                    consequent: SignedItemset::positive(y_items.iter().copied())?,
                    quad: ContingencyQuad::new(n11, n10, n01, n00),
                    forward_confidence: n11 as f64 / (n11 + n10) as f64,
                    reverse_confidence: n11 as f64 / (n11 + n01) as f64,
                });
            }
        }
    }
    coherent::sort_coherent(&mut rules);
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apriori::{self, MiningConfig, RuleForms, SupportThreshold};
    use crate::dataset::load_basket;
    use crate::supports;

    fn db() -> TransactionDb {
        load_basket(
            "a b\na b\na b\na b\na b c\na c\na\na\nb\n\n".as_bytes(),
            "tiny",
        )
        .unwrap()
    }

    #[test]
    fn row_scan_count_matches_the_bit_kernel() {
        let d = db();
        let sets = [
            SignedItemset::positive([0]).unwrap(),
            SignedItemset::positive([0, 1]).unwrap(),
            SignedItemset::new(vec![Literal::pos(0), Literal::neg(1)]).unwrap(),
            SignedItemset::new(vec![Literal::neg(0), Literal::neg(2)]).unwrap(),
            SignedItemset::empty(),
        ];
        for s in &sets {
            assert_eq!(
                oracle_count(&d, s).unwrap(),
                supports::count(&d, s).unwrap(),
                "{s:?}"
            );
        }
        assert!(oracle_count(&d, &SignedItemset::positive([99]).unwrap()).is_err());
    }

    #[test]
    fn enumeration_size_over_three_items_is_nineteen() {
        // Per size k: C(3,k) item sets × (1 positive + k single-negation
        // variants) = 6 + 9 + 4. A zero threshold admits everything.
        let d = load_basket("a b c\n".as_bytes(), "abc").unwrap();
        assert_eq!(oracle_frequent(&d, 0, 1).unwrap().len(), 19);
        assert_eq!(oracle_frequent(&d, 0, 0).unwrap().len(), 7);
        assert!(oracle_frequent(&d, 0, 2).is_err());
    }

    #[test]
    fn unreachable_threshold_yields_nothing() {
        let d = db();
        assert!(oracle_frequent(&d, 11, 1).unwrap().is_empty());
    }

    #[test]
    fn guards_refuse_oversized_databases() {
        let wide = {
            let row: Vec<String> = (0..11).map(|i| format!("i{i}")).collect();
            load_basket(row.join(" ").as_bytes(), "wide").unwrap()
        };
        assert!(matches!(
            oracle_frequent(&wide, 1, 1),
            Err(Error::TooLargeForOracle(_))
        ));
        assert!(matches!(
            oracle_coherent(&wide, 1, 1),
            Err(Error::TooLargeForOracle(_))
        ));

        let tall = load_basket("a\n".repeat(65).as_bytes(), "tall").unwrap();
        assert!(oracle_frequent(&tall, 1, 1).is_err());
        let raised = OracleGuard {
            max_items: 10,
            max_rows: 128,
        };
        assert!(oracle_frequent_guarded(&tall, 1, 1, &raised).is_ok());
    }

    #[test]
    fn absence_of_a_never_seen_item_is_not_reported() {
        // "a" occurs zero times, so {¬a, b} holds in every b-row; it still
        // must not appear: its item set has the infrequent subset {a}.
        let d = load_basket("a\nb\nb\nb\nb\n".as_bytes(), "rare").unwrap();
        let frequent = oracle_frequent(&d, 3, 1).unwrap();
        let ghost = SignedItemset::new(vec![Literal::neg(0), Literal::pos(1)]).unwrap();
        assert!(oracle_count(&d, &ghost).unwrap() >= 3, "count alone passes");
        assert!(!frequent.iter().any(|(s, _)| *s == ghost));
        // The size-1 absence is reported: {¬a} needs no subset check.
        let lone = SignedItemset::new(vec![Literal::neg(0)]).unwrap();
        assert!(frequent.iter().any(|(s, _)| *s == lone));
    }

    #[test]
    fn oracle_and_engine_agree_on_a_small_database() {
        let d = db();
        for min_count in [1, 2, 4, 6] {
            let cfg = MiningConfig::new(SupportThreshold::Count(min_count), 0.0);
            let mined = apriori::mine(&d, &cfg).unwrap();
            let mut engine: Vec<(SignedItemset, usize)> = mined
                .iter_itemsets()
                .map(|(s, c)| (s.clone(), c))
                .collect();
            engine.sort_by(|a, b| a.0.cmp(&b.0));
            assert_eq!(engine, oracle_frequent(&d, min_count, 1).unwrap());
        }
    }

    #[test]
    fn rule_oracle_matches_derive_rules() {
        let d = db();
        let mut cfg = MiningConfig::new(SupportThreshold::Count(2), 0.6);
        cfg.rule_forms = RuleForms::all();
        let mined = apriori::mine(&d, &cfg).unwrap();
        let engine = apriori::derive_rules(&mined, &cfg).unwrap();
        let oracle = oracle_rules(&d, 2, 0.6, 1).unwrap();
        assert_eq!(engine, oracle);
    }

    #[test]
    fn coherent_oracle_matches_the_engine() {
        let d = load_basket(
            "x y\nx y\nx y\nx y p q\np q\np q\nz\nz\n".as_bytes(),
            "mix",
        )
        .unwrap();
        let engine =
            coherent::mine_coherent(&d, &coherent::CoherentSearchConfig::new(2, 2)).unwrap();
        let oracle = oracle_coherent(&d, 2, 2).unwrap();
        assert_eq!(engine, oracle);
        assert!(!oracle.is_empty());
    }
}
