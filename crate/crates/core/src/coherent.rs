//! Threshold-free rule discovery. A pair (X, Y) qualifies on the shape of
//! its contingency quadrants alone: the two agreement quadrants (X∧Y and
//! ¬X∧¬Y) must each strictly exceed the two disagreement quadrants (X∧¬Y
//! and ¬X∧Y), the count-level image of logical equivalence. No support or
//! confidence threshold is consulted anywhere in this module.

use rayon::prelude::*;

use crate::dataset::{ItemId, TransactionDb};
use crate::error::{Error, Result};
use crate::supports::{self, ContingencyQuad, Literal, SignedItemset};

/// Bounds for the exhaustive pair search. The search space is every
/// ordered pair of item-disjoint conjunctions within the size bounds,
/// optionally restricted to a subset of items.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoherentSearchConfig {
    pub max_antecedent: usize,
    pub max_consequent: usize,
    /// When set, only these items participate in either side.
    pub items: Option<Vec<ItemId>>,
    /// Permit negated literals inside the sides. Off by default: the
    /// classic output is purely positive.
    pub allow_negated: bool,
}

impl CoherentSearchConfig {
    pub fn new(max_antecedent: usize, max_consequent: usize) -> Self {
        CoherentSearchConfig {
            max_antecedent,
            max_consequent,
            items: None,
            allow_negated: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_antecedent == 0 || self.max_consequent == 0 {
            return Err(Error::InvalidConfig(
                "side size bounds must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// A pair that passed the equivalence-shape test, with its quadrants and
/// both conditional frequencies (forward = n11/count(X), reverse =
/// n11/count(Y)).
#[derive(Clone, PartialEq, Debug)]
pub struct CoherentRule {
    pub antecedent: SignedItemset,
    pub consequent: SignedItemset,
    pub quad: ContingencyQuad,
    pub forward_confidence: f64,
    pub reverse_confidence: f64,
}

/// The equivalence-shape test: both agreement quadrants strictly dominate
/// both disagreement quadrants. Strict inequalities mean a tie never
/// asserts a direction.
pub fn is_coherent(q: &ContingencyQuad) -> bool {
    q.n11 > q.n10 && q.n11 > q.n01 && q.n00 > q.n10 && q.n00 > q.n01
}

/// Every nonempty conjunction of up to `max_len` literals over `ids`,
/// one polarity choice per item when `allow_negated` is set.
fn enumerate_sides(ids: &[ItemId], max_len: usize, allow_negated: bool) -> Vec<SignedItemset> {
    fn extend(
        ids: &[ItemId],
        start: usize,
        max_len: usize,
        allow_negated: bool,
        current: &mut Vec<Literal>,
        out: &mut Vec<SignedItemset>,
    ) {
        for i in start..ids.len() {
            let polarities: &[bool] = if allow_negated { &[false, true] } else { &[false] };
            for &negated in polarities {
                current.push(Literal {
                    item: ids[i],
                    negated,
                });
                out.push(SignedItemset::new(current.clone()).expect("items are distinct"));
                if current.len() < max_len {
                    extend(ids, i + 1, max_len, allow_negated, current, out);
                }
                current.pop();
            }
        }
    }

    let mut out = Vec::new();
    extend(ids, 0, max_len, allow_negated, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Exhaustively test every in-bounds pair and keep those whose quadrants
/// pass `is_coherent`. Output order: forward confidence descending
/// (compared exactly on counts), then n11 descending, then lexicographic.
pub fn mine_coherent(
    db: &TransactionDb,
    cfg: &CoherentSearchConfig,
) -> Result<Vec<CoherentRule>> {
    cfg.validate()?;
    let ids: Vec<ItemId> = match &cfg.items {
        Some(list) => {
            for &id in list {
                db.item(id)?;
            }
            let mut ids = list.clone();
            ids.sort_unstable();
            ids.dedup();
            ids
        }
        None => (0..db.n_items() as ItemId).collect(),
    };

    let max_side = cfg.max_antecedent.max(cfg.max_consequent);
    let sides = enumerate_sides(&ids, max_side, cfg.allow_negated);
    let side_counts: Result<Vec<usize>> = sides.iter().map(|s| supports::count(db, s)).collect();
    let side_counts = side_counts?;
    let n = db.n_transactions();

    let per_antecedent: Result<Vec<Vec<CoherentRule>>> = sides
        .par_iter()
        .enumerate()
        .map(|(xi, x)| {
            let mut found = Vec::new();
            if x.len() > cfg.max_antecedent {
                return Ok(found);
            }
            let cx = side_counts[xi];
            for (yi, y) in sides.iter().enumerate() {
                if y.len() > cfg.max_consequent || !x.is_disjoint(y) {
                    continue;
                }
                let n11 = supports::count_union(db, x, y)?;
                // n11 ≤ n10 is already decided by cx alone; skip the rest.
                if 2 * n11 <= cx {
                    continue;
                }
                let cy = side_counts[yi];
                let quad = ContingencyQuad {
                    n11,
                    n10: cx - n11,
                    n01: cy - n11,
                    // Added before the subtractions so the intermediate
                    // value stays non-negative even when cx + cy exceeds n.
                    n00: n + n11 - cx - cy,
                    n,
                };
                if is_coherent(&quad) {
                    found.push(CoherentRule {
                        antecedent: x.clone(),
                        consequent: y.clone(),
                        quad,
                        forward_confidence: n11 as f64 / cx as f64,
                        reverse_confidence: n11 as f64 / cy as f64,
                    });
                }
            }
            Ok(found)
        })
        .collect();

    let mut rules: Vec<CoherentRule> = per_antecedent?.into_iter().flatten().collect();
    sort_coherent(&mut rules);
    Ok(rules)
}

/// Forward confidence descending via exact cross-multiplication, then n11
/// descending, then lexicographic on the sides.
pub fn sort_coherent(rules: &mut [CoherentRule]) {
    rules.sort_by(|a, b| {
        let left = a.quad.n11 as u128 * b.quad.antecedent_count() as u128;
        let right = b.quad.n11 as u128 * a.quad.antecedent_count() as u128;
        right
            .cmp(&left)
            .then_with(|| b.quad.n11.cmp(&a.quad.n11))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::load_basket;

    fn quad(n11: usize, n10: usize, n01: usize, n00: usize) -> ContingencyQuad {
        ContingencyQuad::new(n11, n10, n01, n00)
    }

    #[test]
    fn dominance_test_on_reference_quads() {
        assert!(is_coherent(&quad(74, 1, 9, 17)));
        assert!(!is_coherent(&quad(25, 25, 25, 26)), "n11 ties n10");
        assert!(!is_coherent(&quad(0, 0, 0, 10)), "all-zero true quadrant");
        assert!(!is_coherent(&quad(10, 2, 2, 2)), "n00 ties n01");
        assert!(is_coherent(&quad(3, 2, 2, 3)));
        assert!(!is_coherent(&quad(3, 3, 2, 4)));
    }

    #[test]
    fn swapping_to_the_contrapositive_preserves_the_verdict() {
        let quads = [
            quad(74, 1, 9, 17),
            quad(5, 2, 3, 9),
            quad(1, 0, 0, 1),
            quad(4, 4, 1, 8),
            quad(0, 3, 5, 7),
        ];
        for q in quads {
            let swapped = quad(q.n00, q.n01, q.n10, q.n11);
            assert_eq!(is_coherent(&q), is_coherent(&swapped), "{q:?}");
        }
    }

    #[test]
    fn bounds_of_zero_are_rejected() {
        let db = load_basket("a b\n".as_bytes(), "t").unwrap();
        assert!(mine_coherent(&db, &CoherentSearchConfig::new(0, 1)).is_err());
        assert!(mine_coherent(&db, &CoherentSearchConfig::new(1, 0)).is_err());
    }

    // x and y always co-occur; z is noise present in the other rows.
    fn equivalent_pair_db() -> crate::dataset::TransactionDb {
        load_basket("x y\nx y\nx y\nz\nz\n".as_bytes(), "eq").unwrap()
    }

    #[test]
    fn perfect_equivalence_is_found_in_both_directions() {
        let db = equivalent_pair_db();
        let rules = mine_coherent(&db, &CoherentSearchConfig::new(1, 1)).unwrap();
        let x = SignedItemset::positive([0]).unwrap();
        let y = SignedItemset::positive([1]).unwrap();
        let forward = rules
            .iter()
            .find(|r| r.antecedent == x && r.consequent == y)
            .expect("x ⇒ y");
        assert_eq!(
            (forward.quad.n11, forward.quad.n10, forward.quad.n01, forward.quad.n00),
            (3, 0, 0, 2)
        );
        assert_eq!(forward.forward_confidence, 1.0);
        assert!(rules.iter().any(|r| r.antecedent == y && r.consequent == x));
        // Every returned rule beats a coin flip forward, as the quadrant
        // inequalities force.
        for r in &rules {
            assert!(r.forward_confidence > 0.5);
        }
    }

    #[test]
    fn duplicating_the_database_changes_quads_but_not_verdicts() {
        let db = equivalent_pair_db();
        let doubled = load_basket(
            "x y\nx y\nx y\nz\nz\nx y\nx y\nx y\nz\nz\n".as_bytes(),
            "eq2",
        )
        .unwrap();
        let cfg = CoherentSearchConfig::new(2, 2);
        let once = mine_coherent(&db, &cfg).unwrap();
        let twice = mine_coherent(&doubled, &cfg).unwrap();
        assert_eq!(once.len(), twice.len());
        for (a, b) in once.iter().zip(&twice) {
            assert_eq!(a.antecedent, b.antecedent);
            assert_eq!(a.consequent, b.consequent);
            assert_eq!(a.quad.n11 * 2, b.quad.n11);
            assert_eq!(a.quad.n00 * 2, b.quad.n00);
        }
    }

    #[test]
    fn item_whitelist_restricts_the_search() {
        let db = equivalent_pair_db();
        let mut cfg = CoherentSearchConfig::new(1, 1);
        cfg.items = Some(vec![0, 2]); // x and z only
        let rules = mine_coherent(&db, &cfg).unwrap();
        assert!(rules.iter().all(|r| !r.antecedent.contains_item(1)
            && !r.consequent.contains_item(1)));

        cfg.items = Some(vec![99]);
        assert!(mine_coherent(&db, &cfg).is_err(), "unknown item id");
    }

    #[test]
    fn negated_literals_participate_only_when_enabled() {
        // x present exactly when y absent.
        let db = load_basket("x\nx\ny\ny\n".as_bytes(), "xor").unwrap();
        let mut cfg = CoherentSearchConfig::new(1, 1);
        assert!(mine_coherent(&db, &cfg).unwrap().is_empty());

        cfg.allow_negated = true;
        let rules = mine_coherent(&db, &cfg).unwrap();
        let x = SignedItemset::positive([0]).unwrap();
        let not_y = SignedItemset::new(vec![Literal::neg(1)]).unwrap();
        let hit = rules
            .iter()
            .find(|r| r.antecedent == x && r.consequent == not_y)
            .expect("x ⇒ ¬y");
        assert_eq!(
            (hit.quad.n11, hit.quad.n10, hit.quad.n01, hit.quad.n00),
            (2, 0, 0, 2)
        );
    }

    #[test]
    fn output_is_sorted_by_forward_confidence_then_n11() {
        let db = load_basket(
            "x y\nx y\nx y\nx y\nx y p q\np q\np q\nz\nz\nz\n".as_bytes(),
            "mix",
        )
        .unwrap();
        let rules = mine_coherent(&db, &CoherentSearchConfig::new(2, 2)).unwrap();
        assert!(!rules.is_empty());
        for w in rules.windows(2) {
            let left = w[0].quad.n11 as u128 * w[1].quad.antecedent_count() as u128;
            let right = w[1].quad.n11 as u128 * w[0].quad.antecedent_count() as u128;
            assert!(left >= right, "forward confidence must not increase");
        }
    }
}
