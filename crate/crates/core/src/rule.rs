//! The rule type shared by the mining modules, its canonical ordering, and
//! the classic text layout (`ant <count> ==> cons <joint> conf:(..)`).

use std::cmp::Ordering;

use crate::dataset::TransactionDb;
use crate::error::Result;
use crate::measures::MeasureValues;
use crate::supports::{self, ContingencyQuad, SignedItemset};

/// An association rule X => Y with its two defining counts. `confidence`
/// is always `joint_count / antecedent_count`; comparisons that must be
/// exact go through the integer counts instead.
#[derive(Clone, PartialEq, Debug)]
pub struct Rule {
    pub antecedent: SignedItemset,
    pub consequent: SignedItemset,
    pub antecedent_count: usize,
    pub joint_count: usize,
    pub confidence: f64,
    pub measures: Option<MeasureValues>,
}

impl Rule {
    pub fn new(
        antecedent: SignedItemset,
        consequent: SignedItemset,
        antecedent_count: usize,
        joint_count: usize,
    ) -> Self {
        Rule {
            antecedent,
            consequent,
            antecedent_count,
            joint_count,
            confidence: joint_count as f64 / antecedent_count as f64,
            measures: None,
        }
    }

    /// No negated literal on either side.
    pub fn is_positive(&self) -> bool {
        self.antecedent.is_positive() && self.consequent.is_positive()
    }

    /// Recompute the full contingency quad for this rule's pair.
    pub fn quad(&self, db: &TransactionDb) -> Result<ContingencyQuad> {
        supports::contingency(db, &self.antecedent, &self.consequent)
    }

    /// Attach measure values computed from the recomputed quad.
    pub fn annotate(&mut self, db: &TransactionDb) -> Result<()> {
        self.measures = Some(MeasureValues::from_quad(&self.quad(db)?)?);
        Ok(())
    }

    /// Confidence as reported: percent rounded half-up, e.g. "1", "0.99",
    /// "0.9".
    pub fn confidence_display(&self) -> String {
        format_confidence(self.joint_count, self.antecedent_count)
    }

    /// `<ant> <count(ant)> ==> <cons> <count(ant u cons)> conf:(<c>)`, with
    /// the arrow spelled `==>(NEG)` when any literal is negated and `¬`
    /// prefixing negated literals.
    pub fn format(&self, db: &TransactionDb) -> Result<String> {
        let arrow = if self.is_positive() { "==>" } else { "==>(NEG)" };
        Ok(format!(
            "{} {} {} {} {} conf:({})",
            format_itemset(&self.antecedent, db)?,
            self.antecedent_count,
            arrow,
            format_itemset(&self.consequent, db)?,
            self.joint_count,
            self.confidence_display(),
        ))
    }
}

/// Literal displays in item-id order, space separated, `¬` on negations.
pub fn format_itemset(s: &SignedItemset, db: &TransactionDb) -> Result<String> {
    let mut parts = Vec::with_capacity(s.len());
    for l in s.literals() {
        let item = db.item(l.item)?;
        if l.negated {
            parts.push(format!("¬{}", item.display()));
        } else {
            parts.push(item.display());
        }
    }
    Ok(parts.join(" "))
}

/// Confidence as an integer percent, rounded half-up.
pub fn confidence_percent(joint_count: usize, antecedent_count: usize) -> u32 {
    debug_assert!(antecedent_count > 0 && joint_count <= antecedent_count);
    ((200 * joint_count as u64 + antecedent_count as u64) / (2 * antecedent_count as u64)) as u32
}

/// The percent rendered as reports print it: "1" for 100, one decimal when
/// the percent is a multiple of ten ("0.9"), two otherwise ("0.91").
pub fn format_confidence(joint_count: usize, antecedent_count: usize) -> String {
    let pct = confidence_percent(joint_count, antecedent_count);
    if pct == 100 {
        "1".to_string()
    } else if pct == 0 {
        "0".to_string()
    } else if pct.is_multiple_of(10) {
        format!("0.{}", pct / 10)
    } else {
        format!("0.{pct:02}")
    }
}

/// Whether a rule's confidence clears `min_confidence` at the two-decimal
/// precision reports use: the rounded percent must strictly exceed the
/// threshold. A confidence of exactly 1 always qualifies (nothing can
/// exceed it). Listings use this so that rules indistinguishable from the
/// threshold at print precision are not reported as beating it.
pub fn clears_reported_threshold(
    joint_count: usize,
    antecedent_count: usize,
    min_confidence: f64,
) -> bool {
    if joint_count == antecedent_count {
        return true;
    }
    f64::from(confidence_percent(joint_count, antecedent_count)) > min_confidence * 100.0 + 1e-9
}

/// Exact confidence comparison via cross-multiplication of the count
/// ratios; no float rounding can reorder ties.
fn cmp_confidence(a: &Rule, b: &Rule) -> Ordering {
    let left = a.joint_count as u128 * b.antecedent_count as u128;
    let right = b.joint_count as u128 * a.antecedent_count as u128;
    left.cmp(&right)
}

/// Canonical report order: confidence descending (exact), joint count
/// descending, antecedent size ascending, then lexicographic on the two
/// literal sequences.
pub fn compare(a: &Rule, b: &Rule) -> Ordering {
    cmp_confidence(b, a)
        .then_with(|| b.joint_count.cmp(&a.joint_count))
        .then_with(|| a.antecedent.len().cmp(&b.antecedent.len()))
        .then_with(|| a.antecedent.cmp(&b.antecedent))
        .then_with(|| a.consequent.cmp(&b.consequent))
}

/// Sort into the canonical report order.
pub fn sort_rules(rules: &mut [Rule]) {
    rules.sort_by(compare);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::load_basket;
    use crate::supports::Literal;

    fn rule(ant: &[u32], cons: &[u32], ant_count: usize, joint: usize) -> Rule {
        Rule::new(
            SignedItemset::positive(ant.iter().copied()).unwrap(),
            SignedItemset::positive(cons.iter().copied()).unwrap(),
            ant_count,
            joint,
        )
    }

    #[test]
    fn confidence_strings_round_half_up_and_trim() {
        assert_eq!(format_confidence(71, 71), "1");
        assert_eq!(format_confidence(74, 75), "0.99"); // 98.67
        assert_eq!(format_confidence(61, 67), "0.91"); // 91.04
        assert_eq!(format_confidence(76, 84), "0.9"); // 90.48
        assert_eq!(format_confidence(9, 20), "0.45");
        assert_eq!(format_confidence(1, 2), "0.5");
        assert_eq!(format_confidence(0, 5), "0");
    }

    #[test]
    fn half_up_boundary_cases() {
        // 99.5% rounds up to 100 and prints as "1".
        assert_eq!(confidence_percent(199, 200), 100);
        assert_eq!(format_confidence(199, 200), "1");
        // 90.5% rounds up to 91.
        assert_eq!(confidence_percent(181, 200), 91);
        // 90.4999...% stays at 90.
        assert_eq!(confidence_percent(1809, 2000), 90);
    }

    #[test]
    fn reported_threshold_gate_is_strict_at_print_precision() {
        // 90.48% displays as 0.9 and does not clear a 0.9 threshold...
        assert!(!clears_reported_threshold(76, 84, 0.9));
        // ...while 91.04% displays as 0.91 and does.
        assert!(clears_reported_threshold(61, 67, 0.9));
        // Exact certainty always clears.
        assert!(clears_reported_threshold(5, 5, 0.9));
        assert!(clears_reported_threshold(5, 5, 1.0));
        // A displayed tie with the threshold never clears it.
        assert!(!clears_reported_threshold(9, 10, 0.9));
    }

    #[test]
    fn sort_orders_by_exact_confidence_then_ties() {
        // 0.904762 vs 0.905: floats this close must still order exactly.
        let mut rules = vec![rule(&[0], &[1], 84, 76), rule(&[0], &[2], 200, 181)];
        sort_rules(&mut rules);
        assert_eq!(rules[0].joint_count, 181);

        // Equal confidence: larger joint first.
        let mut rules = vec![rule(&[0], &[1], 10, 5), rule(&[0], &[2], 20, 10)];
        sort_rules(&mut rules);
        assert_eq!(rules[0].joint_count, 10);

        // Equal confidence and joint: smaller antecedent first, then lex.
        let mut rules = vec![
            rule(&[1, 2], &[3], 8, 8),
            rule(&[0], &[3, 4], 8, 8),
            rule(&[0], &[2], 8, 8),
        ];
        sort_rules(&mut rules);
        assert_eq!(rules[0].antecedent.len(), 1);
        assert_eq!(
            rules[0].consequent,
            SignedItemset::positive([2]).unwrap(),
            "among equal antecedents the consequent breaks the tie"
        );
    }

    #[test]
    fn formatting_matches_the_classic_layout() {
        let db = load_basket("x y\nx y\nx\n".as_bytes(), "t").unwrap();
        let r = rule(&[0], &[1], 3, 2);
        assert_eq!(r.format(&db).unwrap(), "x 3 ==> y 2 conf:(0.67)");

        let neg = Rule::new(
            SignedItemset::new(vec![Literal::neg(1)]).unwrap(),
            SignedItemset::positive([0]).unwrap(),
            1,
            1,
        );
        assert_eq!(neg.format(&db).unwrap(), "¬y 1 ==>(NEG) x 1 conf:(1)");
    }

    #[test]
    fn annotate_attaches_measures_from_the_recomputed_quad() {
        let db = load_basket("x y\nx y\nx\n\n".as_bytes(), "t").unwrap();
        let mut r = rule(&[0], &[1], 3, 2);
        r.annotate(&db).unwrap();
        let m = r.measures.unwrap();
        assert!((m.confidence - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.lift.unwrap() - (2.0 * 4.0) / (3.0 * 2.0)).abs() < 1e-15);
    }
}
