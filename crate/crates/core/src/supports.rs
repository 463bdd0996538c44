//! Signed itemsets (conjunctions of present/absent items), exact support
//! counting over bit-vectors, and the four-quadrant contingency breakdown
//! of an (antecedent, consequent) pair.

use crate::bits;
use crate::dataset::{ItemId, TransactionDb};
use crate::error::{Error, Result};

/// One item required present (`negated = false`) or absent (`negated = true`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub item: ItemId,
    pub negated: bool,
}

impl Literal {
    pub fn pos(item: ItemId) -> Self {
        Literal {
            item,
            negated: false,
        }
    }

    pub fn neg(item: ItemId) -> Self {
        Literal {
            item,
            negated: true,
        }
    }
}

/// A conjunction of literals over distinct items, kept sorted by item id.
///
/// The empty set is legal and denotes the always-true condition. An item may
/// appear at most once, so contradictions (A and not-A) are unrepresentable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedItemset {
    literals: Vec<Literal>,
}

impl SignedItemset {
    pub fn new(mut literals: Vec<Literal>) -> Result<Self> {
        literals.sort();
        for pair in literals.windows(2) {
            if pair[0].item == pair[1].item {
                return Err(Error::DuplicateLiteral(pair[0].item));
            }
        }
        Ok(SignedItemset { literals })
    }

    pub fn positive(items: impl IntoIterator<Item = ItemId>) -> Result<Self> {
        SignedItemset::new(items.into_iter().map(Literal::pos).collect())
    }

    pub fn empty() -> Self {
        SignedItemset {
            literals: Vec::new(),
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn item_ids(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.literals.iter().map(|l| l.item)
    }

    /// True when no literal is negated.
    pub fn is_positive(&self) -> bool {
        self.literals.iter().all(|l| !l.negated)
    }

    pub fn negation_count(&self) -> usize {
        self.literals.iter().filter(|l| l.negated).count()
    }

    pub fn contains_item(&self, item: ItemId) -> bool {
        self.literals.binary_search_by_key(&item, |l| l.item).is_ok()
    }

    pub fn is_disjoint(&self, other: &SignedItemset) -> bool {
        self.item_ids().all(|i| !other.contains_item(i))
    }

    /// The same items with all polarities forced positive.
    pub fn positive_projection(&self) -> SignedItemset {
        SignedItemset {
            literals: self.literals.iter().map(|l| Literal::pos(l.item)).collect(),
        }
    }

    /// Merge two item-disjoint conjunctions.
    pub fn union(&self, other: &SignedItemset) -> Result<SignedItemset> {
        if !self.is_disjoint(other) {
            return Err(Error::OverlappingSets);
        }
        let mut literals = self.literals.clone();
        literals.extend_from_slice(&other.literals);
        SignedItemset::new(literals)
    }
}

/// The four joint counts partitioning all `n` transactions for a pair
/// (X, Y): `n11` = X and Y, `n10` = X without Y, `n01` = Y without X,
/// `n00` = neither.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ContingencyQuad {
    pub n11: usize,
    pub n10: usize,
    pub n01: usize,
    pub n00: usize,
    pub n: usize,
}

impl ContingencyQuad {
    pub fn new(n11: usize, n10: usize, n01: usize, n00: usize) -> Self {
        ContingencyQuad {
            n11,
            n10,
            n01,
            n00,
            n: n11 + n10 + n01 + n00,
        }
    }

    /// Antecedent marginal, count(X).
    pub fn antecedent_count(&self) -> usize {
        self.n11 + self.n10
    }

    /// Consequent marginal, count(Y).
    pub fn consequent_count(&self) -> usize {
        self.n11 + self.n01
    }
}

/// Transactions satisfying every literal of `s`: positive literals present,
/// negated literals absent. The empty set counts every transaction.
pub fn count(db: &TransactionDb, s: &SignedItemset) -> Result<usize> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for l in s.literals() {
        let bits = db.bits(l.item)?;
        if l.negated {
            neg.push(bits);
        } else {
            pos.push(bits);
        }
    }
    Ok(bits::count_joint(db.n_transactions(), &pos, &neg))
}

/// Transactions satisfying every literal of both sets at once, without
/// materializing the merged set. The sets must be item-disjoint.
pub fn count_union(db: &TransactionDb, x: &SignedItemset, y: &SignedItemset) -> Result<usize> {
    debug_assert!(x.is_disjoint(y));
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for l in x.literals().iter().chain(y.literals()) {
        let bits = db.bits(l.item)?;
        if l.negated {
            neg.push(bits);
        } else {
            pos.push(bits);
        }
    }
    Ok(bits::count_joint(db.n_transactions(), &pos, &neg))
}

/// The contingency quadrants for a pair of nonempty, item-disjoint
/// conjunctions. Only the joint and the two marginals are counted from
/// bits; the remaining quadrants follow by subtraction.
pub fn contingency(
    db: &TransactionDb,
    x: &SignedItemset,
    y: &SignedItemset,
) -> Result<ContingencyQuad> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySide);
    }
    let joint = x.union(y)?; // rejects overlapping item ids
    let n = db.n_transactions();
    let n11 = count(db, &joint)?;
    let cx = count(db, x)?;
    let cy = count(db, y)?;
    Ok(ContingencyQuad {
        n11,
        n10: cx - n11,
        n01: cy - n11,
        // Added before the subtractions so the intermediate value stays
        // non-negative even when cx + cy exceeds n.
        n00: n + n11 - cx - cy,
        n,
    })
}
