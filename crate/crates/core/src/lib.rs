//! Association rule mining over transaction databases.
//!
//! The crate covers four related searches over a bit-packed transaction
//! database ([`dataset::TransactionDb`]):
//!
//! - [`apriori`] — level-wise frequent itemset mining, including itemsets
//!   with a single negated literal, and rule derivation under minimum
//!   support and confidence;
//! - [`coherent`] — threshold-free discovery of pairs whose contingency
//!   quadrants pattern-match logical equivalence;
//! - [`correlator`] — rules gated on the phi coefficient, with a decaying
//!   threshold that relaxes automatically until something qualifies;
//! - [`oracle`] — deliberately slow reference implementations the test
//!   suite uses to cross-check all of the above.
//!
//! Supporting modules: [`bits`] (packed bit-vector counting kernel),
//! [`supports`] (signed itemsets, counts, contingency quadrants),
//! [`measures`] (confidence, lift, leverage, phi) and [`rule`] (the rule
//! type, its canonical order, and its text rendering).

pub mod apriori;
pub mod bits;
pub mod coherent;
pub mod correlator;
pub mod dataset;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod rule;
pub mod supports;

pub use error::{Error, Result};
