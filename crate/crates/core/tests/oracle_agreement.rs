//! The fast engines must agree with the exhaustive reference
//! implementations on random small databases: level sets, derived rules,
//! and coherent pairs.

use std::collections::HashSet;

use proptest::prelude::*;

use pnmine::apriori::{self, MiningConfig, RuleForms, SupportThreshold};
use pnmine::coherent::{self, CoherentSearchConfig};
use pnmine::dataset::{load_basket, TransactionDb};
use pnmine::oracle;
use pnmine::supports::SignedItemset;

fn db_strategy() -> impl Strategy<Value = TransactionDb> {
    (1usize..=7).prop_flat_map(|n_items| {
        prop::collection::vec(0u32..(1u32 << n_items), 1..32).prop_map(move |rows| {
            let text: String = rows
                .iter()
                .map(|mask| {
                    let tokens: Vec<String> = (0..n_items)
                        .filter(|j| mask & (1 << j) != 0)
                        .map(|j| format!("i{j}"))
                        .collect();
                    tokens.join(" ") + "\n"
                })
                .collect();
            load_basket(text.as_bytes(), "random").unwrap()
        })
    })
}

fn engine_itemsets(db: &TransactionDb, min_count: usize) -> HashSet<(SignedItemset, usize)> {
    let mut cfg = MiningConfig::new(SupportThreshold::Count(min_count), 0.9);
    cfg.rule_forms = RuleForms::all();
    let mined = apriori::mine(db, &cfg).unwrap();
    mined
        .iter_itemsets()
        .map(|(s, c)| (s.clone(), c))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn level_sets_match_the_exhaustive_enumeration(db in db_strategy(), min_count in 1usize..6) {
        let want: HashSet<(SignedItemset, usize)> =
            oracle::oracle_frequent(&db, min_count, 1).unwrap().into_iter().collect();
        prop_assert_eq!(engine_itemsets(&db, min_count), want);
    }

    #[test]
    fn derived_rules_match_the_exhaustive_bipartitions(
        db in db_strategy(),
        min_count in 1usize..6,
        conf_pct in 0usize..=100,
    ) {
        let min_confidence = conf_pct as f64 / 100.0;
        let mut cfg = MiningConfig::new(SupportThreshold::Count(min_count), min_confidence);
        cfg.rule_forms = RuleForms::all();
        let mined = apriori::mine(&db, &cfg).unwrap();
        let got: HashSet<(SignedItemset, SignedItemset, usize, usize)> =
            apriori::derive_rules(&mined, &cfg)
                .unwrap()
                .into_iter()
                .map(|r| (r.antecedent, r.consequent, r.antecedent_count, r.joint_count))
                .collect();
        let want: HashSet<(SignedItemset, SignedItemset, usize, usize)> =
            oracle::oracle_rules(&db, min_count, min_confidence, 1)
                .unwrap()
                .into_iter()
                .map(|r| (r.antecedent, r.consequent, r.antecedent_count, r.joint_count))
                .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn coherent_search_matches_the_exhaustive_pair_scan(db in db_strategy()) {
        let got = coherent::mine_coherent(&db, &CoherentSearchConfig::new(2, 2)).unwrap();
        let want = oracle::oracle_coherent(&db, 2, 2).unwrap();
        prop_assert_eq!(got, want);
    }
}
