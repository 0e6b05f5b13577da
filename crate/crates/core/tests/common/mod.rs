//! Shared strategies and property checks for the property and acceptance
//! suites.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lexcat::infotheory::{entropy, information, mutual_information, product_entropy, LogBase};
use lexcat::language::CategoryLanguage;
use lexcat::{Partition, StochasticLanguage};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Instance {
    pub num_words: usize,
    pub language: StochasticLanguage,
    pub first: Partition,
    pub second: Partition,
    pub split_category: u32,
    pub split_seed: u64,
}

fn language(num_words: usize) -> impl Strategy<Value = StochasticLanguage> {
    (1usize..=4).prop_flat_map(move |n| {
        prop::collection::vec(
            (prop::collection::vec(0..num_words as u32, n), 1u64..=20),
            1..=12,
        )
        .prop_map(move |counts| StochasticLanguage::from_counts(n, counts).unwrap())
    })
}

/// Probabilistic partitions with up to four categories; about a third of
/// them are deterministic.
pub fn partition(num_words: usize) -> impl Strategy<Value = Partition> {
    (1usize..=4, any::<bool>()).prop_flat_map(move |(k, fuzzy)| {
        prop::collection::vec(prop::collection::vec(0u32..=3, k), num_words).prop_map(move |rows| {
            let membership = rows
                .iter()
                .map(|row| {
                    let top = row
                        .iter()
                        .enumerate()
                        .max_by_key(|(_, w)| **w)
                        .map_or(0, |(c, _)| c);
                    if !fuzzy || row.iter().all(|&w| w == 0) {
                        return vec![(top as u32, 1.0)];
                    }
                    let total: u32 = row.iter().sum();
                    row.iter()
                        .enumerate()
                        .map(|(c, &w)| (c as u32, w as f64 / total as f64))
                        .collect()
                })
                .collect();
            let labels = (0..k).map(|c| format!("k{c}")).collect();
            Partition::new(labels, membership).unwrap()
        })
    })
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=8).prop_flat_map(|v| {
        (
            language(v),
            partition(v),
            partition(v),
            0u32..4,
            any::<u64>(),
        )
            .prop_map(move |(language, first, second, c, split_seed)| {
                let split_category = c % first.num_categories() as u32;
                Instance {
                    num_words: v,
                    language,
                    first,
                    second,
                    split_category,
                    split_seed,
                }
            })
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn max_diff(a: &CategoryLanguage, b: &CategoryLanguage) -> f64 {
    a.max_abs_diff(b)
}

pub fn entropy_chain(x: &Instance) -> Result<(), TestCaseError> {
    let r = information(&x.language, &x.first, LogBase::Two).unwrap();
    check(
        r.h_unigram >= r.h_shuffled - TOL && r.h_shuffled >= r.h_language - TOL,
        || format!("chain violated: {r:?}"),
    )
}

pub fn information_ordering(x: &Instance) -> Result<(), TestCaseError> {
    let r = information(&x.language, &x.first, LogBase::Two).unwrap();
    check(
        r.information >= r.information_shuffled - TOL && r.information_shuffled >= -TOL,
        || format!("I >= I_shuffled >= 0 violated: {r:?}"),
    )
}

pub fn mi_nonnegative_symmetric(x: &Instance) -> Result<(), TestCaseError> {
    let ab = mutual_information(&x.language, &x.first, &x.second, LogBase::Two).unwrap();
    let ba = mutual_information(&x.language, &x.second, &x.first, LogBase::Two).unwrap();
    check(ab.mutual_information >= -TOL, || {
        format!("negative MI {ab:?}")
    })?;
    check(
        (ab.mutual_information - ba.mutual_information).abs() <= TOL,
        || {
            format!(
                "MI asymmetric: {} vs {}",
                ab.mutual_information, ba.mutual_information
            )
        },
    )
}

pub fn projection_commutes_with_shuffle(x: &Instance) -> Result<(), TestCaseError> {
    let a = x.language.shuffle().project(&x.first).unwrap();
    let b = x.language.project(&x.first).unwrap().shuffle();
    let d = max_diff(&a, &b);
    check(d <= TOL, || format!("project/shuffle differ by {d}"))
}

pub fn refinement_monotone(x: &Instance) -> Result<(), TestCaseError> {
    let before = information(&x.language, &x.first, LogBase::Two).unwrap();
    let random = x
        .first
        .split_category_random(x.split_category, 2, x.split_seed)
        .unwrap();
    let by_second = x
        .first
        .split_category_by_annotation(x.split_category, &x.second)
        .unwrap();
    for refined in [random, by_second, x.first.product(&x.second).unwrap()] {
        let after = information(&x.language, &refined, LogBase::Two).unwrap();
        check(after.information >= before.information - TOL, || {
            format!(
                "split lost information: {} -> {}",
                before.information, after.information
            )
        })?;
    }
    Ok(())
}

pub fn factored_entropy_matches_explicit(x: &Instance) -> Result<(), TestCaseError> {
    let factored = product_entropy(&x.language, &x.first, LogBase::Two).unwrap();
    // explicit unigram product over words, then projected
    let marginal: BTreeMap<u32, f64> = x.language.unigram_marginal();
    let mut seqs: Vec<(Vec<u32>, f64)> = vec![(Vec::new(), 1.0)];
    for _ in 0..x.language.n() {
        seqs = seqs
            .iter()
            .flat_map(|(s, p)| {
                marginal.iter().map(move |(&w, &q)| {
                    let mut s = s.clone();
                    s.push(w);
                    (s, p * q)
                })
            })
            .collect();
    }
    let product = StochasticLanguage::new(x.language.n(), seqs).unwrap();
    let explicit = entropy(&product.project(&x.first).unwrap(), LogBase::Two);
    check((factored - explicit).abs() <= TOL, || {
        format!("factored {factored} vs explicit {explicit}")
    })
}

/// Every property above, in order.
pub type Property = fn(&Instance) -> Result<(), TestCaseError>;

pub const PROPERTIES: [(&str, Property); 6] = [
    ("entropy chain", entropy_chain),
    ("I >= I_shuffled >= 0", information_ordering),
    ("MI >= 0 and symmetric", mi_nonnegative_symmetric),
    ("project/shuffle commute", projection_commutes_with_shuffle),
    ("refinement monotone", refinement_monotone),
    (
        "factored entropy identity",
        factored_entropy_matches_explicit,
    ),
];
