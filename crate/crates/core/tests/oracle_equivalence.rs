//! Relation between the set-semantics oracle and the information measures
//! on every partition of the toy vocabulary into at most three categories.

use std::collections::BTreeSet;

use lexcat::fixtures::toy;
use lexcat::infotheory::{information, mutual_information, LogBase};
use lexcat::oracle::{
    contextual_partitions, enumerate_partitions, is_contextual_exact, is_syntactic_against,
    FiniteLanguage, PreimageDomain,
};
use lexcat::Partition;

#[test]
fn measure_contextual_implies_set_contextual() {
    let toy = toy();
    let support = FiniteLanguage::support_of(&toy.language);
    let mut set_only = Vec::new();
    for rgs in enumerate_partitions(10, 3).unwrap() {
        let p = Partition::from_rgs(&rgs).unwrap();
        let gap = information(&toy.language, &p, LogBase::Two)
            .unwrap()
            .contextuality_gap;
        let set = is_contextual_exact(&support, &p).unwrap();
        if gap <= 1e-9 {
            assert!(set, "{rgs:?}");
        } else if set {
            set_only.push((rgs, p));
        }
    }
    // Set contextuality only sees supports: these partitions project onto
    // whole permutation orbits, but with non-uniform mass inside an orbit.
    assert_eq!(set_only.len(), 12);
    for (rgs, p) in &set_only {
        let projected = toy.language.project(p).unwrap();
        let orbits: BTreeSet<Vec<u32>> = projected
            .iter()
            .map(|(s, _)| {
                let mut s = s.to_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let masses: BTreeSet<u64> = projected
            .iter()
            .map(|(_, q)| (q * 1e6).round() as u64)
            .collect();
        assert_eq!(orbits.len(), 1, "{rgs:?}");
        assert!(masses.len() > 1, "{rgs:?}");
    }
}

#[test]
fn oracle_syntactic_partitions_share_no_information() {
    let toy = toy();
    let support = FiniteLanguage::support_of(&toy.language);
    let pool = contextual_partitions(&support, 10, 10).unwrap();
    let mut syntactic = Vec::new();
    for rgs in enumerate_partitions(10, 3).unwrap() {
        let p = Partition::from_rgs(&rgs).unwrap();
        if is_syntactic_against(&support, &p, &pool, PreimageDomain::Language).unwrap() {
            for c in &pool {
                let mi = mutual_information(&toy.language, &p, c, LogBase::Two).unwrap();
                assert!(mi.mutual_information <= 1e-9, "{rgs:?}");
            }
            syntactic.push(p.signature().unwrap());
        }
    }
    assert_eq!(syntactic.len(), 2);
    assert!(syntactic.contains(&toy.p2.signature().unwrap()));
    assert!(syntactic.contains(&vec![0; 10]));
}
