//! Exact, set-valued versions of the contextual / independent / syntactic
//! definitions for deterministic partitions of tiny languages. These serve
//! as ground truth for the information measures.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::language::{distinct_permutations, Language};
use crate::partition::Partition;

/// Longest sequence [`shuffle_closure`] will permute.
pub const MAX_SHUFFLE_LENGTH: usize = 8;
/// Largest vocabulary [`enumerate_partitions`] will walk.
pub const MAX_ENUMERATION_VOCAB: usize = 12;
/// Default vocabulary guard for [`is_syntactic_exact`].
pub const DEFAULT_SYNTACTIC_GUARD: usize = 10;

/// A set of word-id sequences, possibly of different lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLanguage {
    sequences: BTreeSet<Vec<u32>>,
}

impl FiniteLanguage {
    pub fn new<I: IntoIterator<Item = Vec<u32>>>(sequences: I) -> Result<Self> {
        let sequences: BTreeSet<_> = sequences.into_iter().collect();
        if sequences.is_empty() {
            return Err(Error::validation("finite language must not be empty"));
        }
        Ok(Self { sequences })
    }

    /// Support of a stochastic language.
    pub fn support_of<K>(language: &Language<K>) -> Self {
        Self {
            sequences: language.iter().map(|(s, _)| s.to_vec()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn contains(&self, seq: &[u32]) -> bool {
        self.sequences.contains(seq)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.sequences.iter().map(Vec::as_slice)
    }

    pub fn is_superset(&self, other: &FiniteLanguage) -> bool {
        self.sequences.is_superset(&other.sequences)
    }

    /// Image under a deterministic category assignment.
    fn project(&self, assignment: &[u32]) -> Result<BTreeSet<Vec<u32>>> {
        self.sequences
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&w| {
                        assignment.get(w as usize).copied().ok_or_else(|| {
                            Error::validation(format!(
                                "word id {w} is not covered by the partition"
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// Every rearrangement of every sequence.
pub fn shuffle_closure(language: &FiniteLanguage) -> Result<FiniteLanguage> {
    let longest = language.sequences.iter().map(Vec::len).max().unwrap_or(0);
    if longest > MAX_SHUFFLE_LENGTH {
        return Err(Error::Resource(format!(
            "shuffle closure of sequences of length {longest} (limit {MAX_SHUFFLE_LENGTH})"
        )));
    }
    let mut out = BTreeSet::new();
    for seq in &language.sequences {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        out.extend(distinct_permutations(&sorted));
    }
    Ok(FiniteLanguage { sequences: out })
}

fn deterministic(partition: &Partition) -> Result<Vec<u32>> {
    partition
        .assignment()
        .ok_or_else(|| Error::validation("exact set semantics need a deterministic partition"))
}

/// `π(L) = π(L̄)` as sets.
pub fn is_contextual_exact(language: &FiniteLanguage, partition: &Partition) -> Result<bool> {
    let assignment = deterministic(partition)?;
    let closure = shuffle_closure(language)?;
    Ok(language.project(&assignment)? == closure.project(&assignment)?)
}

/// Where the common preimage of two category patterns is looked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PreimageDomain {
    /// Only attested sequences of the language.
    #[default]
    Language,
    /// Any sequence over the vocabulary. A pattern pair is then compatible
    /// as soon as every position has some word in both categories.
    AllSequences,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// A pattern of the first partition and one of the second whose
    /// preimages do not meet.
    pub witness: Option<(Vec<u32>, Vec<u32>)>,
}

type PatternTest = Box<dyn Fn(&[u32], &[u32]) -> bool>;

/// Whether every pattern of `first` can co-occur with every equal-length
/// pattern of `second`. Pairs of different lengths are not constrained.
pub fn are_independent_exact(
    language: &FiniteLanguage,
    first: &Partition,
    second: &Partition,
    domain: PreimageDomain,
) -> Result<Independence> {
    let a = deterministic(first)?;
    let b = deterministic(second)?;
    let patterns_a = language.project(&a)?;
    let patterns_b = language.project(&b)?;
    let compatible: PatternTest = match domain {
        PreimageDomain::Language => {
            let joint: BTreeSet<(Vec<u32>, Vec<u32>)> = language
                .sequences
                .iter()
                .map(|s| {
                    (
                        s.iter().map(|&w| a[w as usize]).collect(),
                        s.iter().map(|&w| b[w as usize]).collect(),
                    )
                })
                .collect();
            Box::new(move |x, y| joint.contains(&(x.to_vec(), y.to_vec())))
        }
        PreimageDomain::AllSequences => {
            let cells: BTreeSet<(u32, u32)> = a.iter().copied().zip(b.iter().copied()).collect();
            Box::new(move |x, y| x.iter().zip(y).all(|(&i, &j)| cells.contains(&(i, j))))
        }
    };
    for x in &patterns_a {
        for y in patterns_b.iter().filter(|y| y.len() == x.len()) {
            if !compatible(x, y) {
                return Ok(Independence {
                    independent: false,
                    witness: Some((x.clone(), y.clone())),
                });
            }
        }
    }
    Ok(Independence {
        independent: true,
        witness: None,
    })
}

/// All deterministic partitions of `num_words` words that are contextual
/// for `language`, with at most `max_categories` categories.
pub fn contextual_partitions(
    language: &FiniteLanguage,
    num_words: usize,
    max_categories: usize,
) -> Result<Vec<Partition>> {
    let closure = shuffle_closure(language)?;
    let mut out = Vec::new();
    for rgs in enumerate_partitions(num_words, max_categories)? {
        if language.project(&rgs)? == closure.project(&rgs)? {
            out.push(Partition::from_rgs(&rgs)?);
        }
    }
    Ok(out)
}

/// Independent of every deterministic contextual partition of the
/// vocabulary. Enumerates all set partitions, so `|V|` must not exceed
/// `guard`.
pub fn is_syntactic_exact(
    language: &FiniteLanguage,
    partition: &Partition,
    domain: PreimageDomain,
    guard: usize,
) -> Result<bool> {
    let num_words = partition.num_words();
    if num_words > guard {
        return Err(Error::Resource(format!(
            "syntactic check over {num_words} words (limit {guard})"
        )));
    }
    let pool = contextual_partitions(language, num_words, num_words)?;
    is_syntactic_against(language, partition, &pool, domain)
}

/// [`is_syntactic_exact`] against a precomputed pool of contextual
/// partitions.
pub fn is_syntactic_against(
    language: &FiniteLanguage,
    partition: &Partition,
    contextual: &[Partition],
    domain: PreimageDomain,
) -> Result<bool> {
    for other in contextual {
        if !are_independent_exact(language, partition, other, domain)?.independent {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restricted growth strings of length `num_words` with values below
/// `max_categories`: every set partition exactly once, in lexicographic
/// order.
pub fn enumerate_partitions(num_words: usize, max_categories: usize) -> Result<SetPartitions> {
    if num_words > MAX_ENUMERATION_VOCAB {
        return Err(Error::Resource(format!(
            "partition enumeration over {num_words} words (limit {MAX_ENUMERATION_VOCAB})"
        )));
    }
    if num_words == 0 {
        return Err(Error::validation("empty vocabulary"));
    }
    Ok(SetPartitions {
        current: (max_categories > 0).then(|| vec![0; num_words]),
        max_categories: max_categories as u32,
    })
}

#[derive(Debug, Clone)]
pub struct SetPartitions {
    current: Option<Vec<u32>>,
    max_categories: u32,
}

impl Iterator for SetPartitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut prefix_max = vec![0u32; next.len()];
        for i in 1..next.len() {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        for i in (1..next.len()).rev() {
            if next[i] <= prefix_max[i] && next[i] + 1 < self.max_categories {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = 0);
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
