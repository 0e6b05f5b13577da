//! Fixed-length stochastic languages and the three views the information
//! measures are built on: the language itself, its shuffled (permutation
//! averaged) version, and the unigram product that keeps only word
//! frequencies.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::vocab::Vocabulary;

/// Tolerance on total probability mass.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Marker for languages over word ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Words {}

/// Marker for languages over category ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Categories {}

/// A sparse distribution over length-`n` sequences of symbol ids.
///
/// Entries are kept sorted by sequence so every traversal (and therefore
/// every floating point reduction) happens in the same order.
pub struct Language<K> {
    n: usize,
    entries: BTreeMap<Vec<u32>, f64>,
    _kind: PhantomData<K>,
}

/// Distribution over word sequences.
pub type StochasticLanguage = Language<Words>;
/// Distribution over category sequences, the image of a projection.
pub type CategoryLanguage = Language<Categories>;

impl<K> Clone for Language<K> {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            entries: self.entries.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for Language<K> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<K> fmt::Debug for Language<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Language")
            .field("n", &self.n)
            .field("entries", &self.entries)
            .finish()
    }
}

impl<K> Language<K> {
    /// Builds a language from `(sequence, probability)` pairs. Duplicate
    /// sequences are summed; zero-mass entries are dropped.
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        if n == 0 {
            return Err(Error::validation("sequence length n must be at least 1"));
        }
        let mut map = BTreeMap::new();
        for (seq, p) in entries {
            if seq.len() != n {
                return Err(Error::validation(format!(
                    "sequence of length {} in a language with n = {n}",
                    seq.len()
                )));
            }
            if !p.is_finite() || p < 0.0 {
                return Err(Error::validation(format!("invalid probability {p}")));
            }
            if p > 0.0 {
                *map.entry(seq).or_insert(0.0) += p;
            }
        }
        let lang = Self {
            n,
            entries: map,
            _kind: PhantomData,
        };
        let total = lang.total_mass();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::validation(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(lang)
    }

    /// Builds the empirical distribution of a bag of sequences with counts.
    pub fn from_counts<I>(n: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        let counts: BTreeMap<Vec<u32>, u64> =
            counts.into_iter().fold(BTreeMap::new(), |mut acc, (s, c)| {
                *acc.entry(s).or_insert(0) += c;
                acc
            });
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::validation("no sequences to build a language from"));
        }
        let total = total as f64;
        Self::new(n, counts.into_iter().map(|(s, c)| (s, c as f64 / total)))
    }

    /// Uniform distribution over the given distinct sequences.
    pub fn uniform<I>(n: usize, sequences: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        Self::from_counts(n, sequences.into_iter().map(|s| (s, 1)))
    }

    // Skips validation; callers guarantee length and mass invariants.
    pub(crate) fn from_map_unchecked(n: usize, entries: BTreeMap<Vec<u32>, f64>) -> Self {
        Self {
            n,
            entries,
            _kind: PhantomData,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn prob(&self, seq: &[u32]) -> f64 {
        self.entries.get(seq).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.entries.iter().map(|(s, &p)| (s.as_slice(), p))
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Largest symbol id appearing in the support, if any.
    pub fn max_symbol(&self) -> Option<u32> {
        self.entries.keys().flat_map(|s| s.iter().copied()).max()
    }

    /// Maximum absolute difference in probability over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut diff: f64 = 0.0;
        for (s, p) in &self.entries {
            diff = diff.max((p - other.prob(s)).abs());
        }
        for (s, q) in &other.entries {
            if !self.entries.contains_key(s) {
                diff = diff.max(q.abs());
            }
        }
        diff
    }

    /// The permutation-averaged language: every sequence's mass is spread
    /// uniformly over the distinct rearrangements of its multiset.
    pub fn shuffle(&self) -> Self {
        let mut orbits: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (seq, &p) in &self.entries {
            let mut key = seq.clone();
            key.sort_unstable();
            *orbits.entry(key).or_insert(0.0) += p;
        }
        let mut out = BTreeMap::new();
        for (multiset, mass) in orbits {
            let arrangements = distinct_permutations(&multiset);
            let share = mass / arrangements.len() as f64;
            for a in arrangements {
                *out.entry(a).or_insert(0.0) += share;
            }
        }
        Self::from_map_unchecked(self.n, out)
    }

    /// Frequency of each symbol over all positions:
    /// `p(v) = (1/n) Σ_w p(w) · #v(w)`.
    pub fn unigram_marginal(&self) -> BTreeMap<u32, f64> {
        let inv_n = 1.0 / self.n as f64;
        let mut out = BTreeMap::new();
        for (seq, &p) in &self.entries {
            for &v in seq {
                *out.entry(v).or_insert(0.0) += p * inv_n;
            }
        }
        out
    }

    /// The unigram-product language, kept in factored form.
    pub fn unigram_product(&self) -> UnigramProduct {
        UnigramProduct {
            n: self.n,
            marginal: self.unigram_marginal(),
        }
    }

    /// Marginal distribution of the symbol at `position`.
    pub fn position_marginal(&self, position: usize) -> BTreeMap<u32, f64> {
        let mut out = BTreeMap::new();
        for (seq, &p) in &self.entries {
            *out.entry(seq[position]).or_insert(0.0) += p;
        }
        out
    }
}

impl StochasticLanguage {
    /// Pushes the language through a partition:
    /// `p(c_1..c_n) = Σ_u Π_k π(c_k | u_k) · p(u)`.
    pub fn project(&self, partition: &Partition) -> Result<CategoryLanguage> {
        if let Some(max) = self.max_symbol() {
            if max as usize >= partition.num_words() {
                return Err(Error::validation(format!(
                    "word id {max} is not covered by a partition over {} words",
                    partition.num_words()
                )));
            }
        }
        let mut acc: HashMap<Vec<u32>, f64> = HashMap::new();
        let mut key = vec![0u32; self.n];
        for (seq, &p) in &self.entries {
            let rows: Vec<&[(u32, f64)]> = seq.iter().map(|&w| partition.membership(w)).collect();
            accumulate_outer(&rows, 0, p, &mut key, &mut acc);
        }
        let entries: BTreeMap<Vec<u32>, f64> = acc.into_iter().filter(|(_, p)| *p > 0.0).collect();
        Ok(Language::from_map_unchecked(self.n, entries))
    }

    /// JSON form with words spelled out through the vocabulary.
    pub fn to_json(&self, vocab: &Vocabulary) -> Result<LanguageJson> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (seq, &p) in &self.entries {
            let words = seq
                .iter()
                .map(|&id| {
                    vocab
                        .word(id)
                        .ok_or_else(|| Error::validation(format!("word id {id} not in vocabulary")))
                })
                .collect::<Result<Vec<_>>>()?;
            entries.push((words.join(" "), p));
        }
        Ok(LanguageJson { n: self.n, entries })
    }

    /// Reads the JSON form, interning unseen words into `vocab`.
    pub fn from_json(json: &LanguageJson, vocab: &mut Vocabulary) -> Result<Self> {
        let entries = json
            .entries
            .iter()
            .map(|(text, p)| {
                let seq = text.split_whitespace().map(|w| vocab.intern(w)).collect();
                (seq, *p)
            })
            .collect::<Vec<_>>();
        Self::new(json.n, entries)
    }
}

/// Serialized language: `{"n": 3, "entries": [["w1 w2 w3", 0.25], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageJson {
    pub n: usize,
    pub entries: Vec<(String, f64)>,
}

fn accumulate_outer(
    rows: &[&[(u32, f64)]],
    pos: usize,
    weight: f64,
    key: &mut Vec<u32>,
    acc: &mut HashMap<Vec<u32>, f64>,
) {
    if pos == rows.len() {
        *acc.entry(key.clone()).or_insert(0.0) += weight;
        return;
    }
    for &(cat, m) in rows[pos] {
        key[pos] = cat;
        accumulate_outer(rows, pos + 1, weight * m, key, acc);
    }
}

/// All distinct rearrangements of a sorted multiset, in lexicographic order.
pub(crate) fn distinct_permutations(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(xs: &mut [u32]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// The positionwise-independent language `p(v_1..v_n) = Π_j p(v_j)`, stored
/// as its unigram marginal. Materializing it costs `|V|^n` entries and is
/// only offered for small cases.
#[derive(Debug, Clone, PartialEq)]
pub struct UnigramProduct {
    n: usize,
    marginal: BTreeMap<u32, f64>,
}

impl UnigramProduct {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marginal(&self) -> &BTreeMap<u32, f64> {
        &self.marginal
    }

    /// Category unigram `q(c) = Σ_v π(c|v) p(v)`, indexed by category id.
    pub fn category_marginal(&self, partition: &Partition) -> Result<Vec<f64>> {
        let mut q = vec![0.0; partition.num_categories()];
        for (&v, &p) in &self.marginal {
            if v as usize >= partition.num_words() {
                return Err(Error::validation(format!(
                    "word id {v} is not covered by a partition over {} words",
                    partition.num_words()
                )));
            }
            for &(c, m) in partition.membership(v) {
                q[c as usize] += m * p;
            }
        }
        Ok(q)
    }

    /// Projection of the product language, still factored.
    pub fn project(&self, partition: &Partition) -> Result<UnigramProduct> {
        let q = self.category_marginal(partition)?;
        Ok(UnigramProduct {
            n: self.n,
            marginal: q
                .into_iter()
                .enumerate()
                .filter(|(_, p)| *p > 0.0)
                .map(|(c, p)| (c as u32, p))
                .collect(),
        })
    }

    /// Expands to an explicit language with `|support|^n` sequences.
    pub fn materialize<K>(&self) -> Language<K> {
        let symbols: Vec<(u32, f64)> = self.marginal.iter().map(|(&s, &p)| (s, p)).collect();
        let rows = vec![symbols.as_slice(); self.n];
        let mut acc = HashMap::new();
        let mut key = vec![0u32; self.n];
        accumulate_outer(&rows, 0, 1.0, &mut key, &mut acc);
        Language::from_map_unchecked(self.n, acc.into_iter().collect())
    }
}
