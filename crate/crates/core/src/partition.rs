//! Probabilistic partitions of a vocabulary and the transforms used by the
//! experiments: product, merge, annotation-driven split and random split.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vocab::Vocabulary;

/// Tolerance on per-word mass.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Looser tolerance accepted from files; memberships are renormalized after.
pub const LOAD_TOLERANCE: f64 = 1e-6;

/// Assigns every word id `0..num_words` a distribution over categories.
///
/// Memberships are sparse, sorted by category id, and carry strictly
/// positive masses only.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    labels: Vec<String>,
    membership: Vec<Vec<(u32, f64)>>,
}

impl Partition {
    pub fn new(labels: Vec<String>, membership: Vec<Vec<(u32, f64)>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::validation(format!("duplicate category label {l:?}")));
            }
        }
        let k = labels.len() as u32;
        let mut rows = Vec::with_capacity(membership.len());
        for (w, row) in membership.into_iter().enumerate() {
            let mut merged: BTreeMap<u32, f64> = BTreeMap::new();
            for (c, m) in row {
                if c >= k {
                    return Err(Error::validation(format!(
                        "word id {w} has mass on unknown category id {c}"
                    )));
                }
                if !m.is_finite() || m < 0.0 {
                    return Err(Error::validation(format!(
                        "word id {w} has invalid mass {m}"
                    )));
                }
                if m > 0.0 {
                    *merged.entry(c).or_insert(0.0) += m;
                }
            }
            let total: f64 = merged.values().sum();
            if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::validation(format!(
                    "membership of word id {w} sums to {total}, expected 1"
                )));
            }
            rows.push(merged.into_iter().collect());
        }
        Ok(Self {
            labels,
            membership: rows,
        })
    }

    /// Deterministic partition from a category id per word.
    pub fn from_assignment(labels: Vec<String>, assignment: &[u32]) -> Result<Self> {
        let rows = assignment.iter().map(|&c| vec![(c, 1.0)]).collect();
        Self::new(labels, rows)
    }

    /// Deterministic partition from a restricted growth string; categories
    /// are labelled `c0, c1, ...`.
    pub fn from_rgs(rgs: &[u32]) -> Result<Self> {
        let k = rgs.iter().max().map_or(0, |&m| m + 1);
        Self::from_assignment((0..k).map(|i| format!("c{i}")).collect(), rgs)
    }

    /// One singleton category per word.
    pub fn p_tot(num_words: usize) -> Result<Self> {
        if num_words == 0 {
            return Err(Error::validation("empty vocabulary"));
        }
        let assignment: Vec<u32> = (0..num_words as u32).collect();
        Self::from_assignment(
            (0..num_words).map(|i| format!("w{i}")).collect(),
            &assignment,
        )
    }

    /// A single category holding every word.
    pub fn p_nul(num_words: usize) -> Result<Self> {
        if num_words == 0 {
            return Err(Error::validation("empty vocabulary"));
        }
        Self::from_assignment(vec!["*".to_owned()], &vec![0; num_words])
    }

    pub fn num_words(&self) -> usize {
        self.membership.len()
    }

    pub fn num_categories(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, category: u32) -> Option<&str> {
        self.labels.get(category as usize).map(String::as_str)
    }

    pub fn category_id(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    /// Sparse `(category, mass)` pairs for `word`.
    ///
    /// Panics if `word` is out of range.
    pub fn membership(&self, word: u32) -> &[(u32, f64)] {
        &self.membership[word as usize]
    }

    pub fn mass(&self, word: u32, category: u32) -> f64 {
        self.membership(word)
            .iter()
            .find(|(c, _)| *c == category)
            .map_or(0.0, |(_, m)| *m)
    }

    pub fn is_deterministic(&self) -> bool {
        self.membership.iter().all(|row| row.len() == 1)
    }

    /// Category per word, if the partition is deterministic.
    pub fn assignment(&self) -> Option<Vec<u32>> {
        self.membership
            .iter()
            .map(|row| match row.as_slice() {
                [(c, _)] => Some(*c),
                _ => None,
            })
            .collect()
    }

    /// Canonical restricted growth string of a deterministic partition;
    /// equal for partitions that differ only by category relabeling.
    pub fn signature(&self) -> Option<Vec<u32>> {
        let assignment = self.assignment()?;
        let mut map = HashMap::new();
        Some(
            assignment
                .into_iter()
                .map(|c| {
                    let next = map.len() as u32;
                    *map.entry(c).or_insert(next)
                })
                .collect(),
        )
    }

    /// Number of categories carrying mass for at least one word.
    pub fn num_nonempty_categories(&self) -> usize {
        let mut used = vec![false; self.labels.len()];
        for row in &self.membership {
            for &(c, _) in row {
                used[c as usize] = true;
            }
        }
        used.into_iter().filter(|&u| u).count()
    }

    /// Drops categories that no word has mass on, renumbering the rest in
    /// their original order.
    pub fn pruned(mut self) -> Self {
        let mut used = vec![false; self.labels.len()];
        for row in &self.membership {
            for &(c, _) in row {
                used[c as usize] = true;
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let mut remap = vec![u32::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (old, label) in self.labels.into_iter().enumerate() {
            if used[old] {
                remap[old] = labels.len() as u32;
                labels.push(label);
            }
        }
        for row in &mut self.membership {
            for (c, _) in row.iter_mut() {
                *c = remap[*c as usize];
            }
        }
        self.labels = labels;
        self
    }

    /// The product partition: categories are pairs, membership is the
    /// per-word outer product. Only pairs carrying mass get a category.
    pub fn product(&self, other: &Partition) -> Result<Partition> {
        if self.num_words() != other.num_words() {
            return Err(Error::validation(format!(
                "product of partitions over {} and {} words",
                self.num_words(),
                other.num_words()
            )));
        }
        let mut pair_ids: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (a, b) in self.membership.iter().zip(&other.membership) {
            for &(i, _) in a {
                for &(j, _) in b {
                    pair_ids.insert((i, j), 0);
                }
            }
        }
        let mut labels = Vec::with_capacity(pair_ids.len());
        for (id, ((i, j), slot)) in pair_ids.iter_mut().enumerate() {
            *slot = id as u32;
            labels.push(format!(
                "({},{})",
                self.labels[*i as usize], other.labels[*j as usize]
            ));
        }
        let membership = self
            .membership
            .iter()
            .zip(&other.membership)
            .map(|(a, b)| {
                let mut row = Vec::with_capacity(a.len() * b.len());
                for &(i, m) in a {
                    for &(j, n) in b {
                        row.push((pair_ids[&(i, j)], m * n));
                    }
                }
                row.sort_by_key(|&(c, _)| c);
                row
            })
            .collect();
        Ok(Partition { labels, membership })
    }

    /// Sums the masses of `group` into one category named `label`, placed
    /// where the first grouped category was.
    pub fn merge_categories(&self, group: &[u32], label: &str) -> Result<Partition> {
        let group: Vec<u32> = {
            let mut g = group.to_vec();
            g.sort_unstable();
            g.dedup();
            g
        };
        if group.len() < 2 {
            return Err(Error::validation(
                "merging needs at least two distinct categories",
            ));
        }
        for &c in &group {
            self.check_category(c)?;
        }
        let target = group[0];
        let in_group = |c: u32| group.binary_search(&c).is_ok();
        let mut labels = Vec::with_capacity(self.labels.len() - group.len() + 1);
        let mut remap = vec![0u32; self.labels.len()];
        for (old, l) in self.labels.iter().enumerate() {
            let old = old as u32;
            if old == target {
                remap[old as usize] = labels.len() as u32;
                labels.push(label.to_owned());
            } else if in_group(old) {
                continue;
            } else {
                remap[old as usize] = labels.len() as u32;
                labels.push(l.clone());
            }
        }
        let new_target = remap[target as usize];
        for &c in &group {
            remap[c as usize] = new_target;
        }
        let membership = self
            .membership
            .iter()
            .map(|row| row.iter().map(|&(c, m)| (remap[c as usize], m)).collect())
            .collect();
        Partition::new(labels, membership).map(Partition::pruned)
    }

    /// Replaces `category` by one sub-category per annotation category; a
    /// word's mass on `category` is redistributed in proportion to its
    /// annotation membership. Sub-categories are labelled `label_annot`.
    pub fn split_category_by_annotation(
        &self,
        category: u32,
        annotation: &Partition,
    ) -> Result<Partition> {
        self.check_category(category)?;
        if annotation.num_words() != self.num_words() {
            return Err(Error::validation(format!(
                "annotation covers {} words, partition covers {}",
                annotation.num_words(),
                self.num_words()
            )));
        }
        let parts: Vec<String> = annotation
            .labels
            .iter()
            .map(|a| format!("{}_{}", self.labels[category as usize], a))
            .collect();
        self.replace_category(category, parts, |word, mass| {
            annotation
                .membership(word)
                .iter()
                .map(|&(a, share)| (a, mass * share))
                .collect()
        })
    }

    /// Replaces `category` by `k` sub-categories `label_1..label_k`; each word
    /// carrying mass on `category` moves all of it to one sub-category drawn
    /// uniformly with a ChaCha8 generator seeded by `seed`. Words are visited
    /// in increasing id order, one draw per word.
    pub fn split_category_random(&self, category: u32, k: usize, seed: u64) -> Result<Partition> {
        self.check_category(category)?;
        if k < 2 {
            return Err(Error::validation("a random split needs at least two parts"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draws: Vec<Option<u32>> = (0..self.num_words() as u32)
            .map(|w| (self.mass(w, category) > 0.0).then(|| rng.random_range(0..k as u32)))
            .collect();
        let parts = (1..=k)
            .map(|i| format!("{}_{}", self.labels[category as usize], i))
            .collect();
        self.replace_category(category, parts, |word, mass| {
            vec![(draws[word as usize].expect("word carries mass"), mass)]
        })
    }

    fn replace_category<F>(&self, category: u32, parts: Vec<String>, spread: F) -> Result<Partition>
    where
        F: Fn(u32, f64) -> Vec<(u32, f64)>,
    {
        let pos = category as usize;
        let mut labels = Vec::with_capacity(self.labels.len() + parts.len() - 1);
        labels.extend_from_slice(&self.labels[..pos]);
        labels.extend(parts.iter().cloned());
        labels.extend_from_slice(&self.labels[pos + 1..]);
        let shift = parts.len() as u32 - 1;
        let membership = self
            .membership
            .iter()
            .enumerate()
            .map(|(w, row)| {
                let mut out = Vec::new();
                for &(c, m) in row {
                    match c.cmp(&category) {
                        std::cmp::Ordering::Less => out.push((c, m)),
                        std::cmp::Ordering::Greater => out.push((c + shift, m)),
                        std::cmp::Ordering::Equal => out.extend(
                            spread(w as u32, m)
                                .into_iter()
                                .map(|(sub, share)| (category + sub, share)),
                        ),
                    }
                }
                out
            })
            .collect();
        Partition::new(labels, membership).map(Partition::pruned)
    }

    fn check_category(&self, category: u32) -> Result<()> {
        if (category as usize) < self.labels.len() {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "unknown category id {category} (partition has {})",
                self.labels.len()
            )))
        }
    }

    /// JSON form keyed by word strings.
    pub fn to_json(&self, vocab: &Vocabulary) -> Result<PartitionJson> {
        if vocab.len() != self.num_words() {
            return Err(Error::validation(format!(
                "vocabulary has {} words, partition covers {}",
                vocab.len(),
                self.num_words()
            )));
        }
        let membership = vocab
            .iter()
            .map(|(id, word)| {
                let row = self
                    .membership(id)
                    .iter()
                    .map(|&(c, m)| (self.labels[c as usize].clone(), m))
                    .collect();
                (word.to_owned(), row)
            })
            .collect();
        Ok(PartitionJson {
            categories: self.labels.clone(),
            membership,
        })
    }

    /// Reads the JSON form against `vocab`. Every vocabulary word must be
    /// covered; extra words are ignored. Masses must sum to 1 within
    /// [`LOAD_TOLERANCE`] and are renormalized exactly.
    pub fn from_json(json: &PartitionJson, vocab: &Vocabulary) -> Result<Partition> {
        let mut rows = Vec::with_capacity(vocab.len());
        for (_, word) in vocab.iter() {
            let entry = json.membership.get(word).ok_or_else(|| {
                Error::validation(format!("partition does not cover word {word:?}"))
            })?;
            let mut row = Vec::with_capacity(entry.len());
            for (label, &m) in entry {
                let c = json
                    .categories
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| {
                        Error::validation(format!(
                            "word {word:?} refers to undeclared category {label:?}"
                        ))
                    })?;
                if !m.is_finite() || m < 0.0 {
                    return Err(Error::validation(format!(
                        "word {word:?} has invalid mass {m}"
                    )));
                }
                row.push((c as u32, m));
            }
            let total: f64 = row.iter().map(|(_, m)| m).sum();
            if (total - 1.0).abs() > LOAD_TOLERANCE {
                return Err(Error::validation(format!(
                    "membership of word {word:?} sums to {total}, expected 1"
                )));
            }
            for (_, m) in &mut row {
                *m /= total;
            }
            rows.push(row);
        }
        Partition::new(json.categories.clone(), rows)
    }

    pub fn load(path: &Path, vocab: &Vocabulary) -> Result<Partition> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let json: PartitionJson = serde_json::from_str(&text)
            .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
        Self::from_json(&json, vocab)
    }
}

/// `{"categories": [...], "membership": {"word": {"Cat": mass, ...}, ...}}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub categories: Vec<String>,
    pub membership: BTreeMap<String, BTreeMap<String, f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::toy;
    use approx::assert_abs_diff_eq;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn constructors_validate() {
        assert!(Partition::p_nul(0).is_err());
        assert!(Partition::p_tot(0).is_err());
        assert_eq!(Partition::p_nul(10).unwrap().num_categories(), 1);
        assert_eq!(Partition::p_nul(10).unwrap().num_words(), 10);
        assert_eq!(Partition::p_tot(10).unwrap().num_categories(), 10);
        assert!(Partition::new(labels(&["a", "a"]), vec![vec![(0, 1.0)]]).is_err());
        assert!(Partition::new(labels(&["a"]), vec![vec![(0, 0.7)]]).is_err());
        assert!(Partition::new(labels(&["a"]), vec![vec![(3, 1.0)]]).is_err());
    }

    #[test]
    fn product_of_deterministic_partitions() {
        let t = toy();
        let prod = t.p1.product(&t.p2).unwrap();
        let c = t.vocab.id("c").unwrap();
        let row = prod.membership(c);
        assert_eq!(row.len(), 1);
        assert_eq!(prod.label(row[0].0), Some("(Animals,Noun)"));
        assert_abs_diff_eq!(row[0].1, 1.0);
        assert!(prod.is_deterministic());
    }

    #[test]
    fn product_with_p_nul_is_identity_up_to_relabeling() {
        let t = toy();
        let prod = Partition::p_nul(10).unwrap().product(&t.p3).unwrap();
        assert_eq!(prod.signature(), t.p3.signature());
    }

    #[test]
    fn product_is_outer_product() {
        let a = Partition::new(labels(&["A", "B"]), vec![vec![(0, 0.5), (1, 0.5)]]).unwrap();
        let x = Partition::new(labels(&["X"]), vec![vec![(0, 1.0)]]).unwrap();
        let p = a.product(&x).unwrap();
        assert_eq!(p.labels(), &labels(&["(A,X)", "(B,X)"])[..]);
        assert_eq!(p.membership(0), &[(0, 0.5), (1, 0.5)]);
        assert!(a.product(&Partition::p_nul(2).unwrap()).is_err());
    }

    #[test]
    fn merge_sums_masses() {
        let p = Partition::new(
            labels(&["NN", "JJ", "V"]),
            vec![vec![(0, 1.0)], vec![(0, 0.6), (1, 0.4)], vec![(2, 1.0)]],
        )
        .unwrap();
        let m = p.merge_categories(&[0, 2], "NN+V").unwrap();
        assert_eq!(m.labels(), &labels(&["NN+V", "JJ"])[..]);
        assert_eq!(m.membership(0), &[(0, 1.0)]);
        assert_eq!(m.membership(1), &[(0, 0.6), (1, 0.4)]);
        assert_eq!(m.membership(2), &[(0, 1.0)]);

        assert!(p.merge_categories(&[0, 7], "x").is_err());
        assert!(p.merge_categories(&[0], "x").is_err());

        let all = p.merge_categories(&[0, 1, 2], "*").unwrap();
        assert_eq!(all.num_categories(), 1);
        assert_eq!(all.signature(), Partition::p_nul(3).unwrap().signature());
    }

    #[test]
    fn split_by_annotation_redistributes_proportionally() {
        let p = Partition::new(
            labels(&["cat", "other"]),
            vec![vec![(0, 1.0)], vec![(1, 1.0)]],
        )
        .unwrap();
        let topics = Partition::new(
            labels(&["T1", "T2"]),
            vec![vec![(0, 0.75), (1, 0.25)], vec![(1, 1.0)]],
        )
        .unwrap();
        let s = p.split_category_by_annotation(0, &topics).unwrap();
        assert_eq!(s.labels(), &labels(&["cat_T1", "cat_T2", "other"])[..]);
        assert_eq!(s.membership(0), &[(0, 0.75), (1, 0.25)]);
        assert_eq!(s.membership(1), &[(2, 1.0)]);

        let same = p
            .split_category_by_annotation(0, &Partition::p_nul(2).unwrap())
            .unwrap();
        assert_eq!(same.signature(), p.signature());
        assert!(p.split_category_by_annotation(5, &topics).is_err());
    }

    #[test]
    fn random_split_is_reproducible_and_whole_word() {
        let p = Partition::p_nul(10).unwrap();
        let a = p.split_category_random(0, 2, 7).unwrap();
        let b = p.split_category_random(0, 2, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_deterministic());
        assert!(a.num_categories() <= 2);
        assert!(p.split_category_random(0, 1, 7).is_err());
        assert!(p.split_category_random(3, 2, 7).is_err());
    }

    #[test]
    fn random_split_of_single_word_prunes_empty_part() {
        let p = Partition::from_assignment(labels(&["solo", "rest"]), &[0, 1, 1]).unwrap();
        let s = p.split_category_random(0, 2, 42).unwrap();
        assert_eq!(s.num_categories(), 2);
        assert!(s.labels()[0] == "solo_1" || s.labels()[0] == "solo_2");
        assert_eq!(s.labels()[1], "rest");
    }

    #[test]
    fn json_round_trip_and_coverage() {
        let t = toy();
        let json = t.p1.to_json(&t.vocab).unwrap();
        assert_eq!(Partition::from_json(&json, &t.vocab).unwrap(), t.p1);

        let mut missing = json.clone();
        missing.membership.remove("c");
        let err = Partition::from_json(&missing, &t.vocab).unwrap_err();
        assert!(err.to_string().contains("\"c\""));

        let mut sloppy = json.clone();
        sloppy.membership.insert(
            "c".into(),
            [
                ("Animals".to_string(), 0.5000004),
                ("Science".to_string(), 0.5),
            ]
            .into(),
        );
        let p = Partition::from_json(&sloppy, &t.vocab).unwrap();
        let sum: f64 = p
            .membership(t.vocab.id("c").unwrap())
            .iter()
            .map(|x| x.1)
            .sum();
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);

        let mut bad = json;
        bad.membership
            .insert("c".into(), [("Animals".to_string(), 0.9)].into());
        assert!(Partition::from_json(&bad, &t.vocab).is_err());
    }
}
