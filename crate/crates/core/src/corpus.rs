//! Corpus ingestion: manifest, documents and optional tag files; n-gram
//! languages; gold topic and tag partitions.
//!
//! The manifest is a headerless TSV with rows `doc_id<TAB>topic<TAB>path`
//! and an optional fourth column naming a tag file. Relative paths are
//! resolved against the manifest's directory. Documents hold one sentence
//! per line with space-separated tokens. Tag files hold `token<TAB>tag`
//! rows with a blank line between sentences.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::language::StochasticLanguage;
use crate::partition::Partition;
use crate::vocab::Vocabulary;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Normalization {
    pub casefold: bool,
    pub strip_punctuation: bool,
}

impl Normalization {
    /// `None` when the token is dropped.
    pub fn apply(&self, token: &str) -> Option<String> {
        if self.strip_punctuation && token.chars().all(|c| !c.is_alphanumeric()) {
            return None;
        }
        Some(if self.casefold {
            token.to_lowercase()
        } else {
            token.to_owned()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub topic: Option<String>,
    pub sentences: Vec<Vec<u32>>,
    /// Tag ids, aligned with `sentences`.
    pub tags: Option<Vec<Vec<u32>>>,
}

impl Document {
    pub fn num_tokens(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }
}

/// A document before interning; used to build corpora in memory.
#[derive(Debug, Clone, Default)]
pub struct RawDocument {
    pub id: String,
    pub topic: Option<String>,
    pub sentences: Vec<Vec<String>>,
    pub tags: Option<Vec<Vec<String>>>,
}

impl RawDocument {
    /// Splits each line of `text` on whitespace.
    pub fn from_text(id: &str, topic: Option<&str>, text: &str) -> Self {
        RawDocument {
            id: id.to_owned(),
            topic: topic.map(str::to_owned),
            sentences: text
                .lines()
                .map(|l| l.split_whitespace().map(str::to_owned).collect::<Vec<_>>())
                .filter(|s| !s.is_empty())
                .collect(),
            tags: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub vocab: Vocabulary,
    pub tag_vocab: Vocabulary,
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn from_documents(raw: Vec<RawDocument>) -> Result<Self> {
        let mut vocab = Vocabulary::new();
        let mut tag_vocab = Vocabulary::new();
        let mut documents = Vec::with_capacity(raw.len());
        for doc in raw {
            if let Some(tags) = &doc.tags {
                check_alignment(&doc.id, &doc.sentences, tags)?;
            }
            let sentences = doc
                .sentences
                .iter()
                .map(|s| s.iter().map(|w| vocab.intern(w)).collect())
                .collect();
            let tags = doc.tags.map(|ts| {
                ts.iter()
                    .map(|s| s.iter().map(|t| tag_vocab.intern(t)).collect())
                    .collect()
            });
            documents.push(Document {
                id: doc.id,
                topic: doc.topic.filter(|t| !t.is_empty()),
                sentences,
                tags,
            });
        }
        if vocab.is_empty() {
            return Err(Error::validation("corpus contains no tokens"));
        }
        Ok(Corpus {
            vocab,
            tag_vocab,
            documents,
        })
    }

    pub fn num_tokens(&self) -> usize {
        self.documents.iter().map(Document::num_tokens).sum()
    }

    pub fn num_sentences(&self) -> usize {
        self.documents.iter().map(|d| d.sentences.len()).sum()
    }

    pub fn has_tags(&self) -> bool {
        !self.documents.is_empty() && self.documents.iter().all(|d| d.tags.is_some())
    }

    /// Topic labels in order of first appearance.
    pub fn topics(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in self.documents.iter().filter_map(|d| d.topic.as_ref()) {
            if !out.contains(t) {
                out.push(t.clone());
            }
        }
        out
    }

    /// Per-word topic and tag frequency counts.
    pub fn gold_annotations(&self) -> GoldAnnotations {
        let topics = self.topics();
        let topic_index: HashMap<&str, u32> = topics
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i as u32))
            .collect();
        let mut topic_counts = vec![BTreeMap::new(); self.vocab.len()];
        let mut tag_counts = self
            .has_tags()
            .then(|| vec![BTreeMap::new(); self.vocab.len()]);
        for doc in &self.documents {
            if let Some(topic) = doc.topic.as_deref() {
                let t = topic_index[topic];
                for &w in doc.sentences.iter().flatten() {
                    *topic_counts[w as usize].entry(t).or_insert(0u64) += 1;
                }
            }
            if let (Some(counts), Some(tags)) = (tag_counts.as_mut(), doc.tags.as_ref()) {
                for (&w, &tag) in doc.sentences.iter().flatten().zip(tags.iter().flatten()) {
                    *counts[w as usize].entry(tag).or_insert(0u64) += 1;
                }
            }
        }
        GoldAnnotations {
            topics,
            topic_counts,
            tags: self.tag_vocab.words().to_vec(),
            tag_counts,
        }
    }
}

fn check_alignment(doc: &str, sentences: &[Vec<String>], tags: &[Vec<String>]) -> Result<()> {
    if sentences.len() != tags.len() {
        return Err(Error::parse(
            format!("document {doc}"),
            format!(
                "{} sentences but {} tagged sentences",
                sentences.len(),
                tags.len()
            ),
        ));
    }
    for (i, (s, t)) in sentences.iter().zip(tags).enumerate() {
        if s.len() != t.len() {
            return Err(Error::parse(
                format!("document {doc}, sentence {}", i + 1),
                format!("{} tokens but {} tags", s.len(), t.len()),
            ));
        }
    }
    Ok(())
}

/// Frequency counts behind the gold partitions.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldAnnotations {
    pub topics: Vec<String>,
    /// Per word id: topic id → occurrences.
    pub topic_counts: Vec<BTreeMap<u32, u64>>,
    pub tags: Vec<String>,
    /// Per word id: tag id → occurrences; `None` for untagged corpora.
    pub tag_counts: Option<Vec<BTreeMap<u32, u64>>>,
}

fn relative_frequency_partition(
    labels: Vec<String>,
    counts: &[BTreeMap<u32, u64>],
) -> Result<Partition> {
    let rows = counts
        .iter()
        .map(|row| {
            let total: u64 = row.values().sum();
            row.iter()
                .map(|(&c, &n)| (c, n as f64 / total as f64))
                .collect()
        })
        .collect();
    Partition::new(labels, rows)
}

/// Categories are topics; a word's membership is its relative frequency
/// in each topic.
pub fn topic_partition(corpus: &Corpus) -> Result<Partition> {
    if corpus.documents.iter().any(|d| d.topic.is_none()) {
        return Err(Error::validation("every document needs a topic label"));
    }
    let gold = corpus.gold_annotations();
    relative_frequency_partition(gold.topics, &gold.topic_counts)
}

/// Categories are tags; a word's membership is its relative frequency
/// under each tag.
pub fn tag_partition(corpus: &Corpus) -> Result<Partition> {
    let gold = corpus.gold_annotations();
    let counts = gold
        .tag_counts
        .ok_or_else(|| Error::validation("corpus has no token tags"))?;
    relative_frequency_partition(gold.tags, &counts)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NgramScope {
    /// Windows run across sentence boundaries within a document.
    #[default]
    DocumentStream,
    WithinSentence,
}

impl FromStr for NgramScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stream" => Ok(NgramScope::DocumentStream),
            "sentence" => Ok(NgramScope::WithinSentence),
            other => Err(Error::validation(format!(
                "scope must be stream or sentence, got {other:?}"
            ))),
        }
    }
}

/// Counts of every overlapping length-`n` window.
pub fn ngram_counts(
    corpus: &Corpus,
    n: usize,
    scope: NgramScope,
) -> Result<BTreeMap<Vec<u32>, u64>> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    let mut counts = BTreeMap::new();
    let mut add = |tokens: &[u32]| {
        for w in tokens.windows(n) {
            *counts.entry(w.to_vec()).or_insert(0u64) += 1;
        }
    };
    for doc in &corpus.documents {
        match scope {
            NgramScope::DocumentStream => {
                let stream: Vec<u32> = doc.sentences.concat();
                add(&stream);
            }
            NgramScope::WithinSentence => doc.sentences.iter().for_each(|s| add(s)),
        }
    }
    if counts.is_empty() {
        return Err(Error::validation(format!(
            "no n-grams extractable for n = {n}"
        )));
    }
    Ok(counts)
}

/// Empirical distribution of overlapping length-`n` windows.
pub fn extract_ngrams(corpus: &Corpus, n: usize, scope: NgramScope) -> Result<StochasticLanguage> {
    StochasticLanguage::from_counts(n, ngram_counts(corpus, n, scope)?)
}

/// Reads a manifest and every document (and tag file) it references.
pub fn load_corpus(manifest: &Path, norm: Normalization) -> Result<Corpus> {
    let text = read_utf8(manifest)?;
    let base = manifest.parent().unwrap_or_else(|| Path::new("."));
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !(3..=4).contains(&cols.len()) || cols[..3].iter().any(|c| c.trim().is_empty()) {
            return Err(Error::parse(
                format!("{}:{row}", manifest.display()),
                "expected doc_id<TAB>topic<TAB>path[<TAB>tag path]",
            ));
        }
        let doc_path = resolve(base, cols[2]);
        let body = read_utf8(&doc_path)?;
        let sentences: Vec<Vec<String>> = body
            .lines()
            .map(|l| {
                l.split_whitespace()
                    .filter_map(|t| norm.apply(t))
                    .collect::<Vec<_>>()
            })
            .filter(|s| !s.is_empty())
            .collect();
        let tags = match cols.get(3).map(|c| c.trim()).filter(|c| !c.is_empty()) {
            Some(tag_file) => Some(load_tags(&resolve(base, tag_file), &sentences, norm)?),
            None => None,
        };
        raw.push(RawDocument {
            id: cols[0].trim().to_owned(),
            topic: Some(cols[1].trim().to_owned()),
            sentences,
            tags,
        });
    }
    if raw.is_empty() {
        return Err(Error::validation(format!(
            "manifest {} lists no documents",
            manifest.display()
        )));
    }
    Corpus::from_documents(raw)
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p.trim());
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn read_utf8(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

/// Reads a tag file and checks it token-by-token against `sentences`.
fn load_tags(
    path: &Path,
    sentences: &[Vec<String>],
    norm: Normalization,
) -> Result<Vec<Vec<String>>> {
    let text = read_utf8(path)?;
    let loc = |line: usize| format!("{}:{line}", path.display());
    let mut out: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let flush =
        |current: &mut Vec<String>, out: &mut Vec<Vec<String>>, line: usize| -> Result<()> {
            if current.is_empty() {
                return Ok(());
            }
            let idx = out.len();
            match sentences.get(idx) {
                Some(s) if s.len() == current.len() => {
                    out.push(std::mem::take(current));
                    Ok(())
                }
                Some(s) => Err(Error::parse(
                    loc(line),
                    format!(
                        "sentence {} has {} tokens but {} tags",
                        idx + 1,
                        s.len(),
                        current.len()
                    ),
                )),
                None => Err(Error::parse(
                    loc(line),
                    "more tagged sentences than document sentences",
                )),
            }
        };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            flush(&mut current, &mut out, lineno)?;
            continue;
        }
        let (token, tag) = line
            .split_once('\t')
            .filter(|(_, t)| !t.trim().is_empty() && !t.contains('\t'))
            .ok_or_else(|| Error::parse(loc(lineno), "expected token<TAB>tag"))?;
        let Some(token) = norm.apply(token.trim()) else {
            continue;
        };
        let sent = out.len();
        let expected = sentences
            .get(sent)
            .and_then(|s| s.get(current.len()))
            .ok_or_else(|| {
                Error::parse(loc(lineno), format!("tag row beyond sentence {}", sent + 1))
            })?;
        if *expected != token {
            return Err(Error::parse(
                loc(lineno),
                format!("token {token:?} does not match document token {expected:?}"),
            ));
        }
        current.push(tag.trim().to_owned());
    }
    flush(&mut current, &mut out, text.lines().count() + 1)?;
    if out.len() != sentences.len() {
        return Err(Error::parse(
            loc(text.lines().count()),
            format!(
                "{} tagged sentences for {} document sentences",
                out.len(),
                sentences.len()
            ),
        ));
    }
    Ok(out)
}
