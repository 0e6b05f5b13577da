//! Measures of syntactic and contextual information carried by vocabulary
//! partitions.
//!
//! A partition maps each word to a distribution over categories. Pushing a
//! corpus's n-gram language through it gives a language over category
//! sequences, whose entropy is compared against two baselines: the same
//! language with each sequence shuffled, and the positionwise independent
//! unigram product. The gap to the unigram product is the information the
//! partition carries; the part of it that survives shuffling is
//! co-occurrence (contextual) information, and what two partitions share
//! is measured by the entropy of their product partition.
//!
//! ```
//! use lexcat::fixtures::toy;
//! use lexcat::infotheory::{information, LogBase};
//!
//! let t = toy();
//! let report = information(&t.language, &t.p1, LogBase::Two).unwrap();
//! assert!((report.information - 3.0).abs() < 1e-9);
//! assert!(report.contextuality_gap.abs() < 1e-9);
//! ```
//!
//! Modules:
//!
//! * [`corpus`]: manifest/document/tag ingestion, n-gram languages, gold
//!   topic and tag partitions
//! * [`language`]: projection, shuffling and the unigram product
//! * [`partition`]: product, merge and split transforms
//! * [`infotheory`]: entropy, information, mutual information, the γ and μ
//!   selection rules, model-class relaxations
//! * [`oracle`]: exact set-semantics checks for tiny languages
//! * [`search`]: the merge/split experiment, hull scoring, partition search
//! * [`report`]: reproducible JSON and CSV output
//! * [`cli`]: the `lexcat` command line

pub mod cli;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod infotheory;
pub mod language;
pub mod oracle;
pub mod partition;
pub mod report;
pub mod search;
pub mod vocab;

pub use error::{Error, Result};
pub use language::{CategoryLanguage, StochasticLanguage};
pub use partition::Partition;
pub use vocab::Vocabulary;
