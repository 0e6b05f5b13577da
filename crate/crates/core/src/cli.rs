//! The `lexcat` command line.
//!
//! Every subcommand reads a language (from a corpus manifest or a
//! serialized language), applies one library operation and writes a JSON
//! or CSV report. Exit codes: 0 on success, 1 on usage or validation
//! errors, 2 on I/O errors.
//!
//! Partition arguments are either a path to a partition JSON file or one of
//! the built-ins `@topic`, `@tags` (gold partitions of the corpus), `@nul`,
//! `@tot`, `@position` and `@sequence`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::corpus::{self, Corpus, NgramScope, Normalization};
use crate::error::{Error, Result};
use crate::infotheory::{
    self, InfoReport, LogBase, MIReport, MarkovBigram, ModelClass, ModelInfoReport, Unrestricted,
};
use crate::language::{LanguageJson, StochasticLanguage};
use crate::oracle::{self, FiniteLanguage, PreimageDomain};
use crate::partition::{Partition, PartitionJson};
use crate::report;
use crate::search::{self, Evaluation, HullMode, MoveRecord, MoveSet, Objective, SplitOptions};
use crate::vocab::Vocabulary;

#[derive(Debug, Parser)]
#[command(
    name = "lexcat",
    version,
    about = "Syntactic and contextual information in vocabulary partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract the n-gram language of a corpus.
    Ingest(Common),
    /// Information carried by each partition.
    Info {
        #[command(flatten)]
        common: Common,
        #[arg(long = "partition")]
        partitions: Vec<String>,
    },
    /// Mutual information of two partitions.
    Mi {
        #[command(flatten)]
        common: Common,
        #[arg(long = "partition")]
        partitions: Vec<String>,
    },
    /// Exact set-semantics contextuality of deterministic partitions.
    CheckContextual {
        #[command(flatten)]
        common: Common,
        #[arg(long = "partition")]
        partitions: Vec<String>,
    },
    /// Exact set-semantics syntacticity of deterministic partitions.
    CheckSyntactic {
        #[command(flatten)]
        common: Common,
        #[arg(long = "partition")]
        partitions: Vec<String>,
        #[arg(long, value_enum, default_value_t = Preimage::Language)]
        preimage: Preimage,
        #[arg(long, default_value_t = oracle::DEFAULT_SYNTACTIC_GUARD)]
        guard: usize,
    },
    /// Merge two syntactic categories and score syntactic, topic and random re-splits.
    SplitExperiment {
        #[command(flatten)]
        common: Common,
        /// Use the corpus tags as the syntactic gold partition.
        #[arg(long)]
        tags: bool,
        /// Syntactic gold partition (instead of --tags).
        #[arg(long = "partition")]
        syntactic: Option<String>,
        /// Contextual reference partition.
        #[arg(long, default_value = "@topic")]
        reference: String,
        #[arg(long, value_parser = parse_pair)]
        pair: (String, String),
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        random_runs: usize,
    },
    /// Score candidates and mark those on the lower convex hull.
    Hull {
        #[command(flatten)]
        common: Common,
        #[arg(long = "partition")]
        partitions: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Contextual)]
        mode: Mode,
        /// Contextual reference for syntactic mode.
        #[arg(long)]
        reference: Option<String>,
    },
    /// Minimize the contextual (--gamma) or syntactic (--mu) objective.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Strategy::Exhaustive)]
        strategy: Strategy,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        /// Contextual partitions for the syntactic objective (repeatable).
        #[arg(long = "reference")]
        references: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_categories: usize,
        #[arg(long, default_value_t = 50)]
        max_iterations: usize,
        /// Annotation partitions for greedy splits (repeatable).
        #[arg(long = "annotation")]
        annotations: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Information measures with entropy replaced by a model class's cross-entropy.
    ModelInfo {
        #[command(flatten)]
        common: Common,
        #[arg(long = "partition")]
        partitions: Vec<String>,
        #[arg(long, value_enum, default_value_t = Model::MarkovBigram)]
        model: Model,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Corpus manifest (TSV: doc_id, topic, path[, tag path]).
    #[arg(
        long,
        required_unless_present = "language",
        conflicts_with = "language"
    )]
    corpus: Option<PathBuf>,
    /// Serialized language JSON, as written by `ingest`.
    #[arg(long)]
    language: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value = "2")]
    log_base: LogBase,
    #[arg(long, default_value = "stream")]
    scope: NgramScope,
    #[arg(long)]
    casefold: bool,
    #[arg(long)]
    strip_punct: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preimage {
    Language,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Contextual,
    Syntactic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Unrestricted,
    MarkovBigram,
}

fn parse_pair(s: &str) -> std::result::Result<(String, String), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_owned(), b.to_owned())),
        _ => Err(format!("expected CAT1,CAT2, got {s:?}")),
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lexcat: {e}");
            match e {
                Error::Io { .. } => 2,
                _ => 1,
            }
        }
    }
}

struct Inputs {
    vocab: Vocabulary,
    language: StochasticLanguage,
    corpus: Option<Corpus>,
    base: LogBase,
}

impl Inputs {
    fn load(common: &Common) -> Result<Self> {
        if common.n == 0 {
            return Err(Error::validation("--n must be at least 1"));
        }
        match (&common.corpus, &common.language) {
            (Some(manifest), _) => {
                let norm = Normalization {
                    casefold: common.casefold,
                    strip_punctuation: common.strip_punct,
                };
                let corpus = corpus::load_corpus(manifest, norm)?;
                let language = corpus::extract_ngrams(&corpus, common.n, common.scope)?;
                Ok(Inputs {
                    vocab: corpus.vocab.clone(),
                    language,
                    corpus: Some(corpus),
                    base: common.log_base,
                })
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                let json: LanguageJson = serde_json::from_str(&text)
                    .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
                let mut vocab = Vocabulary::new();
                let language = StochasticLanguage::from_json(&json, &mut vocab)?;
                Ok(Inputs {
                    vocab,
                    language,
                    corpus: None,
                    base: common.log_base,
                })
            }
            (None, None) => Err(Error::validation(
                "one of --corpus or --language is required",
            )),
        }
    }

    fn corpus(&self, what: &str) -> Result<&Corpus> {
        self.corpus
            .as_ref()
            .ok_or_else(|| Error::validation(format!("{what} needs --corpus")))
    }

    /// Resolves a partition argument to `(label, partition)`.
    fn partition(&self, arg: &str) -> Result<(String, Partition)> {
        let n = self.vocab.len();
        let p = match arg {
            "@topic" => corpus::topic_partition(self.corpus("@topic")?)?,
            "@tags" => corpus::tag_partition(self.corpus("@tags")?)?,
            "@nul" => Partition::p_nul(n)?,
            "@tot" => {
                let assignment: Vec<u32> = (0..n as u32).collect();
                Partition::from_assignment(self.vocab.words().to_vec(), &assignment)?
            }
            "@position" => search::position_partition(&self.language, n)?,
            "@sequence" => search::sequence_partition(&self.language, n)?,
            path if path.starts_with('@') => {
                return Err(Error::validation(format!(
                    "unknown built-in partition {path:?}"
                )))
            }
            path => Partition::load(Path::new(path), &self.vocab)?,
        };
        Ok((label_of(arg), p))
    }
}

fn require_partitions(arg_list: &[String]) -> Result<()> {
    if arg_list.is_empty() {
        return Err(Error::validation("give at least one --partition"));
    }
    Ok(())
}

fn label_of(arg: &str) -> String {
    if arg.starts_with('@') {
        return arg.to_owned();
    }
    Path::new(arg)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| arg.to_owned())
}

#[derive(Serialize)]
struct Labeled<T> {
    partition: String,
    #[serde(flatten)]
    report: T,
}

fn emit_json<T: Serialize>(common: &Common, value: &T) -> Result<()> {
    report::write_output(&report::to_json(value)?, common.out.as_deref())
}

fn emit_list<T: Serialize>(common: &Common, items: Vec<T>) -> Result<()> {
    match items.len() {
        1 => emit_json(common, &items[0]),
        _ => emit_json(common, &items),
    }
}

fn emit(
    common: &Common,
    json: impl FnOnce() -> Result<String>,
    csv: impl FnOnce() -> Result<String>,
) -> Result<()> {
    let text = match common.format {
        Format::Json => json()?,
        Format::Csv => csv()?,
    };
    report::write_output(&text, common.out.as_deref())
}

fn info_rows(label: &str, r: &InfoReport) -> Vec<(String, &'static str, f64)> {
    vec![
        (label.to_owned(), "h_language", r.h_language),
        (label.to_owned(), "h_shuffled", r.h_shuffled),
        (label.to_owned(), "h_unigram", r.h_unigram),
        (label.to_owned(), "information", r.information),
        (
            label.to_owned(),
            "information_shuffled",
            r.information_shuffled,
        ),
        (label.to_owned(), "contextuality_gap", r.contextuality_gap),
    ]
}

fn rows_csv(rows: &[(String, &'static str, f64)]) -> Result<String> {
    report::measures_csv(rows.iter().map(|(l, m, v)| (l.as_str(), *m, *v)))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Ingest(common) => {
            let inputs = Inputs::load(&common)?;
            let json = inputs.language.to_json(&inputs.vocab)?;
            if common.format == Format::Csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                let err = |e: csv::Error| Error::Internal(e.to_string());
                w.write_record(["sequence", "probability"]).map_err(err)?;
                for (seq, p) in &json.entries {
                    w.write_record([seq.clone(), format!("{}", report::round_sig9(*p))])
                        .map_err(err)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
                return report::write_output(
                    &String::from_utf8_lossy(&bytes),
                    common.out.as_deref(),
                );
            }
            // probabilities are written at full precision so the language round-trips
            let text = serde_json::to_string(&json).map_err(|e| Error::Internal(e.to_string()))?;
            report::write_output(&(text + "\n"), common.out.as_deref())
        }
        Command::Info { common, partitions } => {
            let inputs = Inputs::load(&common)?;
            require_partitions(&partitions)?;
            let mut reports = Vec::new();
            for arg in &partitions {
                let (label, p) = inputs.partition(arg)?;
                let report = infotheory::information(&inputs.language, &p, inputs.base)?;
                reports.push(Labeled {
                    partition: label,
                    report,
                });
            }
            emit(
                &common,
                || match reports.len() {
                    1 => report::to_json(&reports[0]),
                    _ => report::to_json(&reports),
                },
                || {
                    let rows: Vec<_> = reports
                        .iter()
                        .flat_map(|r| info_rows(&r.partition, &r.report))
                        .collect();
                    rows_csv(&rows)
                },
            )
        }
        Command::Mi { common, partitions } => {
            let inputs = Inputs::load(&common)?;
            if partitions.len() != 2 {
                return Err(Error::validation(
                    "mi needs exactly two --partition arguments",
                ));
            }
            let (la, a) = inputs.partition(&partitions[0])?;
            let (lb, b) = inputs.partition(&partitions[1])?;
            let report = infotheory::mutual_information(&inputs.language, &a, &b, inputs.base)?;
            let labeled = Labeled {
                partition: format!("{la};{lb}"),
                report,
            };
            emit(
                &common,
                || report::to_json(&labeled),
                || {
                    let r: &MIReport = &labeled.report;
                    let l = labeled.partition.as_str();
                    report::measures_csv([
                        (l, "h_first", r.h_first),
                        (l, "h_second", r.h_second),
                        (l, "h_joint", r.h_joint),
                        (l, "mutual_information", r.mutual_information),
                    ])
                },
            )
        }
        Command::CheckContextual { common, partitions } => {
            let inputs = Inputs::load(&common)?;
            require_partitions(&partitions)?;
            let support = FiniteLanguage::support_of(&inputs.language);
            #[derive(Serialize)]
            struct Out {
                partition: String,
                contextual: bool,
                contextuality_gap: f64,
            }
            let mut out = Vec::new();
            for arg in &partitions {
                let (label, p) = inputs.partition(arg)?;
                out.push(Out {
                    partition: label,
                    contextual: oracle::is_contextual_exact(&support, &p)?,
                    contextuality_gap: infotheory::information(&inputs.language, &p, inputs.base)?
                        .contextuality_gap,
                });
            }
            emit_list(&common, out)
        }
        Command::CheckSyntactic {
            common,
            partitions,
            preimage,
            guard,
        } => {
            let inputs = Inputs::load(&common)?;
            require_partitions(&partitions)?;
            let support = FiniteLanguage::support_of(&inputs.language);
            let domain = match preimage {
                Preimage::Language => PreimageDomain::Language,
                Preimage::All => PreimageDomain::AllSequences,
            };
            let num_words = inputs.vocab.len();
            if num_words > guard {
                return Err(Error::Resource(format!(
                    "syntactic check over {num_words} words (limit {guard})"
                )));
            }
            let pool = oracle::contextual_partitions(&support, num_words, num_words)?;
            #[derive(Serialize)]
            struct Witness {
                contextual_partition: PartitionJson,
                pattern: Vec<String>,
                contextual_pattern: Vec<String>,
            }
            #[derive(Serialize)]
            struct Out {
                partition: String,
                syntactic: bool,
                contextual_partitions: usize,
                witness: Option<Witness>,
            }
            let mut out = Vec::new();
            for arg in &partitions {
                let (label, p) = inputs.partition(arg)?;
                let mut witness = None;
                for other in &pool {
                    let r = oracle::are_independent_exact(&support, &p, other, domain)?;
                    if let Some((x, y)) = r.witness {
                        let names = |part: &Partition, s: &[u32]| {
                            s.iter()
                                .map(|&c| part.label(c).unwrap_or("?").to_owned())
                                .collect()
                        };
                        witness = Some(Witness {
                            contextual_partition: other.to_json(&inputs.vocab)?,
                            pattern: names(&p, &x),
                            contextual_pattern: names(other, &y),
                        });
                        break;
                    }
                }
                out.push(Out {
                    partition: label,
                    syntactic: witness.is_none(),
                    contextual_partitions: pool.len(),
                    witness,
                });
            }
            emit_list(&common, out)
        }
        Command::SplitExperiment {
            common,
            tags,
            syntactic,
            reference,
            pair,
            gamma,
            mu,
            seed,
            random_runs,
        } => {
            let inputs = Inputs::load(&common)?;
            let syn_arg = match (tags, syntactic) {
                (true, None) => "@tags".to_owned(),
                (false, Some(arg)) => arg,
                _ => {
                    return Err(Error::validation(
                        "give exactly one of --tags or --partition",
                    ))
                }
            };
            let (_, syn) = inputs.partition(&syn_arg)?;
            let (ref_label, con) = inputs.partition(&reference)?;
            let id = |label: &str| {
                syn.category_id(label)
                    .ok_or_else(|| Error::validation(format!("no syntactic category {label:?}")))
            };
            let ids = (id(&pair.0)?, id(&pair.1)?);
            let options = SplitOptions {
                seed,
                random_runs,
                mu,
                base: inputs.base,
                ..SplitOptions::default()
            };
            let experiment = search::split_experiment(&inputs.language, &syn, &con, ids, &options)?;
            let ref_info = infotheory::information(&inputs.language, &con, inputs.base)?;
            #[derive(Serialize)]
            struct Reference {
                partition: String,
                information: f64,
                information_shuffled: f64,
                gamma_threshold: f64,
                gamma: Option<f64>,
                gamma_contextual: Option<bool>,
            }
            #[derive(Serialize)]
            struct Out {
                contextual_reference: Reference,
                experiment: search::SplitExperimentReport,
            }
            let threshold = ref_info.gamma_threshold();
            let out = Out {
                contextual_reference: Reference {
                    partition: ref_label,
                    information: ref_info.information,
                    information_shuffled: ref_info.information_shuffled,
                    gamma_threshold: threshold,
                    gamma,
                    gamma_contextual: gamma.map(|g| threshold <= g),
                },
                experiment,
            };
            emit(
                &common,
                || report::to_json(&out),
                || report::split_experiment_csv(&out.experiment),
            )
        }
        Command::Hull {
            common,
            partitions,
            mode,
            reference,
        } => {
            let inputs = Inputs::load(&common)?;
            require_partitions(&partitions)?;
            let candidates = partitions
                .iter()
                .map(|s| inputs.partition(s))
                .collect::<Result<Vec<_>>>()?;
            let mode = match (mode, reference) {
                (Mode::Contextual, _) => HullMode::Contextual,
                (Mode::Syntactic, Some(r)) => HullMode::Syntactic {
                    reference: inputs.partition(&r)?.1,
                },
                (Mode::Syntactic, None) => {
                    return Err(Error::validation("syntactic hull needs --reference"))
                }
            };
            let hull = search::hull_points(&inputs.language, &candidates, &mode, inputs.base)?;
            emit(
                &common,
                || report::to_json(&hull),
                || report::hull_csv(&hull),
            )
        }
        Command::Search {
            common,
            strategy,
            gamma,
            mu,
            references,
            max_categories,
            max_iterations,
            annotations,
            seed,
        } => {
            let inputs = Inputs::load(&common)?;
            let objective = match (gamma, mu) {
                (Some(gamma), None) => Objective::Contextual { gamma },
                (None, Some(mu)) => Objective::Syntactic {
                    mu,
                    pool: references
                        .iter()
                        .map(|r| inputs.partition(r).map(|p| p.1))
                        .collect::<Result<_>>()?,
                },
                _ => return Err(Error::validation("give exactly one of --gamma or --mu")),
            };
            let n = inputs.vocab.len();
            let result = match strategy {
                Strategy::Exhaustive => search::exhaustive_search(
                    &inputs.language,
                    n,
                    max_categories,
                    &objective,
                    inputs.base,
                )?,
                Strategy::Greedy => {
                    let arg_list: Vec<String> = if annotations.is_empty() {
                        default_annotations(&inputs)
                    } else {
                        annotations
                    };
                    let moves = MoveSet {
                        merge: true,
                        annotations: arg_list
                            .iter()
                            .map(|s| inputs.partition(s))
                            .collect::<Result<_>>()?,
                        random_split: Some((2, (0..4).map(|i| seed.wrapping_add(i)).collect())),
                    };
                    search::greedy_search(
                        &inputs.language,
                        n,
                        &objective,
                        &moves,
                        max_iterations,
                        inputs.base,
                    )?
                }
            };
            #[derive(Serialize)]
            struct Out {
                strategy: &'static str,
                best: PartitionJson,
                evaluation: Evaluation,
                trace: Vec<f64>,
                evaluated: usize,
                moves: Vec<MoveRecord>,
            }
            let out = Out {
                strategy: match strategy {
                    Strategy::Exhaustive => "exhaustive",
                    Strategy::Greedy => "greedy",
                },
                best: result.best.to_json(&inputs.vocab)?,
                evaluation: result.evaluation,
                trace: result.trace,
                evaluated: result.evaluated,
                moves: result.moves,
            };
            emit(
                &common,
                || report::to_json(&out),
                || {
                    let e = &out.evaluation;
                    report::measures_csv([
                        ("best", "objective", e.objective),
                        ("best", "information", e.information),
                        ("best", "information_shuffled", e.information_shuffled),
                        ("best", "max_mutual_information", e.max_mutual_information),
                    ])
                },
            )
        }
        Command::ModelInfo {
            common,
            partitions,
            model,
        } => {
            let inputs = Inputs::load(&common)?;
            require_partitions(&partitions)?;
            let class: &dyn ModelClass = match model {
                Model::Unrestricted => &Unrestricted,
                Model::MarkovBigram => &MarkovBigram,
            };
            let mut reports: Vec<Labeled<ModelInfoReport>> = Vec::new();
            for arg in &partitions {
                let (label, p) = inputs.partition(arg)?;
                let report =
                    infotheory::model_information(&inputs.language, &p, class, inputs.base)?;
                reports.push(Labeled {
                    partition: label,
                    report,
                });
            }
            emit(
                &common,
                || match reports.len() {
                    1 => report::to_json(&reports[0]),
                    _ => report::to_json(&reports),
                },
                || {
                    let rows: Vec<_> = reports
                        .iter()
                        .flat_map(|r| info_rows(&r.partition, &r.report.report))
                        .collect();
                    rows_csv(&rows)
                },
            )
        }
    }
}

/// Position annotation always; sentence annotation only for small supports.
fn default_annotations(inputs: &Inputs) -> Vec<String> {
    let mut arg_list = vec!["@position".to_owned()];
    if inputs.language.support_size() <= 256 {
        arg_list.push("@sequence".to_owned());
    }
    arg_list
}
