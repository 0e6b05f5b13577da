//! Merge two POS categories of the bundled corpus and compare syntactic,
//! topic and random re-splits by their MI-per-information ratio.

use std::path::Path;

use lexcat::corpus::{
    extract_ngrams, load_corpus, tag_partition, topic_partition, NgramScope, Normalization,
};
use lexcat::search::{split_experiment, Scenario, SplitOptions};
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/minicorpus/manifest.tsv");
    let corpus = load_corpus(&manifest, Normalization::default())?;
    let language = extract_ngrams(&corpus, 3, NgramScope::DocumentStream)?;
    let syntactic = tag_partition(&corpus)?;
    let contextual = topic_partition(&corpus)?;
    let options = SplitOptions {
        mu: Some(0.5),
        ..SplitOptions::default()
    };
    for (a, b) in [("NN", "V"), ("NN", "JJ"), ("JJ", "ADV")] {
        let ids = (
            syntactic.category_id(a).unwrap(),
            syntactic.category_id(b).unwrap(),
        );
        let report = split_experiment(&language, &syntactic, &contextual, ids, &options)?;
        let ratio = |s: Scenario| report.scenario(s).and_then(|r| r.ratio).unwrap_or(f64::NAN);
        println!(
            "{:<8} syntactic {:.4}  topic {:.4}  random mean {:.4}",
            report.pair,
            ratio(Scenario::SyntacticSplit),
            ratio(Scenario::TopicSplit),
            report.random_summary.mean_ratio.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
