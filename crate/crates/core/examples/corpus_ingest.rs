//! Load the bundled corpus, extract its trigram language and measure the
//! gold topic and tag partitions.

use std::path::Path;

use lexcat::corpus::{
    extract_ngrams, load_corpus, tag_partition, topic_partition, NgramScope, Normalization,
};
use lexcat::infotheory::{information, LogBase};
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/minicorpus/manifest.tsv");
    let corpus = load_corpus(&manifest, Normalization::default())?;
    println!(
        "{} documents, {} sentences, {} tokens, {} word types, topics {:?}",
        corpus.documents.len(),
        corpus.num_sentences(),
        corpus.num_tokens(),
        corpus.vocab.len(),
        corpus.topics()
    );
    for scope in [NgramScope::DocumentStream, NgramScope::WithinSentence] {
        let language = extract_ngrams(&corpus, 3, scope)?;
        println!("{scope:?}: {} distinct trigrams", language.support_size());
    }
    let language = extract_ngrams(&corpus, 3, NgramScope::DocumentStream)?;
    for (name, p) in [
        ("topic", topic_partition(&corpus)?),
        ("tags", tag_partition(&corpus)?),
    ] {
        let r = information(&language, &p, LogBase::Two)?;
        println!(
            "{name:<5}: I = {:.5}  I_shuffled = {:.5}  gap ratio = {:.5}",
            r.information,
            r.information_shuffled,
            r.gamma_threshold()
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
