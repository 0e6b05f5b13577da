//! Recover the toy's topic and noun/verb partitions by exhaustive and
//! greedy search.

use lexcat::fixtures::toy;
use lexcat::infotheory::LogBase;
use lexcat::search::{
    exhaustive_search, greedy_search, position_partition, sequence_partition, MoveSet, Objective,
};
use lexcat::{Partition, Result, Vocabulary};

/// Words per category; a fractional membership is shown after the word.
fn show(vocab: &Vocabulary, p: &Partition) -> String {
    let mut groups = vec![Vec::new(); p.num_categories()];
    for (w, word) in vocab.iter() {
        for &(c, m) in p.membership(w) {
            groups[c as usize].push(if m < 1.0 {
                format!("{word}:{m:.2}")
            } else {
                word.to_owned()
            });
        }
    }
    let groups: Vec<String> = groups
        .iter()
        .map(|g| format!("{{{}}}", g.join(",")))
        .collect();
    groups.join(" ")
}

pub fn run_example() -> Result<()> {
    let toy = toy();
    let n = toy.vocab.len();
    let base = LogBase::Two;
    let contextual = Objective::Contextual { gamma: 1e-6 };
    let syntactic = Objective::Syntactic {
        mu: 0.1,
        pool: vec![toy.p1.clone()],
    };

    let best = exhaustive_search(&toy.language, n, 3, &contextual, base)?;
    println!(
        "exhaustive contextual: {}  ({} partitions)",
        show(&toy.vocab, &best.best),
        best.evaluated
    );
    let best = exhaustive_search(&toy.language, n, 2, &syntactic, base)?;
    println!("exhaustive syntactic:  {}", show(&toy.vocab, &best.best));

    let moves = MoveSet {
        merge: true,
        annotations: vec![
            ("position".into(), position_partition(&toy.language, n)?),
            ("sentence".into(), sequence_partition(&toy.language, n)?),
        ],
        random_split: None,
    };
    for (name, objective) in [("contextual", &contextual), ("syntactic", &syntactic)] {
        let result = greedy_search(&toy.language, n, objective, &moves, 20, base)?;
        println!(
            "greedy {name}: {}  I = {:.5}  objective trace {:?}",
            show(&toy.vocab, &result.best),
            result.evaluation.information,
            result.trace
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
