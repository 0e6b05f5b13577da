//! Exact set-semantics checks: which toy partitions are contextual, and
//! which are independent of every contextual partition.

use lexcat::fixtures::toy;
use lexcat::oracle::{
    contextual_partitions, is_contextual_exact, is_syntactic_against, FiniteLanguage,
    PreimageDomain,
};
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let toy = toy();
    let support = FiniteLanguage::support_of(&toy.language);
    let pool = contextual_partitions(&support, toy.vocab.len(), toy.vocab.len())?;
    println!("{} contextual partitions of the toy vocabulary", pool.len());
    for (name, p) in [("P1", &toy.p1), ("P2", &toy.p2), ("P3", &toy.p3)] {
        println!(
            "{name}: contextual = {}, syntactic = {}",
            is_contextual_exact(&support, p)?,
            is_syntactic_against(&support, p, &pool, PreimageDomain::Language)?
        );
    }
    assert!(is_contextual_exact(&support, &toy.p1)?);
    assert!(is_syntactic_against(
        &support,
        &toy.p2,
        &pool,
        PreimageDomain::Language
    )?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
