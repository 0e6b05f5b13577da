//! Project the toy language through the topic partition P1 and compare
//! the projection with its shuffle and with the unigram product.

use lexcat::fixtures::toy;
use lexcat::language::CategoryLanguage;
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let toy = toy();
    let projected = toy.language.project(&toy.p1)?;
    println!("pi_1(L):");
    for (seq, p) in projected.iter() {
        let names: Vec<&str> = seq
            .iter()
            .map(|&c| toy.p1.label(c).unwrap_or("?"))
            .collect();
        println!("  {:<30} {p:.4}", names.join(" "));
    }
    let shuffled = toy.language.shuffle().project(&toy.p1)?;
    println!(
        "max |pi_1(L) - pi_1(shuffle L)| = {:.2e}",
        projected.max_abs_diff(&shuffled)
    );

    let product: CategoryLanguage = toy
        .language
        .unigram_product()
        .project(&toy.p1)?
        .materialize();
    println!(
        "unigram product support: {} category sequences",
        product.support_size()
    );
    assert!(projected.max_abs_diff(&shuffled) < 1e-12);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
