//! Replace entropy by the best cross-entropy of a restricted model class.
//! A bigram chain cannot see that the subject/object roles of P3 depend
//! on the sentence, so it overestimates the entropy of the projection.

use lexcat::fixtures::toy;
use lexcat::infotheory::{
    entropy, model_information, LogBase, MarkovBigram, ModelClass, Unrestricted,
};
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let toy = toy();
    let base = LogBase::Two;
    let projected = toy.language.project(&toy.p3)?;
    println!("H(pi_3(L))          = {:.5}", entropy(&projected, base));
    println!(
        "bigram cross-entropy = {:.5}",
        MarkovBigram.cross_entropy(&projected, base)
    );
    for class in [&Unrestricted as &dyn ModelClass, &MarkovBigram] {
        for (name, p) in [("P1", &toy.p1), ("P2", &toy.p2), ("P3", &toy.p3)] {
            let r = model_information(&toy.language, p, class, base)?;
            println!(
                "{:<13} {name}: I = {:.5}  I_shuffled = {:.5}",
                r.model, r.report.information, r.report.information_shuffled
            );
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
