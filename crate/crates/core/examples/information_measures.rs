//! Information and mutual information of the three toy partitions.

use lexcat::fixtures::toy;
use lexcat::infotheory::{information, mutual_information, LogBase};
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let toy = toy();
    let base = LogBase::Two;
    for (name, p) in [("P1", &toy.p1), ("P2", &toy.p2), ("P3", &toy.p3)] {
        let r = information(&toy.language, p, base)?;
        println!(
            "{name}: H = {:.5}  I = {:.5}  I_shuffled = {:.5}  gap = {:.5}",
            r.h_language, r.information, r.information_shuffled, r.contextuality_gap
        );
    }
    let mi12 = mutual_information(&toy.language, &toy.p1, &toy.p2, base)?;
    let mi13 = mutual_information(&toy.language, &toy.p1, &toy.p3, base)?;
    println!("MI(P1, P2) = {:.5}", mi12.mutual_information);
    println!("MI(P1, P3) = {:.5}", mi13.mutual_information);
    assert!(mi12.mutual_information.abs() < 1e-9);
    assert!((mi13.mutual_information - 1.0).abs() < 1e-9);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
