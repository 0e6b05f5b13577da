//! Candidate partitions as points (I, leakage); hull edges give the γ or μ
//! at which neighbouring candidates tie.

use lexcat::fixtures::toy;
use lexcat::infotheory::LogBase;
use lexcat::partition::Partition;
use lexcat::search::{hull_points, HullMode};
use lexcat::Result;

pub fn run_example() -> Result<()> {
    let toy = toy();
    let nul = Partition::p_nul(toy.vocab.len())?;
    let contextual = [
        ("p_nul".to_owned(), nul.clone()),
        ("P1".to_owned(), toy.p1.clone()),
        ("P2".to_owned(), toy.p2.clone()),
    ];
    let syntactic = [
        ("p_nul".to_owned(), nul),
        ("P2".to_owned(), toy.p2.clone()),
        ("P3".to_owned(), toy.p3.clone()),
    ];
    let modes = [
        ("contextual", &contextual, HullMode::Contextual),
        (
            "syntactic vs P1",
            &syntactic,
            HullMode::Syntactic {
                reference: toy.p1.clone(),
            },
        ),
    ];
    for (name, candidates, mode) in modes {
        let hull = hull_points(&toy.language, candidates, &mode, LogBase::Two)?;
        println!("{name}:");
        for p in &hull.points {
            println!(
                "  {:<6} x = {:.5}  y = {:.5}  on hull: {}",
                p.label, p.x, p.y, p.on_hull
            );
        }
        for s in &hull.segments {
            println!("  {} -> {}: slope {:.5}", s.from, s.to, s.slope);
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
