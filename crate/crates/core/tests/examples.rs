//! Runs every example so they stay compiling and correct.

#[allow(dead_code)]
#[path = "../examples/toy_projection.rs"]
mod toy_projection;

#[test]
fn toy_projection_runs() {
    toy_projection::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/information_measures.rs"]
mod information_measures;

#[test]
fn information_measures_runs() {
    information_measures::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/oracle_checks.rs"]
mod oracle_checks;

#[test]
fn oracle_checks_runs() {
    oracle_checks::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/split_experiment.rs"]
mod split_experiment;

#[test]
fn split_experiment_runs() {
    split_experiment::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/convex_hull.rs"]
mod convex_hull;

#[test]
fn convex_hull_runs() {
    convex_hull::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/partition_search.rs"]
mod partition_search;

#[test]
fn partition_search_runs() {
    partition_search::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/model_relaxation.rs"]
mod model_relaxation;

#[test]
fn model_relaxation_runs() {
    model_relaxation::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/corpus_ingest.rs"]
mod corpus_ingest;

#[test]
fn corpus_ingest_runs() {
    corpus_ingest::run_example().unwrap();
}
