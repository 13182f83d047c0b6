//! The stored squares: re-verify every label and list what each type witnesses.
//!
//! `cargo run --example seed_database`

use sudoku_spectrum::spectrum::{verify_seed_database, SeedDatabase};

fn main() {
    let report = verify_seed_database();
    println!("{} squares checked, all labels reproduced: {}", report.checks.len(), report.passed());
    for set in SeedDatabase::embedded().sets() {
        let labels: Vec<usize> = set.labels().collect();
        println!("{}: {} labelled squares, {:?}", set.box_type, labels.len(), labels);
    }
    let set = SeedDatabase::embedded().sets().find(|s| s.box_type.order() == 16).unwrap();
    let (l, l247) = set.pair(247).unwrap();
    println!("(4,4) reference:\n{l}\nlabelled 247:\n{l247}");
}
