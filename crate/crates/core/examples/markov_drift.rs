//! Random Sudoku squares, short drifts that stay close, and deranged starts that do not.
//!
//! `cargo run --example markov_drift -- 2 4`

use std::collections::BTreeMap;

use sudoku_spectrum::markov::{drift_near, rng_from_seed, row_derangement, sample_sudoku};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (h, w) = match args[..] {
        [h, w] => (h, w),
        _ => (2, 4),
    };
    let mut rng = rng_from_seed(42);
    let l = sample_sudoku(h, w, &mut rng, 100).unwrap();
    println!("reference:\n{l}");
    let mut seen = BTreeMap::new();
    for seed in 0..200u64 {
        let mut rng = rng_from_seed(seed);
        let near = drift_near(&l, &mut rng, 1 + seed as usize % 6);
        *seen.entry(l.agreement(&near)).or_insert(0) += 1;
        let far = drift_near(&row_derangement(&l, &mut rng), &mut rng, 4);
        *seen.entry(l.agreement(&far)).or_insert(0) += 1;
    }
    println!("intersection: count");
    for (k, count) in seen {
        println!("{k:>4}: {count}");
    }
}
