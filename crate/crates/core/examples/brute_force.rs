//! Exhaustive spectra of the small types, with witness pairs.
//!
//! `cargo run --release --example brute_force`

use sudoku_spectrum::spectrum::{brute_force_latin_spectrum, brute_force_spectrum};

fn main() {
    for n in 1..=5 {
        let r = brute_force_latin_spectrum(n).unwrap();
        println!("latin order {n}: {} squares, spectrum {:?}", r.square_count, r.values());
    }
    for (h, w) in [(2, 2), (2, 3)] {
        let r = brute_force_spectrum(h, w).unwrap();
        println!(
            "type ({h},{w}): {} squares, {} swept, spectrum {:?}",
            r.square_count,
            r.representatives,
            r.values()
        );
        if let Some((a, b)) = r.witnesses.get(&(h * h * w * w - 4)) {
            println!("witness for n²-4:\n{a}\n{b}");
        }
    }
}
