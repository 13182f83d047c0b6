//! Classifies every pentomino tiling of the 5×5 board by its intersection spectrum.
//!
//! `cargo run --example pentadoku_census [-- census.csv]`

use sudoku_spectrum::pentadoku::{classify_all, Category, Tiling};

fn main() {
    let census = classify_all();
    println!("{} tilings", census.classes.len());
    println!("unsolvable full partial rigid: {}", census.summary());
    for class in &census.classes {
        if let Category::Rigid = class.category {
            println!("rigid tiling, spectrum {:?}:\n{}", class.spectrum, class.tiling);
            println!("same as the example puzzle: {}", class.tiling.is_equivalent(&Tiling::example_puzzle()));
        }
    }
    let odd = census.unexpected_missing();
    println!("partial tilings missing unexpected values: {}", odd.len());
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, census.to_csv()).expect("write census");
        println!("wrote {path}");
    }
}
