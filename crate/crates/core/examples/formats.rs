//! Reading and writing squares in the three notations.
//!
//! `cargo run --example formats`

use sudoku_spectrum::formats::{parse_auto, serialize, Style};
use sudoku_spectrum::square::BoxType;

fn main() {
    let bt = BoxType::new(2, 3).unwrap();
    let sq = parse_auto("012345|543102|105234|324510|451023|230451", Some(bt)).unwrap();
    for style in [Style::SingleLine, Style::Grid, Style::Json] {
        let text = serialize(&sq, style).unwrap();
        println!("{style:?}:\n{}", text.trim_end());
        assert_eq!(parse_auto(&text, Some(bt)).unwrap(), sq);
    }
    match parse_auto("012345|012345|105234|324510|451023|230451", Some(bt)) {
        Ok(_) => unreachable!(),
        Err(e) => println!("repeated row rejected: {e}"),
    }
}
