//! Kronecker and block products, and the row reordering that makes them Sudoku.
//!
//! `cargo run --example products`

use sudoku_spectrum::construct::{kronecker, sudoku_reorder, triangle_product, SquareFamily};
use sudoku_spectrum::square::LatinSquare;

fn main() {
    let l = LatinSquare::cyclic(2);
    let m = LatinSquare::cyclic(3);
    let p = kronecker(&l, &m).unwrap();
    println!("L ⊗ M:\n{p}");
    let s = sudoku_reorder(&p, 2, 3).unwrap();
    println!("rows reordered, a Sudoku of type {}:\n{s}", s.box_type());

    // Four order-3 members, one per (row bundle, symbol bundle).
    let other = LatinSquare::from_rows(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
    let left = SquareFamily::new(2, 3, vec![m.clone(), m.clone(), m.clone(), m.clone()]).unwrap();
    let right = SquareFamily::new(2, 3, vec![m.clone(), other.clone(), m.clone(), other.clone()]).unwrap();
    let a = sudoku_reorder(&triangle_product(&l, &left).unwrap(), 2, 3).unwrap();
    let b = sudoku_reorder(&triangle_product(&l, &right).unwrap(), 2, 3).unwrap();
    let parts: usize = left.members().iter().zip(right.members()).map(|(x, y)| x.agreement(y)).sum();
    println!("block products meet in {} cells; member intersections sum to {parts}", a.agreement(&b));
}
