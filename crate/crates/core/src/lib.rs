//! Sudoku latin squares and their intersection numbers.
//!
//! Two latin squares of the same order meet in the cells where they agree. The
//! [`spectrum`] module builds certified pairs of Sudoku squares of box type `(h, w)`
//! meeting in any achievable number of cells, and computes exact spectra of small
//! types by exhaustion. [`markov`] holds the Jacobson–Matthews chain and the random
//! samplers built on it; [`pentadoku`] classifies cage latin squares on pentomino
//! tilings of the 5×5 board.
//!
//! Symbols are `0..n`. A box type `(h, w)` has boxes of `h` rows and `w` columns.

mod cages;
pub mod cli;
pub mod construct;
pub mod formats;
pub mod markov;
pub mod pentadoku;
pub mod spectrum;
pub mod square;

pub use construct::{latin_spectrum, sudoku_spectrum, upsilon};
pub use formats::{parse_auto, serialize, Style};
pub use markov::{rng_from_seed, Rng};
pub use spectrum::{realize_sudoku_pair, RealizationCertificate, Realizer, SpectrumError};
pub use square::{intersection, BoxType, LatinSquare, PartialSquare, Permutation, SudokuSquare};
