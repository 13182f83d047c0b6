//! Exhaustive intersection spectra for small types.
//!
//! Every square is `σ(B)` for a unique symbol relabelling `σ` and a unique `B` whose
//! first row is `0..n`, so all pairs are `(A, σ(B))` with `A, B` normalized, up to
//! relabelling both sides. Row and column permutations that map boxes to boxes
//! also preserve intersection numbers, so `A` only needs to range over one square
//! per orbit of that group. For each `(A, B)` the values over all `σ` come from
//! [`relabelled_agreements`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::ControlFlow;

use rayon::prelude::*;

use super::SpectrumError;
use crate::cages::CageModel;
use crate::square::{
    mask_values, permute_cols, permute_rows, permute_symbols, relabelled_agreements,
    relabelling_with_agreement, BoxType, LatinSquare, Permutation,
};

/// Largest order enumerated for Sudoku types.
pub const MAX_SUDOKU_ORDER: usize = 6;
/// Largest order enumerated for plain latin squares.
pub const MAX_LATIN_ORDER: usize = 5;

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// `(1, n)` stands for plain latin squares of order `n`.
    pub box_type: BoxType,
    /// Number of squares of the type.
    pub square_count: u64,
    /// Number of first squares actually swept.
    pub representatives: usize,
    /// One pair per achieved value.
    pub witnesses: BTreeMap<usize, (LatinSquare, LatinSquare)>,
}

impl SpectrumReport {
    pub fn values(&self) -> BTreeSet<usize> {
        self.witnesses.keys().copied().collect()
    }
}

/// All squares of the type whose first row is `0, 1, .., n-1`, in lexicographic order.
pub fn enumerate_normalized(bt: BoxType) -> Vec<LatinSquare> {
    let n = bt.order();
    let mut out = Vec::new();
    CageModel::sudoku(bt).for_each_solution(true, |cells| {
        out.push(LatinSquare::from_cells_unchecked(n, cells.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

type Generator = (bool, Permutation);

/// Adjacent transpositions of rows within a band, of whole bands, and the same for
/// columns within and across stacks.
fn generators(bt: BoxType) -> Vec<Generator> {
    let n = bt.order();
    let swap = |a: usize, b: usize| {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        p
    };
    let block_swap = |size: usize, blk: usize| {
        let mut p: Vec<usize> = (0..n).collect();
        for i in 0..size {
            p.swap(blk * size + i, (blk + 1) * size + i);
        }
        p
    };
    let mut out = Vec::new();
    for (is_row, size, blocks) in [(true, bt.h, bt.w), (false, bt.w, bt.h)] {
        for blk in 0..blocks {
            for i in 0..size.saturating_sub(1) {
                out.push((is_row, swap(blk * size + i, blk * size + i + 1)));
            }
        }
        for blk in 0..blocks.saturating_sub(1) {
            out.push((is_row, block_swap(size, blk)));
        }
    }
    out.into_iter().map(|(r, p)| (r, Permutation::new(p).expect("swap is a bijection"))).collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// One index per orbit of the box-preserving row/column group acting on
/// normalized squares (followed by renormalization).
pub fn orbit_representatives(bt: BoxType, squares: &[LatinSquare]) -> Vec<usize> {
    let index: HashMap<&[u8], usize> = squares.iter().enumerate().map(|(i, s)| (s.cells(), i)).collect();
    let gens = generators(bt);
    let mut parent: Vec<usize> = (0..squares.len()).collect();
    for (i, sq) in squares.iter().enumerate() {
        for (is_row, p) in &gens {
            let moved = if *is_row { permute_rows(sq, p) } else { permute_cols(sq, p) }
                .expect("generator order")
                .normalize_symbols();
            let j = index[moved.cells()];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..squares.len()).filter(|&i| find(&mut parent, i) == i).collect()
}

/// The exact set of intersection numbers over all pairs of squares of type `(h, w)`,
/// with one witness pair per value. `h = 1` (or `w = 1`) means plain latin squares.
pub fn brute_force_spectrum(h: usize, w: usize) -> Result<SpectrumReport, SpectrumError> {
    let bt = BoxType::relaxed(h, w)?;
    let n = bt.order();
    let latin_mode = h == 1 || w == 1;
    let bound = if latin_mode { MAX_LATIN_ORDER } else { MAX_SUDOKU_ORDER };
    if n > bound {
        return Err(SpectrumError::TooLarge { order: n, max: bound });
    }
    let bt = if latin_mode { BoxType::relaxed(1, n)? } else { bt };
    let squares = enumerate_normalized(bt);
    let reps = orbit_representatives(bt, &squares);
    let found: Vec<(usize, u128, BTreeMap<usize, usize>)> = reps
        .par_iter()
        .map(|&a| {
            let mut mask = 0u128;
            let mut first = BTreeMap::new();
            for (b, sq) in squares.iter().enumerate() {
                let m = relabelled_agreements(&squares[a], sq);
                let new = m & !mask;
                if new != 0 {
                    for v in mask_values(new) {
                        first.insert(v, b);
                    }
                    mask |= m;
                }
            }
            (a, mask, first)
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    for (a, _, first) in &found {
        for (&v, &b) in first {
            witnesses.entry(v).or_insert_with(|| {
                let sigma = relabelling_with_agreement(&squares[*a], &squares[b], v)
                    .expect("value came from this pair");
                let other = permute_symbols(&squares[b], &sigma).expect("same order");
                (squares[*a].clone(), other)
            });
        }
    }
    let factorial: u64 = (1..=n as u64).product();
    Ok(SpectrumReport {
        box_type: bt,
        square_count: squares.len() as u64 * factorial,
        representatives: reps.len(),
        witnesses,
    })
}

pub fn brute_force_latin_spectrum(n: usize) -> Result<SpectrumReport, SpectrumError> {
    brute_force_spectrum(1, n)
}
