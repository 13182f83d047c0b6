//! Random latin and Sudoku squares from the Jacobson–Matthews chain.
//!
//! A state is a function `f` on `(row, col, symbol)` triples with values in
//! `{-1, 0, 1}` whose every line sum is 1. Proper states (no `-1`) are exactly the
//! latin squares; an improper state has a single `-1` entry.
//!
//! Sudoku squares are handled by rejection: a chain segment from a proper state to
//! the next proper state is kept only if that square respects the boxes.
//!
//! All randomness comes from [`Rng`] (ChaCha8) seeded with an explicit `u64`.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cages::CageModel;
use crate::square::{permute_rows, BoxType, LatinSquare, Permutation, SudokuSquare};

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("no Sudoku of type {box_type} found within the effort budget ({effort} restarts)")]
    EffortExhausted { box_type: BoxType, effort: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainState {
    n: usize,
    cube: Vec<i8>,
    improper: Option<[usize; 3]>,
    /// Symbol grid of the last proper state, refreshed lazily from `touched`.
    grid: Vec<u8>,
    touched: Vec<usize>,
}

impl ChainState {
    pub fn from_square(square: &LatinSquare) -> Self {
        let n = square.order();
        let mut cube = vec![0i8; n * n * n];
        for r in 0..n {
            for c in 0..n {
                cube[(r * n + c) * n + square.get(r, c) as usize] = 1;
            }
        }
        Self { n, cube, improper: None, grid: square.cells().to_vec(), touched: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_proper(&self) -> bool {
        self.improper.is_none()
    }

    /// The `-1` triple of an improper state.
    pub fn defect(&self) -> Option<[usize; 3]> {
        self.improper
    }

    pub fn value(&self, r: usize, c: usize, s: usize) -> i8 {
        self.cube[self.idx(r, c, s)]
    }

    fn idx(&self, r: usize, c: usize, s: usize) -> usize {
        (r * self.n + c) * self.n + s
    }

    /// Signed count of `symbol` over all cells; always `n`.
    pub fn symbol_multiplicity(&self, symbol: usize) -> i64 {
        (0..self.n * self.n).map(|rc| self.cube[rc * self.n + symbol] as i64).sum()
    }

    /// The latin square of a proper state.
    pub fn to_square(&self) -> Option<LatinSquare> {
        self.is_proper().then(|| LatinSquare::from_cells_unchecked(self.n, self.grid.clone()))
    }

    /// Symbol grid of the most recent proper state.
    pub fn grid(&self) -> &[u8] {
        &self.grid
    }

    /// Checks that every line sums to 1 and the defect bookkeeping is right.
    pub fn is_consistent(&self) -> bool {
        let n = self.n;
        let mut negatives = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (mut s1, mut s2, mut s3) = (0i32, 0i32, 0i32);
                for x in 0..n {
                    s1 += self.value(a, b, x) as i32;
                    s2 += self.value(a, x, b) as i32;
                    s3 += self.value(x, a, b) as i32;
                    let v = self.value(a, b, x);
                    if v < 0 {
                        negatives.push([a, b, x]);
                    }
                    if !(-1..=1).contains(&v) {
                        return false;
                    }
                }
                if (s1, s2, s3) != (1, 1, 1) {
                    return false;
                }
            }
        }
        match self.improper {
            None => negatives.is_empty(),
            Some(d) => negatives == [d],
        }
    }

    fn ones_on_line(&self, mut at: impl FnMut(usize) -> usize) -> [usize; 2] {
        let mut found = [usize::MAX; 2];
        let mut k = 0;
        for x in 0..self.n {
            if self.cube[at(x)] == 1 {
                found[k] = x;
                k += 1;
                if k == 2 {
                    break;
                }
            }
        }
        found
    }

    /// One ±1 move.
    pub fn step(&mut self, rng: &mut Rng) {
        let n = self.n;
        if n < 2 {
            return;
        }
        let (r, c, s, r1, c1, s1);
        if let Some([dr, dc, ds]) = self.improper {
            (r, c, s) = (dr, dc, ds);
            let pick = |pair: [usize; 2], rng: &mut Rng| pair[rng.gen_range(0..2)];
            r1 = pick(self.ones_on_line(|x| (x * n + c) * n + s), rng);
            c1 = pick(self.ones_on_line(|x| (r * n + x) * n + s), rng);
            s1 = pick(self.ones_on_line(|x| (r * n + c) * n + x), rng);
        } else {
            r = rng.gen_range(0..n);
            c = rng.gen_range(0..n);
            let current = self.grid_symbol(r, c);
            let mut z = rng.gen_range(0..n - 1);
            if z >= current {
                z += 1;
            }
            s = z;
            s1 = current;
            r1 = self.ones_on_line(|x| (x * n + c) * n + s)[0];
            c1 = self.ones_on_line(|x| (r * n + x) * n + s)[0];
        }
        for (rr, cc, ss, d) in [
            (r, c, s, 1),
            (r, c1, s1, 1),
            (r1, c, s1, 1),
            (r1, c1, s, 1),
            (r, c, s1, -1),
            (r, c1, s, -1),
            (r1, c, s, -1),
            (r1, c1, s1, -1),
        ] {
            let i = self.idx(rr, cc, ss);
            self.cube[i] += d;
        }
        self.touched.extend([r * n + c, r * n + c1, r1 * n + c, r1 * n + c1]);
        self.improper = (self.value(r1, c1, s1) == -1).then_some([r1, c1, s1]);
        if self.improper.is_none() {
            self.refresh_grid();
        }
    }

    fn grid_symbol(&self, r: usize, c: usize) -> usize {
        self.grid[r * self.n + c] as usize
    }

    fn refresh_grid(&mut self) {
        let n = self.n;
        for rc in std::mem::take(&mut self.touched) {
            let base = rc * n;
            self.grid[rc] = (0..n).find(|&s| self.cube[base + s] == 1).expect("proper cell") as u8;
        }
    }

    /// Steps at least once and then until the state is proper again.
    pub fn advance_to_proper(&mut self, rng: &mut Rng) {
        self.step(rng);
        while !self.is_proper() {
            self.step(rng);
        }
    }
}

/// `state` after one ±1 move.
pub fn jm_step(state: &ChainState, rng: &mut Rng) -> ChainState {
    let mut next = state.clone();
    next.step(rng);
    next
}

/// An approximately uniform latin square: many chain segments from the cyclic square.
pub fn random_latin(n: usize, rng: &mut Rng) -> LatinSquare {
    let mut state = ChainState::from_square(&LatinSquare::cyclic(n));
    for _ in 0..n * n * n {
        state.advance_to_proper(rng);
    }
    state.to_square().expect("proper after advance")
}

/// A random Sudoku of type `(h, w)` by randomized backtracking; `effort` bounds the
/// number of restarts.
pub fn sample_sudoku(
    h: usize,
    w: usize,
    rng: &mut Rng,
    effort: usize,
) -> Result<SudokuSquare, MarkovError> {
    let box_type = BoxType::relaxed(h, w).expect("valid box type");
    let n = box_type.order();
    let budget = 20 * (n * n) as u64 + 1000;
    let cells = CageModel::sudoku(box_type)
        .random_fill(rng, effort, budget)
        .ok_or(MarkovError::EffortExhausted { box_type, effort })?;
    let square = LatinSquare::from_cells_unchecked(n, cells);
    Ok(SudokuSquare::new(square, box_type).expect("backtracking respects boxes"))
}

/// `steps` chain segments from `l`, each rejected unless it lands on a Sudoku.
pub fn drift_near(l: &SudokuSquare, rng: &mut Rng, steps: usize) -> SudokuSquare {
    let bt = l.box_type();
    let mut state = ChainState::from_square(l);
    for _ in 0..steps {
        let saved = state.clone();
        state.advance_to_proper(rng);
        let sq = state.to_square().expect("proper");
        if !sq.is_sudoku(bt) {
            state = saved;
        }
    }
    SudokuSquare::new(state.to_square().expect("proper"), bt).expect("only Sudoku states kept")
}

fn derangement(k: usize, rng: &mut Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    if k < 2 {
        return p;
    }
    loop {
        p.shuffle(rng);
        if p.iter().enumerate().all(|(i, &x)| i != x) {
            return p;
        }
    }
}

/// Moves every band of rows to a different band and every row to a different
/// position within its band. Boxes map onto boxes, so the result is a Sudoku.
pub fn row_derangement(l: &SudokuSquare, rng: &mut Rng) -> SudokuSquare {
    let bt = l.box_type();
    let bands = derangement(bt.w, rng);
    let mut map = Vec::with_capacity(bt.order());
    for &band in &bands {
        let within = derangement(bt.h, rng);
        map.extend(within.iter().map(|&i| band * bt.h + i));
    }
    let pi = Permutation::new(map).expect("derangement is a bijection");
    let square = permute_rows(l, &pi).expect("matching order");
    SudokuSquare::new(square, bt).expect("band-respecting permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn order_two_chain_visits_both_squares() {
        let mut rng = rng_from_seed(1);
        let mut state = ChainState::from_square(&LatinSquare::cyclic(2));
        let mut seen = HashSet::new();
        for _ in 0..50 {
            state.advance_to_proper(&mut rng);
            seen.insert(state.to_square().unwrap());
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn moves_conserve_symbols_and_lines() {
        let mut rng = rng_from_seed(2);
        let mut state = ChainState::from_square(&LatinSquare::cyclic(4));
        let mut improper_seen = false;
        for i in 0..10_000 {
            state = jm_step(&state, &mut rng);
            improper_seen |= !state.is_proper();
            if i % 97 == 0 {
                assert!(state.is_consistent());
            }
            if let Some(sq) = state.to_square() {
                for s in 0..4u8 {
                    assert_eq!(sq.cells().iter().filter(|&&x| x == s).count(), 4);
                }
            }
            for s in 0..4 {
                assert_eq!(state.symbol_multiplicity(s), 4);
            }
        }
        assert!(improper_seen);
    }

    #[test]
    fn chain_reaches_every_order_four_square() {
        let mut rng = rng_from_seed(3);
        let mut state = ChainState::from_square(&LatinSquare::cyclic(4));
        let mut seen = HashSet::new();
        for _ in 0..200_000 {
            state.advance_to_proper(&mut rng);
            seen.insert(state.grid().to_vec());
        }
        assert_eq!(seen.len(), 576);
    }

    #[test]
    fn sampler_is_deterministic_and_varied() {
        let a = sample_sudoku(2, 2, &mut rng_from_seed(7), 10).unwrap();
        let b = sample_sudoku(2, 2, &mut rng_from_seed(7), 10).unwrap();
        assert_eq!(a, b);
        let distinct: HashSet<_> =
            (0..40).map(|s| sample_sudoku(2, 2, &mut rng_from_seed(s), 10).unwrap()).collect();
        assert!(distinct.len() > 10);
        let nine = sample_sudoku(3, 3, &mut rng_from_seed(11), 10).unwrap();
        assert!(nine.is_sudoku(BoxType::new(3, 3).unwrap()));
    }

    #[test]
    fn drift_keeps_box_type() {
        let l = sample_sudoku(2, 4, &mut rng_from_seed(5), 10).unwrap();
        assert_eq!(drift_near(&l, &mut rng_from_seed(0), 0), l);
        for seed in 0..20 {
            let d = drift_near(&l, &mut rng_from_seed(seed), 5);
            assert_eq!(d.box_type(), l.box_type());
        }
    }

    #[test]
    fn derangement_moves_every_row() {
        let l = sample_sudoku(3, 3, &mut rng_from_seed(9), 10).unwrap();
        for seed in 0..20 {
            let d = row_derangement(&l, &mut rng_from_seed(seed));
            assert!(d.is_sudoku(l.box_type()));
            for r in 0..9 {
                assert_ne!(d.row(r), l.row(r));
            }
        }
    }
}
