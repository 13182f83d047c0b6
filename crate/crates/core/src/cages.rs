//! Backtracking over latin squares with one extra partition of the cells into
//! cages, each of which must hold every symbol once (Sudoku boxes, pentomino cages).

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::square::BoxType;

#[derive(Debug, Clone)]
pub(crate) struct CageModel {
    n: usize,
    cage_of: Vec<usize>,
}

impl CageModel {
    pub(crate) fn new(n: usize, cage_of: Vec<usize>) -> Self {
        assert!(n <= 64, "cage solver supports n <= 64");
        assert_eq!(cage_of.len(), n * n);
        Self { n, cage_of }
    }

    pub(crate) fn sudoku(bt: BoxType) -> Self {
        let n = bt.order();
        let cage_of = (0..n * n)
            .map(|i| {
                let (band, stack) = bt.box_of(i / n, i % n);
                band * bt.h + stack
            })
            .collect();
        Self::new(n, cage_of)
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Visits every solution in lexicographic order. With `identity_first_row` only
    /// solutions whose first row reads `0..n` are visited.
    pub(crate) fn for_each_solution<F>(&self, identity_first_row: bool, mut f: F)
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let n = self.n;
        let mut st = Masks::new(n);
        let mut cells = vec![0u8; n * n];
        let mut start = 0;
        if identity_first_row {
            for c in 0..n {
                if !st.can(self, 0, c, c) {
                    return;
                }
                st.set(self, 0, c, c);
                cells[c] = c as u8;
            }
            start = n;
        }
        let _ = self.enumerate(start, &mut st, &mut cells, &mut f);
    }

    fn enumerate<F>(&self, idx: usize, st: &mut Masks, cells: &mut [u8], f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let n = self.n;
        if idx == n * n {
            return f(cells);
        }
        let (r, c) = (idx / n, idx % n);
        let mut avail = st.available(self, r, c) & self.full();
        while avail != 0 {
            let s = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            st.set(self, r, c, s);
            cells[idx] = s as u8;
            let flow = self.enumerate(idx + 1, st, cells, f);
            st.clear(self, r, c, s);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Randomized most-constrained-cell backtracking with up to `restarts` restarts,
    /// each limited to `node_budget` placements.
    pub(crate) fn random_fill<R: Rng>(
        &self,
        rng: &mut R,
        restarts: usize,
        node_budget: u64,
    ) -> Option<Vec<u8>> {
        for _ in 0..restarts.max(1) {
            let mut st = Masks::new(self.n);
            let mut cells = vec![u8::MAX; self.n * self.n];
            let mut nodes = 0;
            if self.random_dfs(rng, &mut st, &mut cells, self.n * self.n, &mut nodes, node_budget) == Some(true) {
                return Some(cells);
            }
        }
        None
    }

    fn random_dfs<R: Rng>(
        &self,
        rng: &mut R,
        st: &mut Masks,
        cells: &mut [u8],
        empty: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if empty == 0 {
            return Some(true);
        }
        let n = self.n;
        let mut best = usize::MAX;
        let mut best_count = u32::MAX;
        let mut ties = 0u32;
        for idx in 0..n * n {
            if cells[idx] != u8::MAX {
                continue;
            }
            let count = (st.available(self, idx / n, idx % n) & self.full()).count_ones();
            if count < best_count {
                best_count = count;
                best = idx;
                ties = 1;
            } else if count == best_count {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    best = idx;
                }
            }
            if count == 0 {
                return Some(false);
            }
        }
        let (r, c) = (best / n, best % n);
        let avail = st.available(self, r, c) & self.full();
        let mut symbols: Vec<usize> = (0..n).filter(|&s| avail >> s & 1 == 1).collect();
        symbols.shuffle(rng);
        for s in symbols {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            st.set(self, r, c, s);
            cells[best] = s as u8;
            let res = self.random_dfs(rng, st, cells, empty - 1, nodes, budget);
            if res != Some(false) {
                return res;
            }
            cells[best] = u8::MAX;
            st.clear(self, r, c, s);
        }
        Some(false)
    }
}

struct Masks {
    row: Vec<u64>,
    col: Vec<u64>,
    cage: Vec<u64>,
}

impl Masks {
    fn new(n: usize) -> Self {
        Self { row: vec![0; n], col: vec![0; n], cage: vec![0; n] }
    }

    fn available(&self, m: &CageModel, r: usize, c: usize) -> u64 {
        !(self.row[r] | self.col[c] | self.cage[m.cage_of[r * m.n + c]])
    }

    fn can(&self, m: &CageModel, r: usize, c: usize, s: usize) -> bool {
        self.available(m, r, c) >> s & 1 == 1
    }

    fn set(&mut self, m: &CageModel, r: usize, c: usize, s: usize) {
        let bit = 1u64 << s;
        self.row[r] |= bit;
        self.col[c] |= bit;
        self.cage[m.cage_of[r * m.n + c]] |= bit;
    }

    fn clear(&mut self, m: &CageModel, r: usize, c: usize, s: usize) {
        let bit = !(1u64 << s);
        self.row[r] &= bit;
        self.col[c] &= bit;
        self.cage[m.cage_of[r * m.n + c]] &= bit;
    }
}
