//! Latin and Sudoku squares, their validation, and intersections.
//!
//! Symbols are always `0..n`. Squares are immutable once built; every
//! transformation returns a new value.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Where a square first fails to be latin (or Sudoku).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `symbol` appears twice in `row`.
    Row { row: usize, symbol: u8 },
    /// `symbol` appears twice in `col`.
    Column { col: usize, symbol: u8 },
    /// `symbol` appears twice in box `(band, stack)`.
    Box { band: usize, stack: usize, symbol: u8 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Row { row, symbol } => write!(f, "symbol {symbol} repeats in row {row}"),
            Violation::Column { col, symbol } => {
                write!(f, "symbol {symbol} repeats in column {col}")
            }
            Violation::Box { band, stack, symbol } => {
                write!(f, "symbol {symbol} repeats in box ({band},{stack})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not latin: {0}")]
    NotLatin(Violation),
    #[error("not a Sudoku: {0}")]
    NotSudoku(Violation),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("not a permutation of 0..{n}")]
    NotBijection { n: usize },
}

/// Checks the row and column conditions of an `n x n` grid.
///
/// Rows are checked before columns, and only the first violation is reported.
pub fn validate_latin(grid: &[Vec<u8>]) -> Result<(), SquareError> {
    let n = grid.len();
    if n == 0 {
        return Err(SquareError::Malformed("empty grid".into()));
    }
    if n > 256 {
        return Err(SquareError::Malformed(format!("order {n} exceeds 256")));
    }
    for (r, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(SquareError::Malformed(format!(
                "row {r} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&s) = row.iter().find(|&&s| s as usize >= n) {
            return Err(SquareError::Malformed(format!(
                "symbol {s} in row {r} is out of range for order {n}"
            )));
        }
    }
    let mut seen = vec![false; n];
    for (r, row) in grid.iter().enumerate() {
        seen.fill(false);
        for &s in row {
            if std::mem::replace(&mut seen[s as usize], true) {
                return Err(SquareError::NotLatin(Violation::Row { row: r, symbol: s }));
            }
        }
    }
    for c in 0..n {
        seen.fill(false);
        for row in grid {
            let s = row[c];
            if std::mem::replace(&mut seen[s as usize], true) {
                return Err(SquareError::NotLatin(Violation::Column { col: c, symbol: s }));
            }
        }
    }
    Ok(())
}

/// Checks the box condition on top of [`validate_latin`].
pub fn validate_sudoku(square: &LatinSquare, box_type: BoxType) -> Result<(), SquareError> {
    let n = square.order();
    if n != box_type.order() {
        return Err(SquareError::Malformed(format!(
            "order {n} does not match box type ({},{})",
            box_type.h, box_type.w
        )));
    }
    match first_box_violation(square, box_type) {
        Some(v) => Err(SquareError::NotSudoku(v)),
        None => Ok(()),
    }
}

fn first_box_violation(square: &LatinSquare, bt: BoxType) -> Option<Violation> {
    let n = square.order();
    let mut seen = vec![false; n];
    for band in 0..bt.w {
        for stack in 0..bt.h {
            seen.fill(false);
            for r in band * bt.h..(band + 1) * bt.h {
                for c in stack * bt.w..(stack + 1) * bt.w {
                    let s = square.get(r, c);
                    if std::mem::replace(&mut seen[s as usize], true) {
                        return Some(Violation::Box { band, stack, symbol: s });
                    }
                }
            }
        }
    }
    None
}

/// An order-n latin square over symbols `0..n`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self, SquareError> {
        validate_latin(&rows)?;
        let n = rows.len();
        Ok(Self { n, cells: rows.into_iter().flatten().collect() })
    }

    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self, SquareError> {
        if n == 0 || cells.len() != n * n {
            return Err(SquareError::Malformed(format!(
                "{} cells do not form a square of order {n}",
                cells.len()
            )));
        }
        let rows = cells.chunks(n).map(<[u8]>::to_vec).collect();
        Self::from_rows(rows)
    }

    /// Caller guarantees latinity (debug-checked).
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u8>) -> Self {
        let sq = Self { n, cells };
        debug_assert!(validate_latin(&sq.to_rows()).is_ok(), "not latin: {sq:?}");
        sq
    }

    /// `L(r, c) = (r + c) mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=256).contains(&n), "order must be in 1..=256");
        let cells = (0..n).flat_map(|r| (0..n).map(move |c| ((r + c) % n) as u8)).collect();
        Self { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.cells[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(<[u8]>::to_vec).collect()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let cells = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| self.get(c, r));
        Self { n, cells: cells.collect() }
    }

    /// Number of cells on which the two squares agree. Panics on order mismatch.
    pub fn agreement(&self, other: &LatinSquare) -> usize {
        assert_eq!(self.n, other.n, "order mismatch");
        self.cells.iter().zip(&other.cells).filter(|(a, b)| a == b).count()
    }

    /// Relabels symbols so the first row reads `0, 1, .., n-1`.
    pub fn normalize_symbols(&self) -> Self {
        let mut map = vec![0u8; self.n];
        for (c, &s) in self.row(0).iter().enumerate() {
            map[s as usize] = c as u8;
        }
        Self { n: self.n, cells: self.cells.iter().map(|&s| map[s as usize]).collect() }
    }

    pub fn is_sudoku(&self, box_type: BoxType) -> bool {
        validate_sudoku(self, box_type).is_ok()
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Box shape of a Sudoku: boxes are `h` rows tall and `w` columns wide,
/// arranged as `w` bands of `h` rows and `h` stacks of `w` columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxType {
    pub h: usize,
    pub w: usize,
}

impl BoxType {
    pub fn new(h: usize, w: usize) -> Result<Self, SquareError> {
        if h < 2 || w < 2 {
            return Err(SquareError::Malformed(format!("box type ({h},{w}) needs h, w >= 2")));
        }
        Self::relaxed(h, w)
    }

    /// Also accepts `h = 1` or `w = 1`, where the box condition follows from latinity.
    pub fn relaxed(h: usize, w: usize) -> Result<Self, SquareError> {
        if h == 0 || w == 0 || h * w > 256 {
            return Err(SquareError::Malformed(format!("unsupported box type ({h},{w})")));
        }
        Ok(Self { h, w })
    }

    pub fn order(self) -> usize {
        self.h * self.w
    }

    pub fn transposed(self) -> Self {
        Self { h: self.w, w: self.h }
    }

    /// `(band, stack)` of the box containing cell `(r, c)`.
    pub fn box_of(self, r: usize, c: usize) -> (usize, usize) {
        (r / self.h, c / self.w)
    }
}

impl fmt::Display for BoxType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.w)
    }
}

/// A latin square known to satisfy the box condition of its [`BoxType`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SudokuSquare {
    square: LatinSquare,
    box_type: BoxType,
}

impl SudokuSquare {
    pub fn new(square: LatinSquare, box_type: BoxType) -> Result<Self, SquareError> {
        validate_sudoku(&square, box_type)?;
        Ok(Self { square, box_type })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>, box_type: BoxType) -> Result<Self, SquareError> {
        Self::new(LatinSquare::from_rows(rows)?, box_type)
    }

    pub fn box_type(&self) -> BoxType {
        self.box_type
    }

    pub fn square(&self) -> &LatinSquare {
        &self.square
    }

    pub fn into_square(self) -> LatinSquare {
        self.square
    }

    /// Transposition swaps the roles of rows and columns, so the result has type `(w,h)`.
    pub fn transpose(&self) -> Self {
        Self { square: self.square.transpose(), box_type: self.box_type.transposed() }
    }
}

impl std::ops::Deref for SudokuSquare {
    type Target = LatinSquare;
    fn deref(&self) -> &LatinSquare {
        &self.square
    }
}

impl fmt::Display for SudokuSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.square.fmt(f)
    }
}

/// A partial latin square as a set of `(row, col, symbol)` triples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialSquare {
    n: usize,
    triples: BTreeSet<(usize, usize, u8)>,
}

impl PartialSquare {
    pub fn from_triples(
        n: usize,
        triples: impl IntoIterator<Item = (usize, usize, u8)>,
    ) -> Result<Self, SquareError> {
        let triples: BTreeSet<_> = triples.into_iter().collect();
        let mut cell = vec![false; n * n];
        let mut in_row = vec![false; n * n];
        let mut in_col = vec![false; n * n];
        for &(r, c, s) in &triples {
            let s = s as usize;
            if r >= n || c >= n || s >= n {
                return Err(SquareError::Malformed(format!("triple ({r},{c},{s}) out of range")));
            }
            if std::mem::replace(&mut cell[r * n + c], true) {
                return Err(SquareError::Malformed(format!("cell ({r},{c}) filled twice")));
            }
            if std::mem::replace(&mut in_row[r * n + s], true) {
                return Err(SquareError::NotLatin(Violation::Row { row: r, symbol: s as u8 }));
            }
            if std::mem::replace(&mut in_col[c * n + s], true) {
                return Err(SquareError::NotLatin(Violation::Column { col: c, symbol: s as u8 }));
            }
        }
        Ok(Self { n, triples })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, r: usize, c: usize, s: u8) -> bool {
        self.triples.contains(&(r, c, s))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize, u8)> {
        self.triples.iter()
    }
}

/// The common entries of `a` and `b`; its size is their intersection number.
pub fn intersection(a: &LatinSquare, b: &LatinSquare) -> Result<PartialSquare, SquareError> {
    if a.order() != b.order() {
        return Err(SquareError::OrderMismatch { left: a.order(), right: b.order() });
    }
    let n = a.order();
    let triples = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| a.get(r, c) == b.get(r, c))
        .map(|(r, c)| (r, c, a.get(r, c)))
        .collect();
    Ok(PartialSquare { n, triples })
}

/// A bijection on `0..n`, `i -> map[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, SquareError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(SquareError::NotBijection { n });
            }
        }
        Ok(Self(map))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }
}

fn check_len(s: &LatinSquare, pi: &Permutation) -> Result<(), SquareError> {
    if pi.len() != s.order() {
        return Err(SquareError::OrderMismatch { left: s.order(), right: pi.len() });
    }
    Ok(())
}

/// Replaces every symbol `x` by `pi(x)`.
pub fn permute_symbols(s: &LatinSquare, pi: &Permutation) -> Result<LatinSquare, SquareError> {
    check_len(s, pi)?;
    let cells = s.cells().iter().map(|&x| pi.apply(x as usize) as u8).collect();
    Ok(LatinSquare::from_cells_unchecked(s.order(), cells))
}

/// Row `i` of the result is row `pi(i)` of `s`.
pub fn permute_rows(s: &LatinSquare, pi: &Permutation) -> Result<LatinSquare, SquareError> {
    check_len(s, pi)?;
    let cells = (0..s.order()).flat_map(|i| s.row(pi.apply(i)).iter().copied()).collect();
    Ok(LatinSquare::from_cells_unchecked(s.order(), cells))
}

/// Column `j` of the result is column `pi(j)` of `s`.
pub fn permute_cols(s: &LatinSquare, pi: &Permutation) -> Result<LatinSquare, SquareError> {
    check_len(s, pi)?;
    let n = s.order();
    let cells = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| s.get(r, pi.apply(c)));
    Ok(LatinSquare::from_cells_unchecked(n, cells.collect()))
}

/// The set `{ |a ∩ σ(b)| : σ ∈ Sym(n) }` as a bitmask over values `0..=n²`.
///
/// `|a ∩ σ(b)|` is the sum of `count[σ(y)][y]` where `count[x][y]` is the number of
/// cells holding `x` in `a` and `y` in `b`, so the set is the set of permutation
/// sums of `count`, computed by a subset DP. Requires `n <= 11`.
pub fn relabelled_agreements(a: &LatinSquare, b: &LatinSquare) -> u128 {
    let n = a.order();
    assert_eq!(n, b.order(), "order mismatch");
    assert!(n <= 11, "relabelled_agreements supports n <= 11");
    let mut count = vec![0u32; n * n];
    for (&x, &y) in a.cells().iter().zip(b.cells()) {
        count[y as usize * n + x as usize] += 1;
    }
    let mut dp = vec![0u128; 1 << n];
    dp[0] = 1;
    for mask in 0usize..(1 << n) {
        let reach = dp[mask];
        if reach == 0 {
            continue;
        }
        let y = mask.count_ones() as usize;
        for x in 0..n {
            if mask & (1 << x) == 0 {
                dp[mask | (1 << x)] |= reach << count[y * n + x];
            }
        }
    }
    dp[(1 << n) - 1]
}

/// A relabelling `σ` with `|a ∩ σ(b)| = target`, if one exists.
pub fn relabelling_with_agreement(
    a: &LatinSquare,
    b: &LatinSquare,
    target: usize,
) -> Option<Permutation> {
    let n = a.order();
    let mut count = vec![0usize; n * n];
    for (&x, &y) in a.cells().iter().zip(b.cells()) {
        count[y as usize * n + x as usize] += 1;
    }
    fn go(
        y: usize,
        n: usize,
        left: usize,
        count: &[usize],
        used: &mut [bool],
        map: &mut Vec<usize>,
    ) -> bool {
        if y == n {
            return left == 0;
        }
        let cap: usize = (y..n).map(|yy| (0..n).map(|x| count[yy * n + x]).max().unwrap_or(0)).sum();
        if cap < left {
            return false;
        }
        for x in 0..n {
            let gain = count[y * n + x];
            if used[x] || gain > left {
                continue;
            }
            used[x] = true;
            map.push(x);
            if go(y + 1, n, left - gain, count, used, map) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(0, n, target, &count, &mut used, &mut map).then_some(Permutation(map))
}

/// Indices set in a value bitmask.
pub fn mask_values(mask: u128) -> BTreeSet<usize> {
    (0..128).filter(|&v| mask >> v & 1 == 1).collect()
}
