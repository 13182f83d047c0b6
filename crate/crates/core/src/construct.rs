//! Product constructions and the arithmetic behind them.
//!
//! Products of an order-`n` square with order-`m` squares index rows, columns and
//! symbols of the result by pairs `(i, j) -> i * m + j`.
//!
//! A [`SquareFamily`] holds one order-`m` square per (row bundle `i`, symbol bundle
//! `k`). In [`triangle_product`] the block in row bundle `i` and column bundle `i'`
//! is member `(i, L(i, i'))` shifted onto symbols `k*m .. k*m + m - 1`. Written with
//! superscripts and subscripts, member `(i, k)` is the square with superscript `i`
//! and subscript `k`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::square::{BoxType, LatinSquare, Permutation, SquareError, SudokuSquare};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Square(#[from] SquareError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    /// The decomposition arithmetic produced a part outside the allowed set.
    #[error("decomposition invariant broken: {0}")]
    Invariant(String),
}

/// `n²` latin squares of order `m`, member `(i, k)` stored at `i * n + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFamily {
    n: usize,
    m: usize,
    members: Vec<LatinSquare>,
}

impl SquareFamily {
    pub fn new(n: usize, m: usize, members: Vec<LatinSquare>) -> Result<Self, ConstructError> {
        if members.len() != n * n {
            return Err(ConstructError::Dimension(format!(
                "{} members for a family over {n} bundles",
                members.len()
            )));
        }
        if let Some(bad) = members.iter().find(|s| s.order() != m) {
            return Err(ConstructError::Dimension(format!(
                "member of order {} in a family of order {m}",
                bad.order()
            )));
        }
        Ok(Self { n, m, members })
    }

    /// Every member equal to `square`.
    pub fn constant(n: usize, square: &LatinSquare) -> Self {
        Self { n, m: square.order(), members: vec![square.clone(); n * n] }
    }

    pub fn outer_order(&self) -> usize {
        self.n
    }

    pub fn inner_order(&self) -> usize {
        self.m
    }

    /// Member for row bundle `i` and symbol bundle `k`.
    pub fn member(&self, i: usize, k: usize) -> &LatinSquare {
        &self.members[i * self.n + k]
    }

    pub fn members(&self) -> &[LatinSquare] {
        &self.members
    }
}

/// `(L ⊗ M)(i1*m + j1, i2*m + j2) = L(i1, i2) * m + M(j1, j2)`.
pub fn kronecker(l: &LatinSquare, m: &LatinSquare) -> Result<LatinSquare, ConstructError> {
    triangle_product(l, &SquareFamily::constant(l.order(), m))
}

/// The block product `L ◁ M`, as a latin square of order `n * m`.
pub fn triangle_product(l: &LatinSquare, fam: &SquareFamily) -> Result<LatinSquare, ConstructError> {
    let (n, m) = (fam.n, fam.m);
    if l.order() != n {
        return Err(ConstructError::Dimension(format!(
            "outer square has order {}, family expects {n}",
            l.order()
        )));
    }
    let order = n * m;
    if order > 256 {
        return Err(ConstructError::OutOfRange(format!("product order {order} exceeds 256")));
    }
    let mut cells = vec![0u8; order * order];
    for i in 0..n {
        for i2 in 0..n {
            let k = l.get(i, i2) as usize;
            let member = fam.member(i, k);
            for j in 0..m {
                for j2 in 0..m {
                    cells[(i * m + j) * order + i2 * m + j2] = (k * m) as u8 + member.get(j, j2);
                }
            }
        }
    }
    let out = LatinSquare::from_cells(order, cells)?;
    Ok(out)
}

/// Row order that turns a block product into a Sudoku of type `(n, m)`:
/// new row `j * n + i` is old row `i * m + j`.
pub fn sudoku_row_order(n: usize, m: usize) -> Permutation {
    let map = (0..n * m).map(|new| (new % n) * m + new / n).collect();
    Permutation::new(map).expect("row order is a bijection")
}

pub fn sudoku_reorder(s: &LatinSquare, n: usize, m: usize) -> Result<SudokuSquare, ConstructError> {
    if n == 0 || m == 0 || s.order() != n * m {
        return Err(ConstructError::Dimension(format!(
            "order {} is not {n} * {m}",
            s.order()
        )));
    }
    let reordered = crate::square::permute_rows(s, &sudoku_row_order(n, m))?;
    Ok(SudokuSquare::new(reordered, BoxType::relaxed(n, m)?)?)
}

/// Inverse of [`sudoku_reorder`].
pub fn undo_sudoku_reorder(s: &LatinSquare, n: usize, m: usize) -> Result<LatinSquare, ConstructError> {
    if n == 0 || m == 0 || s.order() != n * m {
        return Err(ConstructError::Dimension(format!(
            "order {} is not {n} * {m}",
            s.order()
        )));
    }
    Ok(crate::square::permute_rows(s, &sudoku_row_order(n, m).inverse())?)
}

/// `{0, 1, .., n²-6, n²-4, n²}`.
pub fn upsilon(n: usize) -> Result<BTreeSet<usize>, ConstructError> {
    if n < 3 {
        return Err(ConstructError::OutOfRange(format!("upsilon needs n >= 3, got {n}")));
    }
    let sq = n * n;
    Ok((0..=sq - 6).chain([sq - 4, sq]).collect())
}

/// All intersection numbers of two latin squares of order `n`.
pub fn latin_spectrum(n: usize) -> Result<BTreeSet<usize>, ConstructError> {
    Ok(match n {
        0 => return Err(ConstructError::OutOfRange("latin_spectrum needs n >= 1".into())),
        1 => [1].into(),
        2 => [0, 4].into(),
        3 => [0, 3, 9].into(),
        4 => [0, 1, 2, 3, 4, 6, 8, 9, 12, 16].into(),
        _ => upsilon(n)?,
    })
}

/// All intersection numbers of two Sudoku squares of type `(h, w)`.
pub fn sudoku_spectrum(h: usize, w: usize) -> Result<BTreeSet<usize>, ConstructError> {
    if h < 2 || w < 2 {
        return Err(ConstructError::OutOfRange(format!("box type ({h},{w}) needs h, w >= 2")));
    }
    if h == 2 && w == 2 {
        latin_spectrum(4)
    } else {
        upsilon(h * w)
    }
}

/// `h²` intersection numbers of order-`w` latin squares summing to `target`.
/// Part `p` belongs to family position `(p / h, p % h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub target: usize,
    pub parts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposed {
    Parts(Decomposition),
    /// No block-product split exists; the target comes from a stored pair.
    NeedsSeed,
}

/// Splits of each `r ∉ I(4)` (with `r < 16`) into two elements of `I(4)`.
const ORDER_FOUR_SPLITS: [(usize, usize, usize); 7] =
    [(5, 3, 2), (7, 4, 3), (10, 6, 4), (11, 8, 3), (13, 9, 4), (14, 8, 6), (15, 9, 6)];

/// Writes `target ∈ Υ(hw)` as `h²` intersection numbers of order-`w` latin squares.
///
/// With `target = q w² + r`: `q` parts equal `w²`, then `r` (or a two-term split of
/// `r`), then zeros. For `w = 4` the values `n² - 6`, `n² - 9` and `n² - 11` have no
/// such split and yield [`Decomposed::NeedsSeed`].
pub fn decompose_target(target: usize, h: usize, w: usize) -> Result<Decomposed, ConstructError> {
    if w < 4 || h == 0 {
        return Err(ConstructError::OutOfRange(format!(
            "decomposition needs w >= 4 and h >= 1, got ({h},{w})"
        )));
    }
    let n = h * w;
    if !upsilon(n)?.contains(&target) {
        return Err(ConstructError::OutOfRange(format!("{target} is not in Υ({n})")));
    }
    let allowed = latin_spectrum(w)?;
    let full = w * w;
    let slots = h * h;
    let (q, r) = (target / full, target % full);
    let mut parts = vec![full; q.min(slots)];
    if q == slots {
        // r = 0 since target <= n².
    } else if q + 1 == slots {
        if allowed.contains(&r) {
            parts.push(r);
        } else if w == 4 {
            return Ok(Decomposed::NeedsSeed);
        } else {
            return Err(ConstructError::Invariant(format!("remainder {r} not in I({w})")));
        }
    } else if allowed.contains(&r) {
        parts.push(r);
    } else if w == 4 {
        let &(_, k, l) = ORDER_FOUR_SPLITS.iter().find(|&&(rr, _, _)| rr == r).ok_or_else(|| {
            ConstructError::Invariant(format!("no split for remainder {r}"))
        })?;
        parts.extend([k, l]);
    } else {
        let base = full - 6;
        if r <= base || r - base > 5 {
            return Err(ConstructError::Invariant(format!("remainder {r} has no split")));
        }
        parts.extend([base, r - base]);
    }
    parts.resize(slots, 0);
    if let Some(bad) = parts.iter().find(|p| !allowed.contains(p)) {
        return Err(ConstructError::Invariant(format!("part {bad} not in I({w})")));
    }
    if parts.iter().sum::<usize>() != target || parts.len() != slots {
        return Err(ConstructError::Invariant(format!("parts {parts:?} do not sum to {target}")));
    }
    Ok(Decomposed::Parts(Decomposition { target, parts }))
}
