//! Pentadoku: 5×5 latin squares whose five cages are distinct pentominoes.
//!
//! Tilings are counted up to the eight symmetries of the board, and two cages count
//! as the same pentomino when one is a rotation or reflection of the other. With
//! these conventions there are 107 tilings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cages::CageModel;
use crate::construct::upsilon;
use crate::square::{mask_values, relabelled_agreements, LatinSquare};

pub const SIDE: usize = 5;
const CELLS: usize = SIDE * SIDE;

/// Values some partial tilings are allowed to miss.
pub const PARTIAL_MISSING: [usize; 5] = [1, 14, 16, 17, 18];

/// Written into census output.
pub const CONVENTIONS: &str = "tilings up to the dihedral group of order 8 (rotations and reflections of the board); cages are pairwise distinct free pentominoes";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pentomino {
    F,
    I,
    L,
    N,
    P,
    T,
    U,
    V,
    W,
    X,
    Y,
    Z,
}

impl Pentomino {
    pub const ALL: [Pentomino; 12] = [
        Pentomino::F,
        Pentomino::I,
        Pentomino::L,
        Pentomino::N,
        Pentomino::P,
        Pentomino::T,
        Pentomino::U,
        Pentomino::V,
        Pentomino::W,
        Pentomino::X,
        Pentomino::Y,
        Pentomino::Z,
    ];

    fn picture(self) -> &'static str {
        match self {
            Pentomino::F => ".##|##.|.#.",
            Pentomino::I => "#####",
            Pentomino::L => "####|#...",
            Pentomino::N => "##..|.###",
            Pentomino::P => "##|##|#.",
            Pentomino::T => "###|.#.|.#.",
            Pentomino::U => "#.#|###",
            Pentomino::V => "#..|#..|###",
            Pentomino::W => "#..|##.|.##",
            Pentomino::X => ".#.|###|.#.",
            Pentomino::Y => "####|.#..",
            Pentomino::Z => "##.|.#.|.##",
        }
    }

    fn cells(self) -> Shape {
        let mut out = Vec::new();
        for (r, line) in self.picture().split('|').enumerate() {
            for (c, ch) in line.chars().enumerate() {
                if ch == '#' {
                    out.push((r as i32, c as i32));
                }
            }
        }
        out
    }

    /// Distinct placements of the shape up to translation, each normalized to
    /// start at the origin.
    fn orientations(self) -> Vec<Shape> {
        let base = self.cells();
        let set: BTreeSet<Shape> = (0..8).map(|g| normalize(base.iter().map(|&p| sym(g, p)).collect())).collect();
        set.into_iter().collect()
    }

    /// The free pentomino of a set of five cells, if it is one.
    pub fn classify(cells: &[(usize, usize)]) -> Option<Pentomino> {
        let shape: Shape = cells.iter().map(|&(r, c)| (r as i32, c as i32)).collect();
        let key = free_form(&shape);
        Pentomino::ALL.into_iter().find(|p| free_form(&p.cells()) == key)
    }
}

impl fmt::Display for Pentomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

type Shape = Vec<(i32, i32)>;

/// One of the eight symmetries of the plane fixing the origin.
fn sym(g: usize, (r, c): (i32, i32)) -> (i32, i32) {
    let (r, c) = if g & 4 != 0 { (c, r) } else { (r, c) };
    match g & 3 {
        0 => (r, c),
        1 => (c, -r),
        2 => (-r, -c),
        _ => (-c, r),
    }
}

fn normalize(shape: Shape) -> Shape {
    let rmin = shape.iter().map(|p| p.0).min().unwrap_or(0);
    let cmin = shape.iter().map(|p| p.1).min().unwrap_or(0);
    let mut out: Shape = shape.into_iter().map(|(r, c)| (r - rmin, c - cmin)).collect();
    out.sort_unstable();
    out
}

fn free_form(shape: &Shape) -> Shape {
    (0..8)
        .map(|g| normalize(shape.iter().map(|&p| sym(g, p)).collect()))
        .min()
        .unwrap_or_default()
}

/// Maps board cell `i` under board symmetry `g`.
fn board_sym(g: usize, i: usize) -> usize {
    let last = SIDE as i32 - 1;
    let (r, c) = ((i / SIDE) as i32, (i % SIDE) as i32);
    let (r, c) = if g & 4 != 0 { (c, r) } else { (r, c) };
    let (r, c) = match g & 3 {
        0 => (r, c),
        1 => (c, last - r),
        2 => (last - r, last - c),
        _ => (last - c, r),
    };
    r as usize * SIDE + c as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingError {
    CageSize { cage: usize, size: usize },
    CageId { id: u8 },
    NotPentomino { cage: usize },
    RepeatedShape { shape: Pentomino },
    Format(String),
}

impl fmt::Display for TilingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingError::CageSize { cage, size } => write!(f, "cage {cage} has {size} cells, expected 5"),
            TilingError::CageId { id } => write!(f, "cage id {id} out of range 0..5"),
            TilingError::NotPentomino { cage } => write!(f, "cage {cage} is not an edge-connected pentomino"),
            TilingError::RepeatedShape { shape } => write!(f, "pentomino {shape} used twice"),
            TilingError::Format(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for TilingError {}

/// A partition of the 5×5 board into five cages of distinct pentomino shapes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    cage_of: [u8; CELLS],
    shapes: [Pentomino; SIDE],
}

impl Tiling {
    pub fn new(cage_of: [u8; CELLS]) -> Result<Self, TilingError> {
        let mut members: [Vec<(usize, usize)>; SIDE] = Default::default();
        for (i, &id) in cage_of.iter().enumerate() {
            if id as usize >= SIDE {
                return Err(TilingError::CageId { id });
            }
            members[id as usize].push((i / SIDE, i % SIDE));
        }
        let mut shapes = [Pentomino::I; SIDE];
        for (cage, cells) in members.iter().enumerate() {
            if cells.len() != SIDE {
                return Err(TilingError::CageSize { cage, size: cells.len() });
            }
            shapes[cage] = Pentomino::classify(cells).ok_or(TilingError::NotPentomino { cage })?;
        }
        let mut seen = BTreeSet::new();
        for &shape in &shapes {
            if !seen.insert(shape) {
                return Err(TilingError::RepeatedShape { shape });
            }
        }
        Ok(Self { cage_of, shapes })
    }

    /// Parses 25 cage digits, ignoring whitespace and `|`.
    pub fn parse(text: &str) -> Result<Self, TilingError> {
        let digits: Vec<u8> = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '|')
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| TilingError::Format(format!("bad character {c:?}"))))
            .collect::<Result<_, _>>()?;
        let cage_of: [u8; CELLS] = digits
            .try_into()
            .map_err(|d: Vec<u8>| TilingError::Format(format!("expected 25 digits, found {}", d.len())))?;
        Self::new(cage_of)
    }

    /// The tiling of the completed example puzzle.
    pub fn example_puzzle() -> Self {
        Self::parse("00111|20001|22331|22433|44443").expect("valid tiling")
    }

    pub fn cage_of(&self) -> &[u8; CELLS] {
        &self.cage_of
    }

    pub fn cage(&self, r: usize, c: usize) -> usize {
        self.cage_of[r * SIDE + c] as usize
    }

    pub fn shapes(&self) -> &[Pentomino; SIDE] {
        &self.shapes
    }

    /// Cages renumbered by first appearance in row-major order.
    fn relabelled(cage_of: &[u8; CELLS]) -> [u8; CELLS] {
        let mut map = [u8::MAX; SIDE];
        let mut next = 0;
        let mut out = [0u8; CELLS];
        for (i, &id) in cage_of.iter().enumerate() {
            if map[id as usize] == u8::MAX {
                map[id as usize] = next;
                next += 1;
            }
            out[i] = map[id as usize];
        }
        out
    }

    /// The image under board symmetry `g` (0..8), cages renumbered.
    pub fn transformed(&self, g: usize) -> Self {
        let mut moved = [0u8; CELLS];
        for i in 0..CELLS {
            moved[board_sym(g, i)] = self.cage_of[i];
        }
        Self::new(Self::relabelled(&moved)).expect("symmetry preserves tilings")
    }

    /// Least row-major code over the eight symmetries.
    pub fn canonical(&self) -> Self {
        (0..8)
            .map(|g| self.transformed(g))
            .min_by(|a, b| a.cage_of.cmp(&b.cage_of))
            .expect("eight images")
    }

    pub fn code(&self) -> String {
        self.cage_of.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn is_equivalent(&self, other: &Tiling) -> bool {
        self.canonical().cage_of == other.canonical().cage_of
    }

    pub fn contains_solution(&self, square: &LatinSquare) -> bool {
        if square.order() != SIDE {
            return false;
        }
        let mut seen = [0u8; SIDE];
        for (i, &s) in square.cells().iter().enumerate() {
            seen[self.cage_of[i] as usize] |= 1 << s;
        }
        seen.iter().all(|&m| m == 0b11111)
    }

    fn model(&self) -> CageModel {
        CageModel::new(SIDE, self.cage_of.iter().map(|&c| c as usize).collect())
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..SIDE {
            let row: String = (0..SIDE).map(|c| char::from(b'A' + self.cage_of[r * SIDE + c])).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Canonical representatives of all tilings, sorted by code.
pub fn enumerate_tilings() -> Vec<Tiling> {
    let placements: Vec<(Pentomino, Shape)> =
        Pentomino::ALL.into_iter().flat_map(|p| p.orientations().into_iter().map(move |o| (p, o))).collect();
    let mut board = [u8::MAX; CELLS];
    let mut found = BTreeSet::new();
    cover(&placements, &mut board, 0, 0, &mut found);
    found
        .into_iter()
        .map(|cage_of| Tiling::new(cage_of).expect("exact cover yields tilings"))
        .collect()
}

fn cover(
    placements: &[(Pentomino, Shape)],
    board: &mut [u8; CELLS],
    used: u16,
    placed: u8,
    found: &mut BTreeSet<[u8; CELLS]>,
) {
    let Some(first) = board.iter().position(|&c| c == u8::MAX) else {
        let t = Tiling::new(*board).expect("complete cover");
        found.insert(t.canonical().cage_of);
        return;
    };
    let (r0, c0) = ((first / SIDE) as i32, (first % SIDE) as i32);
    for (p, shape) in placements {
        if used >> *p as u16 & 1 != 0 {
            continue;
        }
        // Orientations start at their least row-major cell; anchor that on `first`.
        let (ar, ac) = shape[0];
        let cells: Option<Vec<usize>> = shape
            .iter()
            .map(|&(r, c)| {
                let (r, c) = (r - ar + r0, c - ac + c0);
                let inside = (0..SIDE as i32).contains(&r) && (0..SIDE as i32).contains(&c);
                let i = (r * SIDE as i32 + c) as usize;
                (inside && board[i] == u8::MAX).then_some(i)
            })
            .collect();
        if let Some(cells) = cells {
            for &i in &cells {
                board[i] = placed;
            }
            cover(placements, board, used | 1 << *p as u16, placed + 1, found);
            for &i in &cells {
                board[i] = u8::MAX;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionSet {
    All,
    /// One solution per relabelling class: the one whose first row reads `0..5`.
    UpToRelabelling,
}

pub fn solve_cage_latin(t: &Tiling, which: SolutionSet) -> Vec<LatinSquare> {
    let mut out = Vec::new();
    t.model().for_each_solution(which == SolutionSet::UpToRelabelling, |cells| {
        out.push(LatinSquare::from_cells(SIDE, cells.to_vec()).expect("solver output is latin"));
        ControlFlow::Continue(())
    });
    out
}

/// All intersection numbers over ordered pairs of solutions.
///
/// Each solution is a relabelling of one with first row `0..5`, and relabelling
/// both sides of a pair changes nothing, so it suffices to pair canonical solutions
/// against every relabelling of the other side.
pub fn tiling_spectrum(t: &Tiling) -> Option<BTreeSet<usize>> {
    spectrum_of(&solve_cage_latin(t, SolutionSet::UpToRelabelling))
}

fn spectrum_of(canonical: &[LatinSquare]) -> Option<BTreeSet<usize>> {
    if canonical.is_empty() {
        return None;
    }
    let mut mask = 0u128;
    for a in canonical {
        for b in canonical {
            mask |= relabelled_agreements(a, b);
        }
    }
    Some(mask_values(mask))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Category {
    Unsolvable,
    Full,
    Partial { missing: BTreeSet<usize> },
    Rigid,
}

impl Category {
    pub fn name(&self) -> &'static str {
        match self {
            Category::Unsolvable => "unsolvable",
            Category::Full => "full",
            Category::Partial { .. } => "partial",
            Category::Rigid => "rigid",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TilingClass {
    pub tiling: Tiling,
    /// Solutions up to symbol relabelling.
    pub solutions_count: usize,
    pub spectrum: BTreeSet<usize>,
    pub category: Category,
}

impl TilingClass {
    pub fn of(tiling: Tiling) -> Self {
        let canonical = solve_cage_latin(&tiling, SolutionSet::UpToRelabelling);
        let spectrum = spectrum_of(&canonical).unwrap_or_default();
        let full = upsilon(SIDE).expect("order five");
        let category = match canonical.len() {
            0 => Category::Unsolvable,
            1 => Category::Rigid,
            _ if spectrum == full => Category::Full,
            _ => Category::Partial { missing: full.difference(&spectrum).copied().collect() },
        };
        Self { tiling, solutions_count: canonical.len(), spectrum, category }
    }

    pub fn raw_solutions_count(&self) -> usize {
        self.solutions_count * 120
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub unsolvable: usize,
    pub full: usize,
    pub partial: usize,
    pub rigid: usize,
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.unsolvable, self.full, self.partial, self.rigid)
    }
}

#[derive(Debug, Clone)]
pub struct Census {
    pub classes: Vec<TilingClass>,
}

impl Census {
    pub fn summary(&self) -> CensusSummary {
        let mut s = CensusSummary::default();
        for c in &self.classes {
            match c.category {
                Category::Unsolvable => s.unsolvable += 1,
                Category::Full => s.full += 1,
                Category::Partial { .. } => s.partial += 1,
                Category::Rigid => s.rigid += 1,
            }
        }
        s
    }

    /// Missing values of partial tilings that fall outside [`PARTIAL_MISSING`].
    pub fn unexpected_missing(&self) -> BTreeMap<String, BTreeSet<usize>> {
        let allowed: BTreeSet<usize> = PARTIAL_MISSING.into();
        self.classes
            .iter()
            .filter_map(|c| match &c.category {
                Category::Partial { missing } if !missing.is_subset(&allowed) => {
                    Some((c.tiling.code(), missing.difference(&allowed).copied().collect()))
                }
                _ => None,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# {CONVENTIONS}\ntiling,shapes,solutions,spectrum,category,missing\n");
        for c in &self.classes {
            let shapes: String = c.tiling.shapes().iter().map(|p| p.to_string()).collect();
            let join = |s: &BTreeSet<usize>| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let missing = match &c.category {
                Category::Partial { missing } => join(missing),
                _ => String::new(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.tiling.code(),
                shapes,
                c.solutions_count,
                join(&c.spectrum),
                c.category.name(),
                missing
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let s = self.summary();
        let rows: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                let missing: Vec<usize> = match &c.category {
                    Category::Partial { missing } => missing.iter().copied().collect(),
                    _ => Vec::new(),
                };
                json!({
                    "tiling": c.tiling.code(),
                    "shapes": c.tiling.shapes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "solutions": c.solutions_count,
                    "spectrum": c.spectrum.iter().collect::<Vec<_>>(),
                    "category": c.category.name(),
                    "missing": missing,
                })
            })
            .collect();
        json!({
            "conventions": CONVENTIONS,
            "summary": {"unsolvable": s.unsolvable, "full": s.full, "partial": s.partial, "rigid": s.rigid},
            "tilings": rows,
        })
    }
}

/// Classifies every tiling, in parallel over tilings.
pub fn classify_all() -> Census {
    let classes = enumerate_tilings().into_par_iter().map(TilingClass::of).collect();
    Census { classes }
}
