//! Published Sudoku squares with their intersection labels, shipped as text fixtures.
//!
//! A fixture holds labelled squares of one type. A label is either `L` (the reference
//! square) or an intersection number; without an `L` entry the last square is the
//! reference. An entry is `label: <single-line square>` or `label:` followed by the
//! rows of a grid.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::SpectrumError;
use crate::formats::{parse_grid, parse_single_line};
use crate::square::{BoxType, SudokuSquare};

pub const FIXTURES: [(usize, usize, &str); 6] = [
    (2, 2, include_str!("../../data/sudoku_2x2.txt")),
    (2, 3, include_str!("../../data/sudoku_2x3.txt")),
    (2, 4, include_str!("../../data/sudoku_2x4.txt")),
    (3, 3, include_str!("../../data/sudoku_3x3.txt")),
    (3, 4, include_str!("../../data/sudoku_3x4.txt")),
    (4, 4, include_str!("../../data/sudoku_4x4.txt")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeedLabel {
    Reference,
    Intersection(usize),
}

impl std::fmt::Display for SeedLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedLabel::Reference => f.write_str("L"),
            SeedLabel::Intersection(t) => write!(f, "{t}"),
        }
    }
}

/// One entry as written in a fixture, not yet parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEntry {
    pub label: SeedLabel,
    pub text: String,
    pub single_line: bool,
}

pub fn split_fixture(text: &str) -> Result<Vec<RawEntry>, String> {
    let mut out: Vec<RawEntry> = Vec::new();
    let mut open_grid = false;
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            open_grid = false;
            continue;
        }
        if let Some((label, rest)) = line.split_once(':') {
            let label = match label.trim() {
                "L" => SeedLabel::Reference,
                l => SeedLabel::Intersection(l.parse().map_err(|_| format!("bad label {l:?}"))?),
            };
            let rest = rest.trim();
            open_grid = rest.is_empty();
            out.push(RawEntry { label, text: rest.to_string(), single_line: !open_grid });
        } else if open_grid {
            let entry = out.last_mut().expect("grid rows follow a label");
            entry.text.push_str(line);
            entry.text.push('\n');
        } else {
            return Err(format!("stray line {line:?}"));
        }
    }
    Ok(out)
}

fn parse_entry(entry: &RawEntry, bt: BoxType) -> Result<SudokuSquare, SpectrumError> {
    let parsed = if entry.single_line {
        parse_single_line(&entry.text, bt)
    } else {
        parse_grid(&entry.text, bt)
    };
    parsed.map_err(|e| SpectrumError::Seed(format!("{bt} entry {}: {e}", entry.label)))
}

/// Squares of one type: a reference and the squares labelled by their
/// intersection with it.
#[derive(Debug, Clone)]
pub struct SeedSet {
    pub box_type: BoxType,
    pub reference: SudokuSquare,
    pub labelled: BTreeMap<usize, SudokuSquare>,
}

impl SeedSet {
    pub fn parse(bt: BoxType, text: &str) -> Result<Self, SpectrumError> {
        let raw = split_fixture(text).map_err(SpectrumError::Seed)?;
        let mut reference = None;
        let mut labelled = BTreeMap::new();
        let mut last = None;
        for entry in &raw {
            let sq = parse_entry(entry, bt)?;
            match entry.label {
                SeedLabel::Reference => reference = Some(sq.clone()),
                SeedLabel::Intersection(t) => {
                    labelled.insert(t, sq.clone());
                }
            }
            last = Some(sq);
        }
        let reference = reference
            .or(last)
            .ok_or_else(|| SpectrumError::Seed(format!("{bt} fixture is empty")))?;
        Ok(Self { box_type: bt, reference, labelled })
    }

    /// `(reference, square labelled t)`; `t = n²` pairs the reference with itself.
    pub fn pair(&self, t: usize) -> Option<(SudokuSquare, SudokuSquare)> {
        let n = self.box_type.order();
        let other = match self.labelled.get(&t) {
            Some(sq) => sq.clone(),
            None if t == n * n => self.reference.clone(),
            None => return None,
        };
        Some((self.reference.clone(), other))
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.labelled.keys().copied()
    }
}

#[derive(Debug, Clone)]
pub struct SeedDatabase {
    sets: BTreeMap<BoxType, SeedSet>,
}

impl SeedDatabase {
    pub fn load_embedded() -> Result<Self, SpectrumError> {
        let mut sets = BTreeMap::new();
        for (h, w, text) in FIXTURES {
            let bt = BoxType::new(h, w)?;
            sets.insert(bt, SeedSet::parse(bt, text)?);
        }
        Ok(Self { sets })
    }

    /// The database compiled into the library.
    pub fn embedded() -> &'static SeedDatabase {
        static DB: OnceLock<SeedDatabase> = OnceLock::new();
        DB.get_or_init(|| SeedDatabase::load_embedded().expect("embedded fixtures are valid"))
    }

    pub fn get(&self, bt: BoxType) -> Option<&SeedSet> {
        self.sets.get(&bt)
    }

    pub fn pair(&self, bt: BoxType, t: usize) -> Option<(SudokuSquare, SudokuSquare)> {
        self.sets.get(&bt)?.pair(t)
    }

    pub fn sets(&self) -> impl Iterator<Item = &SeedSet> {
        self.sets.values()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCheck {
    pub box_type: BoxType,
    pub label: SeedLabel,
    /// Intersection with the reference, when the entry parsed.
    pub found: Option<usize>,
    pub error: Option<String>,
}

impl SeedCheck {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && match self.label {
                SeedLabel::Reference => true,
                SeedLabel::Intersection(t) => self.found == Some(t),
            }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SeedReport {
    pub checks: Vec<SeedCheck>,
}

impl SeedReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(SeedCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SeedCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Re-parses and re-validates every embedded square and recomputes every label.
pub fn verify_seed_database() -> SeedReport {
    let mut report = SeedReport::default();
    for (h, w, text) in FIXTURES {
        let bt = BoxType::new(h, w).expect("fixture box type");
        verify_fixture(bt, text, &mut report);
    }
    report
}

pub fn verify_fixture(bt: BoxType, text: &str, report: &mut SeedReport) {
    let raw = match split_fixture(text) {
        Ok(raw) => raw,
        Err(e) => {
            report.checks.push(SeedCheck {
                box_type: bt,
                label: SeedLabel::Reference,
                found: None,
                error: Some(e),
            });
            return;
        }
    };
    let parsed: Vec<_> = raw.iter().map(|e| parse_entry(e, bt)).collect();
    let reference = raw
        .iter()
        .position(|e| e.label == SeedLabel::Reference)
        .or(raw.len().checked_sub(1))
        .and_then(|i| parsed[i].as_ref().ok());
    for (entry, sq) in raw.iter().zip(&parsed) {
        let (found, error) = match (sq, reference) {
            (Err(e), _) => (None, Some(e.to_string())),
            (Ok(_), None) => (None, Some("reference square is invalid".to_string())),
            (Ok(sq), Some(reference)) => (Some(reference.agreement(sq)), None),
        };
        report.checks.push(SeedCheck { box_type: bt, label: entry.label, found, error });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_database_verifies() {
        let report = verify_seed_database();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(report.checks.len(), 10 + 33 + 4 + 78 + 4 + 4);
    }

    #[test]
    fn lookups() {
        let db = SeedDatabase::embedded();
        let bt = BoxType::new(2, 3).unwrap();
        let (a, b) = db.pair(bt, 17).unwrap();
        assert_eq!(a.agreement(&b), 17);
        assert_eq!(db.pair(bt, 36).map(|(a, b)| a.agreement(&b)), Some(36));
        assert!(db.pair(bt, 31).is_none());
        let bt = BoxType::new(4, 4).unwrap();
        let (a, b) = db.pair(bt, 247).unwrap();
        assert_eq!(a.cells().iter().zip(b.cells()).filter(|(x, y)| x != y).count(), 9);
    }

    #[test]
    fn order_eight_squares() {
        let set = SeedDatabase::embedded().get(BoxType::new(2, 4).unwrap()).unwrap();
        assert_eq!(set.labels().collect::<Vec<_>>(), vec![53, 55, 58]);
        let l53 = &set.labelled[&53];
        let diff = set.reference.cells().iter().zip(l53.cells()).filter(|(a, b)| a != b).count();
        assert_eq!(diff, 11);
        let two = SeedDatabase::embedded().get(BoxType::new(2, 2).unwrap()).unwrap();
        assert_eq!(two.reference.agreement(&two.labelled[&0]), 0);
    }

    #[test]
    fn corrupted_fixture_is_reported() {
        let mut report = SeedReport::default();
        let bt = BoxType::new(2, 2).unwrap();
        verify_fixture(bt, "L:\n0 1 2 3\n2 3 0 1\n3 0 1 2\n1 2 3 0\n\n5:\n0 1 2 3\n2 3 0 1\n3 0 1 2\n1 2 3 0\n", &mut report);
        assert_eq!(report.checks.len(), 2);
        assert!(!report.passed());
        assert_eq!(report.failures().next().unwrap().found, Some(16));
        let mut report = SeedReport::default();
        verify_fixture(bt, "3: 0123|0123|3012|1230\n", &mut report);
        assert!(report.checks[0].error.is_some());
    }
}
