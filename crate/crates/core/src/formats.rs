//! Text notations for Sudoku squares.
//!
//! * single-line: rows separated by `|`, one character per cell (`0-9`, then `a-z`
//!   for 10..35), e.g. `012345|543102|105234|324510|451023|230451`;
//! * grid: one row per line, whitespace-separated decimal symbols;
//! * JSON: `{"h":2,"rows":[[..],..],"w":3}` with sorted keys and no extra whitespace.

use serde_json::{json, Value};
use thiserror::Error;

use crate::square::{BoxType, LatinSquare, SquareError, SudokuSquare};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("invalid character {ch:?} in row {row}")]
    InvalidChar { row: usize, ch: char },
    #[error("invalid token {token:?} in row {row}")]
    InvalidToken { row: usize, token: String },
    #[error("symbol {symbol} out of range for order {n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("single-line notation supports order <= 36, got {0}")]
    OrderTooLarge(usize),
    #[error(transparent)]
    Invalid(#[from] SquareError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    SingleLine,
    Grid,
    Json,
}

fn digit_value(ch: char) -> Option<usize> {
    match ch {
        '0'..='9' => Some(ch as usize - '0' as usize),
        'a'..='z' => Some(ch as usize - 'a' as usize + 10),
        _ => None,
    }
}

fn digit_char(v: u8) -> char {
    if v < 10 {
        (b'0' + v) as char
    } else {
        (b'a' + v - 10) as char
    }
}

fn check_range(rows: &[Vec<u8>], n: usize) -> Result<(), ParseError> {
    for row in rows {
        if let Some(&s) = row.iter().find(|&&s| s as usize >= n) {
            return Err(ParseError::SymbolOutOfRange { symbol: s as usize, n });
        }
    }
    Ok(())
}

pub fn parse_single_line(text: &str, box_type: BoxType) -> Result<SudokuSquare, ParseError> {
    let n = box_type.order();
    let blocks: Vec<&str> = text.trim().split('|').collect();
    if blocks.len() != n {
        return Err(ParseError::RowCount { expected: n, found: blocks.len() });
    }
    let mut rows = Vec::with_capacity(n);
    for (r, block) in blocks.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for ch in block.chars() {
            let v = digit_value(ch).ok_or(ParseError::InvalidChar { row: r, ch })?;
            row.push(v as u8);
        }
        if row.len() != n {
            return Err(ParseError::RowLength { row: r, expected: n, found: row.len() });
        }
        rows.push(row);
    }
    check_range(&rows, n)?;
    Ok(SudokuSquare::from_rows(rows, box_type)?)
}

pub fn parse_grid(text: &str, box_type: BoxType) -> Result<SudokuSquare, ParseError> {
    let n = box_type.order();
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() != n {
        return Err(ParseError::RowCount { expected: n, found: lines.len() });
    }
    let mut rows = Vec::with_capacity(n);
    for (r, line) in lines.iter().enumerate() {
        let row = line
            .split_whitespace()
            .map(|tok| match tok.parse::<usize>() {
                Ok(v) if v < n => Ok(v as u8),
                Ok(v) => Err(ParseError::SymbolOutOfRange { symbol: v, n }),
                Err(_) => Err(ParseError::InvalidToken { row: r, token: tok.to_string() }),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if row.len() != n {
            return Err(ParseError::RowLength { row: r, expected: n, found: row.len() });
        }
        rows.push(row);
    }
    Ok(SudokuSquare::from_rows(rows, box_type)?)
}

pub fn parse_json(text: &str) -> Result<SudokuSquare, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    square_from_json(&value)
}

pub(crate) fn square_from_json(value: &Value) -> Result<SudokuSquare, ParseError> {
    let field = |k: &str| {
        value.get(k).and_then(Value::as_u64).ok_or_else(|| ParseError::Json(format!("missing {k}")))
    };
    let (h, w) = (field("h")? as usize, field("w")? as usize);
    let box_type = BoxType::relaxed(h, w)?;
    let n = box_type.order();
    let rows = value
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Json("missing rows".into()))?;
    if rows.len() != n {
        return Err(ParseError::RowCount { expected: n, found: rows.len() });
    }
    let mut grid = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| ParseError::Json(format!("row {r} is not an array")))?;
        if row.len() != n {
            return Err(ParseError::RowLength { row: r, expected: n, found: row.len() });
        }
        let mut out = Vec::with_capacity(n);
        for v in row {
            let v = v.as_u64().ok_or_else(|| ParseError::Json(format!("non-integer in row {r}")))?;
            if v as usize >= n {
                return Err(ParseError::SymbolOutOfRange { symbol: v as usize, n });
            }
            out.push(v as u8);
        }
        grid.push(out);
    }
    Ok(SudokuSquare::from_rows(grid, box_type)?)
}

pub(crate) fn square_to_json(square: &SudokuSquare) -> Value {
    let bt = square.box_type();
    json!({ "h": bt.h, "w": bt.w, "rows": square.to_rows() })
}

/// Parses any of the three notations, detected from the text.
///
/// JSON carries its own box type; the other two use `box_type`.
pub fn parse_auto(text: &str, box_type: Option<BoxType>) -> Result<SudokuSquare, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return parse_json(text);
    }
    let box_type =
        box_type.ok_or_else(|| ParseError::Json("box type required for non-JSON input".into()))?;
    if trimmed.contains('|') {
        parse_single_line(text, box_type)
    } else {
        parse_grid(text, box_type)
    }
}

pub fn serialize(square: &SudokuSquare, style: Style) -> Result<String, ParseError> {
    match style {
        Style::SingleLine => serialize_single_line(square),
        Style::Grid => Ok(square.to_string()),
        Style::Json => Ok(square_to_json(square).to_string()),
    }
}

fn serialize_single_line(square: &LatinSquare) -> Result<String, ParseError> {
    let n = square.order();
    if n > 36 {
        return Err(ParseError::OrderTooLarge(n));
    }
    let rows: Vec<String> = square.rows().map(|r| r.iter().map(|&v| digit_char(v)).collect()).collect();
    Ok(rows.join("|"))
}
