//! Realizing intersection numbers of Sudoku squares, with checkable certificates.
//!
//! [`Realizer::realize_sudoku_pair`] dispatches on the type:
//!
//! * types `(2,2)`, `(2,3)`, `(3,3)` (and `(3,2)`) come from the seed database;
//! * otherwise the type is oriented so that `w >= 5`, or `w = 4` when both sides are
//!   at most 4, the target is split into `h²` parts by [`decompose_target`], one pair
//!   of order-`w` latin squares is realized per part, and the two block products
//!   over a common outer square are reordered into Sudoku squares. At `w = 4` the
//!   three targets without a split come from the seed database too.

mod brute;
mod latin_pair;
mod seeds;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde_json::{json, Value};
use thiserror::Error;

pub use brute::{
    brute_force_latin_spectrum, brute_force_spectrum, enumerate_normalized, orbit_representatives,
    SpectrumReport, MAX_LATIN_ORDER, MAX_SUDOKU_ORDER,
};
pub use latin_pair::{agreement_search, guided_walk, realize_latin_pair, LatinPair, LatinPairCache};
pub use seeds::{
    split_fixture, verify_fixture, verify_seed_database, RawEntry, SeedCheck, SeedDatabase,
    SeedLabel, SeedReport, SeedSet, FIXTURES,
};

use crate::construct::{
    decompose_target, sudoku_reorder, sudoku_spectrum, triangle_product, ConstructError,
    Decomposed, SquareFamily,
};
use crate::formats::{square_from_json, square_to_json, ParseError};
use crate::markov::Rng;
use crate::square::{BoxType, LatinSquare, SquareError, SudokuSquare};

/// Default largest order handled by [`Realizer`].
pub const DEFAULT_MAX_ORDER: usize = 144;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("{message}")]
    NotInSpectrum { t: usize, message: String },
    #[error("order {order} exceeds the configured bound {max}")]
    TooLarge { order: usize, max: usize },
    #[error("no pair of order-{order} latin squares meeting in {target} cells was found")]
    SearchExhausted { order: usize, target: usize },
    #[error("seed database: {0}")]
    Seed(String),
    #[error("latin pair cache: {0}")]
    Cache(String),
    #[error("certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Square(#[from] SquareError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SpectrumError {
    fn not_in(set_name: &str, n: usize, t: usize, spectrum: &BTreeSet<usize>) -> Self {
        let below = spectrum.range(..t).next_back();
        let above = spectrum.range(t..).next();
        let nearest: Vec<String> = below.into_iter().chain(above).map(usize::to_string).collect();
        let mut message =
            format!("{t} is not in {set_name}; nearest achievable values: {}", nearest.join(", "));
        let sq = n * n;
        let never = [1, 2, 3, 5];
        if never.iter().any(|&x| sq >= x && sq - x == t) {
            let vals: Vec<String> = never.iter().filter(|&&x| sq >= x).map(|x| (sq - x).to_string()).collect();
            message.push_str(&format!(
                "; n²-1, n²-2, n²-3, n²-5 ({}) are never intersection numbers of two squares of order {n}",
                vals.join(", ")
            ));
        }
        SpectrumError::NotInSpectrum { t, message }
    }

    pub(crate) fn not_in_latin_spectrum(w: usize, t: usize) -> Self {
        match crate::construct::latin_spectrum(w) {
            Ok(spec) => Self::not_in(&format!("I({w})"), w, t, &spec),
            Err(e) => e.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Product,
    Seed,
    Search,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Product => "product",
            Method::Seed => "seed",
            Method::Search => "search",
            Method::BruteForce => "brute_force",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Method::Product, Method::Seed, Method::Search, Method::BruteForce]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Two Sudoku squares of one type and their claimed intersection number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationCertificate {
    pub a: SudokuSquare,
    pub b: SudokuSquare,
    pub claimed: usize,
    pub method: Method,
}

impl RealizationCertificate {
    /// Re-checks both squares and the intersection; returns the recomputed number.
    pub fn verify(&self) -> Result<usize, SpectrumError> {
        let bt = self.a.box_type();
        if self.b.box_type() != bt {
            return Err(SpectrumError::Certificate(format!(
                "box types differ: {bt} vs {}",
                self.b.box_type()
            )));
        }
        crate::square::validate_sudoku(&self.a, bt)?;
        crate::square::validate_sudoku(&self.b, bt)?;
        let found = crate::square::intersection(&self.a, &self.b)?.len();
        if found != self.claimed {
            return Err(SpectrumError::Certificate(format!(
                "claimed {} but the squares meet in {found} cells",
                self.claimed
            )));
        }
        Ok(found)
    }

    pub fn to_json(&self) -> String {
        json!({
            "a": square_to_json(&self.a),
            "b": square_to_json(&self.b),
            "claimed": self.claimed,
            "method": self.method.as_str(),
        })
        .to_string()
    }

    /// Parses and verifies a certificate.
    pub fn from_json(text: &str) -> Result<Self, SpectrumError> {
        let bad = |m: &str| SpectrumError::Certificate(m.to_string());
        let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let cert = Self {
            a: square_from_json(v.get("a").ok_or_else(|| bad("missing a"))?)?,
            b: square_from_json(v.get("b").ok_or_else(|| bad("missing b"))?)?,
            claimed: v.get("claimed").and_then(Value::as_u64).ok_or_else(|| bad("missing claimed"))?
                as usize,
            method: v
                .get("method")
                .and_then(Value::as_str)
                .and_then(Method::parse)
                .ok_or_else(|| bad("missing or unknown method"))?,
        };
        cert.verify()?;
        Ok(cert)
    }
}

/// Realizes intersection numbers, memoizing latin pairs across calls.
#[derive(Debug)]
pub struct Realizer {
    cache: LatinPairCache,
    max_order: usize,
}

impl Default for Realizer {
    fn default() -> Self {
        Self::new()
    }
}

impl Realizer {
    pub fn new() -> Self {
        Self { cache: LatinPairCache::new(), max_order: DEFAULT_MAX_ORDER }
    }

    pub fn with_cache(cache: LatinPairCache) -> Self {
        Self { cache, max_order: DEFAULT_MAX_ORDER }
    }

    pub fn max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn cache(&self) -> &LatinPairCache {
        &self.cache
    }

    pub fn realize_latin_pair(&self, w: usize, s: usize, rng: &mut Rng) -> Result<LatinPair, SpectrumError> {
        if let Some(pair) = self.cache.get(w, s) {
            return Ok(pair);
        }
        let pair = realize_latin_pair(w, s, rng)?;
        self.cache.insert(s, pair.clone());
        Ok(pair)
    }

    pub fn realize_sudoku_pair(
        &self,
        h: usize,
        w: usize,
        t: usize,
        rng: &mut Rng,
    ) -> Result<RealizationCertificate, SpectrumError> {
        let spectrum = sudoku_spectrum(h, w)?;
        let n = h * w;
        if !spectrum.contains(&t) {
            return Err(SpectrumError::not_in(&format!("I({h},{w})"), n, t, &spectrum));
        }
        if n > self.max_order {
            return Err(SpectrumError::TooLarge { order: n, max: self.max_order });
        }
        let small = matches!((h.min(w), h.max(w)), (2, 2) | (2, 3) | (3, 3));
        let (hh, ww) = if small {
            (h.min(w), h.max(w))
        } else if h.max(w) >= 5 {
            if w >= 5 { (h, w) } else { (w, h) }
        } else {
            (h.min(w), 4)
        };
        let flip = (hh, ww) != (h, w);
        let oriented = BoxType::new(hh, ww)?;
        let (a, b, method) = if small {
            let (a, b) = self.seed_pair(oriented, t)?;
            (a, b, Method::Seed)
        } else {
            match decompose_target(t, hh, ww)? {
                Decomposed::NeedsSeed => {
                    let (a, b) = self.seed_pair(oriented, t)?;
                    (a, b, Method::Seed)
                }
                Decomposed::Parts(d) => {
                    let mut left = Vec::with_capacity(d.parts.len());
                    let mut right = Vec::with_capacity(d.parts.len());
                    for &part in &d.parts {
                        let (x, y) = self.realize_latin_pair(ww, part, rng)?;
                        left.push(x);
                        right.push(y);
                    }
                    let outer = LatinSquare::cyclic(hh);
                    let build = |members: Vec<LatinSquare>| -> Result<SudokuSquare, SpectrumError> {
                        let fam = SquareFamily::new(hh, ww, members)?;
                        Ok(sudoku_reorder(&triangle_product(&outer, &fam)?, hh, ww)?)
                    };
                    (build(left)?, build(right)?, Method::Product)
                }
            }
        };
        let (a, b) = if flip { (a.transpose(), b.transpose()) } else { (a, b) };
        let cert = RealizationCertificate { a, b, claimed: t, method };
        cert.verify()?;
        Ok(cert)
    }

    fn seed_pair(&self, bt: BoxType, t: usize) -> Result<(SudokuSquare, SudokuSquare), SpectrumError> {
        SeedDatabase::embedded()
            .pair(bt, t)
            .ok_or_else(|| SpectrumError::Seed(format!("no stored pair for type {bt} and {t}")))
    }
}

/// [`Realizer::realize_sudoku_pair`] on a process-wide realizer.
pub fn realize_sudoku_pair(
    h: usize,
    w: usize,
    t: usize,
    rng: &mut Rng,
) -> Result<RealizationCertificate, SpectrumError> {
    static REALIZER: OnceLock<Realizer> = OnceLock::new();
    REALIZER.get_or_init(Realizer::new).realize_sudoku_pair(h, w, t, rng)
}
