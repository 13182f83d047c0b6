//! Pairs of order-`w` latin squares with a prescribed intersection number.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::RwLock;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde_json::{json, Map, Value};

use super::SpectrumError;
use crate::construct::latin_spectrum;
use crate::markov::{random_latin, ChainState, Rng};
use crate::square::{permute_symbols, LatinSquare, Permutation};

pub type LatinPair = (LatinSquare, LatinSquare);

/// Memo of realized pairs keyed by `(order, target)`: concurrent readers, exclusive writer.
#[derive(Debug, Default)]
pub struct LatinPairCache {
    entries: RwLock<BTreeMap<(usize, usize), LatinPair>>,
}

impl LatinPairCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, order: usize, target: usize) -> Option<LatinPair> {
        self.entries.read().expect("cache lock").get(&(order, target)).cloned()
    }

    /// Stores the pair if it really has `target` common cells.
    pub fn insert(&self, target: usize, pair: LatinPair) -> bool {
        let order = pair.0.order();
        if pair.1.order() != order || pair.0.agreement(&pair.1) != target {
            return false;
        }
        self.entries.write().expect("cache lock").insert((order, target), pair);
        true
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `{"<order>:<target>": {"a": rows, "b": rows}, ..}`.
    pub fn to_json(&self) -> Value {
        let entries = self.entries.read().expect("cache lock");
        let map: Map<String, Value> = entries
            .iter()
            .map(|(&(w, s), (a, b))| {
                (format!("{w}:{s}"), json!({ "a": a.to_rows(), "b": b.to_rows() }))
            })
            .collect();
        Value::Object(map)
    }

    /// Loads entries from JSON, skipping any whose squares or count do not check out.
    pub fn extend_from_json(&self, value: &Value) -> Result<usize, SpectrumError> {
        let obj = value.as_object().ok_or_else(|| SpectrumError::Cache("not an object".into()))?;
        let mut loaded = 0;
        for (key, entry) in obj {
            let (w, s) = key
                .split_once(':')
                .and_then(|(w, s)| Some((w.parse::<usize>().ok()?, s.parse::<usize>().ok()?)))
                .ok_or_else(|| SpectrumError::Cache(format!("bad key {key:?}")))?;
            let square = |k: &str| -> Option<LatinSquare> {
                let rows: Vec<Vec<u8>> = serde_json::from_value(entry.get(k)?.clone()).ok()?;
                LatinSquare::from_rows(rows).ok()
            };
            if let (Some(a), Some(b)) = (square("a"), square("b")) {
                if a.order() == w && self.insert(s, (a, b)) {
                    loaded += 1;
                }
            }
        }
        Ok(loaded)
    }

    pub fn load(&self, path: &Path) -> Result<usize, SpectrumError> {
        let text = std::fs::read_to_string(path).map_err(|e| SpectrumError::Cache(e.to_string()))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| SpectrumError::Cache(e.to_string()))?;
        self.extend_from_json(&value)
    }

    pub fn save(&self, path: &Path) -> Result<(), SpectrumError> {
        std::fs::write(path, self.to_json().to_string() + "\n")
            .map_err(|e| SpectrumError::Cache(e.to_string()))
    }
}

/// Two order-`w` latin squares meeting in exactly `target` cells.
///
/// The full and empty intersections are written down directly. Everything else is
/// searched: backtracking over the second square with an agreement budget against a
/// base square (the cyclic square first, then random ones), interleaved with a walk
/// on the Jacobson–Matthews chain that only drifts toward the target.
pub fn realize_latin_pair(w: usize, target: usize, rng: &mut Rng) -> Result<LatinPair, SpectrumError> {
    if !latin_spectrum(w)?.contains(&target) {
        return Err(SpectrumError::not_in_latin_spectrum(w, target));
    }
    let base = LatinSquare::cyclic(w);
    if target == w * w {
        return Ok((base.clone(), base));
    }
    if target == 0 {
        let shift = Permutation::new((0..w).map(|x| (x + 1) % w).collect()).expect("shift");
        let other = permute_symbols(&base, &shift).expect("same order");
        return Ok((base, other));
    }
    for round in 0..12u32 {
        let a = if round == 0 { base.clone() } else { random_latin(w, rng) };
        let budget = 20_000u64 << round.min(8);
        if w <= 8 || round % 2 == 1 {
            if let Some(b) = agreement_search(&a, target, budget, rng) {
                return Ok((a, b));
            }
        }
        if let Some(b) = guided_walk(&a, target, budget / 4, rng) {
            return Ok((a, b));
        }
    }
    Err(SpectrumError::SearchExhausted { order: w, target })
}

/// Fills a square cell by cell so that exactly `target` cells agree with `base`.
pub fn agreement_search(
    base: &LatinSquare,
    target: usize,
    node_budget: u64,
    rng: &mut Rng,
) -> Option<LatinSquare> {
    let n = base.order();
    assert!(n <= 128);
    let mut search = AgreementSearch {
        base,
        n,
        target,
        cells: vec![0; n * n],
        row_used: vec![0; n],
        col_used: vec![0; n],
        agree: 0,
        nodes: 0,
        budget: node_budget,
    };
    match search.dfs(0, rng) {
        Some(true) => Some(LatinSquare::from_cells_unchecked(n, search.cells)),
        _ => None,
    }
}

struct AgreementSearch<'a> {
    base: &'a LatinSquare,
    n: usize,
    target: usize,
    cells: Vec<u8>,
    row_used: Vec<u128>,
    col_used: Vec<u128>,
    agree: usize,
    nodes: u64,
    budget: u64,
}

impl AgreementSearch<'_> {
    /// `None` once the node budget runs out.
    fn dfs(&mut self, idx: usize, rng: &mut Rng) -> Option<bool> {
        let n = self.n;
        let remaining = n * n - idx;
        if self.agree > self.target || self.agree + remaining < self.target {
            return Some(false);
        }
        if remaining == 0 {
            return Some(true);
        }
        let (r, c) = (idx / n, idx % n);
        let used = self.row_used[r] | self.col_used[c];
        let same = self.base.get(r, c) as usize;
        let mut others: Vec<usize> = (0..n).filter(|&s| s != same && used >> s & 1 == 0).collect();
        others.shuffle(rng);
        let need = self.target - self.agree;
        let same_ok = used >> same & 1 == 0 && need > 0;
        let must_agree = need == remaining;
        let mut order = Vec::with_capacity(n);
        if same_ok {
            let agree_first = must_agree || rng.gen_range(0..remaining) < need;
            if agree_first {
                order.push(same);
                if !must_agree {
                    order.extend(&others);
                }
            } else {
                order.extend(&others);
                order.push(same);
            }
        } else if !must_agree {
            order.extend(&others);
        }
        for s in order {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let bit = 1u128 << s;
            self.row_used[r] |= bit;
            self.col_used[c] |= bit;
            self.cells[idx] = s as u8;
            let hit = (s == same) as usize;
            self.agree += hit;
            let res = self.dfs(idx + 1, rng);
            self.agree -= hit;
            self.row_used[r] &= !bit;
            self.col_used[c] &= !bit;
            if res != Some(false) {
                return res;
            }
        }
        Some(false)
    }
}

/// Walks the chain from `base` (or a relabelling of it for small targets), keeping
/// moves that do not increase the distance to `target`, plus occasional others.
pub fn guided_walk(
    base: &LatinSquare,
    target: usize,
    proposals: u64,
    rng: &mut Rng,
) -> Option<LatinSquare> {
    let n = base.order();
    let start = if 2 * target >= n * n {
        base.clone()
    } else {
        let shift = Permutation::new((0..n).map(|x| (x + 1) % n).collect()).ok()?;
        permute_symbols(base, &shift).ok()?
    };
    let mut state = ChainState::from_square(&start);
    let distance = |grid: &[u8]| {
        let agree = grid.iter().zip(base.cells()).filter(|(a, b)| a == b).count();
        agree.abs_diff(target)
    };
    let mut current = distance(state.grid());
    for _ in 0..proposals {
        let saved = state.clone();
        state.advance_to_proper(rng);
        let d = distance(state.grid());
        if d == 0 {
            return state.to_square();
        }
        if d <= current || rng.gen_range(0..20) == 0 {
            current = d;
        } else {
            state = saved;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::rng_from_seed;

    #[test]
    fn trivial_targets() {
        let mut rng = rng_from_seed(0);
        for w in 2..8 {
            let (a, b) = realize_latin_pair(w, w * w, &mut rng).unwrap();
            assert_eq!(a, b);
            let (a, b) = realize_latin_pair(w, 0, &mut rng).unwrap();
            assert_eq!(a.agreement(&b), 0);
        }
    }

    #[test]
    fn order_two_has_only_zero_and_four() {
        let mut rng = rng_from_seed(0);
        for t in 0..=4 {
            assert_eq!(realize_latin_pair(2, t, &mut rng).is_ok(), t == 0 || t == 4, "t={t}");
        }
        assert!(matches!(realize_latin_pair(2, 1, &mut rng), Err(SpectrumError::NotInSpectrum { .. })));
    }

    #[test]
    fn order_four_six() {
        let (a, b) = realize_latin_pair(4, 6, &mut rng_from_seed(1)).unwrap();
        assert_eq!(crate::square::intersection(&a, &b).unwrap().len(), 6);
    }

    #[test]
    fn every_value_for_small_orders() {
        let mut rng = rng_from_seed(2);
        for w in 1..=7 {
            for t in latin_spectrum(w).unwrap() {
                let (a, b) = realize_latin_pair(w, t, &mut rng).unwrap();
                assert_eq!(a.agreement(&b), t, "w={w} t={t}");
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let cache = LatinPairCache::new();
        let mut rng = rng_from_seed(3);
        for t in [3, 9] {
            assert!(cache.insert(t, realize_latin_pair(4, t, &mut rng).unwrap()));
        }
        let (a, _) = realize_latin_pair(4, 8, &mut rng).unwrap();
        assert!(!cache.insert(3, (a.clone(), a)));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        cache.save(&path).unwrap();
        let loaded = LatinPairCache::new();
        assert_eq!(loaded.load(&path).unwrap(), 2);
        assert_eq!(loaded.get(4, 9), cache.get(4, 9));
        assert!(loaded.get(4, 8).is_none());
    }
}
