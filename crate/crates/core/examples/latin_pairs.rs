//! Pairs of latin squares meeting in a given number of cells, with an on-disk memo.
//!
//! `cargo run --example latin_pairs -- 7`

use sudoku_spectrum::latin_spectrum;
use sudoku_spectrum::markov::rng_from_seed;
use sudoku_spectrum::spectrum::LatinPairCache;

fn main() {
    let w: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let cache = LatinPairCache::new();
    let mut rng = rng_from_seed(1);
    for t in latin_spectrum(w).unwrap() {
        let pair = sudoku_spectrum::spectrum::realize_latin_pair(w, t, &mut rng).unwrap();
        assert!(cache.insert(t, pair));
    }
    println!("order {w}: {} pairs", cache.len());
    if let Some((a, b)) = cache.get(w, w * w - 4) {
        println!("meeting in {} cells:\n{a}\n{b}", a.agreement(&b));
    }
    let path = std::env::temp_dir().join(format!("latin_pairs_{w}.json"));
    cache.save(&path).unwrap();
    let reloaded = LatinPairCache::new();
    println!("saved to {} and reloaded {} entries", path.display(), reloaded.load(&path).unwrap());
}
