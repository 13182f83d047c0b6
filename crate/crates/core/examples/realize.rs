//! Certified pairs of Sudoku squares with a prescribed intersection number.
//!
//! `cargo run --example realize -- 3 5 200`

use sudoku_spectrum::markov::rng_from_seed;
use sudoku_spectrum::spectrum::Realizer;
use sudoku_spectrum::sudoku_spectrum;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (h, w, t) = match args[..] {
        [h, w, t] => (h, w, t),
        _ => (2, 5, 93),
    };
    let realizer = Realizer::new();
    let mut rng = rng_from_seed(0);
    match realizer.realize_sudoku_pair(h, w, t, &mut rng) {
        Ok(cert) => {
            println!("method: {}", cert.method);
            println!("a:\n{}\nb:\n{}", cert.a, cert.b);
            println!("verified intersection: {}", cert.verify().unwrap());
        }
        Err(e) => println!("{e}"),
    }

    // Every value of a whole spectrum, reusing the memoized latin pairs.
    let spectrum = sudoku_spectrum(h, w).unwrap();
    let ok = spectrum
        .iter()
        .filter(|&&t| realizer.realize_sudoku_pair(h, w, t, &mut rng).is_ok_and(|c| c.verify() == Ok(t)))
        .count();
    println!("({h},{w}): {ok} of {} values realized; {} latin pairs cached", spectrum.len(), realizer.cache().len());
}
