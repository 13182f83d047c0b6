//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test --test acceptance`

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng as _;
use sudoku_spectrum::construct::{
    kronecker, sudoku_reorder, sudoku_spectrum, triangle_product, upsilon, SquareFamily,
};
use sudoku_spectrum::markov::{drift_near, random_latin, rng_from_seed, row_derangement, sample_sudoku, Rng};
use sudoku_spectrum::pentadoku::{classify_all, Category, Tiling, PARTIAL_MISSING};
use sudoku_spectrum::spectrum::{
    brute_force_latin_spectrum, brute_force_spectrum, verify_seed_database, Realizer, SeedDatabase,
};
use sudoku_spectrum::square::{
    intersection, validate_latin, validate_sudoku, BoxType, LatinSquare, Permutation,
};

type Outcome = Result<String, String>;

fn set(values: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    values.into_iter().collect()
}

fn agree(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x == y).count()
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for s in 0..n as u8 {
            if !prefix.contains(&s) {
                prefix.push(s);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Every latin square of order `n` as a flat grid, stacking permutation rows.
fn all_latin(n: usize) -> Vec<Vec<u8>> {
    fn go(rows: &mut Vec<u8>, perms: &[Vec<u8>], n: usize, out: &mut Vec<Vec<u8>>) {
        let r = rows.len() / n;
        if r == n {
            out.push(rows.clone());
            return;
        }
        for p in perms {
            if (0..n).all(|c| (0..r).all(|k| rows[k * n + c] != p[c])) {
                rows.extend(p);
                go(rows, perms, n, out);
                rows.truncate(r * n);
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &permutations(n), n, &mut out);
    out
}

fn boxes_ok(g: &[u8], h: usize, w: usize) -> bool {
    let n = h * w;
    (0..n).all(|b| {
        let (band, stack) = (b / h, b % h);
        let mut seen = 0u32;
        for r in band * h..band * h + h {
            for c in stack * w..stack * w + w {
                seen |= 1 << g[r * n + c];
            }
        }
        seen == (1 << n) - 1
    })
}

fn naive_spectrum(squares: &[Vec<u8>]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for a in squares {
        for b in squares {
            out.insert(agree(a, b));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let expected = [set([1]), set([0, 4]), set([0, 3, 9]), set([0, 1, 2, 3, 4, 6, 8, 9, 12, 16])];
    let counts = [1, 2, 12, 576];
    for n in 1..=4 {
        let squares = all_latin(n);
        if squares.len() != counts[n - 1] {
            return Err(format!("order {n}: enumerated {} squares", squares.len()));
        }
        let naive = naive_spectrum(&squares);
        let library = brute_force_latin_spectrum(n).map_err(|e| e.to_string())?.values();
        if naive != expected[n - 1] || library != expected[n - 1] {
            return Err(format!("order {n}: all pairs {naive:?}, library {library:?}"));
        }
    }
    Ok("orders 1..4 give {1}, {0,4}, {0,3,9}, {0,1,2,3,4,6,8,9,12,16}".into())
}

fn criterion_2() -> Outcome {
    let expected22 = set([0, 1, 2, 3, 4, 6, 8, 9, 12, 16]);
    let sudoku22: Vec<Vec<u8>> = all_latin(4).into_iter().filter(|g| boxes_ok(g, 2, 2)).collect();
    let naive = naive_spectrum(&sudoku22);
    let brute22 = brute_force_spectrum(2, 2).map_err(|e| e.to_string())?;
    if sudoku22.len() != 288 || naive != expected22 || brute22.values() != expected22 {
        return Err(format!("(2,2): all pairs {naive:?}, library {:?}", brute22.values()));
    }
    let brute23 = brute_force_spectrum(2, 3).map_err(|e| e.to_string())?;
    let expected23: BTreeSet<usize> = (0..=30).chain([32, 36]).collect();
    if brute23.square_count == 0 || brute23.values() != expected23 {
        return Err(format!("(2,3): {:?}", brute23.values()));
    }
    for (&t, (a, b)) in &brute23.witnesses {
        if agree(a.cells(), b.cells()) != t || !boxes_ok(a.cells(), 2, 3) || !boxes_ok(b.cells(), 2, 3) {
            return Err(format!("(2,3): bad witness for {t}"));
        }
    }
    Ok(format!(
        "I(2,2) from 288 squares; I(2,3) = {{0..30,32,36}} from {} squares",
        brute23.square_count
    ))
}

fn criterion_3() -> Outcome {
    let report = verify_seed_database();
    if let Some(bad) = report.failures().next() {
        return Err(format!("{bad:?}"));
    }
    let expected: [(usize, usize, BTreeSet<usize>); 6] = [
        (2, 2, set([0, 1, 2, 3, 4, 6, 8, 9, 12])),
        (2, 4, set([53, 55, 58])),
        (2, 3, (0..=30).chain([32, 36]).collect()),
        (3, 3, (0..=75).chain([77, 81]).collect()),
        (3, 4, set([133, 135, 138])),
        (4, 4, set([245, 247, 250])),
    ];
    let db = SeedDatabase::embedded();
    for (h, w, labels) in expected {
        let bt = BoxType::new(h, w).map_err(|e| e.to_string())?;
        let seeds = db.get(bt).ok_or(format!("no squares of type {bt}"))?;
        if set(seeds.labels()) != labels {
            return Err(format!("{bt}: labels {:?}", set(seeds.labels())));
        }
        for t in labels {
            let (a, b) = seeds.pair(t).ok_or(format!("{bt}: no pair {t}"))?;
            if agree(a.cells(), b.cells()) != t || !boxes_ok(a.cells(), h, w) || !boxes_ok(b.cells(), h, w) {
                return Err(format!("{bt}: label {t} not reproduced"));
            }
        }
    }
    Ok(format!("{} stored squares verified", report.checks.len()))
}

fn criterion_4() -> Outcome {
    let types = [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4), (2, 5), (3, 5), (5, 5)];
    let realizer = Realizer::new();
    let mut rng = rng_from_seed(4);
    let mut total = 0;
    for (h, w) in types {
        let bt = BoxType::new(h, w).map_err(|e| e.to_string())?;
        for t in sudoku_spectrum(h, w).map_err(|e| e.to_string())? {
            let cert = realizer.realize_sudoku_pair(h, w, t, &mut rng).map_err(|e| format!("{bt} t={t}: {e}"))?;
            let ok = cert.a.box_type() == bt
                && cert.b.box_type() == bt
                && boxes_ok(cert.a.cells(), h, w)
                && boxes_ok(cert.b.cells(), h, w)
                && validate_latin(&cert.a.to_rows()).is_ok()
                && validate_latin(&cert.b.to_rows()).is_ok()
                && agree(cert.a.cells(), cert.b.cells()) == t
                && cert.verify() == Ok(t);
            if !ok {
                return Err(format!("{bt} t={t}: certificate does not verify"));
            }
            total += 1;
        }
    }
    Ok(format!("{total} certificates over 9 types, each re-verified"))
}

fn relabel(s: &LatinSquare, rng: &mut Rng) -> LatinSquare {
    let mut p: Vec<usize> = (0..s.order()).collect();
    p.shuffle(rng);
    let pi = Permutation::new(p).expect("shuffle");
    sudoku_spectrum::square::permute_symbols(s, &pi).expect("same order")
}

/// A partner for `a`: itself, a relabelling, or an unrelated square.
fn partner(a: &LatinSquare, rng: &mut Rng) -> LatinSquare {
    match rng.gen_range(0..3) {
        0 => a.clone(),
        1 => relabel(a, rng),
        _ => random_latin(a.order(), rng),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = rng_from_seed(5);
    for i in 0..1000 {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let l = random_latin(n, &mut rng);
        let members: Vec<LatinSquare> = (0..n * n).map(|_| random_latin(m, &mut rng)).collect();
        let fam = SquareFamily::new(n, m, members).map_err(|e| e.to_string())?;
        let p = triangle_product(&l, &fam).map_err(|e| e.to_string())?;
        validate_latin(&p.to_rows()).map_err(|e| format!("instance {i}: {e}"))?;
        let s = sudoku_reorder(&p, n, m).map_err(|e| format!("instance {i}: {e}"))?;
        let bt = BoxType::relaxed(n, m).map_err(|e| e.to_string())?;
        if s.box_type() != bt || validate_sudoku(&s, bt).is_err() || !boxes_ok(s.cells(), n, m) {
            return Err(format!("instance {i}: reordered product is not a ({n},{m}) Sudoku"));
        }
    }
    for i in 0..1000 {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let l = random_latin(n, &mut rng);
        let left: Vec<LatinSquare> = (0..n * n).map(|_| random_latin(m, &mut rng)).collect();
        let right: Vec<LatinSquare> = left.iter().map(|a| partner(a, &mut rng)).collect();
        let sum: usize = left.iter().zip(&right).map(|(a, b)| agree(a.cells(), b.cells())).sum();
        let pa = triangle_product(&l, &SquareFamily::new(n, m, left).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let pb = triangle_product(&l, &SquareFamily::new(n, m, right).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let sa = sudoku_reorder(&pa, n, m).map_err(|e| e.to_string())?;
        let sb = sudoku_reorder(&pb, n, m).map_err(|e| e.to_string())?;
        if agree(pa.cells(), pb.cells()) != sum || agree(sa.cells(), sb.cells()) != sum {
            return Err(format!("pair {i}: intersection differs from the sum {sum}"));
        }
    }
    Ok("1000 products valid and reordered to Sudoku; 1000 family pairs add up".into())
}

fn grid(rows: &[&str]) -> LatinSquare {
    LatinSquare::from_rows(rows.iter().map(|r| r.bytes().map(|b| b - b'1').collect()).collect()).expect("latin")
}

fn criterion_6() -> Outcome {
    let mut rng = rng_from_seed(6);
    for i in 0..1000 {
        let (n, m) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let l1 = random_latin(n, &mut rng);
        let l2 = partner(&l1, &mut rng);
        let m1 = random_latin(m, &mut rng);
        let m2 = partner(&m1, &mut rng);
        let p1 = kronecker(&l1, &m1).map_err(|e| e.to_string())?;
        let p2 = kronecker(&l2, &m2).map_err(|e| e.to_string())?;
        let lhs = intersection(&p1, &p2).map_err(|e| e.to_string())?.len();
        let rhs = agree(l1.cells(), l2.cells()) * agree(m1.cells(), m2.cells());
        if lhs != rhs {
            return Err(format!("quadruple {i}: {lhs} != {rhs}"));
        }
    }
    let product = kronecker(&grid(&["12", "21"]), &grid(&["123", "231", "312"])).map_err(|e| e.to_string())?;
    let listed = grid(&["123456", "231564", "312645", "456123", "564231", "645312"]);
    let reordered = grid(&["123456", "456123", "231564", "564231", "312645", "645312"]);
    let s = sudoku_reorder(&product, 2, 3).map_err(|e| e.to_string())?;
    if product != listed || s.square() != &reordered {
        return Err("worked product not reproduced".into());
    }
    Ok("1000 quadruples multiply; worked order-6 product and its Sudoku reordering match".into())
}

fn criterion_7() -> Outcome {
    let census = classify_all();
    let summary = census.summary();
    if census.classes.len() != 107 {
        return Err(format!("{} tilings", census.classes.len()));
    }
    if (summary.unsolvable, summary.full, summary.partial, summary.rigid) != (4, 58, 44, 1) {
        return Err(format!("summary {summary}"));
    }
    let full = upsilon(5).map_err(|e| e.to_string())?;
    let allowed = set(PARTIAL_MISSING);
    let puzzle = Tiling::example_puzzle();
    let mut puzzle_seen = false;
    for c in &census.classes {
        puzzle_seen |= c.tiling.is_equivalent(&puzzle);
        if !c.spectrum.is_subset(&full) {
            return Err(format!("{}: spectrum outside the order-5 spectrum", c.tiling.code()));
        }
        match &c.category {
            Category::Partial { missing } if !missing.is_subset(&allowed) => {
                return Err(format!("{}: missing {missing:?}", c.tiling.code()));
            }
            Category::Rigid => {
                if !c.tiling.is_equivalent(&puzzle) || c.spectrum != set([0, 5, 10, 15, 25]) || c.solutions_count != 1 {
                    return Err(format!("rigid tiling {} does not match the example puzzle", c.tiling.code()));
                }
            }
            _ => {}
        }
    }
    if !puzzle_seen {
        return Err("example puzzle tiling missing".into());
    }
    Ok(format!("107 tilings; unsolvable full partial rigid = {summary}"))
}

fn criterion_8() -> Outcome {
    let types = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (2, 5), (4, 3)];
    let per_type = 100_000 / types.len() + 1;
    let mut rng = rng_from_seed(8);
    let mut pairs = 0usize;
    let mut seen = BTreeSet::new();
    for (h, w) in types {
        let n = h * w;
        let sq = n * n;
        let forbidden = set([sq - 1, sq - 2, sq - 3, sq - 5]);
        let mut current = sample_sudoku(h, w, &mut rng, 100).map_err(|e| e.to_string())?;
        let mut recent = vec![current.clone()];
        let mut done = 0;
        while done < per_type {
            let next = match rng.gen_range(0..10) {
                0 => sample_sudoku(h, w, &mut rng, 100).map_err(|e| e.to_string())?,
                1 => row_derangement(&current, &mut rng),
                _ => {
                    let steps = rng.gen_range(1..4);
                    drift_near(&current, &mut rng, steps)
                }
            };
            for other in &recent {
                if other == &next {
                    continue;
                }
                let k = agree(other.cells(), next.cells());
                if forbidden.contains(&k) || intersection(other, &next).map(|p| p.len()) != Ok(k) {
                    return Err(format!("({h},{w}): distinct pair meeting in {k} cells"));
                }
                seen.insert((n, k));
                done += 1;
                pairs += 1;
            }
            if recent.len() == 8 {
                recent.remove(0);
            }
            recent.push(next.clone());
            current = next;
        }
    }
    Ok(format!("{pairs} distinct pairs over {} types, {} (order, value) combinations, no forbidden value", types.len(), seen.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("latin spectra for orders 1..4", criterion_1),
        ("brute-force I(2,2) and I(2,3)", criterion_2),
        ("seed database", criterion_3),
        ("realizer completeness", criterion_4),
        ("block product properties", criterion_5),
        ("Kronecker multiplicativity", criterion_6),
        ("Pentadoku census", criterion_7),
        ("forbidden values", criterion_8),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} PASS ({name}, {secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL ({name}, {secs:.1}s): {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
