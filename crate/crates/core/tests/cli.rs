use std::path::Path;
use std::process::Command;

use sudoku_spectrum::cli::run;
use sudoku_spectrum::formats::{serialize, Style};
use sudoku_spectrum::spectrum::{RealizationCertificate, SeedDatabase};
use sudoku_spectrum::square::BoxType;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sudoku-spectrum").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn last_line(s: &str) -> &str {
    s.lines().last().unwrap_or("")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn realize_writes_verified_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = cli(&["realize", "--h", "2", "--w", "3", "--t", "19", "--seed", "1", "--out", p(&path)]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(o.out.trim(), "19");
    let cert = RealizationCertificate::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert.claimed, 19);
    assert_eq!(cert.a.box_type(), BoxType::new(2, 3).unwrap());
}

#[test]
fn realize_outside_the_spectrum_exits_two() {
    let o = cli(&["realize", "--h", "2", "--w", "2", "--t", "5", "--seed", "0"]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("4, 6"), "{}", o.err);
    let o = cli(&["realize", "--h", "2", "--w", "3", "--t", "35", "--seed", "0"]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("35, 34, 33, 31"), "{}", o.err);
}

#[test]
fn realize_full_intersection() {
    let o = cli(&["realize", "--h", "3", "--w", "5", "--t", "225", "--seed", "0"]);
    assert_eq!(o.code, 0);
    let cert = RealizationCertificate::from_json(o.out.lines().next().unwrap()).unwrap();
    assert_eq!(cert.a, cert.b);
    assert_eq!(last_line(&o.out), "225");
}

#[test]
fn realize_with_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("pairs.json");
    for seed in ["1", "2"] {
        let o = cli(&["realize", "--h", "2", "--w", "5", "--t", "61", "--seed", seed, "--cache", p(&cache)]);
        assert_eq!(o.code, 0, "{}", o.err);
        assert_eq!(last_line(&o.out), "61");
    }
    assert!(std::fs::read_to_string(&cache).unwrap().contains("\"5:"));
}

#[test]
fn verify_seed_files() {
    let dir = tempfile::tempdir().unwrap();
    let bt = BoxType::new(3, 4).unwrap();
    let set = SeedDatabase::embedded().get(bt).unwrap();
    let a = dir.path().join("l.txt");
    let b = dir.path().join("l138.txt");
    std::fs::write(&a, serialize(&set.reference, Style::Grid).unwrap()).unwrap();
    std::fs::write(&b, serialize(&set.labelled[&138], Style::SingleLine).unwrap()).unwrap();
    let o = cli(&["verify", p(&a), p(&b), "--h", "3", "--w", "4"]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(last_line(&o.out), "138");
    let o = cli(&["verify", p(&a), p(&a), "--h", "3", "--w", "4"]);
    assert_eq!(last_line(&o.out), "144");
}

#[test]
fn verify_reports_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("bad.txt");
    std::fs::write(&a, "0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 1\n").unwrap();
    let o = cli(&["verify", p(&a), p(&a), "--h", "2", "--w", "2"]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("bad.txt"), "{}", o.err);
    let o = cli(&["verify", p(&dir.path().join("missing.txt")), p(&a)]);
    assert_eq!(o.code, 1);
}

#[test]
fn spectrum_modes() {
    let brute = cli(&["spectrum", "--h", "2", "--w", "2", "--mode", "brute", "--threads", "1"]);
    assert_eq!(brute.code, 0);
    assert_eq!(brute.out.lines().next(), Some("{0,1,2,3,4,6,8,9,12,16}"));
    assert_eq!(last_line(&brute.out), "matches theorem: yes");
    let theorem = cli(&["spectrum", "--h", "2", "--w", "2"]);
    assert_eq!(theorem.out.trim(), brute.out.lines().next().unwrap());
    let seeds = cli(&["spectrum", "--h", "3", "--w", "3", "--mode", "seeds"]);
    assert_eq!(last_line(&seeds.out), "fully witnessed: yes");
    let latin = cli(&["spectrum", "--h", "1", "--w", "3", "--mode", "brute"]);
    assert_eq!(latin.out.lines().next(), Some("{0,3,9}"));
}

#[test]
fn pentadoku_census_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let o = cli(&["pentadoku", "--out", p(&path)]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("4 58 44 1"), "{}", o.out);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# tilings up to the dihedral group of order 8"));
    let rows = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 108);
}

#[test]
fn sampling_is_seeded() {
    let a = cli(&["sample", "--h", "2", "--w", "2", "--seed", "7"]);
    let b = cli(&["sample", "--h", "2", "--w", "2", "--seed", "7"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let derived = cli(&["sample", "--h", "2", "--w", "3", "--steps", "5"]);
    assert!(derived.err.starts_with("seed: "));
}

#[test]
fn sample_verifies_against_itself() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let o = cli(&["sample", "--h", "3", "--w", "3", "--seed", "3", "--format", "json"]);
    std::fs::write(&path, &o.out).unwrap();
    let v = cli(&["verify", p(&path), p(&path)]);
    assert_eq!(v.code, 0, "{}", v.err);
    assert_eq!(last_line(&v.out), "81");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["realize", "--h", "2"]).code, 2);
    assert_eq!(cli(&["sample", "--h", "1", "--w", "3", "--seed", "0"]).code, 2);
    assert_eq!(cli(&["bogus"]).code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sudoku-spectrum");
    let ok = Command::new(bin).args(["realize", "--h", "2", "--w", "2", "--t", "12", "--seed", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(last_line(&String::from_utf8_lossy(&ok.stdout)), "12");
    let bad = Command::new(bin).args(["realize", "--h", "2", "--w", "2", "--t", "5", "--seed", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
