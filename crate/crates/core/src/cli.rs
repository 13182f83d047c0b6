//! The `sudoku-spectrum` command line.
//!
//! Exit codes: 0 success, 1 input/output or validation failure, 2 usage error or a
//! target outside the spectrum.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::construct::{latin_spectrum, sudoku_spectrum};
use crate::formats::{parse_auto, serialize, Style};
use crate::markov::{drift_near, rng_from_seed, sample_sudoku};
use crate::pentadoku::classify_all;
use crate::spectrum::{
    brute_force_spectrum, LatinPairCache, Realizer, SeedDatabase, SpectrumError,
};
use crate::square::BoxType;

#[derive(Debug, Parser)]
#[command(name = "sudoku-spectrum", version, about = "Intersection numbers of Sudoku latin squares")]
struct Cli {
    /// Worker threads for `pentadoku` and `spectrum --mode brute` (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build two Sudoku squares of type (h,w) meeting in exactly t cells.
    Realize {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        t: usize,
        /// Certificate path (JSON); printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Latin pair memo file, read if present and rewritten afterwards.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Validate two squares and print their intersection number.
    Verify {
        a: PathBuf,
        b: PathBuf,
        /// Box type for grid and single-line files (JSON files carry their own).
        #[arg(long, requires = "w")]
        h: Option<usize>,
        #[arg(long, requires = "h")]
        w: Option<usize>,
    },
    /// Print an intersection spectrum.
    Spectrum {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, value_enum, default_value_t = Mode::Theorem)]
        mode: Mode,
    },
    /// Print a random Sudoku square.
    Sample {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Chain segments to drift after sampling.
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Backtracking restarts allowed.
        #[arg(long, default_value_t = 100)]
        effort: usize,
        #[arg(long, value_enum, default_value_t = Format::Grid)]
        format: Format,
    },
    /// Classify all pentomino tilings of the 5×5 board.
    Pentadoku {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
        format: CensusFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Theorem,
    Brute,
    Seeds,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Grid,
    Line,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(cli.command, out, err)),
        Err(e) => Err(fail(1, e)),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    fail(1, e)
}

fn box_type(h: usize, w: usize) -> Result<BoxType, Failure> {
    BoxType::new(h, w).map_err(|e| fail(2, e))
}

fn seed_or_derive(seed: Option<u64>, err: &mut (dyn Write + Send)) -> Result<u64, Failure> {
    if let Some(seed) = seed {
        return Ok(seed);
    }
    let seed = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    writeln!(err, "seed: {seed}").map_err(io)?;
    Ok(seed)
}

fn format_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn dispatch(command: Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Outcome {
    match command {
        Command::Realize { h, w, t, out: path, seed, cache } => {
            cmd_realize(h, w, t, path.as_deref(), seed, cache.as_deref(), out, err)
        }
        Command::Verify { a, b, h, w } => cmd_verify(&a, &b, h.zip(w), out),
        Command::Spectrum { h, w, mode } => cmd_spectrum(h, w, mode, out),
        Command::Sample { h, w, seed, steps, effort, format } => {
            cmd_sample(h, w, seed, steps, effort, format, out, err)
        }
        Command::Pentadoku { out: path, format } => cmd_pentadoku(path.as_deref(), format, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_realize(
    h: usize,
    w: usize,
    t: usize,
    path: Option<&Path>,
    seed: Option<u64>,
    cache_path: Option<&Path>,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Outcome {
    box_type(h, w)?;
    let seed = seed_or_derive(seed, err)?;
    let cache = LatinPairCache::new();
    if let Some(p) = cache_path.filter(|p| p.exists()) {
        cache.load(p).map_err(|e| fail(1, e))?;
    }
    let realizer = Realizer::with_cache(cache);
    let cert = realizer.realize_sudoku_pair(h, w, t, &mut rng_from_seed(seed)).map_err(|e| match e {
        SpectrumError::NotInSpectrum { .. } | SpectrumError::TooLarge { .. } => fail(2, e),
        e => fail(1, e),
    })?;
    let verified = cert.verify().map_err(|e| fail(1, e))?;
    let json = cert.to_json();
    match path {
        Some(p) => std::fs::write(p, json + "\n").map_err(io)?,
        None => writeln!(out, "{json}").map_err(io)?,
    }
    if let Some(p) = cache_path {
        realizer.cache().save(p).map_err(|e| fail(1, e))?;
    }
    writeln!(out, "{verified}").map_err(io)
}

fn cmd_verify(a: &Path, b: &Path, hw: Option<(usize, usize)>, out: &mut (dyn Write + Send)) -> Outcome {
    let bt = hw.map(|(h, w)| box_type(h, w)).transpose()?;
    let load = |p: &Path| {
        let text = std::fs::read_to_string(p).map_err(|e| fail(1, format!("{}: {e}", p.display())))?;
        parse_auto(&text, bt).map_err(|e| fail(1, format!("{}: {e}", p.display())))
    };
    let (sa, sb) = (load(a)?, load(b)?);
    for (name, sq) in [("a", &sa), ("b", &sb)] {
        writeln!(out, "{name}: valid Sudoku of type {}", sq.box_type()).map_err(io)?;
    }
    if sa.box_type() != sb.box_type() {
        return Err(fail(1, format!("box types differ: {} vs {}", sa.box_type(), sb.box_type())));
    }
    let n = crate::square::intersection(&sa, &sb).map_err(|e| fail(1, e))?.len();
    writeln!(out, "{n}").map_err(io)
}

fn cmd_spectrum(h: usize, w: usize, mode: Mode, out: &mut (dyn Write + Send)) -> Outcome {
    let latin = h == 1 || w == 1;
    let theorem = if latin { latin_spectrum(h * w) } else { sudoku_spectrum(h, w) }.map_err(|e| fail(2, e))?;
    match mode {
        Mode::Theorem => writeln!(out, "{}", format_set(&theorem)).map_err(io),
        Mode::Brute => {
            let report = brute_force_spectrum(h, w).map_err(|e| fail(2, e))?;
            let values = report.values();
            writeln!(out, "{}", format_set(&values)).map_err(io)?;
            writeln!(out, "squares: {}", report.square_count).map_err(io)?;
            for (t, (a, b)) in &report.witnesses {
                let line = |s: &crate::square::LatinSquare| {
                    s.rows().map(|r| r.iter().map(|v| v.to_string()).collect::<String>()).collect::<Vec<_>>().join("|")
                };
                writeln!(out, "{t}: {} {}", line(a), line(b)).map_err(io)?;
            }
            writeln!(out, "matches theorem: {}", if values == theorem { "yes" } else { "no" }).map_err(io)
        }
        Mode::Seeds => {
            let bt = box_type(h, w)?;
            let db = SeedDatabase::embedded();
            let (set, flipped) = match (db.get(bt), db.get(bt.transposed())) {
                (Some(s), _) => (s, false),
                (None, Some(s)) => (s, true),
                (None, None) => return Err(fail(1, format!("no stored squares of type {bt}"))),
            };
            let mut witnessed = BTreeSet::new();
            let n = bt.order();
            for t in set.labels().chain([n * n]) {
                if let Some((a, b)) = set.pair(t) {
                    let (a, b) = if flipped { (a.transpose(), b.transpose()) } else { (a, b) };
                    let found = a.agreement(&b);
                    if found != t {
                        return Err(fail(1, format!("stored square labelled {t} meets the reference in {found} cells")));
                    }
                    witnessed.insert(t);
                    let line = serialize(&b, Style::SingleLine).unwrap_or_else(|_| b.to_string());
                    writeln!(out, "{t}: {line}").map_err(io)?;
                }
            }
            writeln!(out, "witnessed: {}", format_set(&witnessed)).map_err(io)?;
            let complete = witnessed == theorem;
            writeln!(out, "fully witnessed: {}", if complete { "yes" } else { "no" }).map_err(io)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    h: usize,
    w: usize,
    seed: Option<u64>,
    steps: usize,
    effort: usize,
    format: Format,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Outcome {
    box_type(h, w)?;
    let seed = seed_or_derive(seed, err)?;
    let mut rng = rng_from_seed(seed);
    let mut sq = sample_sudoku(h, w, &mut rng, effort).map_err(|e| fail(1, e))?;
    if steps > 0 {
        sq = drift_near(&sq, &mut rng, steps);
    }
    let style = match format {
        Format::Grid => Style::Grid,
        Format::Line => Style::SingleLine,
        Format::Json => Style::Json,
    };
    let text = serialize(&sq, style).map_err(|e| fail(1, e))?;
    writeln!(out, "{}", text.trim_end()).map_err(io)
}

fn cmd_pentadoku(path: Option<&Path>, format: CensusFormat, out: &mut (dyn Write + Send)) -> Outcome {
    let census = classify_all();
    let text = match format {
        CensusFormat::Csv => census.to_csv(),
        CensusFormat::Json => census.to_json().to_string() + "\n",
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(io)?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    writeln!(out, "tilings: {}", census.classes.len()).map_err(io)?;
    writeln!(out, "summary (unsolvable full partial rigid): {}", census.summary()).map_err(io)
}
