use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flagmono::catalog::{self, Catalog};
use flagmono::suite::{run_suite, Check, SuiteOptions};
use flagmono_core::lattice::FlatLattice;
use flagmono_core::maps::{is_strong_map, is_weak_map};
use flagmono_core::order_complex::{
    coarse_vectors, flag_f_vector, flag_h_vector, independence_vectors, CoarseVectors,
};
use flagmono_core::sr::{sr_table, verify_injectivity_chain, PairContext};
use flagmono_core::{io, Matroid};
use serde_json::json;

#[derive(Parser)]
#[command(name = "flagmono", version, about = "Flag h-vectors of matroids and weak-map monotonicity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every labeled matroid of rank r on [n].
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Directory for one text file per matroid; JSON lines on stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print vectors of a matroid read from a text or JSON file.
    Hvector {
        file: PathBuf,
        #[command(flatten)]
        mode: HvectorMode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Classify the map A -> B and compare flag h-vectors.
    CheckPair { a: PathBuf, b: PathBuf },
    /// Run theorem checks over the exhaustive catalog.
    Suite {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Comma-separated subset of checks; all by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Random relabelings per matroid.
        #[arg(long, default_value_t = 50)]
        relabelings: usize,
        /// Add this many random linear matroids over each of GF(2) and GF(3).
        #[arg(long, default_value_t = 0)]
        random_linear: usize,
        /// Largest ground set for the random linear supplement.
        #[arg(long, default_value_t = 10)]
        random_n_max: usize,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct HvectorMode {
    /// Flag f- and h-vectors of the lattice of flats (default).
    #[arg(long)]
    flag: bool,
    /// Ordinary f- and h-vectors of the order complex.
    #[arg(long)]
    coarse: bool,
    /// Per-degree Stanley-Reisner quotient dimensions.
    #[arg(long)]
    sr: bool,
    /// f- and h-vectors of the independence complex.
    #[arg(long)]
    independence: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn read_matroid(path: &Path) -> Result<Matroid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn enumerate(n: usize, r: usize, out: Option<PathBuf>) -> Result<()> {
    let cat = catalog::enumerate_matroids(n, r)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(&dir)?;
            for (i, e) in cat.entries().iter().enumerate() {
                let path = dir.join(format!("n{n}r{r}-{i:05}.txt"));
                fs::write(&path, io::to_text(&e.matroid))?;
            }
            eprintln!("wrote {} matroids to {}", cat.len(), dir.display());
        }
        None => {
            for e in cat.entries() {
                println!("{}", io::to_json(&e.matroid));
            }
        }
    }
    Ok(())
}

fn coarse_csv(v: &CoarseVectors) -> String {
    let mut out = String::from("i,f,h\n");
    for (i, (f, h)) in v.f.iter().zip(&v.h).enumerate() {
        out.push_str(&format!("{i},{f},{h}\n"));
    }
    out
}

fn hvector(file: &Path, mode: &HvectorMode, format: Format) -> Result<()> {
    let m = read_matroid(file)?;
    let lat = FlatLattice::of_matroid(&m);
    let text = if mode.sr {
        let rows = sr_table(&lat)?;
        match format {
            Format::Json => serde_json::to_string_pretty(&rows)?,
            Format::Csv => {
                let mut out = String::from("S,chains,relation_rank,quotient_dim,h,agrees\n");
                for r in &rows {
                    let bits: u32 = r.degree.iter().map(|i| 1u32 << (i - 1)).sum();
                    out.push_str(&format!(
                        "{bits},{},{},{},{},{}\n",
                        r.chains, r.relation_rank, r.quotient_dim, r.h, r.agrees
                    ));
                }
                out
            }
        }
    } else if mode.coarse || mode.independence {
        let v = if mode.coarse {
            coarse_vectors(&flag_f_vector(&lat))
        } else {
            independence_vectors(&m)
        };
        match format {
            Format::Json => serde_json::to_string_pretty(&v)?,
            Format::Csv => coarse_csv(&v),
        }
    } else {
        let h = flag_h_vector(&lat);
        match format {
            Format::Json => serde_json::to_string_pretty(&json!({
                "f": flag_f_vector(&lat),
                "h": h,
            }))?,
            Format::Csv => h.to_csv(),
        }
    };
    print!("{}", text.trim_end());
    println!();
    Ok(())
}

/// Returns whether a theorem violation was found.
fn check_pair(a_path: &Path, b_path: &Path) -> Result<bool> {
    let (a, b) = (read_matroid(a_path)?, read_matroid(b_path)?);
    let weak = is_weak_map(&a, &b)?;
    let strong = is_strong_map(&a, &b)?;
    let rank_preserving = a.rank() == b.rank();
    let (la, lb) = (FlatLattice::of_matroid(&a), FlatLattice::of_matroid(&b));
    let mut violation = strong.holds() && !weak.holds();
    let mut details = json!({
        "weak_violation": weak.violation.map(|s| s.to_vec()),
        "strong_violation": strong.violation.map(|s| s.to_vec()),
        "rank_a": a.rank(),
        "rank_b": b.rank(),
    });
    let flag_h_monotone = if rank_preserving {
        let (ha, hb) = (flag_h_vector(&la), flag_h_vector(&lb));
        let first = ha.dominates(&hb).err();
        details["h_a"] = serde_json::to_value(&ha)?;
        details["h_b"] = serde_json::to_value(&hb)?;
        details["first_failing_S"] = json!(first.map(|s| s.to_vec()));
        Some(first.is_none())
    } else {
        None
    };
    if weak.holds() && rank_preserving {
        violation |= flag_h_monotone == Some(false);
        let ctx = PairContext::with_lattices(&a, la, &b, lb)?;
        let rows = verify_injectivity_chain(&ctx)?;
        let ok = rows.iter().all(|r| r.holds());
        violation |= !ok;
        details["dimension_chain"] = serde_json::to_value(
            rows.iter()
                .map(|r| json!({"S": r.degree, "h_a": r.h_a, "dim_aprime": r.dim_aprime, "h_b": r.h_b, "certified": r.surjectivity.passes()}))
                .collect::<Vec<_>>(),
        )?;
        details["duality_ok"] = json!(ok);
    }
    let out = json!({
        "weak": weak.holds(),
        "strong": strong.holds(),
        "rank_preserving": rank_preserving,
        "flag_h_monotone": flag_h_monotone,
        "details": details,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(violation)
}

#[allow(clippy::too_many_arguments)]
fn suite(
    n_max: usize,
    checks: Vec<Check>,
    jobs: usize,
    seed: u64,
    format: Format,
    relabelings: usize,
    random_linear: usize,
    random_n_max: usize,
) -> Result<bool> {
    let mut cat: Catalog = catalog::exhaustive(n_max)?;
    if random_linear > 0 {
        let lo = (n_max + 1).min(random_n_max);
        for field in [2, 3] {
            cat.extend(catalog::random_linear(field, lo..=random_n_max, 4, random_linear, seed)?)?;
        }
    }
    let opts = SuiteOptions {
        checks: if checks.is_empty() { Check::ALL.to_vec() } else { checks },
        seed,
        relabelings,
        jobs,
    };
    let report = run_suite(&cat, &opts);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Csv => print!("{}", report.to_csv()),
    }
    Ok(report.violations() > 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { n, r, out } => enumerate(n, r, out).map(|_| false),
        Command::Hvector { file, mode, format } => hvector(&file, &mode, format).map(|_| false),
        Command::CheckPair { a, b } => check_pair(&a, &b),
        Command::Suite {
            n_max,
            checks,
            jobs,
            seed,
            format,
            relabelings,
            random_linear,
            random_n_max,
        } => suite(n_max, checks, jobs, seed, format, relabelings, random_linear, random_n_max),
    };
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
