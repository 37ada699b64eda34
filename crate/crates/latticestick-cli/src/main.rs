//! `latticestick` command-line tool.
//!
//! Exit codes: 0 success, 1 validation or runtime failure, 2 theorem
//! verification FAIL, 64 usage error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latticestick::census::{census, census_composition, verify_theorem, CensusRecord};
use latticestick::diagram::{project, simplify};
use latticestick::invariants::classify_detailed;
use latticestick::lattice::{Axis, LatticePolygon};
use latticestick::leveling::{is_properly_leveled, level_profile, make_properly_leveled};

#[derive(Parser)]
#[command(name = "latticestick", version, about = "Lattice stick knots: leveling, projection, classification, census")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that FILE holds a valid closed lattice polygon.
    Validate { file: PathBuf },
    /// Print stick counts, level profiles and the properly-leveled flag.
    Info {
        file: PathBuf,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Rearrange levels into properly leveled form and write the polygon.
    Level {
        file: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project to a knot diagram and print PD/Gauss codes.
    Project { file: PathBuf },
    /// Classify the knot type and print class, Jones polynomial, determinant.
    Classify { file: PathBuf },
    /// Enumerate and classify all properly leveled polygons, writing JSONL.
    Census {
        #[arg(long)]
        max_sticks: usize,
        /// Restrict to a single composition, e.g. 5,5,4.
        #[arg(long, value_parser = parse_composition)]
        composition: Option<Comp>,
        /// Census worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the census and check the stick-number theorem claims.
    Verify {
        #[arg(long, default_value_t = 14)]
        max_sticks: usize,
        /// Census worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Human-readable verdict lines instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Write the built-in sample polygons.
    Examples {
        /// Target directory.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy)]
struct Comp([usize; 3]);

fn parse_composition(s: &str) -> Result<Comp, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad composition {s:?}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [a, b, c] => Ok(Comp([*a, *b, *c])),
        _ => Err(format!("composition needs three comma-separated counts, got {s:?}")),
    }
}

/// Sample polygons shipped with the tool. The trefoil and figure-eight
/// coordinates are census representatives taken from a verified
/// `census --max-sticks 14` run; the square is the minimal polygon.
const EXAMPLES: [(&str, &str); 3] = [
    ("square.json", include_str!("examples/square.json")),
    ("trefoil_12.json", include_str!("examples/trefoil_12.json")),
    ("figure8_14.json", include_str!("examples/figure8_14.json")),
];

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses "error:" only for genuine usage problems
            let help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if help { ExitCode::SUCCESS } else { ExitCode::from(64) };
        }
    };
    match run(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(file: &Path) -> Result<LatticePolygon, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    LatticePolygon::from_json(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn run(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Validate { file } => {
            let p = load(&file)?;
            println!(
                "{}",
                serde_json::json!({
                    "valid": true,
                    "sticks": p.len(),
                    "composition": p.stick_counts().as_array(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Info { file, pretty } => {
            let p = load(&file)?;
            let profiles: Vec<_> = Axis::ALL.into_iter().map(|a| level_profile(&p, a)).collect();
            if pretty {
                println!("sticks: {} {:?}", p.len(), p.stick_counts().as_array());
                println!("planar: {}", p.is_planar());
                println!("properly leveled: {}", is_properly_leveled(&p));
                for prof in &profiles {
                    let levels: Vec<String> = prof
                        .levels
                        .iter()
                        .map(|l| format!("{}:{}ep", l.coord, l.endpoints))
                        .collect();
                    println!("{:?} levels: {}", prof.axis, levels.join(" "));
                }
            } else {
                println!(
                    "{}",
                    serde_json::json!({
                        "sticks": p.len(),
                        "composition": p.stick_counts().as_array(),
                        "planar": p.is_planar(),
                        "properly_leveled": is_properly_leveled(&p),
                        "levels": profiles,
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Level { file, out } => {
            let p = load(&file)?;
            let q = make_properly_leveled(&p).map_err(|e| e.to_string())?;
            write_out(out.as_deref(), &q.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Project { file } => {
            let p = load(&file)?;
            let d = project(&p);
            let s = simplify(&d);
            let pd: Vec<[usize; 4]> = match d.pd_code() {
                Ok(code) => code.0,
                Err(_) => Vec::new(), // no crossings
            };
            println!(
                "{}",
                serde_json::json!({
                    "crossings": d.crossing_number(),
                    "writhe": d.writhe(),
                    "pd": pd,
                    "gauss": d.gauss_code(),
                    "simplified_crossings": s.crossing_number(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { file } => {
            let p = load(&file)?;
            let c = classify_detailed(&p).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&c).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Census {
            max_sticks,
            composition,
            jobs,
            out,
        } => {
            if !(4..=16).contains(&max_sticks) {
                return Err("--max-sticks must be between 4 and 16".into());
            }
            let records = in_pool(jobs, || match composition {
                Some(Comp(dims)) => census_composition(dims).map(|r| vec![r]),
                None => census(max_sticks),
            })?
            .map_err(|e| e.to_string())?;
            let mut text = String::new();
            for r in &records {
                text.push_str(&serde_json::to_string(r).expect("serializable"));
                text.push('\n');
            }
            write_out(out.as_deref(), &text)?;
            eprintln!("{} records", records.len());
            summarize(&records);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            max_sticks,
            jobs,
            pretty,
        } => {
            if max_sticks < 12 || max_sticks > 16 {
                return Err("--max-sticks must be between 12 and 16".into());
            }
            let report =
                in_pool(jobs, || verify_theorem(max_sticks))?.map_err(|e| e.to_string())?;
            if pretty {
                for v in &report.verdicts {
                    println!("{} {}", if v.pass { "PASS" } else { "FAIL" }, v.claim);
                }
            } else {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::Examples { dir } => {
            std::fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            for (name, body) in EXAMPLES {
                let path = dir.join(name);
                std::fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(f))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string())?;
            Ok(())
        }
    }
}

/// Progress note on stderr: nontrivial classes per stick total.
fn summarize(records: &[CensusRecord]) {
    let mut by_total: BTreeMap<usize, BTreeMap<&str, usize>> = BTreeMap::new();
    for r in records {
        let total = r.composition.iter().sum();
        for (label, n) in &r.classes {
            if label != "unknot" {
                *by_total.entry(total).or_default().entry(label).or_insert(0) += n;
            }
        }
    }
    for (total, classes) in by_total {
        let parts: Vec<String> = classes.iter().map(|(l, n)| format!("{l}x{n}")).collect();
        eprintln!("{total} sticks: {}", parts.join(" "));
    }
}
