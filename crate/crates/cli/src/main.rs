use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use kfg_core::cache::{cache_dir, cached_classes};
use kfg_core::catalog::orbit40;
use kfg_core::census::{monoid_frequencies, witness_library};
use kfg_core::classifier::{profile_of_values, psi_dual};
use kfg_core::monoid::{kfg_operators, label_operators, parse_generators};
use kfg_core::reference::reference;
use kfg_core::sums::{space_numbers, sum_space, topsum_report, MeetTable, SumSpec};
use kfg_core::verify::verify_paper;
use kfg_core::{classify_kfg, classify_space, generate_monoid, SpaceType, Topology};

#[derive(Parser)]
#[command(
    name = "kfg",
    version,
    about = "Closure-complement-frontier-border operator calculus on finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the homeomorphism classes on N points, reading or filling the cache.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// φ, ψ, k and k_f of a subset given by its bit code (or `all`).
    Classify {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        subset: String,
    },
    /// Elements of the monoid generated on a space.
    Monoid {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value = "abf")]
        generators: String,
    },
    /// Disjoint sum of spaces, with its ψ-numbers and k-numbers.
    Sum {
        #[arg(long, num_args = 1.., required = true)]
        spaces: Vec<PathBuf>,
    },
    /// Recomputed tables as CSV.
    Tables {
        #[arg(long)]
        name: TableName,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Re-check published tables and theorems.
    VerifyPaper {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    Table5,
    Table8,
    Table12,
    Meet,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// A space file holds either a serialized topology or a list of base sets
/// written as strings of point letters.
#[derive(Deserialize)]
#[serde(untagged)]
enum SpaceFile {
    Table(Topology),
    Base(Vec<String>),
    Wrapped { base: Vec<String> },
}

fn read_space(path: &Path) -> Result<Topology> {
    let body =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed: SpaceFile = serde_json::from_str(&body)
        .with_context(|| format!("{} is not a space file", path.display()))?;
    Ok(match parsed {
        SpaceFile::Table(t) => t,
        SpaceFile::Base(b) | SpaceFile::Wrapped { base: b } => {
            let base: Vec<&str> = b.iter().map(String::as_str).collect();
            Topology::from_letter_base(&base)?
        }
    })
}

fn space_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn parse_code(s: &str) -> Result<u32> {
    let v = if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else {
        s.parse()
    };
    v.with_context(|| format!("bad subset code {s}"))
}

enum Outcome {
    Done(String),
    Failed(String),
}

fn run(cli: Cli) -> Result<Outcome> {
    let out = match cli.command {
        Command::Enumerate { n, cache } => {
            if n == 0 || n > 8 {
                bail!("--n must be between 1 and 8");
            }
            let dir = cache_dir(cache.as_deref());
            let (cs, entry) = cached_classes(&dir, n)?;
            eprintln!("n={n}: {} classes, sha256 {}", entry.count, entry.sha256);
            let mut out = String::from("index,type,kfg_type,point_closures\n");
            for (i, c) in cs.iter().enumerate() {
                let t = c.topology();
                let cl: Vec<String> = c.encoding.iter().map(u32::to_string).collect();
                let _ = writeln!(
                    out,
                    "{i},{},{},{}",
                    c.space_type.label(),
                    classify_kfg(&t)?.label(),
                    cl.join(" ")
                );
            }
            out
        }
        Command::Classify { space, subset } => {
            let t = read_space(&space)?;
            let codes: Vec<u32> = if subset == "all" {
                (0..=t.mask()).collect()
            } else {
                vec![parse_code(&subset)?]
            };
            let id = space_id(&space);
            let mut out = String::from("space-id,subset-code,phi,psi,k,kf\n");
            for code in codes {
                if code > t.mask() {
                    bail!("subset code {code} exceeds the {}-point universe", t.n());
                }
                let p = profile_of_values(&orbit40(&t, code))?;
                let _ = writeln!(out, "{id},{code},{},{},{},{}", p.phi, p.psi, p.k, p.kf);
            }
            out
        }
        Command::Monoid { space, generators } => {
            let t = read_space(&space)?;
            // `abfg` names the KFG operators rather than the monoid {a, b, f, g} generates
            let ops = if generators == "abfg" {
                kfg_operators(&t)
            } else {
                generate_monoid(&t, &parse_generators(&generators)?)
            };
            let names = label_operators(&t, &ops);
            eprintln!(
                "{}: {} elements, type {}",
                space_id(&space),
                ops.len(),
                classify_space(&t)?.label()
            );
            let mut out = String::from("index,word\n");
            for (i, name) in names.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", name.unwrap_or("?"));
            }
            out
        }
        Command::Sum { spaces } => {
            let parts = spaces
                .iter()
                .map(|p| read_space(p))
                .collect::<Result<Vec<_>>>()?;
            let t = sum_space(&SumSpec::new(parts)?)?;
            let st = classify_space(&t)?;
            let nums = space_numbers(&t)?;
            let doc = json!({
                "space": t,
                "type": st.label(),
                "k": nums.k,
                "kf": nums.kf,
                "completely_full": nums.kf == st.kf_size(),
                "psi": nums.psi,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Command::Tables { name, max_n } => tables(name, max_n)?,
        Command::VerifyPaper {
            suite,
            max_n,
            jobs,
            format,
        } => {
            let report = verify_paper(Some(&suite), max_n, jobs)?;
            let body = match format {
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            return Ok(if report.all_pass() {
                Outcome::Done(body)
            } else {
                Outcome::Failed(body)
            });
        }
    };
    Ok(Outcome::Done(out))
}

fn tables(name: TableName, max_n: Option<usize>) -> Result<String> {
    let mut out = String::new();
    match name {
        TableName::Table5 => {
            let max_n = max_n.unwrap_or(7);
            if max_n == 0 || max_n > 8 {
                bail!("--max-n must be between 1 and 8");
            }
            out.push('n');
            for st in SpaceType::ALL {
                out.push(',');
                out.push_str(st.label());
            }
            out.push_str(",total\n");
            for n in 1..=max_n {
                let rec = monoid_frequencies(n);
                let cells: Vec<String> = rec.type_counts.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{n},{},{}", cells.join(","), rec.classes);
            }
        }
        TableName::Table8 => {
            let lib = witness_library()?;
            out.push_str("psi,min_n,dual\n");
            for (m, w) in &lib.psi {
                let _ = writeln!(out, "{m},{},{}", w.n, psi_dual(*m)?);
            }
        }
        TableName::Table12 => {
            out.push_str("space,copies,k,kf,completely_full,new_psi\n");
            for key in reference().table12.keys() {
                let base: Vec<&str> = reference().minimal_base(key).unwrap_or_default();
                let t = Topology::from_letter_base(&base)?;
                for copies in 1..=3 {
                    if t.n() * copies > 16 {
                        break;
                    }
                    let r = topsum_report(&t, copies)?;
                    let psi: Vec<String> = r.new_psi.iter().map(u8::to_string).collect();
                    let _ = writeln!(
                        out,
                        "{key},{copies},{},{},{},{}",
                        r.k,
                        r.kf,
                        r.completely_full,
                        psi.join(" ")
                    );
                }
            }
        }
        TableName::Meet => {
            let m = MeetTable::compute()?;
            out.push_str("kind,m,n,meet\n");
            for (kind, table) in [("phi", &m.phi), ("psi", &m.psi)] {
                for (i, row) in table.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        let _ = writeln!(out, "{kind},{},{},{v}", i + 1, j + 1);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(s)) => {
            print!("{s}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
