use std::io::{self, Read, Write};
use std::process::ExitCode;

use arf_cli::formats::{parse_tree, write_table, ParsedTree, ReportJson, TreeJson};
use arf_cli::render;
use arf_core::genusr::{ng_with, GenusError, GenusTable, DEFAULT_TWISTED_RANK_CAP};
use arf_core::verify::{
    brute_force_genus_trees, chain_genus, check_arf_axiom, check_good_axioms, default_box, Report,
};
use arf_core::{brute_force_genus, enumerate_genus};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const JOBS_ENV: &str = "ARF_ENUM_JOBS";

#[derive(Parser)]
#[command(name = "arf", version, about = "Arf semigroups of N^r by genus")]
struct Cli {
    /// Worker threads for enumeration; ARF_ENUM_JOBS takes precedence.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity sequences of a given genus.
    Gen1 {
        #[arg(long, short = 'n')]
        genus: u32,
        #[arg(long)]
        count: bool,
        /// One sequence per line instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Untwisted trees of rank r and genus n, or all trees with --twisted.
    Genr {
        #[arg(short = 'r', long = "rank", value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        #[arg(short = 'n', long = "genus")]
        genus: u32,
        #[arg(long)]
        twisted: bool,
        /// Largest rank expanded over all branch permutations.
        #[arg(long, default_value_t = DEFAULT_TWISTED_RANK_CAP)]
        cap: usize,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Count table as CSV, ranks as rows and genera as columns.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rmax: u32,
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        twisted: bool,
        #[arg(long, default_value_t = DEFAULT_TWISTED_RANK_CAP)]
        cap: usize,
        /// Append the row of totals over all ranks.
        #[arg(long)]
        ng: bool,
    },
    /// Draw the nodes of a tree given as JSON.
    Render {
        /// Tree JSON; read from --input or stdin when absent.
        #[arg(long)]
        tree: Option<String>,
        #[arg(long, conflicts_with = "tree")]
        input: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Cross-check Gen(r, n) against the independent oracles.
    Verify {
        #[arg(short = 'r', long = "rank", value_parser = clap::value_parser!(u32).range(1..))]
        rank: u32,
        #[arg(short = 'n', long = "genus")]
        genus: u32,
        #[arg(long, value_enum, default_value_t = Level::Full)]
        level: Level,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Level {
    /// Oracle equivalence and chain genus.
    Quick,
    /// Also the good and Arf axioms.
    Full,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<GenusError> for Failure {
    fn from(e: GenusError) -> Self {
        let code = match e {
            GenusError::RankTooLargeForTwisted { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = match std::env::var(JOBS_ENV) {
        Ok(v) => match v.parse::<usize>() {
            Ok(j) => Some(j),
            Err(_) => {
                eprintln!("error: {JOBS_ENV} must be a thread count, got {v:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.jobs,
    };
    if let Some(j) = jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8, Failure> {
    match command {
        Command::Gen1 { genus, count, pretty } => {
            let all = enumerate_genus(genus);
            if count {
                writeln!(out, "{}", all.len())?;
            } else if pretty {
                for m in &all {
                    writeln!(out, "{m}")?;
                }
            } else {
                let json: Vec<&[u32]> = all.iter().map(|m| m.entries()).collect();
                writeln!(out, "{}", to_json(&json))?;
            }
            Ok(0)
        }
        Command::Genr { rank, genus, twisted, cap, count, pretty } => {
            let r = rank as usize;
            let mut table = GenusTable::new(genus)?;
            if twisted {
                if count {
                    writeln!(out, "{}", table.count_all(r, genus, cap)?)?;
                    return Ok(0);
                }
                let all = table.all_trees(r, genus, cap)?;
                if pretty {
                    for m in &all {
                        let rows: Vec<String> = m.rows().iter().map(|row| format!("{row:?}")).collect();
                        let seqs: Vec<String> = m.sequences().iter().map(|s| s.to_string()).collect();
                        writeln!(out, "({}) levels={}", seqs.join(","), rows.join(""))?;
                    }
                } else {
                    let json: Vec<TreeJson> = all.iter().map(TreeJson::from).collect();
                    writeln!(out, "{}", to_json(&json))?;
                }
            } else if count {
                writeln!(out, "{}", table.count(r, genus)?)?;
            } else {
                let all = table.trees(r, genus)?;
                if pretty {
                    for t in &all {
                        writeln!(out, "{t}")?;
                    }
                } else {
                    let json: Vec<TreeJson> = all.iter().map(TreeJson::from).collect();
                    writeln!(out, "{}", to_json(&json))?;
                }
            }
            Ok(0)
        }
        Command::Table { rmax, nmax, twisted, cap, ng } => {
            let mut table = GenusTable::new(nmax)?;
            let mut rows = Vec::new();
            for r in 1..=rmax as usize {
                let row = (0..=nmax)
                    .map(|n| if twisted { table.count_all(r, n, cap) } else { table.count(r, n) })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
            }
            let mut extra = Vec::new();
            if ng {
                let totals = (0..=nmax)
                    .map(|n| ng_with(&mut table, n))
                    .collect::<Result<Vec<_>, _>>()?;
                extra.push(("NG", totals));
            }
            write_table(&mut *out, &rows, &extra).map_err(|e| Failure::usage(e.to_string()))?;
            Ok(0)
        }
        Command::Render { tree, input, format } => {
            let text = match (tree, input) {
                (Some(t), _) => t,
                (None, Some(path)) => std::fs::read_to_string(path)?,
                (None, None) => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let grid = match parse_tree(&text).map_err(|e| Failure::usage(e.0))? {
                ParsedTree::Untwisted(t) => t.node_grid(),
                ParsedTree::Matrix(m) => m.node_grid(),
            };
            let drawing = match format {
                RenderFormat::Dot => render::dot(&grid),
                RenderFormat::Ascii => render::ascii(&grid),
            };
            out.write_all(drawing.as_bytes())?;
            Ok(0)
        }
        Command::Verify { rank, genus, level, pretty } => {
            let summary = verify(rank as usize, genus, level)?;
            if pretty {
                let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
                writeln!(out, "trees: {}", summary.trees)?;
                writeln!(out, "oracle: {}", mark(summary.oracle.passed))?;
                writeln!(out, "chain genus: {}", mark(summary.chain_genus.passed))?;
                if let Some(a) = &summary.axioms {
                    writeln!(
                        out,
                        "axioms: {} ({} checked, {} unchecked, {} violations)",
                        mark(a.report.violations.is_empty() && a.local),
                        a.report.checked,
                        a.report.unchecked,
                        a.report.violations.len()
                    )?;
                }
                writeln!(out, "{}", mark(summary.passed))?;
            } else {
                writeln!(out, "{}", to_json(&summary))?;
            }
            Ok(if summary.passed { 0 } else { 1 })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

#[derive(Serialize)]
struct OracleSummary {
    passed: bool,
    enumerated: usize,
    brute_force: usize,
}

#[derive(Serialize)]
struct ChainSummary {
    passed: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct AxiomSummary {
    #[serde(flatten)]
    report: ReportJson,
    local: bool,
}

#[derive(Serialize)]
struct VerifySummary {
    rank: usize,
    genus: u32,
    level: Level,
    trees: usize,
    oracle: OracleSummary,
    chain_genus: ChainSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    axioms: Option<AxiomSummary>,
    passed: bool,
}

fn verify(r: usize, n: u32, level: Level) -> Result<VerifySummary, Failure> {
    let trees = GenusTable::new(n)?.trees(r, n)?;
    let slow = brute_force_genus_trees(r, n);
    let mut oracle_ok = trees == slow;
    if r == 1 {
        oracle_ok &= enumerate_genus(n) == brute_force_genus(n);
    }

    let mut failures = Vec::new();
    for t in &trees {
        match chain_genus(t) {
            Ok(g) if g == t.genus() && g == u64::from(n) => {}
            Ok(g) => failures.push(format!("{t}: chain genus {g}, tree genus {}", t.genus())),
            Err(e) => failures.push(format!("{t}: {e}")),
        }
    }

    let axioms = match level {
        Level::Quick => None,
        Level::Full => {
            let mut total = Report { local: true, ..Report::default() };
            for t in &trees {
                let s = t
                    .expand_semigroup(&default_box(&t.conductor()))
                    .map_err(|e| Failure { code: 1, message: format!("{t}: {e}") })?;
                total.merge(check_good_axioms(&s));
                total.merge(check_arf_axiom(&s));
            }
            Some(AxiomSummary { report: ReportJson::from(&total), local: total.local })
        }
    };

    let passed = oracle_ok
        && failures.is_empty()
        && axioms.as_ref().map_or(true, |a| a.report.violations.is_empty() && a.local);
    Ok(VerifySummary {
        rank: r,
        genus: n,
        level,
        trees: trees.len(),
        oracle: OracleSummary { passed: oracle_ok, enumerated: trees.len(), brute_force: slow.len() },
        chain_genus: ChainSummary { passed: failures.is_empty(), failures },
        axioms,
        passed,
    })
}
