//! Command-line front end: evolve and render patterns, classify rules,
//! run the full census, reconcile against the bundled reference tables,
//! and evaluate rule-space counts.
//!
//! Exit codes: 0 success, 1 I/O or data error, 2 usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xorca::census::{CONNECTIVITY_TABLE_TEXT, SHAPE_TABLE_TEXT};
use xorca::*;

#[derive(Parser)]
#[command(
    name = "xorca",
    version,
    about = "2-D nine-neighborhood XOR cellular automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a single seed under one rule and render the result.
    Evolve(EvolveArgs),
    /// One-line classification verdict for one rule.
    Classify(ClassifyArgs),
    /// Classify a set of rules and write a CSV report.
    Census(CensusArgs),
    /// Reconcile a census against a reference table, emitting a JSON diff.
    Diff(DiffArgs),
    /// Evaluate rule-space counting formulas exactly.
    #[command(subcommand)]
    Count(CountCommand),
}

/// Grid and protocol flags shared by the pattern commands.
#[derive(Args)]
struct Geometry {
    /// Grid height.
    #[arg(long, default_value_t = 80)]
    rows: usize,
    /// Grid width.
    #[arg(long, default_value_t = 80)]
    cols: usize,
    /// Seed row.
    #[arg(long, default_value_t = 40)]
    seed_r: usize,
    /// Seed column.
    #[arg(long, default_value_t = 40)]
    seed_c: usize,
    /// Iteration count.
    #[arg(long, default_value_t = 15, conflicts_with = "k")]
    n: usize,
    /// Shorthand: run for 2^k - 1 iterations.
    #[arg(long)]
    k: Option<u32>,
}

impl Geometry {
    fn iterations(&self) -> Result<usize, String> {
        match self.k {
            None => Ok(self.n),
            Some(k) => 1usize
                .checked_shl(k)
                .map(|n| n - 1)
                .ok_or_else(|| format!("--k {k} overflows the iteration count")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Pbm,
}

#[derive(Args)]
struct EvolveArgs {
    /// Rule number, 0-511.
    #[arg(long)]
    rule: RuleMask,
    #[command(flatten)]
    geometry: Geometry,
    /// Output raster format.
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Rule number, 0-511.
    #[arg(long)]
    rule: RuleMask,
    #[command(flatten)]
    geometry: Geometry,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    /// Rules to classify, e.g. "3,5,18-20". Defaults to all 512.
    #[arg(long)]
    rules: Option<String>,
    #[command(flatten)]
    geometry: Geometry,
    /// CSV output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reference table to reconcile against (repeatable). Requires --out;
    /// each diff lands next to the CSV as `<out-stem>.<table-stem>.diff.json`.
    #[arg(long = "paper-table", requires = "out")]
    paper_table: Vec<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableChoice {
    Shape,
    Connectivity,
}

#[derive(Args)]
struct DiffArgs {
    /// Which bundled reference table to reconcile against.
    #[arg(long, value_enum)]
    table: TableChoice,
    /// External table file overriding the bundled one.
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    geometry: Geometry,
    /// JSON output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CountCommand {
    /// states^(states^neighborhood)
    Uniform {
        #[arg(long)]
        states: u64,
        #[arg(long)]
        neighborhood: u32,
    },
    /// uniform count raised to the array length
    Hybrid {
        #[arg(long)]
        states: u64,
        #[arg(long)]
        neighborhood: u32,
        #[arg(long)]
        length: u64,
    },
    /// hybrid count raised to the number of time steps
    HybridTime {
        #[arg(long)]
        states: u64,
        #[arg(long)]
        neighborhood: u32,
        #[arg(long)]
        length: u64,
        #[arg(long)]
        time: u64,
    },
    /// product of per-cell uniform counts, raised to the time steps
    Heterogeneous {
        /// Per-cell "states,neighborhood" pairs, repeatable.
        #[arg(long = "cell", required = true)]
        cells: Vec<String>,
        #[arg(long, default_value_t = 1)]
        time: u64,
    },
    /// 2^size: XOR rules over a neighborhood of the given size
    Linear {
        #[arg(long)]
        neighborhood: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Evolve(args) => {
            let snapshot = run_pattern(&args.geometry, args.rule)?;
            let grid = grid_of(&snapshot)?;
            let rendered = match args.format {
                Format::Ascii => grid.to_ascii(),
                Format::Pbm => grid.to_pbm(),
            };
            emit(args.out.as_deref(), &rendered)
        }
        Command::Classify(args) => {
            let snapshot = run_pattern(&args.geometry, args.rule)?;
            let record = CensusRecord::from_snapshot(&snapshot);
            let line = format!(
                "{},{},{},{},{}\n",
                record.rule, record.group, record.shape, record.connectivity, record.cell_count
            );
            emit(args.out.as_deref(), &line)
        }
        Command::Census(args) => {
            let config = census_config(&args.geometry, args.rules.as_deref())?;
            let records = run_census(&config).map_err(|e| e.to_string())?;
            let csv = census_csv(&records);
            match &args.out {
                None => emit(None, &csv)?,
                Some(out) => {
                    write_file(out, &csv)?;
                    for table_path in &args.paper_table {
                        let diff = diff_table_file(&records, &config, table_path)?;
                        let diff_path = sibling_diff_path(out, table_path);
                        write_file(&diff_path, &diff.to_json())?;
                        println!(
                            "{}: {}/{} agree, {} disagreements, {} anomalies -> {}",
                            diff.table,
                            diff.agreements,
                            diff.clean_listed,
                            diff.disagreements.len(),
                            diff.paper_anomalies.len(),
                            diff_path.display()
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Diff(args) => {
            let config = census_config(&args.geometry, None)?;
            let records = run_census(&config).map_err(|e| e.to_string())?;
            let diff = match &args.file {
                Some(path) => diff_table_file(&records, &config, path)?,
                None => {
                    let (text, kind) = match args.table {
                        TableChoice::Shape => (SHAPE_TABLE_TEXT, TableKind::Shape),
                        TableChoice::Connectivity => {
                            (CONNECTIVITY_TABLE_TEXT, TableKind::Connectivity)
                        }
                    };
                    let table = parse_table(text).map_err(|e| e.to_string())?;
                    diff_against_paper(&records, &config, &table, kind)
                        .map_err(|e| e.to_string())?
                }
            };
            emit(args.out.as_deref(), &(diff.to_json() + "\n"))
        }
        Command::Count(count) => {
            let value = match count {
                CountCommand::Uniform {
                    states,
                    neighborhood,
                } => combinatorics::count_uniform(states, neighborhood),
                CountCommand::Hybrid {
                    states,
                    neighborhood,
                    length,
                } => combinatorics::count_hybrid(states, neighborhood, length),
                CountCommand::HybridTime {
                    states,
                    neighborhood,
                    length,
                    time,
                } => combinatorics::count_hybrid_time(states, neighborhood, length, time),
                CountCommand::Heterogeneous { cells, time } => {
                    let cells = cells
                        .iter()
                        .map(|spec| parse_cell(spec))
                        .collect::<Result<Vec<_>, _>>()?;
                    combinatorics::count_heterogeneous_time(&cells, time)
                }
                CountCommand::Linear { neighborhood } => {
                    combinatorics::linear_rule_count(neighborhood)
                }
            }
            .map_err(|e| e.to_string())?;

            let mut text = value.to_string();
            if text.len() > 6 {
                // ASCII-only output; "~" marks the scientific approximation.
                let _ = write!(text, "\n~ {}", combinatorics::scientific(&value));
            }
            text.push('\n');
            emit(None, &text)
        }
    }
}

fn run_pattern(geometry: &Geometry, rule: RuleMask) -> Result<PatternSnapshot, String> {
    let n = geometry.iterations()?;
    pattern_after(
        rule,
        n,
        geometry.rows,
        geometry.cols,
        (geometry.seed_r, geometry.seed_c),
    )
    .map_err(|e| e.to_string())
}

/// Rebuilds the grid from a snapshot for rendering.
fn grid_of(snapshot: &PatternSnapshot) -> Result<Grid, String> {
    let mut grid = Grid::new(snapshot.rows, snapshot.cols).map_err(|e| e.to_string())?;
    for &(r, c) in &snapshot.coords {
        grid.set(r, c, true).map_err(|e| e.to_string())?;
    }
    Ok(grid)
}

fn census_config(geometry: &Geometry, rules: Option<&str>) -> Result<CensusConfig, String> {
    let mut config = CensusConfig {
        rows: geometry.rows,
        cols: geometry.cols,
        seed: (geometry.seed_r, geometry.seed_c),
        iterations: geometry.iterations()?,
        ..CensusConfig::default()
    };
    if let Some(spec) = rules {
        config.rules = parse_rule_list(spec)?;
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

/// Parses "3,5,18-20" into an ascending, deduplicated rule list.
fn parse_rule_list(spec: &str) -> Result<Vec<RuleMask>, String> {
    let mut rules = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let parse = |s: &str| -> Result<u32, String> {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad rule {s:?} in --rules"))
        };
        match token.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(format!("backwards range {token:?} in --rules"));
                }
                for mask in lo..=hi {
                    rules.push(RuleMask::new(mask).map_err(|e| e.to_string())?);
                }
            }
            None => rules.push(RuleMask::new(parse(token)?).map_err(|e| e.to_string())?),
        }
    }
    if rules.is_empty() {
        return Err("--rules lists no rules".into());
    }
    rules.sort_unstable();
    rules.dedup();
    Ok(rules)
}

fn parse_cell(spec: &str) -> Result<(u64, u32), String> {
    let (states, neighborhood) = spec
        .split_once(',')
        .ok_or_else(|| format!("bad --cell {spec:?}: expected \"states,neighborhood\""))?;
    Ok((
        states
            .trim()
            .parse()
            .map_err(|_| format!("bad states in --cell {spec:?}"))?,
        neighborhood
            .trim()
            .parse()
            .map_err(|_| format!("bad neighborhood in --cell {spec:?}"))?,
    ))
}

fn diff_table_file(
    records: &[CensusRecord],
    config: &CensusConfig,
    path: &Path,
) -> Result<TableDiff, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let table = parse_table(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let kind = TableKind::infer(&table);
    diff_against_paper(records, config, &table, kind).map_err(|e| e.to_string())
}

fn sibling_diff_path(out: &Path, table: &Path) -> PathBuf {
    let out_stem = out.file_stem().unwrap_or_default().to_string_lossy();
    let table_stem = table.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{out_stem}.{table_stem}.diff.json"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => write_file(path, text),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}
