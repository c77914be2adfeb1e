//! Full rule-space classification runs and reconciliation against the
//! bundled reference tables.
//!
//! The reference tables were digitized as printed, typos and all: some rules
//! are listed twice, some under two contradictory classes. The diff never
//! repairs them — contradictory listings land in their own bucket and every
//! genuine disagreement is itemized with the computed pattern, so the report
//! is an honest reconciliation rather than a fit.

use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[cfg(not(target_arch = "wasm32"))]
use rayon::prelude::*;

use crate::connectivity::{classify_connectivity, ConnectivityClass};
use crate::error::CaError;
use crate::evolve::pattern_after;
use crate::grid::PatternSnapshot;
use crate::rule::RuleMask;
use crate::shape::{classify_shape, ShapeClass};

/// Bundled reference table: shape class per rule.
pub const SHAPE_TABLE_TEXT: &str = include_str!("../data/shape_classes.txt");
/// Bundled reference table: discrete/continuous verdict per rule.
pub const CONNECTIVITY_TABLE_TEXT: &str = include_str!("../data/connectivity_classes.txt");

/// Protocol parameters for a classification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub rows: usize,
    pub cols: usize,
    pub seed: (usize, usize),
    pub iterations: usize,
    pub rules: Vec<RuleMask>,
}

impl Default for CensusConfig {
    /// The published protocol: 80x80 null-boundary grid, seed at (40, 40),
    /// 15 iterations, all 512 rules.
    fn default() -> Self {
        Self {
            rows: 80,
            cols: 80,
            seed: (40, 40),
            iterations: 15,
            rules: RuleMask::all().collect(),
        }
    }
}

impl CensusConfig {
    pub fn validate(&self) -> Result<(), CaError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(CaError::InvalidConfig(format!(
                "grid dimensions {}x{} must be at least 1x1",
                self.rows, self.cols
            )));
        }
        if self.seed.0 >= self.rows || self.seed.1 >= self.cols {
            return Err(CaError::InvalidConfig(format!(
                "seed ({}, {}) outside a {}x{} grid",
                self.seed.0, self.seed.1, self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// One rule's classification under a census run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    #[serde(serialize_with = "serialize_rule")]
    pub rule: RuleMask,
    pub group: u32,
    pub shape: ShapeClass,
    pub connectivity: ConnectivityClass,
    pub cell_count: usize,
    pub touched_boundary: bool,
}

fn serialize_rule<S: serde::Serializer>(rule: &RuleMask, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u16(rule.mask())
}

impl CensusRecord {
    pub fn from_snapshot(snapshot: &PatternSnapshot) -> Self {
        Self {
            rule: snapshot.rule,
            group: snapshot.rule.group(),
            shape: classify_shape(snapshot),
            connectivity: classify_connectivity(snapshot),
            cell_count: snapshot.cell_count(),
            touched_boundary: snapshot.touched_boundary,
        }
    }
}

/// Classifies every configured rule. Records come back in ascending rule
/// order regardless of the parallelism used to produce them.
pub fn run_census(config: &CensusConfig) -> Result<Vec<CensusRecord>, CaError> {
    config.validate()?;
    let mut rules = config.rules.clone();
    rules.sort_unstable();
    rules.dedup();

    let classify = |rule: &RuleMask| {
        let snapshot = pattern_after(
            *rule,
            config.iterations,
            config.rows,
            config.cols,
            config.seed,
        )
        .expect("config was validated");
        CensusRecord::from_snapshot(&snapshot)
    };

    #[cfg(not(target_arch = "wasm32"))]
    let records = rules.par_iter().map(classify).collect();
    #[cfg(target_arch = "wasm32")]
    let records = rules.iter().map(classify).collect();
    Ok(records)
}

/// CSV report: fixed header, one row per rule, LF endings, ASCII only.
pub fn census_csv(records: &[CensusRecord]) -> String {
    let mut out = String::from("rule,group,shape,connectivity,cell_count,touched_boundary\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.rule, r.group, r.shape, r.connectivity, r.cell_count, r.touched_boundary
        ));
    }
    out
}

/// A digitized reference table: labeled rule lists, order preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperTable {
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub label: String,
    pub rules: Vec<RuleMask>,
    pub line: usize,
}

/// Parses the `label: n, n, n` table format. `#` starts a comment.
pub fn parse_table(text: &str) -> Result<PaperTable, CaError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (label, list) = body.split_once(':').ok_or_else(|| CaError::TableParse {
            line,
            message: "expected 'label: rule, rule, ...'".into(),
        })?;
        let label = label.trim();
        if label.is_empty() {
            return Err(CaError::TableParse {
                line,
                message: "empty label".into(),
            });
        }
        let mut rules = Vec::new();
        for token in list.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            let mask: u32 = token.parse().map_err(|_| CaError::TableParse {
                line,
                message: format!("bad rule number {token:?}"),
            })?;
            rules.push(RuleMask::new(mask).map_err(|_| CaError::TableParse {
                line,
                message: format!("rule {mask} out of range 0..=511"),
            })?);
        }
        if rules.is_empty() {
            return Err(CaError::TableParse {
                line,
                message: format!("label {label:?} lists no rules"),
            });
        }
        entries.push(TableEntry {
            label: label.to_string(),
            rules,
            line,
        });
    }
    Ok(PaperTable { entries })
}

/// Which classification a table claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Labels are positional rows; each row is matched to the consensus
    /// computed shape of its members.
    Shape,
    /// Labels carry a `discrete`/`continuous` verdict, compared directly.
    Connectivity,
}

impl TableKind {
    /// Connectivity if every label ends in a verdict word, Shape otherwise.
    pub fn infer(table: &PaperTable) -> TableKind {
        let all_verdicts = table.entries.iter().all(|e| {
            matches!(
                e.label.split_whitespace().last(),
                Some("discrete") | Some("continuous")
            )
        });
        if all_verdicts {
            TableKind::Connectivity
        } else {
            TableKind::Shape
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub rule: u16,
    pub group: u32,
    pub computed: String,
    pub paper_claim: String,
    pub cell_count: usize,
    /// Bounding-box render of the computed pattern, `#` for occupied.
    pub pattern: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Anomaly {
    pub rule: u16,
    pub description: String,
}

/// Reconciliation of a census against one reference table. Every distinct
/// rule the table lists lands in exactly one bucket: agreement,
/// disagreement, or anomaly.
#[derive(Clone, Debug, Serialize)]
pub struct TableDiff {
    pub table: String,
    pub agreements: usize,
    pub clean_listed: usize,
    pub agreement_rate: f64,
    /// Agreement tally keyed by group number, for per-group reporting.
    pub agreements_by_group: BTreeMap<u32, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_consensus: Option<BTreeMap<String, String>>,
    pub disagreements: Vec<Disagreement>,
    pub paper_anomalies: Vec<Anomaly>,
}

impl TableDiff {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diff serializes")
    }
}

/// Occurrence of one rule in a table.
struct Listing {
    label: String,
    claim: String,
}

/// Groups table listings by rule and splits off anomalous rules:
/// contradictory claims, double listings, and (when labels carry a group
/// number) group/popcount mismatches.
fn collect_listings(
    table: &PaperTable,
    claim_of: impl Fn(&TableEntry) -> String,
) -> (BTreeMap<u16, Listing>, Vec<Anomaly>) {
    let mut by_rule: BTreeMap<u16, Vec<Listing>> = BTreeMap::new();
    for entry in &table.entries {
        for &rule in &entry.rules {
            by_rule.entry(rule.mask()).or_default().push(Listing {
                label: entry.label.clone(),
                claim: claim_of(entry),
            });
        }
    }

    let mut clean = BTreeMap::new();
    let mut anomalies = Vec::new();
    for (rule, listings) in by_rule {
        let mut claims: Vec<&str> = listings.iter().map(|l| l.claim.as_str()).collect();
        claims.sort_unstable();
        claims.dedup();
        if claims.len() > 1 {
            let labels: Vec<&str> = listings.iter().map(|l| l.label.as_str()).collect();
            anomalies.push(Anomaly {
                rule,
                description: format!(
                    "listed with contradictory classes: {}",
                    labels.join(" and ")
                ),
            });
            continue;
        }
        if listings.len() > 1 {
            anomalies.push(Anomaly {
                rule,
                description: format!(
                    "listed {} times under {:?}",
                    listings.len(),
                    listings[0].label
                ),
            });
            continue;
        }
        let listing = listings.into_iter().next().expect("one listing");
        if let Some(claimed_group) = label_group(&listing.label) {
            let group = RuleMask::new(rule as u32)
                .expect("parsed rule is valid")
                .group();
            if claimed_group != group {
                anomalies.push(Anomaly {
                    rule,
                    description: format!(
                        "listed under {:?} but rule {rule} reads {group} cells",
                        listing.label
                    ),
                });
                continue;
            }
        }
        clean.insert(rule, listing);
    }
    (clean, anomalies)
}

/// Extracts N from a `group-N ...` label.
fn label_group(label: &str) -> Option<u32> {
    label
        .split_whitespace()
        .next()?
        .strip_prefix("group-")?
        .parse()
        .ok()
}

/// Bounding-box ASCII render of a coordinate set.
fn pattern_lines(coords: &[(usize, usize)]) -> Vec<String> {
    if coords.is_empty() {
        return vec!["(empty)".to_string()];
    }
    let min_r = coords.iter().map(|c| c.0).min().expect("non-empty");
    let max_r = coords.iter().map(|c| c.0).max().expect("non-empty");
    let min_c = coords.iter().map(|c| c.1).min().expect("non-empty");
    let max_c = coords.iter().map(|c| c.1).max().expect("non-empty");
    let mut lines = vec![vec![b'.'; max_c - min_c + 1]; max_r - min_r + 1];
    for &(r, c) in coords {
        lines[r - min_r][c - min_c] = b'#';
    }
    lines
        .into_iter()
        .map(|l| String::from_utf8(l).expect("ascii"))
        .collect()
}

fn disagreement(
    rule: u16,
    record: &CensusRecord,
    computed: String,
    claim: String,
    config: &CensusConfig,
) -> Disagreement {
    let snapshot = pattern_after(
        record.rule,
        config.iterations,
        config.rows,
        config.cols,
        config.seed,
    )
    .expect("config was validated by the census run");
    Disagreement {
        rule,
        group: record.group,
        computed,
        paper_claim: claim,
        cell_count: record.cell_count,
        pattern: pattern_lines(&snapshot.coords),
    }
}

/// Diffs census records against a reference table.
pub fn diff_against_paper(
    records: &[CensusRecord],
    config: &CensusConfig,
    table: &PaperTable,
    kind: TableKind,
) -> Result<TableDiff, CaError> {
    let by_rule: HashMap<u16, &CensusRecord> = records.iter().map(|r| (r.rule.mask(), r)).collect();
    let missing: Vec<u16> = table
        .entries
        .iter()
        .flat_map(|e| e.rules.iter())
        .map(|r| r.mask())
        .filter(|m| !by_rule.contains_key(m))
        .collect();
    if let Some(&rule) = missing.first() {
        return Err(CaError::InvalidConfig(format!(
            "table lists rule {rule} but the census did not classify it"
        )));
    }

    match kind {
        TableKind::Connectivity => {
            let (clean, anomalies) = collect_listings(table, |entry| {
                entry
                    .label
                    .split_whitespace()
                    .last()
                    .expect("labels are non-empty")
                    .to_string()
            });
            let mut diff = empty_diff("connectivity", anomalies);
            for (rule, listing) in &clean {
                let record = by_rule[rule];
                let computed = record.connectivity.to_string();
                if computed == listing.claim {
                    diff.agreements += 1;
                    *diff.agreements_by_group.entry(record.group).or_insert(0) += 1;
                } else {
                    diff.disagreements.push(disagreement(
                        *rule,
                        record,
                        computed,
                        listing.label.clone(),
                        config,
                    ));
                }
            }
            finish_diff(&mut diff, clean.len());
            Ok(diff)
        }
        TableKind::Shape => {
            let (clean, anomalies) = collect_listings(table, |entry| entry.label.clone());
            // Match each positional row to the plurality computed class of
            // its members; ties break toward the smaller class.
            let mut tallies: BTreeMap<&str, BTreeMap<ShapeClass, usize>> = BTreeMap::new();
            for (rule, listing) in &clean {
                *tallies
                    .entry(listing.claim.as_str())
                    .or_default()
                    .entry(by_rule[rule].shape)
                    .or_insert(0) += 1;
            }
            let consensus: BTreeMap<String, ShapeClass> = tallies
                .into_iter()
                .map(|(label, tally)| {
                    let best = tally
                        .into_iter()
                        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                        .expect("row has at least one clean rule");
                    (label.to_string(), best.0)
                })
                .collect();

            let mut diff = empty_diff("shape", anomalies);
            diff.row_consensus = Some(
                consensus
                    .iter()
                    .map(|(label, class)| (label.clone(), class.to_string()))
                    .collect(),
            );
            for (rule, listing) in &clean {
                let record = by_rule[rule];
                let expected = consensus[&listing.claim];
                if record.shape == expected {
                    diff.agreements += 1;
                    *diff.agreements_by_group.entry(record.group).or_insert(0) += 1;
                } else {
                    diff.disagreements.push(disagreement(
                        *rule,
                        record,
                        record.shape.to_string(),
                        format!("{} (consensus {expected})", listing.label),
                        config,
                    ));
                }
            }
            finish_diff(&mut diff, clean.len());
            Ok(diff)
        }
    }
}

fn empty_diff(table: &str, anomalies: Vec<Anomaly>) -> TableDiff {
    TableDiff {
        table: table.to_string(),
        agreements: 0,
        clean_listed: 0,
        agreement_rate: 0.0,
        agreements_by_group: BTreeMap::new(),
        row_consensus: None,
        disagreements: Vec::new(),
        paper_anomalies: anomalies,
    }
}

fn finish_diff(diff: &mut TableDiff, clean_listed: usize) {
    diff.clean_listed = clean_listed;
    diff.agreement_rate = if clean_listed == 0 {
        1.0
    } else {
        diff.agreements as f64 / clean_listed as f64
    };
}
