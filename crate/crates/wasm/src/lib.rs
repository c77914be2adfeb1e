//! Browser bindings: evolve a pattern to a bitmap, classify a rule, and
//! sweep the whole rule space, each returning plain data the page can
//! render without further engine knowledge.

use wasm_bindgen::prelude::*;

use xorca::{
    census_csv, convex_hull, pattern_after, run_census, CensusConfig, CensusRecord, RuleMask,
};

fn build_rule(rule: u32) -> Result<RuleMask, String> {
    RuleMask::new(rule).map_err(|e| e.to_string())
}

fn snapshot(
    rule: u32,
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<xorca::PatternSnapshot, String> {
    pattern_after(
        build_rule(rule)?,
        steps as usize,
        rows as usize,
        cols as usize,
        (seed_r as usize, seed_c as usize),
    )
    .map_err(|e| e.to_string())
}

/// Row-major 0/1 bitmap of the pattern after `steps` iterations.
fn evolve_bitmap(
    rule: u32,
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<Vec<u8>, String> {
    let snap = snapshot(rule, steps, rows, cols, seed_r, seed_c)?;
    let mut bitmap = vec![0u8; rows as usize * cols as usize];
    for &(r, c) in &snap.coords {
        bitmap[r * cols as usize + c] = 1;
    }
    Ok(bitmap)
}

/// JSON verdict: rule, group, shape, connectivity, cell count, boundary
/// flag, and the hull vertices for overlay drawing.
fn classify_json(
    rule: u32,
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<String, String> {
    let snap = snapshot(rule, steps, rows, cols, seed_r, seed_c)?;
    let record = CensusRecord::from_snapshot(&snap);
    let points: Vec<(i64, i64)> = snap
        .coords
        .iter()
        .map(|&(r, c)| (r as i64, c as i64))
        .collect();
    let hull: Vec<[i64; 2]> = match convex_hull(&points) {
        Ok(hull) => hull.vertices.iter().map(|&(r, c)| [r, c]).collect(),
        Err(_) => Vec::new(),
    };
    Ok(serde_json::json!({
        "rule": record.rule.mask(),
        "group": record.group,
        "shape": record.shape.to_string(),
        "connectivity": record.connectivity.to_string(),
        "cell_count": record.cell_count,
        "touched_boundary": record.touched_boundary,
        "hull": hull,
    })
    .to_string())
}

/// JSON array with one `{rule, group, shape, connectivity, cells}` entry
/// per rule, for the whole 512-rule sweep.
fn census_json(
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<String, String> {
    let config = CensusConfig {
        rows: rows as usize,
        cols: cols as usize,
        seed: (seed_r as usize, seed_c as usize),
        iterations: steps as usize,
        ..CensusConfig::default()
    };
    let records = run_census(&config).map_err(|e| e.to_string())?;
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            serde_json::json!({
                "rule": r.rule.mask(),
                "group": r.group,
                "shape": r.shape.to_string(),
                "connectivity": r.connectivity.to_string(),
                "cells": r.cell_count,
            })
        })
        .collect();
    Ok(serde_json::Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn evolve_cells(
    rule: u32,
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<Vec<u8>, JsError> {
    evolve_bitmap(rule, steps, rows, cols, seed_r, seed_c).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify_rule(
    rule: u32,
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<String, JsError> {
    classify_json(rule, steps, rows, cols, seed_r, seed_c).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census_summary(
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<String, JsError> {
    census_json(steps, rows, cols, seed_r, seed_c).map_err(|e| JsError::new(&e))
}

/// CSV identical to the command-line census report.
#[wasm_bindgen]
pub fn census_csv_text(
    steps: u32,
    rows: u32,
    cols: u32,
    seed_r: u32,
    seed_c: u32,
) -> Result<String, JsError> {
    let config = CensusConfig {
        rows: rows as usize,
        cols: cols as usize,
        seed: (seed_r as usize, seed_c as usize),
        iterations: steps as usize,
        ..CensusConfig::default()
    };
    let records = run_census(&config).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(census_csv(&records))
}
