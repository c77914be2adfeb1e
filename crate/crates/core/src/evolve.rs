//! Synchronous XOR evolution of a grid under a linear rule.
//!
//! The primary path works on whole bit-packed rows: one step under a k-term
//! rule is k shifted-XOR passes over the grid. A per-cell scalar path
//! implements the update equation literally and exists so the two can be
//! checked against each other.
//!
//! Sign convention: a rule that reads the neighbor at offset `(dr, dc)`
//! moves a lone seed by `(-dr, -dc)` each step — the pattern flows opposite
//! the read direction. Rule 2 reads the right neighbor, so a seed slides one
//! column left per step.

use crate::error::CaError;
use crate::grid::{Grid, PatternSnapshot};
use crate::rule::RuleMask;

/// One synchronous step; every cell updates from the old grid.
pub fn step(grid: &Grid, rule: RuleMask) -> Grid {
    let rows = grid.rows();
    let words = grid.words_per_row();
    let tail = grid.tail_mask();
    let offsets = rule.offsets();
    let mut out = Grid::new(rows, grid.cols()).expect("source grid has valid dimensions");
    let mut acc = vec![0u64; words];

    for r in 0..rows {
        acc.fill(0);
        for off in &offsets {
            let src_row = r as i64 + off.dr as i64;
            if src_row < 0 || src_row >= rows as i64 {
                continue; // null boundary: missing rows contribute nothing
            }
            let src = grid.row_words(src_row as usize);
            match off.dc {
                0 => {
                    for i in 0..words {
                        acc[i] ^= src[i];
                    }
                }
                // dst[c] = src[c+1]: funnel toward lower bit indices.
                1 => {
                    for i in 0..words {
                        let mut lane = src[i] >> 1;
                        if i + 1 < words {
                            lane |= src[i + 1] << 63;
                        }
                        acc[i] ^= lane;
                    }
                }
                // dst[c] = src[c-1]: funnel toward higher bit indices.
                -1 => {
                    for i in 0..words {
                        let mut lane = src[i] << 1;
                        if i > 0 {
                            lane |= src[i - 1] >> 63;
                        }
                        acc[i] ^= lane;
                    }
                }
                other => unreachable!("neighborhood offsets are within ±1, got {other}"),
            }
        }
        let out_row = out.row_words_mut(r);
        out_row.copy_from_slice(&acc);
        out_row[words - 1] &= tail;
    }
    out
}

/// Per-cell reference step: the update equation applied literally.
pub fn step_scalar(grid: &Grid, rule: RuleMask) -> Grid {
    let offsets = rule.offsets();
    let mut out = Grid::new(grid.rows(), grid.cols()).expect("source grid has valid dimensions");
    for r in 0..grid.rows() {
        for c in 0..grid.cols() {
            let mut next = false;
            for off in &offsets {
                next ^= grid.get(r as i64 + off.dr as i64, c as i64 + off.dc as i64);
            }
            out.set(r, c, next).expect("in range");
        }
    }
    out
}

/// Applies `steps` synchronous steps. The returned flag is true iff any
/// state, from the initial grid through the last step, occupied the
/// outermost ring — when it is false the run behaved exactly as on an
/// unbounded grid.
pub fn evolve(grid: &Grid, rule: RuleMask, steps: usize) -> (Grid, bool) {
    let mut state = grid.clone();
    let mut touched = state.boundary_occupied();
    for _ in 0..steps {
        state = step(&state, rule);
        touched |= state.boundary_occupied();
    }
    (state, touched)
}

/// Seeds a fresh grid, evolves it, and snapshots the result.
pub fn pattern_after(
    rule: RuleMask,
    steps: usize,
    rows: usize,
    cols: usize,
    seed: (usize, usize),
) -> Result<PatternSnapshot, CaError> {
    let mut grid = Grid::new(rows, cols)?;
    grid.place_seed(seed.0, seed.1)?;
    let (end, touched) = evolve(&grid, rule, steps);
    Ok(end.snapshot(steps, rule, touched))
}

/// The n-step influence stencil of a rule: the cells a lone interior seed
/// occupies after n steps, relative to the seed. Because the rules are
/// linear and shift-invariant away from boundaries, any boundary-free
/// evolution is the initial state convolved (over GF(2)) with this stencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    /// Seed-relative occupied cells, sorted row-major.
    pub points: Vec<(i32, i32)>,
}

impl Kernel {
    /// Every point scaled by an integer factor.
    pub fn dilated(&self, factor: i32) -> Kernel {
        let mut points: Vec<_> = self
            .points
            .iter()
            .map(|&(dr, dc)| (dr * factor, dc * factor))
            .collect();
        points.sort_unstable();
        Kernel { points }
    }
}

/// Evolves a lone seed for `steps` steps on a (2n+3)-sized grid, where the
/// boundary is provably out of reach, and returns the occupied cells
/// relative to the seed.
pub fn kernel(rule: RuleMask, steps: usize) -> Kernel {
    let size = 2 * steps + 3;
    let center = steps + 1;
    let mut grid = Grid::new(size, size).expect("kernel grid dimensions are valid");
    grid.place_seed(center, center).expect("center is in range");
    let (end, touched) = evolve(&grid, rule, steps);
    assert!(
        !touched,
        "kernel evolution reached the boundary, which a (2n+3)-sized grid makes impossible"
    );
    let points = end
        .snapshot(steps, rule, touched)
        .coords
        .into_iter()
        .map(|(r, c)| (r as i32 - center as i32, c as i32 - center as i32))
        .collect();
    Kernel { points }
}
