//! Fixed-size binary grid with null-boundary semantics.
//!
//! Rows are bit-packed into 64-bit lanes so that one evolution step reduces
//! to a handful of shifted XORs per row. Cells outside the grid always read
//! as 0; nothing ever wraps.

use crate::error::CaError;
use crate::rule::RuleMask;

const LANE_BITS: usize = 64;

/// Row-major bit-packed binary grid. Column `c` of a row lives in word
/// `c / 64`, bit `c % 64`. Bits at or above `cols` in the last word of a
/// row are kept zero at all times.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grid {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Grid {
    /// All-zero grid. Dimensions must be at least 1x1 and small enough for
    /// the backing store to be addressable.
    pub fn new(rows: usize, cols: usize) -> Result<Self, CaError> {
        if rows == 0 || cols == 0 {
            return Err(CaError::InvalidDimensions { rows, cols });
        }
        let words_per_row = cols.div_ceil(LANE_BITS);
        let words = rows
            .checked_mul(words_per_row)
            .filter(|&w| w <= isize::MAX as usize / 8)
            .ok_or(CaError::InvalidDimensions { rows, cols })?;
        Ok(Self {
            rows,
            cols,
            words_per_row,
            bits: vec![0; words],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reads a cell. Out-of-range coordinates read as 0 (null boundary), so
    /// callers may probe neighbors without range checks.
    pub fn get(&self, row: i64, col: i64) -> bool {
        if row < 0 || col < 0 || row as usize >= self.rows || col as usize >= self.cols {
            return false;
        }
        let (r, c) = (row as usize, col as usize);
        self.bits[r * self.words_per_row + c / LANE_BITS] >> (c % LANE_BITS) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) -> Result<(), CaError> {
        if row >= self.rows || col >= self.cols {
            return Err(CaError::OutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let word = &mut self.bits[row * self.words_per_row + col / LANE_BITS];
        if value {
            *word |= 1 << (col % LANE_BITS);
        } else {
            *word &= !(1 << (col % LANE_BITS));
        }
        Ok(())
    }

    /// Turns a single cell on. Idempotent.
    pub fn place_seed(&mut self, row: usize, col: usize) -> Result<(), CaError> {
        self.set(row, col, true)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True if any cell on the outermost ring is set.
    pub fn boundary_occupied(&self) -> bool {
        let first = self.row_words(0);
        let last = self.row_words(self.rows - 1);
        if first.iter().any(|&w| w != 0) || last.iter().any(|&w| w != 0) {
            return true;
        }
        let edge_word = (self.cols - 1) / LANE_BITS;
        let edge_bit = (self.cols - 1) % LANE_BITS;
        for r in 0..self.rows {
            let row = self.row_words(r);
            if row[0] & 1 == 1 || row[edge_word] >> edge_bit & 1 == 1 {
                return true;
            }
        }
        false
    }

    /// Occupied coordinates at a given iteration, with run metadata.
    pub fn snapshot(
        &self,
        iteration: usize,
        rule: RuleMask,
        touched_boundary: bool,
    ) -> PatternSnapshot {
        let mut coords = Vec::with_capacity(self.count_ones());
        for r in 0..self.rows {
            for (wi, &word) in self.row_words(r).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let bit = w.trailing_zeros() as usize;
                    coords.push((r, wi * LANE_BITS + bit));
                    w &= w - 1;
                }
            }
        }
        PatternSnapshot {
            coords,
            rows: self.rows,
            cols: self.cols,
            iteration,
            rule,
            touched_boundary,
        }
    }

    /// One text row per grid row, `#` for set cells, `.` for clear.
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r as i64, c as i64) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    /// PBM P1 raster: magic line, `width height` line, then one line of
    /// `0`/`1` digits per grid row, top row first.
    pub fn to_pbm(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1) + 16);
        out.push_str("P1\n");
        out.push_str(&format!("{} {}\n", self.cols, self.rows));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r as i64, c as i64) {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }

    /// Parses PBM P1 text. Accepts any whitespace layout and `#` comments,
    /// per the netpbm format.
    pub fn from_pbm(text: &str) -> Result<Self, CaError> {
        let mut tokens = text.lines().flat_map(|line| {
            let body = line.split('#').next().unwrap_or("");
            body.split_whitespace()
        });
        match tokens.next() {
            Some("P1") => {}
            other => {
                return Err(CaError::PbmParse(format!(
                    "expected magic 'P1', found {:?}",
                    other.unwrap_or("")
                )))
            }
        }
        let mut dim = |name: &str| -> Result<usize, CaError> {
            tokens
                .next()
                .ok_or_else(|| CaError::PbmParse(format!("missing {name}")))?
                .parse()
                .map_err(|_| CaError::PbmParse(format!("bad {name}")))
        };
        let cols = dim("width")?;
        let rows = dim("height")?;
        let mut grid = Grid::new(rows, cols)?;
        let mut filled = 0usize;
        for token in tokens {
            // P1 rasters may pack digits without separators.
            for ch in token.chars() {
                let value = match ch {
                    '0' => false,
                    '1' => true,
                    _ => return Err(CaError::PbmParse(format!("bad raster char {ch:?}"))),
                };
                if filled >= rows * cols {
                    return Err(CaError::PbmParse("raster longer than dimensions".into()));
                }
                grid.set(filled / cols, filled % cols, value)?;
                filled += 1;
            }
        }
        if filled != rows * cols {
            return Err(CaError::PbmParse(format!(
                "raster has {filled} cells, expected {}",
                rows * cols
            )));
        }
        Ok(grid)
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    pub(crate) fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub(crate) fn row_words_mut(&mut self, row: usize) -> &mut [u64] {
        &mut self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    /// Mask clearing the unused high bits of a row's last word.
    pub(crate) fn tail_mask(&self) -> u64 {
        match self.cols % LANE_BITS {
            0 => !0,
            n => (1u64 << n) - 1,
        }
    }

    /// Cell-wise XOR of two same-size grids.
    pub fn xor(&self, other: &Grid) -> Result<Grid, CaError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CaError::InvalidDimensions {
                rows: other.rows,
                cols: other.cols,
            });
        }
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w ^= o;
        }
        Ok(out)
    }
}

/// The set of occupied cells at one iteration, plus the metadata needed to
/// interpret it. `touched_boundary` is true iff any state from the initial
/// grid through this iteration had a cell on the outermost ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSnapshot {
    /// Occupied cells in row-major order, no duplicates.
    pub coords: Vec<(usize, usize)>,
    pub rows: usize,
    pub cols: usize,
    pub iteration: usize,
    pub rule: RuleMask,
    pub touched_boundary: bool,
}

impl PatternSnapshot {
    pub fn cell_count(&self) -> usize {
        self.coords.len()
    }
}
