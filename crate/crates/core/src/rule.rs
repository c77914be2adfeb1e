//! Rule numbering for the 512 linear (XOR) rules on the nine-cell neighborhood.
//!
//! Each of the nine neighborhood positions carries a power-of-two weight:
//!
//! ```text
//!  64 128 256
//!  32   1   2
//!  16   8   4
//! ```
//!
//! A rule's number is the sum of the weights of the cells it reads, so rule
//! 21 = 16 + 4 + 1 reads itself, its bottom-right and its bottom-left
//! neighbor. Bit `b` of the mask selects the position weighted `2^b`.

use std::fmt;
use std::str::FromStr;

use crate::error::CaError;

/// Relative position of a neighborhood cell. Rows grow downward, columns
/// grow rightward; `(0, 0)` is the cell being updated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighborOffset {
    pub dr: i32,
    pub dc: i32,
}

impl NeighborOffset {
    pub const fn new(dr: i32, dc: i32) -> Self {
        Self { dr, dc }
    }
}

/// Offsets indexed by mask bit: entry `b` is the cell weighted `2^b`.
const OFFSET_BY_BIT: [NeighborOffset; 9] = [
    NeighborOffset::new(0, 0),   // 1: self
    NeighborOffset::new(0, 1),   // 2: right
    NeighborOffset::new(1, 1),   // 4: bottom-right
    NeighborOffset::new(1, 0),   // 8: bottom
    NeighborOffset::new(1, -1),  // 16: bottom-left
    NeighborOffset::new(0, -1),  // 32: left
    NeighborOffset::new(-1, -1), // 64: top-left
    NeighborOffset::new(-1, 0),  // 128: top
    NeighborOffset::new(-1, 1),  // 256: top-right
];

/// Number of linear rules: every subset of the nine cells.
pub const RULE_COUNT: u32 = 512;

/// Maps a position weight to the neighbor it selects.
pub fn weight_to_offset(weight: u32) -> Result<NeighborOffset, CaError> {
    if weight == 0 || weight > 256 || !weight.is_power_of_two() {
        return Err(CaError::InvalidWeight(weight));
    }
    Ok(OFFSET_BY_BIT[weight.trailing_zeros() as usize])
}

/// A linear rule, identified by its 9-bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleMask(u16);

impl RuleMask {
    pub fn new(mask: u32) -> Result<Self, CaError> {
        if mask >= RULE_COUNT {
            return Err(CaError::InvalidRule(mask));
        }
        Ok(Self(mask as u16))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// Group number: how many neighborhood cells the rule reads.
    pub fn group(self) -> u32 {
        self.0.count_ones()
    }

    /// Offsets of the cells the rule reads, in ascending weight order.
    pub fn offsets(self) -> Vec<NeighborOffset> {
        (0..9)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| OFFSET_BY_BIT[b])
            .collect()
    }

    /// All 512 rules in ascending mask order.
    pub fn all() -> impl Iterator<Item = RuleMask> {
        (0..RULE_COUNT as u16).map(RuleMask)
    }
}

impl fmt::Display for RuleMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for RuleMask {
    type Err = CaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mask: u32 = s
            .trim()
            .parse()
            .map_err(|_| CaError::InvalidRule(u32::MAX))?;
        RuleMask::new(mask)
    }
}
