//! Exact rule-space counting.
//!
//! How many update rules exist for a given number of states, neighborhood
//! size, array length and time horizon. The counts grow as towers of
//! exponentials, so everything is arbitrary precision and guarded by a
//! decimal-digit budget rather than a type width.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::CaError;

/// Default cap on the decimal size of a computed count.
pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;

fn check_budget(digits_estimate: f64, budget: u64) -> Result<(), CaError> {
    if !digits_estimate.is_finite() || digits_estimate > budget as f64 {
        let digits = if digits_estimate.is_finite() {
            digits_estimate.ceil() as u64
        } else {
            u64::MAX
        };
        return Err(CaError::DigitBudget { digits, budget });
    }
    Ok(())
}

/// Decimal digits of `base^exponent`, approximately.
fn pow_digits(base: u64, exponent: &BigUint) -> f64 {
    if base <= 1 {
        return 1.0;
    }
    match exponent.to_f64() {
        Some(e) => e * (base as f64).log10() + 1.0,
        None => f64::INFINITY,
    }
}

/// Rules a single cell can follow: `states^(states^neighborhood)`.
pub fn count_uniform(states: u64, neighborhood: u32) -> Result<BigUint, CaError> {
    count_uniform_with_budget(states, neighborhood, DEFAULT_DIGIT_BUDGET)
}

pub fn count_uniform_with_budget(
    states: u64,
    neighborhood: u32,
    budget: u64,
) -> Result<BigUint, CaError> {
    if states == 0 {
        return Err(CaError::InvalidCount("states must be at least 1".into()));
    }
    if states == 1 {
        return Ok(BigUint::one());
    }
    let inner = BigUint::from(states).pow(neighborhood);
    check_budget(pow_digits(states, &inner), budget)?;
    let inner = inner
        .to_u32()
        .expect("inner exponent fits u32 once the digit budget passes");
    Ok(BigUint::from(states).pow(inner))
}

/// Rule assignments over a cell array: `count_uniform ^ length`.
pub fn count_hybrid(states: u64, neighborhood: u32, length: u64) -> Result<BigUint, CaError> {
    count_hybrid_with_budget(states, neighborhood, length, DEFAULT_DIGIT_BUDGET)
}

pub fn count_hybrid_with_budget(
    states: u64,
    neighborhood: u32,
    length: u64,
    budget: u64,
) -> Result<BigUint, CaError> {
    if length == 0 {
        return Err(CaError::InvalidCount("length must be at least 1".into()));
    }
    let per_cell = count_uniform_with_budget(states, neighborhood, budget)?;
    big_pow(&per_cell, length, budget)
}

/// Per-cell rules that may change every step: `count_hybrid ^ time`.
pub fn count_hybrid_time(
    states: u64,
    neighborhood: u32,
    length: u64,
    time: u64,
) -> Result<BigUint, CaError> {
    count_hybrid_time_with_budget(states, neighborhood, length, time, DEFAULT_DIGIT_BUDGET)
}

pub fn count_hybrid_time_with_budget(
    states: u64,
    neighborhood: u32,
    length: u64,
    time: u64,
    budget: u64,
) -> Result<BigUint, CaError> {
    if time == 0 {
        return Err(CaError::InvalidCount("time must be at least 1".into()));
    }
    let per_step = count_hybrid_with_budget(states, neighborhood, length, budget)?;
    big_pow(&per_step, time, budget)
}

/// Per-cell state/neighborhood parameters, rules changing every step:
/// `(prod of S_i^(S_i^N_i)) ^ time`.
pub fn count_heterogeneous_time(cells: &[(u64, u32)], time: u64) -> Result<BigUint, CaError> {
    count_heterogeneous_time_with_budget(cells, time, DEFAULT_DIGIT_BUDGET)
}

pub fn count_heterogeneous_time_with_budget(
    cells: &[(u64, u32)],
    time: u64,
    budget: u64,
) -> Result<BigUint, CaError> {
    if cells.is_empty() {
        return Err(CaError::InvalidCount("cell list must be non-empty".into()));
    }
    if time == 0 {
        return Err(CaError::InvalidCount("time must be at least 1".into()));
    }
    let mut product = BigUint::one();
    for &(states, neighborhood) in cells {
        product *= count_uniform_with_budget(states, neighborhood, budget)?;
        check_budget(big_digits(&product), budget)?;
    }
    big_pow(&product, time, budget)
}

/// Linear (XOR) rules over a neighborhood of the given size: every subset
/// of the cells, i.e. the binomial sum `2^size`.
pub fn linear_rule_count(neighborhood_size: u32) -> Result<BigUint, CaError> {
    check_budget(
        neighborhood_size as f64 * 2f64.log10() + 1.0,
        DEFAULT_DIGIT_BUDGET,
    )?;
    Ok(BigUint::one() << neighborhood_size)
}

fn big_digits(value: &BigUint) -> f64 {
    // bits * log10(2) overestimates by less than one digit.
    value.bits() as f64 * 2f64.log10() + 1.0
}

fn big_pow(base: &BigUint, exponent: u64, budget: u64) -> Result<BigUint, CaError> {
    if base.is_one() {
        return Ok(BigUint::one());
    }
    check_budget(big_digits(base) * exponent as f64, budget)?;
    let exponent = exponent
        .to_u32()
        .ok_or_else(|| CaError::InvalidCount("exponent too large".into()))?;
    Ok(base.pow(exponent))
}

/// Scientific-notation rendering of an exact decimal string, three
/// significant digits (e.g. `1.16e77` for 2^256).
pub fn scientific(value: &BigUint) -> String {
    let digits = value.to_string();
    if digits.len() <= 1 {
        return digits;
    }
    let exponent = digits.len() - 1;
    // Round the leading four digits to three significant figures.
    let lead: u32 = digits
        .chars()
        .take(4)
        .chain(std::iter::repeat('0'))
        .take(4)
        .collect::<String>()
        .parse()
        .expect("leading digits are ascii numerals");
    let mut mantissa = (lead + 5) / 10;
    let mut exponent = exponent;
    if mantissa >= 1000 {
        mantissa /= 10;
        exponent += 1;
    }
    format!("{}.{:02}e{}", mantissa / 100, mantissa % 100, exponent)
}
