//! Rows of lower and upper bounds for `ln |M_n|`.
//!
//! Counts come from exact enumeration where the configured limits allow;
//! beyond them `ln |A_n|` is replaced by `ln U_4(n)` and the row is flagged
//! as estimated. Both published upper-bound constants are reported.

use serde::{Deserialize, Serialize};

use super::{bollobas_ln_estimate, census_one_cell, CensusError};
use crate::graph::{enumerate_a, enumerate_c};
use crate::reduction::ReductionConfig;

/// `1 + ln 270`.
pub const THEOREM_CONSTANT: f64 = 6.598_421_958_998_375;
/// `ln 180`.
pub const INTRO_CONSTANT: f64 = 5.192_956_850_890_21;
/// `1 + ln 15`.
pub const C_OVER_A_CONSTANT: f64 = 3.708_050_201_102_21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsConfig {
    /// Largest `n` for which `A_n` is enumerated.
    pub a_limit: usize,
    /// Largest `n` for which `C_n` is enumerated.
    pub c_limit: usize,
    /// Largest `n` for which the one-cell census runs.
    pub census_limit: usize,
    pub reduction: ReductionConfig,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig { a_limit: 8, c_limit: 6, census_limit: 9, reduction: ReductionConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: usize,
    pub count_a: Option<u64>,
    pub count_c: Option<u64>,
    /// `ln |A_n|` when enumerated and nonzero.
    pub ln_a: Option<f64>,
    pub ln_c: Option<f64>,
    /// `ln U_4(n)`.
    pub bollobas_ln: f64,
    /// `ln |A_n|` was replaced by `ln U_4(n)`.
    pub estimated: bool,
    /// Distinct one-cell spines found by the census.
    pub census_count: Option<u64>,
    /// `ln` of the census count.
    pub lower_ln_mn: Option<f64>,
    /// `ln |C_n| + n ln 18` when `C_n` is enumerated, otherwise the
    /// `A_n` route below.
    pub upper_ln_mn_theorem: Option<f64>,
    /// `ln |A_n| + n (1 + ln 270)`, with the estimate if flagged.
    pub upper_ln_mn_a_route: Option<f64>,
    /// `n ln n + n ln 180`.
    pub upper_ln_mn_intro: f64,
    pub theorem_constant: f64,
    pub intro_constant: f64,
    /// The two constants differ.
    pub constants_disagree: bool,
    /// `ln(|C_n| / |A_n|)` when both are exact and `|A_n| > 0`.
    pub ln_c_over_a: Option<f64>,
    /// `n (1 + ln 15)`.
    pub c_over_a_bound: f64,
    pub c_over_a_holds: Option<bool>,
    pub lower_le_upper: Option<bool>,
}

/// One row per `n` in `from..=to`.
pub fn bounds_table(from: usize, to: usize, config: &BoundsConfig) -> Result<Vec<BoundsRow>, CensusError> {
    if from == 0 || from > to {
        return Err(CensusError::Range { from, to });
    }
    (from..=to).map(|n| row(n, config)).collect()
}

fn row(n: usize, config: &BoundsConfig) -> Result<BoundsRow, CensusError> {
    let nf = n as f64;
    let count_a = if n <= config.a_limit { Some(enumerate_a(n)?.len() as u64) } else { None };
    let count_c = if n <= config.c_limit { Some(enumerate_c(n)?.len() as u64) } else { None };
    let ln_of = |c: Option<u64>| c.filter(|&c| c > 0).map(|c| (c as f64).ln());
    let ln_a = ln_of(count_a);
    let ln_c = ln_of(count_c);
    let bollobas_ln = bollobas_ln_estimate(4, n as u64).expect("4n is even");
    let estimated = count_a.is_none();
    let a_for_bound = if estimated { Some(bollobas_ln) } else { ln_a };
    let upper_ln_mn_a_route = a_for_bound.map(|a| a + nf * THEOREM_CONSTANT);
    let upper_ln_mn_theorem = ln_c.map(|c| c + nf * 18f64.ln()).or(upper_ln_mn_a_route);
    let census_count = if n >= 2 && n <= config.census_limit {
        Some(census_one_cell(n, &config.reduction)?.records.len() as u64)
    } else {
        None
    };
    let lower_ln_mn = ln_of(census_count);
    let ln_c_over_a = match (ln_c, ln_a) {
        (Some(c), Some(a)) => Some(c - a),
        _ => None,
    };
    let c_over_a_bound = nf * C_OVER_A_CONSTANT;
    Ok(BoundsRow {
        n,
        count_a,
        count_c,
        ln_a,
        ln_c,
        bollobas_ln,
        estimated,
        census_count,
        lower_ln_mn,
        upper_ln_mn_theorem,
        upper_ln_mn_a_route,
        upper_ln_mn_intro: nf * nf.ln() + nf * INTRO_CONSTANT,
        theorem_constant: THEOREM_CONSTANT,
        intro_constant: INTRO_CONSTANT,
        constants_disagree: (THEOREM_CONSTANT - INTRO_CONSTANT).abs() > 1e-12,
        ln_c_over_a,
        c_over_a_bound,
        c_over_a_holds: ln_c_over_a.map(|x| x <= c_over_a_bound),
        lower_le_upper: match (lower_ln_mn, upper_ln_mn_theorem) {
            (Some(lo), Some(hi)) => Some(lo <= hi),
            _ => None,
        },
    })
}
