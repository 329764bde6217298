//! The configuration-model count of labeled `r`-regular simple graphs,
//!
//! `U_r(n) ~ exp(-(r^2 - 1) / 4) (rn)! / ((rn/2)! 2^(rn/2) (r!)^n n!)`,
//!
//! evaluated in logs through `ln Γ`, with an exact big-integer path for small
//! arguments.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum BollobasError {
    #[error("r * n = {r} * {n} is odd")]
    Parity { r: u64, n: u64 },
    #[error("degree must be at least 1")]
    Degree,
}

fn check(r: u64, n: u64) -> Result<(), BollobasError> {
    if r == 0 {
        return Err(BollobasError::Degree);
    }
    if (r * n) % 2 == 1 {
        return Err(BollobasError::Parity { r, n });
    }
    Ok(())
}

fn ln_factorial(k: u64) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// `ln U_r(n)` via log-gamma.
pub fn bollobas_ln_estimate(r: u64, n: u64) -> Result<f64, BollobasError> {
    check(r, n)?;
    let rf = r as f64;
    let half = r * n / 2;
    Ok(-(rf * rf - 1.0) / 4.0 + ln_factorial(r * n)
        - ln_factorial(half)
        - half as f64 * std::f64::consts::LN_2
        - n as f64 * ln_factorial(r)
        - ln_factorial(n))
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Natural log of a positive big integer, accurate to double precision.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().expect("at most 60 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln U_r(n)` with the factorial ratio formed exactly.
pub fn bollobas_ln_exact(r: u64, n: u64) -> Result<f64, BollobasError> {
    check(r, n)?;
    let half = r * n / 2;
    let numerator = factorial(r * n);
    let denominator = factorial(half) * (BigUint::one() << half) * factorial(r).pow(n as u32) * factorial(n);
    let rf = r as f64;
    Ok(ln_big(&numerator) - ln_big(&denominator) - (rf * rf - 1.0) / 4.0)
}

/// `ln(2 / (3e))`.
pub fn quartic_linear_constant() -> f64 {
    std::f64::consts::LN_2 - 3f64.ln() - 1.0
}

/// `ln U_4(n) - n ln n - n ln(2 / (3e))`.
pub fn asymptotic_residual(n: u64) -> f64 {
    let nf = n as f64;
    bollobas_ln_estimate(4, n).expect("4n is even") - nf * nf.ln() - nf * quartic_linear_constant()
}

/// The Stirling prediction for [`asymptotic_residual`]: `-ln(πn)/2 - 15/4`.
pub fn stirling_residual(n: u64) -> f64 {
    -0.5 * (std::f64::consts::PI * n as f64).ln() - 3.75
}
