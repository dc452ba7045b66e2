//! Closed-form integrals `∫ e^{−t} ρ(t)^p dt` of piecewise-linear radius
//! functions, segment by segment through incomplete gamma values.

use super::RadiusFunction;
use crate::error::{Error, Result};

/// Weighting of the level-volume integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// `∫₀^∞ e^{−t} ρ(t)ⁿ dt`, i.e. `∫e^{−φ} / Vol(K)`.
    Exp,
    /// `∫₀^∞ α e^{−α/z} z^{−(n+2)} ρ(z)ⁿ dz`, i.e. `∫e^{−𝒥_α^l φ} / Vol(K)`.
    JExp(f64),
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// Lower incomplete gamma `γ(k+1, x) = ∫₀^x s^k e^{−s} ds` for integer `k`.
///
/// Below `x = k + 1` the power series is used (all terms positive); above
/// it, `k! (1 − e^{−x} Σ_{j≤k} x^j/j!)`, where the subtracted Poisson tail
/// is at most about one half so nothing cancels.
pub fn lower_gamma(k: usize, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = k as f64 + 1.0;
    if x.is_infinite() {
        return factorial(k);
    }
    if x < s {
        let mut term = 1.0 / s;
        let mut sum = term;
        let mut j = 1.0;
        loop {
            term *= x / (s + j);
            sum += term;
            if term <= sum * 1e-17 {
                break;
            }
            j += 1.0;
        }
        (s * x.ln() - x).exp() * sum
    } else {
        let mut t = (-x).exp();
        let mut tail = t;
        for j in 1..=k {
            t *= x / j as f64;
            tail += t;
        }
        factorial(k) * (1.0 - tail)
    }
}

fn binomials(p: usize) -> Vec<f64> {
    let mut row = vec![1.0; p + 1];
    for k in 1..p {
        row[k] = row[k - 1] * (p - k + 1) as f64 / k as f64;
    }
    row
}

/// `∫₀^∞ e^{−t} ρ(t)^p dt` for integer `p ≥ 0`.
pub fn level_moment(rho: &RadiusFunction, p: usize) -> f64 {
    let c = binomials(p);
    let xs = rho.breakpoints();
    let ys = rho.values();
    let mut total = 0.0;
    let mut segment = |a: f64, len: f64, base: f64, slope: f64| {
        let mut s = 0.0;
        for k in 0..=p {
            if slope == 0.0 && k > 0 {
                break;
            }
            s += c[k] * base.powi((p - k) as i32) * slope.powi(k as i32) * lower_gamma(k, len);
        }
        total += (-a).exp() * s;
    };
    for i in 1..xs.len() {
        let len = xs[i] - xs[i - 1];
        segment(xs[i - 1], len, ys[i - 1], (ys[i] - ys[i - 1]) / len);
    }
    let k = xs.len() - 1;
    segment(xs[k], f64::INFINITY, ys[k], rho.tail_slope());
    total
}

/// Level-volume integral of `ρⁿ` under the given weight.
pub fn exp_level_integral(rho: &RadiusFunction, n: usize, weight: Weight) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let value = match weight {
        Weight::Exp => level_moment(rho, n),
        Weight::JExp(alpha) => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
            }
            // w = α/z turns the weight into e^{−w} and ρ(z) z^{-1}·α into
            // the perspective of ρ evaluated at w/α.
            level_moment(&rho.perspective().scale_argument(alpha), n)
        }
    };
    if !value.is_finite() {
        return Err(Error::Divergent(format!("level integral evaluated to {value}")));
    }
    Ok(value)
}
