//! The kernel `h_α(z) = α e^{z−α/z} / z^{n+2}`, its sign patterns against a
//! level `λ`, the threshold constant `ρ_n`, the two-parameter ratio
//! `σ_α(r, t₀)` and the maximal Santaló ratio `λ_n(α)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::RadiusFunction;
use crate::radial::santalo_left;
use crate::roots::{bisect, expand_down, expand_up, golden_max};

const ROOT_TOL: f64 = 1e-12;
/// Grid resolution of the `(r, t₀)` scan in [`lambda_max`].
pub const SCAN: usize = 256;

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_nz(n: usize, z: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if !(z > 0.0) {
        return Err(Error::InvalidParameter(format!("z must be positive, got {z}")));
    }
    Ok(())
}

/// `ln h_α(z)`.
pub fn log_h(n: usize, alpha: f64, z: f64) -> f64 {
    alpha.ln() + z - alpha / z - (n as f64 + 2.0) * z.ln()
}

/// `(h_α(z), h_α'(z))`, evaluated through the logarithm.
pub fn h_eval(n: usize, alpha: f64, z: f64) -> Result<(f64, f64)> {
    check_nz(n, z)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let h = log_h(n, alpha, z).exp();
    let factor = 1.0 + alpha / (z * z) - (n as f64 + 2.0) / z;
    Ok((h, h * factor))
}

/// Roots `ζ₁ < ζ₂` of `h_α'`, or `None` once `α ≥ (n+2)²/4`.
pub fn h_critical_points(n: usize, alpha: f64) -> Option<(f64, f64)> {
    let m = n as f64 + 2.0;
    let disc = 1.0 - 4.0 * alpha / (m * m);
    if disc <= 0.0 {
        return None;
    }
    // ζ₁ = (m/2)(1 − √disc), rewritten to avoid cancellation for small α.
    let z1 = 2.0 * alpha / (m * (1.0 + disc.sqrt()));
    Some((z1, alpha / z1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "pattern", rename_all = "kebab-case")]
pub enum SignPattern {
    /// `h_α − λ` changes sign once, from negative to positive, at `z0`.
    OneCrossing { z0: f64 },
    /// `h_α < λ` on `(0,z₁) ∪ (z₂,z₃)` and `h_α > λ` on `(z₁,z₂) ∪ (z₃,∞)`.
    ThreeRoots { z1: f64, z2: f64, z3: f64 },
}

/// Sign pattern of `h_α − λ` on `(0, ∞)`.
pub fn classify_sign_pattern(n: usize, alpha: f64, lambda: f64) -> Result<SignPattern> {
    check_nz(n, alpha)?;
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    let ll = lambda.ln();
    let g = |z: f64| log_h(n, alpha, z) - ll;
    let low = |hi: f64| -> Result<f64> {
        let lo = expand_down(|z| g(z) < 0.0, hi.min(1.0))?;
        bisect(g, lo, hi, ROOT_TOL)
    };
    let high = |lo: f64| -> Result<f64> {
        let hi = expand_up(|z| g(z) > 0.0, lo.max(1.0))?;
        bisect(g, lo, hi, ROOT_TOL)
    };
    let Some((c1, c2)) = h_critical_points(n, alpha) else {
        let hi = expand_up(|z| g(z) > 0.0, 1.0)?;
        return Ok(SignPattern::OneCrossing { z0: low(hi)? });
    };
    if g(c1) <= 0.0 {
        return Ok(SignPattern::OneCrossing { z0: high(c2)? });
    }
    if g(c2) >= 0.0 {
        return Ok(SignPattern::OneCrossing { z0: low(c1)? });
    }
    Ok(SignPattern::ThreeRoots { z1: low(c1)?, z2: bisect(g, c1, c2, ROOT_TOL)?, z3: high(c2)? })
}

/// `q(x) = (1 − √(1−x)) x^{−1/(n+2)} e^{√(1−x)}` on `(0, 1]`.
pub fn q(n: usize, x: f64) -> f64 {
    let s = (1.0 - x).max(0.0).sqrt();
    // 1 − √(1−x) = x / (1 + √(1−x))
    let lead = x / (1.0 + s);
    (lead.ln() - x.ln() / (n as f64 + 2.0) + s).exp()
}

/// Right-hand side `(2 ⁿ√n! / (n+2))^{n/(n+2)}` defining `ρ_n`.
pub fn rho_target(n: usize) -> f64 {
    let nf = n as f64;
    let base = (2.0f64.ln() + ln_factorial(n) / nf - (nf + 2.0).ln()) * nf / (nf + 2.0);
    base.exp()
}

/// The unique `ρ_n ∈ (0, 1/4)` with `q(4ρ_n) = rho_target(n)`.
pub fn compute_rho(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let target = rho_target(n).ln();
    let f = |x: f64| q(n, x).ln() - target;
    let lo = expand_down(|x| f(x) < 0.0, 0.5)?;
    Ok(bisect(f, lo, 1.0, ROOT_TOL)? / 4.0)
}

/// `α` at which the exact regime starts: `ρ_n (n+2)²`.
pub fn threshold(n: usize) -> Result<f64> {
    let m = n as f64 + 2.0;
    Ok(compute_rho(n)? * m * m)
}

/// `σ_α(r, t₀)`: the Santaló ratio of the two-slope family, which does not
/// depend on the body.
pub fn sigma(n: usize, alpha: f64, r: f64, t0: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if !(0.0..=1.0).contains(&r) || !(t0 > 0.0) || !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma needs r ∈ [0,1], t0 > 0, α > 0; got r={r}, t0={t0}, α={alpha}")));
    }
    santalo_left(&RadiusFunction::p(r, t0), n, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaMax {
    pub r: f64,
    pub t0: f64,
    pub lambda: f64,
}

/// `λ_n(α) = sup ℛ_{𝒥_α^l}`, together with a maximizing `(r, t₀)`.
///
/// In the exact regime the supremum is `1/n!`, attained by norms (`r = 1`).
/// Otherwise `σ_α` is maximized over `[0,1] × [z₁,z₂]`, the roots of
/// `h_α − 1/n!`, by a grid scan followed by coordinate-wise golden-section
/// refinement.
pub fn lambda_max(n: usize, alpha: f64) -> Result<LambdaMax> {
    let base = 1.0 / factorial(n);
    let exact = LambdaMax { r: 1.0, t0: 1.0, lambda: base };
    if alpha >= threshold(n)? * (1.0 - 1e-12) {
        return Ok(exact);
    }
    let (z1, z2) = match classify_sign_pattern(n, alpha, base)? {
        SignPattern::OneCrossing { .. } => return Ok(exact),
        SignPattern::ThreeRoots { z1, z2, .. } => (z1, z2),
    };
    let s = |r: f64, t0: f64| sigma(n, alpha, r, t0).unwrap_or(f64::NEG_INFINITY);
    let mut best = (1.0, z1, base);
    for i in 0..SCAN {
        let r = i as f64 / (SCAN - 1) as f64;
        for j in 0..SCAN {
            let t0 = z1 + (z2 - z1) * j as f64 / (SCAN - 1) as f64;
            let v = s(r, t0);
            if v > best.2 {
                best = (r, t0, v);
            }
        }
    }
    let (mut r, mut t0, mut v) = best;
    let dr = 1.0 / (SCAN - 1) as f64;
    let dt = (z2 - z1) / (SCAN - 1) as f64;
    for _ in 0..100 {
        let (nr, vr) = golden_max(|x| s(x, t0), (r - dr).max(0.0), (r + dr).min(1.0), 1e-12);
        let (nt, vt) = golden_max(|x| s(nr, x), (t0 - dt).max(z1), (t0 + dt).min(z2), 1e-12 * z2);
        let improved = vr.max(vt) - v;
        if vr > v {
            r = nr;
            v = vr;
        }
        if vt > v {
            t0 = nt;
            v = vt;
        }
        if improved <= 1e-15 * v {
            break;
        }
    }
    Ok(LambdaMax { r, t0, lambda: v })
}

/// The two-slope majorant/minorant of a concave radius function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pivot {
    pub a: f64,
    pub r: f64,
    pub t0: f64,
}

/// Slopes `a = ψ(z₁)/z₁` and `b = (ψ(z₃) − ψ(z₂))/(z₃ − z₂)`, ratio
/// `r = b/a`, and `t₀` where the lines `a·z` and the chord through `z₂, z₃`
/// meet. Then `ψ ≥ a·p_{r,t₀}` on `[0,z₁] ∪ [z₂,z₃]` and `ψ ≤ a·p_{r,t₀}`
/// elsewhere.
pub fn pivot_construction(psi: &RadiusFunction, z1: f64, z2: f64, z3: f64) -> Result<Pivot> {
    if !(0.0 < z1 && z1 < z2 && z2 < z3) {
        return Err(Error::InvalidParameter(format!("need 0 < z1 < z2 < z3, got {z1}, {z2}, {z3}")));
    }
    let a = psi.eval(z1) / z1;
    if !(a > 0.0) {
        return Err(Error::InvalidParameter("ψ vanishes on [0, z1]".into()));
    }
    let b = (psi.eval(z3) - psi.eval(z2)) / (z3 - z2);
    let r = (b / a).clamp(0.0, 1.0);
    let t0 = if (a - b).abs() <= 1e-12 * a { z1 } else { (psi.eval(z2) - b * z2) / (a - b) };
    Ok(Pivot { a, r, t0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Exact,
    Tight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub n: usize,
    pub alpha: f64,
    pub rho_n: f64,
    pub threshold: f64,
    pub regime: Regime,
    pub lambda: f64,
    pub r_star: f64,
    pub t0_star: f64,
    /// `λ_n(α) αⁿ / n!`.
    pub gamma: f64,
    /// `inf ℛ_{𝒥_α^l} = 1/(αⁿ λ_n(α))`.
    pub lambda_inf: f64,
    /// `γ^{1/n} − 1`, the slack in the Mahler corridor implied by `γ`.
    pub delta: f64,
    /// `n(γ − 1)`: any lower constant `c` must not exceed this.
    pub c_measured: f64,
    /// `γ / (n^{3/2} e^{2α/n})`: any upper constant must be at least this.
    pub big_c_measured: f64,
    /// `h_α(ζ₁)` when the critical points exist.
    pub h_zeta1: Option<f64>,
    /// Verdicts: exact regime gives `λ = 1/n!`; tight regime gives
    /// `1/n! ≤ λ ≤ h_α(ζ₁)` and `γ > 1` for `α > 1`. The threshold is only
    /// sufficient, so `λ = 1/n!` can persist somewhat below it.
    pub consistent: bool,
}

pub fn regime_report(n: usize, alpha: f64) -> Result<RegimeReport> {
    let rho_n = compute_rho(n)?;
    let thr = rho_n * (n as f64 + 2.0).powi(2);
    let lm = lambda_max(n, alpha)?;
    let nf = factorial(n);
    let an = alpha.powi(n as i32);
    let gamma = lm.lambda * an / nf;
    let regime = if alpha >= thr * (1.0 - 1e-12) { Regime::Exact } else { Regime::Tight };
    let h_zeta1 = h_critical_points(n, alpha).map(|(z1, _)| log_h(n, alpha, z1).exp());
    let consistent = match regime {
        Regime::Exact => (lm.lambda * nf - 1.0).abs() <= 1e-12 && lm.r == 1.0,
        Regime::Tight => {
            lm.lambda >= 1.0 / nf
                && h_zeta1.map_or(true, |h| lm.lambda <= h * (1.0 + 1e-9))
                && (alpha <= 1.0 || gamma > 1.0)
        }
    };
    let nn = n as f64;
    Ok(RegimeReport {
        n,
        alpha,
        rho_n,
        threshold: thr,
        regime,
        lambda: lm.lambda,
        r_star: lm.r,
        t0_star: lm.t0,
        gamma,
        lambda_inf: 1.0 / (an * lm.lambda),
        delta: gamma.powf(1.0 / nn) - 1.0,
        c_measured: nn * (gamma - 1.0),
        big_c_measured: gamma / (nn.powf(1.5) * (2.0 * alpha / nn).exp()),
        h_zeta1,
        consistent,
    })
}

/// Single constants fitting a sweep of tight-regime reports:
/// `(min n(γ−1), max γ/(n^{3/2} e^{2α/n}))`.
pub fn measured_constants(reports: &[RegimeReport]) -> (f64, f64) {
    let tight = reports.iter().filter(|r| r.regime == Regime::Tight);
    let c = tight.clone().map(|r| r.c_measured).fold(f64::INFINITY, f64::min);
    let big_c = tight.map(|r| r.big_c_measured).fold(0.0, f64::max);
    (c, big_c)
}
