//! Body-radial functions `φ(x) = u(‖x‖_K)`: exact transforms by reduction
//! to the profile `u`, and the integral functionals built on them.

use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::profiles::{
    invert_profile, level_moment, transform_profile, Profile, RadiusFunction, Tail, Transform,
};

/// Barycenter tolerance below which a function counts as centered.
pub const CENTERED_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialFunction {
    pub body: ConvexBody,
    pub profile: Profile,
}

/// Which of the two scaled gauge transforms a Santaló ratio refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A level set `L_t(φ) = ρ(t)·K`, or the marker for `ρ(t) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum LevelSet {
    Body(ConvexBody),
    Degenerate,
}

fn pow(x: f64, n: usize) -> f64 {
    x.powi(n as i32)
}

impl RadialFunction {
    pub fn new(body: ConvexBody, profile: Profile) -> RadialFunction {
        RadialFunction { body, profile }
    }

    /// `‖·‖_K`.
    pub fn norm(body: ConvexBody) -> RadialFunction {
        RadialFunction::new(body, Profile::identity())
    }

    /// `1^∞_K`.
    pub fn indicator(body: ConvexBody) -> RadialFunction {
        RadialFunction::new(body, Profile::indicator(1.0))
    }

    /// `ψ_{K,r,t₀}`: `‖·‖_K` up to level `t₀`, slope `1/r` beyond; for
    /// `r = 0` the norm capped by the indicator of `t₀K`.
    pub fn make_psi(body: ConvexBody, r: f64, t0: f64) -> Result<RadialFunction> {
        Ok(RadialFunction::new(body, Profile::psi(r, t0)?))
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        Ok(self.profile.eval(self.body.gauge(x)?))
    }

    /// `0 < ∫e^{−φ} < ∞`: the profile is not identically zero and its
    /// domain is not just the origin.
    pub fn is_integrable(&self) -> bool {
        !self.profile.is_zero() && self.profile.domain_end() > 0.0
    }

    fn check_integrable(&self) -> Result<()> {
        if self.profile.is_zero() {
            return Err(Error::Divergent("∫e^{−φ} is infinite for φ ≡ 0".into()));
        }
        if self.profile.domain_end() <= 0.0 {
            return Err(Error::Divergent("∫e^{−φ} vanishes: φ is finite only at the origin".into()));
        }
        Ok(())
    }

    /// Level radius `ρ_u` so that `L_t(φ) = ρ_u(t)·K`.
    pub fn radius(&self) -> Result<RadiusFunction> {
        invert_profile(&self.profile)
    }

    pub fn transform(&self, kind: Transform) -> Result<RadialFunction> {
        let profile = transform_profile(&self.profile, kind)?;
        let body = if kind.is_duality() { self.body.polar()? } else { self.body.clone() };
        Ok(RadialFunction::new(body, profile))
    }

    /// `c · φ` for `c > 0`.
    pub fn scaled_values(&self, c: f64) -> RadialFunction {
        RadialFunction::new(self.body.clone(), self.profile.scale_values(c))
    }

    /// `∫ e^{−φ}`, exactly.
    pub fn integral_exp(&self) -> Result<f64> {
        self.check_integrable()?;
        let rho = self.radius()?;
        finite(self.body.volume()? * level_moment(&rho, self.dim()))
    }

    /// `∫ e^{−𝒥_α^l φ} / ∫ e^{−φ}` (left) or `αⁿ` times it (right).
    pub fn santalo_ratio(&self, alpha: f64, side: Side) -> Result<f64> {
        self.check_integrable()?;
        Transform::JLeft(alpha).check()?;
        let n = self.dim();
        let rho = self.radius()?;
        let left = santalo_left(&rho, n, alpha)?;
        Ok(match side {
            Side::Left => left,
            Side::Right => left * pow(alpha, n),
        })
    }

    /// `𝒫_{𝒜_α}(φ) = ∫e^{−φ} ∫e^{−𝒜_αφ}`.
    pub fn mahler_product_a(&self, alpha: f64) -> Result<f64> {
        let dual = self.transform(Transform::Polarity(alpha))?;
        Ok(self.integral_exp()? * dual.integral_exp()?)
    }

    /// `∫e^{−φ} ∫e^{−ℒφ}` for a centered function.
    pub fn legendre_product(&self) -> Result<f64> {
        let bar = self.barycenter()?;
        let norm = bar.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > CENTERED_TOL {
            return Err(Error::OffCenter { norm });
        }
        let dual = self.transform(Transform::Legendre)?;
        Ok(self.integral_exp()? * dual.integral_exp()?)
    }

    /// `bar(e^{−φ}) = ∫ x e^{−φ} / ∫ e^{−φ} = centroid(K) · M_{n+1}/M_n`
    /// with radial moments `M_p = ∫ e^{−t} ρ(t)^p dt`.
    pub fn barycenter(&self) -> Result<Vec<f64>> {
        self.check_integrable()?;
        let n = self.dim();
        let rho = self.radius()?;
        let ratio = level_moment(&rho, n + 1) / level_moment(&rho, n);
        Ok(self.body.centroid()?.into_iter().map(|c| c * ratio).collect())
    }

    pub fn level_set(&self, t: f64) -> Result<LevelSet> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("level must be nonnegative, got {t}")));
        }
        let r = self.radius()?.eval(t);
        if r <= 0.0 {
            return Ok(LevelSet::Degenerate);
        }
        Ok(LevelSet::Body(self.body.scaled(r)?))
    }

    /// Slack of `L_s(𝒜_αφ) ⊆ (st/α + 1)(L_t φ)°`. Both sides are homothets
    /// of `K°`, so the inclusion reduces to `ρ_{𝒜_αu}(s)·ρ_u(t) ≤ st/α + 1`;
    /// the returned value is the difference, nonnegative when it holds.
    pub fn level_inclusion_slack(&self, alpha: f64, s: f64, t: f64) -> Result<f64> {
        let dual = transform_profile(&self.profile, Transform::Polarity(alpha))?;
        let ra = if dual.is_zero() { f64::INFINITY } else { invert_profile(&dual)?.eval(s) };
        let r = self.radius()?.eval(t);
        let prod = if r == 0.0 { 0.0 } else { ra * r };
        Ok(s * t / alpha + 1.0 - prod)
    }

    /// Whether the profile is the identity or an indicator of `[0, R]`,
    /// i.e. `φ` is a norm or a convex-body indicator.
    pub fn is_norm_or_indicator(&self) -> bool {
        let p = &self.profile;
        let linear = p.breakpoints().len() == 1 && matches!(p.tail(), Tail::Slope(s) if s > 0.0);
        let indicator = p.tail() == Tail::Bounded && p.values().iter().all(|&v| v == 0.0);
        linear || indicator
    }
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Divergent(format!("integral evaluated to {v}")))
    }
}

/// `ℛ_{𝒥_α^l}` from a level radius; `Vol(K)` cancels.
pub(crate) fn santalo_left(rho: &RadiusFunction, n: usize, alpha: f64) -> Result<f64> {
    let num = level_moment(&rho.perspective().scale_argument(alpha), n);
    let den = level_moment(rho, n);
    finite(num / den)
}
