//! Piecewise-linear geometric convex profiles `u : [0,∞) → [0,∞]` and their
//! exact transforms.
//!
//! A profile is stored by its breakpoints `0 = r₀ < … < r_m`, the values
//! `u(r_i)` (with `u(0) = 0`) and a tail: either a final slope or the
//! marker that `u = +∞` beyond `r_m`. Infinity never enters arithmetic.

mod integral;
mod radius;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use integral::{exp_level_integral, level_moment, lower_gamma, Weight};
pub use radius::{invert_profile, RadiusFunction};

/// Relative tolerance under which two neighbouring slopes are merged.
const COLLINEAR_TOL: f64 = 1e-10;
/// Relative tolerance under which two breakpoints are identified.
const POINT_TOL: f64 = 1e-14;

/// The transforms acting on geometric convex functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "alpha", rename_all = "kebab-case")]
pub enum Transform {
    /// `ℒφ(y) = sup ⟨x,y⟩ − φ(x)`.
    Legendre,
    /// `𝒜_α φ = α · sup (⟨x,y⟩ − 1)/φ(x)`.
    Polarity(f64),
    /// `𝒥 = 𝒜ℒ = ℒ𝒜`.
    GaugeJ,
    /// `𝒥_α^l = 𝒜_α ℒ = α𝒥`.
    JLeft(f64),
    /// `𝒥_α^r = ℒ 𝒜_α`, i.e. `x ↦ α (𝒥φ)(x/α)`.
    JRight(f64),
}

impl Transform {
    pub(crate) fn alpha(&self) -> Option<f64> {
        match self {
            Transform::Polarity(a) | Transform::JLeft(a) | Transform::JRight(a) => Some(*a),
            _ => None,
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self.alpha() {
            Some(a) if !(a > 0.0 && a.is_finite()) => {
                Err(Error::InvalidParameter(format!("alpha must be positive, got {a}")))
            }
            _ => Ok(()),
        }
    }

    /// Whether the transform reverses order (and so swaps `K` with `K°`
    /// on radial functions).
    pub fn is_duality(&self) -> bool {
        matches!(self, Transform::Legendre | Transform::Polarity(_))
    }
}

/// Behaviour of a profile past its last breakpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Affine continuation with this slope.
    Slope(f64),
    /// `+∞` beyond the last breakpoint.
    Bounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail: Tail,
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Drops near-duplicate points and interior points where the slope does
/// not change. `tail_slope` lets the last point go when the final segment
/// continues straight into the tail.
pub(crate) fn simplify(xs: &mut Vec<f64>, ys: &mut Vec<f64>, tail_slope: Option<f64>) {
    let mut px = vec![xs[0]];
    let mut py = vec![ys[0]];
    for i in 1..xs.len() {
        let last = *px.last().unwrap();
        if xs[i] - last <= POINT_TOL * xs[i].abs().max(1.0) {
            *py.last_mut().unwrap() = ys[i];
            continue;
        }
        px.push(xs[i]);
        py.push(ys[i]);
    }
    let mut i = 1;
    while i + 1 < px.len() {
        let g0 = (py[i] - py[i - 1]) / (px[i] - px[i - 1]);
        let g1 = (py[i + 1] - py[i]) / (px[i + 1] - px[i]);
        if rel_close(g0, g1, COLLINEAR_TOL) {
            px.remove(i);
            py.remove(i);
        } else {
            i += 1;
        }
    }
    if let Some(s) = tail_slope {
        let k = px.len();
        if k >= 2 {
            let g = (py[k - 1] - py[k - 2]) / (px[k - 1] - px[k - 2]);
            if rel_close(g, s, COLLINEAR_TOL) {
                px.pop();
                py.pop();
            }
        }
    }
    *xs = px;
    *ys = py;
}

impl Profile {
    /// Validates and canonicalizes a profile.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, tail: Tail) -> Result<Profile> {
        let bad = |m: &str| Err(Error::InvalidProfile(m.to_string()));
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return bad("breakpoints and values must be nonempty and of equal length");
        }
        if breakpoints[0] != 0.0 || values[0] != 0.0 {
            return bad("a geometric profile starts at (0, 0)");
        }
        if breakpoints.iter().chain(&values).any(|v| !v.is_finite()) {
            return bad("breakpoints and values must be finite");
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return bad("breakpoints must be strictly increasing");
        }
        let slopes: Vec<f64> = (1..breakpoints.len())
            .map(|i| (values[i] - values[i - 1]) / (breakpoints[i] - breakpoints[i - 1]))
            .collect();
        if slopes.iter().any(|&g| g < -1e-12) {
            return bad("profile must be nondecreasing");
        }
        if slopes.windows(2).any(|w| w[1] < w[0] - 1e-9 * w[0].abs().max(1.0)) {
            return bad("profile must be convex");
        }
        if let Tail::Slope(s) = tail {
            if !(s >= 0.0 && s.is_finite()) {
                return bad("tail slope must be finite and nonnegative");
            }
            if let Some(&g) = slopes.last() {
                if s < g - 1e-9 * g.abs().max(1.0) {
                    return bad("tail slope below the last segment slope breaks convexity");
                }
            }
        }
        Ok(Profile::raw(breakpoints, values, tail))
    }

    /// Builds from points assumed valid, only simplifying.
    pub(crate) fn raw(mut xs: Vec<f64>, mut ys: Vec<f64>, tail: Tail) -> Profile {
        let ts = match tail {
            Tail::Slope(s) => Some(s),
            Tail::Bounded => None,
        };
        simplify(&mut xs, &mut ys, ts);
        for y in ys.iter_mut() {
            if *y < 0.0 {
                *y = 0.0;
            }
        }
        Profile { breakpoints: xs, values: ys, tail }
    }

    /// `u(r) = r`, the profile of a gauge `‖·‖_K`.
    pub fn identity() -> Profile {
        Profile::linear(1.0)
    }

    /// `u(r) = c·r`.
    pub fn linear(c: f64) -> Profile {
        Profile { breakpoints: vec![0.0], values: vec![0.0], tail: Tail::Slope(c) }
    }

    /// Indicator of `[0, R]`; `R = 0` gives the indicator of the origin.
    pub fn indicator(radius: f64) -> Profile {
        if radius > 0.0 {
            Profile { breakpoints: vec![0.0, radius], values: vec![0.0, 0.0], tail: Tail::Bounded }
        } else {
            Profile { breakpoints: vec![0.0], values: vec![0.0], tail: Tail::Bounded }
        }
    }

    /// The constant zero profile.
    pub fn zero() -> Profile {
        Profile::linear(0.0)
    }

    /// Profile of the two-slope family: `t` on `[0, t₀]`, slope `1/r`
    /// afterwards, `+∞` after `t₀` when `r = 0`.
    pub fn psi(r: f64, t0: f64) -> Result<Profile> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!("r must lie in [0, 1], got {r}")));
        }
        if !(t0 > 0.0 && t0.is_finite()) {
            return Err(Error::InvalidParameter(format!("t0 must be positive, got {t0}")));
        }
        let tail = if r == 0.0 { Tail::Bounded } else { Tail::Slope(1.0 / r) };
        Ok(Profile::raw(vec![0.0, t0], vec![0.0, t0], tail))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    fn last(&self) -> (f64, f64) {
        (*self.breakpoints.last().unwrap(), *self.values.last().unwrap())
    }

    /// Right end of the effective domain (`∞` for an unbounded tail).
    pub fn domain_end(&self) -> f64 {
        match self.tail {
            Tail::Bounded => self.last().0,
            Tail::Slope(_) => f64::INFINITY,
        }
    }

    /// Segment slopes, one per pair of consecutive breakpoints.
    pub fn slopes(&self) -> Vec<f64> {
        (1..self.breakpoints.len())
            .map(|i| {
                (self.values[i] - self.values[i - 1]) / (self.breakpoints[i] - self.breakpoints[i - 1])
            })
            .collect()
    }

    /// `u(r)` for `r ≥ 0`; `+∞` past a bounded domain.
    pub fn eval(&self, r: f64) -> f64 {
        let r = r.max(0.0);
        let (rm, vm) = self.last();
        if r >= rm {
            return match self.tail {
                Tail::Slope(s) => vm + s * (r - rm),
                Tail::Bounded if r == rm => vm,
                Tail::Bounded => f64::INFINITY,
            };
        }
        let i = self.breakpoints.partition_point(|&b| b <= r);
        let (x0, x1) = (self.breakpoints[i - 1], self.breakpoints[i]);
        let (y0, y1) = (self.values[i - 1], self.values[i]);
        y0 + (y1 - y0) * (r - x0) / (x1 - x0)
    }

    /// Whether `u ≡ 0` on `[0, ∞)`.
    pub fn is_zero(&self) -> bool {
        self.tail == Tail::Slope(0.0) && self.values.iter().all(|&v| v == 0.0)
    }

    /// Largest `r` with `u(r) = 0` (`∞` when `u ≡ 0`).
    pub fn zero_radius(&self) -> f64 {
        if self.is_zero() {
            return f64::INFINITY;
        }
        let j = self.values.iter().rposition(|&v| v == 0.0).unwrap();
        self.breakpoints[j]
    }

    /// `c · u` for `c > 0`.
    pub fn scale_values(&self, c: f64) -> Profile {
        let tail = match self.tail {
            Tail::Slope(s) => Tail::Slope(s * c),
            Tail::Bounded => Tail::Bounded,
        };
        Profile::raw(self.breakpoints.clone(), self.values.iter().map(|v| v * c).collect(), tail)
    }

    /// `r ↦ u(r / c)` for `c > 0`.
    pub fn scale_argument(&self, c: f64) -> Profile {
        let tail = match self.tail {
            Tail::Slope(s) => Tail::Slope(s / c),
            Tail::Bounded => Tail::Bounded,
        };
        Profile::raw(self.breakpoints.iter().map(|b| b * c).collect(), self.values.clone(), tail)
    }

    /// Pointwise sum `u + v`.
    pub fn add(&self, other: &Profile) -> Profile {
        let end = self.domain_end().min(other.domain_end());
        let mut xs: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .copied()
            .filter(|&x| x <= end)
            .collect();
        if end.is_finite() {
            xs.push(end);
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let ys = xs.iter().map(|&x| self.eval(x) + other.eval(x)).collect();
        let tail = match (self.tail, other.tail) {
            (Tail::Slope(a), Tail::Slope(b)) => Tail::Slope(a + b),
            _ => Tail::Bounded,
        };
        Profile::raw(xs, ys, tail)
    }

    /// Breakpoint-wise comparison with relative tolerance `tol`.
    pub fn approx_eq(&self, other: &Profile, tol: f64) -> bool {
        if self.breakpoints.len() != other.breakpoints.len() {
            return false;
        }
        let tails = match (self.tail, other.tail) {
            (Tail::Slope(a), Tail::Slope(b)) => rel_close(a, b, tol),
            (Tail::Bounded, Tail::Bounded) => true,
            _ => false,
        };
        tails
            && self.breakpoints.iter().zip(&other.breakpoints).all(|(a, b)| rel_close(*a, *b, tol))
            && self.values.iter().zip(&other.values).all(|(a, b)| rel_close(*a, *b, tol))
    }

    /// Largest pointwise deviation on the given sample points, treating
    /// two infinities as equal and one infinity as an infinite deviation.
    pub fn max_deviation(&self, other: &Profile, samples: &[f64]) -> f64 {
        samples
            .iter()
            .map(|&r| match (self.eval(r), other.eval(r)) {
                (a, b) if a.is_infinite() && b.is_infinite() => 0.0,
                (a, b) => (a - b).abs(),
            })
            .fold(0.0, f64::max)
    }

    /// Sample points covering every breakpoint of both profiles, midpoints
    /// and a stretch of the tail.
    pub fn sample_points(&self, other: &Profile) -> Vec<f64> {
        let mut xs: Vec<f64> = self.breakpoints.iter().chain(&other.breakpoints).copied().collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let mut out = xs.clone();
        for w in xs.windows(2) {
            out.push(0.5 * (w[0] + w[1]));
        }
        let last = *xs.last().unwrap();
        for k in 1..=4 {
            out.push(last + k as f64 * (1.0 + last));
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Upper envelope of `max_k (a_k s + b_k)` over `s ∈ [0, end]`, as a
/// profile. The lines must include one through the origin that dominates
/// the others at `s = 0`.
fn upper_envelope(mut lines: Vec<(f64, f64)>, end: f64) -> Profile {
    if end <= 0.0 {
        return Profile::indicator(0.0);
    }
    lines.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    lines.dedup_by(|b, a| a.0 == b.0);
    let cross = |p: (f64, f64), q: (f64, f64)| (p.1 - q.1) / (q.0 - p.0);
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for l in lines {
        while hull.len() >= 2 {
            let (l1, l2) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if cross(l1, l) <= cross(l1, l2) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(l);
    }
    let eval = |s: f64| hull.iter().map(|l| l.0 * s + l.1).fold(0.0, f64::max);
    let mut xs = vec![0.0];
    let mut ys = vec![eval(0.0)];
    let mut active = hull.len() - 1;
    for k in 0..hull.len() - 1 {
        let x = cross(hull[k], hull[k + 1]);
        if x >= end {
            active = k;
            break;
        }
        if x > 0.0 {
            // on the left line, so a crossing with the zero line stays exactly 0
            xs.push(x);
            ys.push((hull[k].0 * x + hull[k].1).max(0.0));
        }
    }
    let tail = if end.is_finite() {
        xs.push(end);
        ys.push(eval(end));
        Tail::Bounded
    } else {
        Tail::Slope(hull[active].0)
    };
    Profile::raw(xs, ys, tail)
}

fn legendre(u: &Profile) -> Profile {
    let lines = u.breakpoints.iter().zip(&u.values).map(|(&r, &v)| (r, -v)).collect();
    let end = match u.tail {
        Tail::Slope(s) => s,
        Tail::Bounded => f64::INFINITY,
    };
    upper_envelope(lines, end)
}

fn polarity(u: &Profile) -> Profile {
    let mut lines = vec![(0.0, 0.0)];
    for (&r, &v) in u.breakpoints.iter().zip(&u.values) {
        if v > 0.0 {
            lines.push((r / v, -1.0 / v));
        }
    }
    if let Tail::Slope(s) = u.tail {
        if s > 0.0 {
            lines.push((1.0 / s, 0.0));
        }
    }
    let r0 = u.zero_radius();
    let end = if r0 > 0.0 { 1.0 / r0 } else { f64::INFINITY };
    upper_envelope(lines, end)
}

fn gauge_j(u: &Profile) -> Profile {
    if u.is_zero() {
        return Profile::zero();
    }
    let rho = invert_profile(u).expect("nonzero profile has a finite radius function");
    rho.perspective().to_profile()
}

/// Applies a transform to a profile, exactly.
pub fn transform_profile(u: &Profile, kind: Transform) -> Result<Profile> {
    kind.check()?;
    Ok(match kind {
        Transform::Legendre => legendre(u),
        Transform::Polarity(a) => polarity(u).scale_values(a),
        Transform::GaugeJ => gauge_j(u),
        Transform::JLeft(a) => gauge_j(u).scale_values(a),
        Transform::JRight(a) => gauge_j(u).scale_argument(a).scale_values(a),
    })
}

/// Inf-convolution `(u □ v)(r) = inf_{a+b=r} u(a) + v(b)` on `[0, ∞)` by
/// merging segments in order of slope.
pub fn inf_conv_profile(u: &Profile, v: &Profile) -> Profile {
    let mut segs: Vec<(f64, f64)> = Vec::new();
    for p in [u, v] {
        for (i, g) in p.slopes().into_iter().enumerate() {
            segs.push((g, p.breakpoints[i + 1] - p.breakpoints[i]));
        }
    }
    let tail_slope = [u.tail, v.tail]
        .iter()
        .filter_map(|t| match t {
            Tail::Slope(s) => Some(*s),
            Tail::Bounded => None,
        })
        .fold(f64::INFINITY, f64::min);
    segs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    for (g, len) in segs {
        if g >= tail_slope {
            break;
        }
        let (x, y) = (*xs.last().unwrap(), *ys.last().unwrap());
        xs.push(x + len);
        ys.push(y + g * len);
    }
    let tail = if tail_slope.is_finite() { Tail::Slope(tail_slope) } else { Tail::Bounded };
    Profile::raw(xs, ys, tail)
}

/// g-inf-convolution `u ⊡ v = 𝒥(𝒥u □ 𝒥v)`.
pub fn g_inf_conv_profile(u: &Profile, v: &Profile) -> Profile {
    gauge_j(&inf_conv_profile(&gauge_j(u), &gauge_j(v)))
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum TailRepr {
    Slope(f64),
    Bounded(bool),
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail: TailRepr,
}

impl Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRepr {
            breakpoints: self.breakpoints.clone(),
            values: self.values.clone(),
            tail: match self.tail {
                Tail::Slope(v) => TailRepr::Slope(v),
                Tail::Bounded => TailRepr::Bounded(true),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ProfileRepr::deserialize(d)?;
        let tail = match r.tail {
            TailRepr::Slope(v) => Tail::Slope(v),
            TailRepr::Bounded(true) => Tail::Bounded,
            TailRepr::Bounded(false) => {
                return Err(serde::de::Error::custom("\"bounded\": false needs a slope instead"))
            }
        };
        Profile::new(r.breakpoints, r.values, tail).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[f64], ys: &[f64], tail: Tail) -> Profile {
        Profile::new(xs.to_vec(), ys.to_vec(), tail).unwrap()
    }

    #[test]
    fn polarity_keeps_bounded_domain_exact() {
        // the flat start of 𝒜u ends at 1/R; its value there must be exactly 0
        let u = p(&[0.0, 0.4357389871448164, 3.618716239207457], &[0.0, 0.5444049784416917, 16.45431493261069], Tail::Bounded);
        let a = transform_profile(&u, Transform::Polarity(0.4158881766630941)).unwrap();
        assert_eq!(a.values()[1], 0.0);
        let b = transform_profile(&a, Transform::Polarity(0.4158881766630941)).unwrap();
        assert_eq!(b.tail(), Tail::Bounded);
        assert!(b.approx_eq(&u, 1e-12));
    }

    #[test]
    fn rejects_invalid() {
        assert!(Profile::new(vec![0.0, 1.0], vec![0.0, 2.0, 3.0], Tail::Bounded).is_err());
        assert!(Profile::new(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 3.0], Tail::Bounded).is_err());
        assert!(Profile::new(vec![0.0, 1.0], vec![0.0, 2.0], Tail::Slope(1.0)).is_err());
        assert!(Profile::new(vec![1.0], vec![0.0], Tail::Slope(1.0)).is_err());
    }

    #[test]
    fn collinear_points_are_merged() {
        let u = p(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0], Tail::Slope(1.0));
        assert_eq!(u, Profile::identity());
    }

    #[test]
    fn legendre_of_identity_is_unit_indicator() {
        let l = transform_profile(&Profile::identity(), Transform::Legendre).unwrap();
        assert_eq!(l, Profile::indicator(1.0));
        let back = transform_profile(&l, Transform::Legendre).unwrap();
        assert_eq!(back, Profile::identity());
    }

    #[test]
    fn polarity_fixes_identity() {
        let a = transform_profile(&Profile::identity(), Transform::Polarity(1.0)).unwrap();
        assert!(a.approx_eq(&Profile::identity(), 1e-15));
        let a2 = transform_profile(&Profile::identity(), Transform::Polarity(2.0)).unwrap();
        assert!(a2.approx_eq(&Profile::linear(2.0), 1e-15));
    }

    #[test]
    fn polarity_swaps_indicator_radius() {
        let a = transform_profile(&Profile::indicator(2.0), Transform::Polarity(1.0)).unwrap();
        assert!(a.approx_eq(&Profile::indicator(0.5), 1e-15));
    }

    #[test]
    fn polarity_rejects_nonpositive_alpha() {
        assert!(transform_profile(&Profile::identity(), Transform::Polarity(0.0)).is_err());
        assert!(transform_profile(&Profile::identity(), Transform::JLeft(-1.0)).is_err());
    }

    #[test]
    fn gauge_j_of_identity_is_indicator() {
        let j = transform_profile(&Profile::identity(), Transform::GaugeJ).unwrap();
        assert!(j.approx_eq(&Profile::indicator(1.0), 1e-15));
        let back = transform_profile(&j, Transform::GaugeJ).unwrap();
        assert!(back.approx_eq(&Profile::identity(), 1e-15));
    }

    #[test]
    fn degenerate_profiles() {
        let z = Profile::zero();
        assert_eq!(transform_profile(&z, Transform::Legendre).unwrap(), Profile::indicator(0.0));
        assert_eq!(transform_profile(&z, Transform::Polarity(1.0)).unwrap(), Profile::indicator(0.0));
        assert_eq!(transform_profile(&z, Transform::GaugeJ).unwrap(), z);
        let o = Profile::indicator(0.0);
        assert_eq!(transform_profile(&o, Transform::Polarity(1.0)).unwrap(), z);
        assert_eq!(transform_profile(&o, Transform::GaugeJ).unwrap(), o);
    }

    #[test]
    fn two_slope_profile_round_trips() {
        let u = p(&[0.0, 1.0, 3.0], &[0.0, 0.5, 2.5], Tail::Slope(4.0));
        for kind in [Transform::Legendre, Transform::Polarity(1.7), Transform::GaugeJ] {
            let once = transform_profile(&u, kind).unwrap();
            let twice = transform_profile(&once, kind).unwrap();
            assert!(twice.approx_eq(&u, 1e-12), "{kind:?}: {twice:?}");
        }
    }

    #[test]
    fn gauge_j_matches_compositions() {
        let u = p(&[0.0, 0.5, 1.0, 3.0], &[0.0, 0.0, 0.5, 2.5], Tail::Slope(4.0));
        let j = transform_profile(&u, Transform::GaugeJ).unwrap();
        let al = transform_profile(&transform_profile(&u, Transform::Legendre).unwrap(), Transform::Polarity(1.0))
            .unwrap();
        let la = transform_profile(&transform_profile(&u, Transform::Polarity(1.0)).unwrap(), Transform::Legendre)
            .unwrap();
        assert!(j.approx_eq(&al, 1e-12), "{j:?} vs {al:?}");
        assert!(j.approx_eq(&la, 1e-12), "{j:?} vs {la:?}");
    }

    #[test]
    fn inf_conv_examples() {
        let id = Profile::identity();
        assert_eq!(inf_conv_profile(&id, &id), id);
        let c = inf_conv_profile(&id, &Profile::indicator(1.0));
        assert_eq!(c, p(&[0.0, 1.0], &[0.0, 0.0], Tail::Slope(1.0)));
        assert_eq!(inf_conv_profile(&Profile::linear(2.0), &id), id);
        let ind = inf_conv_profile(&Profile::indicator(1.0), &Profile::indicator(2.0));
        assert_eq!(ind, Profile::indicator(3.0));
    }

    #[test]
    fn g_inf_conv_examples() {
        let id = Profile::identity();
        assert!(g_inf_conv_profile(&id, &id).approx_eq(&Profile::linear(0.5), 1e-15));
        let ind = Profile::indicator(1.0);
        assert!(g_inf_conv_profile(&ind, &ind).approx_eq(&ind, 1e-15));
    }

    #[test]
    fn eval_handles_tails() {
        let u = Profile::indicator(1.0);
        assert_eq!(u.eval(1.0), 0.0);
        assert_eq!(u.eval(1.5), f64::INFINITY);
        let v = p(&[0.0, 1.0], &[0.0, 1.0], Tail::Slope(2.0));
        assert_eq!(v.eval(0.5), 0.5);
        assert_eq!(v.eval(3.0), 5.0);
    }

    #[test]
    fn sum_of_profiles() {
        let s = Profile::identity().add(&Profile::indicator(2.0));
        assert_eq!(s, p(&[0.0, 2.0], &[0.0, 2.0], Tail::Bounded));
    }

    #[test]
    fn json_descriptor() {
        let u: Profile =
            serde_json::from_str(r#"{"breakpoints":[0,1],"values":[0,0],"tail":{"bounded":true}}"#).unwrap();
        assert_eq!(u, Profile::indicator(1.0));
        let v: Profile =
            serde_json::from_str(r#"{"breakpoints":[0],"values":[0],"tail":{"slope":1}}"#).unwrap();
        assert_eq!(v, Profile::identity());
        let back: Profile = serde_json::from_str(&serde_json::to_string(&u).unwrap()).unwrap();
        assert_eq!(back, u);
    }
}
