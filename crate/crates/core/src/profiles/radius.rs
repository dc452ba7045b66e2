use super::{simplify, Profile, Tail};
use crate::error::{Error, Result};

/// Concave nondecreasing piecewise-linear `ρ : [0,∞) → [0,∞)`, the level
/// radius `t ↦ sup{r : u(r) ≤ t}` of a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail_slope: f64,
}

impl RadiusFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, tail_slope: f64) -> Result<RadiusFunction> {
        let bad = |m: &str| Err(Error::InvalidProfile(m.to_string()));
        if breakpoints.is_empty() || breakpoints.len() != values.len() || breakpoints[0] != 0.0 {
            return bad("radius function needs matching breakpoints starting at 0");
        }
        if breakpoints.iter().chain(&values).chain([&tail_slope]).any(|v| !v.is_finite()) {
            return bad("radius function must be finite");
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) || values[0] < 0.0 || tail_slope < 0.0 {
            return bad("radius function must be nonnegative on increasing breakpoints");
        }
        let mut slopes: Vec<f64> = (1..breakpoints.len())
            .map(|i| (values[i] - values[i - 1]) / (breakpoints[i] - breakpoints[i - 1]))
            .collect();
        slopes.push(tail_slope);
        if slopes.iter().any(|&g| g < -1e-12) {
            return bad("radius function must be nondecreasing");
        }
        if slopes.windows(2).any(|w| w[1] > w[0] + 1e-9 * w[0].abs().max(1.0)) {
            return bad("radius function must be concave");
        }
        Ok(RadiusFunction::raw(breakpoints, values, tail_slope))
    }

    pub(crate) fn raw(mut xs: Vec<f64>, mut ys: Vec<f64>, tail_slope: f64) -> RadiusFunction {
        simplify(&mut xs, &mut ys, Some(tail_slope));
        RadiusFunction { breakpoints: xs, values: ys, tail_slope }
    }

    /// `ρ(t) = t`.
    pub fn identity() -> RadiusFunction {
        RadiusFunction { breakpoints: vec![0.0], values: vec![0.0], tail_slope: 1.0 }
    }

    /// `p_{r,t₀}`: `t` up to `t₀`, then `t₀ + r (t − t₀)`.
    pub fn p(r: f64, t0: f64) -> RadiusFunction {
        RadiusFunction::raw(vec![0.0, t0], vec![0.0, t0], r)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_slope(&self) -> f64 {
        self.tail_slope
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        let k = self.breakpoints.len() - 1;
        if t >= self.breakpoints[k] {
            return self.values[k] + self.tail_slope * (t - self.breakpoints[k]);
        }
        let i = self.breakpoints.partition_point(|&b| b <= t);
        let (x0, x1) = (self.breakpoints[i - 1], self.breakpoints[i]);
        let (y0, y1) = (self.values[i - 1], self.values[i]);
        y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    }

    /// `a · ρ`.
    pub fn scale_values(&self, a: f64) -> RadiusFunction {
        RadiusFunction::raw(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * a).collect(),
            self.tail_slope * a,
        )
    }

    /// `t ↦ ρ(t / c)`.
    pub fn scale_argument(&self, c: f64) -> RadiusFunction {
        RadiusFunction::raw(
            self.breakpoints.iter().map(|b| b * c).collect(),
            self.values.clone(),
            self.tail_slope / c,
        )
    }

    /// Perspective `t ↦ t · ρ(1/t)`, which is the radius function of `𝒥u`.
    pub fn perspective(&self) -> RadiusFunction {
        let k = self.breakpoints.len() - 1;
        let mut xs = vec![0.0];
        let mut ys = vec![self.tail_slope];
        for i in (1..=k).rev() {
            xs.push(1.0 / self.breakpoints[i]);
            ys.push(self.values[i] / self.breakpoints[i]);
        }
        RadiusFunction::raw(xs, ys, self.values[0])
    }

    /// The profile whose level radius this is: `u(r) = inf{t : ρ(t) ≥ r}`.
    pub fn to_profile(&self) -> Profile {
        let mut xs = vec![0.0];
        let mut ys = vec![0.0];
        if self.values[0] > 0.0 {
            xs.push(self.values[0]);
            ys.push(0.0);
        }
        for i in 1..self.breakpoints.len() {
            xs.push(self.values[i]);
            ys.push(self.breakpoints[i]);
        }
        let tail = if self.tail_slope > 0.0 { Tail::Slope(1.0 / self.tail_slope) } else { Tail::Bounded };
        Profile::raw(xs, ys, tail)
    }

    pub fn approx_eq(&self, other: &RadiusFunction, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
        self.breakpoints.len() == other.breakpoints.len()
            && close(self.tail_slope, other.tail_slope)
            && self.breakpoints.iter().zip(&other.breakpoints).all(|(a, b)| close(*a, *b))
            && self.values.iter().zip(&other.values).all(|(a, b)| close(*a, *b))
    }
}

/// Generalized inverse `ρ(t) = sup{r : u(r) ≤ t}` of a profile. Fails for
/// `u ≡ 0`, whose level sets are unbounded.
pub fn invert_profile(u: &Profile) -> Result<RadiusFunction> {
    if u.is_zero() {
        return Err(Error::InvalidProfile("the zero profile has unbounded level sets".into()));
    }
    let r = u.breakpoints();
    let v = u.values();
    let j = v.iter().rposition(|&x| x == 0.0).unwrap();
    let mut xs = vec![0.0];
    let mut ys = vec![r[j]];
    for i in j + 1..r.len() {
        xs.push(v[i]);
        ys.push(r[i]);
    }
    let tail = match u.tail() {
        Tail::Slope(s) => 1.0 / s,
        Tail::Bounded => 0.0,
    };
    Ok(RadiusFunction::raw(xs, ys, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(invert_profile(&Profile::identity()).unwrap(), RadiusFunction::identity());
        let ind = invert_profile(&Profile::indicator(1.0)).unwrap();
        assert_eq!(ind.eval(0.0), 1.0);
        assert_eq!(ind.eval(7.0), 1.0);
        let psi = Profile::psi(0.5, 1.0).unwrap();
        let rho = invert_profile(&psi).unwrap();
        assert_eq!(rho, RadiusFunction::p(0.5, 1.0));
        assert_eq!(rho.eval(3.0), 2.0);
        assert!(invert_profile(&Profile::zero()).is_err());
    }

    #[test]
    fn inverse_twice_recovers_profile() {
        let u = Profile::new(vec![0.0, 0.5, 1.0, 2.0], vec![0.0, 0.0, 1.0, 3.0], Tail::Slope(5.0)).unwrap();
        assert_eq!(invert_profile(&u).unwrap().to_profile(), u);
        let b = Profile::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 3.0], Tail::Bounded).unwrap();
        assert_eq!(invert_profile(&b).unwrap().to_profile(), b);
    }

    #[test]
    fn perspective_is_an_involution() {
        let rho = RadiusFunction::new(vec![0.0, 1.0, 3.0], vec![0.5, 2.0, 3.0], 0.25).unwrap();
        assert!(rho.perspective().perspective().approx_eq(&rho, 1e-14));
        for t in [0.1, 0.7, 2.0, 9.0] {
            assert!((rho.perspective().eval(t) - t * rho.eval(1.0 / t)).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_convex_radius() {
        assert!(RadiusFunction::new(vec![0.0, 1.0], vec![0.0, 1.0], 2.0).is_err());
    }
}
