//! Discrete ℒ, 𝒜_α and 𝒥 on lattices.

use rayon::prelude::*;

use super::{GridFunction, GridSpec, LEAKAGE_TOL};
use crate::error::{Error, Result};
use crate::profiles::Transform;

/// Upper bound on (input point, output point) pairs for the direct-sup
/// polarity over a full output grid.
const PAIR_BUDGET: usize = 1 << 33;
/// Multiplicative range of the perspective search for 𝒥.
const S_MIN: f64 = 1e-12;
const S_MAX: f64 = 1e12;

/// Lower convex hull of points sorted by `x`, one point per abscissa.
fn lower_hull(points: &mut Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    points.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points.iter() {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord a–p
            if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// `out_j = max_i (x_i y_j − g_i)` over finite `g_i`, for ascending `ys`:
/// walk the lower hull of the graph of `g` once.
fn conjugate_line(xs: &[f64], g: &[f64], ys: &[f64], out: &mut [f64]) {
    let mut pts: Vec<(f64, f64)> = xs.iter().zip(g).filter(|(_, v)| v.is_finite()).map(|(&x, &v)| (x, v)).collect();
    if pts.is_empty() {
        out.iter_mut().for_each(|o| *o = f64::NEG_INFINITY);
        return;
    }
    let hull = lower_hull(&mut pts);
    let mut k = 0;
    for (j, &y) in ys.iter().enumerate() {
        while k + 1 < hull.len() && hull[k + 1].1 - hull[k].1 < y * (hull[k + 1].0 - hull[k].0) {
            k += 1;
        }
        out[j] = y * hull[k].0 - hull[k].1;
    }
}

fn axis_coords(spec: &GridSpec, axis: usize) -> Vec<f64> {
    (0..spec.counts()[axis]).map(|i| spec.coord(axis, i)).collect()
}

/// Discrete Legendre transform on the lattice `out`, one axis at a time:
/// `T_{k+1}(…, y_k, x_{k+1}, …) = max_{x_k} (x_k y_k + T_k)` from `T_0 = −f`.
pub fn legendre_on(f: &GridFunction, out: &GridSpec) -> Result<GridFunction> {
    let n = f.dim();
    if out.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: out.dim() });
    }
    let mut shape: Vec<usize> = f.spec().counts().to_vec();
    let mut data: Vec<f64> = f.values().iter().map(|v| -v).collect();
    for axis in 0..n {
        let xs = axis_coords(f.spec(), axis);
        let ys = axis_coords(out, axis);
        let outer: usize = shape[..axis].iter().product();
        let inner: usize = shape[axis + 1..].iter().product();
        let (len, new_len) = (shape[axis], ys.len());
        let lines: Vec<Vec<f64>> = (0..outer * inner)
            .into_par_iter()
            .map(|line| {
                let (o, i) = (line / inner, line % inner);
                let g: Vec<f64> = (0..len).map(|k| -data[(o * len + k) * inner + i]).collect();
                let mut res = vec![0.0; new_len];
                conjugate_line(&xs, &g, &ys, &mut res);
                res
            })
            .collect();
        let mut next = vec![0.0; outer * new_len * inner];
        for (line, res) in lines.into_iter().enumerate() {
            let (o, i) = (line / inner, line % inner);
            for (k, v) in res.into_iter().enumerate() {
                next[(o * new_len + k) * inner + i] = v;
            }
        }
        data = next;
        shape[axis] = new_len;
    }
    GridFunction::new(out.clone(), data, format!("legendre({})", f.provenance()))
}

/// Output lattice for ℒ: same step, half-width 1.5 times the largest
/// finite difference quotient along each axis.
fn legendre_spec(f: &GridFunction) -> Result<GridSpec> {
    let spec = f.spec();
    let n = spec.dim();
    let mut slope = vec![0.0f64; n];
    for i in 0..spec.len() {
        let idx = spec.multi(i);
        let v = f.values()[i];
        if !v.is_finite() {
            continue;
        }
        for k in 0..n {
            if idx[k] + 1 < spec.counts()[k] {
                let mut j = idx.clone();
                j[k] += 1;
                let w = f.value_at(&j);
                if w.is_finite() {
                    slope[k] = slope[k].max((w - v).abs() / spec.step()[k]);
                }
            }
        }
    }
    let mut lo = Vec::with_capacity(n);
    let mut counts = Vec::with_capacity(n);
    for k in 0..n {
        let h = spec.step()[k];
        let m = ((1.5 * slope[k]) / h).ceil().max(2.0) as usize;
        lo.push(-(m as f64) * h);
        counts.push(2 * m + 1);
    }
    GridSpec::new(&lo, spec.step(), &counts)
}

/// Direct-sup evaluator of `𝒜_α f` from the finite lattice values of `f`
/// and the affine ray extension past the box boundary.
pub struct PolarityEvaluator {
    alpha: f64,
    dim: usize,
    /// Finite lattice points, `dim` coordinates each, and their values.
    points: Vec<f64>,
    values: Vec<f64>,
    /// Boundary points and the slope of `f` along their rays; the ray
    /// through `b` contributes its limit `⟨b, y⟩ / D`.
    rays: Vec<f64>,
    slopes: Vec<f64>,
}

impl PolarityEvaluator {
    pub fn new(f: &GridFunction, alpha: f64) -> Result<PolarityEvaluator> {
        Transform::Polarity(alpha).check()?;
        let spec = f.spec();
        let dim = spec.dim();
        let mut points = Vec::new();
        let mut values = Vec::new();
        for i in 0..spec.len() {
            let v = f.values()[i];
            if v.is_finite() {
                points.extend(spec.point(i));
                values.push(v);
            }
        }
        let mut rays = Vec::new();
        let mut slopes = Vec::new();
        for (b, d) in f.boundary_rays() {
            rays.extend(b);
            slopes.push(d);
        }
        Ok(PolarityEvaluator { alpha, dim, points, values, rays, slopes })
    }

    pub fn len(&self) -> usize {
        self.values.len() + self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `α sup (⟨x,y⟩ − 1)/f(x)` with the division conventions of the
    /// profile calculus: `f(x) = 0` with `⟨x,y⟩ > 1` gives `+∞`.
    pub fn eval(&self, y: &[f64]) -> f64 {
        let n = self.dim;
        let dot = |p: &[f64]| p.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        let mut best = 0.0f64;
        for (x, &v) in self.points.chunks_exact(n).zip(&self.values) {
            let s = dot(x) - 1.0;
            if s <= 0.0 {
                continue;
            }
            if v == 0.0 {
                return f64::INFINITY;
            }
            best = best.max(s / v);
        }
        for (b, &d) in self.rays.chunks_exact(n).zip(&self.slopes) {
            let s = dot(b);
            if s <= 0.0 {
                continue;
            }
            if d == 0.0 {
                return f64::INFINITY;
            }
            best = best.max(s / d);
        }
        self.alpha * best
    }
}

/// `(𝒜_α f)(y)` at a single point.
pub fn polarity_at(f: &GridFunction, alpha: f64, y: &[f64]) -> Result<f64> {
    if y.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: y.len() });
    }
    Ok(PolarityEvaluator::new(f, alpha)?.eval(y))
}

/// `𝒜_α f` over the lattice `out`.
pub fn polarity_on(f: &GridFunction, alpha: f64, out: &GridSpec) -> Result<GridFunction> {
    if out.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: out.dim() });
    }
    let ev = PolarityEvaluator::new(f, alpha)?;
    let pairs = ev.len().saturating_mul(out.len());
    if pairs > PAIR_BUDGET {
        return Err(Error::SizeLimit(format!("direct-sup polarity needs {pairs} pair evaluations; use polarity_at on samples")));
    }
    let values = (0..out.len()).into_par_iter().map(|i| ev.eval(&out.point(i))).collect();
    GridFunction::new(out.clone(), values, format!("polarity[{alpha}]({})", f.provenance()))
}

/// `(𝒥f)(w) = inf{s > 0 : s·f(w/s) ≤ 1}`, the vertical section of the
/// F-image of the epigraph, by bisection in `ln s` on the ray-extended
/// interpolant (whose perspective is nonincreasing in `s` for convex f).
pub fn gauge_j_at(f: &GridFunction, w: &[f64]) -> f64 {
    if w.iter().all(|&v| v == 0.0) {
        return 0.0;
    }
    let g = |s: f64| {
        let p: Vec<f64> = w.iter().map(|v| v / s).collect();
        s * f.eval_extended(&p)
    };
    // The small-s end is checked first: near the origin the interpolant
    // resolves the cone of f only up to the cell size, so large s is the
    // least reliable end of the search.
    if g(S_MIN) <= 1.0 {
        return 0.0;
    }
    if g(S_MAX) > 1.0 {
        return f64::INFINITY;
    }
    let (mut lo, mut hi) = (S_MIN, S_MAX);
    for _ in 0..200 {
        if hi - lo <= 1e-14 * hi {
            break;
        }
        let mid = (lo * hi).sqrt().clamp(lo, hi);
        let mid = if mid <= lo || mid >= hi { 0.5 * (lo + hi) } else { mid };
        if g(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `𝒥f` over `out` by per-point perspective bisection.
pub fn gauge_j_perspective(f: &GridFunction, out: &GridSpec) -> Result<GridFunction> {
    if out.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: out.dim() });
    }
    let values = (0..out.len()).into_par_iter().map(|i| gauge_j_at(f, &out.point(i))).collect();
    GridFunction::new(out.clone(), values, format!("gauge_j({})", f.provenance()))
}

/// Lower boundary of `conv(points) + cone(rays)` in the plane, where the
/// optional rays leave the origin to the left and right with the given
/// slopes.
struct Envelope {
    hull: Vec<(f64, f64)>,
    left: Option<f64>,
    right: Option<f64>,
}

impl Envelope {
    fn new(mut points: Vec<(f64, f64)>, left: Option<f64>, right: Option<f64>) -> Envelope {
        let mut hull = lower_hull(&mut points);
        if let Some(sr) = right {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if (b.1 - a.1) >= sr * (b.0 - a.0) {
                    hull.pop();
                } else {
                    break;
                }
            }
        }
        if let Some(sl) = left {
            let mut start = 0;
            while hull.len() - start >= 2 {
                let (a, b) = (hull[start], hull[start + 1]);
                if (b.1 - a.1) <= -sl * (b.0 - a.0) {
                    start += 1;
                } else {
                    break;
                }
            }
            hull.drain(..start);
        }
        Envelope { hull, left, right }
    }

    fn eval(&self, w: f64) -> f64 {
        let (first, last) = (self.hull[0], self.hull[self.hull.len() - 1]);
        if w < first.0 {
            return self.left.map_or(f64::INFINITY, |s| first.1 + s * (first.0 - w));
        }
        if w > last.0 {
            return self.right.map_or(f64::INFINITY, |s| last.1 + s * (w - last.0));
        }
        let k = self.hull.partition_point(|p| p.0 < w);
        if k == 0 || self.hull[k].0 == w {
            return self.hull[k].1;
        }
        let (a, b) = (self.hull[k - 1], self.hull[k]);
        a.1 + (b.1 - a.1) * (w - a.0) / (b.0 - a.0)
    }
}

/// 1-D `𝒥f` as the lower convex envelope of the F-image
/// `F(x, z) = (x/z, 1/z)` of the sampled epigraph. Vertical rays over
/// finite samples map to segments ending at the origin, rays over zeros
/// map to rays from the origin, and the affine extension past the box
/// contributes the points `(b/D, 0)`.
pub fn gauge_j_fmap(f: &GridFunction, out: &GridSpec) -> Result<GridFunction> {
    if f.dim() != 1 || out.dim() != 1 {
        return Err(Error::InvalidParameter("the F-map envelope is implemented for n = 1".into()));
    }
    let spec = f.spec();
    let mut points = vec![(0.0, 0.0)];
    let (mut zero_lo, mut zero_hi) = (0.0f64, 0.0f64);
    for i in 0..spec.len() {
        let (x, v) = (spec.coord(0, i), f.values()[i]);
        if !v.is_finite() {
            continue;
        }
        if v == 0.0 {
            zero_lo = zero_lo.min(x);
            zero_hi = zero_hi.max(x);
        } else {
            points.push((x / v, 1.0 / v));
        }
    }
    for (b, d) in f.boundary_rays() {
        if d > 0.0 {
            points.push((b[0] / d, 0.0));
        }
    }
    let right = (zero_hi > 0.0).then(|| 1.0 / zero_hi);
    let left = (zero_lo < 0.0).then(|| -1.0 / zero_lo);
    let env = Envelope::new(points, left, right);
    let values = (0..out.len()).map(|i| env.eval(out.coord(0, i)).max(0.0)).collect();
    GridFunction::new(out.clone(), values, format!("gauge_j({})", f.provenance()))
}

/// Transform onto an explicit output lattice.
pub fn transform_grid_on(f: &GridFunction, kind: Transform, out: &GridSpec) -> Result<GridFunction> {
    match kind {
        Transform::Legendre => legendre_on(f, out),
        Transform::Polarity(alpha) => polarity_on(f, alpha, out),
        Transform::GaugeJ if f.dim() == 1 => gauge_j_fmap(f, out),
        Transform::GaugeJ => gauge_j_perspective(f, out),
        other => Err(Error::InvalidParameter(format!("grid transforms support ℒ, 𝒜_α and 𝒥, not {other:?}"))),
    }
}

/// Transform onto an automatically sized lattice: the input lattice for
/// 𝒜_α and 𝒥, and 1.5 times the largest slope for ℒ. If the result still
/// leaks mass through its boundary the range is doubled once.
pub fn transform_grid(f: &GridFunction, kind: Transform) -> Result<GridFunction> {
    let out = match kind {
        Transform::Legendre => legendre_spec(f)?,
        _ => f.spec().clone(),
    };
    let g = transform_grid_on(f, kind, &out)?;
    if g.leakage(1.0) <= LEAKAGE_TOL {
        return Ok(g);
    }
    let g = transform_grid_on(f, kind, &out.extended(2.0))?;
    let leakage = g.leakage(1.0);
    if leakage > LEAKAGE_TOL {
        return Err(Error::RangeOverflow(format!("output still leaks {leakage:.3e} after one extension")));
    }
    Ok(g)
}

/// Outcome of a discrete level-set inclusion test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InclusionCheck {
    pub holds: bool,
    /// Minimum over tested `y` of `c − max_{x ∈ L_t} ⟨x, y⟩`.
    pub worst_slack: f64,
    pub points_checked: usize,
}

/// Tests `L_s(𝒜_α f) ⊆ factor·(st/α + 1)·(L_t f)°` on the lattice. `factor`
/// is 1 for the genuine inclusion; values below 1 shrink the polar for
/// harness self-tests.
pub fn level_inclusion_check(f: &GridFunction, alpha: f64, s: f64, t: f64, factor: f64) -> Result<InclusionCheck> {
    if !(s > 0.0 && t > 0.0 && factor > 0.0) {
        return Err(Error::InvalidParameter("s, t and factor must be positive".into()));
    }
    let spec = f.spec();
    let level: Vec<Vec<f64>> = (0..spec.len()).filter(|&i| f.values()[i] <= t).map(|i| spec.point(i)).collect();
    if (0..spec.len()).any(|i| f.values()[i] <= t && spec.is_boundary(&spec.multi(i))) {
        return Err(Error::DegenerateLevel);
    }
    let dual = polarity_on(f, alpha, spec)?;
    let c = factor * (s * t / alpha + 1.0);
    let slacks: Vec<f64> = (0..spec.len())
        .into_par_iter()
        .filter(|&i| dual.values()[i] <= s)
        .map(|i| {
            let y = spec.point(i);
            let h = level.iter().map(|x| x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max);
            c - h
        })
        .collect();
    let worst = slacks.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(InclusionCheck { holds: worst >= -1e-12 * c, worst_slack: worst, points_checked: slacks.len() })
}

#[cfg(test)]
mod tests {
    use super::super::{mass_region, sample, sample_unchecked, sup_deviation, Descriptor};
    use super::*;
    use crate::bodies::ConvexBody;
    use crate::radial::RadialFunction;

    const H: f64 = 1.0 / 64.0;

    fn radial(body: ConvexBody) -> Descriptor {
        Descriptor::Radial(RadialFunction::norm(body))
    }

    #[test]
    fn conjugate_line_matches_brute_force() {
        let xs: Vec<f64> = (0..41).map(|i| -2.0 + 0.1 * i as f64).collect();
        let g: Vec<f64> = xs.iter().map(|x| if *x > 1.5 { f64::INFINITY } else { (x - 0.3f64).powi(2) + 0.1 * x.sin() }).collect();
        let ys: Vec<f64> = (0..31).map(|j| -3.0 + 0.2 * j as f64).collect();
        let mut out = vec![0.0; ys.len()];
        conjugate_line(&xs, &g, &ys, &mut out);
        for (j, &y) in ys.iter().enumerate() {
            let brute = xs.iter().zip(&g).filter(|(_, v)| v.is_finite()).map(|(x, v)| x * y - v).fold(f64::NEG_INFINITY, f64::max);
            assert!((out[j] - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn legendre_of_abs_is_interval_indicator() {
        let f = sample(&radial(ConvexBody::cube(&[1.0]).unwrap()), &GridSpec::symmetric(1, 16.0, H).unwrap()).unwrap();
        let g = transform_grid(&f, Transform::Legendre).unwrap();
        for i in 0..g.spec().len() {
            let y = g.spec().point(i)[0];
            if y.abs() <= 1.0 {
                assert_eq!(g.values()[i], 0.0);
            } else {
                assert!(g.values()[i] >= (y.abs() - 1.0) * 15.0);
            }
        }
    }

    #[test]
    fn legendre_2d_matches_brute_force() {
        let spec = GridSpec::symmetric(2, 1.0, 0.25).unwrap();
        let f = GridFunction::from_fn(spec.clone(), |x| x[0] * x[0] + 0.5 * x[0] * x[1] + x[1] * x[1] + x[0].abs(), "q").unwrap();
        let out = GridSpec::symmetric(2, 2.0, 0.5).unwrap();
        let g = legendre_on(&f, &out).unwrap();
        for j in 0..out.len() {
            let y = out.point(j);
            let brute = (0..spec.len())
                .map(|i| {
                    let x = spec.point(i);
                    x[0] * y[0] + x[1] * y[1] - f.values()[i]
                })
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((g.values()[j] - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn polarity_of_sup_norm_is_l1_norm() {
        let f = sample_unchecked(&radial(ConvexBody::cube(&[1.0, 1.0]).unwrap()), &GridSpec::symmetric(2, 8.0, H).unwrap()).unwrap();
        let ev = PolarityEvaluator::new(&f, 1.0).unwrap();
        for y in [[0.3f64, 0.2], [-1.0, 0.5], [2.0, -1.5], [0.0, 0.7]] {
            let exact = y[0].abs() + y[1].abs();
            assert!((ev.eval(&y) - exact).abs() <= 2.0 * H, "{y:?}");
        }
    }

    #[test]
    fn gauge_of_euclidean_norm_is_ball_indicator() {
        let f = sample_unchecked(&radial(ConvexBody::ball(2, 1.0).unwrap()), &GridSpec::symmetric(2, 4.0, 1.0 / 16.0).unwrap()).unwrap();
        for w in [[0.3, 0.2], [0.6, -0.7], [0.0, 0.99]] {
            let v = gauge_j_at(&f, &w);
            assert!(v <= 2.0 * H, "{w:?} {v}");
        }
        for w in [[0.8, 0.7], [1.05, 0.0]] {
            assert!(gauge_j_at(&f, &w).is_infinite());
        }
    }

    #[test]
    fn fmap_and_perspective_agree_in_one_dimension() {
        let body = ConvexBody::cube(&[1.0]).unwrap();
        let prof = crate::profiles::Profile::new(vec![0.0, 0.5, 1.5], vec![0.0, 0.0, 1.0], crate::profiles::Tail::Slope(3.0)).unwrap();
        let f = sample(&Descriptor::Radial(RadialFunction::new(body, prof)), &GridSpec::symmetric(1, 16.0, H).unwrap()).unwrap();
        let a = gauge_j_fmap(&f, f.spec()).unwrap();
        let b = gauge_j_perspective(&f, f.spec()).unwrap();
        let region = mass_region(a.values(), 0.99);
        assert!(sup_deviation(a.values(), b.values(), &region) < 1e-6);
    }

    #[test]
    fn gauge_equals_legendre_of_polarity() {
        let f = sample(&Descriptor::Gaussian, &GridSpec::symmetric(1, 8.0, 1.0 / 32.0).unwrap()).unwrap();
        let j = transform_grid(&f, Transform::GaugeJ).unwrap();
        let a = polarity_on(&f, 1.0, f.spec()).unwrap();
        let la = legendre_on(&a, j.spec()).unwrap();
        let region = mass_region(j.values(), 0.99);
        assert!(sup_deviation(j.values(), la.values(), &region) <= 2.0 / 32.0);
    }

    #[test]
    fn level_inclusion_holds_and_self_test_fails() {
        let f = sample_unchecked(&radial(ConvexBody::cube(&[1.0, 1.0]).unwrap()), &GridSpec::symmetric(2, 4.0, 0.125).unwrap()).unwrap();
        let ok = level_inclusion_check(&f, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(ok.holds && ok.points_checked > 0);
        // the Gaussian is tight at st = 1: 2√(st) = st + 1
        let g = sample_unchecked(&Descriptor::Gaussian, &GridSpec::symmetric(2, 4.0, 0.125).unwrap()).unwrap();
        assert!(level_inclusion_check(&g, 1.0, 1.0, 1.0, 1.0).unwrap().holds);
        let bad = level_inclusion_check(&g, 1.0, 1.0, 1.0, 0.9).unwrap();
        assert!(!bad.holds);
    }

    #[test]
    fn level_touching_the_box_is_degenerate() {
        let f = sample_unchecked(&Descriptor::Gaussian, &GridSpec::symmetric(1, 2.0, 0.25).unwrap()).unwrap();
        assert_eq!(level_inclusion_check(&f, 1.0, 1.0, 5.0, 1.0), Err(Error::DegenerateLevel));
    }
}
