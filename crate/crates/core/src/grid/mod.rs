//! Convex functions sampled on regular lattices in dimensions 1 to 3: the
//! numerical backend used to cross-check the exact radial pipeline and to
//! handle functions outside the radial class.
//!
//! Values are stored row-major (last axis fastest); `+∞` is kept as the
//! IEEE infinity and never enters arithmetic, only comparisons.

mod io;
mod transform;

pub use io::{read_binary, read_csv, write_binary, write_csv};
pub use transform::{
    gauge_j_at, gauge_j_fmap, gauge_j_perspective, legendre_on, level_inclusion_check, polarity_at,
    polarity_on, transform_grid, transform_grid_on, InclusionCheck, PolarityEvaluator,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial::RadialFunction;

/// Largest boundary value of `e^{−f}` tolerated by sampling and integrals.
pub const LEAKAGE_TOL: f64 = 1e-6;
pub const MAX_DIM: usize = 3;

/// A rectangular lattice containing the origin as a lattice point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    step: Vec<f64>,
    counts: Vec<usize>,
    /// Index of the origin along each axis.
    zero: Vec<usize>,
}

impl GridSpec {
    /// Lattice `lo + i·step`, `i < count`, per axis. `lo` must put the
    /// origin on the lattice.
    pub fn new(lo: &[f64], step: &[f64], counts: &[usize]) -> Result<GridSpec> {
        let n = lo.len();
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidParameter(format!("grids support 1 ≤ n ≤ 3, got {n}")));
        }
        if step.len() != n || counts.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: step.len().min(counts.len()) });
        }
        let mut zero = Vec::with_capacity(n);
        for k in 0..n {
            if !(step[k] > 0.0 && step[k].is_finite()) || counts[k] < 2 {
                return Err(Error::InvalidParameter(format!("axis {k}: need step > 0 and at least 2 points")));
            }
            let z = -lo[k] / step[k];
            let zi = z.round();
            if (z - zi).abs() > 1e-9 * z.abs().max(1.0) || zi < 0.0 || zi as usize >= counts[k] {
                return Err(Error::InvalidParameter(format!("axis {k}: the origin is not a lattice point")));
            }
            zero.push(zi as usize);
        }
        Ok(GridSpec { step: step.to_vec(), counts: counts.to_vec(), zero })
    }

    /// `[−range, range]ⁿ` with step `h`; the range is rounded to a multiple
    /// of `h`.
    pub fn symmetric(dim: usize, range: f64, h: f64) -> Result<GridSpec> {
        if !(range > 0.0 && h > 0.0 && range.is_finite()) {
            return Err(Error::InvalidParameter("range and step must be positive".into()));
        }
        let m = (range / h).round().max(1.0) as usize;
        let lo = vec![-(m as f64) * h; dim];
        GridSpec::new(&lo, &vec![h; dim], &vec![2 * m + 1; dim])
    }

    pub fn dim(&self) -> usize {
        self.step.len()
    }

    pub fn step(&self) -> &[f64] {
        &self.step
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lo(&self, axis: usize) -> f64 {
        self.coord(axis, 0)
    }

    pub fn hi(&self, axis: usize) -> f64 {
        self.coord(axis, self.counts[axis] - 1)
    }

    /// Coordinate of index `i` on `axis`, exact for the origin.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        (i as f64 - self.zero[axis] as f64) * self.step[axis]
    }

    pub fn origin_index(&self) -> &[usize] {
        &self.zero
    }

    pub fn cell_volume(&self) -> f64 {
        self.step.iter().product()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.counts).fold(0, |acc, (&i, &c)| acc * c + i)
    }

    pub fn multi(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            idx[k] = flat % self.counts[k];
            flat /= self.counts[k];
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi(flat).iter().enumerate().map(|(k, &i)| self.coord(k, i)).collect()
    }

    pub fn is_boundary(&self, idx: &[usize]) -> bool {
        idx.iter().zip(&self.counts).any(|(&i, &c)| i == 0 || i + 1 == c)
    }

    /// Same box, half the step.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            step: self.step.iter().map(|h| h / 2.0).collect(),
            counts: self.counts.iter().map(|c| 2 * c - 1).collect(),
            zero: self.zero.iter().map(|z| 2 * z).collect(),
        }
    }

    /// Same step, box scaled by roughly `factor` about the origin.
    pub fn extended(&self, factor: f64) -> GridSpec {
        let mut counts = Vec::new();
        let mut zero = Vec::new();
        for k in 0..self.dim() {
            let below = (self.zero[k] as f64 * factor).ceil() as usize;
            let above = ((self.counts[k] - 1 - self.zero[k]) as f64 * factor).ceil() as usize;
            counts.push(below + above + 1);
            zero.push(below);
        }
        GridSpec { step: self.step.clone(), counts, zero }
    }

    /// Same dimension and steps, so lattice offsets line up.
    pub fn aligned_with(&self, other: &GridSpec) -> bool {
        self.dim() == other.dim()
            && self.step.iter().zip(&other.step).all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs())
    }

    fn contains(&self, x: &[f64]) -> bool {
        (0..self.dim()).all(|k| x[k] >= self.lo(k) && x[k] <= self.hi(k))
    }
}

/// Closed-form functions that can be sampled without a radial descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Descriptor {
    Radial(RadialFunction),
    /// `|x|²/2`.
    Gaussian,
    /// `⟨Qx, x⟩/2` for a positive semidefinite `Q`, given by rows.
    Quadratic { matrix: Vec<Vec<f64>> },
}

impl Descriptor {
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        match self {
            Descriptor::Radial(f) => f.eval(x),
            Descriptor::Gaussian => Ok(0.5 * x.iter().map(|v| v * v).sum::<f64>()),
            Descriptor::Quadratic { matrix } => {
                if matrix.len() != x.len() || matrix.iter().any(|row| row.len() != x.len()) {
                    return Err(Error::DimensionMismatch { expected: matrix.len(), got: x.len() });
                }
                let q: f64 = matrix.iter().zip(x).map(|(row, xi)| xi * row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()).sum();
                Ok(0.5 * q.max(0.0))
            }
        }
    }

    fn name(&self) -> String {
        match self {
            Descriptor::Radial(f) => format!("radial:{}", serde_json::to_string(f).unwrap_or_default()),
            Descriptor::Gaussian => "gaussian".into(),
            Descriptor::Quadratic { matrix } => format!("quadratic:{matrix:?}"),
        }
    }
}

/// A convex function sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<f64>,
    provenance: String,
}

impl GridFunction {
    pub fn new(spec: GridSpec, values: Vec<f64>, provenance: impl Into<String>) -> Result<GridFunction> {
        if values.len() != spec.len() {
            return Err(Error::DimensionMismatch { expected: spec.len(), got: values.len() });
        }
        let mut values = values;
        for v in values.iter_mut() {
            if v.is_nan() || *v < -1e-9 {
                return Err(Error::InvalidParameter(format!("grid values must lie in [0, +∞], found {v}")));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let origin = values[spec.flat(&spec.zero)];
        if origin.abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!("value at the origin must be 0, found {origin}")));
        }
        Ok(GridFunction { spec, values, provenance: provenance.into() })
    }

    /// Pointwise evaluation of `f` over the lattice, without a leakage check.
    pub fn from_fn(spec: GridSpec, f: impl Fn(&[f64]) -> f64 + Sync, provenance: impl Into<String>) -> Result<GridFunction> {
        let values = (0..spec.len()).into_par_iter().map(|i| f(&spec.point(i))).collect();
        GridFunction::new(spec, values, provenance)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn value_at(&self, idx: &[usize]) -> f64 {
        self.values[self.spec.flat(idx)]
    }

    /// Multilinear interpolation inside the box, `+∞` outside. A cell
    /// corner at `+∞` with positive weight makes the result `+∞`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let n = self.dim();
        if x.len() != n || !self.spec.contains(x) {
            return f64::INFINITY;
        }
        let mut base = [0usize; MAX_DIM];
        let mut frac = [0f64; MAX_DIM];
        for k in 0..n {
            let s = x[k] / self.spec.step[k] + self.spec.zero[k] as f64;
            let i = (s.floor() as usize).min(self.spec.counts[k] - 2);
            base[k] = i;
            frac[k] = (s - i as f64).clamp(0.0, 1.0);
        }
        let mut acc = 0.0;
        let mut idx = [0usize; MAX_DIM];
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            for k in 0..n {
                let up = corner >> k & 1 == 1;
                idx[k] = base[k] + up as usize;
                w *= if up { frac[k] } else { 1.0 - frac[k] };
            }
            if w == 0.0 {
                continue;
            }
            let v = self.values[self.spec.flat(&idx[..n])];
            if v.is_infinite() {
                return f64::INFINITY;
            }
            acc += w * v;
        }
        acc
    }

    /// Slope per unit `t` of `t ↦ f(t·b)` at a box boundary point `b`,
    /// from a secant over the last cell (n = 1) or the last eighth of the
    /// ray (n ≥ 2). Bounded below by `f(b)`, which convexity and `f(0) = 0`
    /// force.
    fn ray_slope(&self, b: &[f64], fb: f64) -> f64 {
        let kappa = if self.dim() == 1 { self.spec.step[0] / b[0].abs() } else { 0.125 };
        let inner: Vec<f64> = b.iter().map(|v| v * (1.0 - kappa)).collect();
        let fi = self.eval(&inner);
        if !fi.is_finite() {
            return fb;
        }
        ((fb - fi) / kappa).max(fb)
    }

    /// `eval` extended beyond the box affinely along rays from the origin.
    pub fn eval_extended(&self, x: &[f64]) -> f64 {
        if x.len() != self.dim() {
            return f64::INFINITY;
        }
        if self.spec.contains(x) {
            return self.eval(x);
        }
        let t = (0..self.dim())
            .map(|k| if x[k] > 0.0 { x[k] / self.spec.hi(k) } else if x[k] < 0.0 { x[k] / self.spec.lo(k) } else { 0.0 })
            .fold(0.0, f64::max);
        let b: Vec<f64> = (0..self.dim())
            .map(|k| (x[k] / t).clamp(self.spec.lo(k), self.spec.hi(k)))
            .collect();
        let fb = self.eval(&b);
        if !fb.is_finite() {
            return f64::INFINITY;
        }
        fb + self.ray_slope(&b, fb) * (t - 1.0)
    }

    /// Boundary lattice points with finite value, paired with their ray
    /// slopes.
    pub(crate) fn boundary_rays(&self) -> Vec<(Vec<f64>, f64)> {
        (0..self.spec.len())
            .filter_map(|i| {
                let idx = self.spec.multi(i);
                let v = self.values[i];
                if !self.spec.is_boundary(&idx) || !v.is_finite() {
                    return None;
                }
                let b = self.spec.point(i);
                let d = self.ray_slope(&b, v);
                Some((b, d))
            })
            .collect()
    }

    /// Largest value of `e^{−scale·f}` on the box boundary.
    pub fn leakage(&self, scale: f64) -> f64 {
        (0..self.spec.len())
            .filter(|&i| self.spec.is_boundary(&self.spec.multi(i)))
            .map(|i| (-scale * self.values[i]).exp())
            .fold(0.0, f64::max)
    }

    pub fn check_leakage(&self, scale: f64, tolerance: f64) -> Result<()> {
        let leakage = self.leakage(scale);
        if leakage > tolerance {
            return Err(Error::GridTooSmall { leakage, tolerance });
        }
        Ok(())
    }

    /// Worst negative second difference along axis lines and face
    /// diagonals, and whether the finite set is discretely convex along the
    /// same lines. Returns 0 for a convex sample.
    pub fn convexity_violation(&self) -> f64 {
        let n = self.dim();
        let mut dirs: Vec<Vec<isize>> = Vec::new();
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            dirs.push(e);
            for k in j + 1..n {
                let mut d = vec![0; n];
                d[j] = 1;
                d[k] = 1;
                dirs.push(d.clone());
                d[k] = -1;
                dirs.push(d);
            }
        }
        let spec = &self.spec;
        let shift = |idx: &[usize], d: &[isize], sign: isize| -> Option<usize> {
            let mut out = [0usize; MAX_DIM];
            for k in 0..n {
                let v = idx[k] as isize + sign * d[k];
                if v < 0 || v >= spec.counts[k] as isize {
                    return None;
                }
                out[k] = v as usize;
            }
            Some(spec.flat(&out[..n]))
        };
        (0..spec.len())
            .into_par_iter()
            .map(|i| {
                let idx = spec.multi(i);
                let mut worst = 0.0f64;
                for d in &dirs {
                    let (Some(a), Some(b)) = (shift(&idx, d, -1), shift(&idx, d, 1)) else { continue };
                    let (fa, fb, fx) = (self.values[a], self.values[b], self.values[i]);
                    if fa.is_finite() && fb.is_finite() {
                        if fx.is_infinite() {
                            return f64::INFINITY;
                        }
                        worst = worst.max(2.0 * fx - fa - fb);
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Discrete convexity within `1e−6·h`.
    pub fn is_convex(&self) -> bool {
        let h = self.spec.step.iter().cloned().fold(f64::INFINITY, f64::min);
        self.convexity_violation() <= 1e-6 * h
    }
}

/// Samples a descriptor on `spec`, rejecting grids whose boundary still
/// carries `e^{−f}` above [`LEAKAGE_TOL`].
pub fn sample(descriptor: &Descriptor, spec: &GridSpec) -> Result<GridFunction> {
    let f = sample_unchecked(descriptor, spec)?;
    f.check_leakage(1.0, LEAKAGE_TOL)?;
    Ok(f)
}

/// As [`sample`] without the leakage check.
pub fn sample_unchecked(descriptor: &Descriptor, spec: &GridSpec) -> Result<GridFunction> {
    if let Descriptor::Radial(r) = descriptor {
        if r.dim() != spec.dim() {
            return Err(Error::DimensionMismatch { expected: spec.dim(), got: r.dim() });
        }
    }
    descriptor.eval(&vec![0.0; spec.dim()])?;
    GridFunction::from_fn(spec.clone(), |x| descriptor.eval(x).unwrap_or(f64::NAN), descriptor.name())
}

/// Riemann sum of `e^{−scale·f}` times the cell volume.
pub fn integral_grid(f: &GridFunction, scale: f64) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
    }
    f.check_leakage(scale, LEAKAGE_TOL)?;
    let sum: f64 = f.values.iter().map(|v| (-scale * v).exp()).sum();
    Ok(sum * f.spec.cell_volume())
}

/// Lattice points carrying the lowest values whose `e^{−v}` adds up to
/// `fraction` of the total: the discrete `fraction`-mass region.
pub fn mass_region(values: &[f64], fraction: f64) -> Vec<bool> {
    let mut order: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_finite()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let total: f64 = order.iter().map(|&i| (-values[i]).exp()).sum();
    let mut acc = 0.0;
    let mut cut = f64::INFINITY;
    for &i in &order {
        acc += (-values[i]).exp();
        if acc >= fraction * total {
            cut = values[i];
            break;
        }
    }
    values.iter().map(|&v| v <= cut).collect()
}

/// Sup-norm distance between two samples on the points of `region`,
/// ignoring points where `reference` is `+∞`. A point where only `other`
/// is infinite counts as an infinite deviation.
pub fn sup_deviation(reference: &[f64], other: &[f64], region: &[bool]) -> f64 {
    reference
        .iter()
        .zip(other)
        .zip(region)
        .filter(|((r, _), &inside)| inside && r.is_finite())
        .map(|((r, o), _)| (r - o).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::ConvexBody;

    fn abs_grid(range: f64, h: f64) -> GridFunction {
        let body = ConvexBody::cube(&[1.0]).unwrap();
        sample(&Descriptor::Radial(RadialFunction::norm(body)), &GridSpec::symmetric(1, range, h).unwrap()).unwrap()
    }

    #[test]
    fn spec_rejects_off_lattice_origin() {
        assert!(GridSpec::new(&[-1.05], &[0.1], &[30]).is_err());
        let s = GridSpec::new(&[-1.0], &[0.25], &[9]).unwrap();
        assert_eq!(s.coord(0, 4), 0.0);
        assert_eq!(s.hi(0), 1.0);
    }

    #[test]
    fn flat_and_multi_are_inverse() {
        let s = GridSpec::new(&[-1.0, -2.0, 0.0], &[0.5, 1.0, 0.25], &[5, 5, 3]).unwrap();
        for i in 0..s.len() {
            assert_eq!(s.flat(&s.multi(i)), i);
        }
    }

    #[test]
    fn sampled_norm_is_abs() {
        let f = abs_grid(16.0, 1.0 / 64.0);
        for i in (0..f.spec().len()).step_by(97) {
            assert_eq!(f.values()[i], f.spec().point(i)[0].abs());
        }
    }

    #[test]
    fn small_box_leaks() {
        let body = ConvexBody::cube(&[1.0]).unwrap();
        let r = sample(&Descriptor::Radial(RadialFunction::norm(body)), &GridSpec::symmetric(1, 8.0, 1.0 / 64.0).unwrap());
        assert!(matches!(r, Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn gaussian_is_zero_at_origin() {
        let f = sample(&Descriptor::Gaussian, &GridSpec::symmetric(2, 8.0, 0.25).unwrap()).unwrap();
        assert_eq!(f.value_at(f.spec().origin_index()), 0.0);
    }

    #[test]
    fn integrals_of_simple_functions() {
        assert!((integral_grid(&abs_grid(16.0, 1.0 / 64.0), 1.0).unwrap() - 2.0).abs() < 1e-3);
        let g = sample(&Descriptor::Gaussian, &GridSpec::symmetric(2, 8.0, 1.0 / 32.0).unwrap()).unwrap();
        let v = integral_grid(&g, 1.0).unwrap();
        assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-2);
    }

    #[test]
    fn interpolation_and_extension_are_exact_for_norms() {
        let body = ConvexBody::cube(&[1.0]).unwrap();
        let f = sample_unchecked(&Descriptor::Radial(RadialFunction::norm(body)), &GridSpec::symmetric(1, 4.0, 0.25).unwrap()).unwrap();
        assert!((f.eval(&[1.1]) - 1.1).abs() < 1e-12);
        assert!((f.eval_extended(&[-9.0]) - 9.0).abs() < 1e-12);
        let body = ConvexBody::ball(2, 1.0).unwrap();
        let g = sample_unchecked(&Descriptor::Radial(RadialFunction::norm(body)), &GridSpec::symmetric(2, 4.0, 0.125).unwrap()).unwrap();
        let x = [7.0, -3.0];
        let exact = (49.0f64 + 9.0).sqrt();
        assert!((g.eval_extended(&x) - exact).abs() < 1e-2);
    }

    #[test]
    fn convexity_check_flags_concave_samples() {
        let spec = GridSpec::symmetric(1, 2.0, 0.5).unwrap();
        let good = GridFunction::from_fn(spec.clone(), |x| x[0] * x[0], "sq").unwrap();
        assert!(good.is_convex());
        let bad = GridFunction::from_fn(spec, |x| x[0].abs().sqrt(), "sqrt").unwrap();
        assert!(!bad.is_convex());
    }

    #[test]
    fn mass_region_holds_requested_fraction() {
        let f = abs_grid(16.0, 1.0 / 16.0);
        let region = mass_region(f.values(), 0.99);
        let inside: f64 = f.values().iter().zip(&region).filter(|(_, &r)| r).map(|(v, _)| (-v).exp()).sum();
        let total: f64 = f.values().iter().map(|v| (-v).exp()).sum();
        assert!(inside / total >= 0.99);
        // e^{−|x|} puts 99% of its mass in |x| ≤ ln 100
        let cut = f.values().iter().zip(&region).filter(|(_, &r)| r).map(|(v, _)| *v).fold(0.0, f64::max);
        assert!((cut - 100f64.ln()).abs() < 0.1);
    }
}
