//! Functional covering numbers `N(e^{−φ}, e^{−ψ})`: reflections and
//! (g-)inf-convolutions, the volume-ratio bounds, a small exact covering LP
//! on lattices, the Rogers–Shephard type ratio and the polarity duality
//! experiment.

mod simplex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use crate::grid::{gauge_j_perspective, integral_grid, transform_grid_on, GridFunction, GridSpec};
use crate::profiles::{g_inf_conv_profile, inf_conv_profile, Transform};
use crate::radial::{RadialFunction, CENTERED_TOL};

/// Constraint count up to which `covering_lp` solves exactly.
pub const LP_MAX_CONSTRAINTS: usize = 512;
/// Tolerance used to decide that two bodies coincide.
const BODY_TOL: f64 = 1e-12;
/// Level at which `e^{−t}` is negligible for the grid route.
const GRID_LEVEL: f64 = 16.0;

/// `φ⁻(x) = φ(−x)`: the same profile on `−K`.
pub fn reflect(phi: &RadialFunction) -> RadialFunction {
    RadialFunction::new(phi.body.reflected(), phi.profile.clone())
}

fn same_body(a: &ConvexBody, b: &ConvexBody) -> bool {
    a.dim() == b.dim() && (a == b || a.approx_eq(b, BODY_TOL))
}

/// `φ □ ψ` for two functions on the same body.
pub fn inf_conv(phi: &RadialFunction, psi: &RadialFunction) -> Result<RadialFunction> {
    if !same_body(&phi.body, &psi.body) {
        return Err(Error::BodyMismatch);
    }
    Ok(RadialFunction::new(phi.body.clone(), inf_conv_profile(&phi.profile, &psi.profile)))
}

/// `φ ⊡ ψ = 𝒥(𝒥φ □ 𝒥ψ)` for two functions on the same body.
pub fn g_inf_conv(phi: &RadialFunction, psi: &RadialFunction) -> Result<RadialFunction> {
    if !same_body(&phi.body, &psi.body) {
        return Err(Error::BodyMismatch);
    }
    Ok(RadialFunction::new(phi.body.clone(), g_inf_conv_profile(&phi.profile, &psi.profile)))
}

/// Lattice inf-convolution `min_y f(y) + g(x − y)` on `out`; all three
/// lattices must share the step.
pub fn grid_inf_conv(f: &GridFunction, g: &GridFunction, out: &GridSpec) -> Result<GridFunction> {
    if !f.spec().aligned_with(g.spec()) || !f.spec().aligned_with(out) {
        return Err(Error::InvalidParameter("inf-convolution needs aligned lattices".into()));
    }
    let n = f.dim();
    let fs = f.spec();
    let finite: Vec<(Vec<isize>, f64)> = (0..fs.len())
        .filter(|&i| f.values()[i].is_finite())
        .map(|i| (offsets(fs, i), f.values()[i]))
        .collect();
    let gs = g.spec();
    let values = (0..out.len())
        .into_par_iter()
        .map(|i| {
            let x = offsets(out, i);
            let mut best = f64::INFINITY;
            let mut idx = [0usize; 3];
            'outer: for (y, fy) in &finite {
                if *fy >= best {
                    continue;
                }
                for k in 0..n {
                    let j = gs.origin_index()[k] as isize + x[k] - y[k];
                    if j < 0 || j >= gs.counts()[k] as isize {
                        continue 'outer;
                    }
                    idx[k] = j as usize;
                }
                best = best.min(fy + g.value_at(&idx[..n]));
            }
            best
        })
        .collect();
    GridFunction::new(out.clone(), values, format!("infconv({}, {})", f.provenance(), g.provenance()))
}

/// Signed lattice offsets of a point from the origin.
fn offsets(spec: &GridSpec, i: usize) -> Vec<isize> {
    spec.multi(i).iter().zip(spec.origin_index()).map(|(&a, &z)| a as isize - z as isize).collect()
}

/// Lattice `f ⊡ g = 𝒥(𝒥f □ 𝒥g)` on `out`.
pub fn grid_g_inf_conv(f: &GridFunction, g: &GridFunction, out: &GridSpec) -> Result<GridFunction> {
    let jf = gauge_j_perspective(f, f.spec())?;
    let jg = gauge_j_perspective(g, g.spec())?;
    let conv = grid_inf_conv(&jf, &jg, out)?;
    transform_grid_on(&conv, Transform::GaugeJ, out)
}

/// Largest coordinate extent `max_k max(h_K(e_k), h_K(−e_k))`.
fn axis_extent(body: &ConvexBody) -> Result<f64> {
    let n = body.dim();
    let mut r = 0.0f64;
    for k in 0..n {
        for s in [-1.0, 1.0] {
            let mut e = vec![0.0; n];
            e[k] = s;
            r = r.max(body.support(&e)?);
        }
    }
    Ok(r)
}

/// Coordinate extent of the level set `L_t(φ)`.
fn reach(phi: &RadialFunction, t: f64) -> Result<f64> {
    Ok(axis_extent(&phi.body)? * phi.radius()?.eval(t))
}

/// Default lattice for grid fallbacks in dimensions 1 and 2.
fn fallback_spec(n: usize, range: f64) -> Result<GridSpec> {
    let per_side = match n {
        1 => 1024.0,
        2 => 48.0,
        _ => return Err(Error::BodyMismatch),
    };
    GridSpec::symmetric(n, range, range / per_side)
}

fn sample_radial(phi: &RadialFunction, spec: &GridSpec) -> Result<GridFunction> {
    GridFunction::from_fn(spec.clone(), |x| phi.eval(x).unwrap_or(f64::NAN), "radial")
}

/// The four volume-ratio bounds on `N(e^{−φ}, e^{−ψ})`, plus the optional
/// LP and greedy values when a lattice computation was run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringEstimate {
    /// `∫e^{−2φ} / ∫e^{−(φ+ψ)}`.
    pub lower_bound: f64,
    /// `2ⁿ` times the lower bound.
    pub upper_even: f64,
    /// `∫e^{−φ□ψ⁻} / ∫e^{−2ψ⁻}`.
    pub upper_infc: f64,
    /// `2ⁿ ∫e^{−φ⊡ψ⁻} / ∫e^{−2ψ⁻}`.
    pub upper_ginf: f64,
    pub lp_value: Option<f64>,
    pub greedy_value: Option<f64>,
    /// Lattice used by a grid fallback or the LP, if any.
    pub grid: Option<GridSpec>,
    /// Every integral was computed in closed form.
    pub exact: bool,
}

impl CoveringEstimate {
    /// Point estimate: the LP value when present, otherwise the geometric
    /// midpoint of `[lower_bound, upper_even]`.
    pub fn estimate(&self) -> f64 {
        self.lp_value.unwrap_or_else(|| (self.lower_bound * self.upper_even).sqrt())
    }
}

/// Volume-ratio bounds from exact integrals when the pair stays in the
/// radial class (same body, and `ψ⁻` on the body of `φ` for the
/// convolution bounds); otherwise from a lattice in dimensions 1 and 2.
pub fn covering_volume_bounds(phi: &RadialFunction, psi: &RadialFunction) -> Result<CoveringEstimate> {
    let n = phi.dim();
    if psi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: psi.dim() });
    }
    let two_n = 2f64.powi(n as i32);
    let a = phi.scaled_values(2.0).integral_exp()?;
    let psi_minus = reflect(psi);
    let c = psi_minus.scaled_values(2.0).integral_exp()?;
    let mut exact = true;
    let mut grid = None;
    let sum = if same_body(&phi.body, &psi.body) {
        RadialFunction::new(phi.body.clone(), phi.profile.add(&psi.profile)).integral_exp()?
    } else {
        exact = false;
        let spec = fallback_spec(n, 1.1 * reach(phi, GRID_LEVEL)?.min(reach(psi, GRID_LEVEL)?))?;
        let f = GridFunction::from_fn(spec.clone(), |x| phi.eval(x).unwrap_or(f64::NAN) + psi.eval(x).unwrap_or(f64::NAN), "sum")?;
        grid = Some(spec);
        integral_grid(&f, 1.0)?
    };
    let (infc, ginf) = if same_body(&phi.body, &psi_minus.body) {
        (inf_conv(phi, &psi_minus)?.integral_exp()?, g_inf_conv(phi, &psi_minus)?.integral_exp()?)
    } else {
        exact = false;
        let range = 1.1 * (reach(phi, 2.0 * GRID_LEVEL)? + reach(&psi_minus, 2.0 * GRID_LEVEL)?);
        let spec = fallback_spec(n, range)?;
        let f = sample_radial(phi, &spec)?;
        let g = sample_radial(&psi_minus, &spec)?;
        let infc = integral_grid(&grid_inf_conv(&f, &g, &spec)?, 1.0)?;
        let ginf = integral_grid(&grid_g_inf_conv(&f, &g, &spec)?, 1.0)?;
        grid = Some(spec);
        (infc, ginf)
    };
    let lower = a / sum;
    Ok(CoveringEstimate {
        lower_bound: lower,
        upper_even: two_n * lower,
        upper_infc: infc / c,
        upper_ginf: two_n * ginf / c,
        lp_value: None,
        greedy_value: None,
        grid,
        exact,
    })
}

/// A covering measure on lattice points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSolution {
    /// `Σ μ_j`.
    pub value: f64,
    /// Atoms `(point, mass)` with positive mass, in lattice order.
    pub measure: Vec<(Vec<f64>, f64)>,
    /// Solved to optimality by the simplex method; `false` for the greedy
    /// upper bound.
    pub exact: bool,
    pub constraints: usize,
}

/// Lattice covering number: the least `Σμ_j` over measures on the lattice
/// of `f` with `Σ_j μ_j e^{−g(x_i − y_j)} ≥ e^{−f(x_i)}` at every lattice
/// point `x_i` where `f` is finite. Exact up to [`LP_MAX_CONSTRAINTS`]
/// constraints, greedy upper bound beyond.
pub fn covering_lp(f: &GridFunction, g: &GridFunction) -> Result<CoverSolution> {
    let n = f.dim();
    if n > 2 {
        return Err(Error::SizeLimit(format!("covering LP supports n ≤ 2, got {n}")));
    }
    if !f.spec().aligned_with(g.spec()) {
        return Err(Error::InvalidParameter("covering LP needs aligned lattices".into()));
    }
    let fs = f.spec();
    let rows: Vec<usize> = (0..fs.len()).filter(|&i| f.values()[i].is_finite()).collect();
    let target: Vec<f64> = rows.iter().map(|&i| (-f.values()[i]).exp()).collect();
    let kernel = |i: usize, j: usize| -> f64 {
        let (x, y) = (offsets(fs, i), offsets(fs, j));
        let gs = g.spec();
        let mut idx = [0usize; 2];
        for k in 0..n {
            let v = gs.origin_index()[k] as isize + x[k] - y[k];
            if v < 0 || v >= gs.counts()[k] as isize {
                return 0.0;
            }
            idx[k] = v as usize;
        }
        (-g.value_at(&idx[..n])).exp()
    };
    // candidate centers: lattice points reaching at least one constraint
    let cols: Vec<usize> = (0..fs.len()).filter(|&j| rows.iter().any(|&i| kernel(i, j) > 0.0)).collect();
    let measure_of = |mu: &[f64]| -> Vec<(Vec<f64>, f64)> {
        cols.iter().zip(mu).filter(|(_, &m)| m > 0.0).map(|(&j, &m)| (fs.point(j), m)).collect()
    };
    if rows.len() <= LP_MAX_CONSTRAINTS {
        let a: Vec<Vec<f64>> = rows.iter().map(|&i| cols.iter().map(|&j| kernel(i, j)).collect()).collect();
        let sol = simplex::solve_covering(&a, &target)?;
        return Ok(CoverSolution { value: sol.value, measure: measure_of(&sol.primal), exact: true, constraints: rows.len() });
    }
    // greedy: put the missing mass at the point of largest deficit
    let mut deficit = target.clone();
    let mut mass = vec![0.0; fs.len()];
    let scale = target.iter().cloned().fold(0.0, f64::max);
    for _ in 0..20 * rows.len() {
        let (r, &d) = deficit.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0))).expect("nonempty");
        if d <= 1e-12 * scale {
            break;
        }
        let center = rows[r];
        mass[center] += d;
        for (q, &i) in rows.iter().enumerate() {
            deficit[q] -= d * kernel(i, center);
        }
    }
    // anything left is covered pointwise, which keeps the bound feasible
    for (q, &i) in rows.iter().enumerate() {
        if deficit[q] > 0.0 {
            mass[i] += deficit[q];
        }
    }
    let measure: Vec<(Vec<f64>, f64)> = (0..fs.len()).filter(|&j| mass[j] > 0.0).map(|j| (fs.point(j), mass[j])).collect();
    let value = measure.iter().map(|(_, m)| m).sum();
    Ok(CoverSolution { value, measure, exact: false, constraints: rows.len() })
}

/// `∫e^{−φ⊡φ⁻} / ∫e^{−φ}`, at most `8ⁿ`.
pub fn rs_ratio(phi: &RadialFunction) -> Result<f64> {
    let minus = reflect(phi);
    let base = phi.integral_exp()?;
    if same_body(&phi.body, &minus.body) {
        return Ok(g_inf_conv(phi, &minus)?.integral_exp()? / base);
    }
    let n = phi.dim();
    let spec = fallback_spec(n, 2.2 * reach(phi, 2.0 * GRID_LEVEL)?)?;
    let f = sample_radial(phi, &spec)?;
    let g = sample_radial(&minus, &spec)?;
    Ok(integral_grid(&grid_g_inf_conv(&f, &g, &spec)?, 1.0)? / base)
}

/// `(∫e^{−2φ}, ∫e^{−φ}, 2ⁿ∫e^{−2φ})`, which is nondecreasing for every
/// geometric convex `φ`.
pub fn km_square_check(phi: &RadialFunction) -> Result<(f64, f64, f64)> {
    let a = phi.scaled_values(2.0).integral_exp()?;
    let b = phi.integral_exp()?;
    let c = 2f64.powi(phi.dim() as i32) * a;
    let tol = 1e-12 * c;
    if a > b + tol || b > c + tol {
        return Err(Error::Precondition(format!("square sandwich fails: {a} ≤ {b} ≤ {c}")));
    }
    Ok((a, b, c))
}

/// Primal and 𝒜_α-dual covering estimates for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: usize,
    pub alpha: f64,
    /// Bounds for `N(e^{−φ}, e^{−ψ})`.
    pub primal: CoveringEstimate,
    /// Bounds for `N(e^{−𝒜_αψ}, e^{−𝒜_αφ})`.
    pub dual: CoveringEstimate,
    pub n_primal: f64,
    pub n_dual: f64,
    /// `n_primal / n_dual`.
    pub ratio: f64,
    /// `ratio^{1/n}`, to be compared against a corridor `[c, C]`.
    pub ratio_root: f64,
    /// Corridor implied by the two sets of bounds alone:
    /// `[lower_p / upper_d, upper_p / lower_d]`.
    pub bound_corridor: (f64, f64),
}

fn centered(phi: &RadialFunction) -> Result<bool> {
    let bar = phi.barycenter()?;
    Ok(bar.iter().map(|v| v * v).sum::<f64>().sqrt() <= CENTERED_TOL)
}

/// Compares `N(e^{−φ}, e^{−ψ})` with `N(e^{−𝒜_αψ}, e^{−𝒜_αφ})`. Each
/// function or its transform must have barycenter 0. With `lp` a lattice
/// is given on which both covering programs are also solved (n ≤ 2); the
/// LP values then replace the volume-bound midpoints as estimates.
pub fn duality_experiment(
    phi: &RadialFunction,
    psi: &RadialFunction,
    alpha: f64,
    lp: Option<&GridSpec>,
) -> Result<DualityReport> {
    Transform::Polarity(alpha).check()?;
    let n = phi.dim();
    let dphi = phi.transform(Transform::Polarity(alpha))?;
    let dpsi = psi.transform(Transform::Polarity(alpha))?;
    for (f, df, name) in [(phi, &dphi, "φ"), (psi, &dpsi, "ψ")] {
        if !(centered(f)? || centered(df)?) {
            return Err(Error::Precondition(format!("neither {name} nor its transform has barycenter 0")));
        }
    }
    let mut primal = covering_volume_bounds(phi, psi)?;
    let mut dual = covering_volume_bounds(&dpsi, &dphi)?;
    if let Some(spec) = lp {
        for (est, f, g) in [(&mut primal, phi, psi), (&mut dual, &dpsi, &dphi)] {
            let sol = covering_lp(&sample_radial(f, spec)?, &sample_radial(g, spec)?)?;
            if sol.exact {
                est.lp_value = Some(sol.value);
            } else {
                est.greedy_value = Some(sol.value);
            }
            est.grid = Some(spec.clone());
        }
    }
    let (n_primal, n_dual) = (primal.estimate(), dual.estimate());
    let ratio = n_primal / n_dual;
    Ok(DualityReport {
        n,
        alpha,
        bound_corridor: (primal.lower_bound / dual.upper_even, primal.upper_even / dual.lower_bound),
        primal,
        dual,
        n_primal,
        n_dual,
        ratio,
        ratio_root: ratio.powf(1.0 / n as f64),
    })
}
