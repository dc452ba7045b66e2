//! Facet enumeration, volume and centroid for small point clouds (n ≤ 3).
//!
//! Facets are found by brute force: every n-subset of points spans a
//! candidate hyperplane which is kept when all points lie on one side.
//! Quartic in the number of points for n = 3, fine for the few dozen
//! vertices the experiments use.

use crate::error::{Error, Result};

pub(crate) const DIM_MAX: usize = 3;

/// A supporting hyperplane `⟨normal, x⟩ ≤ offset` touching the hull in
/// a facet.
#[derive(Debug, Clone)]
pub(crate) struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct Hull {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub facets: Vec<Facet>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Solves `m · x = rhs` for a square system of size ≤ 3 by Gaussian
/// elimination with partial pivoting. Returns `None` when the pivot falls
/// below `eps`.
pub(crate) fn solve_small(m: &[Vec<f64>], rhs: &[f64], eps: f64) -> Option<Vec<f64>> {
    let n = rhs.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            let mut row = row.clone();
            row.push(r);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= eps {
            return None;
        }
        a.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..=n {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = a[row][n];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Numerical rank of a small set of row vectors.
pub(crate) fn rank(rows: &[Vec<f64>], eps: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut a = rows.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        let piv = (r..a.len())
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col].abs() <= eps {
            continue;
        }
        a.swap(r, piv);
        for row in r + 1..a.len() {
            let f = a[row][col] / a[r][col];
            for k in col..cols {
                a[row][k] -= f * a[r][k];
            }
        }
        r += 1;
    }
    r
}

fn combinations(m: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > m {
        return;
    }
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] != i + m - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
        if k == 0 {
            return;
        }
    }
}

fn mean(points: &[Vec<f64>]) -> Vec<f64> {
    let dim = points[0].len();
    let mut c = vec![0.0; dim];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    c.iter_mut().for_each(|v| *v /= points.len() as f64);
    c
}

/// Removes points closer than `tol` to an earlier point.
pub(crate) fn dedup_points(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| norm(&sub(p, q)) <= tol) {
            out.push(p.clone());
        }
    }
    out
}

impl Hull {
    pub fn new(points: &[Vec<f64>]) -> Result<Hull> {
        if points.is_empty() {
            return Err(Error::InvalidBody("empty point set".into()));
        }
        let dim = points[0].len();
        if dim == 0 || dim > DIM_MAX {
            return Err(Error::InvalidBody(format!(
                "polytopes are supported in dimensions 1..={DIM_MAX}, got {dim}"
            )));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("non-finite coordinate".into()));
        }
        let c = mean(points);
        let scale = points.iter().map(|p| norm(&sub(p, &c))).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::InvalidBody("all points coincide".into()));
        }
        let points = dedup_points(points, 1e-12 * scale);
        let shifted: Vec<Vec<f64>> = points.iter().map(|p| sub(p, &c)).collect();

        let mut facets: Vec<Facet> = Vec::new();
        combinations(shifted.len(), dim, |subset| {
            let rows: Vec<Vec<f64>> = subset.iter().map(|&i| shifted[i].clone()).collect();
            let Some(a) = solve_small(&rows, &vec![1.0; dim], 1e-10 * scale) else {
                return;
            };
            if shifted.iter().any(|q| dot(&a, q) > 1.0 + 1e-9) {
                return;
            }
            let nrm = norm(&a);
            let unit: Vec<f64> = a.iter().map(|v| v / nrm).collect();
            if facets.iter().any(|f| norm(&sub(&f.normal, &unit)) < 1e-9) {
                return;
            }
            let tight = shifted
                .iter()
                .enumerate()
                .filter(|(_, q)| (dot(&a, q) - 1.0).abs() <= 1e-9)
                .map(|(i, _)| i)
                .collect();
            facets.push(Facet { offset: 1.0 / nrm + dot(&unit, &c), normal: unit, tight });
        });
        if facets.len() < dim + 1 {
            return Err(Error::InvalidBody("points do not span a full-dimensional body".into()));
        }
        Ok(Hull { dim, points, facets })
    }

    /// Indices of extreme points: those whose tight facet normals have
    /// full rank.
    pub fn extreme_points(&self) -> Vec<Vec<f64>> {
        (0..self.points.len())
            .filter(|&i| {
                let normals: Vec<Vec<f64>> = self
                    .facets
                    .iter()
                    .filter(|f| f.tight.contains(&i))
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&normals, 1e-9) == self.dim
            })
            .map(|i| self.points[i].clone())
            .collect()
    }

    /// Volume and centroid by the cone decomposition over facets from the
    /// vertex mean.
    pub fn volume_centroid(&self) -> (f64, Vec<f64>) {
        let n = self.dim;
        let c = mean(&self.points);
        let mut vol = 0.0;
        let mut moment = vec![0.0; n];
        for f in &self.facets {
            let pts: Vec<Vec<f64>> = f.tight.iter().map(|&i| sub(&self.points[i], &c)).collect();
            let height = f.offset - dot(&f.normal, &c);
            let (area, g) = facet_measure(&pts, &f.normal);
            let cone = height * area / n as f64;
            vol += cone;
            let scale = n as f64 / (n as f64 + 1.0);
            for k in 0..n {
                moment[k] += cone * scale * g[k];
            }
        }
        let centroid = (0..n).map(|k| c[k] + moment[k] / vol).collect();
        (vol, centroid)
    }
}

/// (n−1)-dimensional measure and centroid of a facet given its points.
fn facet_measure(pts: &[Vec<f64>], normal: &[f64]) -> (f64, Vec<f64>) {
    match normal.len() {
        1 => (1.0, pts[0].clone()),
        2 => {
            let dir = [-normal[1], normal[0]];
            let proj: Vec<f64> = pts.iter().map(|p| dot(p, &dir)).collect();
            let (imin, imax) = argminmax(&proj);
            let len = proj[imax] - proj[imin];
            let mid = (0..2).map(|k| 0.5 * (pts[imin][k] + pts[imax][k])).collect();
            (len, mid)
        }
        _ => {
            let (e1, e2) = plane_basis(normal);
            let origin = pts[0].clone();
            let flat: Vec<[f64; 2]> = pts
                .iter()
                .map(|p| {
                    let d = sub(p, &origin);
                    [dot(&d, &e1), dot(&d, &e2)]
                })
                .collect();
            let poly = convex_hull_2d(&flat);
            let (area, cx, cy) = polygon_area_centroid(&poly);
            let g = (0..3).map(|k| origin[k] + cx * e1[k] + cy * e2[k]).collect();
            (area, g)
        }
    }
}

fn argminmax(v: &[f64]) -> (usize, usize) {
    let mut imin = 0;
    let mut imax = 0;
    for (i, &x) in v.iter().enumerate() {
        if x < v[imin] {
            imin = i;
        }
        if x > v[imax] {
            imax = i;
        }
    }
    (imin, imax)
}

fn plane_basis(normal: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let helper = if normal[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross(normal, &helper);
    let n1 = norm(&e1);
    let e1: Vec<f64> = e1.iter().map(|v| v / n1).collect();
    let e2 = cross(normal, &e1);
    (e1, e2)
}

pub(crate) fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Andrew's monotone chain; returns the hull counter-clockwise.
pub(crate) fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-14 && (a[1] - b[1]).abs() < 1e-14);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_area_centroid(poly: &[[f64; 2]]) -> (f64, f64, f64) {
    let m = poly.len();
    if m < 3 {
        return (0.0, 0.0, 0.0);
    }
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for i in 0..m {
        let p = poly[i];
        let q = poly[(i + 1) % m];
        let w = p[0] * q[1] - q[0] * p[1];
        a += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    a *= 0.5;
    (a.abs(), cx / (6.0 * a), cy / (6.0 * a))
}
