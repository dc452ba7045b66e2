//! Dense tableau simplex for small covering programs.

use crate::error::{Error, Result};

const EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;
/// Consecutive degenerate pivots after which the entering rule switches
/// from steepest coefficient to Bland's rule, which cannot cycle.
const DEGENERATE_STREAK: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LpSolution {
    pub value: f64,
    /// Optimal `μ`, one entry per column of the constraint matrix.
    pub primal: Vec<f64>,
    pub pivots: usize,
}

/// Solves `min Σμ_j  s.t.  Aμ ≥ b, μ ≥ 0` for `A ≥ 0`, `b ≥ 0` (`A` given
/// by rows) through its dual `max bᵀy  s.t.  Aᵀy ≤ 1, y ≥ 0`, whose slack
/// basis is feasible from the start. The primal optimum is read off the
/// reduced costs of the dual slacks.
pub(crate) fn solve_covering(a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    if b.len() != m || a.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidParameter("ragged constraint matrix".into()));
    }
    for (i, row) in a.iter().enumerate() {
        if b[i] > 0.0 && row.iter().all(|&v| v <= 0.0) {
            return Err(Error::Infeasible(format!("constraint {i} is not covered by any column")));
        }
    }
    let width = m + k + 1;
    let rhs = m + k;
    // rows 0..k: dual constraints; row k: objective (reduced costs)
    let mut t = vec![0.0; (k + 1) * width];
    for j in 0..k {
        let row = &mut t[j * width..(j + 1) * width];
        for i in 0..m {
            row[i] = a[i][j];
        }
        row[m + j] = 1.0;
        row[rhs] = 1.0;
    }
    for i in 0..m {
        t[k * width + i] = -b[i];
    }
    let mut basis: Vec<usize> = (m..m + k).collect();
    let mut streak = 0;
    let mut pivots = 0;
    loop {
        let z = &t[k * width..(k + 1) * width];
        let entering = if streak >= DEGENERATE_STREAK {
            (0..m + k).find(|&c| z[c] < -EPS)
        } else {
            (0..m + k).filter(|&c| z[c] < -EPS).min_by(|&x, &y| z[x].total_cmp(&z[y]).then(x.cmp(&y)))
        };
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..k {
            let coef = t[r * width + e];
            if coef > EPS {
                let ratio = t[r * width + rhs] / coef;
                leave = match leave {
                    Some((lr, best)) if ratio > best + EPS || (ratio > best - EPS && basis[r] > basis[lr]) => Some((lr, best)),
                    _ => Some((r, ratio)),
                };
            }
        }
        let Some((r, ratio)) = leave else {
            return Err(Error::Infeasible("covering program is unbounded in the dual".into()));
        };
        streak = if ratio <= EPS { streak + 1 } else { 0 };
        pivot(&mut t, width, k + 1, r, e);
        basis[r] = e;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::NoConvergence { iterations: pivots });
        }
    }
    let z = &t[k * width..(k + 1) * width];
    let primal = (0..k).map(|j| z[m + j].max(0.0)).collect();
    Ok(LpSolution { value: z[rhs], primal, pivots })
}

fn pivot(t: &mut [f64], width: usize, rows: usize, r: usize, e: usize) {
    let p = t[r * width + e];
    for v in &mut t[r * width..(r + 1) * width] {
        *v /= p;
    }
    let prow: Vec<f64> = t[r * width..(r + 1) * width].to_vec();
    for q in 0..rows {
        if q == r {
            continue;
        }
        let f = t[q * width + e];
        if f == 0.0 {
            continue;
        }
        for (v, pv) in t[q * width..(q + 1) * width].iter_mut().zip(&prow) {
            *v -= f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_requirements() {
        // cover points 0 and 2 with intervals; columns cover {0,1}, {1,2}, {2}
        let a = vec![vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]];
        let s = solve_covering(&a, &[1.0, 1.0, 1.0]).unwrap();
        assert!((s.value - 2.0).abs() < 1e-12);
        for (i, row) in a.iter().enumerate() {
            let cov: f64 = row.iter().zip(&s.primal).map(|(x, y)| x * y).sum();
            assert!(cov >= 1.0 - 1e-12, "row {i}");
        }
    }

    #[test]
    fn fractional_optimum() {
        // odd cycle: each column covers two of three points; optimum 3/2
        let a = vec![vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]];
        let s = solve_covering(&a, &[1.0; 3]).unwrap();
        assert!((s.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn uncovered_row_is_infeasible() {
        let a = vec![vec![1.0], vec![0.0]];
        assert!(matches!(solve_covering(&a, &[1.0, 1.0]), Err(Error::Infeasible(_))));
    }
}
