//! Bracketing root finders for monotone scalar functions.

use crate::error::{Error, Result};

pub const MAX_ITER: usize = 200;
const MAX_EXPANSIONS: usize = 2000;

/// Bisection on `[lo, hi]` where `f(lo)` and `f(hi)` have opposite signs.
/// Stops when the bracket is below `tol` relative to its magnitude or stops
/// shrinking in floating point.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoConvergence { iterations: 0 });
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol * hi.abs().max(lo.abs()) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITER })
}

/// Doubles `x` from `start` until `pred(x)` holds.
pub fn expand_up(pred: impl Fn(f64) -> bool, start: f64) -> Result<f64> {
    let mut x = start;
    for _ in 0..MAX_EXPANSIONS {
        if pred(x) {
            return Ok(x);
        }
        x *= 2.0;
    }
    Err(Error::NoConvergence { iterations: MAX_EXPANSIONS })
}

/// Halves `x` from `start` until `pred(x)` holds.
pub fn expand_down(pred: impl Fn(f64) -> bool, start: f64) -> Result<f64> {
    let mut x = start;
    for _ in 0..MAX_EXPANSIONS {
        if pred(x) {
            return Ok(x);
        }
        x *= 0.5;
    }
    Err(Error::NoConvergence { iterations: MAX_EXPANSIONS })
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_square_root_of_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn expansion_brackets() {
        assert_eq!(expand_up(|x| x > 100.0, 1.0).unwrap(), 128.0);
        assert_eq!(expand_down(|x| x < 0.1, 1.0).unwrap(), 0.0625);
    }

    #[test]
    fn golden_section_finds_peak() {
        let (x, fx) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8 && fx.abs() < 1e-15);
    }
}
