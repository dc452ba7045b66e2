//! Seeded generators for the random bodies and profiles used by the test
//! and experiment suites. Everything runs on ChaCha8 so a seed fixes the
//! whole stream across platforms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bodies::{ConvexBody, Shape};
use crate::error::{Error, Result};
use crate::profiles::{Profile, Tail};
use crate::radial::RadialFunction;

const MAX_ATTEMPTS: usize = 1000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-6 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

fn inradius(body: &ConvexBody) -> f64 {
    match body.shape() {
        Shape::VPolytope(p) | Shape::HPolytope(p) => {
            let worst = p.normals().iter().map(|a| a.iter().map(|v| v * v).sum::<f64>().sqrt());
            1.0 / worst.fold(0.0, f64::max)
        }
        _ => 0.0,
    }
}

/// Convex hull of points on a sphere of random radius around a random
/// center, retried until the origin sits well inside. With `symmetric` the
/// center is 0 and every point comes with its negative.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, symmetric: bool) -> Result<ConvexBody> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParameter(format!("random polytopes need 1 ≤ n ≤ 3, got {n}")));
    }
    for _ in 0..MAX_ATTEMPTS {
        let radius = rng.gen_range(0.5..2.0);
        let count = match n {
            1 => 2,
            2 => rng.gen_range(4..=9),
            _ => rng.gen_range(6..=12),
        };
        let mut points = Vec::with_capacity(2 * count);
        if symmetric {
            for _ in 0..count.div_ceil(2) {
                let d = direction(rng, n);
                points.push(d.iter().map(|v| radius * v).collect::<Vec<_>>());
                points.push(d.iter().map(|v| -radius * v).collect());
            }
        } else {
            let shift: Vec<f64> = direction(rng, n).iter().map(|v| v * rng.gen_range(0.0..0.35) * radius).collect();
            for i in 0..count {
                // n = 1 has a two-point sphere
                let d = if n == 1 { vec![if i == 0 { 1.0 } else { -1.0 }] } else { direction(rng, n) };
                points.push(d.iter().zip(&shift).map(|(v, c)| c + radius * v).collect());
            }
        }
        match ConvexBody::vpolytope(&points) {
            Ok(body) if inradius(&body) >= 0.15 * radius => return Ok(body),
            Ok(_) | Err(Error::OriginNotInterior) | Err(Error::InvalidBody(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ATTEMPTS })
}

/// Convex nondecreasing piecewise-linear profile with 3 to 8 breakpoints.
/// About a quarter start flat and a fifth end in a bounded domain.
pub fn random_profile<R: Rng>(rng: &mut R) -> Profile {
    let segments = rng.gen_range(2..=7);
    let mut slope = if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.2..1.5) };
    let mut breakpoints = vec![0.0];
    let mut values = vec![0.0];
    for _ in 0..segments {
        let len = rng.gen_range(0.2..1.5);
        let r = breakpoints[breakpoints.len() - 1] + len;
        let v = values[values.len() - 1] + slope * len;
        breakpoints.push(r);
        values.push(v);
        slope += rng.gen_range(0.2..1.5);
    }
    let tail = if rng.gen_bool(0.2) { Tail::Bounded } else { Tail::Slope(slope) };
    Profile::new(breakpoints, values, tail).expect("generated profile is convex and nondecreasing")
}

/// Random profile on a random polytope.
pub fn random_radial<R: Rng>(rng: &mut R, n: usize, symmetric: bool) -> Result<RadialFunction> {
    let body = random_polytope(rng, n, symmetric)?;
    Ok(RadialFunction::new(body, random_profile(rng)))
}
