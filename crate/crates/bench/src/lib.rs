//! Fixtures shared by the benchmarks.

use cdl_core::grid::{sample, sample_unchecked, GridFunction};
use cdl_core::random::{random_profile, random_radial, rng};
use cdl_core::{ConvexBody, Descriptor, GridSpec, Profile, RadialFunction};

/// `count` seeded random profiles.
pub fn profiles(count: usize) -> Vec<Profile> {
    let mut g = rng(2024);
    (0..count).map(|_| random_profile(&mut g)).collect()
}

/// A seeded random radial function on a random polytope.
pub fn radial(n: usize) -> RadialFunction {
    random_radial(&mut rng(7 + n as u64), n, true).expect("random radial function")
}

/// `|x|²/2` sampled on `[−range, range]ⁿ` with step `h`.
pub fn gaussian(n: usize, range: f64, h: f64) -> GridFunction {
    let spec = GridSpec::symmetric(n, range, h).expect("grid");
    sample(&Descriptor::Gaussian, &spec).expect("sampled gaussian")
}

/// The Euclidean norm of dimension `n`, sampled on `[−range, range]ⁿ`
/// without a leakage check.
pub fn norm(n: usize, range: f64, h: f64) -> GridFunction {
    let f = RadialFunction::norm(ConvexBody::ball(n, 1.0).expect("ball"));
    let spec = GridSpec::symmetric(n, range, h).expect("grid");
    sample_unchecked(&Descriptor::Radial(f), &spec).expect("sampled norm")
}

/// Indicator of `[−1, 1]` and the norm `|x|` on a 1-D lattice, the pair
/// the covering benchmarks solve.
pub fn covering_pair(h: f64) -> (GridFunction, GridFunction) {
    let spec = GridSpec::symmetric(1, 4.0, h).expect("grid");
    let cube = ConvexBody::cube(&[1.0]).expect("cube");
    let f = sample_unchecked(&Descriptor::Radial(RadialFunction::indicator(cube.clone())), &spec).expect("indicator");
    let g = sample_unchecked(&Descriptor::Radial(RadialFunction::norm(cube)), &spec).expect("norm");
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(profiles(3).len(), 3);
        assert_eq!(radial(2).dim(), 2);
        assert_eq!(gaussian(1, 8.0, 0.5).values().len(), 33);
        assert_eq!(covering_pair(0.25).0.values().len(), 33);
        assert!(norm(2, 2.0, 0.5).values()[0] > 0.0);
    }
}
