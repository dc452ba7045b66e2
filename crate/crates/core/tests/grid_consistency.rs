use cdl_core::grid::{
    gauge_j_perspective, integral_grid, legendre_on, level_inclusion_check, mass_region, polarity_on, read_binary,
    read_csv, sample, sup_deviation, transform_grid, transform_grid_on, write_binary, write_csv,
};
use cdl_core::{ConvexBody, Descriptor, GridSpec, RadialFunction, Transform};

const H: f64 = 1.0 / 64.0;

fn norm_1d() -> Descriptor {
    Descriptor::Radial(RadialFunction::norm(ConvexBody::cube(&[1.0]).unwrap()))
}

#[test]
fn gauge_equals_legendre_after_polarity() {
    let spec = GridSpec::symmetric(1, 16.0, H).unwrap();
    for desc in [Descriptor::Gaussian, Descriptor::Quadratic { matrix: vec![vec![3.0]] }] {
        let f = sample(&desc, &spec).unwrap();
        let j = transform_grid(&f, Transform::GaugeJ).unwrap();
        let a = polarity_on(&f, 1.0, &spec).unwrap();
        let la = legendre_on(&a, j.spec()).unwrap();
        let region = mass_region(j.values(), 0.99);
        assert!(sup_deviation(j.values(), la.values(), &region) <= 2.0 * H);
    }
}

#[test]
fn legendre_twice_returns_the_function() {
    let spec = GridSpec::symmetric(1, 16.0, H).unwrap();
    let f = sample(&Descriptor::Gaussian, &spec).unwrap();
    let back = transform_grid_on(&transform_grid(&f, Transform::Legendre).unwrap(), Transform::Legendre, &spec).unwrap();
    let region = mass_region(f.values(), 0.99);
    assert!(sup_deviation(f.values(), back.values(), &region) <= 2.0 * H);
}

#[test]
fn two_dimensional_gauge_of_quadratic_form() {
    // 𝒥 fixes |x|²/2 and commutes with linear maps, so it fixes ⟨Qx,x⟩/2
    let spec = GridSpec::symmetric(2, 8.0, 1.0 / 16.0).unwrap();
    let desc = Descriptor::Quadratic { matrix: vec![vec![2.0, 0.0], vec![0.0, 0.5]] };
    let f = sample(&desc, &spec).unwrap();
    let out = GridSpec::symmetric(2, 2.0, 1.0 / 16.0).unwrap();
    let j = gauge_j_perspective(&f, &out).unwrap();
    let want: Vec<f64> = (0..out.len()).map(|i| desc.eval(&out.point(i)).unwrap()).collect();
    let region = mass_region(&want, 0.99);
    assert!(sup_deviation(&want, j.values(), &region) <= 2.0 / 16.0);
}

#[test]
fn integral_of_sampled_norm() {
    let f = sample(&norm_1d(), &GridSpec::symmetric(1, 16.0, H).unwrap()).unwrap();
    assert!((integral_grid(&f, 1.0).unwrap() - 2.0).abs() < 1e-3);
    let g = sample(&Descriptor::Gaussian, &GridSpec::symmetric(2, 8.0, 1.0 / 16.0).unwrap()).unwrap();
    assert!((integral_grid(&g, 1.0).unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-2);
}

#[test]
fn box_norm_level_inclusion() {
    let spec = GridSpec::symmetric(2, 8.0, 1.0 / 16.0).unwrap();
    let f = cdl_core::grid::sample_unchecked(
        &Descriptor::Radial(RadialFunction::norm(ConvexBody::cube(&[1.0, 1.0]).unwrap())),
        &spec,
    )
    .unwrap();
    let check = level_inclusion_check(&f, 1.0, 1.0, 1.0, 1.0).unwrap();
    assert!(check.holds, "{check:?}");
}

#[test]
fn dumps_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = sample(&Descriptor::Gaussian, &GridSpec::symmetric(2, 6.0, 0.25).unwrap()).unwrap();
    let csv = dir.path().join("g.csv");
    write_csv(&f, std::fs::File::create(&csv).unwrap()).unwrap();
    assert_eq!(read_csv(std::fs::File::open(&csv).unwrap()).unwrap(), f);
    let bin = dir.path().join("g.bin");
    write_binary(&f, std::fs::File::create(&bin).unwrap()).unwrap();
    assert_eq!(read_binary(std::fs::File::open(&bin).unwrap()).unwrap(), f);
}
