//! Quadrature oracles and invariances of the center-of-mass statistics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcsim::oscillator::{
    com_factor, density_normalization_quadrature, k_max, plate_probability,
    plate_probability_quadrature, OscillatorSpec,
};

#[test]
fn closed_form_matches_quadrature_on_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let r: f64 = rng.gen_range(0.01..0.9);
        let delta: f64 = rng.gen_range(0.0..1.0) * (1.0 - r).asin();
        let spec = OscillatorSpec::from_relative(r, delta).unwrap();
        let closed = plate_probability(&spec);
        let quad = plate_probability_quadrature(&spec, 1e-12);
        assert!(
            (closed - quad).abs() <= 1e-8,
            "r={r} delta={delta}: {closed} vs {quad}"
        );
    }
}

#[test]
fn density_normalization_for_small_quantum_numbers() {
    for n in [0u64, 1, 5] {
        let total = density_normalization_quadrature(n, 1e-12);
        assert!((total - 1.0).abs() <= 1e-8, "n={n}: {total}");
    }
}

#[test]
fn quadrature_also_validates_nonzero_quantum_numbers() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..20 {
        let n: u64 = rng.gen_range(0..20);
        let amplitude = ((2 * n + 1) as f64).sqrt();
        let r: f64 = rng.gen_range(0.01..0.5);
        let delta: f64 = rng.gen_range(0.0..1.0) * (1.0 - r).asin();
        let spec = OscillatorSpec::from_quantum_number(n, r * amplitude, delta).unwrap();
        let closed = plate_probability(&spec);
        let quad = plate_probability_quadrature(&spec, 1e-12);
        assert!((closed - quad).abs() <= 1e-8);
    }
}

#[test]
fn factor_is_monotone_in_each_phase_on_a_fine_grid() {
    let r = 0.05;
    let delta_max = (1.0f64 - r).asin();
    let fixed = OscillatorSpec::from_relative(r, 0.31).unwrap();
    let mut last = -1.0;
    for k in 0..=500 {
        let delta = delta_max * k as f64 / 500.0;
        let spec = OscillatorSpec::from_relative(r, delta).unwrap();
        let k_val = com_factor(&spec, &fixed).k;
        assert!(k_val > last, "K not strictly increasing at delta={delta}");
        last = k_val;
    }
}

#[test]
fn amplitude_rescaling_leaves_the_factor_bit_identical() {
    let base1 = OscillatorSpec::from_relative(0.05, 1.0).unwrap();
    let base2 = OscillatorSpec::from_relative(0.05, 0.4).unwrap();
    let reference = com_factor(&base1, &base2);
    for n in [0u64, 1, 3, 17, 4096, 1_000_000] {
        let got = com_factor(&base1.rescaled(n), &base2.rescaled(n * 2 + 5));
        assert_eq!(got.k, reference.k);
        assert_eq!(got.per_plate, reference.per_plate);
    }
}

#[test]
fn factor_maximum_sits_at_the_domain_boundary() {
    let r = 0.05;
    let delta_max = (1.0f64 - r).asin();
    let at_boundary = com_factor(
        &OscillatorSpec::from_relative(r, delta_max).unwrap(),
        &OscillatorSpec::from_relative(r, delta_max).unwrap(),
    )
    .k;
    assert_eq!(at_boundary, k_max(r));
    // interior points stay below
    for frac in [0.0, 0.3, 0.9, 0.999] {
        let spec = OscillatorSpec::from_relative(r, frac * delta_max).unwrap();
        assert!(com_factor(&spec, &spec).k < at_boundary);
    }
}
