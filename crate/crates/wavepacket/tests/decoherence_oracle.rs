//! The two-packet interference algebra checked against three independent
//! routes: direct superposition of analytic branches, spectral grid
//! propagation of the sampled cat state, and velocity averaging (both
//! Gauss-Hermite and Monte Carlo) of the boosted zero-temperature density.
//! A common boost shifts the free-particle density rigidly, so the thermal
//! average is an average over shifted copies; the closed thermal form has to
//! reproduce that without being told so.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use wavepacket::decoherence::{
    attenuation, cat_density_thermal, cat_density_thermal_parts, cat_density_zero_t, cat_norm,
    measure_attenuation_from_density, CatScenario,
};
use wavepacket::gaussian::{self, GaussianPacket};
use wavepacket::propagator::{propagate_spectral, Grid, WaveField};
use wavepacket::units::Constants;

fn nat() -> Constants {
    Constants::natural()
}

fn branch(s: &CatScenario, sign: f64) -> GaussianPacket {
    GaussianPacket::new(s.mass, s.sigma, sign * s.separation_d / 2.0, 0.0, 0.0).unwrap()
}

#[test]
fn zero_t_density_matches_direct_branch_superposition() {
    let c = nat();
    let s = CatScenario::new(1.0, 4.0, 1.0, 0.0).unwrap();
    let n = cat_norm(&s);
    let plus = branch(&s, 1.0);
    let minus = branch(&s, -1.0);
    for t in [0.0, 0.8, 2.0] {
        let peak = cat_density_zero_t(&s, s.separation_d / 2.0, t, &c);
        for x in common::linspace(-8.0, 8.0, 161) {
            let amp = n
                * (gaussian::wavefunction(&plus, x, t, &c)
                    + gaussian::wavefunction(&minus, x, t, &c));
            let want = amp.norm_sqr();
            let got = cat_density_zero_t(&s, x, t, &c);
            assert!(
                (got - want).abs() < 1e-12 * peak,
                "t {t} x {x}: closed {got} superposition {want}"
            );
        }
    }
}

#[test]
fn zero_t_density_matches_spectral_propagation() {
    let c = nat();
    let s = CatScenario::new(1.0, 4.0, 1.0, 0.0).unwrap();
    let t = 2.0 * s.mass * s.sigma * s.sigma / c.hbar;
    let spread_t = {
        let g = c.hbar * t / (2.0 * s.mass * s.sigma);
        (s.sigma * s.sigma + g * g).sqrt()
    };
    let half = s.separation_d / 2.0 + 12.0 * spread_t;
    let grid = Grid::new(-half, half, 4096).unwrap();
    let n = cat_norm(&s);
    let plus = branch(&s, 1.0);
    let minus = branch(&s, -1.0);
    let values: Vec<_> = grid
        .points()
        .iter()
        .map(|&x| {
            n * (gaussian::wavefunction(&plus, x, 0.0, &c)
                + gaussian::wavefunction(&minus, x, 0.0, &c))
        })
        .collect();
    let mut field = WaveField {
        grid: grid.clone(),
        values,
    };
    let norm = field.norm();
    for v in &mut field.values {
        *v /= norm;
    }
    let evolved = propagate_spectral(&field, s.mass, t, &c).unwrap();
    let err = grid
        .points()
        .iter()
        .zip(evolved.values.iter())
        .map(|(&x, v)| (v.norm_sqr() - cat_density_zero_t(&s, x, t, &c)).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-8, "max density error {err:.3e}");
}

#[test]
fn thermal_density_matches_quadrature_velocity_average() {
    let c = nat();
    let s = CatScenario::new(1.0, 4.0, 1.0, 1.5).unwrap();
    let sd = (c.k_boltzmann * s.temperature / s.mass).sqrt();
    for t in [0.7, 3.0] {
        let peak = cat_density_thermal(&s, s.separation_d / 2.0, t, &c);
        for x in [-4.5, -2.0, -0.7, 0.0, 0.9, 2.0, 4.5] {
            let closed = cat_density_thermal(&s, x, t, &c);
            // at late times the boosted density is narrow in v compared to
            // the thermal weight, so the rule needs more nodes than the
            // 64-point default
            let gh = common::maxwell_average_n(240, 0.0, sd, |v| {
                cat_density_zero_t(&s, x - v * t, t, &c)
            });
            assert!(
                (gh - closed).abs() < 1e-10 * peak,
                "t {t} x {x}: gh {gh} closed {closed}"
            );
        }
    }
}

#[test]
fn thermal_density_matches_mc_velocity_average() {
    let c = nat();
    let s = CatScenario::new(1.0, 4.0, 1.0, 1.5).unwrap();
    let t = 1.0;
    let sd = (c.k_boltzmann * s.temperature / s.mass).sqrt();
    let vel = Normal::new(0.0, sd).unwrap();
    let n = 1_000_000usize;
    for (i, x) in [-4.0, -2.0, -1.0, 0.0, 0.5, 2.0, 4.0].into_iter().enumerate() {
        let mut rng = ChaCha12Rng::seed_from_u64(2718 + i as u64);
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for k in 0..n {
            let val = cat_density_zero_t(&s, x - vel.sample(&mut rng) * t, t, &c);
            let delta = val - mean;
            mean += delta / (k + 1) as f64;
            m2 += delta * (val - mean);
        }
        let se = (m2 / ((n - 1) as f64 * n as f64)).sqrt();
        let closed = cat_density_thermal(&s, x, t, &c);
        let z = (mean - closed).abs() / se;
        assert!(z < 4.0, "x {x}: mc {mean} closed {closed} z {z:.2}");
    }
}

#[test]
fn quadrature_averaged_density_round_trips_to_attenuation() {
    // velocity-average the zero-temperature density numerically, then pull
    // the attenuation back out of the curve; the closed coefficient must
    // come out, which exercises both the thermal density algebra and the
    // envelope extraction at once
    let c = nat();
    let s = CatScenario::new(0.9, 4.0, 1.0, 1.7).unwrap();
    let t = 0.6;
    let sd = (c.k_boltzmann * s.temperature / s.mass).sqrt();
    let var_t = {
        let g = c.hbar * t / (2.0 * s.mass * s.sigma);
        s.sigma * s.sigma + g * g + sd * sd * t * t
    };
    let half = s.separation_d / 2.0 + 8.0 * var_t.sqrt();
    let xs = common::linspace(-half, half, 1501);
    let ps: Vec<f64> = xs
        .iter()
        .map(|&x| common::maxwell_average(0.0, sd, |v| cat_density_zero_t(&s, x - v * t, t, &c)))
        .collect();
    let measured = measure_attenuation_from_density(&xs, &ps, &s, t, &c).unwrap();
    let closed = attenuation(&s, t, &c);
    assert!(
        (measured - closed).abs() / closed < 1e-8,
        "measured {measured} closed {closed}"
    );
}

#[test]
fn interference_never_exceeds_twice_the_geometric_mean() {
    let c = nat();
    let s = CatScenario::new(1.0, 5.0, 1.0, 2.0).unwrap();
    for t in [0.0, 0.4, 1.5, 6.0] {
        for x in common::linspace(-9.0, 9.0, 121) {
            let parts = cat_density_thermal_parts(&s, x, t, &c);
            let bound = 2.0 * (parts.packet1 * parts.packet2).sqrt();
            assert!(parts.interference.abs() <= bound * (1.0 + 1e-12));
            assert!(parts.packet1 + parts.packet2 + parts.interference >= 0.0);
        }
    }
}
