//! Moment formulas checked against routes that never use them: RK4
//! integration of the underlying ODE system, direct quadrature of the
//! analytic wavefunction with finite-difference derivatives, and a
//! brute-force scan for the energy-minimizing width.

mod common;

use num_complex::Complex64;
use wavepacket::gaussian::{
    self, evolve_moments, initial_moments, min_uncertainty_sigma, uncertainty_product,
    GaussianPacket,
};
use wavepacket::units::Constants;

/// All five moments of the analytic wavefunction at time t by trapezoidal
/// quadrature, with derivatives from fourth-order central differences. The
/// only library entry point used is the wavefunction itself.
fn quadrature_moments(
    packet: &GaussianPacket,
    t: f64,
    lo: f64,
    hi: f64,
    n: usize,
    c: &Constants,
) -> wavepacket::gaussian::MomentSet {
    let h = 2e-3;
    let psi = |x: f64| gaussian::wavefunction(packet, x, t, c);
    let xs = common::linspace(lo, hi, n);
    let dx = xs[1] - xs[0];
    let mut mx = 0.0;
    let mut mx2 = 0.0;
    let mut mp = 0.0;
    let mut mp2 = 0.0;
    let mut mxp = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let p0 = psi(x);
        let pp = psi(x + h);
        let pm = psi(x - h);
        let pp2 = psi(x + 2.0 * h);
        let pm2 = psi(x - 2.0 * h);
        let d1 = (-pp2 + 8.0 * pp - 8.0 * pm + pm2) / (12.0 * h);
        let d2 = (-pp2 + 16.0 * pp - 30.0 * p0 + 16.0 * pm - pm2) / (12.0 * h * h);
        let rho = p0.norm_sqr();
        mx += w * x * rho;
        mx2 += w * x * x * rho;
        mp += w * (p0.conj() * Complex64::new(0.0, -c.hbar) * d1).re;
        mp2 += w * (p0.conj() * (-c.hbar * c.hbar) * d2).re;
        mxp += w * (p0.conj() * x * Complex64::new(0.0, -c.hbar) * d1).re;
    }
    wavepacket::gaussian::MomentSet {
        mean_x: mx * dx,
        mean_p: mp * dx,
        mean_x2: mx2 * dx,
        mean_p2: mp2 * dx,
        mean_sym_xp: 2.0 * mxp * dx,
    }
}

#[test]
fn squeezed_moving_initial_moments_match_quadrature_and_frozen_values() {
    let c = Constants::natural();
    let packet = GaussianPacket::new(1.0, 1.0, 0.5, 2.0, 3.0).unwrap();
    let m = initial_moments(&packet, &c).unwrap();
    // these decimals were produced by the quadrature below and frozen
    assert_eq!(m.mean_x, 0.5);
    assert_eq!(m.mean_p, 2.0);
    assert_eq!(m.mean_x2, 1.25);
    assert_eq!(m.mean_p2, 6.5);
    assert_eq!(m.mean_sym_xp, 5.0);

    let q = quadrature_moments(&packet, 0.0, -19.5, 20.5, 4096, &c);
    assert!(common::moment_distance(&q, &m) < 1e-8, "distance {}", common::moment_distance(&q, &m));
}

#[test]
fn plain_and_squeezed_rest_moments_match_quadrature() {
    let c = Constants::natural();
    for (sigma, cc) in [(1.0, 0.0), (0.6, 0.0), (1.0, -2.5), (1.7, 4.0)] {
        let packet = GaussianPacket::new(1.0, sigma, 0.0, 0.0, cc).unwrap();
        let m = initial_moments(&packet, &c).unwrap();
        let span = 20.0 * sigma;
        let q = quadrature_moments(&packet, 0.0, -span, span, 4096, &c);
        assert!(
            common::moment_distance(&q, &m) < 1e-8,
            "sigma {sigma} C {cc}: distance {}",
            common::moment_distance(&q, &m)
        );
    }
}

#[test]
fn evolve_moments_matches_rk4_integration() {
    let c = Constants::natural();
    let packet = GaussianPacket::new(1.3, 0.7, -1.0, 3.0, 2.0).unwrap();
    let m0 = initial_moments(&packet, &c).unwrap();
    for t in [1.7f64, -0.9] {
        let steps = (t.abs() / 1e-5).ceil() as usize;
        let ode = common::rk4_moments(&m0, packet.mass, t, steps);
        let closed = evolve_moments(&m0, packet.mass, t);
        assert!(
            common::moment_distance(&ode, &closed) < 1e-10,
            "t {t}: distance {}",
            common::moment_distance(&ode, &closed)
        );
    }
}

#[test]
fn evolved_wavefunction_moments_match_closed_evolution() {
    let c = Constants::natural();
    let packet = GaussianPacket::new(1.0, 0.8, 0.5, 1.5, -1.0).unwrap();
    let t = 2.0;
    let m = evolve_moments(&initial_moments(&packet, &c).unwrap(), packet.mass, t);
    let center_t = packet.x0 + packet.v0 * t;
    let width = gaussian::packet_variance_at(&packet, t, &c).sqrt().max(packet.sigma);
    let lo = packet.x0.min(center_t) - 18.0 * width;
    let hi = packet.x0.max(center_t) + 18.0 * width;
    let q = quadrature_moments(&packet, t, lo, hi, 6000, &c);
    assert!(
        common::moment_distance(&q, &m) < 1e-8,
        "distance {}",
        common::moment_distance(&q, &m)
    );
    // the uncertainty product of the quadrature moments reproduces the
    // analytic growth law for C = 0
    let plain = GaussianPacket::new(1.0, 0.8, 0.0, 0.0, 0.0).unwrap();
    let mq = quadrature_moments(&plain, 1.5, -16.0, 16.0, 6000, &c);
    let tau: f64 = 1.5 / (2.0 * 0.8 * 0.8);
    let want = (1.0 + tau * tau).sqrt();
    assert!((uncertainty_product(&mq, &c) - want).abs() < 1e-8);
}

#[test]
fn energy_minimizing_width_confirmed_by_scan() {
    let c = Constants::natural();
    let dx = 1.7;
    let dp = 0.4;
    let analytic = min_uncertainty_sigma(dx, dp, &c).unwrap();
    // quanta count as a function of the trial width sigma^2 (constant offset
    // dropped); its minimizer is the width that reaches the uncertainty floor
    let energy = |s2: f64| dx * dx / (4.0 * s2) + s2 * dp * dp / (c.hbar * c.hbar);
    let lo = (1e-3f64).ln();
    let hi = (1e3f64).ln();
    let n = 10_000;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=n {
        let s2 = (lo + (hi - lo) * i as f64 / n as f64).exp();
        let e = energy(s2);
        if e < best.0 {
            best = (e, s2);
        }
    }
    let rel = (best.1 - analytic).abs() / analytic;
    assert!(rel < 5e-3, "scan argmin {} vs analytic {analytic}", best.1);
    // the analytic width is at least as good as the best scanned point
    assert!(energy(analytic) <= best.0 * (1.0 + 1e-12));
}
