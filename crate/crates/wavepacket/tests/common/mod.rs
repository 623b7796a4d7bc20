//! Shared numerical machinery for the oracle test suites: Gauss-Hermite
//! quadrature for Maxwell averages, an RK4 integrator for the moment ODE
//! system, and small grid helpers. Everything here is deliberately
//! independent of the closed forms under test.
#![allow(dead_code)]

use std::f64::consts::PI;

use wavepacket::gaussian::MomentSet;

/// Orthonormal Hermite values (p_n, p_{n-1}) at x for the weight e^{-x^2}.
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let mut pm = 0.0;
    let mut p = PI.powf(-0.25);
    for k in 0..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * p - (kf / (kf + 1.0)).sqrt() * pm;
        pm = p;
        p = next;
    }
    (p, pm)
}

/// Gauss weight at a root via the Christoffel identity
/// w = 1 / sum_{k<n} p_k(x)^2.
fn hermite_weight(n: usize, x: f64) -> f64 {
    let mut pm = 0.0;
    let mut p = PI.powf(-0.25);
    let mut s = p * p;
    for k in 0..n - 1 {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * p - (kf / (kf + 1.0)).sqrt() * pm;
        pm = p;
        p = next;
        s += p * p;
    }
    1.0 / s
}

/// Nodes and weights of n-point Gauss-Hermite quadrature:
/// integral of e^{-x^2} f(x) dx ~ sum w_i f(x_i). Roots are bracketed by a
/// sign scan and polished by Newton (p_n' = sqrt(2n) p_{n-1}).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2 && n.is_multiple_of(2), "even n only");
    let bound = (2.0 * n as f64 + 1.0).sqrt() + 1.0;
    let scan = 40 * n;
    let mut brackets = Vec::new();
    let mut prev_x = 0.0;
    let mut prev_f = hermite_pair(n, 0.0).0;
    for i in 1..=scan {
        let x = bound * i as f64 / scan as f64;
        let f = hermite_pair(n, x).0;
        if prev_f == 0.0 {
            brackets.push((prev_x, prev_x));
        } else if f.signum() != prev_f.signum() {
            brackets.push((prev_x, x));
        }
        prev_x = x;
        prev_f = f;
    }
    assert_eq!(brackets.len(), n / 2, "scan missed a root");

    let sqrt2n = (2.0 * n as f64).sqrt();
    let mut nodes = Vec::with_capacity(n);
    for &(mut a, mut b) in &brackets {
        // bisect into the Newton basin, then converge quadratically
        for _ in 0..30 {
            let m = 0.5 * (a + b);
            if hermite_pair(n, m).0.signum() == hermite_pair(n, a).0.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        let mut x = 0.5 * (a + b);
        for _ in 0..50 {
            let (p, pm) = hermite_pair(n, x);
            let step = p / (sqrt2n * pm);
            x -= step;
            if step.abs() < 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        nodes.push(x);
    }
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for &x in nodes.iter().rev() {
        xs.push(-x);
        ws.push(hermite_weight(n, x));
    }
    for &x in &nodes {
        xs.push(x);
        ws.push(hermite_weight(n, x));
    }
    (xs, ws)
}

/// Average of f over a normal distribution with the given mean and standard
/// deviation, by 64-node Gauss-Hermite. Exact to machine precision for the
/// smooth integrands used here.
pub fn maxwell_average<F: FnMut(f64) -> f64>(mean: f64, sd: f64, f: F) -> f64 {
    maxwell_average_n(64, mean, sd, f)
}

/// Same average at a chosen even order, for integrands whose structure is
/// narrower than the thermal weight.
pub fn maxwell_average_n<F: FnMut(f64) -> f64>(n: usize, mean: f64, sd: f64, mut f: F) -> f64 {
    let (xs, ws) = gauss_hermite(n);
    let mut acc = 0.0;
    for (&u, &w) in xs.iter().zip(ws.iter()) {
        acc += w * f(mean + std::f64::consts::SQRT_2 * sd * u);
    }
    acc / PI.sqrt()
}

/// Same average for a complex-valued integrand, returned as (re, im).
pub fn maxwell_average_complex<F: FnMut(f64) -> (f64, f64)>(
    mean: f64,
    sd: f64,
    mut f: F,
) -> (f64, f64) {
    let (xs, ws) = gauss_hermite(64);
    let mut re = 0.0;
    let mut im = 0.0;
    for (&u, &w) in xs.iter().zip(ws.iter()) {
        let (fr, fi) = f(mean + std::f64::consts::SQRT_2 * sd * u);
        re += w * fr;
        im += w * fi;
    }
    (re / PI.sqrt(), im / PI.sqrt())
}

/// RK4 integration of the free-particle moment equations
/// d<x>/dt = <p>/m, d<p>/dt = 0, d<x^2>/dt = <xp+px>/m,
/// d<xp+px>/dt = 2<p^2>/m, d<p^2>/dt = 0,
/// which never references the closed-form solution.
pub fn rk4_moments(m0: &MomentSet, mass: f64, t: f64, steps: usize) -> MomentSet {
    let rhs = |y: [f64; 5]| -> [f64; 5] {
        [
            y[1] / mass,
            0.0,
            y[4] / mass,
            0.0,
            2.0 * y[3] / mass,
        ]
    };
    let mut y = [m0.mean_x, m0.mean_p, m0.mean_x2, m0.mean_p2, m0.mean_sym_xp];
    let h = t / steps as f64;
    for _ in 0..steps {
        let k1 = rhs(y);
        let mut y2 = y;
        for i in 0..5 {
            y2[i] = y[i] + 0.5 * h * k1[i];
        }
        let k2 = rhs(y2);
        let mut y3 = y;
        for i in 0..5 {
            y3[i] = y[i] + 0.5 * h * k2[i];
        }
        let k3 = rhs(y3);
        let mut y4 = y;
        for i in 0..5 {
            y4[i] = y[i] + h * k3[i];
        }
        let k4 = rhs(y4);
        for i in 0..5 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    MomentSet {
        mean_x: y[0],
        mean_p: y[1],
        mean_x2: y[2],
        mean_p2: y[3],
        mean_sym_xp: y[4],
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Trapezoidal quadrature over uniformly spaced samples.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    let n = values.len();
    let mut acc = 0.0;
    for (i, v) in values.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        acc += w * v;
    }
    acc * dx
}

/// Componentwise moment-set distance |a - b| / max(|b|, 1).
pub fn moment_distance(a: &MomentSet, b: &MomentSet) -> f64 {
    let pairs = [
        (a.mean_x, b.mean_x),
        (a.mean_p, b.mean_p),
        (a.mean_x2, b.mean_x2),
        (a.mean_p2, b.mean_p2),
        (a.mean_sym_xp, b.mean_sym_xp),
    ];
    pairs
        .iter()
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}
