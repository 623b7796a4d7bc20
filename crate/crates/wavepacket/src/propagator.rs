//! Grid-based free-particle propagation, used to cross-check every closed
//! form in this crate by an independent numerical route.
//!
//! Two propagators with different error models: an exact spectral stepper
//! (multiply momentum components by exp(-i hbar k^2 t / 2m); one step for any
//! t) and direct trapezoidal quadrature of the oscillatory kernel integral.
//! The spectral path is the primary oracle; the kernel path catches
//! sign/branch mistakes the spectral path cannot see.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianPacket, MomentSet};
use crate::units::Constants;

/// Uniform spatial grid. Sample i sits at x_min + i*dx with
/// dx = (x_max - x_min)/n; x_max itself is not a sample (periodic convention).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

/// Default margin, in units of packet width, kept between a packet center and
/// the nearest grid edge. 12 widths puts the truncated Gaussian mass near
/// e^-72, far below every tolerance used here.
pub const DEFAULT_GRID_MARGIN: f64 = 12.0;
/// Default number of grid samples.
pub const DEFAULT_GRID_N: usize = 4096;

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || !(x_max > x_min) {
            return Err(Error::domain(format!(
                "grid needs finite x_max > x_min, got [{x_min}, {x_max}]"
            )));
        }
        if n < 16 {
            return Err(Error::domain(format!("grid needs n >= 16, got {n}")));
        }
        Ok(Grid { x_min, x_max, n })
    }

    /// Grid sized for a packet evolved to time t: the union of windows
    /// margin*sigma around the initial center and margin*dx(t) around the
    /// final center, so a fast packet does not force an oversized symmetric
    /// box and lose momentum resolution.
    pub fn auto(packet: &GaussianPacket, t: f64, c: &Constants) -> Result<Self> {
        Grid::auto_with(packet, t, c, DEFAULT_GRID_MARGIN, DEFAULT_GRID_N)
    }

    pub fn auto_with(
        packet: &GaussianPacket,
        t: f64,
        c: &Constants,
        margin: f64,
        n: usize,
    ) -> Result<Self> {
        packet.validate()?;
        if !(margin >= 8.0) || !margin.is_finite() {
            return Err(Error::domain(format!(
                "grid margin must be >= 8 packet widths, got {margin}"
            )));
        }
        let w0 = packet.sigma;
        let wt = gaussian::packet_variance_at(packet, t, c).sqrt();
        let c0 = packet.x0;
        let ct = packet.x0 + packet.v0 * t;
        let lo = (c0 - margin * w0).min(ct - margin * wt);
        let hi = (c0 + margin * w0).max(ct + margin * wt);
        Grid::new(lo, hi, n)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n).map(|i| self.x_min + i as f64 * dx).collect()
    }
}

/// A complex field sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub grid: Grid,
    pub values: Vec<Complex64>,
}

impl WaveField {
    /// L2 norm by trapezoidal quadrature.
    pub fn norm(&self) -> f64 {
        let dx = self.grid.dx();
        let n = self.values.len();
        let mut acc = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            acc += w * v.norm_sqr();
        }
        (acc * dx).sqrt()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::domain(format!(
                "field is not normalized: |psi| = {norm:.12} (tolerance {tol:.1e})"
            )));
        }
        Ok(())
    }
}

/// Evaluate the initial packet on the grid and renormalize.
///
/// Refuses grids narrower than +-8 sigma around the packet center: the
/// truncated mass would silently contaminate downstream comparisons.
pub fn sample_initial(packet: &GaussianPacket, grid: &Grid, c: &Constants) -> Result<WaveField> {
    packet.validate()?;
    let xs = grid.points();
    let values: Vec<Complex64> = xs
        .iter()
        .map(|&x| gaussian::wavefunction(packet, x, 0.0, c))
        .collect();
    if grid.x_min > packet.x0 - 8.0 * packet.sigma || grid.x_max < packet.x0 + 8.0 * packet.sigma
    {
        // measure what the grid actually captures of the analytic density
        let dx = grid.dx();
        let mut captured = 0.0;
        for (i, v) in values.iter().enumerate() {
            let w = if i == 0 || i == values.len() - 1 { 0.5 } else { 1.0 };
            captured += w * v.norm_sqr();
        }
        let lost = (1.0 - captured * dx).clamp(0.0, 1.0);
        return Err(Error::Truncation { lost_mass: lost });
    }
    let mut field = WaveField {
        grid: grid.clone(),
        values,
    };
    let norm = field.norm();
    for v in &mut field.values {
        *v /= norm;
    }
    Ok(field)
}

fn fft_freqs(n: usize, dx: f64) -> Vec<f64> {
    // standard FFT ordering: 0, 1, ..., n/2-1, -n/2, ..., -1 (n even)
    let scale = 2.0 * PI / (n as f64 * dx);
    (0..n)
        .map(|j| {
            let jj = if j <= (n - 1) / 2 {
                j as isize
            } else {
                j as isize - n as isize
            };
            jj as f64 * scale
        })
        .collect()
}

/// Exact free evolution in momentum space; a single step regardless of t.
///
/// Refuses fields carrying more than 1e-6 of spectral mass in the top decile
/// of momentum modes: such a field is about to alias, and the result would
/// look plausible while being wrong.
pub fn propagate_spectral(field: &WaveField, mass: f64, t: f64, c: &Constants) -> Result<WaveField> {
    let n = field.grid.n;
    if !n.is_power_of_two() {
        return Err(Error::domain(format!(
            "spectral propagation needs a power-of-two grid, got n = {n}"
        )));
    }
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    field.check_normalized(1e-8)?;

    let mut spectrum = field.values.clone();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut spectrum);

    let ks = fft_freqs(n, field.grid.dx());
    let k_top = 0.9 * PI / field.grid.dx();
    let mut total = 0.0;
    let mut top = 0.0;
    for (k, v) in ks.iter().zip(spectrum.iter()) {
        let p = v.norm_sqr();
        total += p;
        if k.abs() >= k_top {
            top += p;
        }
    }
    let frac = top / total;
    if frac > 1e-6 {
        return Err(Error::resolution(format!(
            "spectral mass fraction {frac:.3e} in the top decile of momentum modes; refine the grid"
        )));
    }

    for (k, v) in ks.iter().zip(spectrum.iter_mut()) {
        let phase = -c.hbar * k * k * t / (2.0 * mass);
        *v *= Complex64::new(0.0, phase).exp();
    }
    planner.plan_fft_inverse(n).process(&mut spectrum);
    let inv_n = 1.0 / n as f64;
    for v in &mut spectrum {
        *v *= inv_n;
    }
    Ok(WaveField {
        grid: field.grid.clone(),
        values: spectrum,
    })
}

/// Direct trapezoidal quadrature of the free-particle kernel integral,
/// prefactor sqrt(m / 2 pi i hbar t) on the principal branch: phase e^{-i pi/4}
/// for t > 0 and e^{+i pi/4} for t < 0.
pub fn propagate_kernel(field: &WaveField, mass: f64, t: f64, c: &Constants) -> Result<WaveField> {
    if t == 0.0 {
        return Err(Error::SingularKernel);
    }
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    let dx = field.grid.dx();
    // the kernel oscillates on the scale sqrt(hbar |t| / m); the grid must
    // resolve it or the quadrature silently diverges
    if dx * dx >= c.hbar * t.abs() / (10.0 * mass) {
        return Err(Error::resolution(format!(
            "kernel oscillation unresolved: dx^2 = {:.3e} must be below hbar|t|/10m = {:.3e}",
            dx * dx,
            c.hbar * t.abs() / (10.0 * mass)
        )));
    }

    let amp = (mass / (2.0 * PI * c.hbar * t.abs())).sqrt();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let prefactor = if t > 0.0 {
        amp * Complex64::new(half, -half)
    } else {
        amp * Complex64::new(half, half)
    };
    let freq = mass / (2.0 * c.hbar * t);

    let xs = field.grid.points();
    let n = xs.len();
    let values: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = xs[i];
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, (&xj, &vj)) in xs.iter().zip(field.values.iter()).enumerate() {
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                let dxi = xi - xj;
                acc += w * Complex64::new(0.0, freq * dxi * dxi).exp() * vj;
            }
            prefactor * acc * dx
        })
        .collect();
    Ok(WaveField {
        grid: field.grid.clone(),
        values,
    })
}

/// Moments of a sampled field: position moments by trapezoidal quadrature,
/// momentum moments through spectral derivatives. <xp+px> = 2 Re <x p> since
/// (xp)^dagger = px.
pub fn moments_from_field(field: &WaveField, c: &Constants) -> Result<MomentSet> {
    field.check_normalized(1e-8)?;
    let n = field.grid.n;
    let dx = field.grid.dx();
    let xs = field.grid.points();

    let mut spectrum = field.values.clone();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut spectrum);
    let ks = fft_freqs(n, dx);

    let mut d1 = spectrum.clone();
    let mut d2 = spectrum;
    for ((k, v1), v2) in ks.iter().zip(d1.iter_mut()).zip(d2.iter_mut()) {
        *v1 *= Complex64::new(0.0, *k);
        *v2 *= -k * k;
    }
    let inverse = planner.plan_fft_inverse(n);
    inverse.process(&mut d1);
    inverse.process(&mut d2);
    let inv_n = 1.0 / n as f64;

    let mut mean_x = 0.0;
    let mut mean_x2 = 0.0;
    let mut mean_p = 0.0;
    let mut mean_p2 = 0.0;
    let mut mean_xp = 0.0;
    for i in 0..n {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        let psi = field.values[i];
        let rho = psi.norm_sqr();
        let x = xs[i];
        let dpsi = d1[i] * inv_n;
        let ddpsi = d2[i] * inv_n;
        mean_x += w * x * rho;
        mean_x2 += w * x * x * rho;
        // p psi = -i hbar dpsi
        mean_p += w * (psi.conj() * Complex64::new(0.0, -c.hbar) * dpsi).re;
        mean_p2 += w * (psi.conj() * (-c.hbar * c.hbar) * ddpsi).re;
        mean_xp += w * (psi.conj() * x * Complex64::new(0.0, -c.hbar) * dpsi).re;
    }
    Ok(MomentSet {
        mean_x: mean_x * dx,
        mean_p: mean_p * dx,
        mean_x2: mean_x2 * dx,
        mean_p2: mean_p2 * dx,
        mean_sym_xp: 2.0 * mean_xp * dx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn nat() -> Constants {
        Constants::natural()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(1.0, 1.0, 64).is_err());
        assert!(Grid::new(0.0, 1.0, 8).is_err());
        assert!(Grid::new(f64::NAN, 1.0, 64).is_err());
        let g = Grid::new(-10.0, 10.0, 1000).unwrap();
        assert_relative_eq!(g.dx(), 0.02, max_relative = 1e-15);
        let xs = g.points();
        assert_eq!(xs.len(), 1000);
        assert_eq!(xs[0], -10.0);
        // last sample is one spacing short of x_max
        assert_relative_eq!(xs[999], 10.0 - 0.02, max_relative = 1e-12);
    }

    #[test]
    fn auto_grid_covers_initial_and_final_packet() {
        let c = nat();
        let p = GaussianPacket::new(1.0, 1.0, 0.0, 2.0, 0.0).unwrap();
        let t = 5.0;
        let g = Grid::auto(&p, t, &c).unwrap();
        let wt = gaussian::packet_variance_at(&p, t, &c).sqrt();
        assert!(g.x_min <= -12.0);
        assert!(g.x_max >= 10.0 + 12.0 * wt);
        assert_eq!(g.n, 4096);
        assert!(Grid::auto_with(&p, t, &c, 4.0, 4096).is_err());
    }

    #[test]
    fn sampled_gaussian_is_normalized_with_expected_peak() {
        let c = nat();
        let p = GaussianPacket::new(1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let g = Grid::new(-10.0, 10.0, 1024).unwrap();
        let f = sample_initial(&p, &g, &c).unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-12);
        // peak amplitude (2 pi)^{-1/4} at x = 0
        let i0 = f
            .grid
            .points()
            .iter()
            .position(|&x| x.abs() < 1e-9)
            .unwrap();
        assert_relative_eq!(
            f.values[i0].norm(),
            (2.0 * std::f64::consts::PI).powf(-0.25),
            max_relative = 1e-10
        );
    }

    #[test]
    fn squeeze_phase_leaves_sampled_magnitudes_unchanged() {
        let c = nat();
        let g = Grid::new(-12.0, 12.0, 1024).unwrap();
        let plain = sample_initial(
            &GaussianPacket::new(1.0, 1.0, 0.5, 0.0, 0.0).unwrap(),
            &g,
            &c,
        )
        .unwrap();
        let squeezed = sample_initial(
            &GaussianPacket::new(1.0, 1.0, 0.5, 0.0, 2.5).unwrap(),
            &g,
            &c,
        )
        .unwrap();
        for (a, b) in plain.values.iter().zip(squeezed.values.iter()) {
            assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-12);
        }
    }

    #[test]
    fn narrow_grid_reports_lost_mass() {
        let c = nat();
        let p = GaussianPacket::new(1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let g = Grid::new(-3.0, 3.0, 256).unwrap();
        match sample_initial(&p, &g, &c) {
            Err(Error::Truncation { lost_mass }) => {
                assert!(lost_mass > 0.0 && lost_mass < 1.0);
                // 3 sigma two-sided tail is about 2.7e-3
                assert!(lost_mass < 0.01);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn spectral_requires_power_of_two() {
        let c = nat();
        let p = GaussianPacket::new(1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let g = Grid::new(-15.0, 15.0, 1000).unwrap();
        let f = sample_initial(&p, &g, &c).unwrap();
        assert!(matches!(
            propagate_spectral(&f, 1.0, 1.0, &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn aliasing_guard_refuses_under_resolved_fields() {
        let c = nat();
        // sigma comparable to dx: spectrum spills into the top decile
        let p = GaussianPacket::new(1.0, 0.05, 0.0, 0.0, 0.0).unwrap();
        let g = Grid::new(-16.0, 16.0, 256).unwrap();
        let f = sample_initial(&p, &g, &c).unwrap();
        assert!(matches!(
            propagate_spectral(&f, 1.0, 1.0, &c),
            Err(Error::Resolution(_))
        ));
    }

    #[test]
    fn kernel_rejects_singular_and_coarse_configurations() {
        let c = nat();
        let p = GaussianPacket::new(1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        let g = Grid::new(-20.0, 20.0, 4096).unwrap();
        let f = sample_initial(&p, &g, &c).unwrap();
        assert!(matches!(
            propagate_kernel(&f, 1.0, 0.0, &c),
            Err(Error::SingularKernel)
        ));
        // dx ~ 9.8e-3, dx^2 ~ 9.5e-5; t small enough violates the bound
        assert!(matches!(
            propagate_kernel(&f, 1.0, 1e-4, &c),
            Err(Error::Resolution(_))
        ));
    }
}
