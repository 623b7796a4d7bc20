//! Analytic Gaussian packet algebra: moments, free evolution, closed-form
//! wavefunction and density, uncertainty relations.
//!
//! A packet is parameterized by its initial rms width sigma, center x0,
//! velocity v0, and the dimensionless squeeze parameter C. C = 0 is the
//! minimum-uncertainty Gaussian; C != 0 adds the quadratic phase
//! exp(iC(x-x0)^2/4sigma^2), which leaves the initial density untouched but
//! tilts the position-momentum correlation, so dx dp = (hbar/2)sqrt(1+C^2)
//! and packets with C < 0 shrink before they spread.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::units::Constants;

/// A (possibly squeezed) Gaussian wave packet at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    /// Particle mass (g in CGS mode).
    pub mass: f64,
    /// Initial rms width dx(0) (cm).
    pub sigma: f64,
    /// Initial center (cm).
    pub x0: f64,
    /// Initial velocity (cm/s).
    pub v0: f64,
    /// Dimensionless squeeze parameter C; 0 means minimum uncertainty.
    pub squeeze_c: f64,
}

impl GaussianPacket {
    pub fn new(mass: f64, sigma: f64, x0: f64, v0: f64, squeeze_c: f64) -> Result<Self> {
        let p = GaussianPacket {
            mass,
            sigma,
            x0,
            v0,
            squeeze_c,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(Error::domain(format!(
                "packet mass must be positive and finite, got {}",
                self.mass
            )));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::domain(format!(
                "packet sigma must be positive and finite, got {}",
                self.sigma
            )));
        }
        for (name, v) in [
            ("x0", self.x0),
            ("v0", self.v0),
            ("squeeze_c", self.squeeze_c),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(format!("packet {name} must be finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// First and second moments of position and momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    /// <x> (cm)
    pub mean_x: f64,
    /// <p> (g cm/s)
    pub mean_p: f64,
    /// <x^2> (cm^2)
    pub mean_x2: f64,
    /// <p^2> ((g cm/s)^2)
    pub mean_p2: f64,
    /// <xp + px> (erg s)
    pub mean_sym_xp: f64,
}

impl MomentSet {
    /// Position variance <x^2> - <x>^2.
    pub fn var_x(&self) -> f64 {
        self.mean_x2 - self.mean_x * self.mean_x
    }

    /// Momentum variance <p^2> - <p>^2.
    pub fn var_p(&self) -> f64 {
        self.mean_p2 - self.mean_p * self.mean_p
    }
}

/// Moments of a packet at t = 0.
///
/// The simultaneous C != 0, x0/v0 != 0 cross terms are
/// <xp+px> = 2 m x0 v0 + hbar C and <p^2> = m^2 v0^2 + hbar^2 (1+C^2)/4sigma^2;
/// both reduce to the familiar special cases and are pinned against a grid
/// quadrature oracle in the integration tests.
pub fn initial_moments(packet: &GaussianPacket, c: &Constants) -> Result<MomentSet> {
    packet.validate()?;
    Ok(initial_moments_unchecked(packet, c))
}

pub(crate) fn initial_moments_unchecked(packet: &GaussianPacket, c: &Constants) -> MomentSet {
    let s2 = packet.sigma * packet.sigma;
    let cc = packet.squeeze_c;
    let mv = packet.mass * packet.v0;
    MomentSet {
        mean_x: packet.x0,
        mean_p: mv,
        mean_x2: packet.x0 * packet.x0 + s2,
        mean_p2: mv * mv + c.hbar * c.hbar * (1.0 + cc * cc) / (4.0 * s2),
        mean_sym_xp: 2.0 * packet.x0 * mv + c.hbar * cc,
    }
}

/// Free evolution of a moment set by time t (t may be negative).
///
/// <p> and <p^2> are conserved exactly; <x>, <xp+px> are linear in t and
/// <x^2> quadratic, which is the whole content of the free-particle moment
/// equations.
pub fn evolve_moments(m0: &MomentSet, mass: f64, t: f64) -> MomentSet {
    debug_assert!(mass > 0.0);
    MomentSet {
        mean_x: m0.mean_x + m0.mean_p * t / mass,
        mean_p: m0.mean_p,
        mean_x2: m0.mean_x2 + m0.mean_sym_xp * t / mass + m0.mean_p2 * t * t / (mass * mass),
        mean_p2: m0.mean_p2,
        mean_sym_xp: m0.mean_sym_xp + 2.0 * m0.mean_p2 * t / mass,
    }
}

/// Position variance at time t, directly in terms of the initial variances:
/// var_x(t) = var_x(0) + var_p(0) t^2/m^2 + (<xp+px>(0) - 2<x><p>) t/m.
pub fn variance_x_at(m0: &MomentSet, mass: f64, t: f64) -> f64 {
    debug_assert!(mass > 0.0);
    m0.var_x()
        + m0.var_p() * t * t / (mass * mass)
        + (m0.mean_sym_xp - 2.0 * m0.mean_x * m0.mean_p) * t / mass
}

/// Position variance of a packet at time t (shorthand for evolving the
/// packet's own initial moments).
pub fn packet_variance_at(packet: &GaussianPacket, t: f64, c: &Constants) -> f64 {
    let m0 = initial_moments_unchecked(packet, c);
    variance_x_at(&m0, packet.mass, t)
}

/// The width that minimizes packet energy for given target uncertainties:
/// sigma^2 = hbar dx / (2 dp).
pub fn min_uncertainty_sigma(dx: f64, dp: f64, c: &Constants) -> Result<f64> {
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(Error::domain(format!("dx must be positive, got {dx}")));
    }
    if !(dp > 0.0) || !dp.is_finite() {
        return Err(Error::domain(format!("dp must be positive, got {dp}")));
    }
    Ok(c.hbar * dx / (2.0 * dp))
}

/// Complex amplitude of the freely evolved packet at (x, t).
///
/// The initial exponent coefficient A0 = (1 - iC)/4sigma^2 evolves as
/// A(t) = A0 / (1 + 2i hbar t A0 / m). The normalization prefactor takes the
/// principal square root of D(t) = 1 + 2i hbar t A0/m, which is continuous in
/// t from D(0) = 1: the path (1 + tau C, tau) with tau = hbar t/2m sigma^2
/// only touches the real axis at t = 0, so the principal branch never jumps.
pub fn wavefunction(packet: &GaussianPacket, x: f64, t: f64, c: &Constants) -> Complex64 {
    debug_assert!(packet.validate().is_ok());
    let s2 = packet.sigma * packet.sigma;
    let a0 = Complex64::new(1.0, -packet.squeeze_c) / (4.0 * s2);
    let d = Complex64::new(1.0, 0.0) + Complex64::new(0.0, 2.0 * c.hbar * t / packet.mass) * a0;
    let a = a0 / d;
    let prefactor = (2.0 * PI * s2).powf(-0.25) / d.sqrt();
    let xc = x - packet.x0 - packet.v0 * t;
    let phase = Complex64::new(
        0.0,
        packet.mass * packet.v0 * x / c.hbar
            - packet.mass * packet.v0 * packet.v0 * t / (2.0 * c.hbar),
    );
    prefactor * (-a * xc * xc + phase).exp()
}

/// Probability density |psi(x,t)|^2: a Gaussian centered at x0 + v0 t with
/// variance packet_variance_at.
pub fn probability_density(packet: &GaussianPacket, x: f64, t: f64, c: &Constants) -> f64 {
    debug_assert!(packet.validate().is_ok());
    let var = packet_variance_at(packet, t, c);
    let xc = x - packet.x0 - packet.v0 * t;
    (-xc * xc / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

/// Uncertainty product 2 dx dp / hbar; >= 1 for every physical moment set,
/// = sqrt(1 + C^2) for a freshly squeezed packet.
pub fn uncertainty_product(m0: &MomentSet, c: &Constants) -> f64 {
    2.0 * (m0.var_x() * m0.var_p()).sqrt() / c.hbar
}

/// Time for the mean square width of a minimum-uncertainty packet to double:
/// t = 2 m sigma^2 / hbar. Stated only for C = 0.
pub fn doubling_time(packet: &GaussianPacket, c: &Constants) -> Result<f64> {
    packet.validate()?;
    if packet.squeeze_c != 0.0 {
        return Err(Error::unsupported(
            "doubling time is defined for minimum-uncertainty (C = 0) packets only",
        ));
    }
    Ok(2.0 * packet.mass * packet.sigma * packet.sigma / c.hbar)
}

/// Distance the packet center travels during one doubling time,
/// l = v0 * 2 m sigma^2 / hbar.
pub fn doubling_distance(packet: &GaussianPacket, c: &Constants) -> Result<f64> {
    Ok(packet.v0 * doubling_time(packet, c)?)
}

/// de Broglie wavelength lambda = 2 pi hbar / (m |v|).
pub fn de_broglie_wavelength(mass: f64, velocity: f64, c: &Constants) -> Result<f64> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    if velocity == 0.0 || !velocity.is_finite() {
        return Err(Error::domain(
            "de Broglie wavelength needs a nonzero finite velocity",
        ));
    }
    Ok(2.0 * PI * c.hbar / (mass * velocity.abs()))
}
