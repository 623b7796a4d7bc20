//! Maxwell-averaged quantities: thermal spreading, density, moments, the
//! mixed-state density matrix, and a Monte Carlo averaging oracle.
//!
//! Averaging a pure-state Gaussian density over a thermal velocity
//! distribution is a Gaussian convolution, so the spreading law stays closed:
//! the packet variance just gains (kT/m) t^2. The Monte Carlo path exists to
//! validate exactly that algebra, and doubles as the only thermal route for
//! squeezed packets, where no closed density form is on record.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianPacket, MomentSet};
use crate::units::{self, Constants};

/// A Gaussian packet in contact with a Maxwell velocity ensemble. The
/// packet's v0 is the ensemble's mean velocity (0 for an ensemble at rest).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalScenario {
    pub packet: GaussianPacket,
    /// Temperature (K in CGS mode).
    pub temperature: f64,
}

impl ThermalScenario {
    pub fn new(packet: GaussianPacket, temperature: f64) -> Result<Self> {
        let s = ThermalScenario {
            packet,
            temperature,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.packet.validate()?;
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(Error::domain(format!(
                "temperature must be nonnegative and finite, got {}",
                self.temperature
            )));
        }
        Ok(())
    }
}

/// Thermally averaged position variance at time t: the zero-temperature
/// variance plus (kT/m) t^2. Valid for any squeeze parameter; the thermal
/// contribution is independent of C.
pub fn thermal_variance(s: &ThermalScenario, t: f64, c: &Constants) -> f64 {
    gaussian::packet_variance_at(&s.packet, t, c)
        + c.k_boltzmann * s.temperature * t * t / s.packet.mass
}

/// Thermally averaged probability density: a Gaussian centered at x0 + v0 t
/// with variance thermal_variance. Closed form only for C = 0; squeezed
/// scenarios go through mc_thermal_density.
pub fn thermal_density(s: &ThermalScenario, x: f64, t: f64, c: &Constants) -> Result<f64> {
    s.validate()?;
    if s.packet.squeeze_c != 0.0 {
        return Err(Error::unsupported(
            "no closed thermal density for squeezed packets; use mc_thermal_density",
        ));
    }
    let var = thermal_variance(s, t, c);
    let xc = x - s.packet.x0 - s.packet.v0 * t;
    Ok((-xc * xc / (2.0 * var)).exp() / (2.0 * PI * var).sqrt())
}

/// Maxwell-averaged initial moments. For an ensemble with mean velocity v0:
/// <p> = m v0, <p^2> = m^2 v0^2 + m k T + hbar^2/4sigma^2,
/// <xp+px> = 2 m x0 v0. C = 0 only; the squeezed combination is not on
/// record and is not guessed.
pub fn thermal_moments(s: &ThermalScenario, c: &Constants) -> Result<MomentSet> {
    s.validate()?;
    if s.packet.squeeze_c != 0.0 {
        return Err(Error::unsupported(
            "thermal moments are stated for minimum-uncertainty packets only",
        ));
    }
    let p = &s.packet;
    let s2 = p.sigma * p.sigma;
    let mv = p.mass * p.v0;
    Ok(MomentSet {
        mean_x: p.x0,
        mean_p: mv,
        mean_x2: p.x0 * p.x0 + s2,
        mean_p2: mv * mv
            + p.mass * c.k_boltzmann * s.temperature
            + c.hbar * c.hbar / (4.0 * s2),
        mean_sym_xp: 2.0 * p.x0 * mv,
    })
}

/// Mixed-state density matrix element
/// <x|rho|x'> = (2 pi sigma^2)^{-1/2}
///              exp{-[(x-x0)^2+(x'-x0)^2]/4sigma^2 - m k T (x-x')^2 / 2 hbar^2}.
///
/// Stated for a rest ensemble with C = 0; a moving ensemble multiplies this
/// by the phase e^{i m v0 (x-x')/hbar}, which the real return type cannot
/// carry, so v0 != 0 is refused rather than silently dropped.
pub fn density_matrix_element(
    s: &ThermalScenario,
    x: f64,
    x_prime: f64,
    c: &Constants,
) -> Result<f64> {
    s.validate()?;
    if s.packet.squeeze_c != 0.0 {
        return Err(Error::unsupported(
            "density matrix closed form requires a minimum-uncertainty packet",
        ));
    }
    if s.packet.v0 != 0.0 {
        return Err(Error::unsupported(
            "density matrix closed form requires an ensemble at rest (v0 = 0)",
        ));
    }
    let p = &s.packet;
    let s2 = p.sigma * p.sigma;
    let dx = x - p.x0;
    let dxp = x_prime - p.x0;
    let off = x - x_prime;
    let exponent = -(dx * dx + dxp * dxp) / (4.0 * s2)
        - p.mass * c.k_boltzmann * s.temperature * off * off / (2.0 * c.hbar * c.hbar);
    Ok(exponent.exp() / (2.0 * PI * s2).sqrt())
}

/// Ratio of thermal to quantum spreading, with the mean de Broglie wavelength
/// that sets the crossover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadingRatio {
    /// m k T sigma^2 / 4 hbar^2 = sigma^2 / 4 lambda_bar^2.
    pub ratio: f64,
    /// lambda_bar = hbar / sqrt(m k T); None at T = 0 where the ratio is 0
    /// but the wavelength is undefined.
    pub mean_de_broglie: Option<f64>,
}

/// Ratio of the thermal to the quantum term of the spreading law. Greater
/// than 1 means thermal spreading dominates at every t > 0.
pub fn spreading_ratio(s: &ThermalScenario, c: &Constants) -> Result<SpreadingRatio> {
    s.validate()?;
    let p = &s.packet;
    if s.temperature == 0.0 {
        return Ok(SpreadingRatio {
            ratio: 0.0,
            mean_de_broglie: None,
        });
    }
    let s2 = p.sigma * p.sigma;
    let ratio = p.mass * c.k_boltzmann * s.temperature * s2 / (4.0 * c.hbar * c.hbar);
    let lambda_bar = c.hbar / (p.mass * c.k_boltzmann * s.temperature).sqrt();
    debug_assert!(
        (ratio - s2 / (4.0 * lambda_bar * lambda_bar)).abs() <= 1e-12 * ratio.abs()
    );
    Ok(SpreadingRatio {
        ratio,
        mean_de_broglie: Some(lambda_bar),
    })
}

// fixed chunking keeps the sample -> stream assignment independent of the
// worker count, so results are reproducible on any machine configuration
const MC_CHUNK: usize = 8192;

/// Monte Carlo estimate of the thermal density at one (x, t): draw initial
/// velocities from the Maxwell distribution around v0, average the pure-state
/// density. Returns (mean, standard error). Deterministic for a fixed seed,
/// independent of thread count. Works for any squeeze parameter, which makes
/// it the only thermal path for C != 0.
pub fn mc_thermal_density(
    s: &ThermalScenario,
    x: f64,
    t: f64,
    n_samples: usize,
    seed: u64,
    c: &Constants,
) -> Result<(f64, f64)> {
    s.validate()?;
    if n_samples < 100 {
        return Err(Error::domain(format!(
            "need at least 100 samples for a standard error, got {n_samples}"
        )));
    }
    let p = &s.packet;
    if s.temperature == 0.0 {
        // zero-variance sampler: every draw is the pure-state density
        return Ok((gaussian::probability_density(p, x, t, c), 0.0));
    }
    let vel_sigma = units::thermal_velocity(p.mass, s.temperature, c)?;
    // the pure-state variance does not depend on the boost velocity, so it
    // hoists out of the sample loop
    let var = gaussian::packet_variance_at(p, t, c);
    let peak = 1.0 / (2.0 * PI * var).sqrt();
    let dist = Normal::new(p.v0, vel_sigma)
        .map_err(|e| Error::domain(format!("bad velocity distribution: {e}")))?;

    let n_chunks = n_samples.div_ceil(MC_CHUNK);
    let partials: Vec<(usize, f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = MC_CHUNK.min(n_samples - chunk * MC_CHUNK);
            let mut mean = 0.0;
            let mut m2 = 0.0;
            for i in 0..count {
                let v = dist.sample(&mut rng);
                let xc = x - p.x0 - v * t;
                let val = peak * (-xc * xc / (2.0 * var)).exp();
                // Welford update
                let delta = val - mean;
                mean += delta / (i + 1) as f64;
                m2 += delta * (val - mean);
            }
            (count, mean, m2)
        })
        .collect();

    // fixed-order pairwise-free merge: same result for any worker count
    let mut n_acc = 0usize;
    let mut mean_acc = 0.0;
    let mut m2_acc = 0.0;
    for (count, mean, m2) in partials {
        let delta = mean - mean_acc;
        let n_new = n_acc + count;
        mean_acc += delta * count as f64 / n_new as f64;
        m2_acc += m2 + delta * delta * (n_acc as f64 * count as f64) / n_new as f64;
        n_acc = n_new;
    }
    let variance = m2_acc / (n_acc - 1) as f64;
    let std_error = (variance / n_acc as f64).sqrt();
    Ok((mean_acc, std_error))
}

/// Validity check for neglecting dissipation: the spreading formulas hold
/// only while gamma t stays well below 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeCheck {
    pub gamma_t: f64,
    /// true while |gamma t| < 0.1
    pub within_validity: bool,
}

pub fn dissipation_regime(gamma: f64, t: f64) -> RegimeCheck {
    let gamma_t = gamma * t;
    RegimeCheck {
        gamma_t,
        within_validity: gamma_t.abs() < 0.1,
    }
}
