//! Mapping to a semirelativistic Hamiltonian with harmonic confinement.
//!
//! Swapping position and momentum (a Fourier transform) turns the
//! square-root well into a spinless Salpeter Hamiltonian
//!
//! ```text
//!     H = omega sqrt(p^2 + M^2) + sigma r^2
//! ```
//!
//! with particle mass `M` and harmonic coupling `sigma`, provided the
//! parameters are identified as
//!
//! ```text
//!     omega = (4 a / m^2)^(1/3),  M = sqrt(b) / omega,  sigma = m a omega / 8
//! ```
//!
//! and inversely `m = (32 sigma / omega^4)^(1/3)`, `a = omega^3 m^2 / 4`,
//! `b = M^2 omega^2`. The two spectra coincide, so every well result
//! doubles as a semirelativistic one. For the kinetic term to describe
//! physical particles of mass `M`, `omega` has to equal 1 (one massive
//! particle) or 2 (a symmetric pair); other values are mathematically fine
//! but lack that interpretation.

use crate::afm::{self, AfmError, PrincipalN};
use crate::domain::{DomainError, EnergyEstimate, PotentialParams, QuantumNumbers};
use thiserror::Error;

/// Failure modes of the parameter mapping.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelmapError {
    #[error("omega must be finite and strictly positive, got {0}")]
    InvalidOmega(f64),
    #[error("mass must be finite and non-negative, got {0}")]
    InvalidMass(f64),
    #[error("sigma must be finite and strictly positive, got {0}")]
    InvalidSigma(f64),
    #[error("mapped well parameters are out of range: {0}")]
    Unmappable(#[from] DomainError),
    #[error(transparent)]
    Energy(#[from] AfmError),
}

/// Parameters of the semirelativistic side: auxiliary frequency, particle
/// mass and harmonic coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SalpeterParams {
    omega: f64,
    mass: f64,
    sigma: f64,
}

impl SalpeterParams {
    pub fn new(omega: f64, mass: f64, sigma: f64) -> Result<Self, RelmapError> {
        if !omega.is_finite() || omega <= 0.0 {
            return Err(RelmapError::InvalidOmega(omega));
        }
        if !mass.is_finite() || mass < 0.0 {
            return Err(RelmapError::InvalidMass(mass));
        }
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(RelmapError::InvalidSigma(sigma));
        }
        Ok(Self { omega, mass, sigma })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// True when `omega` sits in the window the identification was tuned
    /// for. Callers may want to warn otherwise.
    pub fn omega_in_calibrated_window(&self) -> bool {
        self.omega == 1.0 || self.omega == 2.0
    }
}

/// Well parameters -> semirelativistic parameters.
pub fn to_salpeter(params: &PotentialParams) -> SalpeterParams {
    let m2 = params.m() * params.m();
    let omega = (4.0 * params.a() / m2).cbrt();
    SalpeterParams {
        omega,
        mass: params.b().sqrt() / omega,
        sigma: params.m() * params.a() * omega / 8.0,
    }
}

/// Semirelativistic parameters -> well parameters.
pub fn from_salpeter(sp: &SalpeterParams) -> Result<PotentialParams, RelmapError> {
    let w2 = sp.omega * sp.omega;
    let w4 = w2 * w2;
    let m = (32.0 * sp.sigma / w4).cbrt();
    let a = sp.omega * w2 * m * m / 4.0;
    let b = sp.mass * sp.mass * w2;
    Ok(PotentialParams::new(m, a, b)?)
}

/// Spectrum of the semirelativistic Hamiltonian through the mapping: the
/// parameters are translated to the equivalent well and fed to the closed
/// form, nothing else.
pub fn salpeter_spectrum(
    sp: &SalpeterParams,
    state: QuantumNumbers,
    variant: PrincipalN,
) -> Result<EnergyEstimate, RelmapError> {
    let params = from_salpeter(sp)?;
    Ok(afm::energy(&params, state, variant)?)
}
