//! Shared parameter and result types.

use thiserror::Error;

/// Validation failure for physical or reduced parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("{name} must be strictly positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
}

fn check_finite(name: &'static str, value: f64) -> Result<(), DomainError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NotFinite { name, value })
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<f64, DomainError> {
    check_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(DomainError::NotPositive { name, value })
    }
}

fn check_non_negative(name: &'static str, value: f64) -> Result<f64, DomainError> {
    check_finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(DomainError::Negative { name, value })
    }
}

/// Parameters of the Hamiltonian `p^2/(2m) + sqrt(a^2 r^2 + b)`.
///
/// `m` is the reduced mass of the pair, `a` the slope of the large-`r`
/// linear tail and `b` the depth parameter flattening the well near the
/// origin. Construction enforces `m > 0`, `a > 0`, `b >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    m: f64,
    a: f64,
    b: f64,
}

impl PotentialParams {
    pub fn new(m: f64, a: f64, b: f64) -> Result<Self, DomainError> {
        Ok(Self {
            m: check_positive("m", m)?,
            a: check_positive("a", a)?,
            b: check_non_negative("b", b)?,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Strips dimensions: energies factor as `E = scale * eps(beta)` with
    /// `scale = (2 a^2 / m)^(1/3)` and `beta = b / scale^2`.
    pub fn reduce(&self) -> ReducedProblem {
        let scale = (2.0 * self.a * self.a / self.m).cbrt();
        let inv = (self.m / (2.0 * self.a * self.a)).cbrt();
        ReducedProblem {
            beta: self.b * inv * inv,
            scale,
        }
    }
}

/// Dimensionless form of the problem: a single well-depth parameter plus
/// the energy scale needed to map reduced eigenvalues back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedProblem {
    beta: f64,
    scale: f64,
}

impl ReducedProblem {
    pub fn new(beta: f64, scale: f64) -> Result<Self, DomainError> {
        Ok(Self {
            beta: check_non_negative("beta", beta)?,
            scale: check_positive("scale", scale)?,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Maps a reduced eigenvalue back to a physical energy.
    pub fn unreduce(&self, epsilon: f64) -> f64 {
        self.scale * epsilon
    }
}

/// Radial and orbital quantum numbers of a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

/// How an energy value relates to the true eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateKind {
    /// Variational bound from above.
    UpperBound,
    /// Bound from below.
    LowerBound,
    /// No bound property, tuned for accuracy.
    Approximation,
    /// Converged numerical reference value.
    Exact,
}

impl EstimateKind {
    /// Stable machine-readable label, used by serialization layers.
    pub fn label(&self) -> &'static str {
        match self {
            EstimateKind::UpperBound => "upper_bound",
            EstimateKind::LowerBound => "lower_bound",
            EstimateKind::Approximation => "approximation",
            EstimateKind::Exact => "exact",
        }
    }
}

/// An energy value tagged with its bound status.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyEstimate {
    value: f64,
    kind: EstimateKind,
}

impl EnergyEstimate {
    /// Panics if `value` is not finite; every solver in this crate either
    /// returns a finite energy or an error, never a NaN estimate.
    pub fn new(value: f64, kind: EstimateKind) -> Self {
        assert!(value.is_finite(), "energy estimate must be finite");
        Self { value, kind }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn kind(&self) -> EstimateKind {
        self.kind
    }
}
