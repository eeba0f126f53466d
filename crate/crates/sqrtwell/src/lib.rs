//! Bound-state eigenenergies of the radial two-body Hamiltonian
//!
//! ```text
//!     H = p^2 / (2 m) + sqrt(a^2 r^2 + b)
//! ```
//!
//! The square-root well interpolates between a linear confining potential
//! (`b = 0`) and a harmonic oscillator shifted by `sqrt(b)` (large `b`),
//! which makes it a convenient laboratory for testing closed-form spectral
//! approximations against an exact treatment.
//!
//! The crate provides three layers:
//!
//! * [`afm`] - an analytic energy formula obtained by replacing the square
//!   root with an auxiliary quadratic field and optimizing the auxiliary
//!   parameter. The stationary condition reduces to a quartic with a closed
//!   Cardano-style solution, so every level costs a handful of flops. With a
//!   harmonic principal number the result is a variational upper bound, with
//!   a Coulomb-like one a lower bound, and two intermediate choices trade the
//!   bound property for accuracy.
//! * [`exact`] - a Lagrange-mesh diagonalization of the same Hamiltonian on
//!   a scaled Laguerre grid. Converged to a few parts in 1e6 it serves as the
//!   reference the closed forms are judged against.
//! * [`fit`] - least-squares machinery that tunes the principal-number
//!   coefficients against the mesh spectrum and compresses the result into
//!   two rational functions of the dimensionless well depth.
//!
//! [`relmap`] connects the nonrelativistic well to a semirelativistic
//! quark-model Hamiltonian whose low-lying spectrum it mimics, and
//! [`domain`] holds the shared parameter and result types.
//!
//! Everything dimensionful can be stripped to a single parameter: scaling
//! lengths and energies by powers of `2 a^2 / m` leaves a reduced problem
//! that depends only on `beta = b (m / (2 a^2))^(2/3)`. Most numerical work
//! happens in that reduced form; see [`domain::ReducedProblem`].

pub mod afm;
pub mod domain;
pub mod exact;
pub mod fit;
pub mod relmap;

pub use afm::PrincipalN;
pub use domain::{EnergyEstimate, EstimateKind, PotentialParams, QuantumNumbers, ReducedProblem};
