//! Closed-form energy estimates from an auxiliary-field treatment.
//!
//! Replacing `sqrt(a^2 r^2 + b)` by a trial harmonic well plus a
//! compensating constant, then demanding the result be stationary in the
//! trial strength `nu`, gives an energy that only depends on the quantum
//! numbers through a principal number `N(n, l)`:
//!
//! ```text
//!     E(nu) = sqrt(2 N^2 nu / m) + a^2 / (4 nu) + b nu / a^2
//! ```
//!
//! The stationary point reduces to one scalar quartic `4 x^4 - 8 x = 3 y`
//! in `x = g`, with `y` a dimensionless combination of the well parameters
//! and `N`. The quartic has a single positive root expressible through a
//! Cardano resolvent, so the whole estimate is closed form.
//!
//! Different choices of `N(n, l)` give different guarantees:
//! [`PrincipalN::Harmonic`] yields a variational upper bound,
//! [`PrincipalN::Coulomb`] a lower bound, and [`PrincipalN::Linear`] /
//! [`PrincipalN::Fitted`] trade the bound property for accuracy.

use crate::domain::{EnergyEstimate, EstimateKind, PotentialParams, QuantumNumbers};
use thiserror::Error;

/// Failure modes of the closed-form solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AfmError {
    #[error("beta must be finite and non-negative, got {0}")]
    InvalidBeta(f64),
    #[error("principal number must be finite and strictly positive, got {0}")]
    InvalidPrincipal(f64),
    #[error("quartic load parameter must be finite and non-negative, got {0}")]
    InvalidQuarticParameter(f64),
    #[error("trial auxiliary field must be finite and strictly positive, got {0}")]
    InvalidAuxiliaryField(f64),
    #[error("eta must be finite, got {0}")]
    InvalidEta(f64),
    #[error("the harmonic regime is only defined for b > 0")]
    FlatWell,
    #[error("quartic radicand collapsed at y = {y} (got {radicand}); this is a bug")]
    BrokenRadicand { y: f64, radicand: f64 },
}

/// Principal-number prescription entering the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrincipalN {
    /// `N = 2n + l + 3/2`. Variational upper bound.
    Harmonic,
    /// `N = n + l + 1`. Lower bound.
    Coulomb,
    /// `N = (pi / sqrt 3) n + l + sqrt(3) pi / 4`, exact for the linear
    /// well in the WKB sense. Plain approximation, no bound property.
    Linear,
    /// `N = A(beta) n + l + C(beta)` with the built-in rational coefficient
    /// curves (see [`crate::fit::hyperbolic_ac`]). Most accurate choice.
    Fitted,
    /// `N = A n + l + C` with caller-supplied coefficients.
    FittedCustom { a: f64, c: f64 },
}

impl PrincipalN {
    /// Evaluates `N(n, l)`. `beta` only matters for [`PrincipalN::Fitted`],
    /// whose coefficients track the reduced well depth.
    pub fn value(&self, state: QuantumNumbers, beta: f64) -> f64 {
        let n = f64::from(state.n);
        let l = f64::from(state.l);
        match *self {
            PrincipalN::Harmonic => 2.0 * n + l + 1.5,
            PrincipalN::Coulomb => n + l + 1.0,
            PrincipalN::Linear => {
                let sqrt3 = 3.0_f64.sqrt();
                (std::f64::consts::PI / sqrt3) * n + l + sqrt3 * std::f64::consts::PI / 4.0
            }
            PrincipalN::Fitted => {
                let (a, c) = crate::fit::hyperbolic_ac(beta);
                a * n + l + c
            }
            PrincipalN::FittedCustom { a, c } => a * n + l + c,
        }
    }

    /// Bound status of energies produced with this prescription.
    pub fn kind(&self) -> EstimateKind {
        match self {
            PrincipalN::Harmonic => EstimateKind::UpperBound,
            PrincipalN::Coulomb => EstimateKind::LowerBound,
            _ => EstimateKind::Approximation,
        }
    }
}

/// Positive root of the resolvent cubic `v^3 + 3 y v = 4`.
///
/// Requires `y >= 0`. Below the switchover the Cardano form
/// `(2 + sqrt(4 + y^3))^(1/3) - y (2 + sqrt(4 + y^3))^(-1/3)` is accurate;
/// for large `y` its two terms cancel to `O(1/y)`, so the small root is
/// polished by Newton iteration from the asymptote `4 / (3 y)` instead.
pub fn cardano_v(y: f64) -> f64 {
    debug_assert!(y.is_finite() && y >= 0.0, "cardano_v needs y >= 0");
    const SWITCH: f64 = 1e3;
    if y <= SWITCH {
        let s = (2.0 + (4.0 + y * y * y).sqrt()).cbrt();
        s - y / s
    } else {
        let mut v = 4.0 / (3.0 * y);
        for _ in 0..64 {
            let f = v * v * v + 3.0 * y * v - 4.0;
            let df = 3.0 * v * v + 3.0 * y;
            let step = f / df;
            v -= step;
            if step.abs() <= 1e-16 * v.abs() {
                break;
            }
        }
        v
    }
}

/// Solution of the quartic `4 g^4 - 8 g = 3 y` on the positive branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticSolution {
    /// Load parameter the quartic was solved at.
    pub y: f64,
    /// Resolvent cubic root.
    pub v: f64,
    /// Positive quartic root; `g >= 2^(1/3)` with equality at `y = 0`.
    pub g: f64,
    /// Backsubstitution residual `|4 g^4 - 8 g - 3 y|`.
    pub residual: f64,
}

/// Solves `4 g^4 - 8 g = 3 y` for the positive root via the resolvent cubic.
pub fn solve_quartic(y: f64) -> Result<QuarticSolution, AfmError> {
    if !y.is_finite() || y < 0.0 {
        return Err(AfmError::InvalidQuarticParameter(y));
    }
    let v = cardano_v(y);
    let sqrt_v = v.sqrt();
    let inner = 4.0 / sqrt_v - v;
    // analytically 4 v^(-1/2) - v >= v > 0 on the whole branch; a NaN from
    // a degenerate v must land in the error arm too
    if !inner.is_finite() || inner <= 0.0 {
        return Err(AfmError::BrokenRadicand { y, radicand: inner });
    }
    let g = 0.5 * (sqrt_v + inner.sqrt());
    let residual = (4.0 * g.powi(4) - 8.0 * g - 3.0 * y).abs();
    Ok(QuarticSolution { y, v, g, residual })
}

/// Dimensionless load parameter `y = (16 b / 3) (m / (2 a^2 N^2))^(2/3)`.
pub fn offset_parameter(params: &PotentialParams, principal: f64) -> f64 {
    let base = params.m() / (2.0 * params.a() * params.a() * principal * principal);
    (16.0 * params.b() / 3.0) * (base * base).cbrt()
}

/// Reduced-units version: `y = 16 beta / (3 N^(4/3))`.
pub fn offset_parameter_reduced(beta: f64, principal: f64) -> f64 {
    let n4 = principal * principal * principal * principal;
    16.0 * beta / (3.0 * n4.cbrt())
}

fn check_beta(beta: f64) -> Result<(), AfmError> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(AfmError::InvalidBeta(beta))
    }
}

fn check_principal(principal: f64) -> Result<(), AfmError> {
    if principal.is_finite() && principal > 0.0 {
        Ok(())
    } else {
        Err(AfmError::InvalidPrincipal(principal))
    }
}

/// Trial energy before minimization over the auxiliary field `nu`.
///
/// The closed-form result equals the minimum of this function over
/// `nu > 0`, which makes it a handy independent cross-check.
pub fn auxiliary_energy(
    params: &PotentialParams,
    principal: f64,
    nu: f64,
) -> Result<f64, AfmError> {
    check_principal(principal)?;
    if !nu.is_finite() || nu <= 0.0 {
        return Err(AfmError::InvalidAuxiliaryField(nu));
    }
    let a2 = params.a() * params.a();
    Ok((2.0 * principal * principal * nu / params.m()).sqrt()
        + a2 / (4.0 * nu)
        + params.b() * nu / a2)
}

fn reduced_eps(beta: f64, principal: f64) -> Result<f64, AfmError> {
    check_principal(principal)?;
    let y = offset_parameter_reduced(beta, principal);
    let s = solve_quartic(y)?;
    let n23 = (principal * principal).cbrt();
    Ok(0.5 * n23 * (s.g * s.g + 1.0 / s.g))
}

/// Closed-form energy in physical units.
pub fn energy(
    params: &PotentialParams,
    state: QuantumNumbers,
    variant: PrincipalN,
) -> Result<EnergyEstimate, AfmError> {
    let beta = params.reduce().beta();
    let principal = variant.value(state, beta);
    check_principal(principal)?;
    let y = offset_parameter(params, principal);
    let s = solve_quartic(y)?;
    let pref = 0.5 * (2.0 * params.a() * params.a() * principal * principal / params.m()).cbrt();
    Ok(EnergyEstimate::new(
        pref * (s.g * s.g + 1.0 / s.g),
        variant.kind(),
    ))
}

/// Closed-form energy of the reduced problem (unit slope, unit mass scale).
pub fn energy_reduced(
    beta: f64,
    state: QuantumNumbers,
    variant: PrincipalN,
) -> Result<EnergyEstimate, AfmError> {
    check_beta(beta)?;
    let eps = reduced_eps(beta, variant.value(state, beta))?;
    Ok(EnergyEstimate::new(eps, variant.kind()))
}

fn simplified_factor(y: f64, eta: f64) -> f64 {
    let edge = 3.0 * (4.0_f64).cbrt() - eta;
    (3.0 * y + edge * edge).sqrt() + eta
}

/// One-radical approximation to the closed form.
///
/// Replaces the quartic root by `(sqrt(3 y + (3 * 2^(2/3) - eta)^2) + eta) / 2`,
/// exact at `y = 0` for any `eta <= 3 * 2^(2/3)` and asymptotically exact as
/// `y` grows. `eta = 1` keeps the gap to the full formula below 2 percent
/// everywhere.
pub fn energy_simplified(
    params: &PotentialParams,
    state: QuantumNumbers,
    variant: PrincipalN,
    eta: f64,
) -> Result<EnergyEstimate, AfmError> {
    if !eta.is_finite() {
        return Err(AfmError::InvalidEta(eta));
    }
    let beta = params.reduce().beta();
    let principal = variant.value(state, beta);
    check_principal(principal)?;
    let y = offset_parameter(params, principal);
    if !y.is_finite() || y < 0.0 {
        return Err(AfmError::InvalidQuarticParameter(y));
    }
    let pref = 0.25 * (2.0 * params.a() * params.a() * principal * principal / params.m()).cbrt();
    Ok(EnergyEstimate::new(
        pref * simplified_factor(y, eta),
        EstimateKind::Approximation,
    ))
}

/// Reduced-units version of [`energy_simplified`].
pub fn energy_simplified_reduced(
    beta: f64,
    state: QuantumNumbers,
    variant: PrincipalN,
    eta: f64,
) -> Result<EnergyEstimate, AfmError> {
    if !eta.is_finite() {
        return Err(AfmError::InvalidEta(eta));
    }
    check_beta(beta)?;
    let principal = variant.value(state, beta);
    check_principal(principal)?;
    let y = offset_parameter_reduced(beta, principal);
    if !y.is_finite() || y < 0.0 {
        return Err(AfmError::InvalidQuarticParameter(y));
    }
    let pref = 0.25 * (principal * principal).cbrt();
    Ok(EnergyEstimate::new(
        pref * simplified_factor(y, eta),
        EstimateKind::Approximation,
    ))
}

/// `b = 0` limit of the closed form: `E = (3/2) (a^2 N^2 / m)^(1/3)`.
pub fn linear_limit(params: &PotentialParams, principal: f64) -> f64 {
    1.5 * (params.a() * params.a() * principal * principal / params.m()).cbrt()
}

/// Deep-well limit: the well bottom looks harmonic, so
/// `E -> a (2n + l + 3/2) / sqrt(m sqrt b) + sqrt b`. Needs `b > 0`.
pub fn harmonic_limit(params: &PotentialParams, state: QuantumNumbers) -> Result<f64, AfmError> {
    if params.b() == 0.0 {
        return Err(AfmError::FlatWell);
    }
    let sb = params.b().sqrt();
    let level = 2.0 * f64::from(state.n) + f64::from(state.l) + 1.5;
    Ok(params.a() / (params.m() * sb).sqrt() * level + sb)
}

/// Variational sandwich `(lower, upper)` around the true eigenvalue.
pub fn bounds(
    params: &PotentialParams,
    state: QuantumNumbers,
) -> Result<(EnergyEstimate, EnergyEstimate), AfmError> {
    Ok((
        energy(params, state, PrincipalN::Coulomb)?,
        energy(params, state, PrincipalN::Harmonic)?,
    ))
}

/// Reduced-units version of [`bounds`].
pub fn bounds_reduced(
    beta: f64,
    state: QuantumNumbers,
) -> Result<(EnergyEstimate, EnergyEstimate), AfmError> {
    Ok((
        energy_reduced(beta, state, PrincipalN::Coulomb)?,
        energy_reduced(beta, state, PrincipalN::Harmonic)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{EstimateKind, PotentialParams, QuantumNumbers};
    use approx::assert_relative_eq;

    fn qn(n: u32, l: u32) -> QuantumNumbers {
        QuantumNumbers::new(n, l)
    }

    fn params(m: f64, a: f64, b: f64) -> PotentialParams {
        PotentialParams::new(m, a, b).unwrap()
    }

    // independent root of v^3 + 3 y v - 4 by plain bisection
    fn cubic_root_bisect(y: f64) -> f64 {
        let f = |v: f64| v * v * v + 3.0 * y * v - 4.0;
        let mut lo = 0.0_f64;
        let mut hi = 4.0_f64.cbrt() + 1e-9;
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn cardano_agrees_with_bisection() {
        for &y in &[0.0, 0.1, 1.0, 16.0 / 3.0, 100.0, 999.0, 1001.0, 1e4, 1e7] {
            let v = cardano_v(y);
            let v_ref = cubic_root_bisect(y);
            assert_relative_eq!(v, v_ref, max_relative = 1e-11);
        }
    }

    #[test]
    fn cardano_known_points() {
        assert_eq!(cardano_v(0.0), 4.0_f64.cbrt());
        assert_relative_eq!(
            cardano_v(16.0 / 3.0),
            0.24903470591845212,
            max_relative = 1e-14
        );
        // large-y asymptote v ~ 4/(3y)
        let y = 1e8;
        assert_relative_eq!(cardano_v(y), 4.0 / (3.0 * y), max_relative = 1e-8);
    }

    #[test]
    fn cardano_is_continuous_at_the_switch() {
        let below = cardano_v(1e3 - 1e-9);
        let above = cardano_v(1e3 + 1e-9);
        assert_relative_eq!(below, above, max_relative = 1e-9);
    }

    #[test]
    fn quartic_root_known_points() {
        let s = solve_quartic(0.0).unwrap();
        assert_relative_eq!(s.g, 2.0_f64.cbrt(), max_relative = 1e-15);
        let s = solve_quartic(16.0 / 3.0).unwrap();
        assert_relative_eq!(s.g, 1.6429348842719096, max_relative = 1e-14);
        // deep-well asymptote g ~ (3y/4)^(1/4)
        let s = solve_quartic(1e8).unwrap();
        assert_relative_eq!(s.g, (3.0_f64 * 1e8 / 4.0).powf(0.25), max_relative = 1e-3);
        assert_relative_eq!(s.g, 93.06054364521896, max_relative = 1e-12);
    }

    #[test]
    fn quartic_root_monotone_and_bounded() {
        let mut prev = solve_quartic(0.0).unwrap().g;
        let floor = 2.0_f64.cbrt() - 1e-12;
        for k in 1..=120 {
            let y = 10.0_f64.powf(-3.0 + 0.1 * k as f64);
            let s = solve_quartic(y).unwrap();
            assert!(s.g > prev, "root must grow with y");
            assert!(s.g >= floor);
            assert!(s.residual <= 1e-9 * y.max(1.0).powf(1.5));
            prev = s.g;
        }
    }

    #[test]
    fn quartic_rejects_bad_input() {
        assert!(matches!(
            solve_quartic(-0.5),
            Err(AfmError::InvalidQuarticParameter(_))
        ));
        assert!(solve_quartic(f64::NAN).is_err());
        assert!(solve_quartic(f64::INFINITY).is_err());
    }

    #[test]
    fn load_parameter_examples() {
        let p = params(2.0, 1.0, 1.0);
        assert_relative_eq!(
            offset_parameter(&p, 1.5),
            3.1060638746179516,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            offset_parameter_reduced(1.0, 1.5),
            3.1060638746179516,
            max_relative = 1e-14
        );
        assert_eq!(offset_parameter_reduced(0.0, 1.5), 0.0);
    }

    #[test]
    fn principal_number_prescriptions() {
        let g = qn(0, 0);
        assert_eq!(PrincipalN::Harmonic.value(g, 1.0), 1.5);
        assert_eq!(PrincipalN::Coulomb.value(g, 1.0), 1.0);
        assert_eq!(PrincipalN::Harmonic.value(qn(2, 1), 0.0), 6.5);
        assert_eq!(PrincipalN::Coulomb.value(qn(2, 1), 0.0), 4.0);
        let lin = PrincipalN::Linear.value(qn(1, 0), 0.0);
        assert_relative_eq!(
            lin,
            std::f64::consts::PI / 3.0_f64.sqrt() + 3.0_f64.sqrt() * std::f64::consts::PI / 4.0,
            max_relative = 1e-15
        );
        // custom coefficients equal to the harmonic choice reproduce it
        let custom = PrincipalN::FittedCustom { a: 2.0, c: 1.5 };
        for (n, l) in [(0, 0), (1, 2), (3, 4)] {
            assert_eq!(
                custom.value(qn(n, l), 7.0),
                PrincipalN::Harmonic.value(qn(n, l), 7.0)
            );
        }
        assert_eq!(PrincipalN::Harmonic.kind(), EstimateKind::UpperBound);
        assert_eq!(PrincipalN::Coulomb.kind(), EstimateKind::LowerBound);
        assert_eq!(PrincipalN::Linear.kind(), EstimateKind::Approximation);
        assert_eq!(PrincipalN::Fitted.kind(), EstimateKind::Approximation);
    }

    #[test]
    fn reduced_energies_at_unit_depth() {
        let up = energy_reduced(1.0, qn(0, 0), PrincipalN::Harmonic).unwrap();
        assert_relative_eq!(up.value(), 1.9492560611299787, max_relative = 1e-14);
        assert_eq!(up.kind(), EstimateKind::UpperBound);

        let low = energy_reduced(1.0, qn(0, 0), PrincipalN::Coulomb).unwrap();
        assert_relative_eq!(low.value(), 1.6539509417459926, max_relative = 1e-14);
        assert_eq!(low.kind(), EstimateKind::LowerBound);

        assert_relative_eq!(
            energy_reduced(1.0, qn(0, 4), PrincipalN::Harmonic)
                .unwrap()
                .value(),
            3.901927136485186,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            energy_reduced(1.0, qn(0, 4), PrincipalN::Coulomb)
                .unwrap()
                .value(),
            3.6849210395364205,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            energy_reduced(1.0, qn(4, 0), PrincipalN::Harmonic)
                .unwrap()
                .value(),
            5.477233817043105,
            max_relative = 1e-14
        );
    }

    #[test]
    fn physical_energy_matches_scaled_reduced() {
        let p = params(1.0, 2.0, 3.0);
        let r = p.reduce();
        for variant in [
            PrincipalN::Harmonic,
            PrincipalN::Coulomb,
            PrincipalN::Linear,
            PrincipalN::Fitted,
        ] {
            for (n, l) in [(0, 0), (1, 1), (3, 2)] {
                let phys = energy(&p, qn(n, l), variant).unwrap().value();
                let red = energy_reduced(r.beta(), qn(n, l), variant).unwrap().value();
                assert_relative_eq!(phys, r.unreduce(red), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn unit_scale_well_reproduces_reduced_numbers() {
        // m = 2, a = 1 makes the reduction trivial, so physical == reduced
        let p = params(2.0, 1.0, 1.0);
        let e = energy(&p, qn(0, 0), PrincipalN::Harmonic).unwrap();
        assert_relative_eq!(e.value(), 1.9492560611299787, max_relative = 1e-14);
    }

    #[test]
    fn flat_well_collapses_to_linear_limit() {
        let p = params(2.0, 1.0, 0.0);
        let nn = PrincipalN::Coulomb.value(qn(0, 0), 0.0);
        assert_relative_eq!(
            energy(&p, qn(0, 0), PrincipalN::Coulomb).unwrap().value(),
            linear_limit(&p, nn),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            linear_limit(&p, 1.0),
            1.1905507889761497,
            max_relative = 1e-14
        );

        let lin = energy(&p, qn(0, 0), PrincipalN::Linear).unwrap();
        assert_relative_eq!(lin.value(), 1.4616664086452826, max_relative = 1e-13);
    }

    #[test]
    fn simplified_formula_tracks_the_full_one() {
        // exact agreement in the flat well, close agreement elsewhere
        let flat = params(2.0, 1.0, 0.0);
        let full = energy(&flat, qn(0, 0), PrincipalN::Harmonic)
            .unwrap()
            .value();
        let simple = energy_simplified(&flat, qn(0, 0), PrincipalN::Harmonic, 1.0)
            .unwrap()
            .value();
        assert_relative_eq!(simple, full, max_relative = 1e-14);

        let p = params(2.0, 1.0, 1.0);
        for (n, l) in [(0, 0), (1, 1), (2, 0)] {
            let full = energy(&p, qn(n, l), PrincipalN::Harmonic).unwrap().value();
            let simple = energy_simplified(&p, qn(n, l), PrincipalN::Harmonic, 1.0)
                .unwrap()
                .value();
            assert!(((simple - full) / full).abs() < 0.02);
        }
        assert!(matches!(
            energy_simplified(&p, qn(0, 0), PrincipalN::Harmonic, f64::NAN),
            Err(AfmError::InvalidEta(_))
        ));
        // reduced flavor agrees with the physical one on a unit-scale well
        let red = energy_simplified_reduced(1.0, qn(1, 1), PrincipalN::Harmonic, 1.0)
            .unwrap()
            .value();
        let phys = energy_simplified(&p, qn(1, 1), PrincipalN::Harmonic, 1.0)
            .unwrap()
            .value();
        assert_relative_eq!(red, phys, max_relative = 1e-13);
    }

    #[test]
    fn stationary_point_consistency() {
        // the closed form equals the minimum over the trial field
        let p = params(2.0, 1.0, 1.0);
        let nn = 1.5;
        let nu0 = 0.32917402801128015;
        let at_min = auxiliary_energy(&p, nn, nu0).unwrap();
        let closed = energy(&p, qn(0, 0), PrincipalN::Harmonic).unwrap().value();
        assert_relative_eq!(at_min, closed, max_relative = 1e-12);
        assert!(auxiliary_energy(&p, nn, nu0 * 1.001).unwrap() > at_min);
        assert!(auxiliary_energy(&p, nn, nu0 * 0.999).unwrap() > at_min);
        assert!(matches!(
            auxiliary_energy(&p, nn, 0.0),
            Err(AfmError::InvalidAuxiliaryField(_))
        ));
    }

    #[test]
    fn harmonic_limit_values() {
        let p = params(1.0, 1.0, 1.0);
        assert_eq!(harmonic_limit(&p, qn(1, 1)).unwrap(), 5.5);
        let deep = params(2.0, 1.0, 1e8);
        assert_relative_eq!(
            harmonic_limit(&deep, qn(0, 0)).unwrap(),
            1.0e4 + 0.010606601717881858,
            max_relative = 1e-14
        );
        assert!(matches!(
            harmonic_limit(&params(1.0, 1.0, 0.0), qn(0, 0)),
            Err(AfmError::FlatWell)
        ));
    }

    #[test]
    fn sandwich_orders_correctly() {
        for &beta in &[0.0, 0.5, 1.0, 10.0, 100.0] {
            for n in 0..3 {
                for l in 0..3 {
                    let (low, up) = bounds_reduced(beta, qn(n, l)).unwrap();
                    assert!(low.value() < up.value());
                    assert_eq!(low.kind(), EstimateKind::LowerBound);
                    assert_eq!(up.kind(), EstimateKind::UpperBound);
                    let fitted = energy_reduced(beta, qn(n, l), PrincipalN::Fitted)
                        .unwrap()
                        .value();
                    assert!(low.value() < fitted && fitted < up.value());
                }
            }
        }
    }

    #[test]
    fn energies_grow_with_quantum_numbers_and_depth() {
        for variant in [
            PrincipalN::Harmonic,
            PrincipalN::Coulomb,
            PrincipalN::Fitted,
        ] {
            let mut prev = 0.0;
            for n in 0..5 {
                let e = energy_reduced(2.0, qn(n, 0), variant).unwrap().value();
                assert!(e > prev);
                prev = e;
            }
            let mut prev = 0.0;
            for l in 0..5 {
                let e = energy_reduced(2.0, qn(0, l), variant).unwrap().value();
                assert!(e > prev);
                prev = e;
            }
        }
        let mut prev = 0.0;
        for &beta in &[0.0, 0.1, 1.0, 10.0, 100.0] {
            let e = energy_reduced(beta, qn(0, 0), PrincipalN::Harmonic)
                .unwrap()
                .value();
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            energy_reduced(-1.0, qn(0, 0), PrincipalN::Harmonic),
            Err(AfmError::InvalidBeta(_))
        ));
        assert!(energy_reduced(f64::NAN, qn(0, 0), PrincipalN::Harmonic).is_err());
        // a principal number driven non-positive by custom coefficients
        assert!(matches!(
            energy_reduced(1.0, qn(1, 0), PrincipalN::FittedCustom { a: -3.0, c: 0.5 }),
            Err(AfmError::InvalidPrincipal(_))
        ));
    }
}
