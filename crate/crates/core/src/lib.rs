//! Deformed canonical commutation relations in one dimension.
//!
//! This crate implements the machinery around two generalizations of the
//! Kempf quadratic algebra `[X, P] = i(1 + aX^2 + bP^2)`:
//!
//! * the **general quadratic relation** `[X, P] = i(1 + aX^2 + bP^2 + kXP + k*PX)`
//!   — rotation to canonical (Kempf) form, admissibility, and the nonzero
//!   minimal uncertainties in position and momentum ([`quad_algebra`]);
//! * its application to the **harmonic oscillator in a uniform electric
//!   field**, solved through a shape-invariance ladder of factorized
//!   Hamiltonians and cross-checked against truncated q-deformed Fock
//!   matrices ([`si_oscillator`]);
//! * the **function-deformed relation** `[f(X), P] = i(f'(X) + bP^2)` with a
//!   Riccati-closed `f`, its first-order quasiposition representation, and
//!   position-dependent minimal uncertainty ([`fdeform`]);
//! * **exact spectra and wavefunctions** of the associated hyperbolic /
//!   trigonometric Poschl-Teller and Morse systems, the latter with real-order
//!   Bessel-function bound states ([`exact_spectra`]);
//! * an independent **verification layer**: banded grid Hamiltonians, a
//!   deterministic symmetric eigensolver, and the special functions the
//!   closed forms require ([`numerics`]).
//!
//! All kernels are generic over the scalar type through [`Real`]; the type
//! aliases at the crate root fix `f64`, which is what the CLI and the
//! accuracy contracts use.

pub mod exact_spectra;
pub mod fdeform;
pub mod numerics;
pub mod quad_algebra;
mod real;
pub mod si_oscillator;

pub use real::Real;

/// `f64` quadratic-algebra parameter set.
pub type QuadParams = quad_algebra::QuadraticAlgebraParams<f64>;
/// `f64` rotation output.
pub type Rotation = quad_algebra::RotationResult<f64>;
/// `f64` expectation context for uncertainty relations.
pub type Expectations = quad_algebra::ExpectationContext<f64>;
/// `f64` minimal-uncertainty record.
pub type Uncertainties = quad_algebra::MinimalUncertainties<f64>;
/// `f64` oscillator-in-field input.
pub type OscField = si_oscillator::OscFieldInput<f64>;
/// `f64` shape-invariance ladder.
pub type Ladder = si_oscillator::FactorizationLadder<f64>;
/// `f64` deformed function family.
pub type Family = fdeform::DeformedFunctionFamily<f64>;
/// `f64` banded grid operator.
pub type Operator = fdeform::GridOperator<f64>;
/// `f64` uniform grid.
pub type Grid = numerics::GridSpec<f64>;
/// `f64` eigensolver output.
pub type Eigen = numerics::EigenResult<f64>;
/// `f64` spectrum table.
pub type Report = exact_spectra::SpectrumReport<f64>;
