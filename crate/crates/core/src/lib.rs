//! Executable Laplace and Fourier transform methods.
//!
//! Symbolic transforms over a closed signal grammar come with explicit
//! existence certificates, and every symbolic result can be cross-checked
//! against an independent adaptive-quadrature oracle. Constant-coefficient
//! linear ODEs map to transfer functions and frequency responses.
//!
//! Exact arithmetic uses [`GaussianRational`] coefficients; the numeric side
//! is generic over [`Real`] (`f32` or `f64`), with `f64` aliases below.

// comparisons are written so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cases;
pub mod error;
pub mod existence;
mod lexer;
pub mod ode;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod roots;
pub mod scalar;
pub mod signal;
pub mod syntax;
pub mod transform;
pub mod validate;

pub use cases::{ltc_model, sallen_key_model, suspension_model, CaseStudyParams};
pub use error::{Error, Result, SyntaxError};
pub use existence::{
    exp_order_cert, fourier_exists, laplace_exists, ExistenceVerdict, ExpOrderCert,
};
pub use ode::{
    bode_grid, frequency_response, parse_ode, print_ode, transfer_function, FrequencyResponsePoint,
    LinearODE,
};
pub use oracle::{fourier_numeric, laplace_numeric};
pub use poly::Poly;
pub use quadrature::{integrate_adaptive, QuadratureConfig, Truncation};
pub use rational::{eval_rational, rational_equal, RationalFunction, Var};
pub use scalar::{ExactField, Field, GaussianRational, Real, ToComplex};
pub use signal::{eval_signal, Atom, Osc, OscKind, SignalExpr, Support};
pub use syntax::{parse_signal, print_signal};
pub use transform::{
    fourier_derivative, fourier_modulate, fourier_shift, fourier_symbolic, fourier_time_reverse,
    laplace_derivative, laplace_integral, laplace_shift, laplace_symbolic, laplace_to_fourier,
    Abscissa, InitialValues, TransformResult,
};
pub use validate::{run_suite, Suite, ValidationReport};

/// Evaluation point `s` or `iω` in double precision.
pub type ComplexPoint = num_complex::Complex<f64>;
/// Exact polynomial over Gaussian rationals.
pub type Polynomial = Poly<GaussianRational>;
/// Exact rational function over Gaussian rationals.
pub type RationalExpr = RationalFunction<GaussianRational>;
