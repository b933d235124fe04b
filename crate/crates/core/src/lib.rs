//! Element-order spectra of finite groups.
//!
//! The crate computes the spectrum (set of element orders) of a finite
//! group, its prime graph, and a four-prime witness test for
//! nonsolvability, and it carries the closed forms needed to recognize
//! direct squares of Suzuki groups from their spectra alone.

pub mod error;
pub mod field;
pub mod group;
pub mod numth;
pub mod spectrum;
pub mod suzuki;
pub mod verify;

pub use error::{Error, Result};
pub use field::FieldCtx;
pub use group::{
    derived_series_orders, enumerate, is_solvable, spectrum_of, suzuki_generators, Element,
    ElementSet, GroupCtx, GroupSpec, Mat4, DEFAULT_ENUM_CAP,
};
pub use numth::{factorize, primitive_prime_divisor, Factorization, PrimitivePrimeDivisor};
pub use spectrum::{CriterionWitness, PrimeGraph, Spectrum};
pub use suzuki::{
    aut_bounds_check, aut_coset_spectrum, classify_isospectral_squares, mu_sz, outer_class_count,
    params as suzuki_params, square_spectrum, twisted_square_spectrum, IsoGroup,
    SquareClassification, SuzukiParams, TwistedSquare,
};
pub use verify::{run_suite, solvable_family, suite_names, Check, SuiteReport};
