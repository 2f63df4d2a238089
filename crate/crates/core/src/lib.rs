//! Morphisms on finite alphabets and the sequences they generate.
//!
//! The crate covers words and morphisms, lazy generation of iterative fixed
//! points, a construction that re-presents any automatic sequence through a
//! *non-uniform* morphism, and executable checks for every property that
//! construction promises.
//!
//! ```
//! use morphic::{catalog, nonuniformize, Options};
//!
//! let tm = catalog::get("thue-morse").unwrap().presentation;
//! let result = nonuniformize(&tm, &Options::default()).unwrap();
//! assert_eq!(result.gamma_prime.uniform_arity(), None);
//! assert_eq!(result.presentation().unwrap().prefix(64), tm.prefix(64));
//! ```

pub mod catalog;
pub mod error;
pub mod fixedpoint;
pub mod morphism;
pub mod nonuniformize;
pub mod verify;
pub mod word;

pub use error::{Error, Result, WordError};
pub use fixedpoint::{
    fixed_point_prefix, is_prolongable, presented_prefix, prolongation_tail, FixedPointStream,
    MorphicPresentation, MortalSet,
};
pub use morphism::{compose, Coding, IncidenceMatrix, Morphism};
pub use nonuniformize::{
    build_nonuniform, ensure_interior_occurrence, find_expanding_letter, locate_bc, nonuniformize,
    periodic_fixed_point, split_unequal, uniquify_first_letter, InteriorOccurrence,
    NonUniformizationResult, Options, PeriodGuard, PeriodicForm, Trace,
};
pub use verify::{
    bounded_period_check, verify_commutation, verify_minimal_alphabet,
    verify_nonuniform_presentation, verify_prefix_equal, Check, VerificationReport, Witness,
};
pub use word::{concat, is_prefix, occurrences, runs_between_zeros, Alphabet, Symbol, Word};
