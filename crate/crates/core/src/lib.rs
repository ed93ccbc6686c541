//! Exact k-decks of subsets of Z_n and 3-deck reconstruction up to
//! translation.
//!
//! The numeric core is generic over the scalar type; the aliases below name
//! the concrete instantiations used throughout the crate and the CLI.

pub mod constructions;
pub mod cyclic;
pub mod deck;
pub mod error;
pub mod extendable;
pub mod lattice;
pub mod analysis;
pub mod poly;
pub mod scalar;
pub mod spectrum;

pub use cyclic::{CyclicSet, GcdClassTable};
pub use deck::{Deck, DeckDigest, IntFunction};
pub use error::{Error, Result};
pub use spectrum::SpectrumReport;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer polynomials.
pub type IntPolynomial = poly::Polynomial<num_bigint::BigInt>;
/// Decks of indicator functions.
pub type IntDeck = deck::IntDeck;
/// Decks of rational-valued functions.
pub type RationalDeck = deck::RationalDeck;
/// Floating-point decks for the real-valued demos.
pub type FloatDeck = deck::FloatDeck;
/// Integer matrices for the lattice routines.
pub type IntMatrix = lattice::IntMatrix;

pub use analysis::{
    classify, determinacy_certificate, good_n_predicate, zero_probability_mc, Certificate,
    ClassificationReport, McReport,
};
pub use constructions::{CounterexamplePair, PairKind};
pub use extendable::{
    build_constraints, is_extendable, linearity_check, AdditiveConstraintSystem,
    ExtendabilityVerdict, Witness,
};
