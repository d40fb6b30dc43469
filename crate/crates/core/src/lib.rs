//! Graph invariants around the Shannon capacity of a graph.
//!
//! Everything here is pure computation over `alloc`: graph construction
//! (Hamming-distance graphs, complements, strong products), exact maximum
//! independent sets, dense symmetric spectra with exact rational PSD
//! certification, Krawtchouk spectra of the binary Hamming scheme, and a
//! log-barrier solver for the Lovász and Schrijver theta functions.
//!
//! File formats, wall-clock budgets, parallel search and the command-line
//! front end live in the companion `capax` crate.

#![no_std]

extern crate alloc;

mod bitset;
mod error;
mod linalg;

pub mod graph;
pub mod independence;
pub mod scheme;
pub mod spectra;
pub mod theta;

#[cfg(feature = "serde")]
mod serde_impls;

pub use bitset::Bitset;
pub use error::{Error, Result};
pub use graph::{Graph, VertexLabel};
pub use independence::{IndependentSetCertificate, SearchBudget, SearchOutcome, SearchStatus};
pub use scheme::{DistanceProfile, SchemeSpectrum};
pub use spectra::{RationalSymMatrix, SymMatrix};
pub use theta::{SdpSolution, SdpStatus, ThetaProgram, ThetaVariant};

/// Exact rational scalar used for certificates.
pub type Rational = num_rational::BigRational;
