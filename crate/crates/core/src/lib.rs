//! Finite, exact computations with Γ-spaces valued in presheaves of pointed
//! simplicial sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`simplicial`]: truncated finite pointed simplicial sets, their
//!   constructions, and exhaustive map enumeration.
//! * [`homology`]: integer linear algebra (Smith normal form), chain
//!   complexes, and simplicial abelian groups.
//! * [`site`]: finite index categories and presheaves over them.
//! * [`gamma`]: the category Γ, Γ-spaces and the constructions on them.
//! * [`spectra`]: truncated spectra, the associated-spectrum functor and
//!   stable invariants.
//! * [`workspace`]: definition-file parsing and report rendering used by the
//!   command line driver.

pub mod error;
pub mod gamma;
pub mod homology;
pub mod search;
pub mod simplicial;
pub mod site;
pub mod spectra;
pub mod workspace;

pub use error::{Error, Result};
