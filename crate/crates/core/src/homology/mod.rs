//! Integer linear algebra and homology: Smith normal form, chain
//! complexes, simplicial abelian groups and their homotopy groups.

mod chain;
mod group;
mod hurewicz;
pub(crate) mod lattice;
mod matrix;
mod simplicial_ab;
mod snf;

pub use chain::{induced_chain_map, is_isomorphism, reduced_chain_complex, reduced_homology, ChainComplex, HomologyClasses};
pub use group::AbGroup;
pub use hurewicz::{pi0, pi_n_via_hurewicz, Components, ConnectivityCertificate};
pub use matrix::IntMatrix;
pub use simplicial_ab::{SimplicialAbGroup, SimplicialAbMap};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
