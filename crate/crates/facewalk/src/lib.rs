//! Gray codes for face lattices of polytopes.
//!
//! Every family module produces a cyclic listing of all faces of its polytope
//! in which consecutive faces are in cover relation, i.e. a Hamiltonian cycle
//! in the cover graph of the face lattice. Each family also ships a
//! brute-force enumerator that builds the cover graph independently, so the
//! listings can be checked with [`posetcore::check_hamiltonian`].
//!
//! ```
//! use facewalk::cube;
//! use facewalk::posetcore::{check_hamiltonian, Listing};
//!
//! let ids: Vec<String> = cube::gamma(2).unwrap().collect();
//! assert_eq!(ids[..3], ["00", "0-", "01"]);
//! let graph = cube::cover_graph(2);
//! assert!(check_hamiltonian(&graph, &Listing::cyclic(ids)).is_ok());
//! ```

pub mod assoc;
pub mod cube;
pub mod graphassoc;
pub mod lazy;
pub mod perm;
pub mod planar3;
pub mod posetcore;
pub mod quotient;
pub mod strip;
pub mod zigzag;

pub use posetcore::{CoverGraph, Listing, RankedElement, Report, EMPTY};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),
    /// An oracle or search refused an instance above its budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// An object failed a structural invariant during construction.
    #[error("structural error: {0}")]
    Structure(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/cubes.md")]
    mod cubes {}
    #[doc = include_str!("../../../book/src/strips.md")]
    mod strips {}
    #[doc = include_str!("../../../book/src/permutahedra.md")]
    mod permutahedra {}
    #[doc = include_str!("../../../book/src/associahedra.md")]
    mod associahedra {}
    #[doc = include_str!("../../../book/src/polytopes3.md")]
    mod polytopes3 {}
    #[doc = include_str!("../../../book/src/graph_associahedra.md")]
    mod graph_associahedra {}
    #[doc = include_str!("../../../book/src/quotientopes.md")]
    mod quotientopes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
