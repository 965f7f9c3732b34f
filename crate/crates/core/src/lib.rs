//! Codeword stabilized quantum codes: the `Cl_S` error map, diagonal distance,
//! structural certificates for 4-cycle-free graphs, degeneracy classification and
//! clique-based code search.

pub mod corpus;
pub mod cws;
pub mod diagdist;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod par;
pub mod pauli;
pub mod search;
pub mod structure;
pub mod subsets;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use graph::Graph;
pub use par::Exec;
pub use pauli::PauliVector;
