//! Exact arithmetic over the octavian integers and the Leech lattices built
//! from them.
//!
//! The crate is layered bottom-up:
//!
//! * [`octonion`], [`half`], [`scalar`]: exact octonion arithmetic.
//! * [`ring`]: the canonical octavian ring, its units and automorphisms.
//! * [`mod2`]: the residue ring modulo 2 and its strongly regular graphs.
//! * [`lattice`], [`enumerate`]: integral lattices and short-vector search.
//! * [`isometry`], [`reflection`], [`perm`]: reflections on triples of
//!   octonions and the permutation groups they generate.
//! * [`projective`]: the action on projectors and generalized hexagons.
//! * [`construction`]: both actions of one vector set side by side.

pub mod construction;
pub mod enumerate;
pub mod error;
pub mod half;
pub mod isometry;
pub mod lattice;
pub mod linalg;
pub mod mod2;
pub mod octonion;
pub mod perm;
pub mod projective;
pub mod reflection;
pub mod ring;
pub mod scalar;
pub mod shortvec_io;

pub use error::{Error, Result};
pub use half::HalfOct;
pub use octonion::{Octonion, OctonionVector, VectorClass};
pub use scalar::ExactScalar;
