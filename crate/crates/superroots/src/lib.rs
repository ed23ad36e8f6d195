//! Exact root-system combinatorics for basic classical Lie superalgebras
//! and their non-twisted affinizations: root enumeration with parity and an
//! invariant bilinear form, base changes by even/odd reflections, parabolic
//! subsets with P⁺/P⁰/P⁻ decomposition, Levi type recognition with
//! cuspidality verdicts, truncated graded characters of Verma-type modules,
//! and a fixture harness that replays the published classification tables.
//!
//! All arithmetic is exact (integers and rationals; one formal parameter for
//! the D(2,1;a) family). Every value is immutable after construction and
//! every operation is pure.

pub mod affine;
pub mod characters;
pub mod diagram;
pub mod error;
pub mod export;
pub mod finite;
pub mod levi;
pub mod linalg;
pub mod parabolic;
pub mod root;
pub mod scalar;
pub mod verify;

pub use affine::{affinize, AffineRootSystem, Base, RootClass};
pub use diagram::DynkinDiagram;
pub use error::{Error, Result};
pub use finite::{build_finite, build_finite_ambient, FiniteRootSystem, TypeTag};
pub use root::{Parity, Root};
pub use scalar::{Rat, Scalar};
