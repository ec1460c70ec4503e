//! Structure constants and graded extension data for generalized Haagerup
//! fusion categories over finite abelian groups.
//!
//! The crate verifies the defining axiom system of the structure constants
//! `(ε, η, A)`, numerically solves for the tensor `A` by damped
//! Gauss-Newton over a symmetry-reduced variable set, exhaustively
//! enumerates and classifies order-two graded extension data, and carries
//! out the Klein-four and A4 extension censuses for the `Z2 x Z2` category
//! (74 and 15 classes respectively) together with the degenerate `Z4 x Z2`
//! scenario.
//!
//! Everything combinatorial is exact: scalars live in cyclic groups of
//! roots of unity and sign tables, so the census counts are integers, not
//! floating-point artifacts.  Only the tensor `A` is numerical.

pub mod abelian;
pub mod ah4;
pub mod asolve;
pub mod category;
pub mod equiv;
pub mod extdata;
pub mod jsonio;
pub mod klein;
pub mod manifest;
pub mod presets;

pub use abelian::{Character, FiniteAbelianGroup, GroupElem, RootOfUnity};
pub use category::{dimension, verify_axioms, ATensor, AxiomReport, CategoryData};
pub use extdata::{check_extension_data, search_extension_data, ExtensionData, ExtensionParams};
