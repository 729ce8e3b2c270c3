//! Finite topological spaces as posets: beat-point cores, covering
//! invariants (geometric category and its prime and core variants, the
//! category of height-one spaces), hypergraph covers and simplicial
//! complexes.
//!
//! ```
//! use fincat_core::{families, homotopy, invariants, Budget};
//!
//! let crown = families::cycle(6).unwrap();
//! assert!(!homotopy::is_contractible(&crown));
//! let gcat = invariants::gcat_exact(&crown, &Budget::default()).unwrap();
//! assert_eq!(gcat.value.value(), Some(2));
//! ```

pub mod bitset;
pub mod budget;
pub mod compat;
pub mod corpus;
pub mod error;
pub mod families;
pub mod height_one;
pub mod homotopy;
pub mod hypergraph;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod poset;
pub mod setcover;
pub mod simplicial;

pub use bitset::BitSet;
pub use budget::{Budget, Estimate};
pub use error::{Error, Result};
pub use poset::{FinitePoset, OpenSubset};
