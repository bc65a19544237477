//! Construction and exact verification of balanced-product quantum LDPC
//! codes.
//!
//! The pipeline is: build a classical matrix `I` with a certified
//! order-`l` symmetry ([`builders`], [`lps`]), form a CSS pair from it
//! ([`products`]), count and extract logical operators ([`css`]), and certify
//! distances by exhaustive or meet-in-the-middle search ([`distance`]).
//!
//! ```
//! use balprod::{builders, css, distance, products};
//!
//! let seed = builders::repetition_seed(3, 2).unwrap();
//! let code = css::analyze(products::balanced_product(&seed)).unwrap();
//! assert_eq!((code.n(), code.k()), (12, 2));
//! let cfg = distance::SearchConfig::default();
//! let d = distance::distance_exhaustive(&code, distance::Pauli::X, 5, &cfg).unwrap();
//! assert_eq!(d.distance(), Some(3));
//! ```
//!
//! With the default `parallel` feature the searches and table builds run on
//! rayon; without it they run sequentially and return identical results.

pub mod builders;
pub mod css;
pub mod distance;
pub mod gf2;
pub mod lps;
pub mod par;
pub mod products;
mod search;
pub mod symmetry;

pub use css::{analyze, CssCode, Gauge, LogicalSet, Side, SubsystemView};
pub use distance::{DistanceReport, Method, Outcome, Pauli, SearchConfig};
pub use gf2::{BitMatrix, BitVec};
pub use products::CssPair;
pub use symmetry::{Perm, SymmetricSeed};
