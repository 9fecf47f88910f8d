//! Exact linear algebra, subspace counting and finite geometry over finite
//! commutative rings `R = Z/p_1^{s_1} x ... x Z/p_l^{s_l}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`ring`]: ring specs, elements, residue maps and CRT.
//! - [`local`] and [`matrix`]: per-component and product-ring matrices,
//!   McCoy rank, completions to `GL_n(R)`, Howell forms and kernels.
//! - [`subspace`]: free subspaces with canonical forms, meets, joins,
//!   dimensions of arbitrary submodules and duals.
//! - [`counting`]: closed-form subspace and matrix counts as big integers.
//! - [`singular`]: the singular linear space `R^{n+k}` and `(m, t)`-types.
//! - [`geometry`]: arcs and caps, completeness and maximum-size search.
//! - [`oracle`]: brute-force enumeration used to cross-check everything.
//! - [`wire`]: the JSON forms shared with the command-line front end.

pub mod counting;
pub mod error;
pub mod geometry;
pub mod local;
pub mod matrix;
pub mod oracle;
pub mod ring;
pub mod singular;
pub mod subspace;
pub mod util;
pub mod wire;

pub use error::{Error, Result};
pub use local::ComponentMatrix;
pub use matrix::Matrix;
pub use ring::{Element, LocalRingSpec, RingSpec};
pub use subspace::{LinearSubset, Subspace};
