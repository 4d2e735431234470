//! Exact scalar arithmetic over Q and small algebraic extensions, with the
//! univariate polynomial toolkit (gcd, squarefree decomposition, resultants,
//! factorization, root adjunction).

pub mod bipoly;
pub mod factor;
pub mod field;
pub mod unipoly;

pub use bipoly::{biv_gcd, biv_has_repeated_factor, biv_squarefree_part, BiPoly};
pub use factor::{adjoin_root, factor_univ, is_irreducible, split_completely, Adjoined};
pub use field::{rat, rat_int, AlgScalar, Field, Rat};
pub use unipoly::{gcd_univ, interpolate, resultant, squarefree_decomposition, UniPoly};
