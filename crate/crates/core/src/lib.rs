//! Exact characteristic-2 algebra for the quartic family
//! `g_α = z⁴ + xyz² + (x³+y³)z + αx²y²`.
//!
//! The crate reconstructs, by exact computation, the finite linear-algebra
//! facts behind the failure of tight closure to commute with localization
//! for this family: the kernel of multiplication by `g_α` on truncated
//! polynomial rings, the induced `Q×Q` matrices and their special structure,
//! the resulting Frobenius non-membership certificates, and the Frobenius
//! action on the top local cohomology of the curve.
//!
//! Modules, bottom up:
//! - [`field`]: F2, `GF(2^m)` and `F2(α)`.
//! - [`poly`]: sparse polynomials in `x, y, z` and the named elements.
//! - [`exactla`]: exact rank, kernels and solving, bit-packed over F2.
//! - [`rings`]: graded quotient rings as finite-dimensional graded pieces.
//! - [`kernel_lab`]: the spaces `X`, `Y`, the induced matrix, kernels and colon membership.
//! - [`special_matrix`]: special matrices, recursive ranks and certificates.
//! - [`h2`]: the module `H²` with its Frobenius action.
//! - [`testelem`]: subring membership behind the test-element argument.
//! - [`properties`]: randomized property suites.

pub mod check;
pub mod error;
pub mod exactla;
pub mod field;
pub mod h2;
pub mod kernel_lab;
pub mod poly;
pub mod properties;
pub mod rings;
pub mod special_matrix;
pub mod testelem;

pub use check::Check;
pub use error::{Error, Result};
pub use field::{AnyField, Field, FieldSpec, Gf2m, Gf2mElem, RatElem, RatFunc, F2};
pub use poly::{Monomial, Poly};

/// `true` for 1, 2, 4, 8, …
pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// The 2-adic valuation of a nonzero integer.
pub fn ord2(n: i64) -> u32 {
    assert!(n != 0, "ord2 of zero");
    n.trailing_zeros()
}
