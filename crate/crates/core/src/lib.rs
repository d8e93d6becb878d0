//! Exact computations in the rank-one quantized symplectic oscillator algebra
//! over the rational function field `Q(q)`.

pub mod blocks;
pub mod center;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod pbw;
pub mod poly;
pub mod repn;
pub mod rewrite;
pub mod scalar;
pub mod verma;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, LaurentVar};
pub use poly::{Coeff, Poly};
pub use scalar::RatFunc;

/// The ground field `Q(q)`.
pub type Scalar = RatFunc<num_bigint::BigInt>;
/// Integer polynomials in `q`.
pub type QPoly = Poly<num_bigint::BigInt>;
