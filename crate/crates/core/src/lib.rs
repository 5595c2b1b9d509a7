//! Exact computations with Weyl algebras in positive characteristic.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: coefficient rings, monomials, monomial orders and sparse
//!   commutative polynomials.
//! * [`weyl`]: normal-ordered arithmetic in the Weyl algebra.
//! * [`cgb`]: commutative Gröbner bases, radical membership, dimension and
//!   module colon ideals.
//! * [`wgb`]: left Gröbner bases in the Weyl algebra and weighted initial forms.
//! * [`center`]: the center of the Weyl algebra over `F_p` and central
//!   annihilators of cyclic modules.
//! * [`poisson`]: the symplectic bracket on the twisted cotangent ring and
//!   the bracket induced by the lift to `Z/p^2`.
//! * [`psupport`]: p-support reports, characteristic varieties and the
//!   example corpus.
//! * [`expr`]: the operator expression language used by the CLI and corpus.

pub mod algebra;
pub mod center;
pub mod cgb;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod poisson;
pub mod psupport;
pub mod weyl;
pub mod wgb;

pub use algebra::{Coeff, GaloisField, MPoly, Monomial, MonomialOrder, Ring};
pub use error::{Error, Result};
pub use weyl::WeylOp;
