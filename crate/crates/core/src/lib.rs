//! Para-Racah polynomials: a finite family of bispectral orthogonal
//! polynomials on a quadratic bi-lattice, obtained from a regularized
//! truncation of the Wilson polynomials.
//!
//! Every identity is available in exact rational arithmetic:
//!
//! - [`recurrence`]: monic recurrence coefficients on two independent routes
//! - [`explicit`]: the split ₄F₃ explicit form and the characteristic polynomial
//! - [`spectral`]: bi-lattice, closed-form and spectral weights, Gram matrix
//! - [`bispectral`]: the difference equation with complex shifts
//! - [`jacobi`]: Jacobi matrix, Sturm-bisection spectrum, `alpha ∈ {0,1}` blocks
//! - [`degenerations`]: para-Krawtchouk limit and dual-Hahn reduction
//! - [`certify`]: all of the above as named checks for one parameter set
//!
//! ```
//! use para_racah::{params::validate, recurrence::recurrence_table, scalar::{int, rat}};
//!
//! let p = validate(3, int(1), rat(5, 4), rat(1, 2)).unwrap();
//! let t = recurrence_table(&p).unwrap();
//! assert_eq!(t.b(0), &rat(-77, 32));
//! ```

pub mod bispectral;
pub mod certify;
pub mod degenerations;
pub mod error;
pub mod explicit;
pub mod jacobi;
pub mod params;
pub mod recurrence;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use params::{validate, ParamSet, Parity, Regime};
pub use recurrence::{recurrence_table, RecurrenceTable};
pub use scalar::{Gaussian, Rational};
