//! Exact computational-commutative-algebra kernel and a verification
//! laboratory for commuting-matrix schemes.
//!
//! The crate has two layers:
//!
//! * a symbolic kernel — sparse multivariate polynomials over the
//!   rationals or an odd prime field, monomial orders, Gröbner bases,
//!   elimination, saturation, Krull dimension and Jacobian ranks;
//! * a laboratory ([`lab`]) that constructs the commuting-scheme ideal
//!   presentations, ring homomorphisms, rational points, eigenvalue
//!   parametrizations and one-parameter degeneration families, and runs
//!   the corresponding verification checks.
//!
//! No floating point is used anywhere: all arithmetic is exact.

pub mod error;
pub mod field;
pub mod groebner;
pub mod idealops;
pub mod lab;
pub mod matrix;
pub mod monomial;
pub mod point;
pub mod poly;
pub mod vars;

pub use error::{Error, Result};
pub use field::{Coeff, CoefficientField, DEFAULT_PRIME};
pub use groebner::{buchberger, buchberger_with_strategy, ideal_membership, normal_form, s_polynomial, Budget, GroebnerBasis, SelectionStrategy};
pub use idealops::IdealPresentation;
pub use monomial::{Monomial, MonomialOrder};
pub use point::Point;
pub use poly::Polynomial;
pub use vars::{VariableSet, Vars};
