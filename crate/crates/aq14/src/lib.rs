//! Exact symbolic computation in the rank-2 quantum cluster algebra with
//! exchange pattern (1,4).
//!
//! Provides
//!   - [`qcoeff::QLaurent`], Laurent polynomials in q^{1/2} over Z;
//!   - [`torus::TorusElement`], elements of the based quantum torus;
//!   - [`cluster::FrameAlgebra`], division-free generation of cluster
//!     variables, X_delta and the Chebyshev families;
//!   - [`multiplication`], closed-form product rules with verification;
//!   - [`bases`], the three bar-invariant bases and exact expansion;
//!   - [`triangular`], standard monomials and the triangular basis.

pub mod bases;
pub mod cluster;
pub mod error;
pub mod multiplication;
pub mod qcoeff;
pub mod torus;
pub mod triangular;

pub use bases::{expand_in_basis, BasisFamily, BasisLabel, FormalCombination, Window};
pub use cluster::{ChebKind, Frame, FrameAlgebra};
pub use error::{Error, Result};
pub use multiplication::{
    theorem2_rhs, verify_identities, verify_positivity, verify_theorem2, TheoremCase, VerifyRecord,
};
pub use qcoeff::QLaurent;
pub use torus::TorusElement;
pub use triangular::{expand_in_standard, lusztig_c, standard_monomial, EExpansion};
