//! Exact commutative algebra for the regularity and a*-invariants of powers of
//! equigenerated homogeneous ideals.
//!
//! The crate is layered bottom-up:
//!
//! * [`kernel`]: coefficient fields, monomials, orders, polynomials, parser.
//! * [`groebner`]: Buchberger's algorithm over free modules, normal forms,
//!   syzygies, elimination, quotients and saturation.
//! * [`resolve`]: graded presentations, minimal free resolutions, Hilbert
//!   series, Ext and local cohomology via graded local duality.
//! * [`rees`]: the bigraded Rees algebra, its fiber ideal and strand modules.
//! * [`cohomsheaf`]: sheaf cohomology on projective space and on the blowup
//!   through the two Leray reductions.
//! * [`invariants`]: power tables, stabilization, certificates for the fiber
//!   invariant of the blowup, and the stability-index bounds.

pub mod cohomsheaf;
pub mod error;
pub mod extint;
pub mod groebner;
pub mod invariants;
pub mod kernel;
pub mod rees;
pub mod resolve;

pub use error::{Error, Result};
pub use extint::ExtInt;
