//! Exact arithmetic in the group of formal power series under composition.
//!
//! Series are handled as jets (truncations modulo z^{N+1}) with coefficients
//! in ℚ or a cyclotomic field ℚ(ζₙ). On top of the jet algebra the crate
//! provides:
//!
//! * [`finiteorder`]: compositional order, linearization of finite-order
//!   elements by the averaged conjugator f*, the centralizer of ℓ_ω and the
//!   full family of linearizing conjugators;
//! * [`construct`]: the unique order-n series with prescribed free
//!   coefficients (two independent algorithms), Schröder linearization,
//!   normal forms for torsion multipliers, and the `f(−f(−z)) = z` family;
//! * [`io`] and [`cli`]: JSON interchange and the `fps` binary.

pub mod cli;
pub mod construct;
pub mod exactfield;
pub mod finiteorder;
pub mod io;
pub mod series;

pub use exactfield::{FieldContext, FieldElement, FieldKind, Rational};
pub use series::{GroupJet, Jet};
