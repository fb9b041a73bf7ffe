//! Exact divisor arithmetic on a fixed tower of spaces.
//!
//! The tower has three floors and nothing else:
//!
//! * a Hirzebruch surface `F_e` with Picard basis `s` (the section with
//!   `s^2 = -e`) and `l` (the ruling fiber),
//! * a `P^1`-bundle `Y = P(O + O(-D))` over `F_e`, twisted by an integral
//!   divisor `D`, with Picard basis `V` (the relative hyperplane with
//!   `V|_V = -D`) and the pullbacks of `s` and `l`,
//! * a double cover `X' -> Y` branched along `B = V + H` with `B ~ 2L`,
//!   where the section `V` pulls back to `2E` and divisors are written in
//!   the basis `E`, pullback of `s`, pullback of `l`.
//!
//! Divisor classes carry the identity of the space they live on, and every
//! binary operation checks it: combining classes from different spaces is a
//! hard error, never a coercion.  Coefficients are exact rationals.
//!
//! Classes on the cover that are supported on the residual branch surface
//! `H` itself are outside the span of `E` and the pullbacks, and are out of
//! scope here; everything needed downstream lives in that span.

mod bundle;
mod cover;
mod surface;

pub use bundle::{triple_product, BundleDivisor, ProjectiveBundle};
pub use cover::{cover_triple_product, CoverDivisor, DoubleCover, NefCertificate};
pub use surface::{HirzebruchSurface, Positivity, SurfaceDivisor};

pub(crate) use surface::write_linear_combination;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("Hirzebruch index must be non-negative, got e = {e}")]
    NegativeHirzebruchIndex { e: i64 },

    #[error("divisors live on different spaces ({context})")]
    SpaceMismatch { context: &'static str },

    #[error("{context} requires integer coefficients, got {coefficient}")]
    NonIntegerCoefficient {
        context: &'static str,
        coefficient: String,
    },

    #[error("invalid branch data: {reason}")]
    BranchShape { reason: String },
}
