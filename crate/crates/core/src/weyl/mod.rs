//! Normal-ordered differential operators with [`Scalar`](crate::scalars::Scalar)
//! coefficients, their classical limit, and commuting gauge fields.

mod classical;
mod expr;
mod field;

pub use classical::{classicalize, ClassicalPoly};
pub(crate) use expr::{join_signed, render_term};
pub use expr::{Factor, Powers, WeylExpr};
pub use field::{GaugeFieldSpec, Region};
