//! Exact arithmetic in `v = q^(1/2)`: Laurent polynomials, reduced rational
//! functions, and truncated series indexed by dimension vectors.
//!
//! Every formula that mentions `q^(1/2)` is carried out in the single
//! variable `v`, with `q = v^2`.

mod laurent;
mod poly;
mod ratfunc;
mod series;

pub use laurent::HalfLaurent;
pub use ratfunc::RatFunc;
pub use series::{mobius, SlopeSeries};

pub(crate) use poly::Poly;
