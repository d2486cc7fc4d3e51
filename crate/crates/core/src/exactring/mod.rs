//! Exact scalars: Laurent polynomials in q with rational exponents, multivariate
//! polynomials and rational functions in the dynamical variables, truncated
//! power series in those variables, and truncated series in hbar.

mod hbar;
mod poly;
mod ratfunc;
mod ring;
mod scalar;
mod series;

pub use hbar::{hbar_expand, HbarSeries};
pub use poly::{mono_degree, mono_mul, mono_var, Mono, MPoly, MAX_VARS};
pub use ratfunc::{DynScalar, RatFunc};
pub use ring::{q_from, q_int, Ring, Q};
pub use scalar::{Exp, Scalar};
pub use series::TSeries;
