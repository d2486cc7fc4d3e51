//! Classical r-matrices of a triple in the vector representation: the
//! dynamical r_T(λ), the constant r_{T,s}, gauge transformations, and exact
//! checkers for the classical (dynamical) Yang–Baxter equation.

mod checks;
mod rmatrix;
mod vars;

pub use checks::{check_cdybe, check_cdybe_at, check_cdybe_in_basis, check_cybe, random_points};
pub use rmatrix::{a_lambda, cayley_term, classical_t_power, eval_at, gauge_classical, r_t, r_ts, ClassicalDyn};
pub use vars::{dual_pair, DynRepTensor, DynVars};
