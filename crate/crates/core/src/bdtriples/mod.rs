//! Generalized Belavin–Drinfeld triples: validation, enumeration, and the
//! Cartan data (l, C_T, Z, s) attached to a triple.

mod enumerate;
mod subspace;
mod triple;

pub use enumerate::{enumerate_triples, enumerate_triples_bounded, DEFAULT_BOUND};
pub use subspace::{
    cayley, compute_z, extend_t_to_h, gauge_generator, inner, satisfies_r0h, solve_s, twist_cartan_part, CayleyOp, SSolution, SubspaceL,
};
pub use triple::{validate_triple, BDTriple, Orbit, OrbitKind, TripleSpec};
