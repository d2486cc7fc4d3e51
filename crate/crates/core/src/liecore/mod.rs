//! The A_{n-1} root system, the Cartan subalgebra in the simple-coroot basis,
//! tensors in the vector representation and the standard r- and R-matrices.

mod cartan;
mod roots;
mod standard;
mod tensor;

pub use cartan::{cartan_omega, to_exp, CartanBivector};
pub use roots::{Root, RootSystemA};
pub use standard::{flip_matrix, omega_g, omega_h, standard_R, standard_r, vector_rep, Gen};
pub use tensor::{elem2, RepTensor};
