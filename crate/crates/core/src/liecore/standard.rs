use super::cartan::{cartan_omega, CartanBivector};
use super::roots::{Root, RootSystemA};
use super::tensor::{elem2, RepTensor};
use crate::error::{Error, Result};
use crate::exactring::{q_from, q_int, Exp, Q, Ring, Scalar};
use crate::linalg;

/// Generator of sl(n) to be represented.
#[derive(Clone, Debug)]
pub enum Gen {
    /// e_α for α = v_i - v_j, 1-based i < j
    E(usize, usize),
    /// f_α for α = v_i - v_j
    F(usize, usize),
    /// element of h in the u-basis
    H(Vec<Q>),
}

pub fn vector_rep(n: usize, g: &Gen) -> Result<RepTensor<Q>> {
    let mut t = RepTensor::zero(n, 1);
    match g {
        Gen::E(i, j) => {
            let r = Root::from_pair(*i, *j, n)?;
            let (a, b) = r.e_pos();
            t.set(a, b, q_int(1));
        }
        Gen::F(i, j) => {
            let r = Root::from_pair(*i, *j, n)?;
            let (a, b) = r.f_pos();
            t.set(a, b, q_int(1));
        }
        Gen::H(y) => {
            if y.len() != n - 1 {
                return Err(Error::Invalid(format!("h needs {} coordinates", n - 1)));
            }
            for (i, d) in RootSystemA::new(n).diag_of(y).into_iter().enumerate() {
                t.set(i, i, d);
            }
        }
    }
    Ok(t)
}

pub fn omega_h(n: usize) -> CartanBivector {
    cartan_omega(n, &linalg::identity(n - 1)).expect("Cartan matrix is invertible").0
}

/// Flip P(v_i⊗v_j) = v_j⊗v_i.
pub fn flip_matrix<S: Ring>(n: usize) -> RepTensor<S> {
    RepTensor::from_entries(n, 2, (0..n).flat_map(|i| (0..n).map(move |j| (j * n + i, i * n + j, S::one()))))
}

/// (φ⊗φ)(Ω_g) = P - (1/n) 1⊗1.
pub fn omega_g(n: usize) -> RepTensor<Q> {
    let p = flip_matrix::<Q>(n);
    p.sub(&RepTensor::identity(n, 2).scale(&q_from(1, n as i64)))
}

/// Σ_α e_α⊗f_α + ½Ω_h
pub fn standard_r(n: usize) -> RepTensor<Q> {
    let mut r = omega_h(n).to_tensor().scale(&q_from(1, 2));
    for a in RootSystemA::new(n).positive_roots() {
        let (i, j) = a.e_pos();
        let (row, col) = elem2(n, i, j, j, i);
        r.add_at(row, col, &q_int(1));
    }
    r
}

/// q^{-1/n}(q Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q-q^{-1}) Σ_{i<j} e_ij⊗e_ji)
#[allow(non_snake_case)]
pub fn standard_R(n: usize) -> RepTensor<Scalar> {
    let pre = Exp::new(-1, n as i64);
    let mut r = RepTensor::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let (row, col) = elem2(n, i, i, j, j);
            let e = if i == j { pre + 1 } else { pre };
            r.set(row, col, Scalar::q_pow(e));
        }
    }
    let c = Scalar::q_minus_qinv().shift(pre);
    for i in 0..n {
        for j in i + 1..n {
            let (row, col) = elem2(n, i, j, j, i);
            r.set(row, col, c.clone());
        }
    }
    r
}
