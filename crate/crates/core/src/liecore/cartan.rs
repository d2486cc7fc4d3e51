use num_traits::Zero;

use super::roots::RootSystemA;
use super::tensor::RepTensor;
use crate::error::{Error, Result};
use crate::exactring::{q_from, Exp, Q, Scalar};
use crate::linalg::{self, Mat};

/// Σ M_ab u_a ⊗ u_b in the simple-coroot basis u_a = e_aa - e_{a+1,a+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanBivector {
    pub n: usize,
    pub m: Mat,
}

impl CartanBivector {
    pub fn zero(n: usize) -> Self {
        Self { n, m: linalg::zeros(n - 1, n - 1) }
    }

    pub fn from_matrix(n: usize, m: Mat) -> Self {
        assert_eq!(m.len(), n - 1);
        Self { n, m }
    }

    /// Σ_k x_k ⊗ y_k for u-coordinate vectors.
    pub fn from_pairs(n: usize, pairs: &[(Vec<Q>, Vec<Q>)]) -> Self {
        let mut m = linalg::zeros(n - 1, n - 1);
        for (x, y) in pairs {
            for a in 0..n - 1 {
                for b in 0..n - 1 {
                    m[a][b] += &x[a] * &y[b];
                }
            }
        }
        Self { n, m }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n, m: linalg::add(&self.m, &o.m) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { n: self.n, m: linalg::sub(&self.m, &o.m) }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { n: self.n, m: linalg::scale(&self.m, c) }
    }

    /// X^{21}
    pub fn flip(&self) -> Self {
        Self { n: self.n, m: linalg::transpose(&self.m) }
    }

    /// (A ⊗ 1) X for a linear map A on h in the u-basis.
    pub fn apply_left(&self, a: &Mat) -> Self {
        Self { n: self.n, m: linalg::matmul(a, &self.m) }
    }

    /// (A ⊗ B) X
    pub fn apply_both(&self, a: &Mat, b: &Mat) -> Self {
        Self { n: self.n, m: linalg::matmul(&linalg::matmul(a, &self.m), &linalg::transpose(b)) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.m == linalg::transpose(&self.m)
    }

    pub fn is_skew(&self) -> bool {
        self.m == linalg::scale(&linalg::transpose(&self.m), &q_from(-1, 1))
    }

    /// ⟨X, w_i ⊗ w_j⟩ for the weights of basis vectors v_i, v_j (0-based).
    pub fn on_weights(&self, i: usize, j: usize) -> Q {
        let rs = RootSystemA::new(self.n);
        let mut out = Q::zero();
        for a in 0..self.n - 1 {
            let wa = rs.weight_on_coroot(i, a);
            if wa == 0 {
                continue;
            }
            for b in 0..self.n - 1 {
                let wb = rs.weight_on_coroot(j, b);
                if wb != 0 && !self.m[a][b].is_zero() {
                    out += &self.m[a][b] * Q::from_integer((wa * wb).into());
                }
            }
        }
        out
    }

    /// (φ⊗φ)(X): diagonal 2-tensor.
    pub fn to_tensor(&self) -> RepTensor<Q> {
        let n = self.n;
        RepTensor::diagonal(n, 2, |k| self.on_weights(k / n, k % n))
    }

    /// (φ⊗φ)(q^X): diagonal with entries q^{⟨X, w_i⊗w_j⟩}.
    pub fn q_power(&self) -> RepTensor<Scalar> {
        let n = self.n;
        RepTensor::diagonal(n, 2, |k| Scalar::q_pow(to_exp(&self.on_weights(k / n, k % n))))
    }

    /// Pairing ⟨X, x ⊗ y⟩ with x, y given as functionals on h by their
    /// values on the u-basis.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let mut out = Q::zero();
        for a in 0..self.n - 1 {
            for b in 0..self.n - 1 {
                out += &self.m[a][b] * &x[a] * &y[b];
            }
        }
        out
    }
}

/// Convert a small rational to a q-exponent.
pub fn to_exp(c: &Q) -> Exp {
    use num_traits::ToPrimitive;
    let num = c.numer().to_i64().expect("exponent numerator overflow");
    let den = c.denom().to_i64().expect("exponent denominator overflow");
    Exp::new(num, den)
}

/// Ω_V for the subspace V spanned by `basis` (u-coordinates): the inverse of
/// the inner product, Σ (G^{-1})_{ab} b_a ⊗ b_b. Returns it with its image.
pub fn cartan_omega(n: usize, basis: &[Vec<Q>]) -> Result<(CartanBivector, RepTensor<Q>)> {
    if basis.is_empty() {
        let z = CartanBivector::zero(n);
        let t = z.to_tensor();
        return Ok((z, t));
    }
    let g = RootSystemA::new(n).gram();
    let b = linalg::from_cols(basis, n - 1);
    let gram_v = linalg::matmul(&linalg::matmul(&linalg::transpose(&b), &g), &b);
    let inv = linalg::inverse(&gram_v).ok_or(Error::DegenerateSubspace)?;
    let m = linalg::matmul(&linalg::matmul(&b, &inv), &linalg::transpose(&b));
    let x = CartanBivector::from_matrix(n, m);
    let t = x.to_tensor();
    Ok((x, t))
}
