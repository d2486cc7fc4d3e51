use num_traits::ToPrimitive;

use crate::bdtriples::{extend_t_to_h, inner, BDTriple, SubspaceL};
use crate::error::{Error, Result};
use crate::exactring::{q_int, Exp, Mono, Ring, Q, MAX_VARS};
use crate::liecore::{to_exp, CartanBivector, RepTensor, Root, RootSystemA};
use crate::linalg;

/// Registry of dynamical variables for a triple.
///
/// λ ranges over l*, on which (λ, α_i) = (λ, α_{T i}); so there is one variable
/// per class of simple roots under i ~ T(i), x_c = e^{-(λ, α_i)} for any i in
/// class c. A composite root gets the product of its constituents' variables.
#[derive(Clone, Debug, PartialEq)]
pub struct DynVars {
    pub n: usize,
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    pub sub: SubspaceL,
}

impl DynVars {
    pub fn new(triple: &BDTriple) -> Result<Self> {
        let classes = triple.classes();
        if classes.len() > MAX_VARS {
            return Err(Error::Invalid(format!("{} dynamical variables exceed {MAX_VARS}", classes.len())));
        }
        let mut class_of = vec![usize::MAX; triple.n];
        for (c, members) in classes.iter().enumerate() {
            for &a in members {
                class_of[a] = c;
            }
        }
        Ok(Self { n: triple.n, classes, class_of, sub: extend_t_to_h(triple)? })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Variable index of simple root a (1-based).
    pub fn var_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Exponent vector of x_α^m.
    pub fn root_mono(&self, alpha: Root, m: i32) -> Mono {
        let mut out = [0; MAX_VARS];
        for a in alpha.constituents() {
            out[self.class_of[a]] += m;
        }
        out
    }

    /// P_l(h_{α_c}) for each class, in u-coordinates.
    fn class_vectors(&self) -> Vec<Vec<Q>> {
        let p = self.sub.proj_l();
        self.classes.iter().map(|c| linalg::col(&p, c[0] - 1)).collect()
    }

    /// (α_c, y) for every variable, y ∈ h in u-coordinates.
    pub fn pairings(&self, y: &[Q]) -> Vec<Q> {
        self.class_vectors().iter().map(|v| inner(self.n, v, y)).collect()
    }

    /// (P_l w_i, α_c) for the weight of basis vector v_i (0-based): how far
    /// x_c moves when λ is shifted by the weight of v_i.
    pub fn weight_pairings(&self, i: usize) -> Vec<Q> {
        let rs = RootSystemA::new(self.n);
        self.class_vectors()
            .iter()
            .map(|v| v.iter().enumerate().fold(q_int(0), |acc, (a, x)| acc + x * Q::from_integer(rs.weight_on_coroot(i, a).into())))
            .collect()
    }

    pub fn weight_shift(&self, i: usize, sign: i64) -> Vec<Exp> {
        self.weight_pairings(i).iter().map(|p| to_exp(p) * Exp::from_integer(sign)).collect()
    }

    /// Basis b_i of l and its dual basis b^i with (b_i, b^j) = δ_ij.
    pub fn l_dual_basis(&self) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
        dual_pair(self.n, &self.sub.l_basis)
    }

    /// Exponents k_c with e^{β(Qλ)} = Π_c x_c^{-k_c}, for Q ∈ l⊗h and β a
    /// functional on h given by its values on the u-basis.
    pub fn gauge_exponents(&self, q: &CartanBivector, beta: &[Q]) -> Result<Mono> {
        let n1 = self.n - 1;
        let qb: Vec<Q> = (0..n1).map(|a| (0..n1).fold(q_int(0), |acc, b| acc + &q.m[a][b] * &beta[b])).collect();
        let mut out = [0; MAX_VARS];
        if qb.iter().all(|x| *x == q_int(0)) {
            return Ok(out);
        }
        let cols = self.class_vectors();
        let a = linalg::from_cols(&cols, n1);
        let (k, _) = linalg::solve(&a, &qb).ok_or_else(|| Error::Invalid("gauge generator is not in l⊗h".into()))?;
        for (c, kc) in k.iter().enumerate() {
            if !kc.is_integer() {
                return Err(Error::ExponentNotRepresentable(format!("{kc} on x{}", c + 1)));
            }
            out[c] = -kc.numer().to_i32().expect("small exponent");
        }
        Ok(out)
    }

    /// Weight functional of the entry (row, col) of a 2-tensor:
    /// w_i - w_k + w_j - w_l for e_ik ⊗ e_jl.
    pub fn entry_weight(&self, row: usize, col: usize) -> Vec<Q> {
        let n = self.n;
        let rs = RootSystemA::new(n);
        let (i, j, k, l) = (row / n, row % n, col / n, col % n);
        (0..n - 1)
            .map(|a| {
                let w = |v| rs.weight_on_coroot(v, a);
                Q::from_integer((w(i) - w(k) + w(j) - w(l)).into())
            })
            .collect()
    }

    /// Check Q ∈ l⊗h.
    pub fn in_l_tensor_h(&self, q: &CartanBivector) -> bool {
        q.apply_left(&self.sub.proj_l()) == *q
    }
}

/// Dual basis with respect to the inner product on h.
pub fn dual_pair(n: usize, basis: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    if basis.is_empty() {
        return (vec![], vec![]);
    }
    let k = basis.len();
    let gram: linalg::Mat = (0..k).map(|i| (0..k).map(|j| inner(n, &basis[i], &basis[j])).collect()).collect();
    let inv = linalg::inverse(&gram).expect("nondegenerate");
    let dual = (0..k)
        .map(|j| {
            (0..n - 1).map(|a| (0..k).fold(q_int(0), |acc, t| acc + &inv[j][t] * &basis[t][a])).collect()
        })
        .collect();
    (basis.to_vec(), dual)
}

/// A 2-tensor whose entries depend on the dynamical variables of `vars`.
#[derive(Clone, Debug, PartialEq)]
pub struct DynRepTensor<S: Ring> {
    pub tensor: RepTensor<S>,
    pub vars: DynVars,
}

impl<S: Ring> DynRepTensor<S> {
    pub fn new(tensor: RepTensor<S>, vars: DynVars) -> Self {
        Self { tensor, vars }
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> DynRepTensor<T> {
        DynRepTensor { tensor: self.tensor.map(f), vars: self.vars.clone() }
    }
}
