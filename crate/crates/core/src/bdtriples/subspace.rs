use num_traits::Zero;

use super::triple::BDTriple;
use crate::error::{Error, Result};
use crate::exactring::{q_from, q_int, Q};
use crate::liecore::{cartan_omega, CartanBivector, Root, RootSystemA};
use crate::linalg::{self, Mat};

/// l = span(α - Tα)^⊥ inside h, its complement, and the extension of T to h.
/// Vectors are coordinates in the simple-coroot basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceL {
    pub n: usize,
    pub l_basis: Vec<Vec<Q>>,
    pub lperp_basis: Vec<Vec<Q>>,
    pub t_h: Mat,
}

/// Matrix of C_T on l^⊥ in `SubspaceL::lperp_basis`; column j holds C y_j.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyOp {
    pub matrix: Mat,
}

fn coroot(n: usize, a: usize) -> Vec<Q> {
    Root::simple(a).coroot(n)
}

fn vsub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// (x, y) on h in u-coordinates.
pub fn inner(n: usize, x: &[Q], y: &[Q]) -> Q {
    linalg::dot(x, &linalg::matvec(&RootSystemA::new(n).gram(), y))
}

impl SubspaceL {
    /// α - Tα for each α in Γ1, as coroot vectors.
    pub fn differences(triple: &BDTriple) -> Vec<Vec<Q>> {
        triple.t_pairs().map(|(a, b)| vsub(&coroot(triple.n, a), &coroot(triple.n, b))).collect()
    }

    pub fn dim_l(&self) -> usize {
        self.l_basis.len()
    }

    pub fn dim_lperp(&self) -> usize {
        self.lperp_basis.len()
    }

    fn projector(&self, basis: &[Vec<Q>]) -> Mat {
        let n1 = self.n - 1;
        if basis.is_empty() {
            return linalg::zeros(n1, n1);
        }
        let g = RootSystemA::new(self.n).gram();
        let b = linalg::from_cols(basis, n1);
        let bt = linalg::transpose(&b);
        let inv = linalg::inverse(&linalg::matmul(&linalg::matmul(&bt, &g), &b)).expect("nondegenerate");
        linalg::matmul(&linalg::matmul(&linalg::matmul(&b, &inv), &bt), &g)
    }

    /// Orthogonal projection onto l.
    pub fn proj_l(&self) -> Mat {
        self.projector(&self.l_basis)
    }

    /// Orthogonal projection onto l^⊥.
    pub fn proj_perp(&self) -> Mat {
        self.projector(&self.lperp_basis)
    }

    pub fn omega_l(&self) -> CartanBivector {
        cartan_omega(self.n, &self.l_basis).expect("l is nondegenerate").0
    }

    pub fn omega_perp(&self) -> CartanBivector {
        cartan_omega(self.n, &self.lperp_basis).expect("l-perp is nondegenerate").0
    }
}

pub fn extend_t_to_h(triple: &BDTriple) -> Result<SubspaceL> {
    let n = triple.n;
    let n1 = n - 1;
    let g = RootSystemA::new(n).gram();
    let diffs = SubspaceL::differences(triple);
    let rows: Mat = diffs.iter().map(|d| linalg::matvec(&g, d)).collect();
    let l_basis = if rows.is_empty() { linalg::identity(n1) } else { linalg::kernel(&rows) };
    let lperp_basis = linalg::independent_subset(&diffs);

    // T_h A = B with A = [u_a (a in Γ1) | l], B = [u_{T a} | l]
    let mut src: Vec<Vec<Q>> = triple.t_pairs().map(|(a, _)| coroot(n, a)).collect();
    let mut dst: Vec<Vec<Q>> = triple.t_pairs().map(|(_, b)| coroot(n, b)).collect();
    src.extend(l_basis.iter().cloned());
    dst.extend(l_basis.iter().cloned());
    let at = linalg::transpose(&linalg::from_cols(&src, n1));
    let b = linalg::from_cols(&dst, n1);
    let mut t_h = linalg::zeros(n1, n1);
    for i in 0..n1 {
        let (x, ker) = linalg::solve(&at, &b[i]).ok_or(Error::InconsistentExtension)?;
        if !ker.is_empty() {
            return Err(Error::InconsistentExtension);
        }
        t_h[i] = x;
    }
    Ok(SubspaceL { n, l_basis, lperp_basis, t_h })
}

/// The Cayley transform: (α - Tα, C x) = (α + Tα, x) for x, Cx in l^⊥.
pub fn cayley(triple: &BDTriple, sub: &SubspaceL) -> Result<CayleyOp> {
    let n = triple.n;
    let k = sub.dim_lperp();
    let pairs: Vec<(Vec<Q>, Vec<Q>)> = triple
        .t_pairs()
        .map(|(a, b)| (vsub(&coroot(n, a), &coroot(n, b)), vadd(&coroot(n, a), &coroot(n, b))))
        .collect();
    let lhs: Mat = pairs.iter().map(|(d, _)| sub.lperp_basis.iter().map(|y| inner(n, d, y)).collect()).collect();
    let mut matrix = linalg::zeros(k, k);
    for (j, x) in sub.lperp_basis.iter().enumerate() {
        let rhs: Vec<Q> = pairs.iter().map(|(_, s)| inner(n, s, x)).collect();
        let (c, ker) = linalg::solve(&lhs, &rhs).ok_or(Error::SingularSystem("Cayley transform"))?;
        if !ker.is_empty() {
            return Err(Error::SingularSystem("Cayley transform"));
        }
        for i in 0..k {
            matrix[i][j] = c[i].clone();
        }
    }
    Ok(CayleyOp { matrix })
}

impl CayleyOp {
    /// C extended by zero on l, as an operator on h.
    pub fn on_h(&self, sub: &SubspaceL) -> Mat {
        let n1 = sub.n - 1;
        if sub.lperp_basis.is_empty() {
            return linalg::zeros(n1, n1);
        }
        let g = RootSystemA::new(sub.n).gram();
        let y = linalg::from_cols(&sub.lperp_basis, n1);
        let yt = linalg::transpose(&y);
        let gram = linalg::matmul(&linalg::matmul(&yt, &g), &y);
        let coords = linalg::matmul(&linalg::inverse(&gram).unwrap(), &linalg::matmul(&yt, &g));
        linalg::matmul(&linalg::matmul(&y, &self.matrix), &coords)
    }

    /// Skew-symmetry with respect to the inner product on l^⊥.
    pub fn is_skew(&self, sub: &SubspaceL) -> bool {
        let g = RootSystemA::new(sub.n).gram();
        let y = linalg::from_cols(&sub.lperp_basis, sub.n - 1);
        let gram = linalg::matmul(&linalg::matmul(&linalg::transpose(&y), &g), &y);
        let a = linalg::matmul(&gram, &self.matrix);
        linalg::add(&a, &linalg::transpose(&a)).iter().flatten().all(|x| x.is_zero())
    }
}

/// Z = (½(C_T - 1) ⊗ 1) Ω_{l^⊥}
pub fn compute_z(triple: &BDTriple) -> Result<CartanBivector> {
    let sub = extend_t_to_h(triple)?;
    let c = cayley(triple, &sub)?;
    let op = linalg::scale(&linalg::sub(&c.on_h(&sub), &linalg::identity(triple.n - 1)), &q_from(1, 2));
    Ok(sub.omega_perp().apply_left(&op))
}

/// Cartan part of the dynamical twist, (½(-C_T - 1) ⊗ 1)Ω_{l^⊥}. Differs from
/// `compute_z` by the sign of C_T; this is the sign for which the twisted
/// R-matrix satisfies QDYBE and has quasiclassical limit r - ½(C_T⊗1)Ω_{l^⊥} + a - a^{21}.
pub fn twist_cartan_part(triple: &BDTriple) -> Result<CartanBivector> {
    let sub = extend_t_to_h(triple)?;
    let c = cayley(triple, &sub)?;
    let minus_c = linalg::scale(&c.on_h(&sub), &q_from(-1, 1));
    let op = linalg::scale(&linalg::sub(&minus_c, &linalg::identity(triple.n - 1)), &q_from(1, 2));
    Ok(sub.omega_perp().apply_left(&op))
}

/// Particular solution of the equations for s together with a basis of the
/// homogeneous solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct SSolution {
    pub particular: CartanBivector,
    pub homogeneous: Vec<CartanBivector>,
}

fn skew_basis(n: usize) -> Vec<(usize, usize)> {
    let n1 = n - 1;
    (0..n1).flat_map(|a| (a + 1..n1).map(move |b| (a, b))).collect()
}

fn skew_from(n: usize, coeffs: &[Q]) -> CartanBivector {
    let mut m = linalg::zeros(n - 1, n - 1);
    for ((a, b), c) in skew_basis(n).into_iter().zip(coeffs) {
        m[a][b] = c.clone();
        m[b][a] = -c.clone();
    }
    CartanBivector::from_matrix(n, m)
}

/// s ∈ Λ²h with ((α - Tα) ⊗ 1) s = ½((α + Tα) ⊗ 1) Ω_h for α ∈ Γ1. Unknowns
/// are the coefficients of u_a∧u_b, a < b; free parameters are set to zero.
pub fn solve_s(triple: &BDTriple) -> Result<SSolution> {
    let n = triple.n;
    let n1 = n - 1;
    let basis = skew_basis(n);
    let g = RootSystemA::new(n).gram();
    if triple.is_empty() {
        let homogeneous = (0..basis.len())
            .map(|k| skew_from(n, &(0..basis.len()).map(|j| q_int((j == k) as i64)).collect::<Vec<_>>()))
            .collect();
        return Ok(SSolution { particular: CartanBivector::zero(n), homogeneous });
    }
    // contraction with (d, ·) of s = Σ c_ab (u_a⊗u_b - u_b⊗u_a) is
    // Σ c_ab ((d,u_a) u_b - (d,u_b) u_a); Ω_h contracts to the vector itself
    let mut a_rows: Mat = Vec::new();
    let mut rhs = Vec::new();
    for (a, b) in triple.t_pairs() {
        let d = vsub(&coroot(n, a), &coroot(n, b));
        let s = vadd(&coroot(n, a), &coroot(n, b));
        let gd = linalg::matvec(&g, &d);
        for r in 0..n1 {
            let row: Vec<Q> = basis
                .iter()
                .map(|&(i, j)| {
                    let mut v = q_int(0);
                    if r == j {
                        v += &gd[i];
                    }
                    if r == i {
                        v -= &gd[j];
                    }
                    v
                })
                .collect();
            a_rows.push(row);
            rhs.push(&s[r] * q_from(1, 2));
        }
    }
    if basis.is_empty() {
        return if rhs.iter().all(|x| x.is_zero()) {
            Ok(SSolution { particular: CartanBivector::zero(n), homogeneous: vec![] })
        } else {
            Err(Error::NoSolution)
        };
    }
    let (x, ker) = linalg::solve(&a_rows, &rhs).ok_or(Error::NoSolution)?;
    Ok(SSolution { particular: skew_from(n, &x), homogeneous: ker.iter().map(|k| skew_from(n, k)).collect() })
}

/// Substitute s back into its defining equations.
pub fn satisfies_r0h(triple: &BDTriple, s: &CartanBivector) -> bool {
    if !s.is_skew() {
        return false;
    }
    let n = triple.n;
    let omega = crate::liecore::omega_h(n);
    let g = RootSystemA::new(n).gram();
    triple.t_pairs().all(|(a, b)| {
        let d = vsub(&coroot(n, a), &coroot(n, b));
        let p = vadd(&coroot(n, a), &coroot(n, b));
        // first-leg contraction with the functional (v, ·): Σ_ab M_ab (v,u_a) u_b
        let contract = |m: &Mat, v: &[Q]| linalg::matvec(&linalg::transpose(m), &linalg::matvec(&g, v));
        let lhs = contract(&s.m, &d);
        let rhs: Vec<Q> = contract(&omega.m, &p).iter().map(|x| x * q_from(1, 2)).collect();
        lhs == rhs
    })
}

/// Component (P_l ⊗ P_⊥) s: the gauge generator Q that makes the twist λ-independent.
pub fn gauge_generator(sub: &SubspaceL, s: &CartanBivector) -> CartanBivector {
    s.apply_both(&sub.proj_l(), &sub.proj_perp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_orthogonal(n: usize, t: &Mat) -> bool {
        let g = RootSystemA::new(n).gram();
        linalg::matmul(&linalg::matmul(&linalg::transpose(t), &g), t) == g
    }

    #[test]
    fn empty_triple() {
        let t = BDTriple::empty(3);
        let sub = extend_t_to_h(&t).unwrap();
        assert_eq!(sub.t_h, linalg::identity(2));
        assert_eq!((sub.dim_l(), sub.dim_lperp()), (2, 0));
        assert!(cayley(&t, &sub).unwrap().matrix.is_empty());
        assert!(compute_z(&t).unwrap().is_zero());
        let s = solve_s(&t).unwrap();
        assert!(s.particular.is_zero());
        assert_eq!(s.homogeneous.len(), 1);
    }

    #[test]
    fn cremmer_gervais_sl3() {
        let t = BDTriple::cremmer_gervais(3);
        let sub = extend_t_to_h(&t).unwrap();
        assert_eq!(sub.dim_l(), 1);
        // l = (α1 - α2)^⊥ = span(u1 + u2)
        assert_eq!(inner(3, &sub.l_basis[0], &[q_int(1), q_int(-1)]), q_int(0));
        assert_eq!(linalg::matvec(&sub.t_h, &[q_int(1), q_int(0)]), vec![q_int(0), q_int(1)]);
        assert!(is_orthogonal(3, &sub.t_h));
        let c = cayley(&t, &sub).unwrap();
        assert!(c.matrix.iter().flatten().all(|x| x.is_zero()));
        // Z = -(1/12) u⊗u with u = u1 - u2
        let u = vec![q_int(1), q_int(-1)];
        let want = CartanBivector::from_pairs(3, &[(u.clone(), u)]).scale(&q_from(-1, 12));
        assert_eq!(compute_z(&t).unwrap(), want);
        // s = (1/12)(u⊗v - v⊗u), v = u1 + u2
        let u = vec![q_int(1), q_int(-1)];
        let v = vec![q_int(1), q_int(1)];
        let want = CartanBivector::from_pairs(3, &[(u.clone(), v.clone())])
            .sub(&CartanBivector::from_pairs(3, &[(v, u)]))
            .scale(&q_from(1, 12));
        let s = solve_s(&t).unwrap();
        assert_eq!(s.particular, want);
        assert!(s.homogeneous.is_empty());
        assert!(satisfies_r0h(&t, &s.particular));
    }

    #[test]
    fn flip_sl3() {
        let t = BDTriple::flip(3);
        let sub = extend_t_to_h(&t).unwrap();
        assert_eq!(sub.dim_l(), 1);
        assert_eq!(linalg::matvec(&sub.t_h, &[q_int(1), q_int(0)]), vec![q_int(0), q_int(1)]);
        assert_eq!(linalg::matvec(&sub.t_h, &[q_int(0), q_int(1)]), vec![q_int(1), q_int(0)]);
        let c = cayley(&t, &sub).unwrap();
        assert!(c.matrix.iter().flatten().all(|x| x.is_zero()));
        let u = vec![q_int(1), q_int(-1)];
        let want = CartanBivector::from_pairs(3, &[(u.clone(), u)]).scale(&q_from(-1, 12));
        assert_eq!(compute_z(&t).unwrap(), want);
        assert_eq!(solve_s(&t).unwrap_err(), Error::NoSolution);
    }
}
