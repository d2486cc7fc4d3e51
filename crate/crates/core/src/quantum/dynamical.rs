use super::twist::{comb_factor, reversal_factor, Reversal};
use crate::bdtriples::{twist_cartan_part, BDTriple};
use crate::classical::{DynRepTensor, DynVars};
use crate::error::Result;
use crate::exactring::{Exp, Ring, Scalar, TSeries, Q};
use crate::liecore::{elem2, standard_R, to_exp, CartanBivector, RepTensor, RootSystemA};
use crate::linalg::{self, Mat};

pub type SeriesTensor = RepTensor<TSeries<Scalar>>;
pub type DynSeries = DynRepTensor<TSeries<Scalar>>;

fn lift(t: &RepTensor<Scalar>) -> SeriesTensor {
    t.map(|v| TSeries::constant(v.clone()))
}

/// Weight vectors w_i as functionals on h (values on the u-basis).
fn weight_functionals(n: usize) -> Vec<Vec<Q>> {
    let rs = RootSystemA::new(n);
    (0..n).map(|i| (0..n - 1).map(|a| Q::from_integer(rs.weight_on_coroot(i, a).into())).collect()).collect()
}

/// e(i, j) = (w_i, S w_j) for an operator S on h in the u-basis.
fn weight_form(n: usize, s: &Mat) -> Vec<Vec<Q>> {
    let w = weight_functionals(n);
    let ginv = linalg::inverse(&RootSystemA::new(n).gram()).expect("Cartan matrix");
    let m = linalg::matmul(s, &ginv);
    (0..n).map(|i| (0..n).map(|j| linalg::dot(&w[i], &linalg::matvec(&m, &w[j]))).collect()).collect()
}

/// The m-th factor of the product formula:
/// Ad q^{((T + ... + T^{m-1}) ⊗ 1)Ω_h} Π_β (1 + (q - q^{-1}) c_{β,m} x_β^m e_{T^mβ} ⊗ f_β),
/// β in ascending lexicographic order.
fn product_factor(triple: &BDTriple, vars: &DynVars, m: usize, order: u32, reversal: Reversal) -> SeriesTensor {
    let n = triple.n;
    let mut f: SeriesTensor = RepTensor::identity(n, 2);
    for beta in RootSystemA::new(n).positive_roots() {
        let Ok(cf) = comb_factor(triple, beta, m) else { continue };
        let coeff = &reversal_factor(beta, cf.c, reversal) * &Scalar::q_minus_qinv();
        let (a, b) = cf.image.e_pos();
        let (c, d) = beta.f_pos();
        let (r, col) = elem2(n, a, b, c, d);
        let mut g: SeriesTensor = RepTensor::identity(n, 2);
        g.set(r, col, TSeries::term(vars.root_mono(beta, m as i32), coeff).truncated(order));
        f = f.mul(&g);
    }
    let t_h = &vars.sub.t_h;
    let mut s = linalg::zeros(n - 1, n - 1);
    let mut pw = linalg::identity(n - 1);
    for _ in 1..m {
        pw = linalg::matmul(&pw, t_h);
        s = linalg::add(&s, &pw);
    }
    let e = weight_form(n, &s);
    let ex = |k: usize| &e[k / n][k % n];
    f.map_indexed(|r, c, v| v.times(&TSeries::constant(Scalar::q_pow(to_exp(&(ex(r) - ex(c)))))))
}

/// Π_{m ≥ 1} of the product factors truncated at total x-degree `order`,
/// without the Cartan part q^Z.
pub fn dynamical_product(triple: &BDTriple, order: u32) -> Result<DynSeries> {
    dynamical_product_with(triple, order, Reversal::InverseQ)
}

pub fn dynamical_product_with(triple: &BDTriple, order: u32, reversal: Reversal) -> Result<DynSeries> {
    let vars = DynVars::new(triple)?;
    let n = triple.n;
    let top = match triple.max_power() {
        Some(k) => k.min(order as usize),
        None => order as usize,
    };
    let mut j: SeriesTensor = RepTensor::identity(n, 2).map(|v: &TSeries<Scalar>| v.truncated(order));
    for m in 1..=top {
        j = j.mul(&product_factor(triple, &vars, m, order, reversal));
    }
    Ok(DynRepTensor::new(j, vars))
}

/// (φ⊗φ)(J_T(λ)) = [Π_m F_m] q^Z as a series in the dynamical variables,
/// with Z from `twist_cartan_part`.
#[allow(non_snake_case)]
pub fn dynamical_J_T(triple: &BDTriple, order: u32) -> Result<DynSeries> {
    let p = dynamical_product(triple, order)?;
    let qz = lift(&twist_cartan_part(triple)?.q_power());
    Ok(DynRepTensor::new(p.tensor.mul(&qz), p.vars))
}

/// R_T = (J^{21})^{-1} R J for J = P q^Z with P unipotent.
pub fn r_from_twist(p: &SeriesTensor, z: &CartanBivector) -> SeriesTensor {
    let n = p.n();
    let qz = lift(&z.q_power());
    let qz21_inv = lift(&z.flip().scale(&Q::from_integer((-1).into())).q_power());
    let r = lift(&standard_R(n));
    qz21_inv.mul(&p.flip21().inv_unipotent()).mul(&r).mul(p).mul(&qz)
}

/// The dynamical R-matrix R_T(λ) to total x-degree `order`.
#[allow(non_snake_case)]
pub fn dynamical_R_T(triple: &BDTriple, order: u32) -> Result<DynSeries> {
    let p = dynamical_product(triple, order)?;
    let z = twist_cartan_part(triple)?;
    Ok(DynRepTensor::new(r_from_twist(&p.tensor, &z), p.vars))
}

/// J^g = (Ad e^{Qλ} ⊗ Ad e^{Qλ}) J q^{Q^{21} - Q}.
pub fn gauge_quantum(j: &DynSeries, q: &CartanBivector) -> Result<DynSeries> {
    let vars = &j.vars;
    if !vars.in_l_tensor_h(q) {
        return Err(crate::error::Error::Invalid("gauge generator is not in l⊗h".into()));
    }
    let n = vars.n;
    let mut out = RepTensor::zero(n, 2);
    for (row, col, v) in j.tensor.entries() {
        let k = vars.gauge_exponents(q, &vars.entry_weight(row, col))?;
        out.set(row, col, v.mul_mono(&k));
    }
    let cartan = lift(&q.flip().sub(q).q_power());
    Ok(DynRepTensor::new(out.mul(&cartan), vars.clone()))
}

/// Outcome of gauging the dynamical twist to a constant one.
#[derive(Clone, Debug, PartialEq)]
pub struct Flattening {
    /// Entries of the gauged twist that still depend on the variables.
    pub dependent_entries: usize,
    /// D with J^g D = J_{T,s}, when J^g is constant.
    pub discrepancy: Option<RepTensor<Scalar>>,
    /// Whether D = q^{-s_l}, s_l = (P_l⊗P_l)s the Λ²l part of s that no gauge produces.
    pub matches_lambda2_l: bool,
}

impl Flattening {
    /// Diagonal exponents of the discrepancy, if it is a diagonal q-power.
    pub fn discrepancy_exponents(&self) -> Option<Vec<Exp>> {
        super::twist::diagonal_exponents(self.discrepancy.as_ref()?)
    }

    pub fn is_flat(&self) -> bool {
        self.dependent_entries == 0
    }
}

/// Gauge J_T(λ) with the l⊗l^⊥ part of s and compare with J_{T,s}.
pub fn flatten(triple: &BDTriple, s: &CartanBivector, order: u32) -> Result<Flattening> {
    let j = dynamical_J_T(triple, order)?;
    let q = crate::bdtriples::gauge_generator(&j.vars.sub, s);
    let g = gauge_quantum(&j, &q)?;
    let dependent_entries = g.tensor.entries().filter(|(_, _, v)| !v.is_constant()).count();
    if dependent_entries > 0 {
        return Ok(Flattening { dependent_entries, discrepancy: None, matches_lambda2_l: false });
    }
    let constant = g.tensor.map(|v| v.constant_term());
    let target = super::twist::build_J_Ts(triple, s)?;
    // constant = U q^X with U unipotent and q^X its diagonal
    let n = triple.n;
    let diag: Vec<Scalar> = (0..n * n).map(|i| constant.get(i, i).clone()).collect();
    let inv_diag = diag.iter().map(|d| Scalar::one().div_exact(d)).collect::<Result<Vec<_>>>()?;
    let dinv = RepTensor::diagonal(n, 2, |i| inv_diag[i].clone());
    let u = constant.mul(&dinv);
    let inv = dinv.mul(&u.inv_unipotent());
    let d = inv.mul(&target);
    let pl = j.vars.sub.proj_l();
    let expected = s.apply_both(&pl, &pl).scale(&Q::from_integer((-1).into())).q_power();
    Ok(Flattening { dependent_entries: 0, matches_lambda2_l: d == expected, discrepancy: Some(d) })
}
