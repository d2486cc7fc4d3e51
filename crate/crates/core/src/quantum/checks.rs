use super::dynamical::{DynSeries, SeriesTensor};
use crate::classical::ClassicalDyn;
use crate::exactring::{hbar_expand, q_int, Exp, Ring, Scalar, TSeries, Q};
use crate::liecore::{flip_matrix, RepTensor};

/// R12 R13 R23 - R23 R13 R12
pub fn check_qybe<S: Ring>(r: &RepTensor<S>) -> RepTensor<S> {
    let (r12, r13, r23) = (r.embed((0, 1)), r.embed((0, 2)), r.embed((1, 2)));
    r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12))
}

/// (P R - q^{1-1/n})(P R + q^{-1-1/n})
pub fn check_hecke(r: &RepTensor<Scalar>) -> RepTensor<Scalar> {
    let n = r.n();
    let pr = flip_matrix::<Scalar>(n).mul(r);
    let inv_n = Exp::new(1, n as i64);
    let id = RepTensor::<Scalar>::identity(n, 2);
    let a = pr.sub(&id.scale(&Scalar::q_pow(Exp::from_integer(1) - inv_n)));
    let b = pr.add(&id.scale(&Scalar::q_pow(Exp::from_integer(-1) - inv_n)));
    a.mul(&b)
}

/// Residual of the symmetrized quantum dynamical Yang–Baxter equation
/// R12(λ + ½ħh3) R13(λ - ½ħh2) R23(λ + ½ħh1) - R23(λ - ½ħh1) R13(λ + ½ħh2) R12(λ - ½ħh3),
/// with λ ± ½ħh acting on the spectator vector v_s as x_c ↦ x_c q^{∓(P_l w_s, α_c)}.
pub fn check_qdybe(r: &DynSeries) -> SeriesTensor {
    let vars = &r.vars;
    let shifts: Vec<[Vec<Exp>; 2]> = (0..vars.n).map(|s| [vars.weight_shift(s, -1), vars.weight_shift(s, 1)]).collect();
    let at = |legs: (usize, usize), plus: bool| {
        r.tensor.embed_with(legs, |v, s| v.shift(&shifts[s][if plus { 0 } else { 1 }]))
    };
    let lhs = at((0, 1), true).mul(&at((0, 2), false)).mul(&at((1, 2), true));
    let rhs = at((1, 2), false).mul(&at((0, 2), true)).mul(&at((0, 1), false));
    lhs.sub(&rhs)
}

/// Order-0 and order-1 mismatches of hbar_expand(R) against 1 + ħ r.
pub fn quasiclassical_check(rq: &RepTensor<Scalar>, rcl: &RepTensor<Q>) -> (RepTensor<Q>, RepTensor<Q>) {
    let n = rq.n();
    let mut e0 = RepTensor::<Q>::identity(n, 2).neg();
    let mut e1 = rcl.neg();
    for (r, c, v) in rq.entries() {
        let h = hbar_expand(v, 1);
        e0.add_at(r, c, h.coeff(0));
        e1.add_at(r, c, h.coeff(1));
    }
    (e0, e1)
}

/// Dynamical variant: both sides as series in the variables up to `order`.
pub fn quasiclassical_check_dyn(rq: &DynSeries, rcl: &ClassicalDyn, order: u32) -> (RepTensor<TSeries<Q>>, RepTensor<TSeries<Q>>) {
    let n = rq.vars.n;
    let mut e0 = RepTensor::<TSeries<Q>>::identity(n, 2).neg().map(|v| v.truncated(order));
    let mut e1 = RepTensor::<TSeries<Q>>::zero(n, 2);
    for (r, c, v) in rcl.tensor.entries() {
        let p = v.expand(order).expect("r_T is regular at x = 0");
        e1.add_at(r, c, &TSeries::exact(&p).truncated(order).negate());
    }
    for (r, c, v) in rq.tensor.entries() {
        let mut s0 = TSeries::constant(q_int(0)).truncated(order);
        let mut s1 = s0.clone();
        for (m, coeff) in v.terms() {
            let h = hbar_expand(coeff, 1);
            s0.add_term(*m, h.coeff(0));
            s1.add_term(*m, h.coeff(1));
        }
        e0.add_at(r, c, &s0);
        e1.add_at(r, c, &s1);
    }
    (e0, e1)
}
