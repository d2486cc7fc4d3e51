use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rmatrix::{eval_at, ClassicalDyn};
use super::vars::dual_pair;
use crate::exactring::{q_from, RatFunc, Ring, Q};
use crate::liecore::{RepTensor, RootSystemA};

fn bracket<S: Ring>(a: &RepTensor<S>, b: &RepTensor<S>) -> RepTensor<S> {
    a.mul(b).sub(&b.mul(a))
}

/// [r12, r13] + [r13, r23] + [r12, r23]
pub fn check_cybe<S: Ring>(r: &RepTensor<S>) -> RepTensor<S> {
    let (r12, r13, r23) = (r.embed((0, 1)), r.embed((0, 2)), r.embed((1, 2)));
    bracket(&r12, &r13).add(&bracket(&r13, &r23)).add(&bracket(&r12, &r23))
}

/// Derivative terms Σ_i b_i^{(1)} D_{b^i} r^{23} - b_i^{(2)} D_{b^i} r^{13} + b_i^{(3)} D_{b^i} r^{12}
/// for a basis b_i of l, with the derivatives still symbolic 2-tensors.
fn derivative_terms(r: &ClassicalDyn, basis: &[Vec<Q>]) -> Vec<(Vec<Q>, RepTensor<RatFunc<Q>>)> {
    let vars = &r.vars;
    let (b, dual) = dual_pair(vars.n, basis);
    let rs = RootSystemA::new(vars.n);
    b.iter()
        .zip(&dual)
        .map(|(bi, di)| {
            let w = vars.pairings(di);
            (rs.diag_of(bi), r.tensor.map(|v| v.derive(&w)))
        })
        .collect()
}

fn assemble<S: Ring>(r: &RepTensor<S>, derivs: &[(Vec<Q>, RepTensor<S>)]) -> RepTensor<S> {
    let mut out = check_cybe(r);
    for (diag, d) in derivs {
        let on = |legs: (usize, usize)| d.embed_with(legs, |v, s| v.scale_q(&diag[s]));
        out = out.add(&on((1, 2))).sub(&on((0, 2))).add(&on((0, 1)));
    }
    out
}

/// Residual of the classical dynamical Yang–Baxter equation, computed
/// symbolically with the registered basis of l.
pub fn check_cdybe(r: &ClassicalDyn) -> RepTensor<RatFunc<Q>> {
    check_cdybe_in_basis(r, &r.vars.sub.l_basis)
}

/// Same residual, contracting against a caller-chosen basis of l.
pub fn check_cdybe_in_basis(r: &ClassicalDyn, basis: &[Vec<Q>]) -> RepTensor<RatFunc<Q>> {
    assemble(&r.tensor, &derivative_terms(r, basis))
}

/// Residual evaluated at a rational point, None at a pole. Derivatives are
/// taken symbolically on the 2-tensor; the 3-tensor products are numeric.
pub fn check_cdybe_at(r: &ClassicalDyn, point: &[Q]) -> Option<RepTensor<Q>> {
    let derivs = derivative_terms(r, &r.vars.sub.l_basis);
    let r0 = eval_at(&r.tensor, point)?;
    let d0 = derivs
        .iter()
        .map(|(diag, d)| Some((diag.clone(), eval_at(d, point)?)))
        .collect::<Option<Vec<_>>>()?;
    Some(assemble(&r0, &d0))
}

/// Random rational points with small numerators and denominators, skipping
/// poles of `r`. Deterministic for a given seed.
pub fn random_points(r: &ClassicalDyn, count: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p: Vec<Q> = (0..r.vars.len()).map(|_| q_from(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
        if eval_at(&r.tensor, &p).is_some() {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdtriples::BDTriple;
    use crate::classical::r_t;
    use crate::exactring::q_int;
    use crate::liecore::standard_r;

    #[test]
    fn cybe_detects_non_solutions() {
        assert!(check_cybe(&standard_r(2)).is_zero());
        let mut r = standard_r(3);
        r.add_at(1, 3, &q_int(1));
        assert!(!check_cybe(&r).is_zero());
    }

    #[test]
    fn cdybe_small() {
        for t in [BDTriple::empty(3), BDTriple::identity(2), BDTriple::flip(3)] {
            let r = r_t(&t).unwrap();
            assert!(check_cdybe(&r).is_zero(), "{t:?}");
        }
    }

    #[test]
    fn cdybe_basis_independent() {
        let r = r_t(&BDTriple::identity(3)).unwrap();
        // a second basis of l = h
        let basis = vec![vec![q_int(1), q_int(1)], vec![q_int(2), q_int(-3)]];
        assert!(check_cdybe_in_basis(&r, &basis).is_zero());
        let p = random_points(&r, 2, 7);
        for x in &p {
            assert!(check_cdybe_at(&r, x).unwrap().is_zero());
        }
    }

    #[test]
    fn cayley_term_sign() {
        let t = BDTriple::cremmer_gervais(4);
        let r = r_t(&t).unwrap();
        let c = crate::classical::cayley_term(&t).unwrap().to_tensor();
        let flipped = ClassicalDyn::new(r.tensor.add(&c.map(|v| RatFunc::constant(v.clone()))), r.vars.clone());
        let p = random_points(&r, 2, 3);
        assert!(p.iter().all(|x| check_cdybe_at(&r, x).unwrap().is_zero()));
        assert!(!p.iter().all(|x| check_cdybe_at(&flipped, x).unwrap().is_zero()));
    }
}

