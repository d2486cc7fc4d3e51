use super::vars::{DynRepTensor, DynVars};
use crate::bdtriples::{cayley, BDTriple, OrbitKind};
use crate::error::{Error, Result};
use crate::exactring::{q_from, q_int, MPoly, Mono, RatFunc, Ring, Q};
use crate::liecore::{elem2, standard_r, CartanBivector, RepTensor, Root, RootSystemA};

pub type ClassicalDyn = DynRepTensor<RatFunc<Q>>;

/// T^k(e_α) in the vector representation: the image root and a sign
/// (-1)^{(|α|-1)C_{α,k}}, or None when T^k is undefined on α.
pub fn classical_t_power(triple: &BDTriple, alpha: Root, k: usize) -> Option<(Root, i64)> {
    let (r, rev) = triple.t_power(alpha, k)?;
    Some((r, orientation_sign(alpha, rev)))
}

fn orientation_sign(alpha: Root, reversed: bool) -> i64 {
    if reversed && alpha.height() % 2 == 0 {
        -1
    } else {
        1
    }
}

/// e_{T^l α} ⊗ f_α position
fn root_pair_pos(n: usize, image: Root, alpha: Root) -> (usize, usize) {
    let (i, j) = image.e_pos();
    let (k, l) = alpha.f_pos();
    elem2(n, i, j, k, l)
}

/// Σ_α Σ_{l≥1} x_α^l T^l(e_α) ⊗ f_α with cyclic tails summed in closed form.
pub fn a_lambda(triple: &BDTriple) -> Result<ClassicalDyn> {
    let n = triple.n;
    let vars = DynVars::new(triple)?;
    let mut t = RepTensor::<RatFunc<Q>>::zero(n, 2);
    for alpha in RootSystemA::new(n).positive_roots() {
        let orbit = triple.orbit(alpha);
        let x = |l: usize| vars.root_mono(alpha, l as i32);
        let mono = |m: Mono, c: i64| MPoly::term(m, q_int(c));
        match orbit.kind {
            OrbitKind::Terminating => {
                for (l, &(image, rev)) in orbit.steps.iter().enumerate().skip(1) {
                    let (r, c) = root_pair_pos(n, image, alpha);
                    t.add_at(r, c, &RatFunc::from_poly(mono(x(l), orientation_sign(alpha, rev))));
                }
            }
            OrbitKind::Cyclic { preperiod, period, reversed_over_period } => {
                let start = preperiod.max(1);
                let step = |l: usize| {
                    if l < orbit.steps.len() {
                        orbit.steps[l]
                    } else {
                        let (r, rev) = orbit.steps[l - period];
                        (r, rev != reversed_over_period)
                    }
                };
                for l in 1..start {
                    let (image, rev) = step(l);
                    let (r, c) = root_pair_pos(n, image, alpha);
                    t.add_at(r, c, &RatFunc::from_poly(mono(x(l), orientation_sign(alpha, rev))));
                }
                let rho = orientation_sign(alpha, reversed_over_period);
                let den = MPoly::one().sub(&mono(x(period), rho));
                for l in start..start + period {
                    let (image, rev) = step(l);
                    let (r, c) = root_pair_pos(n, image, alpha);
                    let num = mono(x(l), orientation_sign(alpha, rev));
                    t.add_at(r, c, &RatFunc::new(num, den.clone()));
                }
            }
        }
    }
    Ok(DynRepTensor::new(t, vars))
}

/// (C_T ⊗ 1)Ω_{l^⊥}
pub fn cayley_term(triple: &BDTriple) -> Result<CartanBivector> {
    let vars_sub = crate::bdtriples::extend_t_to_h(triple)?;
    let c = cayley(triple, &vars_sub)?;
    Ok(vars_sub.omega_perp().apply_left(&c.on_h(&vars_sub)))
}

/// r - ½(C_T⊗1)Ω_{l^⊥} + a(λ) - a^{21}(λ)
pub fn r_t(triple: &BDTriple) -> Result<ClassicalDyn> {
    let a = a_lambda(triple)?;
    let n = triple.n;
    let half_c = cayley_term(triple)?.scale(&q_from(1, 2)).to_tensor();
    let base = standard_r(n).sub(&half_c);
    let t = base.map(|v| RatFunc::constant(v.clone())).add(&a.tensor).sub(&a.tensor.flip21());
    Ok(DynRepTensor::new(t, a.vars))
}

/// r - s + Σ_α Σ_l T^l(e_α) ∧ f_α, constant; defined for nilpotent triples.
pub fn r_ts(triple: &BDTriple, s: &CartanBivector) -> Result<RepTensor<Q>> {
    if !triple.nilpotent {
        return Err(Error::NotNilpotent);
    }
    let n = triple.n;
    let mut wedge = RepTensor::<Q>::zero(n, 2);
    for alpha in RootSystemA::new(n).positive_roots() {
        for &(image, rev) in triple.orbit(alpha).steps.iter().skip(1) {
            let (r, c) = root_pair_pos(n, image, alpha);
            wedge.add_at(r, c, &q_int(orientation_sign(alpha, rev)));
        }
    }
    Ok(standard_r(n).sub(&s.to_tensor()).add(&wedge).sub(&wedge.flip21()))
}

/// r ↦ (Ad g ⊗ Ad g)(r - Q + Q^{21}) with g = e^{Qλ}, Q ∈ l⊗h.
pub fn gauge_classical(r: &ClassicalDyn, q: &CartanBivector) -> Result<ClassicalDyn> {
    let vars = &r.vars;
    if !vars.in_l_tensor_h(q) {
        return Err(Error::Invalid("gauge generator is not in l⊗h".into()));
    }
    let corr = q.flip().sub(q).to_tensor();
    let shifted = r.tensor.add(&corr.map(|v| RatFunc::constant(v.clone())));
    let n = vars.n;
    let mut out = RepTensor::zero(n, 2);
    for (row, col, v) in shifted.entries() {
        let k = vars.gauge_exponents(q, &vars.entry_weight(row, col))?;
        out.set(row, col, v.mul_laurent_mono(&k));
    }
    Ok(DynRepTensor::new(out, vars.clone()))
}

/// Evaluate every entry at a point; None at a pole.
pub fn eval_at<C: Ring>(t: &RepTensor<RatFunc<C>>, point: &[Q]) -> Option<RepTensor<C>> {
    let mut out = RepTensor::zero(t.n(), t.arity());
    for (r, c, v) in t.entries() {
        out.set(r, c, v.eval(point)?);
    }
    Some(out)
}
