use crate::bdtriples::{satisfies_r0h, extend_t_to_h, BDTriple};
use crate::error::{Error, Result};
use crate::exactring::{q_from, Exp, Q, Scalar};
use crate::liecore::{elem2, omega_h, standard_R, to_exp, CartanBivector, RepTensor, Root, RootSystemA};

/// C_{α,k} and L_{α,T^kα} for a root α with T^k α defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombFactor {
    pub image: Root,
    /// 1 when T^k reverses a composite α.
    pub c: u8,
    /// Half-integer exponent of q.
    pub l: Q,
}

/// Which orientation-reversal factor multiplies composite reversed roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reversal {
    /// (-q^{-1})^{(|α|-1)C}; satisfies QYBE for every nilpotent triple tried.
    InverseQ,
    /// (-q)^{(|α|-1)C} as sometimes printed; fails QYBE for reversing sl(5) triples.
    Q,
}

pub fn comb_factor(triple: &BDTriple, alpha: Root, k: usize) -> Result<CombFactor> {
    let undefined = || Error::UndefinedPower(format!("{alpha:?}"), k);
    let mut orbit = Vec::with_capacity(k + 1);
    for m in 0..=k {
        orbit.push(triple.t_power(alpha, m).ok_or_else(undefined)?);
    }
    let (image, rev) = orbit[k];
    let half = q_from(1, 2);
    let ind = |b: bool| q_from(b as i64, 1);
    let mids = &orbit[1..k];
    let mut l = &half * ind(alpha.abuts(&image)) - &half * ind(image.abuts(&alpha));
    l += ind(mids.iter().any(|(g, _)| alpha.abuts(g)));
    l -= ind(mids.iter().any(|(g, _)| g.abuts(&alpha)));
    Ok(CombFactor { image, c: (rev && alpha.height() > 1) as u8, l })
}

/// Coefficient (-q^{∓1})^{(|α|-1)C} attached to a reversed composite root.
pub fn reversal_factor(alpha: Root, c: u8, reversal: Reversal) -> Scalar {
    let e = ((alpha.height() - 1) * c as usize) as i64;
    let sign = if e % 2 == 0 { 1 } else { -1 };
    let pw = match reversal {
        Reversal::InverseQ => -e,
        Reversal::Q => e,
    };
    Scalar::q_pow_int(pw).scale(&q_from(sign, 1))
}

pub fn twist_factor_jk(triple: &BDTriple, k: usize) -> RepTensor<Scalar> {
    twist_factor_jk_with(triple, k, Reversal::InverseQ)
}

/// J_k = 1 + Σ_α (rev. factor) q^{L} (q - q^{-1}) e_{T^kα} ⊗ f_α over roots with T^k α defined.
pub fn twist_factor_jk_with(triple: &BDTriple, k: usize, reversal: Reversal) -> RepTensor<Scalar> {
    let n = triple.n;
    let mut j = RepTensor::identity(n, 2);
    for alpha in RootSystemA::new(n).positive_roots() {
        let Ok(cf) = comb_factor(triple, alpha, k) else { continue };
        let coeff = &(&reversal_factor(alpha, cf.c, reversal) * &Scalar::q_pow(to_exp(&cf.l))) * &Scalar::q_minus_qinv();
        let (a, b) = cf.image.e_pos();
        let (c, d) = alpha.f_pos();
        let (r, col) = elem2(n, a, b, c, d);
        j.add_at(r, col, &coeff);
    }
    j
}

/// The factors of J_{T,s} = q^{-½Ω_h} J_1 ⋯ J_N q^{-s+½Ω_l}.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistFactors {
    pub factors: Vec<RepTensor<Scalar>>,
    pub prefix: RepTensor<Scalar>,
    pub suffix: RepTensor<Scalar>,
    pub s: CartanBivector,
}

pub fn twist_factors(triple: &BDTriple, s: &CartanBivector, reversal: Reversal) -> Result<TwistFactors> {
    if !triple.nilpotent {
        return Err(Error::NotNilpotent);
    }
    if !satisfies_r0h(triple, s) {
        return Err(Error::Invalid("s does not satisfy its defining equations".into()));
    }
    let n = triple.n;
    let top = triple.max_power().unwrap_or(0);
    let factors = (1..=top).map(|k| twist_factor_jk_with(triple, k, reversal)).collect();
    let half = q_from(1, 2);
    let prefix = omega_h(n).scale(&-half.clone()).q_power();
    let omega_l = extend_t_to_h(triple)?.omega_l();
    let suffix = omega_l.scale(&half).sub(s).q_power();
    Ok(TwistFactors { factors, prefix, suffix, s: s.clone() })
}

impl TwistFactors {
    pub fn product(&self) -> RepTensor<Scalar> {
        let mut out = self.prefix.clone();
        for j in &self.factors {
            out = out.mul(j);
        }
        out.mul(&self.suffix)
    }

    /// q^{-s}(J_N^{21})^{-1} ⋯ (J_1^{21})^{-1} R J_1 ⋯ J_N q^{-s}
    pub fn r_matrix(&self) -> RepTensor<Scalar> {
        let n = self.prefix.n();
        let qs = self.s.scale(&q_from(-1, 1)).q_power();
        let mut left = qs.clone();
        for j in self.factors.iter().rev() {
            left = left.mul(&j.flip21().inv_unipotent());
        }
        let mut right = standard_R(n);
        for j in &self.factors {
            right = right.mul(j);
        }
        left.mul(&right).mul(&qs)
    }
}

/// (φ⊗φ)(J_{T,s})
#[allow(non_snake_case)]
pub fn build_J_Ts(triple: &BDTriple, s: &CartanBivector) -> Result<RepTensor<Scalar>> {
    Ok(twist_factors(triple, s, Reversal::InverseQ)?.product())
}

/// R(T,s) in the vector representation.
#[allow(non_snake_case)]
pub fn build_R_Ts(triple: &BDTriple, s: &CartanBivector) -> Result<RepTensor<Scalar>> {
    Ok(twist_factors(triple, s, Reversal::InverseQ)?.r_matrix())
}

/// Exponents of a diagonal tensor whose entries are q-monomials with unit
/// coefficient; None otherwise.
pub fn diagonal_exponents(t: &RepTensor<Scalar>) -> Option<Vec<Exp>> {
    if !t.is_diagonal() {
        return None;
    }
    (0..t.dim())
        .map(|i| match t.get(i, i).as_monomial() {
            Some((e, c)) if *c == q_from(1, 1) => Some(e),
            _ => None,
        })
        .collect()
}
