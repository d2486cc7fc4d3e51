use std::fmt;

use super::poly::{MPoly, Mono, MAX_VARS};
use super::ring::{Ring, Q};
use super::scalar::{Exp, Scalar};

/// Quotient of two polynomials. Reduced only by monomial factors, exact
/// divisibility and normalization of the leading denominator coefficient; no
/// multivariate gcd. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc<C: Ring> {
    num: MPoly<C>,
    den: MPoly<C>,
}

/// Rational function in the dynamical variables with coefficients in q.
pub type DynScalar = RatFunc<Scalar>;

impl<C: Ring> RatFunc<C> {
    pub fn new(num: MPoly<C>, den: MPoly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Self { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: MPoly<C>) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(MPoly::var(i))
    }

    /// x^m for an exponent vector that may have negative entries.
    pub fn laurent_mono(m: &Mono) -> Self {
        let mut pos = [0; MAX_VARS];
        let mut neg = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            if m[i] >= 0 {
                pos[i] = m[i];
            } else {
                neg[i] = -m[i];
            }
        }
        Self::new(MPoly::term(pos, C::one()), MPoly::term(neg, C::one()))
    }

    pub fn num(&self) -> &MPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one();
            return;
        }
        let a = self.num.min_mono();
        let b = self.den.min_mono();
        let mut common = [0; MAX_VARS];
        let mut any = false;
        for i in 0..MAX_VARS {
            common[i] = -a[i].min(b[i]);
            any |= common[i] != 0;
        }
        if any {
            self.num = self.num.mul_mono(&common);
            self.den = self.den.mul_mono(&common);
        }
        if self.den.len() > 1 {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = MPoly::one();
            } else if self.num.len() > 1 {
                if let Some(q) = self.den.div_exact(&self.num) {
                    self.num = MPoly::one();
                    self.den = q;
                }
            }
        }
        let lc = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            if let Some(inv) = C::one().try_div(&lc) {
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        if let Some(k) = self.den.div_exact(&o.den) {
            return Self::new(self.num.add(&o.num.mul(&k)), self.den.clone());
        }
        if let Some(k) = o.den.div_exact(&self.den) {
            return Self::new(self.num.mul(&k).add(&o.num), o.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero_();
        }
        // cross-cancel before multiplying out
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (o.num.clone(), o.den.clone());
        if d2.len() > 1 {
            if let Some(q) = n1.div_exact(&d2) {
                n1 = q;
                d2 = MPoly::one();
            }
        }
        if d1.len() > 1 {
            if let Some(q) = n2.div_exact(&d1) {
                n2 = q;
                d1 = MPoly::one();
            }
        }
        Self::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    fn zero_() -> Self {
        Self { num: MPoly::zero(), den: MPoly::one() }
    }

    /// Directional derivative with ∂x_j = -w_j x_j.
    pub fn derive(&self, weights: &[Q]) -> Self {
        if self.den.as_constant().is_some() {
            return Self::new(self.num.derive(weights), self.den.clone());
        }
        let top = self.num.derive(weights).mul(&self.den).sub(&self.num.mul(&self.den.derive(weights)));
        Self::new(top, self.den.mul(&self.den))
    }

    /// Multiply by x^m where m may have negative entries.
    pub fn mul_laurent_mono(&self, m: &Mono) -> Self {
        self.mul(&Self::laurent_mono(m))
    }

    pub fn eval(&self, point: &[Q]) -> Option<C> {
        let d = self.den.eval(point);
        self.num.eval(point).try_div(&d)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> RatFunc<D> {
        RatFunc::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    /// Expand as a power series in the variables, keeping total degree <= order.
    /// Requires a denominator with invertible constant term.
    pub fn expand(&self, order: u32) -> Option<MPoly<C>> {
        let c0 = self.den.coeff(&[0; MAX_VARS]);
        let inv0 = C::one().try_div(&c0)?;
        // 1/den = inv0 * Σ f^k with f = 1 - inv0*den
        let f = MPoly::one().sub(&self.den.scale(&inv0));
        let mut acc = MPoly::one();
        let mut pw = MPoly::one();
        for _ in 0..order {
            pw = truncate(&pw.mul(&f), order);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Some(truncate(&self.num.mul(&acc).scale(&inv0), order))
    }
}

pub(crate) fn truncate<C: Ring>(p: &MPoly<C>, order: u32) -> MPoly<C> {
    let mut out = MPoly::zero();
    for (m, c) in p.terms() {
        if m.iter().map(|&e| e as i64).sum::<i64>() <= order as i64 {
            out.add_term(*m, c);
        }
    }
    out
}

impl DynScalar {
    /// Substitute x_j -> x_j q^{p_j}.
    pub fn shift(&self, pairings: &[Exp]) -> Self {
        Self::new(self.num.shift(pairings), self.den.shift(pairings))
    }

    pub fn at_q_one(&self) -> RatFunc<Q> {
        RatFunc::new(self.num.at_q_one(), self.den.at_q_one())
    }
}

impl<C: Ring> PartialEq for RatFunc<C> {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl<C: Ring> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "[{:?}] / [{:?}]", self.num, self.den)
        }
    }
}

impl<C: Ring> Ring for RatFunc<C> {
    fn zero() -> Self {
        Self::zero_()
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_q(c: &Q) -> Self {
        Self::constant(C::from_q(c))
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        Some(self.mul(&Self::new(other.den.clone(), other.num.clone())))
    }
    fn scale_q(&self, c: &Q) -> Self {
        self.scale(&C::from_q(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::q_int;

    type R = RatFunc<Q>;

    fn x() -> R {
        R::var(0)
    }

    #[test]
    fn derivative_of_inverse() {
        // 1/(x-1) with ∂x = -x  ->  x/(x-1)^2
        let f = R::new(MPoly::one(), MPoly::var(0).sub(&MPoly::one()));
        let d = f.derive(&[q_int(1)]);
        let xm1 = MPoly::var(0).sub(&MPoly::one());
        assert_eq!(d, R::new(MPoly::var(0), xm1.mul(&xm1)));
    }

    #[test]
    fn derivative_basics() {
        assert!(R::constant(q_int(5)).derive(&[q_int(1)]).is_zero());
        let x2 = x().mul(&x());
        assert_eq!(x2.derive(&[q_int(1)]), x2.scale(&q_int(-2)));
    }

    #[test]
    fn shift_substitution() {
        let x = DynScalar::var(0);
        assert_eq!(x.shift(&[Exp::from_integer(1)]), DynScalar::from_poly(MPoly::term(crate::exactring::poly::mono_var(0, 1), Scalar::q_pow_int(1))));
        let f = DynScalar::new(MPoly::one(), MPoly::var(0).sub(&MPoly::one()));
        let g = f.shift(&[Exp::from_integer(-1)]);
        let expect_den = MPoly::term(crate::exactring::poly::mono_var(0, 1), Scalar::q_pow_int(-1)).sub(&MPoly::one());
        assert_eq!(g, DynScalar::new(MPoly::one(), expect_den));
        assert_eq!(f.shift(&[Exp::from_integer(0)]), f);
    }

    #[test]
    fn reduction_cancels() {
        let one = MPoly::<Q>::one();
        let xm = MPoly::var(0);
        let f = R::new(xm.mul(&xm).sub(&one), xm.sub(&one));
        assert!(f.is_polynomial());
        assert_eq!(f, R::from_poly(xm.add(&one)));
    }

    #[test]
    fn geometric_expansion() {
        let f = R::new(MPoly::var(0), MPoly::one().sub(&MPoly::var(0)));
        let s = f.expand(4).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.terms().all(|(_, c)| *c == q_int(1)));
    }
}
