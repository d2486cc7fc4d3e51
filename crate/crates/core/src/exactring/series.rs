use std::collections::BTreeMap;
use std::fmt;

use super::poly::{fmt_mono, mono_degree, mono_mul, MPoly, Mono, MAX_VARS};
use super::ring::{Ring, Q};
use super::scalar::{Exp, Scalar};

/// Multivariate power series in the dynamical variables, known up to total
/// degree `order`. `order == None` marks an exact (polynomial) value, so
/// constants combine with truncated series without losing precision.
///
/// Exponents may be negative after a gauge transformation; truncation still
/// compares total degree, which is only meaningful when no further products
/// with truncated values follow.
#[derive(Clone)]
pub struct TSeries<C: Ring> {
    order: Option<u32>,
    terms: BTreeMap<Mono, C>,
}

fn min_order(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Ring> TSeries<C> {
    pub fn exact(p: &MPoly<C>) -> Self {
        Self { order: None, terms: p.terms().map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; MAX_VARS], c);
        }
        Self { order: None, terms }
    }

    pub fn term(m: Mono, c: C) -> Self {
        let mut s = Self::constant(C::zero());
        s.add_term(m, &c);
        s
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[0; MAX_VARS])
    }

    fn in_range(&self, m: &Mono) -> bool {
        match self.order {
            Some(n) => mono_degree(m) <= n as i64,
            None => true,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: &C) {
        if c.is_zero() || !self.in_range(&m) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.plus(c);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn truncated(&self, order: u32) -> Self {
        let order = min_order(self.order, Some(order));
        let mut out = Self { order, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> TSeries<D> {
        let mut out = TSeries { order: self.order, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    /// Map x^m to x^m * f(m).
    pub fn map_terms(&self, f: impl Fn(&Mono) -> C) -> Self {
        let mut out = Self { order: self.order, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, &c.times(&f(m)));
        }
        out
    }

    /// Multiply by x^k. The known range shifts with the degree of k.
    pub fn mul_mono(&self, k: &Mono) -> Self {
        let order = self.order.map(|n| (n as i64 + mono_degree(k)).max(0) as u32);
        Self { order, terms: self.terms.iter().map(|(m, c)| (mono_mul(m, k), c.clone())).collect() }
    }

    /// Terms of positive total degree.
    pub fn positive_part(&self) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().filter(|(m, _)| mono_degree(m) > 0).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// True when every monomial is x^0.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn to_poly(&self) -> MPoly<C> {
        let mut p = MPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(*m, c);
        }
        p
    }

    fn mul_series(&self, o: &Self) -> Self {
        let order = min_order(self.order, o.order);
        let mut out = Self { order, terms: BTreeMap::new() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = mono_mul(m1, m2);
                if out.in_range(&m) {
                    out.add_term(m, &c1.times(c2));
                }
            }
        }
        out
    }

    fn add_series(&self, o: &Self, neg: bool) -> Self {
        let order = min_order(self.order, o.order);
        let mut out = Self { order, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, c);
        }
        for (m, c) in &o.terms {
            out.add_term(*m, &if neg { c.negate() } else { c.clone() });
        }
        out
    }
}

impl TSeries<Scalar> {
    /// x_j -> x_j q^{p_j}
    pub fn shift(&self, pairings: &[Exp]) -> Self {
        self.map_terms(|m| {
            let mut e = Exp::from_integer(0);
            for (j, p) in pairings.iter().enumerate() {
                e += p * Exp::from_integer(m[j] as i64);
            }
            Scalar::q_pow(e)
        })
    }
}

impl<C: Ring> PartialEq for TSeries<C> {
    /// Equality on the common known range.
    fn eq(&self, o: &Self) -> bool {
        let d = self.add_series(o, true);
        d.terms.is_empty()
    }
}

impl<C: Ring> fmt::Debug for TSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})*", c)?;
            fmt_mono(m, f)?;
        }
        if let Some(n) = self.order {
            write!(f, " + O({})", n + 1)?;
        }
        Ok(())
    }
}

impl<C: Ring> Ring for TSeries<C> {
    fn zero() -> Self {
        Self::constant(C::zero())
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add_series(other, false)
    }
    fn minus(&self, other: &Self) -> Self {
        self.add_series(other, true)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_series(other)
    }
    fn negate(&self) -> Self {
        Self { order: self.order, terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect() }
    }
    fn from_q(c: &Q) -> Self {
        Self::constant(C::from_q(c))
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        // only constants are inverted here; series inversion lives with callers
        let c = other.as_constant_coeff()?;
        let inv = C::one().try_div(&c)?;
        Some(self.map_coeffs(|v| v.times(&inv)))
    }
}

impl<C: Ring> TSeries<C> {
    fn as_constant_coeff(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }
}
