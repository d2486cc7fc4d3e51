use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::ring::{q_int, Q};
use crate::error::{Error, Result};

/// Exponent of q. Rational: the conjugations by q^{Cartan} produce exponents
/// with denominators dividing the orders of the projections involved.
pub type Exp = Ratio<i64>;

/// Laurent polynomial in q with rational exponents and rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Exp, Q>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Exp::zero(), q_int(1))
    }

    pub fn from_q(c: Q) -> Self {
        Self::monomial(Exp::zero(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_q(q_int(c))
    }

    pub fn monomial(e: Exp, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// q^e
    pub fn q_pow(e: Exp) -> Self {
        Self::monomial(e, q_int(1))
    }

    pub fn q_pow_int(e: i64) -> Self {
        Self::q_pow(Exp::from_integer(e))
    }

    /// q - q^{-1}
    pub fn q_minus_qinv() -> Self {
        Self::q_pow_int(1) - Self::q_pow_int(-1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, Q)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in it {
            s.add_term(e, &c);
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: &Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn as_monomial(&self) -> Option<(Exp, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        match self.as_monomial() {
            Some((e, c)) if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiply by q^e.
    pub fn shift(&self, e: Exp) -> Self {
        if e.is_zero() {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Value at q = 1.
    pub fn at_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    /// Substitute q -> q^{-1}.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    pub fn min_exp(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<Exp> {
        self.terms.keys().next_back().copied()
    }

    fn common_denom(&self, other: &Self) -> i64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .fold(1i64, |acc, e| acc.lcm(e.denom()))
    }

    /// Exact division. Monomial divisors are inverted directly; otherwise
    /// long division in q^{1/d} where d clears every exponent denominator.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionNotExact);
        }
        if let Some((e, c)) = other.as_monomial() {
            return Ok(self.shift(-e).scale(&c.recip()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d = self.common_denom(other);
        let to_int = |s: &Self| -> BTreeMap<i64, Q> {
            s.terms.iter().map(|(e, c)| ((e * d).to_integer(), c.clone())).collect()
        };
        let mut a = to_int(self);
        let b = to_int(other);
        let (bmin, bmax) = (*b.keys().next().unwrap(), *b.keys().next_back().unwrap());
        let lo = *a.keys().next().unwrap() - bmin;
        let blead = b[&bmax].clone();
        let mut quot = Self::zero();
        while let Some((amax, ac)) = a.iter().next_back().map(|(k, c)| (*k, c.clone())) {
            let k = amax - bmax;
            if k < lo {
                return Err(Error::DivisionNotExact);
            }
            let f = ac / &blead;
            for (be, bc) in &b {
                let slot = a.entry(be + k).or_insert_with(Q::zero);
                *slot -= &f * bc;
                if slot.is_zero() {
                    a.remove(&(be + k));
                }
            }
            quot.add_term(Exp::new(k, d), &f);
        }
        Ok(quot)
    }

    pub fn pow(&self, k: u32) -> Self {
        super::ring::Ring::pow(self, k)
    }

    /// Canonical string form of a coefficient: "p" or "p/q".
    pub fn fmt_q(c: &Q) -> String {
        if c.denom() == &num_bigint::BigInt::from(1) {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a == q_int(1);
            if e.is_zero() {
                write!(f, "{}", Scalar::fmt_q(&a))?;
                continue;
            }
            if !unit {
                write!(f, "{}*", Scalar::fmt_q(&a))?;
            }
            if e == &Exp::from_integer(1) {
                write!(f, "q")?;
            } else if e.is_integer() {
                write!(f, "q^{}", e)?;
            } else {
                write!(f, "q^({})", e)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut out = Scalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// not imported: its method names clash with num_traits on Q
impl super::ring::Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_q(c: &Q) -> Self {
        Scalar::from_q(c.clone())
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        self.div_exact(other).ok()
    }
    fn scale_q(&self, c: &Q) -> Self {
        self.scale(c)
    }
}
