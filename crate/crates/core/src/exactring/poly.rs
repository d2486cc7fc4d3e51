use std::collections::BTreeMap;
use std::fmt;

use super::ring::{q_int, Ring, Q};
use super::scalar::{Exp, Scalar};

/// Enough for sl(n) with n <= 9.
pub const MAX_VARS: usize = 8;

/// Exponent vector. Polynomials keep entries nonnegative; truncated series
/// may carry negative entries after a gauge transformation.
pub type Mono = [i32; MAX_VARS];

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = *a;
    for i in 0..MAX_VARS {
        out[i] += b[i];
    }
    out
}

pub fn mono_degree(a: &Mono) -> i64 {
    a.iter().map(|&e| e as i64).sum()
}

pub fn mono_var(i: usize, k: i32) -> Mono {
    let mut m = [0; MAX_VARS];
    m[i] = k;
    m
}

/// Sparse polynomial in x_1..x_MAX_VARS. Terms keyed by exponent vector; the
/// largest key in lexicographic order is the leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<C: Ring> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Ring> Default for MPoly<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Ring> MPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::term([0; MAX_VARS], c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Mono, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    /// The variable x_i.
    pub fn var(i: usize) -> Self {
        Self::term(mono_var(i, 1), C::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &C) {
        if c.is_zero() {
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

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(mono_degree).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &c.negate());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), &c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (*m, v.times(c))).filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (mono_mul(k, m), v.clone())).collect() }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    /// Map every term x^m to x^m times f(m).
    pub fn map_terms(&self, f: impl Fn(&Mono) -> C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &c.times(&f(m)));
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.keys();
        let mut out = match it.next() {
            Some(m) => *m,
            None => return [0; MAX_VARS],
        };
        for m in it {
            for i in 0..MAX_VARS {
                out[i] = out[i].min(m[i]);
            }
        }
        out
    }

    /// Euler-type derivative: each variable satisfies ∂x_j = -w_j x_j, so a
    /// monomial x^m is scaled by -(w · m).
    pub fn derive(&self, weights: &[Q]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut f = q_int(0);
            for (j, w) in weights.iter().enumerate() {
                if m[j] != 0 {
                    f -= w * q_int(m[j] as i64);
                }
            }
            out.add_term(*m, &c.scale_q(&f));
        }
        out
    }

    /// Exact division by `d` using the lexicographic leading term.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            let mut qm = [0; MAX_VARS];
            for i in 0..MAX_VARS {
                qm[i] = rm[i] - dm[i];
                if qm[i] < 0 {
                    return None;
                }
            }
            let qc = rc.try_div(&dc)?;
            let t = Self::term(qm, qc.clone());
            rem = rem.sub(&d.mul(&t));
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[Q]) -> C {
        let mut out = C::zero();
        for (m, c) in &self.terms {
            let mut v = q_int(1);
            for (j, x) in point.iter().enumerate() {
                if m[j] != 0 {
                    v *= x.pow(m[j]);
                }
            }
            out = out.plus(&c.scale_q(&v));
        }
        out
    }
}

impl MPoly<Scalar> {
    /// x_j -> x_j q^{p_j}, the effect of shifting λ by a multiple of ħ.
    pub fn shift(&self, pairings: &[Exp]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = Exp::from_integer(0);
            for (j, p) in pairings.iter().enumerate() {
                e += p * Exp::from_integer(m[j] as i64);
            }
            out.add_term(*m, &c.shift(e));
        }
        out
    }

    pub fn at_q_one(&self) -> MPoly<Q> {
        self.map_coeffs(|c| c.at_one())
    }
}

impl MPoly<Q> {
    pub fn to_scalar(&self) -> MPoly<Scalar> {
        self.map_coeffs(|c| Scalar::from_q(c.clone()))
    }
}

pub fn fmt_mono(m: &Mono, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl<C: Ring> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?})*", c)?;
            fmt_mono(m, f)?;
        }
        Ok(())
    }
}
