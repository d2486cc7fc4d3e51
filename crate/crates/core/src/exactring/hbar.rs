use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::ring::{q_int, Q};
use super::scalar::Scalar;

/// Truncated power series c_0 + c_1 ħ + ... + c_K ħ^K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbarSeries {
    coeffs: Vec<Q>,
}

impl HbarSeries {
    pub fn new(mut coeffs: Vec<Q>, order: usize) -> Self {
        coeffs.resize(order + 1, Q::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![], order)
    }

    pub fn constant(c: Q, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Q {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// exp(e ħ / 2), i.e. the expansion of q^e.
    pub fn q_power(e: &Q, order: usize) -> Self {
        let half = e / q_int(2);
        let mut out = Vec::with_capacity(order + 1);
        let mut term = q_int(1);
        for j in 0..=order {
            if j > 0 {
                term = term * &half / q_int(j as i64);
            }
            out.push(term.clone());
        }
        Self { coeffs: out }
    }
}

impl<'a> Add<&'a HbarSeries> for &'a HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: &HbarSeries) -> HbarSeries {
        let k = self.order().min(rhs.order());
        HbarSeries { coeffs: (0..=k).map(|j| &self.coeffs[j] + &rhs.coeffs[j]).collect() }
    }
}

impl<'a> Sub<&'a HbarSeries> for &'a HbarSeries {
    type Output = HbarSeries;
    fn sub(self, rhs: &HbarSeries) -> HbarSeries {
        let k = self.order().min(rhs.order());
        HbarSeries { coeffs: (0..=k).map(|j| &self.coeffs[j] - &rhs.coeffs[j]).collect() }
    }
}

impl<'a> Mul<&'a HbarSeries> for &'a HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: &HbarSeries) -> HbarSeries {
        let k = self.order().min(rhs.order());
        let mut out = vec![Q::zero(); k + 1];
        for i in 0..=k {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        HbarSeries { coeffs: out }
    }
}

/// Substitute q = e^{ħ/2} and truncate after ħ^order.
pub fn hbar_expand(a: &Scalar, order: usize) -> HbarSeries {
    let mut out = HbarSeries::zero(order);
    for (e, c) in a.terms() {
        let ex = Q::new((*e.numer()).into(), (*e.denom()).into());
        let t = HbarSeries::q_power(&ex, order);
        for j in 0..=order {
            out.coeffs[j] += c * &t.coeffs[j];
        }
    }
    out
}
