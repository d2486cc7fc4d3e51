use crate::exactring::Ring;

/// Element of End(C^n)^{⊗k}, stored as a dense n^k × n^k matrix. Basis vector
/// v_{i1}⊗...⊗v_{ik} has index i1 n^{k-1} + ... + ik (0-based).
#[derive(Clone, PartialEq, Debug)]
pub struct RepTensor<S: Ring> {
    n: usize,
    arity: usize,
    data: Vec<S>,
}

/// (row, col) of e_{ij} ⊗ e_{kl} in a 2-tensor, all indices 0-based.
pub fn elem2(n: usize, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
    (i * n + k, j * n + l)
}

impl<S: Ring> RepTensor<S> {
    pub fn zero(n: usize, arity: usize) -> Self {
        let dim = n.pow(arity as u32);
        Self { n, arity, data: vec![S::zero(); dim * dim] }
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut t = Self::zero(n, arity);
        for i in 0..t.dim() {
            t.set(i, i, S::one());
        }
        t
    }

    pub fn diagonal(n: usize, arity: usize, f: impl Fn(usize) -> S) -> Self {
        let mut t = Self::zero(n, arity);
        for i in 0..t.dim() {
            t.set(i, i, f(i));
        }
        t
    }

    pub fn from_entries(n: usize, arity: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut t = Self::zero(n, arity);
        for (r, c, v) in entries {
            let cur = t.get(r, c).plus(&v);
            t.set(r, c, cur);
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.arity as u32)
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.dim() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        let d = self.dim();
        self.data[r * d + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &S) {
        let d = self.dim();
        let cur = self.data[r * d + c].plus(v);
        self.data[r * d + c] = cur;
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        let d = self.dim();
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / d, k % d, v))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, &S)> {
        self.entries().next()
    }

    fn check_shape(&self, o: &Self) {
        assert!(self.n == o.n && self.arity == o.arity, "tensor shape mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_shape(o);
        Self { n: self.n, arity: self.arity, data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_shape(o);
        Self { n: self.n, arity: self.arity, data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.negate())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.times(s))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> RepTensor<T> {
        RepTensor {
            n: self.n,
            arity: self.arity,
            data: self.data.iter().map(|v| if v.is_zero() { T::zero() } else { f(v) }).collect(),
        }
    }

    /// Map entries together with their (row, col) position.
    pub fn map_indexed<T: Ring>(&self, f: impl Fn(usize, usize, &S) -> T) -> RepTensor<T> {
        let d = self.dim();
        RepTensor {
            n: self.n,
            arity: self.arity,
            data: self
                .data
                .iter()
                .enumerate()
                .map(|(k, v)| if v.is_zero() { T::zero() } else { f(k / d, k % d, v) })
                .collect(),
        }
    }

    /// Matrix product, skipping zero entries on both sides.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_shape(o);
        let d = self.dim();
        let rows_of_o: Vec<Vec<(usize, &S)>> = (0..d)
            .map(|k| (0..d).filter_map(|j| {
                let v = o.get(k, j);
                (!v.is_zero()).then_some((j, v))
            }).collect())
            .collect();
        let mut out = Self::zero(self.n, self.arity);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &rows_of_o[k] {
                    let p = a.times(b);
                    out.add_at(i, j, &p);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let mut out = Self::zero(self.n, self.arity);
        for (r, c, v) in self.entries() {
            out.data[c * d + r] = v.clone();
        }
        out
    }

    /// X^{21} = P X P for a 2-tensor.
    pub fn flip21(&self) -> Self {
        assert_eq!(self.arity, 2);
        let n = self.n;
        let sw = |r: usize| (r % n) * n + r / n;
        let mut out = Self::zero(n, 2);
        for (r, c, v) in self.entries() {
            out.set(sw(r), sw(c), v.clone());
        }
        out
    }

    /// Place a 2-tensor in legs (a, b) of a 3-tensor (0-based legs, a != b).
    pub fn embed(&self, legs: (usize, usize)) -> Self {
        self.embed_with(legs, |v, _| v.clone())
    }

    /// As `embed`, transforming each entry with the index of the spectator
    /// basis vector.
    pub fn embed_with(&self, legs: (usize, usize), f: impl Fn(&S, usize) -> S) -> Self {
        assert_eq!(self.arity, 2);
        let n = self.n;
        let other = 3 - legs.0 - legs.1;
        let mut out = Self::zero(n, 3);
        let idx = |pos: [usize; 3]| pos[0] * n * n + pos[1] * n + pos[2];
        for (r, c, v) in self.entries() {
            let (i, j) = (r / n, r % n);
            let (k, l) = (c / n, c % n);
            for s in 0..n {
                let mut rp = [0; 3];
                let mut cp = [0; 3];
                rp[legs.0] = i;
                rp[legs.1] = j;
                cp[legs.0] = k;
                cp[legs.1] = l;
                rp[other] = s;
                cp[other] = s;
                out.set(idx(rp), idx(cp), f(v, s));
            }
        }
        out
    }

    /// Inverse of 1 + N with N nilpotent: Σ (-N)^j until the power vanishes.
    pub fn inv_unipotent(&self) -> Self {
        let one = Self::identity(self.n, self.arity);
        let nil = self.sub(&one).neg();
        let mut acc = one.clone();
        let mut pw = one;
        for _ in 0..100_000 {
            pw = pw.mul(&nil);
            if pw.is_zero() {
                return acc;
            }
            acc = acc.add(&pw);
        }
        panic!("inv_unipotent: argument is not unipotent");
    }

    /// True when every nonzero entry lies on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{q_int, Q};

    #[test]
    fn embedding_preserves_entries() {
        let n = 2;
        let (r, c) = elem2(n, 0, 1, 1, 0);
        let t = RepTensor::<Q>::from_entries(n, 2, [(r, c, q_int(3))]);
        let t13 = t.embed((0, 2));
        // e12 ⊗ 1 ⊗ e21
        assert_eq!(t13.nnz(), 2);
        assert_eq!(t13.get(0b001, 0b100), &q_int(3));
        assert_eq!(t13.get(0b011, 0b110), &q_int(3));
        // e21 ⊗ e12
        assert_eq!(t.flip21().get(2, 1), &q_int(3));
        assert_eq!(t.flip21().nnz(), 1);
    }

    #[test]
    fn unipotent_inverse() {
        let (r, c) = elem2(3, 0, 1, 2, 1);
        let mut t = RepTensor::<Q>::identity(3, 2);
        t.set(r, c, q_int(5));
        assert_eq!(t.mul(&t.inv_unipotent()), RepTensor::identity(3, 2));
    }
}
