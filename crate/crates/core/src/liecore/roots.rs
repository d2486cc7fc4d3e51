use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::{q_int, Q};
use crate::linalg::Mat;

/// Positive root α_lo + ... + α_hi of A_{n-1}, i.e. v_lo - v_{hi+1}; a segment
/// of the Dynkin diagram. Simple-root indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub lo: usize,
    pub hi: usize,
}

impl Root {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 && lo <= hi);
        Self { lo, hi }
    }

    pub fn simple(a: usize) -> Self {
        Self::new(a, a)
    }

    /// Root v_i - v_j, 1-based, i < j.
    pub fn from_pair(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= j || j > n {
            return Err(Error::NotARoot(i, j, n));
        }
        Ok(Self::new(i, j - 1))
    }

    /// Number of simple constituents.
    pub fn height(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn constituents(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    /// 0-based (row, col) of e_α = e_{lo, hi+1}.
    pub fn e_pos(&self) -> (usize, usize) {
        (self.lo - 1, self.hi)
    }

    /// 0-based (row, col) of f_α = e_{hi+1, lo}.
    pub fn f_pos(&self) -> (usize, usize) {
        (self.hi, self.lo - 1)
    }

    /// α ⋖ β: α = v_i - v_j and β = v_j - v_k.
    pub fn abuts(&self, beta: &Root) -> bool {
        self.hi + 1 == beta.lo
    }

    /// Coordinates of h_α in the simple-coroot basis (length n-1).
    pub fn coroot(&self, n: usize) -> Vec<Q> {
        (1..n).map(|a| q_int((self.lo <= a && a <= self.hi) as i64)).collect()
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "a{}", self.lo)
        } else {
            write!(f, "a{}..a{}", self.lo, self.hi)
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The root system A_{n-1} of sl(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootSystemA {
    pub n: usize,
}

impl RootSystemA {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "sl(n) needs n >= 2");
        Self { n }
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// α_i = v_i - v_{i+1} in Z^n.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[i - 1] = 1;
        v[i] = -1;
        v
    }

    /// Positive roots in lexicographic (lo, hi) order.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for lo in 1..self.n {
            for hi in lo..self.n {
                out.push(Root::new(lo, hi));
            }
        }
        out
    }

    /// (α_i, α_j) for simple roots, 1-based.
    pub fn ip(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    /// Gram matrix of the simple coroots (the Cartan matrix).
    pub fn gram(&self) -> Mat {
        (1..self.n).map(|i| (1..self.n).map(|j| q_int(self.ip(i, j))).collect()).collect()
    }

    /// Diagonal entries of φ(y) for y in the u-basis.
    pub fn diag_of(&self, y: &[Q]) -> Vec<Q> {
        (0..self.n)
            .map(|i| {
                let mut d = q_int(0);
                if i < self.n - 1 {
                    d += &y[i];
                }
                if i > 0 {
                    d -= &y[i - 1];
                }
                d
            })
            .collect()
    }

    /// w_i(u_a) for the weight of v_i (0-based i, a): δ_{i,a} - δ_{i,a+1}.
    pub fn weight_on_coroot(&self, i: usize, a: usize) -> i64 {
        (i == a) as i64 - (i == a + 1) as i64
    }
}
