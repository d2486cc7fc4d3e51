//! Dense linear algebra over Q: reduced row echelon form, solving, kernels.

use num_traits::{One, Zero};

use crate::exactring::{q_int, Q};

pub type Mat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for i in 0..n {
        m[i][i] = Q::one();
    }
    m
}

pub fn cols(m: &Mat) -> usize {
    m.first().map(|r| r.len()).unwrap_or(0)
}

pub fn transpose(m: &Mat) -> Mat {
    let (r, c) = (m.len(), cols(m));
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), cols(b));
    let mut out = zeros(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn scale(a: &Mat, c: &Q) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_cols(vs: &[Vec<Q>], rows: usize) -> Mat {
    let mut m = zeros(rows, vs.len());
    for (j, v) in vs.iter().enumerate() {
        for i in 0..rows {
            m[i][j] = v[i].clone();
        }
    }
    m
}

pub fn col(m: &Mat, j: usize) -> Vec<Q> {
    m.iter().map(|r| r[j].clone()).collect()
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let (rows, ncols) = (m.len(), cols(m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {x : A x = 0}, one vector per free column.
pub fn kernel(a: &Mat) -> Vec<Vec<Q>> {
    let n = cols(a);
    let mut m = a.clone();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solution of A x = b with free variables set to zero, plus a kernel basis.
/// None when inconsistent.
pub fn solve(a: &Mat, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let n = if a.is_empty() { 0 } else { cols(a) };
    let mut aug: Mat = a.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let piv = rref(&mut aug);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = aug[r][n].clone();
    }
    Some((x, kernel(a)))
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
        r
    }).collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return if n == 0 { Some(vec![]) } else { None };
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Linearly independent subset of the given vectors, in order.
pub fn independent_subset(vs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    for v in vs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            out.push(v.clone());
        }
    }
    out
}

pub fn int_vec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q_int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_with_free_variable() {
        let a = vec![int_vec(&[1, 1, 0]), int_vec(&[0, 0, 1])];
        let (x, ker) = solve(&a, &int_vec(&[2, 3])).unwrap();
        assert_eq!(x, int_vec(&[2, 0, 3]));
        assert_eq!(ker, vec![int_vec(&[-1, 1, 0])]);
        assert!(solve(&vec![int_vec(&[1, 1]), int_vec(&[2, 2])], &int_vec(&[1, 3])).is_none());
    }

    #[test]
    fn inverse_of_cartan_matrix() {
        let a = vec![int_vec(&[2, -1]), int_vec(&[-1, 2])];
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        assert!(inverse(&vec![int_vec(&[1, 2]), int_vec(&[2, 4])]).is_none());
    }
}
