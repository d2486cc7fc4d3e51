use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liecore::{Root, RootSystemA};

/// Wire form of a triple: {n, gamma1, gamma2, t_map}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub n: usize,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub t_map: Vec<[usize; 2]>,
}

/// A validated generalized Belavin–Drinfeld triple on the A_{n-1} diagram.
/// Simple roots are referred to by their 1-based index.
#[derive(Clone, PartialEq, Eq)]
pub struct BDTriple {
    pub n: usize,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    t: BTreeMap<usize, usize>,
    /// Largest T-invariant subset of gamma1.
    pub gamma3: Vec<usize>,
    pub nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    /// T^k α is undefined for k = steps.len().
    Terminating,
    /// T^{preperiod + period} α = T^{preperiod} α as a set.
    Cyclic { preperiod: usize, period: usize, reversed_over_period: bool },
}

/// The sequence α, Tα, T²α, ... with, for each entry, whether T^k reverses
/// the segment relative to α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub root: Root,
    pub steps: Vec<(Root, bool)>,
    pub kind: OrbitKind,
}

pub fn validate_triple(n: usize, gamma1: &[usize], gamma2: &[usize], t_map: &[(usize, usize)]) -> Result<BDTriple> {
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n} is below 2")));
    }
    let in_range = |a: &usize| (1..n).contains(a);
    if !gamma1.iter().chain(gamma2).all(in_range) {
        return Err(Error::Invalid(format!("simple root index outside 1..{}", n - 1)));
    }
    let g1: BTreeSet<usize> = gamma1.iter().copied().collect();
    let g2: BTreeSet<usize> = gamma2.iter().copied().collect();
    if g1.len() != gamma1.len() || g2.len() != gamma2.len() {
        return Err(Error::NotBijection("repeated simple root".into()));
    }
    let mut t = BTreeMap::new();
    for &(a, b) in t_map {
        if !g1.contains(&a) || !g2.contains(&b) {
            return Err(Error::NotBijection(format!("pair ({a}, {b}) leaves gamma1 x gamma2")));
        }
        if t.insert(a, b).is_some() {
            return Err(Error::NotBijection(format!("alpha{a} mapped twice")));
        }
    }
    if t.len() != g1.len() {
        return Err(Error::NotBijection("T is not defined on all of gamma1".into()));
    }
    let image: BTreeSet<usize> = t.values().copied().collect();
    if image != g2 {
        return Err(Error::NotBijection("T is not onto gamma2".into()));
    }
    let rs = RootSystemA::new(n);
    for &a in &g1 {
        for &b in &g1 {
            if a < b && rs.ip(t[&a], t[&b]) != rs.ip(a, b) {
                return Err(Error::InnerProductViolation(a, b));
            }
        }
    }
    let mut g3 = g1.clone();
    loop {
        let next: BTreeSet<usize> = g3.iter().copied().filter(|a| g3.contains(&t[a])).collect();
        if next.len() == g3.len() {
            break;
        }
        g3 = next;
    }
    Ok(BDTriple {
        n,
        gamma1: g1.into_iter().collect(),
        gamma2: g2.into_iter().collect(),
        nilpotent: g3.is_empty(),
        gamma3: g3.into_iter().collect(),
        t,
    })
}

impl BDTriple {
    pub fn from_spec(s: &TripleSpec) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = s.t_map.iter().map(|p| (p[0], p[1])).collect();
        validate_triple(s.n, &s.gamma1, &s.gamma2, &pairs)
    }

    pub fn to_spec(&self) -> TripleSpec {
        TripleSpec {
            n: self.n,
            gamma1: self.gamma1.clone(),
            gamma2: self.gamma2.clone(),
            t_map: self.t.iter().map(|(a, b)| [*a, *b]).collect(),
        }
    }

    /// Γ1 = Γ2 = ∅
    pub fn empty(n: usize) -> Self {
        validate_triple(n, &[], &[], &[]).unwrap()
    }

    /// Γ1 = Γ2 = Γ, T = id
    pub fn identity(n: usize) -> Self {
        let g: Vec<usize> = (1..n).collect();
        let t: Vec<(usize, usize)> = g.iter().map(|&a| (a, a)).collect();
        validate_triple(n, &g, &g, &t).unwrap()
    }

    /// Cremmer–Gervais: α_i -> α_{i+1}
    pub fn cremmer_gervais(n: usize) -> Self {
        let g1: Vec<usize> = (1..n - 1).collect();
        let g2: Vec<usize> = (2..n).collect();
        let t: Vec<(usize, usize)> = g1.iter().map(|&a| (a, a + 1)).collect();
        validate_triple(n, &g1, &g2, &t).unwrap()
    }

    /// The diagram flip α_i -> α_{n-i}
    pub fn flip(n: usize) -> Self {
        let g: Vec<usize> = (1..n).collect();
        let t: Vec<(usize, usize)> = g.iter().map(|&a| (a, n - a)).collect();
        validate_triple(n, &g, &g, &t).unwrap()
    }

    pub fn t(&self, a: usize) -> Option<usize> {
        self.t.get(&a).copied()
    }

    pub fn t_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.t.iter().map(|(a, b)| (*a, *b))
    }

    pub fn is_empty(&self) -> bool {
        self.gamma1.is_empty()
    }

    /// T^k α as a segment, with the reversal flag relative to α; None when
    /// some constituent leaves Γ1 on the way.
    pub fn t_power(&self, alpha: Root, k: usize) -> Option<(Root, bool)> {
        let mut seq: Vec<usize> = alpha.constituents().collect();
        for _ in 0..k {
            seq = seq.iter().map(|a| self.t(*a)).collect::<Option<Vec<_>>>()?;
        }
        let lo = *seq.iter().min().unwrap();
        let hi = *seq.iter().max().unwrap();
        let reversed = seq.len() > 1 && seq[0] > seq[seq.len() - 1];
        Some((Root::new(lo, hi), reversed))
    }

    /// Direct repetition search through the finite root set.
    pub fn orbit(&self, alpha: Root) -> Orbit {
        let mut steps = vec![(alpha, false)];
        loop {
            let k = steps.len();
            let Some((r, rev)) = self.t_power(alpha, k) else {
                return Orbit { root: alpha, steps, kind: OrbitKind::Terminating };
            };
            if let Some(p) = steps.iter().position(|(s, _)| *s == r) {
                let reversed_over_period = steps[p].1 != rev;
                return Orbit {
                    root: alpha,
                    steps,
                    kind: OrbitKind::Cyclic { preperiod: p, period: k - p, reversed_over_period },
                };
            }
            steps.push((r, rev));
        }
    }

    /// Largest k with T^k defined on some simple root; None if not nilpotent.
    pub fn max_power(&self) -> Option<usize> {
        if !self.nilpotent {
            return None;
        }
        let mut best = 0;
        for &a in &self.gamma1 {
            let mut k = 0;
            let mut x = a;
            while let Some(y) = self.t(x) {
                x = y;
                k += 1;
            }
            best = best.max(k);
        }
        Some(best)
    }

    /// Classes of simple roots under the equivalence generated by i ~ T(i),
    /// ordered by their smallest element. One dynamical variable per class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (a, b) in self.t_pairs() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in 1..self.n {
            let r = find(&mut parent, a);
            groups.entry(r).or_default().push(a);
        }
        groups.into_values().collect()
    }

    /// Size of Γ3 / T, i.e. the number of T-cycles inside Γ3.
    pub fn gamma3_cycles(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &a in &self.gamma3 {
            if seen.contains(&a) {
                continue;
            }
            count += 1;
            let mut x = a;
            while seen.insert(x) {
                x = self.t[&x];
            }
        }
        count
    }
}

impl fmt::Debug for BDTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl({}) {{", self.n)?;
        for (i, (a, b)) in self.t_pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for BDTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cremmer_gervais_sl3() {
        let t = validate_triple(3, &[1], &[2], &[(1, 2)]).unwrap();
        assert!(t.nilpotent);
        assert_eq!(t, BDTriple::cremmer_gervais(3));
        let o = t.orbit(Root::simple(1));
        assert_eq!(o.kind, OrbitKind::Terminating);
        assert_eq!(o.steps, vec![(Root::simple(1), false), (Root::simple(2), false)]);
    }

    #[test]
    fn flip_sl3() {
        let t = BDTriple::flip(3);
        assert!(!t.nilpotent);
        assert_eq!(t.gamma3, vec![1, 2]);
        let o = t.orbit(Root::new(1, 2));
        assert_eq!(o.kind, OrbitKind::Cyclic { preperiod: 0, period: 1, reversed_over_period: true });
        let o = t.orbit(Root::simple(1));
        assert_eq!(o.kind, OrbitKind::Cyclic { preperiod: 0, period: 2, reversed_over_period: false });
        assert_eq!(o.steps[1].0, Root::simple(2));
    }

    #[test]
    fn inner_product_violation() {
        let e = validate_triple(4, &[1, 3], &[1, 2], &[(1, 2), (3, 1)]).unwrap_err();
        assert_eq!(e, Error::InnerProductViolation(1, 3));
    }

    #[test]
    fn not_bijection() {
        assert!(matches!(validate_triple(4, &[1, 2], &[2, 3], &[(1, 2), (2, 2)]), Err(Error::NotBijection(_))));
        assert!(matches!(validate_triple(4, &[1, 2], &[2, 3], &[(1, 2)]), Err(Error::NotBijection(_))));
    }

    #[test]
    fn classes_follow_t() {
        assert_eq!(BDTriple::cremmer_gervais(4).classes(), vec![vec![1, 2, 3]]);
        assert_eq!(BDTriple::flip(4).classes(), vec![vec![1, 3], vec![2]]);
        assert_eq!(BDTriple::empty(3).classes(), vec![vec![1], vec![2]]);
    }
}
