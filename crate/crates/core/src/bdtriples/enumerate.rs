use itertools::Itertools;
use rayon::prelude::*;

use super::triple::{validate_triple, BDTriple};
use crate::error::{Error, Result};

pub const DEFAULT_BOUND: usize = 6;

pub fn enumerate_triples(n: usize, nilpotent_only: bool) -> Result<Vec<BDTriple>> {
    enumerate_triples_bounded(n, nilpotent_only, DEFAULT_BOUND)
}

/// All generalized triples of sl(n), ordered by (|Γ1|, Γ1, Γ2, images of Γ1).
pub fn enumerate_triples_bounded(n: usize, nilpotent_only: bool, bound: usize) -> Result<Vec<BDTriple>> {
    if n > bound {
        return Err(Error::BoundExceeded(n, bound));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("n = {n} is below 2")));
    }
    let simple: Vec<usize> = (1..n).collect();
    let mut pairs = Vec::new();
    for k in 0..n {
        for g1 in simple.iter().copied().combinations(k) {
            for g2 in simple.iter().copied().combinations(k) {
                pairs.push((g1.clone(), g2));
            }
        }
    }
    let found: Vec<Vec<BDTriple>> = pairs
        .par_iter()
        .map(|(g1, g2)| {
            g2.iter()
                .copied()
                .permutations(g2.len())
                .filter_map(|img| {
                    let t: Vec<(usize, usize)> = g1.iter().copied().zip(img).collect();
                    validate_triple(n, g1, g2, &t).ok()
                })
                .filter(|t| !nilpotent_only || t.nilpotent)
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}
