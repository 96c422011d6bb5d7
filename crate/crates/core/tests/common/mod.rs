//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's decoders or covering routines.
#![allow(dead_code)]

use std::collections::HashMap;

use lsdc::fq::{FieldSpec, FqMatrix, FqVector};
use rand::Rng;

pub fn gf(q: u32) -> FieldSpec {
    FieldSpec::new(q).unwrap()
}

/// Every vector of GF(q)^n, first entry most significant.
pub fn all_vectors(q: u32, n: usize) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (i % q as usize) as u32;
                i /= q as usize;
            }
            v
        })
        .collect()
}

pub fn wt(x: &[u32]) -> usize {
    x.iter().filter(|&&v| v != 0).count()
}

pub fn dist(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// `m x` with plain integer arithmetic.
pub fn apply(m: &FqMatrix, x: &[u32]) -> Vec<u32> {
    let q = m.field().q() as u64;
    (0..m.rows())
        .map(|r| {
            let s: u64 = m.row_slice(r).iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum();
            (s % q) as u32
        })
        .collect()
}

/// `a b` with plain integer arithmetic.
pub fn product(a: &FqMatrix, b: &FqMatrix) -> Vec<Vec<u32>> {
    let q = a.field().q() as u64;
    (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| {
                    let s: u64 = (0..a.cols()).map(|t| a.get(i, t) as u64 * b.get(t, j) as u64).sum();
                    (s % q) as u32
                })
                .collect()
        })
        .collect()
}

/// Kernel of `h` by enumeration.
pub fn kernel(h: &FqMatrix) -> Vec<Vec<u32>> {
    all_vectors(h.field().q(), h.cols())
        .into_iter()
        .filter(|x| apply(h, x).iter().all(|&v| v == 0))
        .collect()
}

pub fn distance_to(x: &[u32], code: &[Vec<u32>]) -> usize {
    code.iter().map(|c| dist(x, c)).min().expect("codes contain zero")
}

/// Minimum weight of each reachable syndrome of `h`, by enumeration.
pub fn min_weight_per_syndrome(h: &FqMatrix) -> HashMap<Vec<u32>, usize> {
    let mut best: HashMap<Vec<u32>, usize> = HashMap::new();
    for x in all_vectors(h.field().q(), h.cols()) {
        let w = wt(&x);
        let e = best.entry(apply(h, &x)).or_insert(w);
        *e = (*e).min(w);
    }
    best
}

pub fn random_matrix<R: Rng>(rng: &mut R, q: u32, rows: usize, cols: usize) -> FqMatrix {
    FqMatrix::from_flat(gf(q), rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..q)).collect()).unwrap()
}

pub fn random_full_rank<R: Rng>(rng: &mut R, q: u32, rows: usize, cols: usize) -> FqMatrix {
    loop {
        let m = random_matrix(rng, q, rows, cols);
        if m.rank() == rows {
            return m;
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, q: u32, n: usize) -> FqVector {
    FqVector::new(gf(q), (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap()
}

pub fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `V_q(n, r)` as a plain sum of binomial terms.
pub fn ball(n: usize, r: usize, q: u32) -> u128 {
    (0..=r.min(n)).map(|i| binom(n as u64, i as u64) * (q as u128 - 1).pow(i as u32)).sum()
}
