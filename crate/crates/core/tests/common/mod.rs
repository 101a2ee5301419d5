#![allow(dead_code)]

use l2hodge::algebra::rational::{int, ratio};
use l2hodge::Matrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random invertible matrix with entries `p/q`, `|p| <= 3`, `1 <= q <= 3`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
                    .collect()
            })
            .collect();
        let p = Matrix::from_rows(rows).unwrap();
        if p.is_invertible() {
            return p;
        }
    }
}

pub fn conjugate(rng: &mut impl Rng, m: &Matrix) -> Matrix {
    let p = random_invertible(rng, m.rows());
    m.conjugate_by(&p).unwrap()
}

/// Random partition of `n` as Jordan block sizes, largest first.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut left = n;
    let mut parts = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left);
        parts.push(s);
        left -= s;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn nilpotent_from_blocks(blocks: &[usize]) -> Matrix {
    let parts: Vec<Matrix> = blocks
        .iter()
        .map(|&s| Matrix::jordan_block(&int(0), s))
        .collect();
    Matrix::block_diag(&parts)
}

/// `(k, dim Gr_k)` for `k` descending, zeros omitted: a block of size `s`
/// contributes one dimension in each weight `s-1, s-3, ..., 1-s`.
pub fn graded_oracle(blocks: &[usize]) -> Vec<(i64, usize)> {
    let top = blocks.iter().copied().max().unwrap_or(1) as i64 - 1;
    (-top..=top)
        .rev()
        .map(|k| {
            let d = blocks
                .iter()
                .filter(|&&s| {
                    let s = s as i64;
                    k.abs() < s && (s - 1 - k) % 2 == 0
                })
                .count();
            (k, d)
        })
        .filter(|&(_, d)| d > 0)
        .collect()
}
