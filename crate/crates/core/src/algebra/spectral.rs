//! Spectral data of rational matrices without leaving the rationals.
//!
//! Roots of unity are never represented. Every eigenvalue question is
//! answered by ranks of `Phi_d(M)^k`, where `Phi_d` is a cyclotomic
//! polynomial.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{ClassificationError, Error, RejectReason, Result};

/// Uniform bound on the order of the semisimple part of a quasi-unipotent
/// matrix of rank at most [`MAX_QUASI_UNIPOTENT_RANK`]. A primitive d-th
/// root of unity has degree `phi(d)`, so it can occur only when
/// `phi(d) <= n`. For `n <= 6` this leaves
/// `d in {1,..,10, 12, 14, 18}`, whose lcm is 2520.
pub const QUASI_UNIPOTENT_BOUND: u64 = 2520;

/// Largest rank for which [`QUASI_UNIPOTENT_BOUND`] is valid.
pub const MAX_QUASI_UNIPOTENT_RANK: usize = 6;

/// Characteristic polynomial `det(xI - M)` by the division-free
/// Samuelson-Berkowitz recursion.
pub fn char_poly(m: &Matrix) -> Polynomial {
    assert!(m.is_square(), "char_poly of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Polynomial::one();
    }
    // Coefficients highest degree first.
    let mut vec: Vec<Rational> = vec![num_traits::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        // Leading r x r block, the row and column that border it, and the
        // new diagonal entry.
        let lead = sub_matrix(m, r);
        let row: Vec<_> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let col: Vec<_> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let diag = m.get(r, r).clone();

        let mut toeplitz: Vec<Rational> = Vec::with_capacity(r + 2);
        toeplitz.push(num_traits::one());
        toeplitz.push(-diag);
        let mut v = col;
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&v)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            toeplitz.push(-dot);
            v = lead.apply(&v);
        }

        let next: Vec<_> = (0..=r + 1)
            .map(|i| {
                (0..=r)
                    .filter(|&j| j <= i)
                    .fold(Rational::zero(), |acc, j| acc + &toeplitz[i - j] * &vec[j])
            })
            .collect();
        vec = next;
    }
    vec.reverse();
    Polynomial::new(vec)
}

fn sub_matrix(m: &Matrix, r: usize) -> Matrix {
    let rows = (0..r)
        .map(|i| (0..r).map(|j| m.get(i, j).clone()).collect())
        .collect();
    Matrix::from_rows(rows).expect("square block")
}

/// Euler's totient.
pub fn euler_phi(d: u64) -> u64 {
    assert!(d >= 1);
    let mut n = d;
    let mut out = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The d-th cyclotomic polynomial, obtained from `x^d - 1` by exact
/// division by `Phi_e` for every proper divisor `e` of `d`.
pub fn cyclotomic(d: u64) -> Polynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut p = &Polynomial::monomial(d as usize) - &Polynomial::one();
    for e in divisors(d).into_iter().filter(|&e| e < d) {
        p = p
            .exact_div(&cyclotomic(e))
            .expect("Phi_e divides x^d - 1 for e | d");
    }
    p
}

fn check_rank_for_order(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    if m.rows() > MAX_QUASI_UNIPOTENT_RANK {
        return Err(Error::Dimension(format!(
            "rank {} exceeds the supported maximum {MAX_QUASI_UNIPOTENT_RANK}",
            m.rows()
        )));
    }
    if !m.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Minimal `k >= 1` such that `M^k` is unipotent.
///
/// `M^2520 - I` must be nilpotent; the minimal exponent is then found by
/// stripping prime factors of 2520 while the power stays unipotent. The
/// exponents making `M^k` unipotent are exactly the multiples of the
/// semisimple order, so this agrees with scanning the divisors of 2520 in
/// increasing order.
pub fn quasi_unipotency_order(m: &Matrix) -> Result<u64> {
    check_rank_for_order(m)?;
    if !m.pow(QUASI_UNIPOTENT_BOUND).is_unipotent() {
        return Err(ClassificationError::new(
            RejectReason::NotQuasiUnipotent,
            format!("M^{QUASI_UNIPOTENT_BOUND} - I is not nilpotent"),
        )
        .into());
    }
    let mut k = QUASI_UNIPOTENT_BOUND;
    for p in [2u64, 3, 5, 7] {
        while k.is_multiple_of(p) && m.pow(k / p).is_unipotent() {
            k /= p;
        }
    }
    Ok(k)
}

/// One Galois orbit of Jordan blocks: for each primitive `order`-th root of
/// unity there is one block of size `size`. The orbit therefore accounts for
/// `size * phi(order)` dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JordanBlock {
    pub order: u64,
    pub size: usize,
}

/// Jordan data of a quasi-unipotent matrix, recovered from rank sequences
/// `r_k = rank(Phi_d(M)^k)`: the number of block orbits of size `>= k` is
/// `(r_{k-1} - r_k) / phi(d)`. Sorted by order, then by decreasing size.
pub fn jordan_structure(m: &Matrix) -> Result<Vec<JordanBlock>> {
    let order = quasi_unipotency_order(m)?;
    Ok(jordan_structure_with_order(m, order))
}

/// [`jordan_structure`] for a matrix whose quasi-unipotency order is
/// already known.
pub fn jordan_structure_with_order(m: &Matrix, order: u64) -> Vec<JordanBlock> {
    let n = m.rows();
    let mut out = Vec::new();
    for d in divisors(order) {
        let phi = euler_phi(d) as usize;
        if phi > n {
            continue;
        }
        let base = cyclotomic(d).eval_matrix(m);
        let mut ranks = vec![n];
        let mut power = Matrix::identity(n);
        for _ in 0..n {
            power = &power * &base;
            ranks.push(power.rank());
        }
        let at_least = |k: usize| (ranks[k - 1] - ranks[k]) / phi;
        for k in 1..=n {
            let exactly = at_least(k) - if k < n { at_least(k + 1) } else { 0 };
            for _ in 0..exactly {
                out.push(JordanBlock { order: d, size: k });
            }
        }
    }
    out.sort_by(|a, b| a.order.cmp(&b.order).then(b.size.cmp(&a.size)));
    out
}

/// Algebraic multiplicity of the eigenvalue 1.
pub fn eigenvalue_one_multiplicity(m: &Matrix) -> usize {
    let n = m.rows();
    n - m.minus_identity().pow(n as u64).rank()
}

/// Least common multiple of the orders in a Jordan structure.
pub fn order_of_blocks(blocks: &[JordanBlock]) -> u64 {
    blocks.iter().fold(1, |acc, b| acc.lcm(&b.order))
}

/// Multiplicity of `x = 1` as a root of `p`.
pub fn root_one_multiplicity(p: &Polynomial) -> usize {
    let linear = Polynomial::from_ints(&[-1, 1]);
    let mut q = p.clone();
    let mut k = 0;
    while !q.is_zero() {
        match q.exact_div(&linear) {
            Some(next) => {
                q = next;
                k += 1;
            }
            None => break,
        }
    }
    k
}
