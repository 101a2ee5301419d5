//! Rational realizations of the allowed and excluded local monodromy
//! normal forms, and the three hypergeometric families that can be
//! written down with explicit matrices.
//!
//! A Jordan block with a non-real eigenvalue `λ` is realized over the
//! rationals by the companion matrix of `Φ_d^s`, which carries one
//! `s`-block for every primitive `d`-th root of unity.

use crate::algebra::rational::int;
use crate::algebra::{cyclotomic, Matrix};
use crate::error::RejectReason;
use crate::family::{FamilyDescriptor, MarkedPoint};
use crate::monodromy::{Kind, Weight};

/// `s x s` unipotent Jordan block.
pub fn unipotent_block(s: usize) -> Matrix {
    Matrix::jordan_block(&int(1), s)
}

/// `s x s` Jordan block with eigenvalue `-1`.
pub fn negative_block(s: usize) -> Matrix {
    Matrix::jordan_block(&int(-1), s)
}

/// Companion matrix of `Φ_d^s`.
pub fn cyclotomic_block(d: u64, s: u32) -> Matrix {
    Matrix::companion(&cyclotomic(d).pow(s))
}

/// What a normal form must classify to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Kind(Kind),
    Rejected(RejectReason),
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub name: &'static str,
    pub weight: Weight,
    pub matrix: Matrix,
    pub expected: Expected,
}

fn form(name: &'static str, weight: Weight, blocks: Vec<Matrix>, expected: Expected) -> NormalForm {
    NormalForm {
        name,
        weight,
        matrix: Matrix::block_diag(&blocks),
        expected,
    }
}

/// Every normal form allowed by polarization and quasi-unipotency, one rational
/// realization per shape of eigenvalue pattern, plus the two unipotent
/// forms excluded by polarization.
pub fn normal_forms() -> Vec<NormalForm> {
    use Expected::{Kind as K, Rejected as R};
    let (w1, w2, w3) = (Weight::ONE, Weight::TWO, Weight::THREE);
    let u = unipotent_block;
    let neg = negative_block;
    let c = cyclotomic_block;
    vec![
        form("w1 unipotent 2-block", w1, vec![u(2)], K(Kind::I)),
        form("w1 -1 2-block", w1, vec![neg(2)], K(Kind::II)),
        form("w1 -I", w1, vec![neg(1), neg(1)], K(Kind::II)),
        form("w1 order 3", w1, vec![c(3, 1)], K(Kind::II)),
        form("w1 order 4", w1, vec![c(4, 1)], K(Kind::II)),
        form("w1 order 6", w1, vec![c(6, 1)], K(Kind::II)),
        form("w2 unipotent 3-block", w2, vec![u(3)], K(Kind::I)),
        form("w2 -1 3-block", w2, vec![neg(3)], K(Kind::II)),
        form("w2 -I", w2, vec![neg(1), neg(1), neg(1)], K(Kind::II)),
        form("w2 order 3 + -1", w2, vec![c(3, 1), neg(1)], K(Kind::II)),
        form("w2 order 4 + -1", w2, vec![c(4, 1), neg(1)], K(Kind::II)),
        form("w2 order 6 + -1", w2, vec![c(6, 1), neg(1)], K(Kind::II)),
        form("w2 -1 2-block + -1", w2, vec![neg(2), neg(1)], K(Kind::II)),
        form(
            "w2 unipotent 2-block + 1",
            w2,
            vec![u(2), u(1)],
            R(RejectReason::ExcludedByPolarization),
        ),
        form("w3 T_I", w3, vec![u(1), u(2), u(1)], K(Kind::I)),
        form("w3 T_II", w3, vec![u(2), u(2)], K(Kind::II)),
        form("w3 T_III", w3, vec![u(4)], K(Kind::III)),
        form("w3 order 5", w3, vec![c(5, 1)], K(Kind::IV)),
        form("w3 order 8", w3, vec![c(8, 1)], K(Kind::IV)),
        form("w3 order 10", w3, vec![c(10, 1)], K(Kind::IV)),
        form("w3 order 12", w3, vec![c(12, 1)], K(Kind::IV)),
        form(
            "w3 order 3 + order 4",
            w3,
            vec![c(3, 1), c(4, 1)],
            K(Kind::IV),
        ),
        form(
            "w3 -I",
            w3,
            vec![neg(1), neg(1), neg(1), neg(1)],
            K(Kind::IV),
        ),
        form(
            "w3 -1 + -1 2-block + -1",
            w3,
            vec![neg(1), neg(2), neg(1)],
            K(Kind::IV),
        ),
        form(
            "w3 -1 2-block + order 3",
            w3,
            vec![neg(2), c(3, 1)],
            K(Kind::IV),
        ),
        form("w3 two -1 2-blocks", w3, vec![neg(2), neg(2)], K(Kind::IV)),
        form("w3 order 3 2-blocks", w3, vec![c(3, 2)], K(Kind::IV)),
        form("w3 order 4 2-blocks", w3, vec![c(4, 2)], K(Kind::IV)),
        form("w3 -1 3-block + -1", w3, vec![neg(3), neg(1)], K(Kind::IV)),
        form("w3 -1 4-block", w3, vec![neg(4)], K(Kind::IV)),
        form(
            "w3 unipotent 3-block + 1",
            w3,
            vec![u(3), u(1)],
            R(RejectReason::ExcludedByPolarization),
        ),
    ]
}

fn matrix_point(label: &str, t: Matrix, ramified: bool) -> MarkedPoint {
    MarkedPoint::matrix(label, t).ramified(ramified)
}

/// Weight-3 family over `P^1` with MUM at 0, a conifold point at 1 and
/// the given monodromy at infinity, before any base change.
fn hypergeometric(infinity: Matrix, a: i64, b: i64) -> FamilyDescriptor {
    FamilyDescriptor::new(
        Weight::THREE,
        0,
        vec![
            matrix_point("0", unipotent_block(4), true),
            matrix_point(
                "1",
                Matrix::block_diag(&[u1(), unipotent_block(2), u1()]),
                false,
            ),
            matrix_point("inf", infinity, true),
        ],
    )
    .with_degrees(a, Some(b))
}

fn u1() -> Matrix {
    unipotent_block(1)
}

/// Quintic threefold family: `Φ_5` at infinity.
pub fn quintic() -> FamilyDescriptor {
    hypergeometric(cyclotomic_block(5, 1), 0, 0)
}

/// Complete intersection of four quadrics: a `-1` 4-block at infinity.
pub fn four_quadrics() -> FamilyDescriptor {
    hypergeometric(-&unipotent_block(4), 0, 0)
}

/// Complete intersection of two cubics: `(x^2+x+1)^2` at infinity.
pub fn two_cubics() -> FamilyDescriptor {
    hypergeometric(cyclotomic_block(3, 2), 0, 0)
}
