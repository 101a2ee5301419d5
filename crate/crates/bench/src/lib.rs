//! Inputs shared by the benchmarks.

use l2hodge::{fixtures, Matrix};

/// A fixed dense conjugator with small entries and determinant 1.
pub fn conjugator(n: usize) -> Matrix {
    let upper = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => ((i * 3 + j * 5) % 5) as i64 - 2,
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let u = Matrix::from_ints(&upper.iter().map(Vec::as_slice).collect::<Vec<_>>());
    &u.transpose() * &u
}

/// `P M P⁻¹` with a dense `P`, so no entry stays trivially zero.
pub fn dense(m: &Matrix) -> Matrix {
    m.conjugate_by(&conjugator(m.rows()))
        .expect("conjugator is unimodular")
}

/// Dense conjugates of every normal form.
pub fn dense_normal_forms() -> Vec<(String, l2hodge::Weight, Matrix)> {
    fixtures::normal_forms()
        .into_iter()
        .map(|f| (f.name.to_string(), f.weight, dense(&f.matrix)))
        .collect()
}
