use num_traits::Zero;

use super::matrix::Matrix;
use super::rational::Rational;

/// A linear subspace of `Q^n`, stored as the nonzero rows of a reduced row
/// echelon basis so that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::identity(ambient).row_vectors())
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let m = Matrix::from_rows(vectors).expect("vectors of equal length");
        let (r, pivots) = m.rref();
        Self {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    /// Right kernel of `map`.
    pub fn kernel(map: &Matrix) -> Self {
        Self::span(map.cols(), map.kernel())
    }

    /// Column space of `map`.
    pub fn image_of(map: &Matrix) -> Self {
        Self::span(map.rows(), map.transpose().row_vectors())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ambient, vectors)
    }

    /// `{ map(v) : v in self }`.
    pub fn image(&self, map: &Matrix) -> Self {
        Self::span(
            map.rows(),
            self.basis.iter().map(|v| map.apply(v)).collect(),
        )
    }

    /// Linear functionals vanishing on the subspace, as row vectors.
    fn annihilator(&self) -> Vec<Vec<Rational>> {
        if self.basis.is_empty() {
            return Matrix::identity(self.ambient).row_vectors();
        }
        Matrix::from_rows(self.basis.clone())
            .expect("basis rows")
            .kernel()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        if eqs.is_empty() {
            return Self::full(self.ambient);
        }
        Self::kernel(&Matrix::from_rows(eqs).expect("functionals"))
    }

    /// `{ v in self : map(v) in target }`.
    pub fn preimage_within(&self, map: &Matrix, target: &Self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let eqs = target.annihilator();
        if eqs.is_empty() {
            return self.clone();
        }
        // Coordinates c with (ann * map * B^T) c = 0, where B^T has the basis
        // as columns.
        let basis_cols = Matrix::from_rows(self.basis.clone())
            .expect("basis")
            .transpose();
        let ann = Matrix::from_rows(eqs).expect("functionals");
        let cond = &(&ann * map) * &basis_cols;
        let coords = cond.kernel();
        Self::span(
            self.ambient,
            coords.iter().map(|c| basis_cols.apply(c)).collect(),
        )
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).expect("vectors").rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains_vector(v))
    }
}
