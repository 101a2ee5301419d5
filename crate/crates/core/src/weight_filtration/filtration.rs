use serde::{Deserialize, Serialize};

use crate::algebra::rational::format_rational;
use crate::algebra::{Matrix, Rational, Subspace};
use crate::error::{Error, Result};

/// `log T = sum_{k>=1} (-1)^{k+1} (T - I)^k / k`, a finite sum for
/// unipotent `T`.
pub fn nilpotent_log(t: &Matrix) -> Result<Matrix> {
    if !t.is_square() {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    if !t.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = t.rows();
    let x = t.minus_identity();
    let mut acc = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    for k in 1..n.max(2) {
        power = &power * &x;
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale(&Rational::new(sign.into(), (k as i64).into()));
    }
    Ok(acc)
}

/// `exp N = sum_k N^k / k!` for nilpotent `N`.
pub fn nilpotent_exp(nil: &Matrix) -> Result<Matrix> {
    if !nil.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = nil.rows();
    let mut acc = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = (&term * nil).scale(&Rational::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Monodromy weight filtration `W_{-m} ⊆ ... ⊆ W_m` of a nilpotent `N` with
/// `N^{m+1} = 0`, `N^m != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    m: usize,
    /// `levels[i]` is `W_{i - m}`.
    levels: Vec<Subspace>,
}

impl WeightFiltration {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ambient(&self) -> usize {
        self.levels.last().map_or(0, Subspace::ambient)
    }

    /// `W_k`, with `W_k = 0` below `-m` and the whole space above `m`.
    pub fn level(&self, k: i64) -> Subspace {
        let m = self.m as i64;
        if k < -m {
            Subspace::zero(self.ambient())
        } else if k >= m {
            self.levels[self.levels.len() - 1].clone()
        } else {
            self.levels[(k + m) as usize].clone()
        }
    }

    pub fn graded_dim(&self, k: i64) -> usize {
        self.level(k).dim() - self.level(k - 1).dim()
    }

    /// `(k, dim Gr_k)` for `k = m, ..., -m`, zero entries omitted.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        let m = self.m as i64;
        (-m..=m)
            .rev()
            .map(|k| (k, self.graded_dim(k)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// Checks the defining properties against `nil`: the flag is increasing
    /// and exhausts the space, `N W_k ⊆ W_{k-2}`, and `N^k` induces
    /// isomorphisms `Gr_k -> Gr_{-k}`.
    pub fn verify(&self, nil: &Matrix) -> std::result::Result<(), String> {
        let m = self.m as i64;
        let n = nil.rows();
        if self.level(m) != Subspace::full(n) {
            return Err(format!("W_{m} is not the whole space"));
        }
        for k in -m..=m {
            if !self.level(k - 1).is_subspace_of(&self.level(k)) {
                return Err(format!("W_{} not contained in W_{k}", k - 1));
            }
            if !self.level(k).image(nil).is_subspace_of(&self.level(k - 2)) {
                return Err(format!("N(W_{k}) not contained in W_{}", k - 2));
            }
        }
        for k in 0..=m {
            let up = self.graded_dim(k);
            let down = self.graded_dim(-k);
            if up != down {
                return Err(format!("dim Gr_{k} = {up} but dim Gr_-{k} = {down}"));
            }
            let power = nil.pow(k as u64);
            let below = self.level(-k - 1);
            let image = self.level(k).image(&power).sum(&below);
            if image.dim() - below.dim() != up {
                return Err(format!("N^{k}: Gr_{k} -> Gr_-{k} is not injective"));
            }
        }
        Ok(())
    }
}

/// Filtration of `A / B` relative to the induced nilpotent, with
/// `levels[i] = W_{i - top - 1}` pulled back to `A`.
struct Relative {
    top: i64,
    levels: Vec<Subspace>,
}

impl Relative {
    fn at(&self, k: i64) -> &Subspace {
        let idx = (k + self.top + 1).clamp(0, self.levels.len() as i64 - 1);
        &self.levels[idx as usize]
    }
}

/// Deligne's inductive construction on the pair `B ⊆ A` of N-stable
/// subspaces: with `j` minimal such that `N^{j+1} A ⊆ B`, set
/// `W_{j-1} = {x in A : N^j x in B}` and `W_{-j} = N^j A + B`, then recurse
/// on the induced nilpotent of `W_{j-1} / W_{-j}`.
fn relative_filtration(nil: &Matrix, a: &Subspace, b: &Subspace) -> Relative {
    let mut j = 0usize;
    let mut image = a.image(nil);
    while !image.sum(b).is_subspace_of(b) {
        j += 1;
        image = image.image(nil);
    }
    let top = j as i64;
    if j == 0 {
        return Relative {
            top,
            levels: vec![b.clone(), a.clone()],
        };
    }
    let power = nil.pow(j as u64);
    let kernel_part = a.preimage_within(&power, b);
    let image_part = a.image(&power).sum(b);
    let inner = relative_filtration(nil, &kernel_part, &image_part);
    let levels = (-top - 1..=top)
        .map(|k| {
            if k == -top - 1 {
                b.clone()
            } else if k == top {
                a.clone()
            } else if k == top - 1 {
                kernel_part.clone()
            } else if k == -top {
                image_part.clone()
            } else {
                inner.at(k).clone()
            }
        })
        .collect();
    Relative { top, levels }
}

/// Monodromy weight filtration of a nilpotent matrix, centered at 0.
pub fn weight_filtration(nil: &Matrix) -> Result<WeightFiltration> {
    if !nil.is_square() {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let index = nil.nilpotency_index().ok_or(Error::NotNilpotent)?;
    let n = nil.rows();
    let m = index - 1;
    let rel = relative_filtration(nil, &Subspace::full(n), &Subspace::zero(n));
    debug_assert_eq!(rel.top, m as i64);
    let levels = (-(m as i64)..=m as i64)
        .map(|k| rel.at(k).clone())
        .collect();
    Ok(WeightFiltration { m, levels })
}

/// Closed form `W_k = sum_{j >= max(0, -k)} N^j (ker N^{k+2j+1})`, kept as
/// an independent route for cross-checks.
pub fn weight_filtration_closed_form(nil: &Matrix, k: i64) -> Subspace {
    let n = nil.rows();
    let mut acc = Subspace::zero(n);
    let start = (-k).max(0);
    for j in start..=n as i64 {
        let exp = k + 2 * j + 1;
        if exp <= 0 {
            continue;
        }
        let kernel = Subspace::kernel(&nil.pow(exp as u64));
        acc = acc.sum(&kernel.image(&nil.pow(j as u64)));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedJson {
    pub k: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub k: i64,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationJson {
    pub m: usize,
    pub graded: Vec<GradedJson>,
    pub levels: Vec<LevelJson>,
}

impl From<&WeightFiltration> for FiltrationJson {
    fn from(w: &WeightFiltration) -> Self {
        let m = w.m as i64;
        FiltrationJson {
            m: w.m,
            graded: w
                .graded_dims()
                .into_iter()
                .map(|(k, dim)| GradedJson { k, dim })
                .collect(),
            levels: (-m..=m)
                .map(|k| LevelJson {
                    k,
                    basis: w
                        .level(k)
                        .basis()
                        .iter()
                        .map(|v| v.iter().map(format_rational).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}
