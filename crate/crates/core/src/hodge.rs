//! Closed-form Hodge numbers of `H¹(S̄, j_*V)` for local systems with all
//! Hodge numbers equal to one, plus the check-sum totals, the Arakelov
//! bound and parabolic degrees.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{floor_i64, int};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::monodromy::{Kind, Weight};
use crate::wire;

/// Number of points of `D` of each type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegenerationCounts {
    #[serde(rename = "I", default)]
    pub n_i: u32,
    #[serde(rename = "II", default)]
    pub n_ii: u32,
    #[serde(rename = "III", default)]
    pub n_iii: u32,
    #[serde(rename = "IV", default)]
    pub n_iv: u32,
}

impl DegenerationCounts {
    pub fn new(n_i: u32, n_ii: u32, n_iii: u32, n_iv: u32) -> Self {
        Self {
            n_i,
            n_ii,
            n_iii,
            n_iv,
        }
    }

    pub fn record(&mut self, kind: Kind) {
        match kind {
            Kind::Trivial => {}
            Kind::I => self.n_i += 1,
            Kind::II => self.n_ii += 1,
            Kind::III => self.n_iii += 1,
            Kind::IV => self.n_iv += 1,
        }
    }

    pub fn get(&self, kind: Kind) -> u32 {
        match kind {
            Kind::Trivial => 0,
            Kind::I => self.n_i,
            Kind::II => self.n_ii,
            Kind::III => self.n_iii,
            Kind::IV => self.n_iv,
        }
    }

    /// `♯D`.
    pub fn total(&self) -> u32 {
        self.n_i + self.n_ii + self.n_iii + self.n_iv
    }

    pub fn check_weight(&self, weight: Weight) -> Result<()> {
        if weight.get() < 3 && (self.n_iii > 0 || self.n_iv > 0) {
            return Err(Error::Precondition(format!(
                "types III and IV do not occur in weight {weight}"
            )));
        }
        Ok(())
    }

    fn signed(&self) -> [i64; 4] {
        [self.n_i, self.n_ii, self.n_iii, self.n_iv].map(i64::from)
    }
}

/// Input to the closed formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeInput {
    /// Genus of `S̄`.
    pub g: u32,
    /// `deg E^{m,0}`.
    #[serde(with = "wire::int")]
    pub a: i64,
    /// `deg E^{2,1}`; weight 3 only.
    #[serde(
        default,
        with = "wire::opt_int",
        skip_serializing_if = "Option::is_none"
    )]
    pub b: Option<i64>,
    #[serde(default)]
    pub counts: DegenerationCounts,
    /// One flag per Higgs arrow `E^{p,m-p} -> E^{p-1,m-p+1} ⊗ Ω¹(log D)`,
    /// starting at `p = m`. Empty means every arrow is nonzero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theta_nonzero: Vec<bool>,
    #[serde(default = "default_true")]
    pub irreducible: bool,
    /// `♯D`, used by the decomposed case; defaults to `|II| + |IV|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_d: Option<u32>,
}

fn default_true() -> bool {
    true
}

impl HodgeInput {
    pub fn new(g: u32, a: i64, b: Option<i64>, counts: DegenerationCounts, weight: Weight) -> Self {
        Self {
            g,
            a,
            b,
            counts,
            theta_nonzero: vec![true; usize::from(weight.get())],
            irreducible: true,
            num_d: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeComponent {
    pub p: u32,
    pub q: u32,
    pub h: u64,
}

/// Hodge numbers of a pure Hodge structure of weight `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeNumbers {
    pub weight: u32,
    /// Ordered by `q = 0, ..., weight`.
    pub components: Vec<HodgeComponent>,
    pub total: u64,
    /// Auxiliary degrees derived along the way (e.g. `b_prime`).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derived: BTreeMap<String, i64>,
}

impl HodgeNumbers {
    /// Builds from values listed by `q = 0, ..., weight`. Negative values
    /// mean the input cannot come from an actual local system.
    pub fn from_values(weight: u32, values: &[i64]) -> Result<Self> {
        assert_eq!(values.len() as u32, weight + 1);
        if let Some((q, v)) = values.iter().enumerate().find(|(_, v)| **v < 0) {
            return Err(Error::InconsistentInput(format!(
                "h^{{{},{q}}} = {v} is negative",
                weight as usize - q
            )));
        }
        let components: Vec<HodgeComponent> = values
            .iter()
            .enumerate()
            .map(|(q, &h)| HodgeComponent {
                p: weight - q as u32,
                q: q as u32,
                h: h as u64,
            })
            .collect();
        let numbers = Self {
            weight,
            total: components.iter().map(|c| c.h).sum(),
            components,
            derived: BTreeMap::new(),
        };
        debug_assert!(numbers.is_self_dual());
        Ok(numbers)
    }

    pub fn h(&self, p: u32, q: u32) -> u64 {
        self.components
            .iter()
            .find(|c| c.p == p && c.q == q)
            .map_or(0, |c| c.h)
    }

    /// Values by `q = 0, ..., weight`.
    pub fn values(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.h).collect()
    }

    pub fn is_self_dual(&self) -> bool {
        self.components.iter().all(|c| self.h(c.q, c.p) == c.h)
    }

    pub fn with_derived(mut self, key: &str, value: i64) -> Self {
        self.derived.insert(key.to_owned(), value);
        self
    }
}

/// `h¹(j_*V)` from the genus and the type counts alone.
pub fn check_sum(weight: Weight, g: u32, counts: &DegenerationCounts) -> i64 {
    let g = i64::from(g);
    let [n1, n2, n3, n4] = counts.signed();
    match weight.get() {
        1 => 4 * g - 4 + n1 + 2 * n2,
        2 => 6 * g - 6 + 2 * n1 + 3 * n2,
        _ => 8 * g - 8 + n1 + 2 * n2 + 3 * n3 + 4 * n4,
    }
}

fn require_theta(input: &HodgeInput, weight: Weight) -> Result<()> {
    let m = usize::from(weight.get());
    if !input.theta_nonzero.is_empty() && input.theta_nonzero.len() != m {
        return Err(Error::Precondition(format!(
            "expected {m} theta flags, got {}",
            input.theta_nonzero.len()
        )));
    }
    if let Some(i) = input.theta_nonzero.iter().position(|&t| !t) {
        let p = m - i;
        return Err(Error::Precondition(format!(
            "theta: E^{{{p},{}}} -> E^{{{},{}}} must be nonzero",
            m - p,
            p - 1,
            m - p + 1
        )));
    }
    if !input.irreducible {
        return Err(Error::Precondition(
            "local system must be irreducible".into(),
        ));
    }
    Ok(())
}

fn require_positive(label: &str, value: i64) -> Result<()> {
    if value <= 0 {
        return Err(Error::Precondition(format!(
            "{label} > 0 fails ({label} = {value})"
        )));
    }
    Ok(())
}

fn assert_total(numbers: &HodgeNumbers, expected: i64) -> Result<()> {
    if numbers.total as i64 != expected {
        return Err(Error::InconsistentInput(format!(
            "component sum {} differs from check-sum {expected}",
            numbers.total
        )));
    }
    Ok(())
}

/// Elliptic case: `h^{2,0} = g-1+a+|II|`, `h^{1,1} = 2g-2-2a+|I|`.
pub fn hodge_weight1(input: &HodgeInput) -> Result<HodgeNumbers> {
    let weight = Weight::ONE;
    input.counts.check_weight(weight)?;
    require_theta(input, weight)?;
    let (g, a) = (i64::from(input.g), input.a);
    let [n1, n2, ..] = input.counts.signed();
    require_positive("a + |II|", a + n2)?;
    let h20 = g - 1 + a + n2;
    let h11 = 2 * g - 2 - 2 * a + n1;
    let numbers = HodgeNumbers::from_values(2, &[h20, h11, h20])?;
    assert_total(&numbers, check_sum(weight, input.g, &input.counts))?;
    Ok(numbers.with_derived("a_prime", a + n2))
}

/// K3 case: `h^{3,0} = g-1+a+|II|`, `h^{2,1} = 2g-2-a+|I|+|II|/2`, and
/// `deg E^{1,1} = -|II|/2`.
pub fn hodge_weight2(input: &HodgeInput) -> Result<HodgeNumbers> {
    let weight = Weight::TWO;
    input.counts.check_weight(weight)?;
    require_theta(input, weight)?;
    let (g, a) = (i64::from(input.g), input.a);
    let [n1, n2, ..] = input.counts.signed();
    require_positive("a + |II|", a + n2)?;
    if n2 % 2 != 0 {
        return Err(Error::InconsistentInput(format!(
            "|II| = {n2} is odd but deg E^{{1,1}} = -|II|/2 must be an integer"
        )));
    }
    let b = -n2 / 2;
    if let Some(given) = input.b {
        if given != b {
            return Err(Error::InconsistentInput(format!(
                "deg E^{{1,1}} = {given} but -|II|/2 = {b}"
            )));
        }
    }
    let h30 = g - 1 + a + n2;
    let h21 = 2 * g - 2 - a + n1 + n2 / 2;
    let numbers = HodgeNumbers::from_values(3, &[h30, h21, h21, h30])?;
    assert_total(&numbers, check_sum(weight, input.g, &input.counts))?;
    Ok(numbers.with_derived("b", b).with_derived("a_prime", a + n2))
}

/// Calabi-Yau case: `h^{4,0} = g-1+a+|IV|`,
/// `h^{3,1} = 2g-2+b-a+|II|+|III|+|IV|`, `h^{2,2} = |I|+|III|-2b+2g-2`.
pub fn hodge_weight3(input: &HodgeInput) -> Result<HodgeNumbers> {
    let weight = Weight::THREE;
    require_theta(input, weight)?;
    let b = input
        .b
        .ok_or_else(|| Error::Precondition("weight 3 needs b = deg E^{2,1}".into()))?;
    let (g, a) = (i64::from(input.g), input.a);
    let [n1, n2, n3, n4] = input.counts.signed();
    require_positive("a + |IV|", a + n4)?;
    let h40 = g - 1 + a + n4;
    let h31 = 2 * g - 2 + b - a + n2 + n3 + n4;
    let h22 = n1 + n3 - 2 * b + 2 * g - 2;
    let numbers = HodgeNumbers::from_values(4, &[h40, h31, h22, h31, h40])?;
    assert_total(&numbers, check_sum(weight, input.g, &input.counts))?;
    Ok(numbers
        .with_derived("a_prime", a + n4)
        .with_derived("b_prime", b + n4))
}

/// `h⁰` of a line bundle on a genus-`g` curve, where the degree alone
/// determines it: always on genus 0, otherwise outside `[0, 2g-2]`.
pub fn h0_from_degree(g: u32, degree: i64) -> Result<u64> {
    let gi = i64::from(g);
    if g == 0 {
        return Ok((degree + 1).max(0) as u64);
    }
    if degree < 0 {
        Ok(0)
    } else if degree > 2 * gi - 2 {
        Ok((degree + 1 - gi) as u64)
    } else {
        Err(Error::IndeterminateFromDegree { degree, genus: g })
    }
}

/// `h¹` of a line bundle, by Serre duality from [`h0_from_degree`].
pub fn h1_from_degree(g: u32, degree: i64) -> Result<u64> {
    h0_from_degree(g, 2 * i64::from(g) - 2 - degree)
}

/// Decomposed weight-3 Higgs bundles (outer arrows isomorphisms, middle
/// arrow zero): `h^{4,0} = g-1+a+|IV|`, `h^{3,1} = 0`,
/// `h^{2,2} = 2 h⁰(L)` with `deg L = 2g-2-b`. Requires
/// `a = b + 2g - 2 + ♯D`.
pub fn hodge_decomposed(
    g: u32,
    a: i64,
    b: i64,
    n_ii: u32,
    n_iv: u32,
    num_d: u32,
) -> Result<HodgeNumbers> {
    let gi = i64::from(g);
    let (n2, n4, nd) = (i64::from(n_ii), i64::from(n_iv), i64::from(num_d));
    require_positive("a + |IV|", a + n4)?;
    if nd != n2 + n4 {
        return Err(Error::Precondition(format!(
            "♯D = {nd} but |II| + |IV| = {}",
            n2 + n4
        )));
    }
    if a != b + 2 * gi - 2 + nd {
        return Err(Error::InconsistentInput(format!(
            "a = {a} violates a = b + 2g - 2 + ♯D = {}",
            b + 2 * gi - 2 + nd
        )));
    }
    let h40 = gi - 1 + a + n4;
    let h22 = 2 * h0_from_degree(g, 2 * gi - 2 - b)? as i64;
    let numbers = HodgeNumbers::from_values(4, &[h40, 0, h22, 0, h40])?;
    Ok(numbers
        .with_derived("a_prime", a + n4)
        .with_derived("b_prime", b + n4)
        .with_derived(
            "check_sum",
            check_sum(Weight::THREE, g, &DegenerationCounts::new(0, n_ii, 0, n_iv)),
        ))
}

/// Hodge numbers of `H¹(S̄, j_*V)` by weight, dispatching to the closed
/// formula for that weight.
pub fn hodge_numbers(weight: Weight, input: &HodgeInput) -> Result<HodgeNumbers> {
    match weight.get() {
        1 => hodge_weight1(input),
        2 => hodge_weight2(input),
        _ => hodge_weight3(input),
    }
}

/// Jost-Zuo bound for a real VHS of odd weight `k = 2l + 1`:
/// `deg E^{k,0} <= (½(h^{k-l,l} - h₀^{k-l,l}) + Σ_{j<l} (h^{k-j,j} - h₀^{k-j,j})) (2g-2+♯D)`.
///
/// `ranks[j]` is `h^{k-j,j}` and `kernel_ranks[j]` the rank of the kernel
/// of θ on it, for `j = 0, ..., l`.
pub fn arakelov_bound(
    k: u32,
    g: u32,
    num_d: u32,
    ranks: &[u32],
    kernel_ranks: &[u32],
) -> Result<Rational> {
    if k.is_multiple_of(2) {
        return Err(Error::Precondition(format!("weight k = {k} must be odd")));
    }
    let l = (k / 2) as usize;
    if ranks.len() != l + 1 || kernel_ranks.len() != l + 1 {
        return Err(Error::Precondition(format!(
            "need {} ranks and kernel ranks for k = {k}",
            l + 1
        )));
    }
    if let Some(j) = (0..=l).find(|&j| kernel_ranks[j] > ranks[j]) {
        return Err(Error::Precondition(format!(
            "kernel rank {} exceeds rank {} at j = {j}",
            kernel_ranks[j], ranks[j]
        )));
    }
    let flat = |j: usize| int(i64::from(ranks[j]) - i64::from(kernel_ranks[j]));
    let mut coefficient = flat(l) / int(2);
    for j in 0..l {
        coefficient += flat(j);
    }
    Ok(coefficient * int(2 * i64::from(g) - 2 + i64::from(num_d)))
}

/// Outcome of comparing a degree with the Arakelov bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArakelovVerdict {
    #[serde(with = "wire::rational")]
    pub bound: Rational,
    /// Largest integer degree allowed by the bound.
    pub max_degree: i64,
    #[serde(
        default,
        with = "wire::opt_int",
        skip_serializing_if = "Option::is_none"
    )]
    pub degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
}

pub fn arakelov_check(bound: Rational, degree: Option<i64>) -> ArakelovVerdict {
    let max_degree = floor_i64(&bound).expect("bound fits in i64");
    ArakelovVerdict {
        satisfied: degree.map(|a| a <= max_degree),
        bound,
        max_degree,
        degree,
    }
}

/// One residue exponent `α ∈ [0, 1)` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub alpha: Rational,
    pub multiplicity: u32,
}

impl Residue {
    pub fn new(alpha: Rational, multiplicity: u32) -> Self {
        Self {
            alpha,
            multiplicity,
        }
    }
}

/// `deg + Σ_P Σ_α α · mult`.
pub fn parabolic_degree(degree: i64, points: &[Vec<Residue>]) -> Result<Rational> {
    let mut total = int(degree);
    for (i, residues) in points.iter().enumerate() {
        for r in residues {
            if r.alpha.is_negative() || r.alpha >= Rational::one() {
                return Err(Error::Precondition(format!(
                    "residue α = {} at point {i} is outside [0, 1)",
                    crate::algebra::format_rational(&r.alpha)
                )));
            }
            if r.multiplicity == 0 {
                return Err(Error::Precondition(format!(
                    "zero multiplicity at point {i}"
                )));
            }
            total += &r.alpha * int(i64::from(r.multiplicity));
        }
    }
    debug_assert!(!total.denom().is_zero());
    Ok(total)
}
