//! Families of local systems over a curve: per-point classification,
//! base change along `z -> z^e`, and the line-bundle degrees of the L2
//! Higgs complex.

use serde::{Deserialize, Serialize};

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::hodge::{
    check_sum, h0_from_degree, h1_from_degree, hodge_decomposed, hodge_numbers, DegenerationCounts,
    HodgeInput, HodgeNumbers,
};
use crate::monodromy::{classify, Kind, MonodromyClass, Weight};
use crate::weight_filtration::{twist_ledger_for, ChainAlignment};
use crate::wire;

/// Local data at a point: a monodromy matrix or a declared type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointData {
    Matrix(Matrix),
    Declared(Kind),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MarkedPointJson", into = "MarkedPointJson")]
pub struct MarkedPoint {
    pub label: String,
    pub data: PointData,
    pub ramified: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkedPointJson {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Matrix>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    ramified: bool,
}

impl TryFrom<MarkedPointJson> for MarkedPoint {
    type Error = String;
    fn try_from(j: MarkedPointJson) -> std::result::Result<Self, String> {
        let data = match (j.matrix, j.kind) {
            (Some(m), None) => PointData::Matrix(m),
            (None, Some(k)) => PointData::Declared(k),
            _ => {
                return Err(format!(
                    "point {:?} needs exactly one of \"matrix\" and \"type\"",
                    j.label
                ))
            }
        };
        Ok(MarkedPoint {
            label: j.label,
            data,
            ramified: j.ramified,
        })
    }
}

impl From<MarkedPoint> for MarkedPointJson {
    fn from(p: MarkedPoint) -> Self {
        let (matrix, kind) = match p.data {
            PointData::Matrix(m) => (Some(m), None),
            PointData::Declared(k) => (None, Some(k)),
        };
        MarkedPointJson {
            label: p.label,
            matrix,
            kind,
            ramified: p.ramified,
        }
    }
}

impl MarkedPoint {
    pub fn matrix(label: impl Into<String>, t: Matrix) -> Self {
        Self {
            label: label.into(),
            data: PointData::Matrix(t),
            ramified: false,
        }
    }

    pub fn declared(label: impl Into<String>, kind: Kind) -> Self {
        Self {
            label: label.into(),
            data: PointData::Declared(kind),
            ramified: false,
        }
    }

    pub fn ramified(mut self, ramified: bool) -> Self {
        self.ramified = ramified;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub weight: Weight,
    pub genus: u32,
    /// `deg E^{m,0}`.
    #[serde(
        default,
        with = "wire::opt_int",
        skip_serializing_if = "Option::is_none"
    )]
    pub a: Option<i64>,
    /// `deg E^{m-1,1}`; for weight 2 it defaults to `-|II|/2`.
    #[serde(
        default,
        with = "wire::opt_int",
        skip_serializing_if = "Option::is_none"
    )]
    pub b: Option<i64>,
    /// `-deg E^{0,m}`.
    #[serde(
        default,
        with = "wire::opt_int",
        skip_serializing_if = "Option::is_none"
    )]
    pub a_prime: Option<i64>,
    /// `-deg E^{1,2}`; weight 3 only.
    #[serde(
        default,
        with = "wire::opt_int",
        skip_serializing_if = "Option::is_none"
    )]
    pub b_prime: Option<i64>,
    #[serde(default)]
    pub decomposed: bool,
    /// One flag per Higgs arrow starting at `p = m`. Defaults to all
    /// nonzero, or `[true, false, true]` when decomposed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_nonzero: Option<Vec<bool>>,
    #[serde(default = "default_true")]
    pub irreducible: bool,
    pub points: Vec<MarkedPoint>,
}

fn default_true() -> bool {
    true
}

impl FamilyDescriptor {
    pub fn new(weight: Weight, genus: u32, points: Vec<MarkedPoint>) -> Self {
        Self {
            weight,
            genus,
            a: None,
            b: None,
            a_prime: None,
            b_prime: None,
            decomposed: false,
            theta_nonzero: None,
            irreducible: true,
            points,
        }
    }

    pub fn with_degrees(mut self, a: i64, b: Option<i64>) -> Self {
        self.a = Some(a);
        self.b = b;
        self
    }

    pub fn decomposed(mut self) -> Self {
        self.decomposed = true;
        self
    }

    pub fn theta(&self) -> Vec<bool> {
        match &self.theta_nonzero {
            Some(t) => t.clone(),
            None if self.decomposed => vec![true, false, true],
            None => vec![true; usize::from(self.weight.get())],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.decomposed && self.weight != Weight::THREE {
            return Err(Error::Precondition(
                "decomposed families have weight 3".into(),
            ));
        }
        let m = usize::from(self.weight.get());
        if self.theta().len() != m {
            return Err(Error::Precondition(format!(
                "expected {m} theta flags, got {}",
                self.theta().len()
            )));
        }
        for (i, p) in self.points.iter().enumerate() {
            if self.points[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::Precondition(format!(
                    "duplicate point label {:?}",
                    p.label
                )));
            }
            if let PointData::Declared(k) = p.data {
                if !k.is_valid_for(self.weight) {
                    return Err(Error::AtPoint {
                        label: p.label.clone(),
                        source: Box::new(Error::Precondition(format!(
                            "type {k} does not occur in weight {}",
                            self.weight
                        ))),
                    });
                }
            }
        }
        Ok(())
    }
}

/// One point of `D` after classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedPoint {
    pub label: String,
    pub kind: Kind,
    /// Present when the point carried a matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<MonodromyClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub counts: DegenerationCounts,
    /// Points of `D`, in input order.
    pub points: Vec<ResolvedPoint>,
    /// Labels of points whose monodromy is trivial.
    pub dropped: Vec<String>,
}

/// Classifies every point and counts types; trivial points leave `D`.
pub fn resolve(family: &FamilyDescriptor) -> Result<Resolution> {
    family.validate()?;
    let mut counts = DegenerationCounts::default();
    let mut points = Vec::new();
    let mut dropped = Vec::new();
    for p in &family.points {
        let (kind, class) = match &p.data {
            PointData::Declared(k) => (*k, None),
            PointData::Matrix(t) => {
                let c = classify(t, family.weight).map_err(|e| Error::AtPoint {
                    label: p.label.clone(),
                    source: Box::new(e),
                })?;
                (c.kind, Some(c))
            }
        };
        if kind == Kind::Trivial {
            dropped.push(p.label.clone());
            continue;
        }
        counts.record(kind);
        points.push(ResolvedPoint {
            label: p.label.clone(),
            kind,
            class,
        });
    }
    if family.decomposed && (counts.n_i > 0 || counts.n_iii > 0) {
        return Err(Error::Precondition(
            "decomposed families have no points of type I or III".into(),
        ));
    }
    Ok(Resolution {
        counts,
        points,
        dropped,
    })
}

/// Pulls the family back along `z -> z^e` on `P^1`, ramified at the two
/// flagged points. Ramified points get `T^e`; every other point splits
/// into `e` copies labeled `label.1`, ..., `label.e`. Degrees are cleared
/// unless `e = 1`.
pub fn base_change(family: &FamilyDescriptor, e: u64) -> Result<FamilyDescriptor> {
    if e == 0 {
        return Err(Error::Precondition("degree e must be positive".into()));
    }
    if family.genus != 0 {
        return Err(Error::Precondition("base change needs genus 0".into()));
    }
    let ramified = family.points.iter().filter(|p| p.ramified).count();
    if ramified != 2 {
        return Err(Error::Precondition(format!(
            "exactly two points must be ramified, found {ramified}"
        )));
    }
    if e == 1 {
        return Ok(family.clone());
    }
    let mut points = Vec::new();
    for p in &family.points {
        let PointData::Matrix(t) = &p.data else {
            return Err(Error::AtPoint {
                label: p.label.clone(),
                source: Box::new(Error::Precondition(
                    "base change needs a monodromy matrix".into(),
                )),
            });
        };
        if p.ramified {
            points.push(MarkedPoint::matrix(p.label.clone(), t.pow(e)).ramified(true));
        } else {
            points.extend(
                (1..=e).map(|i| MarkedPoint::matrix(format!("{}.{i}", p.label), t.clone())),
            );
        }
    }
    Ok(FamilyDescriptor {
        a: None,
        b: None,
        a_prime: None,
        b_prime: None,
        points,
        ..family.clone()
    })
}

/// Degrees of the lines of the L2 Higgs complex for one Hodge index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerLine {
    pub p: u32,
    pub q: u32,
    /// `deg E^{p,q}`.
    pub deg: i64,
    /// `deg Ω⁰_(2)(E)^{p,q}`.
    pub deg0: i64,
    /// Degree of the L2 part of `E^{p,q} ⊗ Ω¹(log D)`.
    pub deg1: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeLedger {
    pub weight: Weight,
    pub genus: u32,
    pub counts: DegenerationCounts,
    /// Ordered by `p = m, ..., 0`.
    pub lines: Vec<LedgerLine>,
    /// Degrees that were filled in from defaults, e.g. `"b_prime = b + |IV|"`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub defaults: Vec<String>,
}

impl DegreeLedger {
    fn line(&self, p: usize) -> &LedgerLine {
        &self.lines[usize::from(self.weight.get()) - p]
    }

    pub fn deg0(&self, p: usize) -> i64 {
        self.line(p).deg0
    }

    pub fn deg1(&self, p: usize) -> i64 {
        self.line(p).deg1
    }
}

fn degree_vector(
    family: &FamilyDescriptor,
    counts: &DegenerationCounts,
    defaults: &mut Vec<String>,
) -> Result<Vec<i64>> {
    let a = family
        .a
        .ok_or_else(|| Error::UnknownDegrees("a = deg E^{m,0} is not given".into()))?;
    let n2 = i64::from(counts.n_ii);
    let n4 = i64::from(counts.n_iv);
    let mut a_prime = |shift: i64, label: &str| {
        family.a_prime.unwrap_or_else(|| {
            defaults.push(format!("a_prime = a + |{label}|"));
            a + shift
        })
    };
    match family.weight.get() {
        1 => Ok(vec![a, -a_prime(n2, "II")]),
        2 => {
            let ap = a_prime(n2, "II");
            let b = match family.b {
                Some(b) => b,
                None if n2 % 2 == 0 => {
                    defaults.push("b = -|II|/2".into());
                    -n2 / 2
                }
                None => {
                    return Err(Error::InconsistentInput(format!(
                        "|II| = {n2} is odd, so deg E^{{1,1}} = -|II|/2 is not an integer"
                    )))
                }
            };
            Ok(vec![a, b, -ap])
        }
        _ => {
            let ap = a_prime(n4, "IV");
            let b = family
                .b
                .ok_or_else(|| Error::UnknownDegrees("b = deg E^{2,1} is not given".into()))?;
            let bp = family.b_prime.unwrap_or_else(|| {
                defaults.push("b_prime = b + |IV|".into());
                b + n4
            });
            Ok(vec![a, b, -bp, -ap])
        }
    }
}

fn ledger_from(family: &FamilyDescriptor, res: &Resolution) -> Result<DegreeLedger> {
    let m = usize::from(family.weight.get());
    let mut defaults = Vec::new();
    let degs = degree_vector(family, &res.counts, &mut defaults)?;
    let canonical = 2 * i64::from(family.genus) - 2;
    let mut t0 = vec![0i64; m + 1];
    let mut t1 = vec![0i64; m + 1];
    for p in &res.points {
        let l = twist_ledger_for(family.weight, p.kind, ChainAlignment::Standard)?;
        for i in 0..=m {
            t0[i] += l.twist0[i];
            t1[i] += l.twist1[i];
        }
    }
    let lines = (0..=m)
        .map(|i| LedgerLine {
            p: (m - i) as u32,
            q: i as u32,
            deg: degs[i],
            deg0: degs[i] + t0[i],
            deg1: degs[i] + canonical + t1[i],
        })
        .collect();
    Ok(DegreeLedger {
        weight: family.weight,
        genus: family.genus,
        counts: res.counts,
        lines,
        defaults,
    })
}

/// Degrees of `Ω⁰_(2)` and `Ω¹_(2)` line by line, summing the local twists
/// of every point of `D`.
pub fn degree_ledger(family: &FamilyDescriptor) -> Result<DegreeLedger> {
    let res = resolve(family)?;
    ledger_from(family, &res)
}

/// Hodge numbers of `H¹(P¹, j_*V)` computed from the degree ledger alone:
/// each nonzero Higgs arrow between line bundles on `P¹` contributes the
/// number of zeros of the map, a zero arrow contributes the cohomology of
/// its source and target separately, and the two ends contribute `h⁰` of
/// the last `Ω¹` line and `h¹` of the last `Ω⁰` line.
pub fn hodge_from_ledger(family: &FamilyDescriptor) -> Result<HodgeNumbers> {
    if family.genus != 0 {
        return Err(Error::Precondition(
            "the degree ledger determines Hodge numbers only on genus 0".into(),
        ));
    }
    let ledger = degree_ledger(family)?;
    hodge_from(&ledger, &family.theta())
}

fn hodge_from(ledger: &DegreeLedger, theta: &[bool]) -> Result<HodgeNumbers> {
    let m = usize::from(ledger.weight.get());
    let g = ledger.genus;
    let mut values = Vec::with_capacity(m + 2);
    values.push(h0_from_degree(g, ledger.deg1(m))? as i64);
    for q in 1..=m {
        let p = m + 1 - q;
        let target = ledger.deg1(p - 1);
        let source = ledger.deg0(p);
        if theta[m - p] {
            let zeros = target - source;
            if zeros < 0 {
                return Err(Error::InconsistentInput(format!(
                    "no nonzero map from a degree-{source} line to a degree-{target} line \
                     (arrow out of E^{{{p},{}}})",
                    m - p
                )));
            }
            values.push(zeros);
        } else {
            values.push((h1_from_degree(g, source)? + h0_from_degree(g, target)?) as i64);
        }
    }
    values.push(h1_from_degree(g, ledger.deg0(0))? as i64);
    HodgeNumbers::from_values(m as u32 + 1, &values)
}

/// Everything the tools can say about a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub resolution: Resolution,
    pub check_sum: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ledger: Option<DegreeLedger>,
    /// From the closed formula for the weight (or the decomposed case).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeNumbers>,
    /// From the degree ledger; genus 0 only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge_ledger: Option<HodgeNumbers>,
    /// Why a missing entry could not be computed, one line per field.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn formula_hodge(family: &FamilyDescriptor, counts: &DegenerationCounts) -> Result<HodgeNumbers> {
    let a = family
        .a
        .ok_or_else(|| Error::UnknownDegrees("a = deg E^{m,0} is not given".into()))?;
    if family.decomposed {
        let b = family
            .b
            .ok_or_else(|| Error::UnknownDegrees("b = deg E^{2,1} is not given".into()))?;
        return hodge_decomposed(family.genus, a, b, counts.n_ii, counts.n_iv, counts.total());
    }
    let input = HodgeInput {
        g: family.genus,
        a,
        b: family.b,
        counts: *counts,
        theta_nonzero: family.theta(),
        irreducible: family.irreducible,
        num_d: None,
    };
    hodge_numbers(family.weight, &input)
}

/// Resolves the family and computes the check-sum, the degree ledger and
/// both Hodge number computations where their inputs allow. Only
/// classification failures are errors; everything else is noted.
pub fn family_report(family: &FamilyDescriptor) -> Result<FamilyReport> {
    let resolution = resolve(family)?;
    let mut notes = Vec::new();
    let mut keep = |field: &str, r: Result<HodgeNumbers>| match r {
        Ok(h) => Some(h),
        Err(e) => {
            notes.push(format!("{field}: {} ({e})", e.code()));
            None
        }
    };
    let hodge = keep("hodge", formula_hodge(family, &resolution.counts));
    let ledger = ledger_from(family, &resolution);
    let hodge_ledger = match (&ledger, family.genus) {
        (Ok(l), 0) => keep("hodge_ledger", hodge_from(l, &family.theta())),
        (Ok(_), _) => keep(
            "hodge_ledger",
            Err(Error::Precondition("genus is not 0".into())),
        ),
        (Err(_), _) => None,
    };
    let ledger = match ledger {
        Ok(l) => Some(l),
        Err(e) => {
            notes.push(format!("ledger: {} ({e})", e.code()));
            None
        }
    };
    Ok(FamilyReport {
        check_sum: check_sum(family.weight, family.genus, &resolution.counts),
        resolution,
        ledger,
        hodge,
        hodge_ledger,
        notes,
    })
}
