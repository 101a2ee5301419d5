//! The table of Hodge numbers after base change for fourteen
//! hypergeometric Calabi-Yau families, and an auditor that checks every
//! printed row against the weight-3 formulas on `P^1`.
//!
//! Cells hold an integer, an affine expression in `k` (for rows indexed by
//! `e = 2k`), or a list of alternatives. Alternatives in one row are
//! correlated by position: the i-th entries of every list belong together.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hodge::DegenerationCounts;

/// The shipped transcription.
pub const SHIPPED_TABLE: &str = include_str!("../../../data/cy_table.json");

pub const DEFAULT_KMAX: u32 = 5;

/// `coeff * k + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub coeff: i64,
    pub constant: i64,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Self {
            coeff: 0,
            constant: c,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeff == 0
    }

    pub fn at(&self, k: i64) -> i64 {
        self.coeff * k + self.constant
    }
}

impl std::str::FromStr for Affine {
    type Err = String;

    /// Accepts sums of terms `c`, `ck` and `k` with optional signs, e.g.
    /// `2k-2`, `k`, `-k+3`, `7`.
    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty expression".into());
        }
        let mut out = Affine::constant(0);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == compact.len() => (1, rest),
                _ => return Err(format!("cannot parse {text:?}")),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if let Some(c) = term.strip_suffix('k') {
                let c: i64 = if c.is_empty() {
                    1
                } else {
                    c.parse().map_err(|_| format!("cannot parse {text:?}"))?
                };
                out.coeff += sign * c;
            } else {
                let c: i64 = term.parse().map_err(|_| format!("cannot parse {text:?}"))?;
                out.constant += sign * c;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff, self.constant) {
            (0, c) => write!(f, "{c}"),
            (a, c) => {
                match a {
                    1 => f.write_str("k")?,
                    -1 => f.write_str("-k")?,
                    a => write!(f, "{a}k")?,
                }
                match c {
                    0 => Ok(()),
                    c if c > 0 => write!(f, "+{c}"),
                    c => write!(f, "{c}"),
                }
            }
        }
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Cell::Value(*self).serialize(s)
    }
}

/// A printed table entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Value(Affine),
    Options(Vec<i64>),
}

impl Cell {
    fn len(&self) -> usize {
        match self {
            Cell::Value(_) => 1,
            Cell::Options(v) => v.len(),
        }
    }

    fn is_symbolic(&self) -> bool {
        matches!(self, Cell::Value(a) if !a.is_constant())
    }

    /// The `i`-th alternative at a given `k`; scalars broadcast.
    fn at(&self, i: usize, k: i64) -> i64 {
        match self {
            Cell::Value(a) => a.at(k),
            Cell::Options(v) if v.len() == 1 => v[0],
            Cell::Options(v) => v[i],
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CellJson {
    Int(i64),
    Text(String),
    List(Vec<i64>),
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match CellJson::deserialize(d)? {
            CellJson::Int(v) => Ok(Cell::Value(Affine::constant(v))),
            CellJson::Text(s) => s.parse().map(Cell::Value).map_err(de::Error::custom),
            CellJson::List(v) if v.is_empty() => Err(de::Error::custom("empty option list")),
            CellJson::List(v) => Ok(Cell::Options(v)),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Value(a) if a.is_constant() => a.constant.serialize(s),
            Cell::Value(a) => a.to_string().serialize(s),
            Cell::Options(v) => v.serialize(s),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(a) => write!(f, "{a}"),
            Cell::Options(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowJson {
    e: Cell,
    h1: Cell,
    h40: Cell,
    h31: Cell,
    h22: Cell,
    a: Cell,
    b: Cell,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    id: u32,
    model: String,
    t_infty: String,
    rows: Vec<RowJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    models: Vec<ModelJson>,
}

/// One printed row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub model_id: u32,
    pub model: String,
    /// Printed monodromy label at infinity; carried as metadata only.
    pub t_infty: String,
    /// Position of the row within its model block, from 0.
    pub row: usize,
    pub e: Affine,
    pub h1: Affine,
    pub h40: Cell,
    pub h31: Cell,
    pub h22: Cell,
    pub a: Cell,
    pub b: Cell,
}

impl TableRow {
    fn cells(&self) -> [(&'static str, &Cell); 5] {
        [
            ("h40", &self.h40),
            ("h31", &self.h31),
            ("h22", &self.h22),
            ("a", &self.a),
            ("b", &self.b),
        ]
    }

    pub fn is_symbolic(&self) -> bool {
        !self.e.is_constant()
            || !self.h1.is_constant()
            || self.cells().iter().any(|(_, c)| c.is_symbolic())
    }

    /// Number of correlated alternatives.
    pub fn alternatives(&self) -> usize {
        self.cells().iter().map(|(_, c)| c.len()).max().unwrap_or(1)
    }

    pub fn assignment(&self, i: usize, k: i64) -> Assignment {
        Assignment {
            h40: self.h40.at(i, k),
            h31: self.h31.at(i, k),
            h22: self.h22.at(i, k),
            a: self.a.at(i, k),
            b: self.b.at(i, k),
        }
    }

    /// Values of `k` at which to check the row.
    pub fn k_values(&self, kmax: u32) -> Vec<Option<i64>> {
        if self.is_symbolic() {
            (1..=i64::from(kmax)).map(Some).collect()
        } else {
            vec![None]
        }
    }
}

fn schema(location: String, message: impl Into<String>) -> Error {
    Error::Schema {
        location,
        message: message.into(),
    }
}

fn to_row(model: &ModelJson, index: usize, raw: &RowJson) -> Result<TableRow> {
    let at = |col: &str| format!("model {}, row {}, column {col}", model.id, index + 1);
    let scalar = |col: &str, cell: &Cell| match cell {
        Cell::Value(a) => Ok(*a),
        Cell::Options(_) => Err(schema(at(col), "expected a single value")),
    };
    let e = scalar("e", &raw.e)?;
    let h1 = scalar("h1", &raw.h1)?;
    let row = TableRow {
        model_id: model.id,
        model: model.model.clone(),
        t_infty: model.t_infty.clone(),
        row: index,
        e,
        h1,
        h40: raw.h40.clone(),
        h31: raw.h31.clone(),
        h22: raw.h22.clone(),
        a: raw.a.clone(),
        b: raw.b.clone(),
    };
    let width = row.alternatives();
    for (col, cell) in row.cells() {
        if cell.len() != 1 && cell.len() != width {
            return Err(schema(
                at(col),
                format!("{} alternatives where the row has {width}", cell.len()),
            ));
        }
    }
    if e.is_constant() && e.constant <= 0 {
        return Err(schema(at("e"), "degree e must be positive"));
    }
    if !e.is_constant() && (e.coeff <= 0 || e.at(1) <= 0) {
        return Err(schema(at("e"), "degree e must be positive for k >= 1"));
    }
    Ok(row)
}

/// Parses table JSON; errors carry file or row/column coordinates.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    let table: TableJson = serde_json::from_str(text).map_err(|e| {
        schema(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let mut rows = Vec::new();
    for model in &table.models {
        for (i, raw) in model.rows.iter().enumerate() {
            rows.push(to_row(model, i, raw)?);
        }
    }
    Ok(rows)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<TableRow>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

pub fn shipped_table() -> Vec<TableRow> {
    parse_table(SHIPPED_TABLE).expect("shipped table parses")
}

/// One correlated choice of the optional columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub h40: i64,
    pub h31: i64,
    pub h22: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumCheck {
    pub h1: i64,
    /// `2 h40 + 2 h31 + h22`.
    pub components: i64,
    pub pass: bool,
}

/// Solutions `(|I|, |II|, |III|, |IV|) = (n_i_base - t, n_ii_base - t, t, n_iv)`
/// of the genus-0 formulas for `0 <= t <= t_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountFamily {
    pub n_i_base: i64,
    pub n_ii_base: i64,
    pub n_iv: i64,
    pub t_max: i64,
}

impl CountFamily {
    pub fn counts(&self, t: i64) -> DegenerationCounts {
        assert!((0..=self.t_max).contains(&t));
        let c = |x: i64| u32::try_from(x).expect("nonnegative count");
        DegenerationCounts::new(
            c(self.n_i_base - t),
            c(self.n_ii_base - t),
            c(t),
            c(self.n_iv),
        )
    }

    pub fn all(&self) -> Vec<DegenerationCounts> {
        (0..=self.t_max).map(|t| self.counts(t)).collect()
    }

    pub fn contains(&self, c: &DegenerationCounts) -> bool {
        self.all().contains(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    /// `h40 + 1 - a`.
    pub n_iv: i64,
    /// `h22 + 2 h31 + 2a + 2|IV|`, which must equal `h1 + 2`.
    pub identity_lhs: i64,
    pub identity_rhs: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<CountFamily>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentAudit {
    pub index: usize,
    pub values: Assignment,
    pub sum: SumCheck,
    pub feasibility: Feasibility,
    pub pass: bool,
}

/// Sum check and genus-0 feasibility for one assignment. The two checks
/// are independent: the sum check never uses counts and feasibility
/// never uses the printed sum.
pub fn audit_assignment(h1: i64, index: usize, v: Assignment) -> AssignmentAudit {
    let components = 2 * v.h40 + 2 * v.h31 + v.h22;
    let sum = SumCheck {
        h1,
        components,
        pass: components == h1,
    };
    let n_iv = v.h40 + 1 - v.a;
    let n_ii_base = v.h31 + 2 + v.a - v.b - n_iv;
    let n_i_base = v.h22 + 2 + 2 * v.b;
    let identity_lhs = v.h22 + 2 * v.h31 + 2 * v.a + 2 * n_iv;
    let identity_rhs = h1 + 2;
    let t_max = n_ii_base.min(n_i_base);
    let family = (identity_lhs == identity_rhs && n_iv >= 0 && t_max >= 0).then_some(CountFamily {
        n_i_base,
        n_ii_base,
        n_iv,
        t_max,
    });
    let feasibility = Feasibility {
        n_iv,
        identity_lhs,
        identity_rhs,
        pass: family.is_some(),
        family,
    };
    AssignmentAudit {
        index,
        values: v,
        pass: sum.pass && feasibility.pass,
        sum,
        feasibility,
    }
}

/// Audits the `index`-th alternative of a row at a given `k`.
pub fn audit_row(row: &TableRow, index: usize, k: Option<i64>) -> AssignmentAudit {
    assert!(index < row.alternatives());
    let k = k.unwrap_or(0);
    audit_assignment(row.h1.at(k), index, row.assignment(index, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowAudit {
    pub model_id: u32,
    pub model: String,
    pub t_infty: String,
    pub row: usize,
    /// As printed.
    pub e_printed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub e: i64,
    pub h1: i64,
    pub assignments: Vec<AssignmentAudit>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub checked: usize,
    pub passed: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub kmax: u32,
    pub summary: AuditSummary,
    pub rows: Vec<RowAudit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    pub kmax: u32,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self { kmax: DEFAULT_KMAX }
    }
}

fn flag_lines(a: &AssignmentAudit, tag: &str) -> Vec<String> {
    let v = a.values;
    let mut out = Vec::new();
    if !a.sum.pass {
        out.push(format!(
            "{tag}sum check: h1 = {} but 2*{} + 2*{} + {} = {}",
            a.sum.h1, v.h40, v.h31, v.h22, a.sum.components
        ));
    }
    let f = &a.feasibility;
    if f.identity_lhs != f.identity_rhs {
        out.push(format!(
            "{tag}feasibility: h22 + 2 h31 + 2a + 2|IV| = {} + {} + {} + {} = {} but h1 + 2 = {}",
            v.h22,
            2 * v.h31,
            2 * v.a,
            2 * f.n_iv,
            f.identity_lhs,
            f.identity_rhs
        ));
    } else if f.n_iv < 0 {
        out.push(format!(
            "{tag}feasibility: |IV| = h40 + 1 - a = {} < 0",
            f.n_iv
        ));
    } else if !f.pass {
        out.push(format!(
            "{tag}feasibility: no t >= 0 with |I| = {} - t >= 0 and |II| = {} - t >= 0",
            v.h22 + 2 + 2 * v.b,
            v.h31 + 2 + v.a - v.b - f.n_iv
        ));
    }
    out
}

/// Audits every row and alternative; symbolic rows are checked for
/// `k = 1..=kmax`. Rows keep input order, then increasing `k`.
pub fn audit_all(rows: &[TableRow], options: AuditOptions) -> AuditReport {
    let mut out = Vec::new();
    for row in rows {
        for k in row.k_values(options.kmax) {
            let kv = k.unwrap_or(0);
            let assignments: Vec<_> = (0..row.alternatives())
                .map(|i| audit_row(row, i, k))
                .collect();
            let pass = assignments.iter().any(|a| a.pass);
            let flags = if pass {
                Vec::new()
            } else {
                let many = assignments.len() > 1;
                assignments
                    .iter()
                    .flat_map(|a| {
                        let tag = if many {
                            format!("option {}: ", a.index + 1)
                        } else {
                            String::new()
                        };
                        flag_lines(a, &tag)
                    })
                    .collect()
            };
            out.push(RowAudit {
                model_id: row.model_id,
                model: row.model.clone(),
                t_infty: row.t_infty.clone(),
                row: row.row,
                e_printed: row.e.to_string(),
                k,
                e: row.e.at(kv),
                h1: row.h1.at(kv),
                assignments,
                pass,
                flags,
            });
        }
    }
    let passed = out.iter().filter(|r| r.pass).count();
    AuditReport {
        kmax: options.kmax,
        summary: AuditSummary {
            checked: out.len(),
            passed,
            flagged: out.len() - passed,
        },
        rows: out,
    }
}

impl AuditReport {
    pub fn flagged(&self) -> impl Iterator<Item = &RowAudit> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.summary.flagged == 0
    }

    /// Human-readable rendering, one line per checked row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let k = r.k.map(|k| format!(" (k={k})")).unwrap_or_default();
            let verdict = if r.pass { "PASS" } else { "FLAG" };
            let t = r
                .assignments
                .iter()
                .filter_map(|a| a.feasibility.family)
                .map(|f| format!("t<={}", f.t_max))
                .next()
                .unwrap_or_default();
            s.push_str(&format!(
                "{verdict}  #{:<2} {:<22} e={}{k}  h1={}  {t}\n",
                r.model_id, r.model, r.e, r.h1
            ));
            for f in &r.flags {
                s.push_str(&format!("      {f}\n"));
            }
        }
        s.push_str(&format!(
            "{} rows checked, {} passed, {} flagged\n",
            self.summary.checked, self.summary.passed, self.summary.flagged
        ));
        s
    }
}
