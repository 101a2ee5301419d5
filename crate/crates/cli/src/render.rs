use std::fmt::Write;

use serde::{Deserialize, Serialize};

use l2hodge::algebra::format_rational;
use l2hodge::hodge::ArakelovVerdict;
use l2hodge::weight_filtration::FiltrationJson;
use l2hodge::{
    ClassificationError, Error, FamilyReport, HodgeNumbers, Matrix, MonodromyClass, Rational,
    TwistLedger, Weight,
};

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassifyOutput {
    Class(MonodromyClass),
    Rejected {
        weight: Weight,
        rejected: ClassificationError,
    },
}

impl ClassifyOutput {
    pub fn rejected(weight: Weight, rejected: ClassificationError) -> Self {
        ClassifyOutput::Rejected { weight, rejected }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FiltrationOutput {
    pub source: String,
    pub nilpotent: Matrix,
    pub filtration: FiltrationJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ParabolicOutput {
    #[serde(with = "l2hodge::wire::rational")]
    pub degree: Rational,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    location: Option<&'a str>,
}

pub fn error_json(e: &Error) -> String {
    let label = match e {
        Error::AtPoint { label, .. } => Some(label.as_str()),
        _ => None,
    };
    let location = match e.root() {
        Error::Schema { location, .. } => Some(location.as_str()),
        _ => None,
    };
    let body = ErrorBody {
        code: e.code(),
        message: e.to_string(),
        label,
        location,
    };
    serde_json::json!({ "error": body }).to_string()
}

pub fn classify_text(out: &ClassifyOutput) -> String {
    match out {
        ClassifyOutput::Class(c) => {
            let blocks: Vec<String> = c
                .jordan
                .iter()
                .map(|b| format!("{}x{}", b.order, b.size))
                .collect();
            format!(
                "weight {}: type {} (semisimple order {}, blocks order x size: {})\n",
                c.weight,
                c.kind,
                c.semisimple_order,
                blocks.join(" ")
            )
        }
        ClassifyOutput::Rejected { weight, rejected } => {
            format!("weight {weight}: rejected, {rejected}\n")
        }
    }
}

pub fn filtration_text(out: &FiltrationOutput) -> String {
    let mut s = format!("N = {} (nilpotency {})\n", out.source, out.filtration.m + 1);
    for g in &out.filtration.graded {
        let _ = writeln!(s, "  dim Gr_{} = {}", g.k, g.dim);
    }
    for l in &out.filtration.levels {
        let vecs: Vec<String> = l
            .basis
            .iter()
            .map(|v| format!("({})", v.join(", ")))
            .collect();
        let _ = writeln!(s, "  W_{} = <{}>", l.k, vecs.join(", "));
    }
    s
}

pub fn ledger_text(l: &TwistLedger) -> String {
    let m = usize::from(l.weight.get());
    let mut s = String::new();
    for i in 0..=m {
        let _ = writeln!(
            s,
            "E^{{{},{}}}: twist0 {:+}, twist1 {:+}",
            m - i,
            i,
            l.twist0[i],
            l.twist1[i]
        );
    }
    s
}

pub fn hodge_text(h: &HodgeNumbers) -> String {
    let parts: Vec<String> = h
        .components
        .iter()
        .map(|c| format!("h^{{{},{}}}={}", c.p, c.q, c.h))
        .collect();
    let mut s = format!("{}  total {}\n", parts.join(" "), h.total);
    for (k, v) in &h.derived {
        let _ = writeln!(s, "  {k} = {v}");
    }
    s
}

pub fn family_text(r: &FamilyReport) -> String {
    let c = r.resolution.counts;
    let mut s = format!(
        "counts I={} II={} III={} IV={}  check-sum {}\n",
        c.n_i, c.n_ii, c.n_iii, c.n_iv, r.check_sum
    );
    for p in &r.resolution.points {
        let _ = writeln!(s, "  {}: {}", p.label, p.kind);
    }
    for label in &r.resolution.dropped {
        let _ = writeln!(s, "  {label}: trivial, dropped");
    }
    if let Some(h) = &r.hodge {
        s.push_str(&format!("formula: {}", hodge_text(h)));
    }
    if let Some(h) = &r.hodge_ledger {
        s.push_str(&format!("ledger:  {}", hodge_text(h)));
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn arakelov_text(v: &ArakelovVerdict) -> String {
    let mut s = format!(
        "bound {} (integer degree <= {})\n",
        format_rational(&v.bound),
        v.max_degree
    );
    if let (Some(d), Some(ok)) = (v.degree, v.satisfied) {
        let _ = writeln!(
            s,
            "degree {d}: {}",
            if ok { "satisfied" } else { "violated" }
        );
    }
    s
}

pub fn parabolic_text(p: &ParabolicOutput) -> String {
    format!("{}\n", format_rational(&p.degree))
}
