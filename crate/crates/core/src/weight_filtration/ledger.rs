use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monodromy::{Kind, MonodromyClass, Weight};

/// How Jordan chains of `N` sit on the Hodge lines `E^{p, m-p}`.
///
/// Only the standard alignment is modeled: each chain occupies
/// consecutive Hodge lines and its top line carries the chain's highest
/// weight. For Hodge numbers `(1, ..., 1)` this pins down the weight of
/// every line once the type is known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainAlignment {
    #[default]
    Standard,
}

/// Local twists of the L2 Higgs complex at one point of `D`, listed for
/// `p = m, m-1, ..., 0`.
///
/// `twist0[i]` is the twist of `Ω⁰_(2)(E)^{p,m-p}` relative to
/// `E^{p,m-p}` (0 or -1). `twist1[i]` is the twist of `Ω¹_(2)(E)^{p,m-p}`
/// relative to `E^{p,m-p} ⊗ Ω¹` (0 or +1, the latter meaning the log pole
/// survives).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistLedger {
    pub weight: Weight,
    pub twist0: Vec<i64>,
    pub twist1: Vec<i64>,
}

impl TwistLedger {
    fn index(&self, p: usize) -> usize {
        usize::from(self.weight.get()) - p
    }

    pub fn twist0_at(&self, p: usize) -> i64 {
        self.twist0[self.index(p)]
    }

    pub fn twist1_at(&self, p: usize) -> i64 {
        self.twist1[self.index(p)]
    }
}

/// Graded weight of each Hodge line `p = m, ..., 0` at a unipotent point,
/// under the standard chain alignment. `None` for kinds that are not
/// unipotent for this weight.
pub fn line_weights(weight: Weight, kind: Kind, _align: ChainAlignment) -> Option<Vec<i64>> {
    let w: &[i64] = match (weight.get(), kind) {
        (m, Kind::Trivial) => return Some(vec![0; usize::from(m) + 1]),
        (1, Kind::I) => &[1, -1],
        (2, Kind::I) => &[2, 0, -2],
        (3, Kind::I) => &[0, 1, -1, 0],
        (3, Kind::II) => &[1, -1, 1, -1],
        (3, Kind::III) => &[3, 1, -1, -3],
        _ => return None,
    };
    Some(w.to_vec())
}

/// Twist data for a point of the given type.
pub fn twist_ledger_for(weight: Weight, kind: Kind, align: ChainAlignment) -> Result<TwistLedger> {
    if !kind.is_valid_for(weight) {
        return Err(Error::Precondition(format!(
            "type {kind} does not occur in weight {weight}"
        )));
    }
    let len = weight.rank();
    let (twist0, twist1) = if kind == weight.non_unipotent_kind() {
        (vec![0; len], vec![1; len])
    } else {
        let w = line_weights(weight, kind, align).expect("unipotent kind has line weights");
        (
            w.iter().map(|&x| if x > 0 { -1 } else { 0 }).collect(),
            w.iter().map(|&x| if x <= -2 { 1 } else { 0 }).collect(),
        )
    };
    Ok(TwistLedger {
        weight,
        twist0,
        twist1,
    })
}

/// Twist data for a classified point.
pub fn twist_ledger(class: &MonodromyClass, align: ChainAlignment) -> Result<TwistLedger> {
    twist_ledger_for(class.weight, class.kind, align)
}
