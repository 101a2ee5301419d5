//! Classification of local monodromies into degeneration types.
//!
//! Labels are per weight. For weights 1 and 2 the types are `I`
//! (unipotent) and `II` (no eigenvalue 1). For weight 3 the unipotent
//! types are `I`, `II`, `III` by increasing nilpotency and `IV` is the
//! strictly quasi-unipotent case.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::spectral::{eigenvalue_one_multiplicity, jordan_structure_with_order};
use crate::algebra::{quasi_unipotency_order, JordanBlock, Matrix};
use crate::error::{ClassificationError, Error, RejectReason, Result};

/// Hodge-theoretic weight of the local system; the rank is `weight + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Weight(u8);

impl Weight {
    pub const ONE: Weight = Weight(1);
    pub const TWO: Weight = Weight(2);
    pub const THREE: Weight = Weight(3);

    pub fn new(m: u8) -> Result<Self> {
        match m {
            1..=3 => Ok(Weight(m)),
            _ => Err(Error::Precondition(format!(
                "weight must be 1, 2 or 3, got {m}"
            ))),
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn rank(self) -> usize {
        usize::from(self.0) + 1
    }

    /// Types that may occur at a point of `D` for this weight.
    pub fn allowed_kinds(self) -> &'static [Kind] {
        match self.0 {
            1 | 2 => &[Kind::I, Kind::II],
            _ => &[Kind::I, Kind::II, Kind::III, Kind::IV],
        }
    }

    /// The strictly quasi-unipotent type label for this weight.
    pub fn non_unipotent_kind(self) -> Kind {
        if self.0 == 3 {
            Kind::IV
        } else {
            Kind::II
        }
    }

    pub fn is_unipotent_kind(self, kind: Kind) -> bool {
        kind != Kind::Trivial && kind != self.non_unipotent_kind()
    }
}

impl TryFrom<u8> for Weight {
    type Error = Error;
    fn try_from(m: u8) -> Result<Self> {
        Weight::new(m)
    }
}

impl From<Weight> for u8 {
    fn from(w: Weight) -> u8 {
        w.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "trivial")]
    Trivial,
    I,
    II,
    III,
    IV,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Trivial => "trivial",
            Kind::I => "I",
            Kind::II => "II",
            Kind::III => "III",
            Kind::IV => "IV",
        }
    }

    pub fn is_valid_for(self, weight: Weight) -> bool {
        self == Kind::Trivial || weight.allowed_kinds().contains(&self)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" => Ok(Kind::I),
            "II" => Ok(Kind::II),
            "III" => Ok(Kind::III),
            "IV" => Ok(Kind::IV),
            t if t.eq_ignore_ascii_case("trivial") => Ok(Kind::Trivial),
            other => Err(Error::Parse(format!("unknown monodromy type {other:?}"))),
        }
    }
}

/// Classification verdict for one local monodromy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyClass {
    pub weight: Weight,
    pub kind: Kind,
    /// Minimal `k` with `T^k` unipotent.
    pub semisimple_order: u64,
    /// Jordan block sizes of `T` when `T` is unipotent, largest first;
    /// empty otherwise.
    pub blocks: Vec<usize>,
    /// Jordan block orbits of `T` by cyclotomic order.
    pub jordan: Vec<JordanBlock>,
}

impl MonodromyClass {
    pub fn is_unipotent(&self) -> bool {
        self.semisimple_order == 1
    }
}

fn excluded(detail: &str) -> Error {
    ClassificationError::new(RejectReason::ExcludedByPolarization, detail).into()
}

/// Classifies a local monodromy matrix `T` of rank `weight + 1`.
pub fn classify(t: &Matrix, weight: Weight) -> Result<MonodromyClass> {
    let n = weight.rank();
    if !t.is_square() || t.rows() != n {
        return Err(Error::Dimension(format!(
            "weight {weight} needs a {n}x{n} monodromy, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let order = quasi_unipotency_order(t)?;
    let jordan = jordan_structure_with_order(t, order);
    let mult_one = eigenvalue_one_multiplicity(t);

    let kind = if mult_one == n {
        let nil = t.minus_identity();
        let nu = nil
            .nilpotency_index()
            .expect("T - I is nilpotent when 1 is the only eigenvalue");
        match (weight.get(), nu) {
            (_, 1) => Kind::Trivial,
            (1, 2) => Kind::I,
            (2, 3) => Kind::I,
            (2, 2) => return Err(excluded("weight 2 unipotent with N != 0, N^2 = 0")),
            (3, 2) if nil.rank() == 1 => Kind::I,
            (3, 2) => Kind::II,
            (3, 3) => return Err(excluded("weight 3 unipotent with a 3-block and a 1-block")),
            (3, 4) => Kind::III,
            (w, nu) => unreachable!("nilpotency index {nu} impossible in rank {}", w + 1),
        }
    } else if mult_one == 0 {
        weight.non_unipotent_kind()
    } else {
        return Err(ClassificationError::new(
            RejectReason::MixedCase,
            format!("eigenvalue 1 has multiplicity {mult_one} of {n}"),
        )
        .into());
    };

    let blocks = if order == 1 {
        jordan.iter().map(|b| b.size).collect()
    } else {
        Vec::new()
    };
    Ok(MonodromyClass {
        weight,
        kind,
        semisimple_order: order,
        blocks,
        jordan,
    })
}

/// Classifies `T^e`, the local monodromy after pulling back along a cover
/// ramified to order `e` at the point.
pub fn power_and_classify(t: &Matrix, e: u64, weight: Weight) -> Result<MonodromyClass> {
    if e == 0 {
        return Err(Error::Precondition("exponent must be positive".into()));
    }
    classify(&t.pow(e), weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::{cyclotomic, Polynomial};
    use crate::fixtures;

    fn reason(err: Error) -> RejectReason {
        match err {
            Error::Classification(c) => c.reason,
            other => panic!("expected classification error, got {other}"),
        }
    }

    #[test]
    fn mum_is_type_iii() {
        let c = classify(&fixtures::unipotent_block(4), Weight::THREE).unwrap();
        assert_eq!(c.kind, Kind::III);
        assert_eq!(c.semisimple_order, 1);
        assert_eq!(c.blocks, vec![4]);
    }

    #[test]
    fn phi5_companion_is_type_iv() {
        let t = Matrix::companion(&cyclotomic(5));
        let c = classify(&t, Weight::THREE).unwrap();
        assert_eq!(c.kind, Kind::IV);
        assert_eq!(c.semisimple_order, 5);
        assert!(c.blocks.is_empty());
    }

    #[test]
    fn mixed_and_excluded_forms_are_rejected() {
        let mixed = Matrix::diagonal(&[int(1), int(1), int(-1), int(-1)]);
        assert_eq!(
            reason(classify(&mixed, Weight::THREE).unwrap_err()),
            RejectReason::MixedCase
        );
        let two_plus_one =
            Matrix::block_diag(&[fixtures::unipotent_block(2), fixtures::unipotent_block(1)]);
        assert_eq!(
            reason(classify(&two_plus_one, Weight::TWO).unwrap_err()),
            RejectReason::ExcludedByPolarization
        );
        let three_plus_one =
            Matrix::block_diag(&[fixtures::unipotent_block(3), fixtures::unipotent_block(1)]);
        assert_eq!(
            reason(classify(&three_plus_one, Weight::THREE).unwrap_err()),
            RejectReason::ExcludedByPolarization
        );
    }

    #[test]
    fn non_quasi_unipotent_wins_over_mixed() {
        let t = Matrix::from_ints(&[&[2, 0], &[0, 1]]);
        assert_eq!(
            reason(classify(&t, Weight::ONE).unwrap_err()),
            RejectReason::NotQuasiUnipotent
        );
    }

    #[test]
    fn wrong_rank_and_singular_are_input_errors() {
        assert!(matches!(
            classify(&Matrix::identity(3), Weight::THREE),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            classify(&Matrix::zeros(2, 2), Weight::ONE),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn identity_is_trivial() {
        for w in [Weight::ONE, Weight::TWO, Weight::THREE] {
            let c = classify(&Matrix::identity(w.rank()), w).unwrap();
            assert_eq!(c.kind, Kind::Trivial);
        }
    }

    #[test]
    fn powering_examples() {
        let phi5 = Matrix::companion(&cyclotomic(5));
        assert_eq!(
            power_and_classify(&phi5, 5, Weight::THREE).unwrap().kind,
            Kind::Trivial
        );
        let minus_j = -&fixtures::unipotent_block(4);
        assert_eq!(
            power_and_classify(&minus_j, 2, Weight::THREE).unwrap().kind,
            Kind::III
        );
        let c3sq = Matrix::companion(&cyclotomic(3).pow(2));
        assert_eq!(
            power_and_classify(&c3sq, 3, Weight::THREE).unwrap().kind,
            Kind::II
        );
        assert_eq!(
            power_and_classify(&c3sq, 2, Weight::THREE).unwrap().kind,
            Kind::IV
        );
    }

    #[test]
    fn weight_one_and_two_labels() {
        let c = classify(&fixtures::unipotent_block(2), Weight::ONE).unwrap();
        assert_eq!(c.kind, Kind::I);
        let minus = Matrix::from_ints(&[&[-1, 1], &[0, -1]]);
        assert_eq!(classify(&minus, Weight::ONE).unwrap().kind, Kind::II);
        let c = classify(&fixtures::unipotent_block(3), Weight::TWO).unwrap();
        assert_eq!(c.kind, Kind::I);
        let rot = Matrix::block_diag(&[
            Matrix::companion(&Polynomial::from_ints(&[1, 1, 1])),
            Matrix::identity(1).scale(&int(-1)),
        ]);
        let c = classify(&rot, Weight::TWO).unwrap();
        assert_eq!((c.kind, c.semisimple_order), (Kind::II, 6));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("III".parse::<Kind>().unwrap(), Kind::III);
        assert_eq!("Trivial".parse::<Kind>().unwrap(), Kind::Trivial);
        assert!("V".parse::<Kind>().is_err());
        assert!(Kind::III.is_valid_for(Weight::THREE));
        assert!(!Kind::III.is_valid_for(Weight::TWO));
    }
}
