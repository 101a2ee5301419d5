//! Exact computations for variations of Hodge structure of rank two to
//! four with all Hodge numbers one over a curve: local monodromy types,
//! monodromy weight filtrations, the twists of the L2 Higgs complex, and
//! the resulting Hodge numbers of `H¹(S̄, j_*V)`.
//!
//! Everything is done over the rationals; no floating point is used.

pub mod algebra;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod hodge;
pub mod monodromy;
pub mod table;
pub mod weight_filtration;
pub mod wire;

pub use algebra::{Matrix, Polynomial, Rational};
pub use error::{ClassificationError, Error, RejectReason, Result};
pub use family::{
    base_change, degree_ledger, family_report, hodge_from_ledger, resolve, DegreeLedger,
    FamilyDescriptor, FamilyReport, MarkedPoint,
};
pub use hodge::{
    arakelov_bound, check_sum, hodge_decomposed, hodge_weight1, hodge_weight2, hodge_weight3,
    parabolic_degree, DegenerationCounts, HodgeInput, HodgeNumbers,
};
pub use monodromy::{classify, power_and_classify, Kind, MonodromyClass, Weight};
pub use table::{audit_all, load_table, AuditReport, TableRow};
pub use weight_filtration::{twist_ledger, weight_filtration, TwistLedger, WeightFiltration};
