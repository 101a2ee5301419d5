//! Nilpotent logarithms, monodromy weight filtrations and the local twist
//! data of the L2 Higgs complex.

mod filtration;
mod ledger;

pub use filtration::{
    nilpotent_exp, nilpotent_log, weight_filtration, weight_filtration_closed_form, FiltrationJson,
    GradedJson, LevelJson, WeightFiltration,
};
pub use ledger::{line_weights, twist_ledger, twist_ledger_for, ChainAlignment, TwistLedger};
