//! Finite extension models `A ×_κ Δ`, 1-cocycle enumeration, the induced-module
//! section, and the representation bridge.

mod coeff;
mod model;
mod rep;
mod shapiro;
mod units;
mod z1;

pub use coeff::{hom_module, induced_delta_action, induced_module, SlotArith};
pub use model::FiniteGroupModel;
pub use rep::{
    cocycle_of_rep, conjugate, enumerate_reps, is_homomorphism_over_pi, pseudochar_of_rep, rep_from_cocycle,
    semidirect_mul, Rep,
};
pub use shapiro::{
    cocycle_from_pair, delta_act_on_cocycle, delta_act_on_pair, pair_from_cocycle, psi_from_cocycle,
    shapiro_section, Bridge, Pair,
};
pub use units::UnitGroupRing;
pub use z1::{enumerate_z1, h1_cardinality, CocycleTable, Z1Space, DEFAULT_BUDGET};

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtModelError {
    #[error("invalid 2-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("the kernel group A must be finite")]
    InfiniteA,
    #[error("module is not free over Z")]
    NotALattice,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: BigInt, budget: u64 },
    #[error("object is too large to enumerate")]
    TooLarge,
    #[error("internal error: {0}")]
    Internal(String),
}
