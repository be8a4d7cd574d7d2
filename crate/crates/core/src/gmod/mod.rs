//! Finite groups, modules over them, and their low-degree (co)homology.

mod cocycle;
mod group;
mod homology;
mod module;

pub use cocycle::{CocycleViolation, TwoCocycle};
pub use group::FiniteGroup;
pub use homology::{cohomology, homology, tate};
pub use module::{augmentation_action, GModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GModError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid 2-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(i32),
    #[error("internal error: {0}")]
    Internal(String),
}
