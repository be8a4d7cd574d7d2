//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod hom;
mod lattice;
mod matrix;
mod ops;
mod snf;

pub use group::{normalize_cyclic_orders, FgAbGroup, FiniteElements};
pub use hom::{subquotient, GroupHom, Subgroup};
pub use lattice::{column_lattice_basis, integer_kernel, lattice_contains, lattice_index, rank, solve};
pub use matrix::IntMatrix;
pub use ops::{hom_into_finite, pro_p_part, tensor, torsion_points, HomIntoFinite};
pub use snf::{smith_normal_form, snf_with, Snf, SnfRequest};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntLinError {
    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        what: &'static str,
    },
    #[error("map does not respect the relations of its source")]
    NotWellDefined,
    #[error("composite is not zero")]
    NotAComplex,
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("group is too large to enumerate")]
    TooLarge,
}
