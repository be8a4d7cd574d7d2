use num_bigint::BigInt;
use num_traits::Zero;

use super::group::FgAbGroup;
use super::lattice::{column_lattice_basis, integer_kernel, solve};
use super::matrix::IntMatrix;
use super::IntLinError;

/// A homomorphism of presented groups, given on ambient generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

/// A subgroup together with its inclusion into the ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbGroup,
    /// Ambient coordinates (in the parent group) of the subgroup's ambient generators.
    pub inclusion: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, IntLinError> {
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(IntLinError::DimensionMismatch {
                expected: target.ambient_rank() * source.ambient_rank(),
                found: matrix.rows() * matrix.cols(),
                what: "homomorphism matrix",
            });
        }
        if !target.columns_vanish(&matrix.mul(source.relations())) {
            return Err(IntLinError::NotWellDefined);
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ambient_rank()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ambient_rank(), source.ambient_rank()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom, IntLinError> {
        // after ∘ self
        GroupHom::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix))
    }

    /// Lattice of ambient source vectors mapping to zero, as basis columns.
    fn kernel_lattice(&self) -> IntMatrix {
        let n = self.source.ambient_rank();
        let s = self.target.slot_matrix().mul(&self.matrix);
        let moduli = self.target.slot_moduli();
        let tors: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
        let mut d = IntMatrix::zeros(moduli.len(), tors.len());
        for (j, &i) in tors.iter().enumerate() {
            d[(i, j)] = moduli[i].clone();
        }
        let k = integer_kernel(&s.hstack(&d));
        let proj = k.row_range(0, n);
        // The lattice always contains the source relations; include them so a
        // zero-rank projection still yields a valid basis.
        column_lattice_basis(&proj.hstack(self.source.relations()))
    }

    pub fn kernel(&self) -> Subgroup {
        let basis = self.kernel_lattice();
        let rel = solve(&basis, self.source.relations()).expect("relations lie in the kernel lattice");
        let group = FgAbGroup::from_relations(basis.cols(), rel).expect("shape is consistent");
        Subgroup {
            group,
            inclusion: basis,
        }
    }

    /// The image, presented as a quotient of the source on the source's generators.
    pub fn image(&self) -> Subgroup {
        let basis = self.kernel_lattice();
        let group = FgAbGroup::from_relations(self.source.ambient_rank(), basis).expect("shape is consistent");
        Subgroup {
            group,
            inclusion: self.matrix.clone(),
        }
    }

    /// Cokernel on the target's generators; the projection is the identity matrix.
    pub fn cokernel(&self) -> FgAbGroup {
        self.target.quotient(&self.matrix).expect("shape is consistent")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Some ambient preimage of `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.target.slot_matrix().mul(&self.matrix);
        let moduli = self.target.slot_moduli();
        let mut d = IntMatrix::zeros(moduli.len(), moduli.len());
        for (i, md) in moduli.iter().enumerate() {
            d[(i, i)] = md.clone();
        }
        let rhs = IntMatrix::column_vector(&self.target.slot_matrix().mul_vec(y));
        let x = solve(&m.hstack(&d), &rhs)?;
        Some(x.column(0)[..self.source.ambient_rank()].to_vec())
    }
}

/// `ker g / im f` for composable `f: A -> B`, `g: B -> C` with `g ∘ f = 0`.
///
/// The result is presented on the generators of `ker g`; the returned
/// subgroup's `inclusion` maps them into the ambient coordinates of `B`.
pub fn subquotient(f: &GroupHom, g: &GroupHom) -> Result<Subgroup, IntLinError> {
    if f.target.ambient_rank() != g.source.ambient_rank() {
        return Err(IntLinError::DimensionMismatch {
            expected: g.source.ambient_rank(),
            found: f.target.ambient_rank(),
            what: "middle group",
        });
    }
    let ker = g.kernel();
    let coords = solve(&ker.inclusion, &f.matrix).ok_or(IntLinError::NotAComplex)?;
    let rel = ker.group.relations().hstack(&coords);
    let group = FgAbGroup::from_relations(ker.inclusion.cols(), rel)?;
    Ok(Subgroup {
        group,
        inclusion: ker.inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(g: &FgAbGroup) -> (usize, Vec<u64>) {
        (g.free_rank(), g.invariant_factors_u64())
    }

    #[test]
    fn multiplication_by_two_on_z() {
        let z = FgAbGroup::free(1);
        let h = GroupHom::new(z.clone(), z, IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(f(&h.kernel().group), (0, vec![]));
        assert_eq!(f(&h.cokernel()), (0, vec![2]));
        assert_eq!(f(&h.image().group), (1, vec![]));
    }

    #[test]
    fn sum_map_z2_to_z() {
        let h = GroupHom::new(FgAbGroup::free(2), FgAbGroup::free(1), IntMatrix::from_i64(1, 2, &[1, 1])).unwrap();
        assert_eq!(f(&h.kernel().group), (1, vec![]));
        assert!(h.cokernel().is_trivial());
        assert!(h.is_surjective());
    }

    #[test]
    fn zero_map_on_z4() {
        let z4 = FgAbGroup::cyclic(4);
        let h = GroupHom::zero(&z4, &z4);
        assert_eq!(f(&h.kernel().group), (0, vec![4]));
        assert!(h.image().group.is_trivial());
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        // Z/2 -> Z/3 sending 1 to 1 does not descend.
        let err = GroupHom::new(FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), IntMatrix::from_i64(1, 1, &[1]));
        assert!(matches!(err, Err(IntLinError::NotWellDefined)));
    }

    #[test]
    fn kernel_into_torsion_target() {
        // Z -> Z/6, 1 -> 2: kernel 3Z, image Z/3.
        let h = GroupHom::new(FgAbGroup::free(1), FgAbGroup::cyclic(6), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let k = h.kernel();
        assert_eq!(f(&k.group), (1, vec![]));
        assert_eq!(k.inclusion.entries()[0].magnitude(), &3u32.into());
        assert_eq!(f(&h.image().group), (0, vec![3]));
        assert_eq!(f(&h.cokernel()), (0, vec![2]));
        assert!(h.preimage(&[BigInt::from(4)]).is_some());
        assert!(h.preimage(&[BigInt::from(1)]).is_none());
    }

    #[test]
    fn homology_of_short_complex() {
        // Z --2--> Z --0--> Z : ker 0 / im 2 = Z/2.
        let z = FgAbGroup::free(1);
        let a = GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let b = GroupHom::zero(&z, &z);
        assert_eq!(f(&subquotient(&a, &b).unwrap().group), (0, vec![2]));
    }
}
