use std::collections::VecDeque;

use num_bigint::BigInt;

use super::group::FiniteGroup;
use super::GModError;
use crate::intlin::{tensor, FgAbGroup, GroupHom, IntMatrix, Subgroup};

/// A finite group acting on a presented abelian group; one matrix per element
/// on ambient generators.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    underlying: FgAbGroup,
    action: Vec<IntMatrix>,
}

impl GModule {
    /// Validated module from one matrix per group element.
    pub fn new(group: FiniteGroup, underlying: FgAbGroup, action: Vec<IntMatrix>) -> Result<Self, GModError> {
        let n = underlying.ambient_rank();
        if action.len() != group.order() {
            return Err(GModError::InvalidAction(format!(
                "expected {} action matrices, found {}",
                group.order(),
                action.len()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(GModError::InvalidAction(format!("action matrix of element {g} is not {n}x{n}")));
            }
            if !underlying.columns_vanish(&a.mul(underlying.relations())) {
                return Err(GModError::InvalidAction(format!(
                    "action of element {g} does not preserve the relations"
                )));
            }
        }
        let id = IntMatrix::identity(n);
        if !underlying.columns_vanish(&action[group.identity()].sub(&id)) {
            return Err(GModError::InvalidAction("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let lhs = action[g].mul(&action[h]);
                if !underlying.columns_vanish(&lhs.sub(&action[group.mul(g, h)])) {
                    return Err(GModError::InvalidAction(format!(
                        "action is not multiplicative at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(GModule {
            group,
            underlying,
            action,
        })
    }

    /// Extend an action given on generators to the whole group, then validate.
    pub fn from_generators(
        group: FiniteGroup,
        underlying: FgAbGroup,
        gens: &[(usize, IntMatrix)],
    ) -> Result<Self, GModError> {
        let n = underlying.ambient_rank();
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[group.identity()] = Some(IntMatrix::identity(n));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let ax = action[x].clone().unwrap();
            for (s, a) in gens {
                if a.rows() != n || a.cols() != n {
                    return Err(GModError::InvalidAction(format!("generator {s} matrix is not {n}x{n}")));
                }
                let y = group.mul(*s, x);
                if action[y].is_none() {
                    action[y] = Some(a.mul(&ax));
                    queue.push_back(y);
                }
            }
        }
        if action.iter().any(Option::is_none) {
            return Err(GModError::InvalidAction("listed elements do not generate the group".into()));
        }
        Self::new(group, underlying, action.into_iter().map(Option::unwrap).collect())
    }

    pub fn trivial(group: &FiniteGroup, underlying: FgAbGroup) -> Self {
        let n = underlying.ambient_rank();
        GModule {
            group: group.clone(),
            action: vec![IntMatrix::identity(n); group.order()],
            underlying,
        }
    }

    /// `Z` with the trivial action.
    pub fn trivial_z(group: &FiniteGroup) -> Self {
        Self::trivial(group, FgAbGroup::free(1))
    }

    /// Free lattice `Z^n` with the given matrices on generators.
    pub fn lattice(group: &FiniteGroup, rank: usize, gens: &[(usize, IntMatrix)]) -> Result<Self, GModError> {
        Self::from_generators(group.clone(), FgAbGroup::free(rank), gens)
    }

    /// `Z[Δ]` on the basis of group elements, left translation.
    pub fn group_ring(group: &FiniteGroup) -> Self {
        let n = group.order();
        let action = group
            .elements()
            .map(|d| {
                let mut a = IntMatrix::zeros(n, n);
                for c in group.elements() {
                    a[(group.mul(d, c), c)] = BigInt::from(1);
                }
                a
            })
            .collect();
        GModule {
            group: group.clone(),
            underlying: FgAbGroup::free(n),
            action,
        }
    }

    /// `I_Δ` on the basis `c - 1` for `c != 1`, in element order.
    pub fn augmentation_ideal(group: &FiniteGroup) -> Self {
        let basis = group.nontrivial();
        let n = basis.len();
        let action = group
            .elements()
            .map(|d| augmentation_action(group, d))
            .collect();
        GModule {
            group: group.clone(),
            underlying: FgAbGroup::free(n),
            action,
        }
    }

    /// Pull back along a homomorphism `map: G -> Δ` (indexed by elements of `G`).
    pub fn inflate(&self, g: &FiniteGroup, map: &[usize]) -> Result<Self, GModError> {
        if !g.is_homomorphism(&self.group, map) {
            return Err(GModError::InvalidAction("inflation map is not a homomorphism".into()));
        }
        Ok(GModule {
            group: g.clone(),
            underlying: self.underlying.clone(),
            action: map.iter().map(|&d| self.action[d].clone()).collect(),
        })
    }

    pub fn direct_sum(parts: &[&GModule]) -> Result<Self, GModError> {
        let group = parts.first().map(|p| p.group.clone()).ok_or_else(|| {
            GModError::InvalidAction("direct sum of no modules".into())
        })?;
        if parts.iter().any(|p| p.group != group) {
            return Err(GModError::InvalidAction("direct sum over different groups".into()));
        }
        let underlying = FgAbGroup::direct_sum(&parts.iter().map(|p| &p.underlying).collect::<Vec<_>>());
        let action = group
            .elements()
            .map(|g| IntMatrix::block_diag(&parts.iter().map(|p| &p.action[g]).collect::<Vec<_>>()))
            .collect();
        Ok(GModule {
            group,
            underlying,
            action,
        })
    }

    /// Diagonal action on the tensor product.
    pub fn tensor(&self, other: &GModule) -> Result<Self, GModError> {
        if self.group != other.group {
            return Err(GModError::InvalidAction("tensor over different groups".into()));
        }
        let underlying = tensor(&self.underlying, &other.underlying);
        let action = self
            .group
            .elements()
            .map(|g| self.action[g].kron(&other.action[g]))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            underlying,
            action,
        })
    }

    /// Same action, with extra relations (which must be stable under the action).
    pub fn quotient(&self, extra: &IntMatrix) -> Result<Self, GModError> {
        let underlying = self
            .underlying
            .quotient(extra)
            .map_err(|e| GModError::InvalidAction(e.to_string()))?;
        GModule::new(self.group.clone(), underlying, self.action.clone())
    }

    /// An isomorphic module on the cyclic slots of the underlying group, with
    /// actions reduced modulo the slot orders.
    pub fn on_slots(&self) -> Self {
        let u = &self.underlying;
        let n = u.num_slots();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, m) in u.slot_moduli().iter().enumerate() {
            rel[(i, i)] = m.clone();
        }
        let underlying = FgAbGroup::from_relations(n, rel).expect("diagonal relations");
        let action = self
            .action
            .iter()
            .map(|a| u.canonical_columns(&a.mul(u.lift_matrix())))
            .collect();
        GModule {
            group: self.group.clone(),
            underlying,
            action,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn underlying(&self) -> &FgAbGroup {
        &self.underlying
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.underlying.ambient_rank()
    }

    pub fn act(&self, g: usize, x: &[BigInt]) -> Vec<BigInt> {
        self.action[g].mul_vec(x)
    }

    /// Sum of all action matrices.
    pub fn norm_matrix(&self) -> IntMatrix {
        let n = self.rank();
        self.action.iter().fold(IntMatrix::zeros(n, n), |acc, a| acc.add(a))
    }

    fn generator_differences(&self) -> Vec<IntMatrix> {
        let id = IntMatrix::identity(self.rank());
        self.group
            .generators()
            .iter()
            .map(|&g| self.action[g].sub(&id))
            .collect()
    }

    /// `N^Δ` as a subgroup of the underlying group.
    pub fn invariants(&self) -> Subgroup {
        let diffs = self.generator_differences();
        let target = self.underlying.power(diffs.len());
        let m = if diffs.is_empty() {
            IntMatrix::zeros(0, self.rank())
        } else {
            IntMatrix::vcat(&diffs.iter().collect::<Vec<_>>())
        };
        GroupHom::new(self.underlying.clone(), target, m)
            .expect("action preserves relations")
            .kernel()
    }

    /// `N_Δ` on the underlying generators (the projection is the identity).
    pub fn coinvariants(&self) -> FgAbGroup {
        let diffs = self.generator_differences();
        let m = if diffs.is_empty() {
            IntMatrix::zeros(self.rank(), 0)
        } else {
            IntMatrix::hcat(&diffs.iter().collect::<Vec<_>>())
        };
        self.underlying.quotient(&m).expect("shape is consistent")
    }
}

/// Matrix of `d` on the basis `{c - 1 : c != 1}` of `I_Δ`: `d(c-1) = (dc-1) - (d-1)`.
pub fn augmentation_action(group: &FiniteGroup, d: usize) -> IntMatrix {
    let basis = group.nontrivial();
    let pos = |x: usize| basis.iter().position(|&b| b == x);
    let n = basis.len();
    let mut a = IntMatrix::zeros(n, n);
    for (j, &c) in basis.iter().enumerate() {
        if let Some(i) = pos(group.mul(d, c)) {
            a[(i, j)] += 1;
        }
        if let Some(i) = pos(d) {
            a[(i, j)] -= 1;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(g: &FgAbGroup) -> (usize, Vec<u64>) {
        (g.free_rank(), g.invariant_factors_u64())
    }

    #[test]
    fn augmentation_ideal_of_z2_is_sign() {
        let g = FiniteGroup::cyclic(2);
        let i = GModule::augmentation_ideal(&g);
        assert_eq!(i.action(1), &IntMatrix::from_i64(1, 1, &[-1]));
    }

    #[test]
    fn augmentation_ideal_of_z3() {
        let g = FiniteGroup::cyclic(3);
        let i = GModule::augmentation_ideal(&g);
        assert_eq!(i.rank(), 2);
        assert_eq!(i.action(1), &IntMatrix::from_i64(2, 2, &[-1, -1, 1, 0]));
        assert_eq!(GModule::augmentation_ideal(&FiniteGroup::s3()).rank(), 5);
    }

    #[test]
    fn sign_module_invariants() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::lattice(&g, 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap();
        assert!(m.invariants().group.is_trivial());
        assert_eq!(f(&m.coinvariants()), (0, vec![2]));
    }

    #[test]
    fn swap_module_invariants() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::lattice(&g, 2, &[(1, IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]))]).unwrap();
        assert_eq!(f(&m.invariants().group), (1, vec![]));
        assert_eq!(f(&m.coinvariants()), (1, vec![]));
    }

    #[test]
    fn trivial_action_fixes_everything() {
        let g = FiniteGroup::klein4();
        let m = GModule::trivial(&g, FgAbGroup::from_invariants(&[4], 1));
        assert_eq!(f(&m.invariants().group), (1, vec![4]));
        assert_eq!(f(&m.coinvariants()), (1, vec![4]));
    }

    #[test]
    fn non_multiplicative_action_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        let bad = GModule::lattice(&g, 1, &[(1, IntMatrix::from_i64(1, 1, &[2]))]);
        assert!(bad.is_err());
    }

    #[test]
    fn slot_copy_is_isomorphic() {
        let g = FiniteGroup::cyclic(3);
        let r = GModule::group_ring(&g);
        let r2 = r.quotient(&IntMatrix::scalar(3, 2)).unwrap();
        let m = GModule::direct_sum(&[&r2, &GModule::trivial_z(&g)]).unwrap();
        // glue a relation so ambient generators and slots differ
        let m = m.quotient(&IntMatrix::from_i64(4, 1, &[1, 1, 1, 0])).unwrap();
        let s = m.on_slots();
        assert!(GModule::new(g.clone(), s.underlying().clone(), s.actions().to_vec()).is_ok());
        assert_eq!(s.rank(), s.underlying().num_slots());
        assert_eq!(f(s.underlying()), f(m.underlying()));
        assert_eq!(f(&s.invariants().group), f(&m.invariants().group));
        assert_eq!(f(&s.coinvariants()), f(&m.coinvariants()));
    }
}
