//! The twisted extension module `ℰ = A ⊕ I_Δ`, the coinvariants of `ℰ ⊗ M`,
//! and the exact sequence `0 -> H₁ -> (ℰ⊗M)_Δ -> I_Δ M -> 0`.

use num_bigint::BigInt;

use crate::gmod::{augmentation_action, FiniteGroup, GModule, TwoCocycle};
use crate::intlin::{column_lattice_basis, solve, FgAbGroup, GroupHom, IntMatrix, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EeError {
    #[error("invalid 2-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("twisted action fails the module axioms: {0}")]
    ActionAxioms(String),
    #[error("module is not free over Z")]
    NotALattice,
    #[error("{0}")]
    Internal(String),
}

/// `A ⊕ I_Δ` with `d ∗ (a, c-1) = (d·a + κ(d,c), dc - d)`.
///
/// Ambient generators: those of `A` first, then `c - 1` for `c != 1` in
/// element order.
#[derive(Clone, Debug)]
pub struct EModule {
    kappa: TwoCocycle,
    module: GModule,
}

impl EModule {
    pub fn a_part(&self) -> &GModule {
        self.kappa.module()
    }

    pub fn kappa(&self) -> &TwoCocycle {
        &self.kappa
    }

    pub fn delta(&self) -> &FiniteGroup {
        self.module.group()
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// Number of ambient generators coming from `A`.
    pub fn a_rank(&self) -> usize {
        self.a_part().rank()
    }

    /// Ambient index of the generator `c - 1` (`c != 1`).
    pub fn augmentation_index(&self, c: usize) -> Option<usize> {
        let d = self.delta();
        (c != d.identity()).then(|| self.a_rank() + d.nontrivial().iter().position(|&x| x == c).unwrap())
    }
}

/// Action matrix of `d` on `ℰ`.
pub fn twisted_action(kappa: &TwoCocycle, d: usize) -> IntMatrix {
    let a = kappa.module();
    let g = a.group();
    let basis = g.nontrivial();
    let na = a.rank();
    let n = na + basis.len();
    let mut m = IntMatrix::zeros(n, n);
    let ad = a.action(d);
    for i in 0..na {
        for j in 0..na {
            m[(i, j)] = ad[(i, j)].clone();
        }
    }
    let aug = augmentation_action(g, d);
    for (j, &c) in basis.iter().enumerate() {
        let k = kappa.value(d, c);
        for i in 0..na {
            m[(i, na + j)] = k[i].clone();
        }
        for i in 0..basis.len() {
            m[(na + i, na + j)] = aug[(i, j)].clone();
        }
    }
    m
}

pub fn build_e(kappa: &TwoCocycle) -> Result<EModule, EeError> {
    kappa
        .validate()
        .map_err(|v| EeError::InvalidCocycle(v.to_string()))?;
    build_e_unchecked(kappa)
}

/// Build `ℰ` without validating `κ` first; the module axioms are still checked.
pub fn build_e_unchecked(kappa: &TwoCocycle) -> Result<EModule, EeError> {
    let a = kappa.module();
    let g = a.group();
    let underlying = FgAbGroup::direct_sum(&[a.underlying(), &FgAbGroup::free(g.order() - 1)]);
    let action = g.elements().map(|d| twisted_action(kappa, d)).collect();
    let module = GModule::new(g.clone(), underlying, action).map_err(|e| EeError::ActionAxioms(e.to_string()))?;
    Ok(EModule {
        kappa: kappa.clone(),
        module,
    })
}

/// `(ℰ⊗M)_Δ` with the map `q` onto `I_Δ M ⊆ M`.
#[derive(Clone, Debug)]
pub struct QData {
    /// `ℰ ⊗ M` with ambient index `x * rank M + i`.
    pub tensor: GModule,
    /// Coinvariants, on the ambient generators of `ℰ ⊗ M`.
    pub coinv: FgAbGroup,
    /// `q: (ℰ⊗M)_Δ -> M`; its image is `I_Δ M`.
    pub q: GroupHom,
    /// Basis of the lattice `I_Δ M` (columns in `M`).
    pub image_basis: IntMatrix,
    /// `ker q` with its inclusion into the coinvariants.
    pub h1: Subgroup,
    /// Preimages of `image_basis` under `q` (columns in coinvariant ambient coordinates).
    pub split: IntMatrix,
    /// `rank I_Δ M`.
    pub s: usize,
    /// `rank M_Δ`.
    pub rank_m_coinv: usize,
    pub rank_m: usize,
}

pub fn coinvariants_with_q(e: &EModule, m: &GModule) -> Result<QData, EeError> {
    let mu = m.underlying();
    if mu.free_rank() != mu.ambient_rank() {
        return Err(EeError::NotALattice);
    }
    let delta = e.delta();
    let rm = m.rank();
    let tensor = e
        .module
        .tensor(m)
        .map_err(|err| EeError::Internal(err.to_string()))?;
    let coinv = tensor.coinvariants();
    let na = e.a_rank();
    let mut qm = IntMatrix::zeros(rm, tensor.rank());
    for (j, &c) in delta.nontrivial().iter().enumerate() {
        let diff = m.action(delta.inv(c)).sub(&IntMatrix::identity(rm));
        for i in 0..rm {
            let col = (na + j) * rm + i;
            for r in 0..rm {
                qm[(r, col)] = diff[(r, i)].clone();
            }
        }
    }
    let q = GroupHom::new(coinv.clone(), FgAbGroup::free(rm), qm.clone())
        .map_err(|err| EeError::Internal(format!("q does not descend to coinvariants: {err}")))?;
    let image_basis = column_lattice_basis(&qm);
    let s = image_basis.cols();
    let split = solve(&qm, &image_basis).ok_or_else(|| EeError::Internal("q is not onto its image".into()))?;
    if qm.mul(&split) != image_basis {
        return Err(EeError::Internal("split is not a right inverse of q".into()));
    }
    let h1 = q.kernel();
    let rank_m_coinv = m.coinvariants().free_rank();
    if s + rank_m_coinv != rm {
        return Err(EeError::Internal(format!(
            "rank I_Delta M = {s} but rank M - rank M_Delta = {}",
            rm - rank_m_coinv
        )));
    }
    if coinv.free_rank() != h1.group.free_rank() + s || coinv.invariant_factors() != h1.group.invariant_factors() {
        return Err(EeError::Internal("coinvariants do not split as h1 + Z^s".into()));
    }
    Ok(QData {
        tensor,
        coinv,
        q,
        image_basis,
        h1,
        split,
        s,
        rank_m_coinv,
        rank_m: rm,
    })
}

/// `Z[(ℰ⊗M)_Δ] ≅ Z[h1][t_1^{±1}, .., t_s^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraDescriptor {
    pub base_free_rank: usize,
    pub base_torsion: Vec<BigInt>,
    pub h1_free_rank: usize,
    pub h1_torsion: Vec<BigInt>,
    pub laurent: usize,
}

impl GroupAlgebraDescriptor {
    /// `Z[Z/8]`, `Z[Z^2 x Z/2]`, `Z[0]` style rendering of the base group algebra.
    pub fn render_base(&self) -> String {
        format!("Z[{}]", group_string(self.base_free_rank, &self.base_torsion))
    }

    /// `Z[h1][t1^±1,..]` rendering.
    pub fn render_split(&self) -> String {
        let mut s = format!("Z[{}]", group_string(self.h1_free_rank, &self.h1_torsion));
        if self.laurent > 0 {
            let vars: Vec<String> = (1..=self.laurent).map(|i| format!("t{i}^±1")).collect();
            s.push_str(&format!("[{}]", vars.join(",")));
        }
        s
    }
}

pub fn representing_algebra(q: &QData) -> Result<GroupAlgebraDescriptor, EeError> {
    if q.s != q.rank_m - q.rank_m_coinv {
        return Err(EeError::Internal("Laurent rank disagrees with rank M - rank M_Delta".into()));
    }
    Ok(GroupAlgebraDescriptor {
        base_free_rank: q.coinv.free_rank(),
        base_torsion: q.coinv.invariant_factors().to_vec(),
        h1_free_rank: q.h1.group.free_rank(),
        h1_torsion: q.h1.group.invariant_factors().to_vec(),
        laurent: q.s,
    })
}

/// `Z^2 x Z/2 x Z/4`; the trivial group renders as `0`.
pub fn group_string(free: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in torsion {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

pub fn fg_group_string(g: &FgAbGroup) -> String {
    group_string(g.free_rank(), g.invariant_factors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn z4_kappa(k: i64) -> TwoCocycle {
        let a = GModule::trivial(&FiniteGroup::cyclic(2), FgAbGroup::cyclic(4));
        TwoCocycle::from_fn(a, |d, c| vec![BigInt::from(if d == 1 && c == 1 { k } else { 0 })]).unwrap()
    }

    fn sign(g: &FiniteGroup) -> GModule {
        GModule::lattice(g, 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap()
    }

    fn f(g: &FgAbGroup) -> (usize, Vec<u64>) {
        (g.free_rank(), g.invariant_factors_u64())
    }

    #[test]
    fn twisted_action_on_augmentation_generator() {
        let e = build_e(&z4_kappa(1)).unwrap();
        let x = e.module().act(1, &[BigInt::zero(), BigInt::one()]);
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(-1)]);
    }

    #[test]
    fn zero_kappa_is_untwisted() {
        let e = build_e(&z4_kappa(0)).unwrap();
        assert_eq!(e.module().action(1), &IntMatrix::from_i64(2, 2, &[1, 0, 0, -1]));
    }

    #[test]
    fn trivial_a_gives_augmentation_ideal() {
        let g = FiniteGroup::cyclic(2);
        let e = build_e(&TwoCocycle::zero(&GModule::trivial(&g, FgAbGroup::trivial()))).unwrap();
        assert_eq!(e.module().rank(), 1);
        assert_eq!(e.module().action(1), &IntMatrix::from_i64(1, 1, &[-1]));
    }

    #[test]
    fn cyclic_eight_worked_case() {
        let e = build_e(&z4_kappa(1)).unwrap();
        let q = coinvariants_with_q(&e, &GModule::trivial_z(e.delta())).unwrap();
        assert_eq!(f(&q.coinv), (0, vec![8]));
        assert_eq!(q.s, 0);
        assert_eq!(f(&q.h1.group), (0, vec![8]));
        assert_eq!(representing_algebra(&q).unwrap().render_base(), "Z[Z/8]");
    }

    #[test]
    fn sign_lattice_over_trivial_a() {
        let g = FiniteGroup::cyclic(2);
        let e = build_e(&TwoCocycle::zero(&GModule::trivial(&g, FgAbGroup::trivial()))).unwrap();
        let q = coinvariants_with_q(&e, &sign(&g)).unwrap();
        assert_eq!(f(&q.coinv), (1, vec![]));
        assert_eq!(q.q.matrix(), &IntMatrix::from_i64(1, 1, &[-2]));
        assert!(q.h1.group.is_trivial());
        let d = representing_algebra(&q).unwrap();
        assert_eq!(d.render_split(), "Z[0][t1^±1]");
        assert_eq!(d.laurent, 1);
    }

    #[test]
    fn trivial_delta_keeps_everything() {
        let g = FiniteGroup::trivial();
        let a = GModule::trivial(&g, FgAbGroup::from_invariants(&[3], 1));
        let e = build_e(&TwoCocycle::zero(&a)).unwrap();
        let m = GModule::trivial(&g, FgAbGroup::free(2));
        let q = coinvariants_with_q(&e, &m).unwrap();
        assert_eq!(f(&q.h1.group), (2, vec![3, 3]));
        assert_eq!(q.s, 0);
    }

    #[test]
    fn regular_lattice_laurent_rank() {
        let g = FiniteGroup::cyclic(2);
        let e = build_e(&TwoCocycle::zero(&GModule::trivial(&g, FgAbGroup::trivial()))).unwrap();
        let q = coinvariants_with_q(&e, &GModule::group_ring(&g)).unwrap();
        assert_eq!(q.s, 1);
    }

    #[test]
    fn corrupted_kappa_breaks_the_action() {
        let a = GModule::trivial(&FiniteGroup::cyclic(3), FgAbGroup::cyclic(3));
        let mut vals = vec![vec![BigInt::zero()]; 9];
        vals[4] = vec![BigInt::one()]; // κ(σ,σ) = 1 only
        let k = TwoCocycle::from_table(a, vals).unwrap();
        assert!(k.validate().is_err());
        assert!(matches!(build_e_unchecked(&k), Err(EeError::ActionAxioms(_))));
    }
}
