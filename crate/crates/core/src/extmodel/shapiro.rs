//! Cocycles on induced modules: the explicit section `φ ↦ Φ_φ`, the pair
//! parametrization `(φ, α) ↦ Φ_φ + b_α`, the `Δ`-actions on both sides, and
//! the bridge between `Z¹(Γ₁, W)` and `Δ`-invariant cocycles on `Ind W`.

use num_bigint::BigInt;

use super::coeff::{induced_delta_action, induced_module};
use super::model::FiniteGroupModel;
use super::z1::CocycleTable;
use super::ExtModelError;
use crate::ee::QData;
use crate::gmod::GModule;
use crate::intlin::{FgAbGroup, GroupHom, IntMatrix};

/// A homomorphism `A ⊕ I_Δ -> V`: `phi` on the ambient generators of `A`,
/// `alpha` on the basis `c - 1` (`c != 1`, element order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub phi: IntMatrix,
    pub alpha: IntMatrix,
}

impl Pair {
    pub fn zero(model: &FiniteGroupModel, v: &FgAbGroup) -> Self {
        Pair {
            phi: IntMatrix::zeros(v.ambient_rank(), model.a_module().rank()),
            alpha: IntMatrix::zeros(v.ambient_rank(), model.delta().order() - 1),
        }
    }

    /// Canonical form in `V` of every column, for comparison.
    pub fn key(&self, v: &FgAbGroup) -> (IntMatrix, IntMatrix) {
        (v.canonical_columns(&self.phi), v.canonical_columns(&self.alpha))
    }
}

fn check_phi(model: &FiniteGroupModel, v: &FgAbGroup, phi: &IntMatrix) -> Result<(), ExtModelError> {
    GroupHom::new(model.a_module().underlying().clone(), v.clone(), phi.clone())
        .map(|_| ())
        .map_err(|_| ExtModelError::InvalidInput("phi is not a homomorphism A -> V".into()))
}

/// `[Φ_φ(g)](c) = φ(c̄ g (c π(g))̄⁻¹)` with `c̄ = (0, c)`, on `Ind V` (block `c`).
pub fn shapiro_section(model: &FiniteGroupModel, v: &FgAbGroup, phi: &IntMatrix) -> Result<CocycleTable, ExtModelError> {
    check_phi(model, v, phi)?;
    let g1 = model.group();
    let delta = model.delta();
    let values = g1
        .elements()
        .map(|g| {
            let mut out = Vec::with_capacity(delta.order() * v.ambient_rank());
            for c in delta.elements() {
                let rep = model.section(delta.mul(c, model.pi(g)));
                let x = g1.mul(g1.mul(model.section(c), g), g1.inv(rep));
                debug_assert_eq!(model.pi(x), delta.identity());
                out.extend(phi.mul_vec(model.a_value(x)));
            }
            out
        })
        .collect();
    Ok(CocycleTable { values })
}

/// `f_α` with `f_α(c) = α(c - 1)` and `f_α(1) = 0`, as an element of `Ind V`.
fn f_alpha(model: &FiniteGroupModel, alpha: &IntMatrix) -> Vec<BigInt> {
    let delta = model.delta();
    let k = alpha.rows();
    let nontrivial = delta.nontrivial();
    let mut f = vec![BigInt::from(0); delta.order() * k];
    for (j, &c) in nontrivial.iter().enumerate() {
        for i in 0..k {
            f[c * k + i] = alpha[(i, j)].clone();
        }
    }
    f
}

/// `Φ_φ + b_α` with `b_α(g) = (g - 1) f_α`.
pub fn cocycle_from_pair(model: &FiniteGroupModel, v: &FgAbGroup, pair: &Pair) -> Result<CocycleTable, ExtModelError> {
    if pair.alpha.rows() != v.ambient_rank() || pair.alpha.cols() + 1 != model.delta().order() {
        return Err(ExtModelError::InvalidInput("alpha has the wrong shape".into()));
    }
    let ind = induced_module(model, v)?;
    let base = shapiro_section(model, v, &pair.phi)?;
    let b = CocycleTable::coboundary(&ind, &f_alpha(model, &pair.alpha));
    Ok(base.add(&b))
}

/// Inverse of [`cocycle_from_pair`]: `φ(a) = Φ((a,1))(1)`, `α(c - 1) = Φ((0,c))(1)`.
pub fn pair_from_cocycle(model: &FiniteGroupModel, v: &FgAbGroup, phi: &CocycleTable) -> Pair {
    let k = v.ambient_rank();
    let delta = model.delta();
    let e = delta.identity();
    let a = model.a_module().underlying();
    let at_one = |g: usize| phi.values[g][e * k..(e + 1) * k].to_vec();
    let phi_cols: Vec<Vec<BigInt>> = (0..a.ambient_rank())
        .map(|l| {
            let mut u = vec![BigInt::from(0); a.ambient_rank()];
            u[l] = BigInt::from(1);
            at_one(model.from_a(model.a_index_of(&u)))
        })
        .collect();
    let alpha_cols: Vec<Vec<BigInt>> = delta.nontrivial().iter().map(|&c| at_one(model.section(c))).collect();
    Pair {
        phi: IntMatrix::from_columns(k, &phi_cols),
        alpha: IntMatrix::from_columns(k, &alpha_cols),
    }
}

/// `[(d ∗ Φ)(g)](c) = [Φ(g)](d⁻¹ c)` on `Z¹(Γ₁, Ind V)`.
pub fn delta_act_on_cocycle(model: &FiniteGroupModel, v: &FgAbGroup, d: usize, phi: &CocycleTable) -> CocycleTable {
    let trivial = GModule::trivial(model.delta(), v.clone());
    let lam = &induced_delta_action(&trivial)[d];
    CocycleTable {
        values: phi.values.iter().map(|x| lam.mul_vec(x)).collect(),
    }
}

/// The dual of the twisted action on pairs:
/// `φ'(a) = φ(d⁻¹·a)`, `α'(c-1) = φ(κ(d⁻¹,c)) + α(d⁻¹c - 1) - α(d⁻¹ - 1)`.
pub fn delta_act_on_pair(model: &FiniteGroupModel, d: usize, pair: &Pair) -> Pair {
    let delta = model.delta();
    let a = model.a_module();
    let dinv = delta.inv(d);
    let phi = pair.phi.mul(a.action(dinv));
    let k = pair.phi.rows();
    let nontrivial = delta.nontrivial();
    let alpha_at = |c: usize| -> Vec<BigInt> {
        match nontrivial.iter().position(|&x| x == c) {
            Some(j) => pair.alpha.column(j),
            None => vec![BigInt::from(0); k],
        }
    };
    let cols: Vec<Vec<BigInt>> = nontrivial
        .iter()
        .map(|&c| {
            let t1 = pair.phi.mul_vec(model.kappa().value(dinv, c));
            let t2 = alpha_at(delta.mul(dinv, c));
            let t3 = alpha_at(dinv);
            (0..k).map(|i| &t1[i] + &t2[i] - &t3[i]).collect()
        })
        .collect();
    Pair {
        phi,
        alpha: IntMatrix::from_columns(k, &cols),
    }
}

/// The bridge `Z¹(Γ₁, W) -> Z¹(Γ₁, Ind W)^Δ`, `ϑ(w)(c) = c·w`, and its inverse
/// `F ↦ (g ↦ F(g)(1))`. `w` is a module over `Δ`; `Γ₁` acts through `π`.
pub struct Bridge {
    pub w: GModule,
    /// `W` inflated to `Γ₁`.
    pub w_inflated: GModule,
    /// `Ind W` with `Γ₁` acting by right translation.
    pub induced: GModule,
    /// `Δ` acting on `Ind W` by `[d·f](c) = d·f(d⁻¹c)`.
    pub delta_action: Vec<IntMatrix>,
    theta: IntMatrix,
}

impl Bridge {
    pub fn new(model: &FiniteGroupModel, w: &GModule) -> Result<Self, ExtModelError> {
        let w_inflated = w
            .inflate(model.group(), model.projection())
            .map_err(|e| ExtModelError::Internal(e.to_string()))?;
        let induced = induced_module(model, w.underlying())?;
        let delta_action = induced_delta_action(w);
        let theta = IntMatrix::vcat(&model.delta().elements().map(|c| w.action(c)).collect::<Vec<_>>());
        Ok(Bridge {
            w: w.clone(),
            w_inflated,
            induced,
            delta_action,
            theta,
        })
    }

    pub fn theta(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.theta.mul_vec(x)
    }

    pub fn forward(&self, phi: &CocycleTable) -> CocycleTable {
        CocycleTable {
            values: phi.values.iter().map(|x| self.theta(x)).collect(),
        }
    }

    pub fn backward(&self, f: &CocycleTable) -> CocycleTable {
        let k = self.w.rank();
        let e = self.w.group().identity();
        CocycleTable {
            values: f.values.iter().map(|x| x[e * k..(e + 1) * k].to_vec()).collect(),
        }
    }

    /// Is `F` fixed by `Δ`?
    pub fn is_invariant(&self, f: &CocycleTable) -> bool {
        let u = self.induced.underlying();
        self.delta_action.iter().all(|lam| {
            f.values
                .iter()
                .all(|x| u.elements_equal(&lam.mul_vec(x), x))
        })
    }
}

/// The homomorphism `(ℰ⊗M)_Δ -> V` attached to `Φ ∈ Z¹(Γ₁, Hom(M,V))`:
/// `(a,0)⊗m ↦ Φ((a,1))(m)` and `(0,c-1)⊗m ↦ Φ((0,c))(m)`.
///
/// `w` is `Hom(M, V)` as built by [`super::hom_module`]; construction fails
/// unless the values descend to the coinvariants.
pub fn psi_from_cocycle(
    model: &FiniteGroupModel,
    q: &QData,
    v: &FgAbGroup,
    phi: &CocycleTable,
) -> Result<GroupHom, ExtModelError> {
    let k = v.ambient_rank();
    let rm = q.rank_m;
    let a = model.a_module().underlying();
    let na = a.ambient_rank();
    let delta = model.delta();
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(q.tensor.rank());
    let value_at = |g: usize, i: usize| phi.values[g][i * k..(i + 1) * k].to_vec();
    for l in 0..na {
        let mut u = vec![BigInt::from(0); na];
        u[l] = BigInt::from(1);
        let g = model.from_a(model.a_index_of(&u));
        for i in 0..rm {
            cols.push(value_at(g, i));
        }
    }
    for &c in &delta.nontrivial() {
        let g = model.section(c);
        for i in 0..rm {
            cols.push(value_at(g, i));
        }
    }
    GroupHom::new(q.coinv.clone(), v.clone(), IntMatrix::from_columns(k, &cols))
        .map_err(|_| ExtModelError::Internal("cocycle does not induce a map on coinvariants".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmodel::{hom_module, Z1Space};
    use crate::gmod::{FiniteGroup, TwoCocycle};
    use crate::intlin::hom_into_finite;

    fn z8_model() -> FiniteGroupModel {
        let a = GModule::trivial(&FiniteGroup::cyclic(2), FgAbGroup::cyclic(4));
        let kappa = TwoCocycle::from_fn(a, |d, c| vec![BigInt::from((d == 1 && c == 1) as i64)]).unwrap();
        FiniteGroupModel::build(&kappa).unwrap()
    }

    #[test]
    fn section_of_identity_on_z8_model() {
        let model = z8_model();
        let v = FgAbGroup::cyclic(4);
        let phi = IntMatrix::identity(1);
        let ind = induced_module(&model, &v).unwrap();
        let c = shapiro_section(&model, &v, &phi).unwrap();
        assert!(c.is_cocycle(&ind));
        for a in 0..model.a_order() {
            let k = model.from_a(a);
            assert!(v.elements_equal(&c.values[k][0..1], model.a_value(k)));
        }
    }

    #[test]
    fn zero_pair_is_zero_cocycle() {
        let model = z8_model();
        let v = FgAbGroup::cyclic(4);
        let c = cocycle_from_pair(&model, &v, &Pair::zero(&model, &v)).unwrap();
        let ind = induced_module(&model, &v).unwrap();
        assert!(c.equals(&CocycleTable::zero(model.group(), &ind), &ind));
    }

    #[test]
    fn pair_count_matches_cocycle_count() {
        let model = z8_model();
        let v = FgAbGroup::cyclic(4);
        let ind = induced_module(&model, &v).unwrap();
        let z = Z1Space::new(&ind, &model.generators()).unwrap();
        assert_eq!(z.cardinality(), Some(BigInt::from(16)));
        let mut seen = std::collections::HashSet::new();
        for h in hom_into_finite(model.a_module().underlying(), &v).unwrap().homs() {
            for x in 0..4 {
                let pair = Pair {
                    phi: h.matrix().clone(),
                    alpha: IntMatrix::from_i64(1, 1, &[x]),
                };
                let c = cocycle_from_pair(&model, &v, &pair).unwrap();
                assert!(c.is_cocycle(&ind));
                assert_eq!(pair_from_cocycle(&model, &v, &c).key(&v), pair.key(&v));
                seen.insert(c.key(&ind));
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn invalid_phi_is_rejected() {
        let model = z8_model();
        let v = FgAbGroup::cyclic(3);
        assert!(shapiro_section(&model, &v, &IntMatrix::identity(1)).is_err());
    }

    #[test]
    fn bridge_round_trip_on_sign_lattice() {
        let model = z8_model();
        let m = GModule::lattice(model.delta(), 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap();
        let w = hom_module(&m, &FgAbGroup::cyclic(4)).unwrap();
        let bridge = Bridge::new(&model, &w).unwrap();
        let z = Z1Space::new(&bridge.w_inflated, &model.generators()).unwrap();
        for phi in z.all().unwrap() {
            let f = bridge.forward(&phi);
            assert!(f.is_cocycle(&bridge.induced));
            assert!(bridge.is_invariant(&f));
            assert!(bridge.backward(&f).equals(&phi, &bridge.w_inflated));
        }
    }

    fn equivariance_holds(model: &FiniteGroupModel, v: &FgAbGroup) {
        let ind = induced_module(model, v).unwrap();
        let nd = model.delta().order();
        let homs = hom_into_finite(model.a_module().underlying(), v).unwrap().homs();
        let alphas: Vec<Vec<BigInt>> = FgAbGroup::direct_sum(&vec![v; nd - 1])
            .elements()
            .unwrap()
            .collect();
        let vv = v.power(nd - 1);
        for h in &homs {
            for al in &alphas {
                let amb = vv.lift(al);
                let alpha = IntMatrix::from_vec(nd - 1, v.ambient_rank(), amb).transpose();
                let pair = Pair { phi: h.matrix().clone(), alpha };
                let c = cocycle_from_pair(model, v, &pair).unwrap();
                for d in model.delta().elements() {
                    let lhs = delta_act_on_cocycle(model, v, d, &c);
                    let rhs = cocycle_from_pair(model, v, &delta_act_on_pair(model, d, &pair)).unwrap();
                    assert!(lhs.equals(&rhs, &ind), "equivariance fails for d = {d}");
                }
            }
        }
    }

    #[test]
    fn delta_equivariance_on_quaternion_model() {
        let a = GModule::from_generators(
            FiniteGroup::cyclic(2),
            FgAbGroup::cyclic(4),
            &[(1, IntMatrix::from_i64(1, 1, &[-1]))],
        )
        .unwrap();
        let kappa = TwoCocycle::from_fn(a, |d, c| vec![BigInt::from(2 * (d == 1 && c == 1) as i64)]).unwrap();
        let model = FiniteGroupModel::build(&kappa).unwrap();
        assert!(!model.group().is_abelian());
        equivariance_holds(&model, &FgAbGroup::cyclic(4));
        equivariance_holds(&z8_model(), &FgAbGroup::from_invariants(&[2, 2], 0));
    }

    #[test]
    fn delta_equivariance_on_dihedral_model() {
        let k4 = FiniteGroup::klein4();
        let a = GModule::trivial(&k4, FgAbGroup::cyclic(2));
        // bilinear κ(x, y) = x_1 y_2
        let kappa = TwoCocycle::from_fn(a, |d, c| vec![BigInt::from(((d & 1) * ((c >> 1) & 1)) as i64)]).unwrap();
        let model = FiniteGroupModel::build(&kappa).unwrap();
        assert!(!model.group().is_abelian());
        equivariance_holds(&model, &FgAbGroup::cyclic(2));
    }
}
