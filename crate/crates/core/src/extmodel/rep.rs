//! Representations `Γ₁ -> T ⋊ Δ` over `π` and their characters on `ker q`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::model::FiniteGroupModel;
use super::shapiro::psi_from_cocycle;
use super::z1::CocycleTable;
use super::ExtModelError;
use crate::ee::QData;
use crate::gmod::GModule;
use crate::intlin::FgAbGroup;

/// `γ ↦ (Φ(γ), π(γ))` in `T ⋊ Δ`, with `(t,d)(t',d') = (t + d·t', dd')`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub values: Vec<(Vec<BigInt>, usize)>,
}

/// Product in `T ⋊ Δ`; `t` is a module over `Δ`.
pub fn semidirect_mul(t: &GModule, x: &(Vec<BigInt>, usize), y: &(Vec<BigInt>, usize)) -> (Vec<BigInt>, usize) {
    let dy = t.act(x.1, &y.0);
    let sum = x.0.iter().zip(&dy).map(|(a, b)| a + b).collect();
    (sum, t.group().mul(x.1, y.1))
}

fn same(t: &GModule, x: &(Vec<BigInt>, usize), y: &(Vec<BigInt>, usize)) -> bool {
    x.1 == y.1 && t.underlying().elements_equal(&x.0, &y.0)
}

/// `t` is the coefficient module over `Δ`; `Φ` must be a cocycle for its
/// inflation to `Γ₁`.
pub fn rep_from_cocycle(model: &FiniteGroupModel, t: &GModule, phi: &CocycleTable) -> Result<Rep, ExtModelError> {
    let inflated = t
        .inflate(model.group(), model.projection())
        .map_err(|e| ExtModelError::Internal(e.to_string()))?;
    if !phi.is_cocycle(&inflated) {
        return Err(ExtModelError::InvalidInput("not a 1-cocycle".into()));
    }
    Ok(Rep {
        values: model
            .group()
            .elements()
            .map(|g| (phi.values[g].clone(), model.pi(g)))
            .collect(),
    })
}

/// `ρ ρ₀⁻¹` with `ρ₀(γ) = (0, π(γ))`.
pub fn cocycle_of_rep(rep: &Rep) -> CocycleTable {
    CocycleTable {
        values: rep.values.iter().map(|(v, _)| v.clone()).collect(),
    }
}

/// Exhaustive check that `ρ` is a homomorphism lifting `π`.
pub fn is_homomorphism_over_pi(model: &FiniteGroupModel, t: &GModule, rep: &Rep) -> bool {
    let g = model.group();
    g.elements().all(|a| rep.values[a].1 == model.pi(a))
        && g.elements().all(|a| {
            g.elements()
                .all(|b| same(t, &rep.values[g.mul(a, b)], &semidirect_mul(t, &rep.values[a], &rep.values[b])))
        })
}

/// `(x,1) ρ (x,1)⁻¹`.
pub fn conjugate(t: &GModule, rep: &Rep, x: &[BigInt]) -> Rep {
    let neg: Vec<BigInt> = x.iter().map(|v| -v).collect();
    let e = t.group().identity();
    let left = (x.to_vec(), e);
    let right = (neg, e);
    Rep {
        values: rep
            .values
            .iter()
            .map(|r| semidirect_mul(t, &semidirect_mul(t, &left, r), &right))
            .collect(),
    }
}

/// All homomorphisms `Γ₁ -> T ⋊ Δ` lifting `π`, found by assigning values to
/// generators and closing under products, independent of any cocycle code.
pub fn enumerate_reps(model: &FiniteGroupModel, t: &GModule, budget: u64) -> Result<Vec<Rep>, ExtModelError> {
    let g = model.group();
    let gens = model.generators();
    let elems: Vec<Vec<BigInt>> = t
        .underlying()
        .elements()
        .map_err(|_| ExtModelError::InvalidInput("coefficient module must be finite".into()))?
        .map(|c| t.underlying().lift(&c))
        .collect();
    let n = elems.len() as u64;
    let required = BigInt::from(n).pow(gens.len() as u32);
    if required > BigInt::from(budget) {
        return Err(ExtModelError::BudgetExceeded { required, budget });
    }
    let total = required.to_u64().unwrap();
    let mut out = Vec::new();
    'tuples: for code in 0..total {
        let mut c = code;
        let mut choice = vec![0usize; gens.len()];
        for i in (0..gens.len()).rev() {
            choice[i] = (c % n) as usize;
            c /= n;
        }
        let mut vals: Vec<Option<(Vec<BigInt>, usize)>> = vec![None; g.order()];
        vals[g.identity()] = Some((t.underlying().zero_element(), t.group().identity()));
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let rs = (elems[choice[k]].clone(), model.pi(s));
                let y = g.mul(s, x);
                let cand = semidirect_mul(t, &rs, vals[x].as_ref().unwrap());
                match &vals[y] {
                    Some(old) => {
                        if !same(t, old, &cand) {
                            continue 'tuples;
                        }
                    }
                    None => {
                        vals[y] = Some(cand);
                        queue.push_back(y);
                    }
                }
            }
        }
        out.push(Rep {
            values: vals.into_iter().map(Option::unwrap).collect(),
        });
    }
    Ok(out)
}

/// The character of `ker q` attached to `ρ`: the map `(ℰ⊗M)_Δ -> V` from its
/// cocycle, evaluated on the generators of `ker q` (canonical coordinates in `V`).
pub fn pseudochar_of_rep(
    model: &FiniteGroupModel,
    q: &QData,
    v: &FgAbGroup,
    rep: &Rep,
) -> Result<Vec<Vec<BigInt>>, ExtModelError> {
    let psi = psi_from_cocycle(model, q, v, &cocycle_of_rep(rep))?;
    let vals = psi.matrix().mul(&q.h1.inclusion);
    Ok((0..vals.cols()).map(|j| v.canonical(&vals.column(j))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ee::{build_e, coinvariants_with_q};
    use crate::extmodel::{hom_module, UnitGroupRing, Z1Space, DEFAULT_BUDGET};
    use crate::gmod::{FiniteGroup, TwoCocycle};
    use std::collections::HashSet;

    #[test]
    fn cyclic_eight_characters() {
        let a = GModule::trivial(&FiniteGroup::cyclic(2), FgAbGroup::cyclic(4));
        let kappa = TwoCocycle::from_fn(a, |d, c| vec![BigInt::from((d == 1 && c == 1) as i64)]).unwrap();
        let model = FiniteGroupModel::build(&kappa).unwrap();
        let m = GModule::trivial_z(model.delta());
        let r = UnitGroupRing::new(3).unwrap();
        let t = hom_module(&m, r.group()).unwrap();
        let e = build_e(&kappa).unwrap();
        let q = coinvariants_with_q(&e, &m).unwrap();
        let infl = t.inflate(model.group(), model.projection()).unwrap();
        let z = Z1Space::new(&infl, &model.generators()).unwrap();
        let mut chars = HashSet::new();
        for phi in z.all().unwrap() {
            let rho = rep_from_cocycle(&model, &t, &phi).unwrap();
            assert!(is_homomorphism_over_pi(&model, &t, &rho));
            chars.insert(pseudochar_of_rep(&model, &q, r.group(), &rho).unwrap());
        }
        assert_eq!(chars.len(), 2);
        assert_eq!(enumerate_reps(&model, &t, DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn zero_cocycle_gives_base_rep_and_trivial_character() {
        let g = FiniteGroup::cyclic(2);
        let kappa = TwoCocycle::zero(&GModule::trivial(&g, FgAbGroup::trivial()));
        let model = FiniteGroupModel::build(&kappa).unwrap();
        let m = GModule::trivial_z(&g);
        let v = FgAbGroup::cyclic(2);
        let t = hom_module(&m, &v).unwrap();
        let q = coinvariants_with_q(&build_e(&kappa).unwrap(), &m).unwrap();
        let phi = CocycleTable::zero(model.group(), &t);
        let rho = rep_from_cocycle(&model, &t, &phi).unwrap();
        assert!(rho.values.iter().enumerate().all(|(g, (x, d))| *d == model.pi(g) && v.is_zero(x)));
        let chi = pseudochar_of_rep(&model, &q, &v, &rho).unwrap();
        assert!(chi.iter().flatten().all(|x| x == &BigInt::from(0)));
    }
}
