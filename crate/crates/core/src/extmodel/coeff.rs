//! Coefficient modules: `Hom(M, V)`, induced modules, and fast slot arithmetic
//! on finite modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::model::FiniteGroupModel;
use super::ExtModelError;
use crate::gmod::GModule;
use crate::intlin::{FgAbGroup, IntMatrix};

/// `Hom(M, V)` for a lattice `M` and finite `V` with trivial action, with
/// `(d·w)(m) = w(d⁻¹ m)`.
///
/// Ambient generators are indexed `i * k + j`: the value on the `i`-th basis
/// vector of `M`, ambient generator `j` of `V`.
pub fn hom_module(m: &GModule, v: &FgAbGroup) -> Result<GModule, ExtModelError> {
    let mu = m.underlying();
    if mu.free_rank() != mu.ambient_rank() {
        return Err(ExtModelError::NotALattice);
    }
    if !v.is_finite() {
        return Err(ExtModelError::InvalidInput("coefficient group must be finite".into()));
    }
    let g = m.group();
    let k = v.ambient_rank();
    let action = g
        .elements()
        .map(|d| m.action(g.inv(d)).transpose().kron(&IntMatrix::identity(k)))
        .collect();
    GModule::new(g.clone(), v.power(mu.ambient_rank()), action).map_err(|e| ExtModelError::Internal(e.to_string()))
}

/// Functions `Δ -> W` (block `c` holds `f(c)`) with `Γ₁` acting by
/// `[g·f](c) = f(c π(g))`.
pub fn induced_module(model: &FiniteGroupModel, w: &FgAbGroup) -> Result<GModule, ExtModelError> {
    let delta = model.delta();
    let nd = delta.order();
    let k = w.ambient_rank();
    let action = model
        .group()
        .elements()
        .map(|g| {
            let mut a = IntMatrix::zeros(nd * k, nd * k);
            for c in delta.elements() {
                let src = delta.mul(c, model.pi(g));
                for j in 0..k {
                    a[(c * k + j, src * k + j)] = BigInt::from(1);
                }
            }
            a
        })
        .collect();
    GModule::new(model.group().clone(), w.power(nd), action).map_err(|e| ExtModelError::Internal(e.to_string()))
}

/// The `Δ`-action on `Ind W` commuting with the `Γ₁`-action:
/// `[d·f](c) = d·(f(d⁻¹ c))`, where `w` carries `W`'s own `Δ`-action.
pub fn induced_delta_action(w: &GModule) -> Vec<IntMatrix> {
    let delta = w.group();
    let nd = delta.order();
    let k = w.rank();
    delta
        .elements()
        .map(|d| {
            let mut a = IntMatrix::zeros(nd * k, nd * k);
            let ad = w.action(d);
            let dinv = delta.inv(d);
            for c in delta.elements() {
                let src = delta.mul(dinv, c);
                for i in 0..k {
                    for j in 0..k {
                        a[(c * k + i, src * k + j)] = ad[(i, j)].clone();
                    }
                }
            }
            a
        })
        .collect()
}

/// Element arithmetic of a finite module in slot coordinates, with elements
/// encoded as mixed-radix integers (first slot most significant).
#[derive(Clone, Debug)]
pub struct SlotArith {
    moduli: Vec<u64>,
    /// Per group element, the action on slot coordinates (row-major).
    act: Vec<Vec<i64>>,
    order: u64,
}

impl SlotArith {
    pub fn new(t: &GModule) -> Result<Self, ExtModelError> {
        let u = t.underlying();
        if !u.is_finite() {
            return Err(ExtModelError::InvalidInput("coefficient module must be finite".into()));
        }
        let moduli: Vec<u64> = u
            .slot_moduli()
            .iter()
            .map(|m| m.to_u64().ok_or(ExtModelError::TooLarge))
            .collect::<Result<_, _>>()?;
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(ExtModelError::TooLarge)?;
        let act = t
            .actions()
            .iter()
            .map(|a| {
                let s = u.slot_matrix().mul(a).mul(u.lift_matrix());
                let r = moduli.len();
                let mut out = vec![0i64; r * r];
                for i in 0..r {
                    for j in 0..r {
                        let m = BigInt::from(moduli[i]);
                        out[i * r + j] = s[(i, j)].mod_floor(&m).to_i64().unwrap();
                    }
                }
                out
            })
            .collect();
        Ok(SlotArith { moduli, act, order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn num_slots(&self) -> usize {
        self.moduli.len()
    }

    pub fn decode(&self, mut x: u64) -> Vec<u64> {
        let mut v = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            v[i] = x % self.moduli[i];
            x /= self.moduli[i];
        }
        v
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        v.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m + x % m)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<u64> = (0..a.len()).map(|i| (a[i] + b[i]) % self.moduli[i]).collect();
        self.encode(&s)
    }

    pub fn neg(&self, x: u64) -> u64 {
        let a = self.decode(x);
        let s: Vec<u64> = (0..a.len()).map(|i| (self.moduli[i] - a[i]) % self.moduli[i]).collect();
        self.encode(&s)
    }

    pub fn act(&self, g: usize, x: u64) -> u64 {
        let a = self.decode(x);
        let r = a.len();
        let m = &self.act[g];
        let s: Vec<u64> = (0..r)
            .map(|i| {
                let md = self.moduli[i] as i128;
                let v: i128 = (0..r).map(|j| m[i * r + j] as i128 * a[j] as i128).sum();
                v.rem_euclid(md) as u64
            })
            .collect();
        self.encode(&s)
    }

    pub fn to_coords(&self, x: u64) -> Vec<BigInt> {
        self.decode(x).into_iter().map(BigInt::from).collect()
    }

    /// Encode slot coordinates given as integers (reduced on the fly).
    pub fn from_coords(&self, c: &[BigInt]) -> u64 {
        let v: Vec<u64> = c
            .iter()
            .zip(&self.moduli)
            .map(|(x, &m)| x.mod_floor(&BigInt::from(m)).to_u64().unwrap())
            .collect();
        self.encode(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmodel::UnitGroupRing;
    use crate::gmod::FiniteGroup;

    #[test]
    fn hom_into_units_of_z5_with_sign_lattice() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::lattice(&g, 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap();
        let r = UnitGroupRing::new(5).unwrap();
        let h = hom_module(&m, r.group()).unwrap();
        assert_eq!(h.underlying().invariant_factors_u64(), vec![4]);
        let arith = SlotArith::new(&h).unwrap();
        for x in 0..4 {
            assert_eq!(arith.act(1, x), arith.neg(x));
        }
    }

    #[test]
    fn rank_two_into_units_of_z3() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::lattice(&g, 2, &[(1, IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]))]).unwrap();
        let r = UnitGroupRing::new(3).unwrap();
        let h = hom_module(&m, r.group()).unwrap();
        assert_eq!(h.underlying().order(), Some(BigInt::from(4)));
    }

    #[test]
    fn torsion_lattice_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbGroup::cyclic(2));
        assert!(matches!(hom_module(&m, &FgAbGroup::cyclic(2)), Err(ExtModelError::NotALattice)));
    }
}
