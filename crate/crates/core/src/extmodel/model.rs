use std::collections::HashMap;

use num_bigint::BigInt;

use super::ExtModelError;
use crate::gmod::{FiniteGroup, GModule, TwoCocycle};

/// The extension `Γ₁ = A ×_κ Δ` with `(a,d)(b,e) = (a + d·b + κ(d,e), de)`.
///
/// Element `(a, d)` has index `a * |Δ| + d`, where `a` indexes the elements of
/// `A` in lexicographic slot order (so `a = 0` is the identity of `A`).
#[derive(Clone, Debug)]
pub struct FiniteGroupModel {
    delta: FiniteGroup,
    a_module: GModule,
    kappa: TwoCocycle,
    a_elems: Vec<Vec<BigInt>>,
    a_index: HashMap<Vec<BigInt>, usize>,
    group: FiniteGroup,
    proj: Vec<usize>,
}

impl FiniteGroupModel {
    pub fn build(kappa: &TwoCocycle) -> Result<Self, ExtModelError> {
        kappa
            .validate()
            .map_err(|v| ExtModelError::InvalidCocycle(v.to_string()))?;
        let a_module = kappa.module().clone();
        let delta = a_module.group().clone();
        let a = a_module.underlying();
        let coords: Vec<Vec<BigInt>> = a.elements().map_err(|_| ExtModelError::InfiniteA)?.collect();
        let a_elems: Vec<Vec<BigInt>> = coords.iter().map(|c| a.lift(c)).collect();
        let a_index: HashMap<Vec<BigInt>, usize> = coords.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
        let nd = delta.order();
        let na = a_elems.len();
        let idx = |x: &[BigInt]| a_index[&a.canonical(x)];
        let mut table = vec![vec![0; na * nd]; na * nd];
        for ai in 0..na {
            for d in 0..nd {
                for bi in 0..na {
                    let db = a_module.act(d, &a_elems[bi]);
                    for e in 0..nd {
                        let k = kappa.value(d, e);
                        let sum: Vec<BigInt> = (0..db.len()).map(|i| &a_elems[ai][i] + &db[i] + &k[i]).collect();
                        table[ai * nd + d][bi * nd + e] = idx(&sum) * nd + delta.mul(d, e);
                    }
                }
            }
        }
        let group = FiniteGroup::from_table(table).map_err(|e| ExtModelError::Internal(e.to_string()))?;
        let proj = (0..na * nd).map(|g| g % nd).collect();
        Ok(FiniteGroupModel {
            delta,
            a_module,
            kappa: kappa.clone(),
            a_elems,
            a_index,
            group,
            proj,
        })
    }

    pub fn delta(&self) -> &FiniteGroup {
        &self.delta
    }

    pub fn a_module(&self) -> &GModule {
        &self.a_module
    }

    pub fn kappa(&self) -> &TwoCocycle {
        &self.kappa
    }

    /// The group `Γ₁` itself.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn a_order(&self) -> usize {
        self.a_elems.len()
    }

    /// Projection `Γ₁ -> Δ` as an index table.
    pub fn projection(&self) -> &[usize] {
        &self.proj
    }

    pub fn pi(&self, g: usize) -> usize {
        self.proj[g]
    }

    pub fn element(&self, a: usize, d: usize) -> usize {
        a * self.delta.order() + d
    }

    /// `(a index, d)` of an element.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        (g / self.delta.order(), g % self.delta.order())
    }

    /// The coset representative `(0, d)`.
    pub fn section(&self, d: usize) -> usize {
        self.element(0, d)
    }

    /// The element `(a, 1)`.
    pub fn from_a(&self, a: usize) -> usize {
        self.element(a, self.delta.identity())
    }

    /// Ambient coordinates of the `A`-part of an element.
    pub fn a_value(&self, g: usize) -> &[BigInt] {
        &self.a_elems[self.decompose(g).0]
    }

    pub fn a_elements(&self) -> &[Vec<BigInt>] {
        &self.a_elems
    }

    /// Index of an `A`-element given in ambient coordinates.
    pub fn a_index_of(&self, x: &[BigInt]) -> usize {
        self.a_index[&self.a_module.underlying().canonical(x)]
    }

    /// `A` as a subgroup (element indices).
    pub fn kernel_elements(&self) -> Vec<usize> {
        (0..self.a_order()).map(|a| self.from_a(a)).collect()
    }

    /// Generators: section images of a generating set of `Δ`, then the slot
    /// generators of `A`, dropping any already in the span of earlier ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut cand: Vec<usize> = self.delta.generators().iter().map(|&d| self.section(d)).collect();
        let a = self.a_module.underlying();
        for j in 0..a.num_slots() {
            cand.push(self.from_a(self.a_index_of(&a.slot_generator(j))));
        }
        let mut gens = Vec::new();
        for c in cand {
            if !self.group.closure(&gens).contains(&c) {
                gens.push(c);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::FgAbGroup;

    fn z4_model(k: i64) -> FiniteGroupModel {
        let m = GModule::trivial(&FiniteGroup::cyclic(2), FgAbGroup::cyclic(4));
        let kappa = TwoCocycle::from_fn(m, |d, c| vec![BigInt::from(if d == 1 && c == 1 { k } else { 0 })]).unwrap();
        FiniteGroupModel::build(&kappa).unwrap()
    }

    fn order_census(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn carry_cocycle_gives_cyclic_of_order_eight() {
        let m = z4_model(1);
        assert_eq!(m.order(), 8);
        assert_eq!(m.group().element_order(m.section(1)), 8);
        assert!(m.group().is_abelian());
    }

    #[test]
    fn zero_cocycle_gives_direct_product() {
        let m = z4_model(0);
        assert_eq!(order_census(m.group()), vec![1, 2, 2, 2, 4, 4, 4, 4]);
    }

    #[test]
    fn section_defect_is_kappa_and_conjugation_is_action() {
        let m = z4_model(1);
        let g = m.group();
        for d in 0..2 {
            for c in 0..2 {
                let defect = g.mul(g.mul(m.section(d), m.section(c)), g.inv(m.section(m.delta().mul(d, c))));
                assert_eq!(m.decompose(defect).1, 0);
                assert_eq!(m.a_value(defect), m.a_elements()[m.a_index_of(m.kappa().value(d, c))].as_slice());
            }
        }
    }

    #[test]
    fn trivial_a_recovers_delta() {
        let delta = FiniteGroup::s3();
        let m = GModule::trivial(&delta, FgAbGroup::trivial());
        let model = FiniteGroupModel::build(&TwoCocycle::zero(&m)).unwrap();
        assert_eq!(model.group(), &delta);
    }
}
