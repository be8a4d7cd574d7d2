//! 1-cocycles of a finite group with coefficients in a finite module: brute
//! force enumeration over generator values, and an exact linear description.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::coeff::SlotArith;
use super::ExtModelError;
use crate::gmod::{FiniteGroup, GModule};
use crate::intlin::{FgAbGroup, GroupHom, IntMatrix, Subgroup};

/// Default cap on the number of candidate generator tuples.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A 1-cochain: one coefficient per group element, in ambient coordinates of
/// the coefficient module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    pub values: Vec<Vec<BigInt>>,
}

impl CocycleTable {
    pub fn zero(group: &FiniteGroup, t: &GModule) -> Self {
        CocycleTable {
            values: vec![vec![BigInt::zero(); t.rank()]; group.order()],
        }
    }

    /// `Φ(gh) = Φ(g) + g·Φ(h)` for all pairs.
    pub fn is_cocycle(&self, t: &GModule) -> bool {
        let g = t.group();
        let u = t.underlying();
        g.elements().all(|a| {
            g.elements().all(|b| {
                let lhs = &self.values[g.mul(a, b)];
                let act = t.act(a, &self.values[b]);
                let d: Vec<BigInt> = (0..lhs.len()).map(|i| &lhs[i] - &self.values[a][i] - &act[i]).collect();
                u.is_zero(&d)
            })
        })
    }

    pub fn add(&self, other: &CocycleTable) -> CocycleTable {
        CocycleTable {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &CocycleTable) -> CocycleTable {
        CocycleTable {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a - b).collect())
                .collect(),
        }
    }

    /// Canonical coordinates of every value, for equality and hashing.
    pub fn key(&self, t: &GModule) -> Vec<Vec<BigInt>> {
        self.values.iter().map(|v| t.underlying().canonical(v)).collect()
    }

    pub fn equals(&self, other: &CocycleTable, t: &GModule) -> bool {
        self.key(t) == other.key(t)
    }

    /// The coboundary `g ↦ g·x - x`.
    pub fn coboundary(t: &GModule, x: &[BigInt]) -> CocycleTable {
        CocycleTable {
            values: t
                .group()
                .elements()
                .map(|g| t.act(g, x).iter().zip(x).map(|(a, b)| a - b).collect())
                .collect(),
        }
    }
}

/// Breadth-first spanning tree of the left Cayley graph: element `s·x` first
/// reached from `x` by generator `s`.
struct Cayley {
    /// `(x, generator position, s·x)` in discovery order.
    tree: Vec<(usize, usize, usize)>,
    /// Remaining edges, each a consistency constraint.
    back: Vec<(usize, usize, usize)>,
}

impl Cayley {
    fn new(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut seen = vec![false; group.order()];
        seen[group.identity()] = true;
        let mut queue = VecDeque::from([group.identity()]);
        let mut tree = Vec::new();
        let mut back = Vec::new();
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = group.mul(s, x);
                if seen[y] {
                    back.push((x, k, y));
                } else {
                    seen[y] = true;
                    tree.push((x, k, y));
                    queue.push_back(y);
                }
            }
        }
        Cayley { tree, back }
    }
}

fn check_generators(group: &FiniteGroup, gens: &[usize]) -> Result<(), ExtModelError> {
    if group.closure(gens).len() != group.order() {
        return Err(ExtModelError::InvalidInput("elements do not generate the group".into()));
    }
    Ok(())
}

/// Every 1-cocycle, by enumerating generator values and propagating along the
/// Cayley graph. Deterministic order: lexicographic in the encoded generator
/// values, first generator most significant.
pub fn enumerate_z1(t: &GModule, gens: &[usize], budget: u64) -> Result<Vec<CocycleTable>, ExtModelError> {
    let group = t.group();
    check_generators(group, gens)?;
    let arith = SlotArith::new(t)?;
    let required = BigInt::from(arith.order()).pow(gens.len() as u32);
    if required > BigInt::from(budget) {
        return Err(ExtModelError::BudgetExceeded { required, budget });
    }
    let total = required.to_u64().unwrap();
    let cayley = Cayley::new(group, gens);
    let ord = arith.order();
    let k = gens.len();
    let tables: Vec<Vec<u64>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut gv = vec![0u64; k];
            let mut c = code;
            for i in (0..k).rev() {
                gv[i] = c % ord;
                c /= ord;
            }
            let mut vals = vec![0u64; group.order()];
            for &(x, s, y) in &cayley.tree {
                vals[y] = arith.add(gv[s], arith.act(gens[s], vals[x]));
            }
            let ok = cayley
                .back
                .iter()
                .all(|&(x, s, y)| vals[y] == arith.add(gv[s], arith.act(gens[s], vals[x])));
            ok.then_some(vals)
        })
        .collect();
    let u = t.underlying();
    Ok(tables
        .into_iter()
        .map(|vals| CocycleTable {
            values: vals.into_iter().map(|v| u.lift(&arith.to_coords(v))).collect(),
        })
        .collect())
}

/// `Z¹(G, T)` as the kernel of the consistency constraints on generator values.
#[derive(Clone, Debug)]
pub struct Z1Space {
    module: GModule,
    gens: Vec<usize>,
    /// `Φ(g) = maps[g] · v` for generator values `v` (ambient coordinates of `T^gens`).
    maps: Vec<IntMatrix>,
    kernel: Subgroup,
}

impl Z1Space {
    pub fn new(t: &GModule, gens: &[usize]) -> Result<Self, ExtModelError> {
        let group = t.group();
        check_generators(group, gens)?;
        let r = t.rank();
        let k = gens.len();
        let block = |s: usize| {
            let mut e = IntMatrix::zeros(r, r * k);
            for i in 0..r {
                e[(i, s * r + i)] = BigInt::from(1);
            }
            e
        };
        let cayley = Cayley::new(group, gens);
        let mut maps = vec![IntMatrix::zeros(r, r * k); group.order()];
        for &(x, s, y) in &cayley.tree {
            maps[y] = block(s).add(&t.action(gens[s]).mul(&maps[x]));
        }
        let constraints: Vec<IntMatrix> = cayley
            .back
            .iter()
            .map(|&(x, s, y)| maps[y].sub(&block(s).add(&t.action(gens[s]).mul(&maps[x]))))
            .collect();
        let source = t.underlying().power(k);
        let c = if constraints.is_empty() {
            IntMatrix::zeros(0, r * k)
        } else {
            IntMatrix::vcat(&constraints.iter().collect::<Vec<_>>())
        };
        let target = t.underlying().power(constraints.len());
        let kernel = GroupHom::new(source, target, c)
            .map_err(|e| ExtModelError::Internal(e.to_string()))?
            .kernel();
        Ok(Z1Space {
            module: t.clone(),
            gens: gens.to_vec(),
            maps,
            kernel,
        })
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// The group `Z¹` (finite when `T` is finite).
    pub fn group(&self) -> &FgAbGroup {
        &self.kernel.group
    }

    pub fn cardinality(&self) -> Option<BigInt> {
        self.kernel.group.order()
    }

    /// Cocycle from ambient coordinates of the kernel group.
    pub fn cocycle(&self, coords: &[BigInt]) -> CocycleTable {
        let v = self.kernel.inclusion.mul_vec(coords);
        CocycleTable {
            values: self.maps.iter().map(|m| m.mul_vec(&v)).collect(),
        }
    }

    /// Cocycle from kernel slot coordinates.
    pub fn cocycle_from_slots(&self, c: &[BigInt]) -> CocycleTable {
        self.cocycle(&self.kernel.group.lift(c))
    }

    /// Every cocycle, in lexicographic order of kernel slot coordinates.
    pub fn all(&self) -> Result<Vec<CocycleTable>, ExtModelError> {
        let it = self.kernel.group.elements().map_err(|_| ExtModelError::TooLarge)?;
        Ok(it.map(|c| self.cocycle_from_slots(&c)).collect())
    }

    /// Generator values of a cocycle, as ambient coordinates of `T^gens`.
    pub fn generator_values(&self, phi: &CocycleTable) -> Vec<BigInt> {
        self.gens.iter().flat_map(|&g| phi.values[g].clone()).collect()
    }

    /// True when `Φ = g ↦ g·x - x` for some `x`.
    pub fn is_coboundary(&self, phi: &CocycleTable) -> bool {
        let t = &self.module;
        if self.gens.is_empty() {
            return true;
        }
        let id = IntMatrix::identity(t.rank());
        let diffs: Vec<IntMatrix> = self.gens.iter().map(|&g| t.action(g).sub(&id)).collect();
        let m = IntMatrix::vcat(&diffs.iter().collect::<Vec<_>>());
        let h = GroupHom::new(t.underlying().clone(), t.underlying().power(self.gens.len()), m)
            .expect("actions respect relations");
        h.preimage(&self.generator_values(phi)).is_some()
    }
}

/// `|H¹(G, T)| = |Z¹| · |T^G| / |T|` for finite `T`.
pub fn h1_cardinality(z1: &Z1Space) -> Option<BigInt> {
    let t = z1.module();
    let inv = t.invariants().group.order()?;
    Some(z1.cardinality()? * inv / t.underlying().order()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmodel::{hom_module, FiniteGroupModel, UnitGroupRing};
    use crate::gmod::TwoCocycle;

    #[test]
    fn cyclic_two_into_z4_inverted() {
        let g = FiniteGroup::cyclic(2);
        let t = GModule::from_generators(g.clone(), FgAbGroup::cyclic(4), &[(1, IntMatrix::from_i64(1, 1, &[-1]))])
            .unwrap();
        let all = enumerate_z1(&t, &g.generators(), DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|c| c.is_cocycle(&t)));
        let z = Z1Space::new(&t, &g.generators()).unwrap();
        assert_eq!(z.cardinality(), Some(BigInt::from(4)));
    }

    #[test]
    fn zero_module_has_one_cocycle() {
        let g = FiniteGroup::s3();
        let t = GModule::trivial(&g, FgAbGroup::trivial());
        assert_eq!(enumerate_z1(&t, &g.generators(), DEFAULT_BUDGET).unwrap().len(), 1);
    }

    #[test]
    fn cyclic_eight_model_into_units_of_z3() {
        let a = GModule::trivial(&FiniteGroup::cyclic(2), FgAbGroup::cyclic(4));
        let kappa = TwoCocycle::from_fn(a, |d, c| vec![BigInt::from((d == 1 && c == 1) as i64)]).unwrap();
        let model = FiniteGroupModel::build(&kappa).unwrap();
        let m = GModule::trivial_z(model.delta());
        let r = UnitGroupRing::new(3).unwrap();
        let t = hom_module(&m, r.group()).unwrap().inflate(model.group(), model.projection()).unwrap();
        let all = enumerate_z1(&t, &model.generators(), DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let g = FiniteGroup::klein4();
        let t = GModule::trivial(&g, FgAbGroup::from_invariants(&[8, 8], 0));
        let err = enumerate_z1(&t, &g.generators(), 100).unwrap_err();
        assert!(matches!(err, ExtModelError::BudgetExceeded { .. }));
    }

    #[test]
    fn brute_force_and_linear_counts_agree() {
        let g = FiniteGroup::s3();
        let t = GModule::from_generators(
            g.clone(),
            FgAbGroup::cyclic(3),
            &[(1, IntMatrix::from_i64(1, 1, &[-1])), (3, IntMatrix::from_i64(1, 1, &[1]))],
        );
        // Element 3 is a 3-cycle, element 1 a transposition.
        let t = t.unwrap();
        let gens = g.generators();
        let brute = enumerate_z1(&t, &gens, DEFAULT_BUDGET).unwrap();
        let z = Z1Space::new(&t, &gens).unwrap();
        assert_eq!(z.cardinality(), Some(BigInt::from(brute.len())));
        let lin = z.all().unwrap();
        assert!(lin.iter().all(|c| c.is_cocycle(&t)));
        let coboundaries = lin.iter().filter(|c| z.is_coboundary(c)).count();
        assert_eq!(BigInt::from(lin.len() / coboundaries), h1_cardinality(&z).unwrap());
    }
}
