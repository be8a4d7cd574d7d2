use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::{snf_with, SnfRequest};
use super::IntLinError;

/// A finitely generated abelian group `Z^n / L`, where `L` is spanned by the
/// columns of `relations`.
///
/// Elements are integer vectors on the `n` ambient generators. Internally the
/// group carries a diagonalization of its relation lattice: a unimodular
/// change of ambient coordinates after which the group splits as a sum of
/// cyclic slots. `canonical` maps an ambient vector to its slot coordinates,
/// reduced modulo each torsion slot, which decides equality of elements.
///
/// Groups built with [`FgAbGroup::from_relations`] use the Smith form so slot
/// moduli form the divisibility chain. Direct sums keep the block structure of
/// their summands; `invariant_factors` is always the normalized chain.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    slot_moduli: Vec<BigInt>,
    to_slots: IntMatrix,
    from_slots: IntMatrix,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl PartialEq for FgAbGroup {
    /// Same presentation, not mere isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.relations == other.relations
    }
}

impl FgAbGroup {
    /// `Z^n / <columns of relations>`.
    pub fn from_relations(n: usize, relations: IntMatrix) -> Result<Self, IntLinError> {
        if relations.rows() != n {
            return Err(IntLinError::DimensionMismatch {
                expected: n,
                found: relations.rows(),
                what: "relation matrix rows",
            });
        }
        let s = snf_with(
            &relations,
            SnfRequest {
                u: true,
                u_inv: true,
                ..SnfRequest::NONE
            },
        );
        let u = s.u.clone().unwrap();
        let ui = s.u_inv.clone().unwrap();
        let diag = s.nonzero_diagonal();
        let mut slots = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..n {
            let m = if i < s.rank {
                diag[i].clone()
            } else {
                BigInt::zero()
            };
            if !m.is_one() {
                slots.push(i);
                moduli.push(m);
            }
        }
        Ok(Self::assemble(
            n,
            relations,
            moduli,
            u.select_rows(&slots),
            ui.select_cols(&slots),
        ))
    }

    fn assemble(
        ambient_rank: usize,
        relations: IntMatrix,
        slot_moduli: Vec<BigInt>,
        to_slots: IntMatrix,
        from_slots: IntMatrix,
    ) -> Self {
        let free_rank = slot_moduli.iter().filter(|m| m.is_zero()).count();
        let torsion: Vec<BigInt> = slot_moduli.iter().filter(|m| !m.is_zero()).cloned().collect();
        FgAbGroup {
            ambient_rank,
            relations,
            slot_moduli,
            to_slots,
            from_slots,
            invariant_factors: normalize_cyclic_orders(&torsion),
            free_rank,
        }
    }

    /// Free abelian group of rank `n` with no relations.
    pub fn free(n: usize) -> Self {
        Self::from_relations(n, IntMatrix::zeros(n, 0)).expect("shape is consistent")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/d` (`d = 0` gives `Z`).
    pub fn cyclic(d: u64) -> Self {
        Self::from_relations(1, IntMatrix::from_i64(1, 1, &[d as i64])).expect("1x1")
    }

    /// `Z/d_1 + ... + Z/d_k + Z^free`, one ambient generator per summand.
    pub fn from_invariants(factors: &[u64], free: usize) -> Self {
        let n = factors.len() + free;
        let mut rel = IntMatrix::zeros(n, factors.len());
        for (i, &d) in factors.iter().enumerate() {
            rel[(i, i)] = BigInt::from(d);
        }
        Self::from_relations(n, rel).expect("shape is consistent")
    }

    /// External direct sum; ambient generators are concatenated in order.
    pub fn direct_sum(parts: &[&FgAbGroup]) -> Self {
        let n = parts.iter().map(|p| p.ambient_rank).sum();
        let rel = IntMatrix::block_diag(&parts.iter().map(|p| &p.relations).collect::<Vec<_>>());
        let to = IntMatrix::block_diag(&parts.iter().map(|p| &p.to_slots).collect::<Vec<_>>());
        let from = IntMatrix::block_diag(&parts.iter().map(|p| &p.from_slots).collect::<Vec<_>>());
        let moduli = parts.iter().flat_map(|p| p.slot_moduli.iter().cloned()).collect();
        Self::assemble(n, rel, moduli, to, from)
    }

    /// `k`-fold direct sum of `self`.
    pub fn power(&self, k: usize) -> Self {
        Self::direct_sum(&vec![self; k])
    }

    /// Quotient by additional relations (columns in ambient coordinates).
    pub fn quotient(&self, extra: &IntMatrix) -> Result<Self, IntLinError> {
        Self::from_relations(self.ambient_rank, self.relations.hstack(extra))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k`, each at least 2.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn invariant_factors_u64(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.slot_moduli.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Moduli of the cyclic slots: `0` for a free slot, `>= 2` for torsion.
    pub fn slot_moduli(&self) -> &[BigInt] {
        &self.slot_moduli
    }

    pub fn num_slots(&self) -> usize {
        self.slot_moduli.len()
    }

    /// Slot coordinates of an ambient vector, reduced into `[0, d)` on torsion slots.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank, "element has wrong length");
        let y = self.to_slots.mul_vec(x);
        y.into_iter()
            .zip(&self.slot_moduli)
            .map(|(v, m)| if m.is_zero() { v } else { v.mod_floor(m) })
            .collect()
    }

    /// Canonical coordinates of every column of `m`, as the columns of a matrix.
    pub fn canonical_columns(&self, m: &IntMatrix) -> IntMatrix {
        let y = self.to_slots.mul(m);
        let mut out = y;
        for (i, md) in self.slot_moduli.iter().enumerate() {
            if md.is_zero() {
                continue;
            }
            for j in 0..out.cols() {
                out[(i, j)] = out[(i, j)].mod_floor(md);
            }
        }
        out
    }

    /// Ambient representative of slot coordinates.
    pub fn lift(&self, c: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(c.len(), self.num_slots(), "coordinates have wrong length");
        self.from_slots.mul_vec(c)
    }

    /// Matrix from slot coordinates to ambient coordinates.
    pub fn lift_matrix(&self) -> &IntMatrix {
        &self.from_slots
    }

    /// Matrix from ambient coordinates to (unreduced) slot coordinates.
    pub fn slot_matrix(&self) -> &IntMatrix {
        &self.to_slots
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// True when every column of `m` (ambient coordinates) is zero in the group.
    pub fn columns_vanish(&self, m: &IntMatrix) -> bool {
        self.canonical_columns(m).is_zero()
    }

    /// Ambient lift of the `j`-th slot generator.
    pub fn slot_generator(&self, j: usize) -> Vec<BigInt> {
        self.from_slots.column(j)
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ambient_rank]
    }

    /// Order of an element (`None` if infinite).
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let c = self.canonical(x);
        let mut ord = BigInt::one();
        for (v, m) in c.iter().zip(&self.slot_moduli) {
            if v.is_zero() {
                continue;
            }
            if m.is_zero() {
                return None;
            }
            let o = m / v.gcd(m);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    /// All elements of a finite group in slot coordinates, lexicographic with
    /// the first slot most significant.
    pub fn elements(&self) -> Result<FiniteElements, IntLinError> {
        if !self.is_finite() {
            return Err(IntLinError::InfiniteGroup);
        }
        let radix: Vec<u64> = self
            .slot_moduli
            .iter()
            .map(|m| m.to_u64().ok_or(IntLinError::TooLarge))
            .collect::<Result<_, _>>()?;
        Ok(FiniteElements {
            radix,
            next: Some(Vec::new()),
        })
    }
}

/// Lexicographic iterator over mixed-radix coordinate vectors.
pub struct FiniteElements {
    radix: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for FiniteElements {
    type Item = Vec<BigInt>;
    fn next(&mut self) -> Option<Vec<BigInt>> {
        let cur = self.next.take()?;
        let cur = if cur.is_empty() && !self.radix.is_empty() {
            vec![0; self.radix.len()]
        } else {
            cur
        };
        let mut succ = cur.clone();
        let mut carry = true;
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.radix[i] {
                carry = false;
                break;
            }
            succ[i] = 0;
        }
        self.next = if carry { None } else { Some(succ) };
        Some(cur.into_iter().map(BigInt::from).collect())
    }
}

/// Invariant factors of `Z/a_1 + ... + Z/a_k`, dropping units.
pub fn normalize_cyclic_orders(orders: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = orders.iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
    // Pairwise (gcd, lcm) sweeps leave a divisibility chain.
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.into_iter().filter(|x| !x.is_one()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(g: &FgAbGroup) -> Vec<u64> {
        g.invariant_factors_u64()
    }

    #[test]
    fn diag_two_three_is_cyclic_of_order_six() {
        let g = FgAbGroup::from_relations(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])).unwrap();
        assert_eq!(factors(&g), vec![6]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn empty_relations_are_free() {
        let g = FgAbGroup::from_relations(3, IntMatrix::zeros(3, 0)).unwrap();
        assert_eq!(g.free_rank(), 3);
        assert!(factors(&g).is_empty());
    }

    #[test]
    fn zero_relation_is_free() {
        let g = FgAbGroup::from_relations(1, IntMatrix::from_i64(1, 1, &[0])).unwrap();
        assert_eq!(g.free_rank(), 1);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = FgAbGroup::from_relations(2, IntMatrix::zeros(3, 1)).unwrap_err();
        assert!(matches!(err, IntLinError::DimensionMismatch { .. }));
    }

    #[test]
    fn normalization_of_cyclic_orders() {
        let v: Vec<BigInt> = [4u32, 6, 2].iter().map(|&x| BigInt::from(x)).collect();
        let n: Vec<u64> = normalize_cyclic_orders(&v).iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(n, vec![2, 2, 12]);
    }

    #[test]
    fn canonical_form_decides_equality() {
        let g = FgAbGroup::from_relations(2, IntMatrix::from_i64(2, 1, &[2, 2])).unwrap();
        // Z^2 / <(2,2)> = Z + Z/2
        assert_eq!(factors(&g), vec![2]);
        assert_eq!(g.free_rank(), 1);
        let x = vec![BigInt::from(3), BigInt::from(1)];
        let y = vec![BigInt::from(1), BigInt::from(-1)];
        assert!(g.elements_equal(&x, &y));
        assert!(!g.elements_equal(&x, &g.zero_element()));
    }

    #[test]
    fn enumeration_covers_group() {
        let g = FgAbGroup::from_invariants(&[2, 4], 0);
        let all: Vec<_> = g.elements().unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![BigInt::zero(), BigInt::zero()]);
        assert_eq!(all[1], vec![BigInt::zero(), BigInt::one()]);
        assert_eq!(FgAbGroup::trivial().elements().unwrap().count(), 1);
    }

    #[test]
    fn direct_sum_normalizes_factors() {
        let g = FgAbGroup::direct_sum(&[&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(3)]);
        assert_eq!(factors(&g), vec![6]);
        assert_eq!(g.num_slots(), 2);
    }
}
