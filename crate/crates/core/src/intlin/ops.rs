use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAbGroup;
use super::hom::GroupHom;
use super::matrix::IntMatrix;
use super::IntLinError;

/// `G ⊗ H` on the generators `g_i ⊗ h_j`, indexed `i * n_H + j`.
///
/// With this indexing, endomorphisms `a` of `G` and `b` of `H` act on the
/// tensor product by `a.kron(&b)`.
pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let ng = g.ambient_rank();
    let nh = h.ambient_rank();
    let left = g.relations().kron(&IntMatrix::identity(nh));
    let right = IntMatrix::identity(ng).kron(h.relations());
    FgAbGroup::from_relations(ng * nh, left.hstack(&right)).expect("shape is consistent")
}

/// Elements of `T` killed by `d` (`d = 0`: all of `T`), in `T`'s slot
/// coordinates, lexicographic.
pub fn torsion_points(t: &FgAbGroup, d: &BigInt) -> Vec<Vec<BigInt>> {
    let steps: Vec<(BigInt, BigInt)> = t
        .slot_moduli()
        .iter()
        .map(|m| {
            let g = if d.is_zero() { m.clone() } else { d.gcd(m) };
            (m / &g, g)
        })
        .collect();
    let mut out = vec![Vec::new()];
    for (step, count) in &steps {
        let mut next = Vec::new();
        for prefix in &out {
            let mut k = BigInt::zero();
            while &k < count {
                let mut v = prefix.clone();
                v.push(&k * step);
                next.push(v);
                k += 1;
            }
        }
        out = next;
    }
    out
}

/// Lazily enumerated `Hom(G, T)` for finite `T`.
pub struct HomIntoFinite {
    source: FgAbGroup,
    target: FgAbGroup,
    /// For each slot of the source, the admissible images in target slot coordinates.
    choices: Vec<Vec<Vec<BigInt>>>,
    card: BigInt,
}

/// `Hom(G, T)`: its cardinality and an enumerator. `T` must be finite.
pub fn hom_into_finite(g: &FgAbGroup, t: &FgAbGroup) -> Result<HomIntoFinite, IntLinError> {
    if !t.is_finite() {
        return Err(IntLinError::InfiniteGroup);
    }
    let mut card = BigInt::one();
    for d in g.slot_moduli() {
        for m in t.slot_moduli() {
            card *= if d.is_zero() { m.clone() } else { d.gcd(m) };
        }
    }
    Ok(HomIntoFinite {
        source: g.clone(),
        target: t.clone(),
        choices: Vec::new(),
        card,
    })
}

impl HomIntoFinite {
    pub fn cardinality(&self) -> &BigInt {
        &self.card
    }

    fn ensure_choices(&mut self) {
        if self.choices.len() == self.source.num_slots() {
            return;
        }
        self.choices = self
            .source
            .slot_moduli()
            .iter()
            .map(|d| torsion_points(&self.target, d))
            .collect();
    }

    /// Build the homomorphism sending source slot generator `j` to `images[j]`
    /// (target slot coordinates).
    pub fn hom_from_images(&self, images: &[Vec<BigInt>]) -> Result<GroupHom, IntLinError> {
        let cols: Vec<Vec<BigInt>> = images.iter().map(|c| self.target.lift(c)).collect();
        let img = IntMatrix::from_columns(self.target.ambient_rank(), &cols);
        let m = img.mul(self.source.slot_matrix());
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }

    /// Every homomorphism exactly once, as per-slot images, lexicographic in
    /// (slot, target coordinates).
    pub fn images(&mut self) -> Vec<Vec<Vec<BigInt>>> {
        self.ensure_choices();
        let mut out: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
        for opts in &self.choices {
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for prefix in &out {
                for o in opts {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn homs(&mut self) -> Vec<GroupHom> {
        self.images()
            .iter()
            .map(|im| self.hom_from_images(im).expect("images respect orders"))
            .collect()
    }
}

/// Free rank and the `p`-primary parts of the invariant factors (ascending).
pub fn pro_p_part(g: &FgAbGroup, p: u64) -> (usize, Vec<BigInt>) {
    let p = BigInt::from(p);
    let mut tors = Vec::new();
    for d in g.invariant_factors() {
        let mut part = BigInt::one();
        let mut rest = d.clone();
        while (&rest % &p).is_zero() {
            rest /= &p;
            part *= &p;
        }
        if !part.is_one() {
            tors.push(part);
        }
    }
    (g.free_rank(), tors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn f(g: &FgAbGroup) -> (usize, Vec<u64>) {
        (g.free_rank(), g.invariant_factors_u64())
    }

    #[test]
    fn tensor_examples() {
        let h = FgAbGroup::from_invariants(&[2, 6], 1);
        assert_eq!(f(&tensor(&FgAbGroup::free(1), &h)), f(&h));
        assert!(tensor(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(3)).is_trivial());
        assert_eq!(f(&tensor(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6))), (0, vec![2]));
    }

    #[test]
    fn hom_cardinalities() {
        let g = FgAbGroup::from_invariants(&[2], 1);
        let mut h = hom_into_finite(&g, &FgAbGroup::cyclic(4)).unwrap();
        assert_eq!(h.cardinality().to_u64(), Some(8));
        assert_eq!(h.homs().len(), 8);
        let h0 = hom_into_finite(&g, &FgAbGroup::trivial()).unwrap();
        assert_eq!(h0.cardinality().to_u64(), Some(1));
        let h2 = hom_into_finite(&FgAbGroup::cyclic(8), &FgAbGroup::cyclic(2)).unwrap();
        assert_eq!(h2.cardinality().to_u64(), Some(2));
        assert!(hom_into_finite(&g, &FgAbGroup::free(1)).is_err());
    }

    #[test]
    fn pro_p_examples() {
        let g = FgAbGroup::from_invariants(&[12], 2);
        let (r, t) = pro_p_part(&g, 2);
        assert_eq!((r, t), (2, vec![BigInt::from(4)]));
        let (r, t) = pro_p_part(&g, 3);
        assert_eq!((r, t), (2, vec![BigInt::from(3)]));
        assert_eq!(pro_p_part(&FgAbGroup::free(3), 5), (3, vec![]));
    }
}
