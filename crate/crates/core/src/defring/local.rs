//! Local-field presets `(p, d, Δ, a, χ)` and the model `Z/p^a(χ) ⊕ Z ⊕ Z[Δ]^d`.

use num_bigint::BigInt;

use super::{is_prime, pro_p, DefRingError, ProPModule};
use crate::ee::{build_e, coinvariants_with_q};
use crate::gmod::{FiniteGroup, GModule, TwoCocycle};
use crate::intlin::{FgAbGroup, IntMatrix};

#[derive(Clone, Debug)]
pub struct LocalFieldPreset {
    pub p: u64,
    /// `[F : Q_p]`.
    pub d: usize,
    pub delta: FiniteGroup,
    /// `μ_{p^∞}(E) ≅ Z/p^a`.
    pub a: u32,
    /// Action of `Δ` on the roots of unity, one unit mod `p^a` per element
    /// (reduced into `0..p^a`).
    pub chi_cyc: Vec<u64>,
    pub m: GModule,
}

impl LocalFieldPreset {
    pub fn new(
        p: u64,
        d: usize,
        delta: FiniteGroup,
        a: u32,
        chi_cyc: Vec<i64>,
        m: GModule,
    ) -> Result<Self, DefRingError> {
        let bad = |s: String| Err(DefRingError::InvalidPreset(s));
        if !is_prime(p) {
            return Err(DefRingError::NotPrime(p));
        }
        let pa = p
            .checked_pow(a)
            .filter(|&x| x < (1 << 31))
            .ok_or_else(|| DefRingError::InvalidPreset(format!("{p}^{a} is too large")))?;
        if chi_cyc.len() != delta.order() {
            return bad(format!("chi_cyc has {} values, group has {} elements", chi_cyc.len(), delta.order()));
        }
        if m.group() != &delta {
            return bad("M is a module over a different group".into());
        }
        if m.underlying().free_rank() != m.underlying().ambient_rank() {
            return bad("M is not a lattice".into());
        }
        if a == 0 {
            if let Some(g) = chi_cyc.iter().position(|&x| x != 1) {
                return bad(format!("a = 0 forces chi_cyc trivial, but chi_cyc[{g}] = {}", chi_cyc[g]));
            }
        } else {
            let chi: Vec<u64> = chi_cyc.iter().map(|&x| x.rem_euclid(pa as i64) as u64).collect();
            for (g, &x) in chi.iter().enumerate() {
                if x % p == 0 {
                    return bad(format!("chi_cyc[{g}] = {x} is not a unit mod {pa}"));
                }
            }
            if chi[delta.identity()] != 1 {
                return bad("chi_cyc is not 1 at the identity".into());
            }
            for x in delta.elements() {
                for y in delta.elements() {
                    if (chi[x] * chi[y]) % pa != chi[delta.mul(x, y)] {
                        return bad(format!("chi_cyc is not multiplicative at ({x}, {y})"));
                    }
                }
            }
        }
        let chi_cyc = chi_cyc
            .iter()
            .map(|&x| if a == 0 { 1 } else { x.rem_euclid(pa as i64) as u64 })
            .collect();
        Ok(LocalFieldPreset { p, d, delta, a, chi_cyc, m })
    }

    pub fn p_power(&self) -> u64 {
        self.p.pow(self.a)
    }

    /// `Z/p^a(χ)` as a module, or `None` when `a = 0`.
    pub fn roots_of_unity(&self) -> Option<GModule> {
        if self.a == 0 {
            return None;
        }
        let action = self.chi_cyc.iter().map(|&x| IntMatrix::scalar(1, x)).collect();
        Some(GModule::new(self.delta.clone(), FgAbGroup::cyclic(self.p_power()), action).expect("validated character"))
    }

    /// Ambient index of the trivial `Z` summand in the model.
    pub fn z_index(&self) -> usize {
        (self.a > 0) as usize
    }
}

pub fn local_field_model(preset: &LocalFieldPreset) -> GModule {
    let g = &preset.delta;
    let z = GModule::trivial_z(g);
    let reg = GModule::group_ring(g);
    let mut parts: Vec<GModule> = preset.roots_of_unity().into_iter().collect();
    parts.push(z);
    parts.extend(std::iter::repeat(reg).take(preset.d));
    GModule::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("same group")
}

/// `κ(σ^i, σ^j) = [i + j ≥ n]` in the trivial `Z` summand, for cyclic `Δ`
/// of order `n > 1`; its class generates `H²(Δ, Z) = Z/n`.
pub fn nonzero_kappa(preset: &LocalFieldPreset) -> Option<TwoCocycle> {
    let g = &preset.delta;
    let n = g.order();
    let sigma = g.elements().find(|&x| g.element_order(x) == n && n > 1)?;
    let mut log = vec![0usize; n];
    let mut x = g.identity();
    for i in 0..n {
        log[x] = i;
        x = g.mul(sigma, x);
    }
    let model = local_field_model(preset);
    let zi = preset.z_index();
    let rank = model.rank();
    TwoCocycle::from_fn(model, |d, c| {
        let mut v = vec![BigInt::from(0); rank];
        if log[d] + log[c] >= n {
            v[zi] = BigInt::from(1);
        }
        v
    })
    .ok()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForms {
    pub r: usize,
    pub s: usize,
    pub m: usize,
    /// `(Z/p^a(χ) ⊗ M)^Δ`.
    pub mu_delta: FgAbGroup,
    pub rank_m: usize,
    pub rank_m_coinv: usize,
}

impl ClosedForms {
    pub fn n_ps(&self, p: u64) -> Result<ProPModule, DefRingError> {
        Ok(ProPModule {
            p,
            free_rank: self.r,
            torsion: pro_p(&self.mu_delta, p)?.torsion,
        })
    }
}

pub fn closed_form_invariants(preset: &LocalFieldPreset) -> ClosedForms {
    let m = &preset.m;
    let n = m.rank();
    let rank_m_coinv = m.coinvariants().free_rank();
    let r = n * preset.d + rank_m_coinv;
    let s = n - rank_m_coinv;
    let pa = BigInt::from(preset.p_power());
    let lifted = FgAbGroup::from_relations(n, IntMatrix::scalar(n, pa)).expect("square relations");
    let action = preset
        .delta
        .elements()
        .map(|g| m.action(g).scale(&BigInt::from(preset.chi_cyc[g])))
        .collect();
    let twisted = GModule::new(preset.delta.clone(), lifted, action).expect("twist of a module");
    ClosedForms {
        r,
        s,
        m: r + s,
        mu_delta: twisted.invariants().group,
        rank_m: n,
        rank_m_coinv,
    }
}

/// Numbers read off the model module, to be compared with [`ClosedForms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelInvariants {
    pub invariants: ProPModule,
    pub coinvariant_rank: usize,
    /// `rank pro_p((ℰ⊗M)_Δ)` for `κ = 0`, then for [`nonzero_kappa`] when it exists.
    pub e_ranks: Vec<usize>,
}

pub fn model_invariants(preset: &LocalFieldPreset) -> Result<ModelInvariants, DefRingError> {
    let model = local_field_model(preset);
    let t = model
        .tensor(&preset.m)
        .map_err(|e| DefRingError::Internal(e.to_string()))?;
    let invariants = pro_p(&t.invariants().group, preset.p)?;
    let coinvariant_rank = t.coinvariants().free_rank();
    let mut kappas = vec![TwoCocycle::zero(&model)];
    kappas.extend(nonzero_kappa(preset));
    let mut e_ranks = Vec::new();
    for k in &kappas {
        let e = build_e(k).map_err(|e| DefRingError::Internal(e.to_string()))?;
        let q = coinvariants_with_q(&e, &preset.m).map_err(|e| DefRingError::Internal(e.to_string()))?;
        e_ranks.push(pro_p(&q.coinv, preset.p)?.free_rank);
    }
    Ok(ModelInvariants {
        invariants,
        coinvariant_rank,
        e_ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defring::ring_descriptors;

    fn sign(g: &FiniteGroup) -> GModule {
        GModule::lattice(g, 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap()
    }

    #[test]
    fn model_shapes() {
        let g = FiniteGroup::trivial();
        let p = LocalFieldPreset::new(2, 1, g.clone(), 1, vec![1], GModule::trivial_z(&g)).unwrap();
        let u = local_field_model(&p).underlying().clone();
        assert_eq!(u.free_rank(), 2);
        assert_eq!(u.invariant_factors_u64(), vec![2]);
        let p = LocalFieldPreset::new(3, 1, g.clone(), 0, vec![1], GModule::trivial_z(&g)).unwrap();
        let u = local_field_model(&p).underlying().clone();
        assert_eq!((u.free_rank(), u.is_finite()), (2, false));
        assert!(u.invariant_factors_u64().is_empty());
        let c3 = FiniteGroup::cyclic(3);
        let p = LocalFieldPreset::new(3, 2, c3.clone(), 1, vec![1, 1, 1], GModule::trivial_z(&c3)).unwrap();
        assert_eq!(local_field_model(&p).underlying().free_rank(), 1 + 2 * 3);
    }

    #[test]
    fn preset_validation() {
        let c2 = FiniteGroup::cyclic(2);
        let z = GModule::trivial_z(&c2);
        assert!(LocalFieldPreset::new(2, 1, c2.clone(), 0, vec![1, 3], z.clone()).is_err());
        assert!(LocalFieldPreset::new(2, 1, c2.clone(), 2, vec![1, 2], z.clone()).is_err());
        assert!(LocalFieldPreset::new(3, 1, c2.clone(), 1, vec![1, 1, 1], z.clone()).is_err());
        assert!(LocalFieldPreset::new(5, 1, c2.clone(), 1, vec![1, 2], z.clone()).is_err());
        assert!(LocalFieldPreset::new(5, 1, c2.clone(), 1, vec![1, 4], z.clone()).is_ok());
        assert!(LocalFieldPreset::new(4, 1, c2, 1, vec![1, 3], z).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let g = FiniteGroup::trivial();
        let p = LocalFieldPreset::new(2, 1, g.clone(), 1, vec![1], GModule::trivial_z(&g)).unwrap();
        let c = closed_form_invariants(&p);
        assert_eq!((c.r, c.s, c.m), (2, 0, 2));
        let (sq, ps, _) = ring_descriptors(&c.n_ps(2).unwrap(), c.s);
        assert_eq!(sq.render(), "O[Z/2][[x1,x2]]");
        assert_eq!(ps.render(), "O[Z/2][[x1,x2]]");

        let c2 = FiniteGroup::cyclic(2);
        let p = LocalFieldPreset::new(2, 1, c2.clone(), 1, vec![1, -1], sign(&c2)).unwrap();
        let c = closed_form_invariants(&p);
        assert_eq!((c.r, c.s, c.m), (1, 1, 2));
        assert_eq!(c.mu_delta.invariant_factors_u64(), vec![2]);
        let (_, _, gen) = ring_descriptors(&c.n_ps(2).unwrap(), c.s);
        assert_eq!(gen.render(), "O[Z/2][[x1]][t1^±1]");

        let zero = GModule::trivial(&c2, FgAbGroup::free(0));
        let p = LocalFieldPreset::new(2, 1, c2, 1, vec![1, 1], zero).unwrap();
        let c = closed_form_invariants(&p);
        assert_eq!((c.r, c.s, c.m), (0, 0, 0));
        assert!(c.mu_delta.is_trivial());
    }

    #[test]
    fn model_agrees_with_closed_forms() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let presets = vec![
            LocalFieldPreset::new(2, 1, c2.clone(), 1, vec![1, 1], sign(&c2)).unwrap(),
            LocalFieldPreset::new(3, 2, c2.clone(), 1, vec![1, 2], sign(&c2)).unwrap(),
            LocalFieldPreset::new(3, 1, c2.clone(), 2, vec![1, -1], GModule::group_ring(&c2)).unwrap(),
            LocalFieldPreset::new(2, 2, c3.clone(), 2, vec![1, 1, 1], GModule::augmentation_ideal(&c3)).unwrap(),
        ];
        for p in &presets {
            let c = closed_form_invariants(p);
            let mi = model_invariants(p).unwrap();
            assert_eq!(mi.invariants.free_rank, c.r);
            assert_eq!(mi.invariants.torsion, pro_p(&c.mu_delta, p.p).unwrap().torsion);
            assert_eq!(mi.coinvariant_rank, c.r);
            assert_eq!(mi.e_ranks.len(), 2);
            assert!(mi.e_ranks.iter().all(|&k| k == c.m));
        }
    }

    #[test]
    fn nonzero_kappa_on_cyclic_delta() {
        let c3 = FiniteGroup::cyclic(3);
        let p = LocalFieldPreset::new(3, 1, c3.clone(), 1, vec![1, 1, 1], GModule::trivial_z(&c3)).unwrap();
        let k = nonzero_kappa(&p).unwrap();
        assert!(!k.is_zero());
        assert!(k.validate().is_ok());
        let g = FiniteGroup::trivial();
        let p = LocalFieldPreset::new(3, 1, g.clone(), 0, vec![1], GModule::trivial_z(&g)).unwrap();
        assert!(nonzero_kappa(&p).is_none());
    }
}
