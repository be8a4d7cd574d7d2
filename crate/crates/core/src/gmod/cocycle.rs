use num_bigint::BigInt;

use super::module::GModule;
use super::GModError;

/// A 2-cochain `κ: Δ × Δ -> A`, values stored row-major by `(d, c)` as
/// ambient coordinate vectors of `A`.
#[derive(Clone, Debug)]
pub struct TwoCocycle {
    module: GModule,
    values: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    /// `κ(d, c)` should vanish because one argument is the identity.
    NotNormalized { d: usize, c: usize },
    /// `d·κ(c,e) - κ(dc,e) + κ(d,ce) - κ(d,c) != 0`.
    Identity { d: usize, c: usize, e: usize },
}

impl std::fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CocycleViolation::NotNormalized { d, c } => write!(f, "kappa({d},{c}) is not zero"),
            CocycleViolation::Identity { d, c, e } => write!(f, "cocycle identity fails at ({d},{c},{e})"),
        }
    }
}

impl TwoCocycle {
    /// Unvalidated table; call [`TwoCocycle::validate`] before use.
    pub fn from_table(module: GModule, values: Vec<Vec<BigInt>>) -> Result<Self, GModError> {
        let n = module.group().order();
        if values.len() != n * n {
            return Err(GModError::InvalidCocycle(format!("expected {} values, found {}", n * n, values.len())));
        }
        if let Some(i) = values.iter().position(|v| v.len() != module.rank()) {
            return Err(GModError::InvalidCocycle(format!(
                "value at ({}, {}) has length {}, expected {}",
                i / n,
                i % n,
                values[i].len(),
                module.rank()
            )));
        }
        Ok(TwoCocycle { module, values })
    }

    /// Build from a function and validate.
    pub fn from_fn(module: GModule, f: impl Fn(usize, usize) -> Vec<BigInt>) -> Result<Self, GModError> {
        let n = module.group().order();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        let k = Self::from_table(module, values)?;
        k.validate().map_err(|v| GModError::InvalidCocycle(v.to_string()))?;
        Ok(k)
    }

    pub fn zero(module: &GModule) -> Self {
        let n = module.group().order();
        TwoCocycle {
            values: vec![vec![BigInt::from(0); module.rank()]; n * n],
            module: module.clone(),
        }
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn value(&self, d: usize, c: usize) -> &[BigInt] {
        &self.values[d * self.module.group().order() + c]
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// First violation of normalization, then of the cocycle identity, in
    /// lexicographic order of the arguments.
    pub fn validate(&self) -> Result<(), CocycleViolation> {
        let g = self.module.group();
        let a = self.module.underlying();
        let e = g.identity();
        for x in g.elements() {
            if !a.is_zero(self.value(e, x)) {
                return Err(CocycleViolation::NotNormalized { d: e, c: x });
            }
            if !a.is_zero(self.value(x, e)) {
                return Err(CocycleViolation::NotNormalized { d: x, c: e });
            }
        }
        for d in g.elements() {
            for c in g.elements() {
                for f in g.elements() {
                    let t1 = self.module.act(d, self.value(c, f));
                    let t2 = self.value(g.mul(d, c), f);
                    let t3 = self.value(d, g.mul(c, f));
                    let t4 = self.value(d, c);
                    let s: Vec<BigInt> = (0..t1.len()).map(|i| &t1[i] - &t2[i] + &t3[i] - &t4[i]).collect();
                    if !a.is_zero(&s) {
                        return Err(CocycleViolation::Identity { d, c, e: f });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        let a = self.module.underlying();
        self.values.iter().all(|v| a.is_zero(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::FiniteGroup;
    use crate::intlin::FgAbGroup;

    fn z4_over_z2() -> GModule {
        GModule::trivial(&FiniteGroup::cyclic(2), FgAbGroup::cyclic(4))
    }

    fn table(vals: [i64; 4]) -> Vec<Vec<BigInt>> {
        vals.iter().map(|&v| vec![BigInt::from(v)]).collect()
    }

    #[test]
    fn zero_is_a_cocycle() {
        assert!(TwoCocycle::zero(&z4_over_z2()).validate().is_ok());
    }

    #[test]
    fn carry_cocycle_is_valid() {
        let k = TwoCocycle::from_table(z4_over_z2(), table([0, 0, 0, 1])).unwrap();
        assert!(k.validate().is_ok());
    }

    #[test]
    fn unnormalized_table_is_reported() {
        let k = TwoCocycle::from_table(z4_over_z2(), table([0, 0, 1, 1])).unwrap();
        assert_eq!(k.validate(), Err(CocycleViolation::NotNormalized { d: 1, c: 0 }));
    }

    #[test]
    fn sign_module_rejects_odd_value() {
        // At (σ,σ,σ): σκ(σ,σ) - κ(1,σ) + κ(σ,1) - κ(σ,σ) = -2.
        let g = FiniteGroup::cyclic(2);
        let m = GModule::lattice(&g, 1, &[(1, crate::intlin::IntMatrix::from_i64(1, 1, &[-1]))]).unwrap();
        let k = TwoCocycle::from_table(m, table([0, 0, 0, 1])).unwrap();
        assert_eq!(k.validate(), Err(CocycleViolation::Identity { d: 1, c: 1, e: 1 }));
    }
}
