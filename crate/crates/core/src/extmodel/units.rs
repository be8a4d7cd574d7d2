use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ExtModelError;
use crate::intlin::{FgAbGroup, IntMatrix};

/// `(Z/n)^×` as an abstract abelian group with explicit logarithm and exponential.
#[derive(Clone, Debug)]
pub struct UnitGroupRing {
    modulus: u64,
    group: FgAbGroup,
    units: Vec<u64>,
    log: HashMap<u64, Vec<BigInt>>,
    exp: HashMap<Vec<BigInt>, u64>,
}

impl UnitGroupRing {
    pub fn new(n: u64) -> Result<Self, ExtModelError> {
        if n < 2 {
            return Err(ExtModelError::InvalidInput(format!("modulus {n} must be at least 2")));
        }
        let units: Vec<u64> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
        let pos: HashMap<u64, usize> = units.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let k = units.len();
        // Generators e_u for every unit; relations e_u + e_v - e_{uv}.
        let mut rel = IntMatrix::zeros(k, k * k);
        for (i, &u) in units.iter().enumerate() {
            for (j, &v) in units.iter().enumerate() {
                let col = i * k + j;
                rel[(i, col)] += 1;
                rel[(j, col)] += 1;
                rel[(pos[&(u * v % n)], col)] -= 1;
            }
        }
        let pres = FgAbGroup::from_relations(k, rel).map_err(|e| ExtModelError::Internal(e.to_string()))?;
        let moduli: Vec<u64> = pres.slot_moduli().iter().map(|m| m.to_u64().unwrap()).collect();
        let group = FgAbGroup::from_invariants(&moduli, 0);
        let mut log = HashMap::new();
        let mut exp = HashMap::new();
        for (i, &u) in units.iter().enumerate() {
            let mut e = vec![BigInt::from(0); k];
            e[i] = BigInt::from(1);
            let c = pres.canonical(&e);
            log.insert(u, c.clone());
            exp.insert(c, u);
        }
        let coordinates_agree = exp.keys().all(|c| &group.canonical(c) == c);
        if exp.len() != k || group.order() != Some(BigInt::from(k)) || !coordinates_agree {
            return Err(ExtModelError::Internal(format!("unit group of Z/{n} is not a bijection")));
        }
        Ok(UnitGroupRing {
            modulus: n,
            group,
            units,
            log,
            exp,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The unit group as `Z/d_1 + ... + Z/d_k` on one generator per factor.
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    /// Coordinates of a unit.
    pub fn log(&self, u: u64) -> Option<&[BigInt]> {
        self.log.get(&(u % self.modulus)).map(|v| v.as_slice())
    }

    /// The unit with the given coordinates (any representative).
    pub fn exp(&self, c: &[BigInt]) -> u64 {
        self.exp[&self.group.canonical(c)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(r: &UnitGroupRing) -> Vec<u64> {
        r.group().invariant_factors_u64()
    }

    #[test]
    fn small_unit_groups() {
        assert_eq!(inv(&UnitGroupRing::new(3).unwrap()), vec![2]);
        assert_eq!(inv(&UnitGroupRing::new(4).unwrap()), vec![2]);
        assert_eq!(inv(&UnitGroupRing::new(5).unwrap()), vec![4]);
        assert_eq!(inv(&UnitGroupRing::new(8).unwrap()), vec![2, 2]);
        assert_eq!(inv(&UnitGroupRing::new(15).unwrap()), vec![2, 4]);
    }

    #[test]
    fn log_is_a_homomorphism() {
        let r = UnitGroupRing::new(20).unwrap();
        for &u in r.units() {
            for &v in r.units() {
                let s: Vec<BigInt> = r.log(u).unwrap().iter().zip(r.log(v).unwrap()).map(|(a, b)| a + b).collect();
                assert_eq!(r.exp(&s), u * v % 20);
            }
        }
    }
}
