//! Deformation-ring shapes: pro-p parts, ring descriptors, the component
//! torsor, and local-field presets with their closed-form invariants.

mod components;
mod local;

pub use components::{components, ComponentTorsor};
pub use local::{
    closed_form_invariants, local_field_model, model_invariants, nonzero_kappa, ClosedForms, LocalFieldPreset,
    ModelInvariants,
};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::intlin::{pro_p_part, FgAbGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DefRingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("torsion entry {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("torsion entries mix the primes {0} and {1}")]
    MixedPrimes(u64, u64),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `μ ⊕ Z_p^r` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProPModule {
    pub p: u64,
    pub free_rank: usize,
    /// `p`-power invariant factors, ascending.
    pub torsion: Vec<u64>,
}

pub fn pro_p(g: &FgAbGroup, p: u64) -> Result<ProPModule, DefRingError> {
    if !is_prime(p) {
        return Err(DefRingError::NotPrime(p));
    }
    let (free_rank, tors) = pro_p_part(g, p);
    let torsion = tors
        .iter()
        .map(|t: &BigInt| t.to_u64().ok_or_else(|| DefRingError::Internal("torsion too large".into())))
        .collect::<Result<_, _>>()?;
    Ok(ProPModule { p, free_rank, torsion })
}

/// `O[μ][[x_1..x_r]][t_1^±1..t_s^±1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDescriptor {
    pub torsion_mu: Vec<u64>,
    pub series_vars: usize,
    pub laurent_vars: usize,
    pub base_note: String,
}

impl RingDescriptor {
    pub fn new(torsion_mu: Vec<u64>, series_vars: usize, laurent_vars: usize) -> Self {
        let base_note = roots_of_unity_note(&torsion_mu);
        RingDescriptor {
            torsion_mu,
            series_vars,
            laurent_vars,
            base_note,
        }
    }

    pub fn relative_dimension(&self) -> usize {
        self.series_vars + self.laurent_vars
    }

    pub fn component_count(&self) -> u64 {
        self.torsion_mu.iter().product()
    }

    /// `O[μ]` is a complete intersection, hence so is every ring of this shape.
    pub fn complete_intersection(&self) -> bool {
        true
    }

    pub fn render(&self) -> String {
        let mut s = String::from("O");
        if !self.torsion_mu.is_empty() {
            let parts: Vec<String> = self.torsion_mu.iter().map(|d| format!("Z/{d}")).collect();
            s.push_str(&format!("[{}]", parts.join(" x ")));
        }
        if self.series_vars > 0 {
            let v: Vec<String> = (1..=self.series_vars).map(|i| format!("x{i}")).collect();
            s.push_str(&format!("[[{}]]", v.join(",")));
        }
        if self.laurent_vars > 0 {
            let v: Vec<String> = (1..=self.laurent_vars).map(|i| format!("t{i}^±1")).collect();
            s.push_str(&format!("[{}]", v.join(",")));
        }
        s
    }
}

/// `O` must contain the `p^m`-th roots of unity, `p^m = ∏ μ`.
pub fn roots_of_unity_note(mu: &[u64]) -> String {
    let n: u64 = mu.iter().product();
    if n == 1 {
        "no roots of unity required".into()
    } else {
        format!("O must contain the {n}-th roots of unity")
    }
}

/// `(R^□, R^ps, A^gen)`.
pub fn ring_descriptors(nps: &ProPModule, s: usize) -> (RingDescriptor, RingDescriptor, RingDescriptor) {
    let mu = nps.torsion.clone();
    let r = nps.free_rank;
    (
        RingDescriptor::new(mu.clone(), r + s, 0),
        RingDescriptor::new(mu.clone(), r, 0),
        RingDescriptor::new(mu, r, s),
    )
}
