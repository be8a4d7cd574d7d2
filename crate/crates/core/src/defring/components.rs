//! Irreducible components of `O[μ][[x..]]` as a torsor under the character
//! group `X(μ) = Hom(μ, Q/Z)`.

use super::{roots_of_unity_note, DefRingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTorsor {
    pub mu: Vec<u64>,
    /// Characters as coordinate vectors in `⊕ Z/μ_i`, lexicographic.
    pub characters: Vec<Vec<u64>>,
    pub labels: Vec<String>,
    /// `action[χ][c]` is the component `χ · c`.
    pub action: Vec<Vec<usize>>,
    pub basepoint: Option<usize>,
    pub roots_note: String,
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n % d == 0).unwrap_or(n)
}

fn prime_of(e: u64) -> Result<Option<u64>, DefRingError> {
    if e == 0 {
        return Err(DefRingError::NotPrimePower(0));
    }
    if e == 1 {
        return Ok(None);
    }
    let p = smallest_prime_factor(e);
    let mut x = e;
    while x % p == 0 {
        x /= p;
    }
    if x != 1 {
        return Err(DefRingError::NotPrimePower(e));
    }
    Ok(Some(p))
}

fn coords(mu: &[u64], mut k: usize) -> Vec<u64> {
    let mut v = vec![0; mu.len()];
    for i in (0..mu.len()).rev() {
        v[i] = k as u64 % mu[i];
        k /= mu[i] as usize;
    }
    v
}

fn index(mu: &[u64], v: &[u64]) -> usize {
    v.iter().zip(mu).fold(0, |acc, (x, m)| acc * *m as usize + *x as usize)
}

/// Entries must be powers of one prime; entries equal to 1 are dropped.
pub fn components(mu: &[u64]) -> Result<ComponentTorsor, DefRingError> {
    let mut prime = None;
    for &e in mu {
        if let Some(p) = prime_of(e)? {
            match prime {
                Some(q) if q != p => return Err(DefRingError::MixedPrimes(q, p)),
                _ => prime = Some(p),
            }
        }
    }
    let mu: Vec<u64> = mu.iter().copied().filter(|&e| e != 1).collect();
    let n: usize = mu.iter().map(|&e| e as usize).product();
    let characters: Vec<Vec<u64>> = (0..n).map(|k| coords(&mu, k)).collect();
    let action = characters
        .iter()
        .map(|chi| {
            (0..n)
                .map(|c| {
                    let sum: Vec<u64> = coords(&mu, c).iter().zip(chi).zip(&mu).map(|((x, y), m)| (x + y) % m).collect();
                    index(&mu, &sum)
                })
                .collect()
        })
        .collect();
    Ok(ComponentTorsor {
        roots_note: roots_of_unity_note(&mu),
        labels: (0..n).map(|k| format!("C{k}")).collect(),
        mu,
        characters,
        action,
        basepoint: None,
    })
}

impl ComponentTorsor {
    pub fn count(&self) -> usize {
        self.labels.len()
    }

    pub fn with_basepoint(mut self, c: usize) -> Self {
        self.basepoint = Some(c);
        self
    }

    /// Only the trivial character fixes a component.
    pub fn is_faithful(&self) -> bool {
        self.action
            .iter()
            .enumerate()
            .all(|(k, row)| self.characters[k].iter().all(|&x| x == 0) || row.iter().enumerate().all(|(c, &t)| t != c))
    }

    /// The orbit of every component is everything.
    pub fn is_transitive(&self) -> bool {
        (0..self.count()).all(|c| {
            let mut seen = vec![false; self.count()];
            for row in &self.action {
                seen[row[c]] = true;
            }
            seen.into_iter().all(|x| x)
        })
    }

    pub fn stabilizer(&self, c: usize) -> Vec<usize> {
        (0..self.action.len()).filter(|&k| self.action[k][c] == c).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.is_faithful() && self.is_transitive() && (0..self.count()).all(|c| self.stabilizer(c).len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_torsors() {
        let t = components(&[]).unwrap();
        assert_eq!(t.count(), 1);
        assert!(t.is_regular());
        let t = components(&[2]).unwrap();
        assert_eq!(t.action[1], vec![1, 0]);
        let t = components(&[2, 4]).unwrap();
        assert_eq!(t.count(), 8);
        assert!(t.is_regular());
        assert_eq!(t.roots_note, "O must contain the 8-th roots of unity");
        assert_eq!(components(&[3, 1]).unwrap().count(), 3);
    }

    #[test]
    fn rejects_bad_entries() {
        assert_eq!(components(&[6]), Err(DefRingError::NotPrimePower(6)));
        assert_eq!(components(&[2, 3]), Err(DefRingError::MixedPrimes(2, 3)));
        assert!(components(&[0]).is_err());
    }

    #[test]
    fn action_is_a_group_action() {
        let t = components(&[2, 4]).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let sum: Vec<u64> = t.characters[a].iter().zip(&t.characters[b]).zip(&t.mu).map(|((x, y), m)| (x + y) % m).collect();
                let ab = t.characters.iter().position(|c| *c == sum).unwrap();
                for c in 0..8 {
                    assert_eq!(t.action[a][t.action[b][c]], t.action[ab][c]);
                }
            }
        }
    }
}
