use std::collections::VecDeque;

use super::GModError;

/// A finite group on the indices `0..order`, given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a full multiplication table (`table[a][b] = a * b`).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GModError> {
        let n = table.len();
        if n == 0 {
            return Err(GModError::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GModError::InvalidGroup("table is not square over 0..order".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| GModError::InvalidGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| GModError::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(GModError::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverse,
        })
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_table(table).expect("built-in family is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n`; element `i` is `σ^i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// `Z/2 × Z/2`, elements as two-bit vectors.
    pub fn klein4() -> Self {
        Self::from_fn(4, |a, b| a ^ b)
    }

    /// Permutations of `{0,1,2}` in lexicographic order; `(a*b)(x) = a(b(x))`.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        Self::from_fn(6, |a, b| {
            let (pa, pb) = (perms[a], perms[b]);
            idx([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
        })
    }

    /// `G × H` with `(g, h)` at index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let nh = h.order;
        Self::from_fn(g.order * nh, |a, b| g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Non-identity elements in index order.
    pub fn nontrivial(&self) -> Vec<usize> {
        self.elements().filter(|&g| g != self.identity).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&i| seen[i]).collect()
    }

    /// A generating set found greedily: repeatedly add the smallest element
    /// outside the current closure.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        loop {
            let cl = self.closure(&gens);
            if cl.len() == self.order {
                return gens;
            }
            let next = self.elements().find(|x| cl.binary_search(x).is_err()).unwrap();
            gens.push(next);
        }
    }

    /// Check that `map` (indexed by elements of `self`) is a homomorphism to `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < target.order)
            && self
                .elements()
                .all(|a| self.elements().all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_groups() {
        for g in [FiniteGroup::cyclic(5), FiniteGroup::klein4(), FiniteGroup::s3(), FiniteGroup::trivial()] {
            assert_eq!(g.closure(&g.generators()).len(), g.order());
        }
        assert!(!FiniteGroup::s3().is_abelian());
        assert!(FiniteGroup::klein4().is_abelian());
        assert_eq!(FiniteGroup::s3().identity(), 0);
    }

    #[test]
    fn product_indexing() {
        let g = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(4), 6);
    }

    #[test]
    fn rejects_non_group() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]);
        assert!(err.is_err());
    }
}
