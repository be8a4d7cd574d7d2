//! Low-degree group (co)homology from the normalized bar resolution, and Tate
//! groups in degrees -2..2.

use super::group::FiniteGroup;
use super::module::GModule;
use super::GModError;
use crate::intlin::{solve, subquotient, FgAbGroup, GroupHom, IntMatrix};

/// Normalized bar cells of degree `n`: tuples of non-identity elements,
/// first entry most significant.
struct Cells {
    nontrivial: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Cells {
    fn new(g: &FiniteGroup) -> Self {
        let nontrivial = g.nontrivial();
        let mut position = vec![None; g.order()];
        for (i, &x) in nontrivial.iter().enumerate() {
            position[x] = Some(i);
        }
        Cells { nontrivial, position }
    }

    fn count(&self, n: usize) -> usize {
        self.nontrivial.len().pow(n as u32)
    }

    fn tuple(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let k = self.nontrivial.len();
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = self.nontrivial[idx % k];
            idx /= k;
        }
        t
    }

    /// Index of a tuple, or `None` if some entry is the identity (degenerate cell).
    fn index(&self, t: &[usize]) -> Option<usize> {
        let k = self.nontrivial.len();
        t.iter().try_fold(0usize, |acc, &x| Some(acc * k + self.position[x]?))
    }
}

fn add_block(m: &mut IntMatrix, row: usize, col: usize, r: usize, block: &IntMatrix, sign: i64) {
    for i in 0..r {
        for j in 0..r {
            let v = &block[(i, j)];
            if sign > 0 {
                m[(row * r + i, col * r + j)] += v;
            } else {
                m[(row * r + i, col * r + j)] -= v;
            }
        }
    }
}

/// Boundary `C_n -> C_{n-1}` of `(bar ⊗ N)_G`, `n >= 1`:
/// `[g_1|..|g_n] m -> [g_2|..] g_1^{-1} m + Σ (-1)^i [..|g_i g_{i+1}|..] m + (-1)^n [..|g_{n-1}] m`.
fn boundary_matrix(m: &GModule, cells: &Cells, n: usize) -> IntMatrix {
    let g = m.group();
    let r = m.rank();
    let id = IntMatrix::identity(r);
    let mut out = IntMatrix::zeros(cells.count(n - 1) * r, cells.count(n) * r);
    for col in 0..cells.count(n) {
        let t = cells.tuple(n, col);
        if let Some(row) = cells.index(&t[1..]) {
            add_block(&mut out, row, col, r, m.action(g.inv(t[0])), 1);
        }
        for i in 1..n {
            let mut face: Vec<usize> = t[..i - 1].to_vec();
            face.push(g.mul(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            if let Some(row) = cells.index(&face) {
                add_block(&mut out, row, col, r, &id, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        if let Some(row) = cells.index(&t[..n - 1]) {
            add_block(&mut out, row, col, r, &id, if n % 2 == 0 { 1 } else { -1 });
        }
    }
    out
}

/// Coboundary `C^n -> C^{n+1}` on normalized cochains.
fn coboundary_matrix(m: &GModule, cells: &Cells, n: usize) -> IntMatrix {
    let g = m.group();
    let r = m.rank();
    let id = IntMatrix::identity(r);
    let mut out = IntMatrix::zeros(cells.count(n + 1) * r, cells.count(n) * r);
    for row in 0..cells.count(n + 1) {
        let t = cells.tuple(n + 1, row);
        if let Some(col) = cells.index(&t[1..]) {
            add_block(&mut out, row, col, r, m.action(t[0]), 1);
        }
        for i in 1..=n {
            let mut face: Vec<usize> = t[..i - 1].to_vec();
            face.push(g.mul(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            if let Some(col) = cells.index(&face) {
                add_block(&mut out, row, col, r, &id, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        if let Some(col) = cells.index(&t[..n]) {
            add_block(&mut out, row, col, r, &id, if (n + 1) % 2 == 0 { 1 } else { -1 });
        }
    }
    out
}

fn chain_group(m: &GModule, cells: &Cells, n: usize) -> FgAbGroup {
    m.underlying().power(cells.count(n))
}

fn hom(m: &GModule, cells: &Cells, from: usize, to: usize, mat: IntMatrix) -> GroupHom {
    GroupHom::new(chain_group(m, cells, from), chain_group(m, cells, to), mat)
        .expect("bar differential respects relations")
}

/// `H_i(G, N)` for `i` in `0..=2`.
pub fn homology(m: &GModule, i: i32) -> Result<FgAbGroup, GModError> {
    let m = &m.on_slots();
    let cells = Cells::new(m.group());
    let d = |n: usize| hom(m, &cells, n, n - 1, boundary_matrix(m, &cells, n));
    match i {
        0 => Ok(m.coinvariants()),
        1 | 2 => {
            let n = i as usize;
            let sq = subquotient(&d(n + 1), &d(n)).map_err(|e| GModError::Internal(e.to_string()))?;
            Ok(sq.group)
        }
        _ => Err(GModError::DegreeOutOfRange(i)),
    }
}

/// `H^i(G, N)` for `i` in `0..=2`.
pub fn cohomology(m: &GModule, i: i32) -> Result<FgAbGroup, GModError> {
    let m = &m.on_slots();
    let cells = Cells::new(m.group());
    let d = |n: usize| hom(m, &cells, n, n + 1, coboundary_matrix(m, &cells, n));
    match i {
        0 => Ok(m.invariants().group),
        1 | 2 => {
            let n = i as usize;
            let sq = subquotient(&d(n - 1), &d(n)).map_err(|e| GModError::Internal(e.to_string()))?;
            Ok(sq.group)
        }
        _ => Err(GModError::DegreeOutOfRange(i)),
    }
}

/// Tate cohomology `Ĥ^i(G, N)` for `i` in `-2..=2`.
pub fn tate(m: &GModule, i: i32) -> Result<FgAbGroup, GModError> {
    match i {
        -2 => homology(m, 1),
        -1 => {
            let coinv = m.coinvariants();
            let norm = GroupHom::new(coinv, m.underlying().clone(), m.norm_matrix())
                .map_err(|e| GModError::Internal(e.to_string()))?;
            Ok(norm.kernel().group)
        }
        0 => {
            let inv = m.invariants();
            let coords = solve(&inv.inclusion, &m.norm_matrix())
                .ok_or_else(|| GModError::Internal("norm image is not invariant".into()))?;
            // Coordinates are determined only up to the relations of N; any
            // solution gives the same subgroup of the invariants.
            inv.group
                .quotient(&coords)
                .map_err(|e| GModError::Internal(e.to_string()))
        }
        1 | 2 => cohomology(m, i),
        _ => Err(GModError::DegreeOutOfRange(i)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::IntMatrix;

    fn f(g: &FgAbGroup) -> (usize, Vec<u64>) {
        (g.free_rank(), g.invariant_factors_u64())
    }

    fn sign(n: usize) -> GModule {
        GModule::lattice(&FiniteGroup::cyclic(n), 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap()
    }

    #[test]
    fn cyclic_homology_trivial_coefficients() {
        for n in 2..=5 {
            let z = GModule::trivial_z(&FiniteGroup::cyclic(n));
            assert_eq!(f(&homology(&z, 0).unwrap()), (1, vec![]));
            assert_eq!(f(&homology(&z, 1).unwrap()), (0, vec![n as u64]));
            assert_eq!(f(&homology(&z, 2).unwrap()), (0, vec![]));
            assert_eq!(f(&cohomology(&z, 1).unwrap()), (0, vec![]));
            assert_eq!(f(&cohomology(&z, 2).unwrap()), (0, vec![n as u64]));
        }
    }

    #[test]
    fn sign_module_homology() {
        let m = sign(2);
        assert_eq!(f(&homology(&m, 0).unwrap()), (0, vec![2]));
        assert_eq!(f(&homology(&m, 1).unwrap()), (0, vec![]));
        assert_eq!(f(&homology(&m, 2).unwrap()), (0, vec![2]));
        assert_eq!(f(&cohomology(&m, 1).unwrap()), (0, vec![2]));
    }

    #[test]
    fn tate_examples() {
        let z = GModule::trivial_z(&FiniteGroup::cyclic(2));
        assert_eq!(f(&tate(&z, 0).unwrap()), (0, vec![2]));
        assert_eq!(f(&tate(&sign(2), -1).unwrap()), (0, vec![2]));
        for n in [2, 3] {
            let r = GModule::group_ring(&FiniteGroup::cyclic(n));
            assert!(tate(&r, 0).unwrap().is_trivial());
            assert!(tate(&r, -1).unwrap().is_trivial());
            assert!(tate(&r, 1).unwrap().is_trivial());
        }
    }

    #[test]
    fn degree_out_of_range() {
        let z = GModule::trivial_z(&FiniteGroup::cyclic(2));
        assert!(matches!(homology(&z, 3), Err(GModError::DegreeOutOfRange(3))));
        assert!(matches!(tate(&z, -3), Err(GModError::DegreeOutOfRange(-3))));
    }

    #[test]
    fn klein_four_schur_multiplier() {
        let z = GModule::trivial_z(&FiniteGroup::klein4());
        assert_eq!(f(&homology(&z, 1).unwrap()), (0, vec![2, 2]));
        assert_eq!(f(&homology(&z, 2).unwrap()), (0, vec![2]));
    }
}
