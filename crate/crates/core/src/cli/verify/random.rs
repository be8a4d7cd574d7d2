//! Seeded random matrices, lattices and modules for the property checks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::gmod::{FiniteGroup, GModule};
use crate::intlin::{FgAbGroup, IntMatrix};

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(rows, cols, &data)
}

/// A random unimodular `P` together with `P⁻¹`, as a product of elementary
/// row operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p[(0, 0)] = BigInt::from(-1);
            q[(0, 0)] = BigInt::from(-1);
        }
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k: i64 = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(k);
        let mut einv = IntMatrix::identity(n);
        einv[(i, j)] = BigInt::from(-k);
        p = e.mul(&p);
        q = q.mul(&einv);
    }
    (p, q)
}

/// `P N P⁻¹`: same module in a new basis.
pub fn conjugate_module(n: &GModule, p: &IntMatrix, pinv: &IntMatrix) -> GModule {
    let u = n.underlying();
    let rel = p.mul(u.relations());
    let under = FgAbGroup::from_relations(u.ambient_rank(), rel).expect("relations");
    let action = n.actions().iter().map(|a| p.mul(a).mul(pinv)).collect();
    GModule::new(n.group().clone(), under, action).expect("conjugate of a module")
}

/// Lattices of rank 1 or 2 or 3 built over cyclic `Δ` of order 1..3.
fn lattice_blocks(g: &FiniteGroup) -> Vec<GModule> {
    let mut out = vec![GModule::trivial_z(g)];
    if g.order() == 2 {
        out.push(GModule::lattice(g, 1, &[(1, IntMatrix::from_i64(1, 1, &[-1]))]).unwrap());
    }
    if g.order() > 1 {
        out.push(GModule::group_ring(g));
        out.push(GModule::augmentation_ideal(g));
    }
    out
}

pub fn random_lattice(rng: &mut ChaCha8Rng, g: &FiniteGroup, max_rank: usize) -> GModule {
    let blocks = lattice_blocks(g);
    let target = rng.gen_range(1..=max_rank);
    let mut parts: Vec<GModule> = Vec::new();
    let mut r = 0;
    while r < target {
        let fits: Vec<&GModule> = blocks.iter().filter(|b| r + b.rank() <= target).collect();
        let b = (*fits.choose(rng).unwrap()).clone();
        r += b.rank();
        parts.push(b);
    }
    let sum = GModule::direct_sum(&parts.iter().collect::<Vec<_>>()).unwrap();
    let (p, q) = random_unimodular(rng, r, 6);
    conjugate_module(&sum, &p, &q)
}

fn sign_character(g: &FiniteGroup) -> Option<Vec<i64>> {
    // any homomorphism onto ±1, found by brute force over index-2 subsets
    let n = g.order();
    if n % 2 != 0 || n > 12 {
        return None;
    }
    (1u32..1 << n).find_map(|mask| {
        let s: Vec<i64> = (0..n).map(|x| if mask >> x & 1 == 1 { -1 } else { 1 }).collect();
        let ok = s[g.identity()] == 1
            && g.elements().all(|a| g.elements().all(|b| s[g.mul(a, b)] == s[a] * s[b]))
            && s.contains(&-1);
        ok.then_some(s)
    })
}

/// Finitely generated modules with torsion and free parts, over `Δ`.
pub fn random_module(rng: &mut ChaCha8Rng, g: &FiniteGroup, max_blocks: usize) -> GModule {
    let mut blocks = Vec::new();
    for _ in 0..rng.gen_range(1..=max_blocks) {
        let b = match rng.gen_range(0..6) {
            0 => GModule::trivial_z(g),
            1 => GModule::trivial(g, FgAbGroup::cyclic(rng.gen_range(2..=4))),
            2 => GModule::group_ring(g),
            3 => GModule::augmentation_ideal(g),
            4 => {
                let k = rng.gen_range(2..=3);
                let r = GModule::group_ring(g);
                r.quotient(&IntMatrix::scalar(r.rank(), k)).unwrap()
            }
            _ => match sign_character(g) {
                Some(s) => {
                    let action = s.iter().map(|&x| IntMatrix::from_i64(1, 1, &[x])).collect();
                    GModule::new(g.clone(), FgAbGroup::free(1), action).unwrap()
                }
                None => GModule::trivial_z(g),
            },
        };
        if b.rank() > 0 {
            blocks.push(b);
        }
    }
    if blocks.is_empty() {
        blocks.push(GModule::trivial_z(g));
    }
    let sum = GModule::direct_sum(&blocks.iter().collect::<Vec<_>>()).unwrap();
    let (p, q) = random_unimodular(rng, sum.rank(), 4);
    conjugate_module(&sum, &p, &q)
}
