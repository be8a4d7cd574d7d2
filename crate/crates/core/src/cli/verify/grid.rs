//! The finite-model grid: extensions `A ×_κ Δ`, coefficient lattices `M` and
//! rings `Z/n` whose unit groups serve as `V`.

use num_bigint::BigInt;

use crate::gmod::{FiniteGroup, GModule, TwoCocycle};
use crate::intlin::{FgAbGroup, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSize {
    Small,
    Full,
}

pub struct GridModel {
    pub name: String,
    pub kappa: TwoCocycle,
}

pub struct GridLattice {
    pub name: String,
    pub m: GModule,
}

pub struct GridPoint {
    pub model: usize,
    pub lattice: usize,
    pub r: u64,
}

pub struct Grid {
    pub models: Vec<GridModel>,
    /// Lattices per model, indexed like `models`.
    pub lattices: Vec<Vec<GridLattice>>,
    pub points: Vec<GridPoint>,
}

pub const RINGS: [u64; 4] = [3, 5, 4, 8];

fn m1(x: i64) -> IntMatrix {
    IntMatrix::from_i64(1, 1, &[x])
}

fn m2(x: [i64; 4]) -> IntMatrix {
    IntMatrix::from_i64(2, 2, &x)
}

fn module(g: &FiniteGroup, a: FgAbGroup, gens: &[(usize, IntMatrix)]) -> GModule {
    GModule::from_generators(g.clone(), a, gens).expect("grid action")
}

fn cocycle(a: GModule, f: impl Fn(usize, usize) -> Vec<i64>) -> TwoCocycle {
    TwoCocycle::from_fn(a, |d, c| f(d, c).into_iter().map(BigInt::from).collect()).expect("grid cocycle")
}

fn zero(a: &GModule) -> TwoCocycle {
    TwoCocycle::zero(a)
}

/// The extensions on the grid, `Δ ∈ {Z/2, Z/3, Z/2 x Z/2}`.
pub fn grid_models() -> Vec<GridModel> {
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let k4 = FiniteGroup::klein4();
    let t = |g: &FiniteGroup, a: FgAbGroup| GModule::trivial(g, a);
    let z4_inv = module(&c2, FgAbGroup::cyclic(4), &[(1, m1(-1))]);
    let z2sq_swap = module(&c2, FgAbGroup::from_invariants(&[2, 2], 0), &[(1, m2([0, 1, 1, 0]))]);
    let z2sq_rot = module(&c3, FgAbGroup::from_invariants(&[2, 2], 0), &[(1, m2([0, 1, 1, 1]))]);
    let sq = |d: usize, c: usize| d == 1 && c == 1;
    // f(σ) = 1, f(σ²) = 0 on Z/3
    let f3 = |x: usize| (x == 1) as i64;
    let mut out = vec![
        ("Z/2, A=0", zero(&t(&c2, FgAbGroup::trivial()))),
        ("Z/2, A=Z/2, k=0", zero(&t(&c2, FgAbGroup::cyclic(2)))),
        ("Z/2, A=Z/2, k=1", cocycle(t(&c2, FgAbGroup::cyclic(2)), |d, c| vec![sq(d, c) as i64])),
        ("Z/2, A=Z/4, k=0", zero(&t(&c2, FgAbGroup::cyclic(4)))),
        ("Z/2, A=Z/4, k=1", cocycle(t(&c2, FgAbGroup::cyclic(4)), |d, c| vec![sq(d, c) as i64])),
        ("Z/2, A=Z/4, k=2", cocycle(t(&c2, FgAbGroup::cyclic(4)), |d, c| vec![2 * sq(d, c) as i64])),
        ("Z/2, A=Z/4(-1), k=0", zero(&z4_inv)),
        ("Z/2, A=Z/4(-1), k=2", cocycle(z4_inv, |d, c| vec![2 * sq(d, c) as i64])),
        ("Z/2, A=(Z/2)^2 swap, k=0", zero(&z2sq_swap)),
        ("Z/3, A=0", zero(&t(&c3, FgAbGroup::trivial()))),
        ("Z/3, A=Z/2, coboundary k", cocycle(t(&c3, FgAbGroup::cyclic(2)), |d, c| vec![f3(c) + f3(d) - f3((d + c) % 3)])),
        ("Z/3, A=(Z/2)^2 rot, k=0", zero(&z2sq_rot)),
        ("Z/2xZ/2, A=0", zero(&t(&k4, FgAbGroup::trivial()))),
        ("Z/2xZ/2, A=Z/2, k=x1y2", cocycle(t(&k4, FgAbGroup::cyclic(2)), |d, c| vec![((d & 1) * ((c >> 1) & 1)) as i64])),
        ("Z/2xZ/2, A=(Z/2)^2, k=0", zero(&t(&k4, FgAbGroup::from_invariants(&[2, 2], 0)))),
    ];
    out.drain(..)
        .map(|(n, kappa)| GridModel { name: n.to_string(), kappa })
        .collect()
}

/// Coefficient lattices of rank at most 2 for `Δ`.
pub fn grid_lattices(g: &FiniteGroup) -> Vec<GridLattice> {
    let l = |name: &str, m: GModule| GridLattice { name: name.into(), m };
    let lat = |gens: &[(usize, IntMatrix)], r: usize| GModule::lattice(g, r, gens).expect("grid lattice");
    match (g.order(), g == &FiniteGroup::klein4()) {
        (2, _) => vec![
            l("trivial", GModule::trivial_z(g)),
            l("sign", lat(&[(1, m1(-1))], 1)),
            l("regular", GModule::group_ring(g)),
            l("trivial+sign", lat(&[(1, m2([1, 0, 0, -1]))], 2)),
        ],
        (3, _) => vec![
            l("trivial", GModule::trivial_z(g)),
            l("augmentation", GModule::augmentation_ideal(g)),
            l("trivial^2", GModule::trivial(g, FgAbGroup::free(2))),
        ],
        (4, true) => vec![
            l("trivial", GModule::trivial_z(g)),
            l("sign", lat(&[(1, m1(-1)), (2, m1(1))], 1)),
            l("swap", lat(&[(1, m2([0, 1, 1, 0])), (2, IntMatrix::identity(2))], 2)),
            l("sign+sign", lat(&[(1, m2([-1, 0, 0, 1])), (2, m2([1, 0, 0, -1]))], 2)),
        ],
        _ => vec![l("trivial", GModule::trivial_z(g))],
    }
}

pub fn grid(size: GridSize) -> Grid {
    let models = grid_models();
    let lattices: Vec<Vec<GridLattice>> = models.iter().map(|m| grid_lattices(m.kappa.module().group())).collect();
    let mut points = Vec::new();
    for (i, ls) in lattices.iter().enumerate() {
        for j in 0..ls.len() {
            match size {
                GridSize::Small => points.push(GridPoint {
                    model: i,
                    lattice: j,
                    r: RINGS[(i + j) % RINGS.len()],
                }),
                GridSize::Full => points.extend(RINGS.iter().map(|&r| GridPoint { model: i, lattice: j, r })),
            }
        }
    }
    Grid {
        models,
        lattices,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmodel::FiniteGroupModel;

    #[test]
    fn grid_is_large_enough() {
        let g = grid(GridSize::Small);
        assert!(g.points.len() >= 24);
        assert!(g.models.iter().filter(|m| !m.kappa.is_zero()).count() >= 2);
        let orders: Vec<usize> = g
            .models
            .iter()
            .map(|m| FiniteGroupModel::build(&m.kappa).unwrap().order())
            .collect();
        assert_eq!(orders, vec![2, 4, 4, 8, 8, 8, 8, 8, 8, 3, 6, 12, 4, 8, 16]);
        let rs: std::collections::HashSet<u64> = g.points.iter().map(|p| p.r).collect();
        assert_eq!(rs.len(), 4);
        assert_eq!(grid(GridSize::Full).points.len(), 4 * g.points.len());
    }

    #[test]
    fn quaternion_and_dihedral_models_are_nonabelian() {
        let g = grid_models();
        for name in ["Z/2, A=Z/4(-1), k=2", "Z/2xZ/2, A=Z/2, k=x1y2", "Z/3, A=(Z/2)^2 rot, k=0"] {
            let m = g.iter().find(|m| m.name == name).unwrap();
            assert!(!FiniteGroupModel::build(&m.kappa).unwrap().group().is_abelian());
        }
    }
}
