//! The verification suite: each criterion is an exact identity checked on
//! finite models, random presets or random matrices.

pub mod grid;
pub mod random;

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defring::{
    closed_form_invariants, components, model_invariants, pro_p, LocalFieldPreset,
};
use crate::ee::{build_e, coinvariants_with_q, QData};
use crate::extmodel::{
    conjugate, enumerate_z1, h1_cardinality, hom_module, induced_module, psi_from_cocycle, pseudochar_of_rep,
    rep_from_cocycle, shapiro_section, CocycleTable, ExtModelError, FiniteGroupModel, UnitGroupRing, Z1Space,
};
use crate::gmod::{homology, tate, FiniteGroup, GModule};
use crate::intlin::{hom_into_finite, snf_with, FgAbGroup, IntMatrix, SnfRequest};

pub use grid::{grid, Grid, GridPoint, GridSize};
use random::{random_lattice, random_matrix, random_module, random_unimodular};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    fn from_results(id: u8, name: &str, results: Vec<(String, Result<(), String>)>) -> Self {
        let failures: Vec<String> = results
            .iter()
            .filter_map(|(label, r)| r.as_ref().err().map(|e| format!("{label}: {e}")))
            .collect();
        CriterionOutcome {
            id,
            name: name.into(),
            cases: results.len(),
            passed: failures.is_empty() && !results.is_empty(),
            failures,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub grid: GridSize,
    pub budget: u64,
    pub seed: u64,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn budget_msg(stage: &str, e: ExtModelError) -> String {
    match e {
        ExtModelError::BudgetExceeded { required, budget } => {
            format!("budget exceeded at stage {stage}: needs {required}, budget {budget}")
        }
        other => format!("{stage}: {other}"),
    }
}

/// Everything one grid point needs.
pub struct PointData {
    pub model: FiniteGroupModel,
    pub m: GModule,
    pub q: QData,
    pub v: FgAbGroup,
    /// `Hom(M, V)` over `Δ`, and its inflation to `Γ₁`.
    pub t: GModule,
    pub t_inflated: GModule,
}

pub fn point_label(g: &Grid, p: &GridPoint) -> String {
    format!("[{}; M={}; R=Z/{}]", g.models[p.model].name, g.lattices[p.model][p.lattice].name, p.r)
}

pub fn point_data(g: &Grid, p: &GridPoint) -> Result<PointData, String> {
    let kappa = &g.models[p.model].kappa;
    let model = FiniteGroupModel::build(kappa).map_err(err)?;
    let m = g.lattices[p.model][p.lattice].m.clone();
    let q = coinvariants_with_q(&build_e(kappa).map_err(err)?, &m).map_err(err)?;
    let v = UnitGroupRing::new(p.r).map_err(err)?.group().clone();
    let t = hom_module(&m, &v).map_err(err)?;
    let t_inflated = t.inflate(model.group(), model.projection()).map_err(err)?;
    Ok(PointData {
        model,
        m,
        q,
        v,
        t,
        t_inflated,
    })
}

fn run_points(g: &Grid, f: impl Fn(&Grid, &GridPoint) -> Result<(), String> + Sync) -> Vec<(String, Result<(), String>)> {
    g.points.par_iter().map(|p| (point_label(g, p), f(g, p))).collect()
}

/// `|Z¹(Γ₁, Hom(M, R^×))|` by brute force against `|Hom((ℰ⊗M)_Δ, R^×)|`.
pub fn check_representability(g: &Grid, p: &GridPoint, budget: u64) -> Result<(), String> {
    let d = point_data(g, p)?;
    let z1 = enumerate_z1(&d.t_inflated, &d.model.generators(), budget).map_err(|e| budget_msg("enumerate_z1", e))?;
    let homs = hom_into_finite(&d.q.coinv, &d.v).map_err(err)?;
    let lhs = BigInt::from(z1.len());
    if &lhs != homs.cardinality() {
        return Err(format!("|Z1| = {lhs}, |Hom| = {}", homs.cardinality()));
    }
    Ok(())
}

pub fn criterion_1(g: &Grid, budget: u64) -> CriterionOutcome {
    CriterionOutcome::from_results(1, "representability", run_points(g, |g, p| check_representability(g, p, budget)))
}

/// `ker q` against bar-resolution `H₁(Γ₁, M)`.
pub fn check_h1(g: &Grid, p: &GridPoint) -> Result<(), String> {
    let d = point_data(g, p)?;
    let infl = d.m.inflate(d.model.group(), d.model.projection()).map_err(err)?;
    let bar = homology(&infl, 1).map_err(err)?;
    let h1 = &d.q.h1.group;
    if bar.free_rank() != h1.free_rank() || bar.invariant_factors() != h1.invariant_factors() {
        return Err(format!(
            "ker q has ({}, {:?}), bar H1 has ({}, {:?})",
            h1.free_rank(),
            h1.invariant_factors(),
            bar.free_rank(),
            bar.invariant_factors()
        ));
    }
    Ok(())
}

pub fn criterion_2(g: &Grid) -> CriterionOutcome {
    let mut seen = HashSet::new();
    let points: Vec<&GridPoint> = g.points.iter().filter(|p| seen.insert((p.model, p.lattice))).collect();
    let results = points.par_iter().map(|p| (point_label(g, p), check_h1(g, p))).collect();
    CriterionOutcome::from_results(2, "h1 identification", results)
}

pub const SHAPIRO_V: [&[u64]; 4] = [&[2], &[4], &[2, 2], &[8]];

/// `Φ_φ` is a cocycle restricting to `φ`, and `φ ↦ [Φ_φ]` is a bijection
/// onto `H¹(Γ₁, Ind V)`.
pub fn check_shapiro(model: &FiniteGroupModel, v: &FgAbGroup) -> Result<(), String> {
    let a = model.a_module().underlying();
    let ind = induced_module(model, v).map_err(err)?;
    let z1 = Z1Space::new(&ind, &model.generators()).map_err(err)?;
    let mut homs = hom_into_finite(a, v).map_err(err)?;
    let count = homs.cardinality().clone();
    let k = v.ambient_rank();
    let e = model.delta().identity();
    for phi in homs.homs() {
        let sec = shapiro_section(model, v, phi.matrix()).map_err(err)?;
        if !sec.is_cocycle(&ind) {
            return Err("Phi_phi is not a cocycle".into());
        }
        for idx in 0..model.a_order() {
            let g = model.from_a(idx);
            let at_one = &sec.values[g][e * k..(e + 1) * k];
            if !v.elements_equal(at_one, &phi.apply(model.a_value(g))) {
                return Err(format!("Phi_phi(k)(1) != phi(k) at A element {idx}"));
            }
        }
        let nonzero = !v.columns_vanish(phi.matrix());
        if nonzero && z1.is_coboundary(&sec) {
            return Err("a nonzero phi gives a coboundary".into());
        }
    }
    let h1 = h1_cardinality(&z1).ok_or("H1 is infinite")?;
    if h1 != count {
        return Err(format!("|H1(Gamma1, Ind V)| = {h1}, |Hom(Gamma2, V)| = {count}"));
    }
    Ok(())
}

pub fn criterion_3(g: &Grid) -> CriterionOutcome {
    let cases: Vec<(usize, usize)> = (0..g.models.len())
        .flat_map(|i| (0..SHAPIRO_V.len()).map(move |j| (i, j)))
        .collect();
    let results = cases
        .par_iter()
        .filter_map(|&(i, j)| {
            let model = FiniteGroupModel::build(&g.models[i].kappa).ok()?;
            if model.order() > 16 {
                return None;
            }
            let v = FgAbGroup::from_invariants(SHAPIRO_V[j], 0);
            Some((format!("[{}; V={:?}]", g.models[i].name, SHAPIRO_V[j]), check_shapiro(&model, &v)))
        })
        .collect();
    CriterionOutcome::from_results(3, "shapiro section", results)
}

/// Coboundaries map into `Hom(I_Δ M, V)` (they kill `ker q`) and injectively.
pub fn check_coboundaries(g: &Grid, p: &GridPoint) -> Result<(), String> {
    let d = point_data(g, p)?;
    let u = d.t.underlying();
    let mut images: HashMap<IntMatrix, Vec<Vec<BigInt>>> = HashMap::new();
    for x in u.elements().map_err(err)? {
        let b = CocycleTable::coboundary(&d.t_inflated, &u.lift(&x));
        let psi = psi_from_cocycle(&d.model, &d.q, &d.v, &b).map_err(err)?;
        if !d.v.columns_vanish(&psi.matrix().mul(&d.q.h1.inclusion)) {
            return Err("a coboundary does not vanish on ker q".into());
        }
        let key = d.v.canonical_columns(psi.matrix());
        let bkey = b.key(&d.t_inflated);
        match images.get(&key) {
            Some(old) if *old != bkey => return Err("two coboundaries share an image".into()),
            _ => {
                images.insert(key, bkey);
            }
        }
    }
    Ok(())
}

pub fn criterion_4(g: &Grid) -> CriterionOutcome {
    CriterionOutcome::from_results(4, "coboundary injection", run_points(g, check_coboundaries))
}

fn unit_characters(p: u64, a: u32, n: usize) -> Vec<u64> {
    let pa = p.pow(a);
    if a == 0 {
        return vec![1];
    }
    (1..pa)
        .filter(|&u| u % p != 0 && (0..n).fold(1u64, |acc, _| acc * u % pa) == 1 % pa)
        .collect()
}

/// The seeded preset family: `p ∈ {2,3}`, `d ∈ {1,2}`, `Δ ∈ {1, Z/2, Z/3}`,
/// `a ∈ {0,1,2}`, random `χ` and random `M` of rank at most 3.
pub fn random_presets(seed: u64) -> Vec<(String, LocalFieldPreset)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for p in [2u64, 3] {
        for d in [1usize, 2] {
            for n in [1usize, 2, 3] {
                for a in [0u32, 1, 2] {
                    let g = FiniteGroup::cyclic(n);
                    let u = *unit_characters(p, a, n).choose(&mut rng).unwrap();
                    let pa = p.pow(a);
                    let chi: Vec<i64> = (0..n).map(|i| (0..i).fold(1, |acc, _| acc * u % pa.max(2)) as i64).collect();
                    let m = random_lattice(&mut rng, &g, 3);
                    let label = format!("[p={p}; d={d}; |D|={n}; a={a}; chi(s)={u}; rank M={}]", m.rank());
                    out.push((label, LocalFieldPreset::new(p, d, g, a, chi, m).expect("valid preset")));
                }
            }
        }
    }
    out
}

pub fn check_rank_formulas(preset: &LocalFieldPreset) -> Result<(), String> {
    let th = closed_form_invariants(preset);
    let mo = model_invariants(preset).map_err(err)?;
    let mu = pro_p(&th.mu_delta, preset.p).map_err(err)?.torsion;
    if mo.invariants.free_rank != th.r {
        return Err(format!("model rank {} != theorem r {}", mo.invariants.free_rank, th.r));
    }
    if mo.invariants.torsion != mu {
        return Err(format!("model torsion {:?} != theorem {:?}", mo.invariants.torsion, mu));
    }
    if mo.coinvariant_rank != th.r {
        return Err(format!("coinvariant rank {} != invariant rank {}", mo.coinvariant_rank, th.r));
    }
    let expected = (preset.d + 1) * th.rank_m;
    if preset.delta.order() > 1 && mo.e_ranks.len() != 2 {
        return Err("no nonzero extension class was produced".into());
    }
    if let Some(bad) = mo.e_ranks.iter().find(|&&k| k != expected) {
        return Err(format!("rank pro_p((E⊗M)_Δ) = {bad}, expected {expected}"));
    }
    Ok(())
}

pub fn criterion_5(seed: u64) -> CriterionOutcome {
    let presets = random_presets(seed);
    let results = presets.par_iter().map(|(l, p)| (l.clone(), check_rank_formulas(p))).collect();
    CriterionOutcome::from_results(5, "rank formulas", results)
}

pub fn tate_groups() -> Vec<FiniteGroup> {
    let mut v: Vec<FiniteGroup> = (2..=6).map(FiniteGroup::cyclic).collect();
    v.push(FiniteGroup::klein4());
    v.push(FiniteGroup::s3());
    v
}

pub fn check_tate_finite(n: &GModule) -> Result<(), String> {
    for i in -2..=2 {
        let h = tate(n, i).map_err(err)?;
        if !h.is_finite() {
            return Err(format!("Tate group in degree {i} has free rank {}", h.free_rank()));
        }
    }
    Ok(())
}

pub fn criterion_6(seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a7e);
    let groups = tate_groups();
    let modules: Vec<(String, GModule)> = (0..20)
        .map(|k| {
            let g = &groups[k % groups.len()];
            let m = random_module(&mut rng, g, 3);
            (format!("[#{k}; |D|={}; rank {}]", g.order(), m.rank()), m)
        })
        .collect();
    let results = modules.par_iter().map(|(l, m)| (l.clone(), check_tate_finite(m))).collect();
    CriterionOutcome::from_results(6, "tate finiteness", results)
}

pub const COMPONENT_MU: [&[u64]; 4] = [&[], &[2], &[3], &[2, 4]];

pub fn check_components(mu: &[u64]) -> Result<(), String> {
    let t = components(mu).map_err(err)?;
    let n: u64 = mu.iter().product();
    if t.count() as u64 != n {
        return Err(format!("{} components, expected {n}", t.count()));
    }
    if !t.is_faithful() || !t.is_transitive() || !t.is_regular() {
        return Err("action is not regular".into());
    }
    Ok(())
}

pub fn criterion_7() -> CriterionOutcome {
    let results = COMPONENT_MU
        .iter()
        .map(|mu| (format!("[mu={mu:?}]"), check_components(mu)))
        .collect();
    CriterionOutcome::from_results(7, "components torsor", results)
}

/// `(config, expected headline lines, expected tagged values)`.
pub fn headline_cases() -> Vec<(serde_json::Value, Vec<&'static str>, Vec<(&'static str, serde_json::Value)>)> {
    use serde_json::json;
    vec![
        (
            json!({"mode": "local", "p": 2, "d": 1, "delta": "trivial", "a": 1, "chi_cyc": [1],
                   "m": {"rank": 1, "action": [[[1]]]}}),
            vec![
                "R^□ ≅ O[Z/2][[x1,x2]]; components: 2",
                "R^ps ≅ O[Z/2][[x1,x2]]; s=0",
                "A^gen ≅ O[Z/2][[x1,x2]]",
            ],
            vec![("r", json!(2)), ("s", json!(0)), ("m", json!(2)), ("components", json!(2))],
        ),
        (
            json!({"mode": "local", "p": 3, "d": 1, "delta": "trivial", "a": 0, "chi_cyc": [1],
                   "m": {"rank": 1, "action": [[[1]]]}}),
            vec!["R^□ ≅ O[[x1,x2]]; components: 1", "R^ps ≅ O[[x1,x2]]; s=0"],
            vec![("r", json!(2)), ("s", json!(0)), ("components", json!(1))],
        ),
        (
            json!({"mode": "local", "p": 2, "d": 1, "delta": "cyclic 2", "a": 1, "chi_cyc": [1, -1],
                   "m": {"rank": 1, "action": [[[1]], [[-1]]]}}),
            vec!["A^gen ≅ O[Z/2][[x1]][t1^±1]", "r=1, s=1, m=2, μ^Δ=Z/2"],
            vec![
                ("r", json!(1)),
                ("s", json!(1)),
                ("m", json!(2)),
                ("mu_delta", json!({"free_rank": 0, "torsion": [2]})),
            ],
        ),
    ]
}

pub fn check_headline(
    config: &serde_json::Value,
    lines: &[&str],
    values: &[(&str, serde_json::Value)],
) -> Result<(), String> {
    let cfg = super::parse_config(&config.to_string()).map_err(err)?;
    let out = super::run(&cfg, &super::RunOptions::default());
    if out.exit_code != 0 {
        return Err(format!("exit code {}", out.exit_code));
    }
    for l in lines {
        if !out.report.headline.iter().any(|h| h == l) {
            return Err(format!("missing headline {l:?}; got {:?}", out.report.headline));
        }
    }
    for (k, v) in values {
        let found = out.report.values.iter().find(|t| t.name == *k && t.provenance == super::Provenance::Theorem);
        match found {
            Some(t) if t.value == *v => {}
            Some(t) => return Err(format!("{k} = {}, expected {v}", t.value)),
            None => return Err(format!("{k} missing from the report")),
        }
    }
    Ok(())
}

pub fn criterion_8() -> CriterionOutcome {
    let results = headline_cases()
        .iter()
        .map(|(c, l, v)| (c.to_string(), check_headline(c, l, v)))
        .collect();
    CriterionOutcome::from_results(8, "end-to-end headline", results)
}

/// `U A V = D` with unimodular `U, V`, a divisibility chain on the diagonal,
/// and the same invariants after random unimodular changes of basis.
pub fn check_snf(a: &IntMatrix, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let s = snf_with(a, SnfRequest::ALL);
    let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
    if u.mul(a).mul(v) != s.d {
        return Err("U A V != D".into());
    }
    if !u.is_unimodular() || !v.is_unimodular() {
        return Err("transforms are not unimodular".into());
    }
    if u.mul(s.u_inv.as_ref().unwrap()) != IntMatrix::identity(a.rows()) {
        return Err("U^-1 is wrong".into());
    }
    if v.mul(s.v_inv.as_ref().unwrap()) != IntMatrix::identity(a.cols()) {
        return Err("V^-1 is wrong".into());
    }
    if !s.d.is_diagonal() {
        return Err("D is not diagonal".into());
    }
    let diag = s.nonzero_diagonal();
    if diag.iter().any(|x| x <= &BigInt::from(0)) {
        return Err("D has a nonpositive pivot".into());
    }
    if diag.windows(2).any(|w| &w[1] % &w[0] != BigInt::from(0)) {
        return Err(format!("diagonal {diag:?} is not a divisibility chain"));
    }
    let g = FgAbGroup::from_relations(a.rows(), a.clone()).map_err(err)?;
    let (p, _) = random_unimodular(rng, a.rows(), 5);
    let (q, _) = random_unimodular(rng, a.cols(), 5);
    let h = FgAbGroup::from_relations(a.rows(), p.mul(a).mul(&q)).map_err(err)?;
    let extra = if a.cols() > 0 {
        a.mul(&random_matrix(rng, a.cols(), 1, 3))
    } else {
        IntMatrix::zeros(a.rows(), 1)
    };
    let k = FgAbGroup::from_relations(a.rows(), a.hstack(&extra)).map_err(err)?;
    for other in [&h, &k] {
        if other.free_rank() != g.free_rank() || other.invariant_factors() != g.invariant_factors() {
            return Err("presentation changed the group".into());
        }
    }
    Ok(())
}

pub const CONJUGATION_SAMPLE: usize = 32;

/// Conjugate representations have equal characters on `ker q`.
pub fn check_conjugation(g: &Grid, p: &GridPoint, seed: u64) -> Result<(), String> {
    let d = point_data(g, p)?;
    let z1 = Z1Space::new(&d.t_inflated, &d.model.generators()).map_err(err)?;
    let mut all = z1.all().map_err(err)?;
    if all.len() > CONJUGATION_SAMPLE {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p.model as u64) << 16 ^ (p.lattice as u64) << 8 ^ p.r);
        all.shuffle(&mut rng);
        all.truncate(CONJUGATION_SAMPLE);
    }
    let u = d.t.underlying();
    let xs: Vec<Vec<BigInt>> = u.elements().map_err(err)?.map(|x| u.lift(&x)).collect();
    for phi in &all {
        let rho = rep_from_cocycle(&d.model, &d.t, phi).map_err(err)?;
        let chi = pseudochar_of_rep(&d.model, &d.q, &d.v, &rho).map_err(err)?;
        for x in &xs {
            let conj = pseudochar_of_rep(&d.model, &d.q, &d.v, &conjugate(&d.t, &rho, x)).map_err(err)?;
            if conj != chi {
                return Err("conjugation changed the character".into());
            }
        }
    }
    Ok(())
}

pub fn criterion_9(g: &Grid, seed: u64) -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results: Vec<(String, Result<(), String>)> = (0..200)
        .map(|k| {
            let rows = rng.gen_range(0..=5);
            let cols = rng.gen_range(0..=5);
            let a = random_matrix(&mut rng, rows, cols, 9);
            (format!("[snf #{k}; {rows}x{cols}]"), check_snf(&a, &mut rng))
        })
        .collect();
    results.extend(run_points(g, |g, p| check_conjugation(g, p, seed)));
    CriterionOutcome::from_results(9, "substrate properties", results)
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionOutcome> {
    let g = grid(opts.grid);
    vec![
        criterion_1(&g, opts.budget),
        criterion_2(&g),
        criterion_3(&g),
        criterion_4(&g),
        criterion_5(opts.seed),
        criterion_6(opts.seed),
        criterion_7(),
        criterion_8(),
        criterion_9(&g, opts.seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_characters_have_the_right_order() {
        assert_eq!(unit_characters(3, 2, 3), vec![1, 4, 7]);
        assert_eq!(unit_characters(2, 2, 2), vec![1, 3]);
        assert_eq!(unit_characters(3, 1, 3), vec![1]);
    }

    #[test]
    fn presets_cover_the_family() {
        assert_eq!(random_presets(11).len(), 36);
    }

    #[test]
    fn components_criterion() {
        assert!(criterion_7().passed);
    }
}
