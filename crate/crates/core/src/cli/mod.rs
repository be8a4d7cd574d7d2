//! Configuration, reports and the run modes behind the `torusdef` binary.

pub mod config;
pub mod verify;

pub use config::{parse_config, parse_delta, AbstractJob, Config, ConfigError, Job};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::defring::{
    closed_form_invariants, components, model_invariants, pro_p, ring_descriptors, LocalFieldPreset, RingDescriptor,
};
use crate::ee::{build_e, coinvariants_with_q, fg_group_string, representing_algebra};
use crate::extmodel::{enumerate_z1, hom_module, ExtModelError, FiniteGroupModel, UnitGroupRing, DEFAULT_BUDGET};
use crate::gmod::homology;
use crate::intlin::{hom_into_finite, FgAbGroup, IntMatrix};
use verify::{run_all, CriterionOutcome, VerifyOptions};

pub const SCHEMA: &str = "torusdef-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Computed from a finite model or presentation.
    Model,
    /// Read off a closed formula.
    Theorem,
    /// Brute-force enumeration.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged {
    pub name: String,
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Status {
    pub exit_code: i32,
    pub stage: Option<String>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub seed: Option<u64>,
    pub mode: String,
    pub input: Value,
    pub headline: Vec<String>,
    pub values: Vec<Tagged>,
    pub checks: Vec<Check>,
    pub criteria: Vec<CriterionOutcome>,
    pub assumptions: Vec<String>,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub budget: u64,
    /// Fail with a config error unless oracle moduli are present.
    pub require_oracle: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: DEFAULT_BUDGET,
            require_oracle: false,
        }
    }
}

pub struct RunOutcome {
    pub report: Report,
    pub exit_code: i32,
}

struct Failure {
    code: i32,
    stage: String,
    message: String,
}

fn fail(code: i32, stage: &str, message: impl Into<String>) -> Failure {
    Failure {
        code,
        stage: stage.into(),
        message: message.into(),
    }
}

fn internal<E: std::fmt::Display>(stage: &'static str) -> impl Fn(E) -> Failure {
    move |e| fail(EXIT_INTERNAL, stage, e.to_string())
}

pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn group_json(g: &FgAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.invariant_factors().iter().map(big_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(big_json).collect()))
            .collect(),
    )
}

impl Report {
    fn new(mode: &str, input: Value, seed: Option<u64>) -> Self {
        Report {
            schema: SCHEMA.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            mode: mode.into(),
            input,
            headline: Vec::new(),
            values: Vec::new(),
            checks: Vec::new(),
            criteria: Vec::new(),
            assumptions: Vec::new(),
            status: Status {
                exit_code: EXIT_OK,
                stage: None,
                message: None,
            },
        }
    }

    fn put(&mut self, name: &str, value: Value, provenance: Provenance) {
        self.values.push(Tagged {
            name: name.into(),
            value,
            provenance,
        });
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn get(&self, name: &str, provenance: Provenance) -> Option<&Value> {
        self.values
            .iter()
            .find(|t| t.name == name && t.provenance == provenance)
            .map(|t| &t.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for h in &self.headline {
            out.push_str(h);
            out.push('\n');
        }
        if !self.values.is_empty() {
            out.push('\n');
        }
        for t in &self.values {
            let prov = serde_json::to_value(t.provenance).unwrap();
            out.push_str(&format!("{} = {} [{}]\n", t.name, t.value, prov.as_str().unwrap()));
        }
        for c in &self.checks {
            out.push_str(&format!("check {}: {} ({})\n", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail));
        }
        for c in &self.criteria {
            for f in &c.failures {
                out.push_str(&format!("  criterion {} failure: {f}\n", c.id));
            }
        }
        for a in &self.assumptions {
            out.push_str(&format!("assumption: {a}\n"));
        }
        match (&self.status.stage, &self.status.message) {
            (Some(s), Some(m)) => out.push_str(&format!("status: exit {} at {s}: {m}\n", self.status.exit_code)),
            _ => out.push_str(&format!("status: exit {}\n", self.status.exit_code)),
        }
        out
    }
}

fn descriptor_json(d: &RingDescriptor) -> Value {
    json!({
        "ring": d.render(),
        "torsion_mu": d.torsion_mu,
        "series_vars": d.series_vars,
        "laurent_vars": d.laurent_vars,
        "relative_dimension": d.relative_dimension(),
        "components": d.component_count(),
        "complete_intersection": d.complete_intersection(),
        "base_note": d.base_note,
    })
}

fn descriptors_into(report: &mut Report, sq: &RingDescriptor, ps: &RingDescriptor, gen: &RingDescriptor, s: usize) {
    report.put("R_square", descriptor_json(sq), Provenance::Theorem);
    report.put("R_ps", descriptor_json(ps), Provenance::Theorem);
    report.put("A_gen", descriptor_json(gen), Provenance::Theorem);
    report.put("components", json!(sq.component_count()), Provenance::Theorem);
    report.put("roots_of_unity", json!(sq.base_note), Provenance::Theorem);
    report.check(
        "dim R^□ = dim R^ps + s",
        sq.relative_dimension() == ps.relative_dimension() + s,
        format!("{} = {} + {s}", sq.relative_dimension(), ps.relative_dimension()),
    );
    report.check(
        "component counts agree",
        sq.component_count() == ps.component_count() && ps.component_count() == gen.component_count(),
        format!("{}", sq.component_count()),
    );
    report.headline.push(format!("R^□ ≅ {}; components: {}", sq.render(), sq.component_count()));
    report.headline.push(format!("R^ps ≅ {}; s={s}", ps.render()));
    report.headline.push(format!("A^gen ≅ {}", gen.render()));
    report
        .assumptions
        .push("the residual representation lifts over O".into());
}

fn run_abstract(job: &AbstractJob, opts: &RunOptions, report: &mut Report) -> Result<i32, Failure> {
    if opts.require_oracle && job.oracle_moduli.is_empty() {
        return Err(fail(EXIT_CONFIG, "oracle", "--oracle needs a non-empty oracle_moduli list"));
    }
    let e = build_e(&job.kappa).map_err(internal("build_E"))?;
    let q = coinvariants_with_q(&e, &job.m).map_err(internal("coinvariants_with_q"))?;
    let alg = representing_algebra(&q).map_err(internal("representing_algebra"))?;
    report.put("coinvariants", group_json(&q.coinv), Provenance::Model);
    report.put("h1", group_json(&q.h1.group), Provenance::Model);
    report.put("q_matrix", matrix_json(q.q.matrix()), Provenance::Model);
    report.put("image_basis", matrix_json(&q.image_basis), Provenance::Model);
    report.put("split", matrix_json(&q.split), Provenance::Model);
    report.put("s", json!(q.s), Provenance::Model);
    let s_th = q.rank_m - q.rank_m_coinv;
    report.put("s", json!(s_th), Provenance::Theorem);
    report.put("representing_algebra", json!(alg.render_base()), Provenance::Model);
    report.put("laurent_split", json!(alg.render_split()), Provenance::Theorem);
    report.headline.push(format!(
        "(E⊗M)_Δ ≅ {}; s={}; Z[(E⊗M)_Δ] = {}",
        fg_group_string(&q.coinv),
        q.s,
        alg.render_base()
    ));
    let mut ok = report.check("s: model = theorem", q.s == s_th, format!("{} vs {s_th}", q.s));
    let nps = pro_p(&q.h1.group, job.p).map_err(internal("pro_p"))?;
    report.put(
        "n_ps",
        json!({"p": nps.p, "free_rank": nps.free_rank, "torsion": nps.torsion}),
        Provenance::Model,
    );
    report.put("r", json!(nps.free_rank), Provenance::Model);
    report.put("m", json!(nps.free_rank + q.s), Provenance::Model);
    let (sq, ps, gen) = ring_descriptors(&nps, q.s);
    descriptors_into(report, &sq, &ps, &gen, q.s);
    ok &= report.checks.iter().all(|c| c.passed);

    if !job.oracle_moduli.is_empty() {
        let model = FiniteGroupModel::build(&job.kappa).map_err(|e| match e {
            ExtModelError::InfiniteA => fail(EXIT_CONFIG, "oracle", "the oracle needs a finite A"),
            other => fail(EXIT_INTERNAL, "oracle", other.to_string()),
        })?;
        let infl = job
            .m
            .inflate(model.group(), model.projection())
            .map_err(internal("oracle"))?;
        let bar = homology(&infl, 1).map_err(internal("oracle: bar homology"))?;
        report.put("h1", group_json(&bar), Provenance::Oracle);
        ok &= report.check(
            "ker q = H1(Γ1, M)",
            bar.free_rank() == q.h1.group.free_rank() && bar.invariant_factors() == q.h1.group.invariant_factors(),
            format!("{} vs {}", fg_group_string(&q.h1.group), fg_group_string(&bar)),
        );
        for &r in &job.oracle_moduli {
            let stage = format!("oracle: enumerate_z1 for R=Z/{r}");
            let v = UnitGroupRing::new(r).map_err(|e| fail(EXIT_CONFIG, &stage, e.to_string()))?;
            let t = hom_module(&job.m, v.group()).map_err(|e| fail(EXIT_INTERNAL, &stage, e.to_string()))?;
            let ti = t
                .inflate(model.group(), model.projection())
                .map_err(|e| fail(EXIT_INTERNAL, &stage, e.to_string()))?;
            let z1 = enumerate_z1(&ti, &model.generators(), opts.budget).map_err(|e| match e {
                ExtModelError::BudgetExceeded { required, budget } => fail(
                    EXIT_VERIFY,
                    &stage,
                    format!("budget exceeded: needs {required}, budget {budget}"),
                ),
                other => fail(EXIT_INTERNAL, &stage, other.to_string()),
            })?;
            let homs = hom_into_finite(&q.coinv, v.group()).map_err(|e| fail(EXIT_INTERNAL, &stage, e.to_string()))?;
            report.put(&format!("z1[Z/{r}]"), json!(z1.len()), Provenance::Oracle);
            report.put(&format!("hom[Z/{r}]"), big_json(homs.cardinality()), Provenance::Model);
            ok &= report.check(
                &format!("|Z1| = |Hom| for R=Z/{r}"),
                &BigInt::from(z1.len()) == homs.cardinality(),
                format!("{} vs {}", z1.len(), homs.cardinality()),
            );
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn run_local(preset: &LocalFieldPreset, report: &mut Report) -> Result<i32, Failure> {
    let th = closed_form_invariants(preset);
    let mo = model_invariants(preset).map_err(internal("model_invariants"))?;
    let mu = pro_p(&th.mu_delta, preset.p).map_err(internal("pro_p"))?;
    report.put("rank_m", json!(th.rank_m), Provenance::Theorem);
    report.put("rank_m_coinv", json!(th.rank_m_coinv), Provenance::Theorem);
    report.put("r", json!(th.r), Provenance::Theorem);
    report.put("s", json!(th.s), Provenance::Theorem);
    report.put("m", json!(th.m), Provenance::Theorem);
    report.put("mu_delta", group_json(&th.mu_delta), Provenance::Theorem);
    report.put("r", json!(mo.invariants.free_rank), Provenance::Model);
    report.put("mu_delta", json!({"free_rank": 0, "torsion": mo.invariants.torsion}), Provenance::Model);
    report.put("coinvariant_rank", json!(mo.coinvariant_rank), Provenance::Model);
    report.put("e_coinvariant_ranks", json!(mo.e_ranks), Provenance::Model);
    report.put("e_coinvariant_rank", json!((preset.d + 1) * th.rank_m), Provenance::Theorem);
    let mut ok = report.check("r: model = theorem", mo.invariants.free_rank == th.r, format!("{} vs {}", mo.invariants.free_rank, th.r));
    ok &= report.check(
        "μ^Δ: model = theorem",
        mo.invariants.torsion == mu.torsion,
        format!("{:?} vs {:?}", mo.invariants.torsion, mu.torsion),
    );
    ok &= report.check(
        "rank coinvariants = rank invariants",
        mo.coinvariant_rank == mo.invariants.free_rank,
        format!("{} vs {}", mo.coinvariant_rank, mo.invariants.free_rank),
    );
    let expected = (preset.d + 1) * th.rank_m;
    ok &= report.check(
        "rank pro_p((E⊗M)_Δ) = (d+1) rank M",
        mo.e_ranks.iter().all(|&k| k == expected),
        format!("{:?} vs {expected}", mo.e_ranks),
    );
    let nps = th.n_ps(preset.p).map_err(internal("pro_p"))?;
    let (sq, ps, gen) = ring_descriptors(&nps, th.s);
    descriptors_into(report, &sq, &ps, &gen, th.s);
    report.headline.push(format!(
        "r={}, s={}, m={}, μ^Δ={}",
        th.r,
        th.s,
        th.m,
        fg_group_string(&th.mu_delta)
    ));
    ok &= report.checks.iter().all(|c| c.passed);
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn run_components(mu: &[u64], report: &mut Report) -> Result<i32, Failure> {
    let t = components(mu).map_err(|e| fail(EXIT_CONFIG, "components", e.to_string()))?;
    report.put("components", json!(t.count()), Provenance::Theorem);
    report.put("character_group", json!(t.mu), Provenance::Theorem);
    report.put("labels", json!(t.labels), Provenance::Model);
    report.put("characters", json!(t.characters), Provenance::Model);
    report.put("action", json!(t.action), Provenance::Model);
    report.put("roots_of_unity", json!(t.roots_note), Provenance::Theorem);
    let torsion = t.mu.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>();
    report.headline.push(format!(
        "components: {}; X(μ) ≅ {}",
        t.count(),
        crate::ee::group_string(0, &torsion)
    ));
    report.headline.push(format!("labels: {}", t.labels.join(" ")));
    for (k, row) in t.action.iter().enumerate() {
        let targets: Vec<&str> = row.iter().map(|&c| t.labels[c].as_str()).collect();
        report.headline.push(format!("χ{:?}: {}", t.characters[k], targets.join(" ")));
    }
    let regular = report.check("action is regular", t.is_regular(), format!("{} components", t.count()));
    Ok(if regular { EXIT_OK } else { EXIT_VERIFY })
}

fn run_verify(opts: &VerifyOptions, report: &mut Report) -> Result<i32, Failure> {
    let outcomes = run_all(opts);
    for c in &outcomes {
        report.headline.push(format!(
            "criterion {} ({}): {} [{} cases]",
            c.id,
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.cases
        ));
        report.put(&format!("criterion_{}_cases", c.id), json!(c.cases), Provenance::Oracle);
    }
    let ok = outcomes.iter().all(|c| c.passed);
    report.criteria = outcomes;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

pub fn run(config: &Config, opts: &RunOptions) -> RunOutcome {
    let seed = match config.job {
        Job::Verify { seed, .. } => Some(seed),
        _ => None,
    };
    let mut report = Report::new(config.mode(), config.raw.clone(), seed);
    let result = match &config.job {
        Job::Abstract(job) => run_abstract(job, opts, &mut report),
        Job::Local(p) => run_local(p, &mut report),
        Job::Components(mu) => run_components(mu, &mut report),
        Job::Verify { grid, budget, seed } => run_verify(
            &VerifyOptions {
                grid: *grid,
                budget: *budget,
                seed: *seed,
            },
            &mut report,
        ),
    };
    let exit_code = match result {
        Ok(code) => {
            if code != EXIT_OK {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                let failed_criteria: Vec<String> =
                    report.criteria.iter().filter(|c| !c.passed).map(|c| format!("criterion {}", c.id)).collect();
                report.status.stage = Some("verification".into());
                report.status.message = Some(if failed.is_empty() {
                    failed_criteria.join(", ")
                } else {
                    failed.join(", ")
                });
            }
            code
        }
        Err(f) => {
            report.status.stage = Some(f.stage);
            report.status.message = Some(f.message);
            f.code
        }
    };
    report.status.exit_code = exit_code;
    RunOutcome { report, exit_code }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8_config() -> Value {
        json!({
            "mode": "abstract",
            "delta": "cyclic 2",
            "a": {"invariants": [4], "free_rank": 0, "action": [[[1]], [[1]]]},
            "kappa": [[[0], [0]], [[0], [1]]],
            "m": {"rank": 1, "action": [[[1]], [[1]]]},
            "p": 2,
            "oracle_moduli": [3, 5, 4, 8]
        })
    }

    #[test]
    fn abstract_headline_and_oracle() {
        let c = parse_config(&z8_config().to_string()).unwrap();
        let out = run(&c, &RunOptions::default());
        assert_eq!(out.exit_code, 0, "{}", out.report.render_text());
        assert_eq!(out.report.headline[0], "(E⊗M)_Δ ≅ Z/8; s=0; Z[(E⊗M)_Δ] = Z[Z/8]");
        assert_eq!(out.report.get("z1[Z/5]", Provenance::Oracle), Some(&json!(4)));
        assert_eq!(out.report.headline[1], "R^□ ≅ O[Z/8]; components: 8");
    }

    #[test]
    fn report_round_trips_and_is_deterministic() {
        let c = parse_config(&z8_config().to_string()).unwrap();
        let a = run(&c, &RunOptions::default()).report;
        let b = run(&c, &RunOptions::default()).report;
        assert_eq!(a.to_json(), b.to_json());
        let back: Report = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn budget_exhaustion_is_exit_three_with_stage() {
        let c = parse_config(&z8_config().to_string()).unwrap();
        let out = run(
            &c,
            &RunOptions {
                budget: 1,
                require_oracle: false,
            },
        );
        assert_eq!(out.exit_code, EXIT_VERIFY);
        assert_eq!(out.report.status.stage.as_deref(), Some("oracle: enumerate_z1 for R=Z/3"));
        assert!(out.report.get("coinvariants", Provenance::Model).is_some());
    }

    #[test]
    fn oracle_flag_needs_moduli() {
        let mut v = z8_config();
        v["oracle_moduli"] = json!([]);
        let c = parse_config(&v.to_string()).unwrap();
        let out = run(
            &c,
            &RunOptions {
                budget: DEFAULT_BUDGET,
                require_oracle: true,
            },
        );
        assert_eq!(out.exit_code, EXIT_CONFIG);
    }

    #[test]
    fn components_mode() {
        let c = parse_config(&json!({"mode": "components", "mu": [2, 4]}).to_string()).unwrap();
        let out = run(&c, &RunOptions::default());
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report.headline[0], "components: 8; X(μ) ≅ Z/2 x Z/4");
        assert_eq!(out.report.get("labels", Provenance::Model).unwrap().as_array().unwrap().len(), 8);
        let bad = parse_config(&json!({"mode": "components", "mu": [6]}).to_string()).unwrap();
        assert_eq!(run(&bad, &RunOptions::default()).exit_code, EXIT_CONFIG);
    }

    #[test]
    fn every_value_is_tagged() {
        let c = parse_config(&z8_config().to_string()).unwrap();
        let v: Value = serde_json::from_str(&run(&c, &RunOptions::default()).report.to_json()).unwrap();
        for t in v["values"].as_array().unwrap() {
            assert!(["model", "theorem", "oracle"].contains(&t["provenance"].as_str().unwrap()));
        }
    }
}
