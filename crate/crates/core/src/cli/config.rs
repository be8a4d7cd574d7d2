//! JSON configuration. Every mathematical input is explicit; there are no
//! defaults for groups, actions or cocycles.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use super::verify::GridSize;
use crate::defring::{is_prime, LocalFieldPreset};
use crate::gmod::{FiniteGroup, GModule, TwoCocycle};
use crate::intlin::{FgAbGroup, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("config error at {path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

fn cerr(path: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    rank: usize,
    action: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawA {
    invariants: Vec<u64>,
    free_rank: usize,
    action: Vec<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAbstract {
    delta: Value,
    a: RawA,
    kappa: Vec<Vec<Vec<i64>>>,
    m: RawModule,
    p: u64,
    oracle_moduli: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLocal {
    p: u64,
    d: usize,
    delta: Value,
    a: u32,
    chi_cyc: Vec<i64>,
    m: RawModule,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    grid: GridSize,
    budget: u64,
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponents {
    mu: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct AbstractJob {
    pub kappa: TwoCocycle,
    pub m: GModule,
    pub p: u64,
    pub oracle_moduli: Vec<u64>,
}

#[derive(Clone, Debug)]
pub enum Job {
    Abstract(AbstractJob),
    Local(LocalFieldPreset),
    Verify { grid: GridSize, budget: u64, seed: u64 },
    Components(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct Config {
    /// The document as given, echoed into the report.
    pub raw: Value,
    pub job: Job,
}

impl Config {
    pub fn mode(&self) -> &'static str {
        match self.job {
            Job::Abstract(_) => "abstract",
            Job::Local(_) => "local",
            Job::Verify { .. } => "verify",
            Job::Components(_) => "components",
        }
    }
}

fn typed<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, ConfigError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        cerr(if path == "." { "$" } else { &path }, e.into_inner().to_string())
    })
}

pub fn parse_delta(v: &Value, path: &str) -> Result<FiniteGroup, ConfigError> {
    match v {
        Value::String(s) => {
            let words: Vec<&str> = s.split_whitespace().collect();
            match words.as_slice() {
                ["trivial"] => Ok(FiniteGroup::trivial()),
                ["klein4"] => Ok(FiniteGroup::klein4()),
                ["s3"] => Ok(FiniteGroup::s3()),
                ["cyclic", n] => match n.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(FiniteGroup::cyclic(n)),
                    _ => Err(cerr(path, format!("bad cyclic order {n:?}"))),
                },
                _ => Err(cerr(path, format!("unknown group family {s:?}"))),
            }
        }
        Value::Object(o) => {
            if o.len() != 1 || !o.contains_key("table") {
                return Err(cerr(path, "a group object must have exactly the key \"table\""));
            }
            let table: Vec<Vec<usize>> = typed(o["table"].clone()).map_err(|e| cerr(&format!("{path}.table"), e.message))?;
            FiniteGroup::from_table(table).map_err(|e| cerr(&format!("{path}.table"), e.to_string()))
        }
        _ => Err(cerr(path, "expected a family name or {\"table\": [...]}")),
    }
}

fn matrices(g: &FiniteGroup, action: &[Vec<Vec<i64>>], n: usize, path: &str) -> Result<Vec<IntMatrix>, ConfigError> {
    if action.len() != g.order() {
        return Err(cerr(
            path,
            format!("expected {} action matrices (one per group element), found {}", g.order(), action.len()),
        ));
    }
    action
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(cerr(&format!("{path}[{k}]"), format!("must be {n}x{n}")));
            }
            Ok(IntMatrix::from_rows(rows))
        })
        .collect()
}

fn parse_lattice(g: &FiniteGroup, raw: &RawModule, path: &str) -> Result<GModule, ConfigError> {
    let act = matrices(g, &raw.action, raw.rank, &format!("{path}.action"))?;
    GModule::new(g.clone(), FgAbGroup::free(raw.rank), act).map_err(|e| cerr(&format!("{path}.action"), e.to_string()))
}

fn parse_abstract(raw: RawAbstract) -> Result<AbstractJob, ConfigError> {
    let g = parse_delta(&raw.delta, "delta")?;
    if raw.a.invariants.iter().any(|&d| d < 2) {
        return Err(cerr("a.invariants", "invariant factors must be at least 2"));
    }
    let a_group = FgAbGroup::from_invariants(&raw.a.invariants, raw.a.free_rank);
    let na = a_group.ambient_rank();
    let a_act = matrices(&g, &raw.a.action, na, "a.action")?;
    let a = GModule::new(g.clone(), a_group, a_act).map_err(|e| cerr("a.action", e.to_string()))?;
    let n = g.order();
    for d in 0..n {
        for c in 0..n {
            let present = raw.kappa.get(d).and_then(|row| row.get(c));
            match present {
                None => return Err(cerr("kappa", format!("missing the pair ({d}, {c})"))),
                Some(v) if v.len() != na => {
                    return Err(cerr(
                        &format!("kappa[{d}][{c}]"),
                        format!("expected {na} coordinates, found {}", v.len()),
                    ))
                }
                _ => {}
            }
        }
        if raw.kappa[d].len() != n {
            return Err(cerr(&format!("kappa[{d}]"), format!("expected {n} entries, found {}", raw.kappa[d].len())));
        }
    }
    if raw.kappa.len() != n {
        return Err(cerr("kappa", format!("expected {n} rows, found {}", raw.kappa.len())));
    }
    let values: Vec<Vec<BigInt>> = raw
        .kappa
        .iter()
        .flatten()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let kappa = TwoCocycle::from_table(a, values).map_err(|e| cerr("kappa", e.to_string()))?;
    kappa
        .validate()
        .map_err(|v| cerr("kappa", format!("not a normalized 2-cocycle: {v}")))?;
    let m = parse_lattice(&g, &raw.m, "m")?;
    if !is_prime(raw.p) {
        return Err(cerr("p", format!("{} is not a prime", raw.p)));
    }
    if let Some(&bad) = raw.oracle_moduli.iter().find(|&&r| r < 2) {
        return Err(cerr("oracle_moduli", format!("modulus {bad} is below 2")));
    }
    Ok(AbstractJob {
        kappa,
        m,
        p: raw.p,
        oracle_moduli: raw.oracle_moduli,
    })
}

fn parse_local(raw: RawLocal) -> Result<LocalFieldPreset, ConfigError> {
    let g = parse_delta(&raw.delta, "delta")?;
    let m = parse_lattice(&g, &raw.m, "m")?;
    LocalFieldPreset::new(raw.p, raw.d, g, raw.a, raw.chi_cyc, m).map_err(|e| cerr("$", e.to_string()))
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| cerr("$", format!("invalid JSON: {e}")))?;
    let mut body = raw
        .as_object()
        .cloned()
        .ok_or_else(|| cerr("$", "expected a JSON object"))?;
    let mode = body
        .remove("mode")
        .ok_or_else(|| cerr("mode", "missing field `mode`"))?;
    let body = Value::Object(body);
    let job = match mode.as_str() {
        Some("abstract") => Job::Abstract(parse_abstract(typed(body)?)?),
        Some("local") => Job::Local(parse_local(typed(body)?)?),
        Some("verify") => {
            let v: RawVerify = typed(body)?;
            Job::Verify {
                grid: v.grid,
                budget: v.budget,
                seed: v.seed,
            }
        }
        Some("components") => Job::Components(typed::<RawComponents>(body)?.mu),
        _ => return Err(cerr("mode", format!("unknown mode {mode}"))),
    };
    Ok(Config { raw, job })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    pub fn minimal_abstract() -> Value {
        json!({
            "mode": "abstract",
            "delta": "cyclic 2",
            "a": {"invariants": [4], "free_rank": 0, "action": [[[1]], [[1]]]},
            "kappa": [[[0], [0]], [[0], [1]]],
            "m": {"rank": 1, "action": [[[1]], [[1]]]},
            "p": 2,
            "oracle_moduli": []
        })
    }

    #[test]
    fn minimal_abstract_parses() {
        let c = parse_config(&minimal_abstract().to_string()).unwrap();
        assert_eq!(c.mode(), "abstract");
    }

    #[test]
    fn missing_pair_is_named() {
        let mut v = minimal_abstract();
        v["kappa"][1] = json!([[0]]);
        let e = parse_config(&v.to_string()).unwrap_err();
        assert_eq!(e.path, "kappa");
        assert!(e.message.contains("(1, 1)"), "{}", e.message);
    }

    #[test]
    fn invalid_kappa_names_the_triple() {
        let mut v = minimal_abstract();
        v["a"]["action"] = json!([[[1]], [[-1]]]);
        v["kappa"] = json!([[[0], [0]], [[0], [1]]]);
        let e = parse_config(&v.to_string()).unwrap_err();
        assert_eq!(e.path, "kappa");
        assert!(e.message.contains("not a normalized 2-cocycle"), "{}", e.message);
    }

    #[test]
    fn schema_errors_locate_the_field() {
        let mut v = minimal_abstract();
        v["m"].as_object_mut().unwrap().remove("rank");
        let e = parse_config(&v.to_string()).unwrap_err();
        assert_eq!(e.path, "m");
        assert!(e.message.contains("rank"));
        let mut v = minimal_abstract();
        v["m"]["action"][1] = json!([[1, 0]]);
        assert_eq!(parse_config(&v.to_string()).unwrap_err().path, "m.action[1]");
        let mut v = minimal_abstract();
        v["extra"] = json!(1);
        assert!(parse_config(&v.to_string()).is_err());
        assert_eq!(parse_config("[1]").unwrap_err().path, "$");
    }

    #[test]
    fn local_and_other_modes_parse() {
        let v = json!({"mode": "local", "p": 2, "d": 1, "delta": "trivial", "a": 1, "chi_cyc": [1],
                       "m": {"rank": 1, "action": [[[1]]]}});
        assert_eq!(parse_config(&v.to_string()).unwrap().mode(), "local");
        let v = json!({"mode": "components", "mu": [2, 4]});
        assert!(matches!(parse_config(&v.to_string()).unwrap().job, Job::Components(ref m) if m == &[2, 4]));
        let v = json!({"mode": "verify", "grid": "small", "budget": 10, "seed": 1});
        assert!(matches!(parse_config(&v.to_string()).unwrap().job, Job::Verify { budget: 10, .. }));
        let v = json!({"mode": "local", "p": 2, "d": 1, "delta": "trivial", "a": 0, "chi_cyc": [3],
                       "m": {"rank": 1, "action": [[[1]]]}});
        assert!(parse_config(&v.to_string()).is_err());
        let t = json!({"table": [[0, 1], [1, 0]]});
        assert_eq!(parse_delta(&t, "delta").unwrap(), FiniteGroup::cyclic(2));
        assert!(parse_delta(&json!("cyclic x"), "delta").is_err());
    }
}
