//! Campaign configuration: the algorithm selector, all tunables, parsing of
//! the plain key-value config file, and flag merging (flags win).

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Csa,
    RCsa,
    BCsa,
    PoCsa,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Csa => "csa",
            Algorithm::RCsa => "r-csa",
            Algorithm::BCsa => "b-csa",
            Algorithm::PoCsa => "po-csa",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csa" => Ok(Algorithm::Csa),
            "r-csa" => Ok(Algorithm::RCsa),
            "b-csa" => Ok(Algorithm::BCsa),
            "po-csa" => Ok(Algorithm::PoCsa),
            other => Err(format!(
                "unknown algorithm `{other}` (expected csa, r-csa, b-csa, or po-csa)"
            )),
        }
    }
}

/// Everything one campaign needs, recorded verbatim in its manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub algorithm: Algorithm,
    /// Benchmark function id, 1..=14.
    pub function: u8,
    pub dim: usize,
    /// Number of coupled optimizers; defaults to the dimension.
    pub optimizers: Option<usize>,
    pub budget_per_optimizer: u64,
    pub runs: u32,
    pub seed: u64,
    /// Initial generation temperature. Required for `csa`; pins the orbit
    /// reference for `po-csa`; unused by `r-csa`/`b-csa`.
    pub t_gen_0: Option<f64>,
    pub t_ac_0: f64,
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub mu: f64,
    pub delta: f64,
    pub trace: bool,
    /// Also persist every optimizer's generation temperature per iteration
    /// (large output).
    pub trace_members: bool,
    pub out_dir: PathBuf,
}

impl CampaignConfig {
    pub fn m(&self) -> usize {
        self.optimizers.unwrap_or(self.dim)
    }

    /// All violations, one line each; empty means valid.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(1..=14).contains(&self.function) {
            v.push(format!("function must be 1..=14, got {}", self.function));
        }
        if self.dim == 0 {
            v.push("dim must be positive".into());
        }
        if self.function >= 9 && self.dim < 2 {
            v.push(format!(
                "rotated function f{} needs dim >= 2, got {}",
                self.function, self.dim
            ));
        }
        if self.m() < 2 {
            v.push(format!("optimizers must be at least 2, got {}", self.m()));
        }
        if self.budget_per_optimizer == 0 {
            v.push("budget_per_optimizer must be at least 1".into());
        }
        if self.runs == 0 {
            v.push("runs must be at least 1".into());
        }
        if let Some(t) = self.t_gen_0 {
            if !(t > 0.0) {
                v.push(format!("t_gen_0 must be positive, got {t}"));
            }
        }
        if self.algorithm == Algorithm::Csa && self.t_gen_0.is_none() {
            v.push("algorithm csa requires t_gen_0".into());
        }
        if !(self.t_ac_0 > 0.0) {
            v.push(format!("t_ac_0 must be positive, got {}", self.t_ac_0));
        }
        if !(self.alpha > 0.0 && self.alpha <= 0.1) {
            v.push(format!("alpha must lie in (0, 0.1], got {}", self.alpha));
        }
        if !(self.beta > 1.0) {
            v.push(format!("beta must exceed 1, got {}", self.beta));
        }
        if !(self.phi > 0.0 && self.phi <= 0.1) {
            v.push(format!("phi must lie in (0, 0.1], got {}", self.phi));
        }
        if !(self.mu > 0.0 && self.mu <= 0.1) {
            v.push(format!("mu must lie in (0, 0.1], got {}", self.mu));
        }
        if !(self.delta > 0.0 && self.delta <= 0.05) {
            v.push(format!("delta must lie in (0, 0.05], got {}", self.delta));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::InvalidConfig(v))
        }
    }

    /// Canonical one-line `key=value` rendering used by the `# config:`
    /// header every emitted file carries.
    pub fn header_line(&self) -> String {
        let t_gen_0 = match self.t_gen_0 {
            Some(t) => format!("{t}"),
            None => "-".into(),
        };
        format!(
            "algorithm={} function=f{} dim={} optimizers={} budget_per_optimizer={} runs={} \
             seed={} t_gen_0={} t_ac_0={} alpha={} beta={} phi={} mu={} delta={} \
             boundary_policy=clamp",
            self.algorithm,
            self.function,
            self.dim,
            self.m(),
            self.budget_per_optimizer,
            self.runs,
            self.seed,
            t_gen_0,
            self.t_ac_0,
            self.alpha,
            self.beta,
            self.phi,
            self.mu,
            self.delta,
        )
    }
}

/// Optional values collected from flags; `None` leaves the file value (or
/// the default) in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub algorithm: Option<Algorithm>,
    pub function: Option<u8>,
    pub dim: Option<usize>,
    pub optimizers: Option<usize>,
    pub budget_per_optimizer: Option<u64>,
    pub runs: Option<u32>,
    pub seed: Option<u64>,
    pub t_gen_0: Option<f64>,
    pub t_ac_0: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub phi: Option<f64>,
    pub mu: Option<f64>,
    pub delta: Option<f64>,
    pub trace: bool,
    pub trace_members: bool,
    pub out_dir: Option<PathBuf>,
}

fn parse_key<T: std::str::FromStr>(key: &str, value: &str, errors: &mut Vec<String>) -> Option<T>
where
    T::Err: std::fmt::Display,
{
    match value.parse::<T>() {
        Ok(v) => Some(v),
        Err(e) => {
            errors.push(format!("bad value for {key}: `{value}` ({e})"));
            None
        }
    }
}

/// Builds a campaign config from an optional key-value file plus overrides.
///
/// File syntax: one `key = value` per line, `#` comments. Keys mirror the
/// config field names exactly. Flags win over file values.
pub fn build_config(file_text: Option<&str>, overrides: &Overrides) -> Result<CampaignConfig> {
    let mut errors: Vec<String> = Vec::new();
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    if let Some(text) = file_text {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_once('=') {
                Some((k, v)) => {
                    kv.insert(k.trim().to_string(), v.trim().to_string());
                }
                None => errors.push(format!(
                    "config line {} is not `key = value`: `{line}`",
                    lineno + 1
                )),
            }
        }
    }

    let known = [
        "algorithm",
        "function",
        "dim",
        "optimizers",
        "budget_per_optimizer",
        "runs",
        "seed",
        "t_gen_0",
        "t_ac_0",
        "alpha",
        "beta",
        "phi",
        "mu",
        "delta",
        "trace",
        "trace_members",
        "out_dir",
    ];
    for key in kv.keys() {
        if !known.contains(&key.as_str()) {
            errors.push(format!("unknown config key `{key}`"));
        }
    }

    macro_rules! field {
        ($key:literal, $ty:ty) => {
            kv.get($key)
                .and_then(|raw| parse_key::<$ty>($key, raw, &mut errors))
        };
    }

    let algorithm = overrides.algorithm.or_else(|| field!("algorithm", Algorithm));
    let function = overrides.function.or_else(|| field!("function", u8));
    let dim = overrides.dim.or_else(|| field!("dim", usize));
    let optimizers = overrides.optimizers.or_else(|| field!("optimizers", usize));
    let budget = overrides
        .budget_per_optimizer
        .or_else(|| field!("budget_per_optimizer", u64));
    let runs = overrides.runs.or_else(|| field!("runs", u32));
    let seed = overrides.seed.or_else(|| field!("seed", u64));
    let t_gen_0 = overrides.t_gen_0.or_else(|| field!("t_gen_0", f64));
    let t_ac_0 = overrides.t_ac_0.or_else(|| field!("t_ac_0", f64));
    let alpha = overrides.alpha.or_else(|| field!("alpha", f64));
    let beta = overrides.beta.or_else(|| field!("beta", f64));
    let phi = overrides.phi.or_else(|| field!("phi", f64));
    let mu = overrides.mu.or_else(|| field!("mu", f64));
    let delta = overrides.delta.or_else(|| field!("delta", f64));
    let trace = overrides.trace || field!("trace", bool).unwrap_or(false);
    let trace_members = overrides.trace_members || field!("trace_members", bool).unwrap_or(false);
    let out_dir = overrides
        .out_dir
        .clone()
        .or_else(|| kv.get("out_dir").map(PathBuf::from));

    for (name, missing) in [
        ("algorithm", algorithm.is_none()),
        ("function", function.is_none()),
        ("dim", dim.is_none()),
        ("budget_per_optimizer", budget.is_none()),
        ("seed", seed.is_none()),
    ] {
        if missing {
            errors.push(format!("missing required key `{name}`"));
        }
    }
    if !errors.is_empty() {
        return Err(HarnessError::InvalidConfig(errors));
    }

    let config = CampaignConfig {
        algorithm: algorithm.unwrap(),
        function: function.unwrap(),
        dim: dim.unwrap(),
        optimizers,
        budget_per_optimizer: budget.unwrap(),
        runs: runs.unwrap_or(25),
        seed: seed.unwrap(),
        t_gen_0,
        t_ac_0: t_ac_0.unwrap_or(1.0),
        alpha: alpha.unwrap_or(0.05),
        beta: beta.unwrap_or(10.0),
        phi: phi.unwrap_or(0.05),
        mu: mu.unwrap_or(0.05),
        delta: delta.unwrap_or(0.001),
        trace,
        trace_members,
        out_dir: out_dir.unwrap_or_else(|| PathBuf::from("out")),
    };
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_parse_and_flags_win() {
        let text = "\
# comment
algorithm = po-csa
function = 3
dim = 10
budget_per_optimizer = 1000
seed = 42
alpha = 0.03   # trailing comment
";
        let config = build_config(Some(text), &Overrides::default()).unwrap();
        assert_eq!(config.algorithm, Algorithm::PoCsa);
        assert_eq!(config.function, 3);
        assert_eq!(config.runs, 25); // default
        assert_eq!(config.m(), 10); // defaults to dim
        assert_eq!(config.alpha, 0.03);

        let flags = Overrides {
            alpha: Some(0.07),
            runs: Some(5),
            ..Overrides::default()
        };
        let config = build_config(Some(text), &flags).unwrap();
        assert_eq!(config.alpha, 0.07);
        assert_eq!(config.runs, 5);
    }

    #[test]
    fn violations_come_one_per_line() {
        let text = "\
algorithm = csa
function = 44
dim = 0
budget_per_optimizer = 0
seed = 1
";
        let err = build_config(Some(text), &Overrides::default()).unwrap_err();
        let message = err.to_string();
        // function range, dim, budget, and the missing csa t_gen_0.
        assert!(message.lines().count() >= 4, "{message}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = "algorithm = csa\nfunction = 1\ndim = 5\nbudget_per_optimizer = 10\nseed = 1\nt_gen_0 = 1\nbogus = 3\n";
        let err = build_config(Some(text), &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [Algorithm::Csa, Algorithm::RCsa, Algorithm::BCsa, Algorithm::PoCsa] {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        let json = serde_json::to_string(&Algorithm::PoCsa).unwrap();
        assert_eq!(json, "\"po-csa\"");
    }
}
