//! Experiment configuration: the JSON file given to `--config`, merged with
//! command-line flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use spanex_core::{Family, InstanceSpec, Rational, TieBreak};

/// `δ` as given by the user: a constant, or `log2(n)` of each instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaExpr {
    Constant(Rational),
    Log2N,
}

impl DeltaExpr {
    /// For `log2n`, a dyadic rational within `1/n^2` of `log2(n)`.
    pub fn evaluate(&self, n: usize) -> Rational {
        match *self {
            DeltaExpr::Constant(d) => d,
            DeltaExpr::Log2N => {
                let n = n.max(1) as i128;
                Rational::log2_approx(n as u64, Rational::new(1, n * n))
            }
        }
    }
}

impl fmt::Display for DeltaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaExpr::Constant(d) => write!(f, "{d}"),
            DeltaExpr::Log2N => f.write_str("log2n"),
        }
    }
}

impl FromStr for DeltaExpr {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("log2n") {
            return Ok(DeltaExpr::Log2N);
        }
        let d: Rational = s.parse().map_err(|e| format!("{e}; or `log2n`"))?;
        if !d.is_positive() {
            return Err(format!("delta must be positive, got {d}"));
        }
        Ok(DeltaExpr::Constant(d))
    }
}

impl Serialize for DeltaExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DeltaExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Algorithm {
    Blocking {
        delta: DeltaExpr,
        /// Defaults to the tie-break the instance generator recommends.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tie_break: Option<TieBreak>,
    },
    NearestNeighbor,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Blocking { .. } => "blocking",
            Algorithm::NearestNeighbor => "nearest_neighbor",
        }
    }
}

/// Which verifications decide the exit code. Every verification is computed
/// and reported regardless.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Checks {
    /// Total cost within `2(δ+2) w(B)` and per-edge charges within their
    /// budgets.
    pub observation: bool,
    /// `B ∪ MST_B` has no cycle `C` with `w(C \ e) <= (1+δ) w(e)`.
    pub cycle_property: bool,
    /// Cost within the genus-dependent competitive bound times `w(MST)`.
    pub competitive: bool,
    /// No reads outside the explored region.
    pub audit: bool,
    /// `w(MST) <= Opt <= 2 w(MST)` and `Opt <= cost`, for small instances.
    pub tsp: bool,
    /// Spanner lightness within the genus-dependent bound.
    pub lightness: bool,
    /// Every input edge is stretched by at most `1+ε`.
    pub stretch: bool,
    /// No spanner edge can be dropped without breaking the stretch.
    pub minimality: bool,
    /// The spanner contains a minimum spanning tree.
    pub mst_containment: bool,
    /// Brute-force optimum lightness at most the greedy lightness.
    pub optspan: bool,
    /// Simulator invariant checks after every step (slow).
    pub invariants: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            observation: true,
            cycle_property: true,
            competitive: true,
            audit: true,
            tsp: false,
            lightness: true,
            stretch: true,
            minimality: false,
            mst_containment: false,
            optspan: false,
            invariants: false,
        }
    }
}

impl Checks {
    pub fn all() -> Checks {
        Checks {
            observation: true,
            cycle_property: true,
            competitive: true,
            audit: true,
            tsp: true,
            lightness: true,
            stretch: true,
            minimality: true,
            mst_containment: true,
            optspan: true,
            invariants: true,
        }
    }

    pub fn enforced(&self, check: Check) -> bool {
        match check {
            Check::Observation => self.observation,
            Check::CycleProperty => self.cycle_property,
            Check::Competitive => self.competitive,
            Check::Audit => self.audit,
            Check::Tsp => self.tsp,
            Check::Lightness => self.lightness,
            Check::Stretch => self.stretch,
            Check::Minimality => self.minimality,
            Check::MstContainment => self.mst_containment,
            Check::Optspan => self.optspan,
        }
    }
}

/// Names of the individual verifications, as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Observation,
    CycleProperty,
    Competitive,
    Audit,
    Tsp,
    Lightness,
    Stretch,
    Minimality,
    MstContainment,
    Optspan,
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Observation => "observation",
            Check::CycleProperty => "cycle_property",
            Check::Competitive => "competitive",
            Check::Audit => "audit",
            Check::Tsp => "tsp",
            Check::Lightness => "lightness",
            Check::Stretch => "stretch",
            Check::Minimality => "minimality",
            Check::MstContainment => "mst_containment",
            Check::Optspan => "optspan",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    /// Standard output when absent.
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
    #[serde(default)]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub epsilons: Vec<Rational>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default)]
    pub output: OutputSpec,
    /// Worker threads; all cores when absent.
    #[serde(default)]
    pub parallelism: Option<usize>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> anyhow::Result<ExperimentConfig> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let config: ExperimentConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        config.validate_values()?;
        Ok(config)
    }

    fn validate_values(&self) -> anyhow::Result<()> {
        for eps in &self.epsilons {
            if !eps.is_positive() {
                bail!("epsilon must be positive, got {eps}");
            }
        }
        if self.parallelism == Some(0) {
            bail!("parallelism must be at least 1");
        }
        Ok(())
    }
}

/// Parses an `--instance` argument: inline JSON (an instance spec or a
/// list of them), a `.json` file holding the same, or an edge-list file.
pub fn parse_instance_arg(arg: &str) -> anyhow::Result<Vec<InstanceSpec>> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return parse_specs(arg).context("parsing inline instance JSON");
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("instance `{arg}` is neither JSON nor an existing file");
    }
    if path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("json")) {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_specs(&text).with_context(|| format!("parsing {}", path.display()));
    }
    Ok(vec![InstanceSpec::new(Family::File { path: path.to_path_buf() }, 0)])
}

fn parse_specs(text: &str) -> anyhow::Result<Vec<InstanceSpec>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(InstanceSpec),
        Many(Vec<InstanceSpec>),
    }
    Ok(match serde_json::from_str(text)? {
        OneOrMany::One(spec) => vec![spec],
        OneOrMany::Many(specs) => specs,
    })
}
