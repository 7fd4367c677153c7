//! Experiment config file schema. One JSON file holds exactly one experiment
//! kind: a single search run, a size sweep, a parameter scan, or a fit.

use qwalk::{CoinSpec, FitModel, GraphSpec, SearchConfig};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ExperimentConfig {
    Run(SearchConfig),
    Sweep(SweepConfig),
    Scan(ScanConfig),
    Fit(FitConfig),
}

impl ExperimentConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            ExperimentConfig::Run(_) => "run",
            ExperimentConfig::Sweep(_) => "sweep",
            ExperimentConfig::Scan(_) => "scan",
            ExperimentConfig::Fit(_) => "fit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    Torus,
    TorusDiagonal,
    HexTorus,
    Bethe,
}

/// Inclusive integer range with a step, e.g. lattice sides 10..=48 by 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: usize,
    pub end: usize,
    #[serde(default = "one")]
    pub step: usize,
}

fn one() -> usize {
    1
}

impl RangeSpec {
    pub fn values(&self) -> Vec<usize> {
        if self.step == 0 {
            return Vec::new();
        }
        (self.start..=self.end).step_by(self.step).collect()
    }
}

/// Which vertex carries the marked coin in each sweep instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MarkedRule {
    /// Vertex floor(N/2); the default.
    #[default]
    Half,
    /// Vertex 0 (the central vertex of a Bethe lattice).
    Center,
    /// A fixed vertex index.
    Fixed(usize),
    /// First vertex of the given shell (Bethe lattices only).
    Shell(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub family: SweepFamily,
    /// Lattice sides for torus, torus_diagonal, and hex_torus families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sides: Option<RangeSpec>,
    /// Shell counts for the bethe family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shells: Option<RangeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_degree: Option<usize>,
    pub default_coin: CoinSpec,
    pub marked_coin: CoinSpec,
    #[serde(default)]
    pub marked_rule: MarkedRule,
    /// Step budget per instance; defaults to two oscillation periods,
    /// ceil(2 pi sqrt(N)).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanParameter {
    Delta,
    Phi,
}

/// Re-run one search config with the marked coin's delta or phi swept over
/// a list of values.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub base: SearchConfig,
    pub parameter: ScanParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// Sweep CSV (n,edges,peak_prob,peak_time) to fit.
    pub input: PathBuf,
    pub model: FitModel,
}

/// Instances a sweep expands to, ordered by ascending vertex count.
pub struct SweepInstance {
    pub n: usize,
    pub graph: GraphSpec,
    pub label: String,
}

impl SweepConfig {
    pub fn instances(&self) -> Result<Vec<SweepInstance>, String> {
        match self.family {
            SweepFamily::Torus | SweepFamily::TorusDiagonal | SweepFamily::HexTorus => {
                let sides = self.sides.ok_or("sweep family requires a `sides` range")?;
                let diagonals = self.family == SweepFamily::TorusDiagonal;
                let mut out = Vec::new();
                for side in sides.values() {
                    let graph = match self.family {
                        SweepFamily::HexTorus => GraphSpec::HexTorus { width: side, height: side },
                        _ => GraphSpec::Torus { width: side, height: side, diagonals },
                    };
                    out.push(SweepInstance { n: side * side, graph, label: format!("side {side}") });
                }
                Ok(out)
            }
            SweepFamily::Bethe => {
                let shells = self.shells.ok_or("bethe sweep requires a `shells` range")?;
                let degree = self.base_degree.unwrap_or(3);
                let mut out = Vec::new();
                for s in shells.values() {
                    let spec = qwalk::BetheSpec { base_degree: degree, shells: s };
                    out.push(SweepInstance {
                        n: spec.vertex_count(),
                        graph: GraphSpec::Bethe { base_degree: degree, shells: s },
                        label: format!("shells {s}"),
                    });
                }
                Ok(out)
            }
        }
    }
}
