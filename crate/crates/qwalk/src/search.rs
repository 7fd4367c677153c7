//! Walk-based spatial search: symmetry-matched initial states, marked and
//! boundary coin assignment, the per-step marked-vertex probability record,
//! and peak detection.

use crate::coins::{realize_coin, CoinError, CoinFamily, CoinSpec};
use crate::graphs::{GraphError, GraphKind, GraphSpec, PortedGraph};
use crate::walk::{CoinAssignment, StepOperator, WalkError, WalkState};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Initial state of a search run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// Equal amplitude on every (vertex, port) label.
    UniformAllPorts,
    /// `(|x,0> + i |x,1>)/sqrt(2N)` over all sites; matches Hadamard-coin line walks.
    LineHadamardSymmetric,
    /// `(|x,0> + |x,1>)/sqrt(2N)` over all sites; matches symmetric-coin line walks.
    LineSymmetricCoin,
    /// Single basis state.
    Localized { vertex: usize, port: usize },
}

/// Everything needed to reproduce one search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub graph: GraphSpec,
    pub marked_vertex: usize,
    pub default_coin: CoinSpec,
    pub marked_coin: CoinSpec,
    /// Coin for boundary vertices (reflecting line ends); defaults to the
    /// spin flip, which sends each reflected channel straight back.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_coin: Option<CoinSpec>,
    pub initial_state: InitialState,
    pub steps: usize,
}

/// A local maximum of the marked-vertex probability series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakRecord {
    pub time: usize,
    pub probability: f64,
    pub significant: bool,
}

/// Time series of the marked-vertex probability, including t = 0, plus the
/// detected peaks (flagged against the uniform 1/N baseline).
#[derive(Debug, Clone, Serialize)]
pub struct SearchRun {
    pub config: SearchConfig,
    pub p_marked: Vec<f64>,
    pub peaks: Vec<PeakRecord>,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coin(#[from] CoinError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("marked vertex {vertex} out of range (vertex count {count})")]
    MarkedVertexOutOfRange { vertex: usize, count: usize },
    #[error("initial state {state:?} requires a line or cycle graph, got {kind:?}")]
    IncompatibleInitialState { state: InitialState, kind: GraphKind },
    #[error("peak probability must be in (0, 1], got {probability}")]
    InvalidProbability { probability: f64 },
    #[error("delta sweep requires a line graph, got {kind:?}")]
    NotLineGraph { kind: GraphKind },
}

/// Significance rule for peaks: a local maximum counts once it reaches both
/// twice the baseline and a quarter of the series' global maximum. The
/// prominence floor rejects the small early ripples that would otherwise be
/// reported as the first peak on larger lattices.
fn significance_threshold(series: &[f64], baseline: f64) -> f64 {
    let global_max = series.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (2.0 * baseline).max(0.25 * global_max)
}

/// Interior local maxima of `series`, flagged against `baseline`. The
/// flip-flop walk raises the marked probability in two-step treads, so a
/// plateau only counts as a maximum when the next distinct value descends,
/// and a plateau's reported time is its midpoint (rounding up); plateau and
/// noise comparison use a relative tolerance.
pub fn detect_peaks(series: &[f64], baseline: f64) -> Vec<PeakRecord> {
    if series.len() < 3 {
        return Vec::new();
    }
    let global_max = series.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9 * global_max.max(f64::MIN_POSITIVE);
    let threshold = significance_threshold(series, baseline);
    let mut peaks = Vec::new();
    let mut t = 1;
    while t < series.len() {
        if series[t] > series[t - 1] + tol {
            let mut u = t;
            while u + 1 < series.len() && (series[u + 1] - series[t]).abs() <= tol {
                u += 1;
            }
            if u + 1 < series.len() && series[u + 1] < series[t] - tol {
                peaks.push(PeakRecord {
                    time: (t + u + 1) / 2,
                    probability: series[t],
                    significant: series[t] >= threshold,
                });
            }
            t = u + 1;
        } else {
            t += 1;
        }
    }
    peaks
}

/// Factor of the crest maximum below which a dip separates two crests.
const CREST_DIP_FACTOR: f64 = 0.5;

/// The first peak of a run: the highest local maximum within the first
/// significant crest.
///
/// The marked probability rises through a train of sub-maxima separated by
/// shallow dips before collapsing toward the baseline, so the peak is found
/// by taking the earliest significant local maximum and absorbing subsequent
/// maxima until the series dips below half the crest's running maximum. The
/// tallest sub-maximum of the crest migrates backward through the train as
/// the graph grows, which is what produces the kink in peak-time scaling.
pub fn first_significant_peak(run: &SearchRun, baseline: f64) -> Option<PeakRecord> {
    let peaks = detect_peaks(&run.p_marked, baseline);
    let start = peaks.iter().position(|p| p.significant)?;
    let mut best = peaks[start];
    let mut crest_max = best.probability;
    let mut prev_time = best.time;
    for peak in &peaks[start + 1..] {
        let trough = run.p_marked[prev_time..=peak.time]
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if trough < CREST_DIP_FACTOR * crest_max {
            break;
        }
        if peak.probability > best.probability {
            best = *peak;
        }
        crest_max = crest_max.max(peak.probability);
        prev_time = peak.time;
    }
    Some(best)
}

/// Standard amplitude-amplification repetition estimate, ceil(1/sqrt(p)).
/// An estimate only; no amplification procedure is simulated.
pub fn amplification_estimate(peak_probability: f64) -> Result<u64, SearchError> {
    if !(peak_probability > 0.0 && peak_probability <= 1.0) {
        return Err(SearchError::InvalidProbability { probability: peak_probability });
    }
    let repetitions = 1.0 / peak_probability.sqrt();
    let nearest = repetitions.round();
    Ok(if (repetitions - nearest).abs() < 1e-9 { nearest as u64 } else { repetitions.ceil() as u64 })
}

/// Default step budget: two full oscillation periods of the expected
/// pi/2 sqrt(N) peak spacing.
pub fn default_step_budget(vertex_count: usize) -> usize {
    (2.0 * std::f64::consts::PI * (vertex_count as f64).sqrt()).ceil() as usize
}

/// Build the configured initial state on an already-built graph.
pub fn initial_state(graph: &Arc<PortedGraph>, state: &InitialState) -> Result<WalkState, SearchError> {
    match *state {
        InitialState::UniformAllPorts => Ok(WalkState::uniform_all_ports(graph)),
        InitialState::Localized { vertex, port } => {
            Ok(WalkState::localized(graph, vertex, port)?)
        }
        InitialState::LineHadamardSymmetric | InitialState::LineSymmetricCoin => {
            if !matches!(graph.kind(), GraphKind::Cycle | GraphKind::LineReflecting) {
                return Err(SearchError::IncompatibleInitialState {
                    state: *state,
                    kind: graph.kind(),
                });
            }
            let n = graph.vertex_count() as f64;
            let scale = 1.0 / (2.0 * n).sqrt();
            let right = match *state {
                InitialState::LineHadamardSymmetric => Complex64::new(0.0, scale),
                _ => Complex64::new(scale, 0.0),
            };
            let mut amps = Vec::with_capacity(graph.label_count());
            for _ in 0..graph.vertex_count() {
                amps.push(Complex64::new(scale, 0.0));
                amps.push(right);
            }
            Ok(WalkState::from_amplitudes(graph, amps)?)
        }
    }
}

fn default_boundary_coin() -> CoinSpec {
    CoinSpec::new(CoinFamily::SigmaX, 2)
}

/// Assemble the coin assignment for a search: the default coin realized at
/// every occurring degree, the boundary coin on boundary vertices, and the
/// marked coin on the marked vertex (which wins any overlap).
pub fn coin_assignment(graph: &PortedGraph, config: &SearchConfig) -> Result<CoinAssignment, SearchError> {
    let mut coins = CoinAssignment::from_default_spec(graph, &config.default_coin)?;
    let boundary_spec = config.boundary_coin.unwrap_or_else(default_boundary_coin);
    for &v in graph.boundary_vertices() {
        let m = realize_coin(&boundary_spec.at_degree(graph.degree(v)))?;
        coins.override_vertex(graph, v, m)?;
    }
    let marked = realize_coin(&config.marked_coin.at_degree(graph.degree(config.marked_vertex)))?;
    coins.override_vertex(graph, config.marked_vertex, marked)?;
    Ok(coins)
}

/// Run the search described by `config`, building the graph from its spec.
pub fn run_search(config: &SearchConfig) -> Result<SearchRun, SearchError> {
    let graph = Arc::new(config.graph.build()?);
    run_search_on(graph, config)
}

/// Run the search on an already-built graph (which must match
/// `config.graph`; sweeps use this to reuse construction work).
pub fn run_search_on(graph: Arc<PortedGraph>, config: &SearchConfig) -> Result<SearchRun, SearchError> {
    if config.marked_vertex >= graph.vertex_count() {
        return Err(SearchError::MarkedVertexOutOfRange {
            vertex: config.marked_vertex,
            count: graph.vertex_count(),
        });
    }
    let coins = coin_assignment(&graph, config)?;
    let op = StepOperator::new(&graph, &coins)?;
    let start = initial_state(&graph, &config.initial_state)?;

    let offsets = graph.offsets();
    let marked = config.marked_vertex;
    let block = offsets[marked]..offsets[marked + 1];
    let probability_at =
        |amps: &[Complex64]| amps[block.clone()].iter().map(|a| a.norm_sqr()).sum::<f64>();

    let mut current = start.amplitudes().to_vec();
    let mut next = vec![Complex64::new(0.0, 0.0); current.len()];
    let mut p_marked = Vec::with_capacity(config.steps + 1);
    p_marked.push(probability_at(&current));
    for _ in 0..config.steps {
        op.apply(&current, &mut next);
        std::mem::swap(&mut current, &mut next);
        p_marked.push(probability_at(&current));
    }

    let baseline = 1.0 / graph.vertex_count() as f64;
    let peaks = detect_peaks(&p_marked, baseline);
    Ok(SearchRun { config: config.clone(), p_marked, peaks })
}

/// One run per bias value, with the marked coin drawn from the symmetric
/// Hadamard family at that bias. At 0.5 the marked coin coincides with the
/// unmarked symmetric coin and the uniform distribution is stationary; above
/// 0.5 the marked vertex sheds probability below the uniform level instead
/// of accumulating it.
pub fn delta_sweep_line(template: &SearchConfig, deltas: &[f64]) -> Result<Vec<SearchRun>, SearchError> {
    if !matches!(template.graph, GraphSpec::Line { .. }) {
        let kind = template.graph.build()?.kind();
        return Err(SearchError::NotLineGraph { kind });
    }
    let graph = Arc::new(template.graph.build()?);
    deltas
        .iter()
        .map(|&delta| {
            let mut config = template.clone();
            config.marked_coin = CoinSpec::new(CoinFamily::SymmetricHadamard, 2).with_delta(delta);
            run_search_on(Arc::clone(&graph), &config)
        })
        .collect()
}
