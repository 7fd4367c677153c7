//! Walker state and single-step evolution: coin first, then shift.
//!
//! Amplitudes live in one flat complex vector indexed by (vertex, port) in
//! vertex-major order. A step multiplies each vertex's port block by its
//! assigned coin and then applies the shift permutation; the two are fused
//! into one out-of-place pass over a double buffer.

use crate::coins::{realize_coin, CoinError, CoinMatrix, CoinSpec};
use crate::graphs::PortedGraph;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("coin dimension {dim} does not match degree {degree} at vertex {vertex}")]
    CoinDimensionMismatch { vertex: usize, dim: usize, degree: usize },
    #[error("no default coin for degree {degree}")]
    MissingDefaultCoin { degree: usize },
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("port {port} out of range at vertex {vertex} (degree {degree})")]
    PortOutOfRange { vertex: usize, port: usize, degree: usize },
    #[error("amplitude vector has length {got}, basis has {expected} labels")]
    AmplitudeLengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Coin(#[from] CoinError),
}

/// Complex amplitude vector over the (vertex, port) basis of one graph.
#[derive(Debug, Clone)]
pub struct WalkState {
    graph: Arc<PortedGraph>,
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    /// Equal real amplitude on every (vertex, port) label.
    pub fn uniform_all_ports(graph: &Arc<PortedGraph>) -> WalkState {
        let len = graph.label_count();
        let amp = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        WalkState { graph: Arc::clone(graph), amplitudes: vec![amp; len] }
    }

    /// Single basis state.
    pub fn localized(graph: &Arc<PortedGraph>, vertex: usize, port: usize) -> Result<WalkState, WalkError> {
        if vertex >= graph.vertex_count() {
            return Err(WalkError::VertexOutOfRange { vertex, count: graph.vertex_count() });
        }
        if port >= graph.degree(vertex) {
            return Err(WalkError::PortOutOfRange { vertex, port, degree: graph.degree(vertex) });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); graph.label_count()];
        amplitudes[graph.label(vertex, port)] = Complex64::new(1.0, 0.0);
        Ok(WalkState { graph: Arc::clone(graph), amplitudes })
    }

    pub fn from_amplitudes(
        graph: &Arc<PortedGraph>,
        amplitudes: Vec<Complex64>,
    ) -> Result<WalkState, WalkError> {
        if amplitudes.len() != graph.label_count() {
            return Err(WalkError::AmplitudeLengthMismatch {
                expected: graph.label_count(),
                got: amplitudes.len(),
            });
        }
        Ok(WalkState { graph: Arc::clone(graph), amplitudes })
    }

    pub fn graph(&self) -> &Arc<PortedGraph> {
        &self.graph
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, vertex: usize, port: usize) -> Complex64 {
        self.amplitudes[self.graph.label(vertex, port)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability of finding the walker at `vertex`, marginalizing ports.
    pub fn vertex_probability(&self, vertex: usize) -> Result<f64, WalkError> {
        if vertex >= self.graph.vertex_count() {
            return Err(WalkError::VertexOutOfRange { vertex, count: self.graph.vertex_count() });
        }
        let offsets = self.graph.offsets();
        Ok(self.amplitudes[offsets[vertex]..offsets[vertex + 1]]
            .iter()
            .map(|a| a.norm_sqr())
            .sum())
    }

    /// Per-vertex probabilities; sums to the squared norm.
    pub fn position_distribution(&self) -> Vec<f64> {
        let offsets = self.graph.offsets();
        (0..self.graph.vertex_count())
            .map(|v| {
                self.amplitudes[offsets[v]..offsets[v + 1]].iter().map(|a| a.norm_sqr()).sum()
            })
            .collect()
    }
}

/// Coins for one evolution: a default per occurring degree plus per-vertex
/// overrides (the marked vertex, boundary vertices).
#[derive(Debug, Clone, Default)]
pub struct CoinAssignment {
    defaults: BTreeMap<usize, CoinMatrix>,
    overrides: BTreeMap<usize, CoinMatrix>,
}

impl CoinAssignment {
    /// Realize `default` at every degree occurring in `graph`.
    pub fn from_default_spec(graph: &PortedGraph, default: &CoinSpec) -> Result<Self, WalkError> {
        let mut defaults = BTreeMap::new();
        for d in graph.occurring_degrees() {
            defaults.insert(d, realize_coin(&default.at_degree(d))?);
        }
        Ok(CoinAssignment { defaults, overrides: BTreeMap::new() })
    }

    /// Single concrete default coin, keyed by its dimension.
    pub fn from_default_matrix(matrix: CoinMatrix) -> Self {
        let mut defaults = BTreeMap::new();
        defaults.insert(matrix.dim(), matrix);
        CoinAssignment { defaults, overrides: BTreeMap::new() }
    }

    pub fn insert_default(&mut self, matrix: CoinMatrix) {
        self.defaults.insert(matrix.dim(), matrix);
    }

    /// Override the coin at one vertex; the dimension must match its degree.
    pub fn override_vertex(
        &mut self,
        graph: &PortedGraph,
        vertex: usize,
        matrix: CoinMatrix,
    ) -> Result<(), WalkError> {
        if vertex >= graph.vertex_count() {
            return Err(WalkError::VertexOutOfRange { vertex, count: graph.vertex_count() });
        }
        if matrix.dim() != graph.degree(vertex) {
            return Err(WalkError::CoinDimensionMismatch {
                vertex,
                dim: matrix.dim(),
                degree: graph.degree(vertex),
            });
        }
        self.overrides.insert(vertex, matrix);
        Ok(())
    }

    pub fn overrides(&self) -> &BTreeMap<usize, CoinMatrix> {
        &self.overrides
    }

    pub fn coin_for<'a>(&'a self, graph: &PortedGraph, vertex: usize) -> Result<&'a CoinMatrix, WalkError> {
        if let Some(m) = self.overrides.get(&vertex) {
            return Ok(m);
        }
        let degree = graph.degree(vertex);
        self.defaults.get(&degree).ok_or(WalkError::MissingDefaultCoin { degree })
    }

    /// Every occurring degree has a default of matching dimension and every
    /// override matches its vertex's degree.
    pub fn validate_for(&self, graph: &PortedGraph) -> Result<(), WalkError> {
        for d in graph.occurring_degrees() {
            match self.defaults.get(&d) {
                None => return Err(WalkError::MissingDefaultCoin { degree: d }),
                Some(m) if m.dim() != d => {
                    return Err(WalkError::CoinDimensionMismatch { vertex: 0, dim: m.dim(), degree: d })
                }
                _ => {}
            }
        }
        for (&v, m) in &self.overrides {
            if v >= graph.vertex_count() {
                return Err(WalkError::VertexOutOfRange { vertex: v, count: graph.vertex_count() });
            }
            if m.dim() != graph.degree(v) {
                return Err(WalkError::CoinDimensionMismatch {
                    vertex: v,
                    dim: m.dim(),
                    degree: graph.degree(v),
                });
            }
        }
        Ok(())
    }
}

/// One full step (coin then shift) compiled against a graph and coin
/// assignment: per-vertex coin lookup is resolved to an index table so the
/// hot loop only chases one small coin arena.
pub struct StepOperator {
    graph: Arc<PortedGraph>,
    coins: Vec<CoinMatrix>,
    coin_of: Vec<u32>,
}

impl StepOperator {
    pub fn new(graph: &Arc<PortedGraph>, assignment: &CoinAssignment) -> Result<Self, WalkError> {
        assignment.validate_for(graph)?;
        let mut coins: Vec<CoinMatrix> = Vec::new();
        let mut index_of_degree: BTreeMap<usize, u32> = BTreeMap::new();
        for (&d, m) in &assignment.defaults {
            index_of_degree.insert(d, coins.len() as u32);
            coins.push(m.clone());
        }
        let mut coin_of = vec![0u32; graph.vertex_count()];
        for v in 0..graph.vertex_count() {
            coin_of[v] = index_of_degree[&graph.degree(v)];
        }
        for (&v, m) in &assignment.overrides {
            coin_of[v] = coins.len() as u32;
            coins.push(m.clone());
        }
        Ok(StepOperator { graph: Arc::clone(graph), coins, coin_of })
    }

    pub fn graph(&self) -> &Arc<PortedGraph> {
        &self.graph
    }

    /// output[pairing[v, i]] = sum_j coin_v[i, j] * input[v, j]
    pub fn apply(&self, input: &[Complex64], output: &mut [Complex64]) {
        let offsets = self.graph.offsets();
        let pairing = self.graph.pairing();
        for v in 0..self.graph.vertex_count() {
            let off = offsets[v];
            let d = offsets[v + 1] - off;
            let entries = self.coins[self.coin_of[v] as usize].entries();
            let block = &input[off..off + d];
            for i in 0..d {
                let row = &entries[i * d..(i + 1) * d];
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    acc += row[j] * block[j];
                }
                output[pairing[off + i]] = acc;
            }
        }
    }

    /// Adjoint step: inverse shift, then conjugate-transpose coins.
    pub fn apply_adjoint(&self, input: &[Complex64], output: &mut [Complex64]) {
        let offsets = self.graph.offsets();
        let pairing = self.graph.pairing();
        for v in 0..self.graph.vertex_count() {
            let off = offsets[v];
            let d = offsets[v + 1] - off;
            let entries = self.coins[self.coin_of[v] as usize].entries();
            for i in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    acc += entries[j * d + i].conj() * input[pairing[off + j]];
                }
                output[off + i] = acc;
            }
        }
    }
}

/// Multiply each vertex's port block by its assigned coin.
pub fn apply_coin(state: &WalkState, coins: &CoinAssignment) -> Result<WalkState, WalkError> {
    let graph = state.graph();
    coins.validate_for(graph)?;
    let offsets = graph.offsets();
    let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    for v in 0..graph.vertex_count() {
        let off = offsets[v];
        let d = offsets[v + 1] - off;
        let coin = coins.coin_for(graph, v)?;
        coin.apply(&state.amplitudes[off..off + d], &mut out[off..off + d]);
    }
    WalkState::from_amplitudes(graph, out)
}

/// Move every amplitude along the shift pairing; a pure permutation.
pub fn apply_shift(state: &WalkState) -> WalkState {
    let graph = state.graph();
    let pairing = graph.pairing();
    let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    for (l, &target) in pairing.iter().enumerate() {
        out[target] = state.amplitudes[l];
    }
    WalkState { graph: Arc::clone(graph), amplitudes: out }
}

/// One step: coin, then shift.
pub fn step(state: &WalkState, coins: &CoinAssignment) -> Result<WalkState, WalkError> {
    evolve(state, coins, 1)
}

/// Apply `steps` steps. Zero steps returns the state unchanged.
pub fn evolve(state: &WalkState, coins: &CoinAssignment, steps: usize) -> Result<WalkState, WalkError> {
    let op = StepOperator::new(state.graph(), coins)?;
    let mut current = state.amplitudes.clone();
    let mut next = vec![Complex64::new(0.0, 0.0); current.len()];
    for _ in 0..steps {
        op.apply(&current, &mut next);
        std::mem::swap(&mut current, &mut next);
    }
    WalkState::from_amplitudes(state.graph(), current)
}

/// Apply the adjoint step `steps` times, undoing `evolve`.
pub fn evolve_adjoint(
    state: &WalkState,
    coins: &CoinAssignment,
    steps: usize,
) -> Result<WalkState, WalkError> {
    let op = StepOperator::new(state.graph(), coins)?;
    let mut current = state.amplitudes.clone();
    let mut next = vec![Complex64::new(0.0, 0.0); current.len()];
    for _ in 0..steps {
        op.apply_adjoint(&current, &mut next);
        std::mem::swap(&mut current, &mut next);
    }
    WalkState::from_amplitudes(state.graph(), current)
}
