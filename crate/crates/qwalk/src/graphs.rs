//! Ported graphs: vertex sets with ordered ports and an explicit shift
//! pairing.
//!
//! A basis label is a (vertex, port) pair, flattened vertex-major. The shift
//! operator is the permutation `label -> pairing[label]`; builders guarantee
//! it is a bijection. Two conventions exist. A direction-preserving shift
//! keeps the port index and moves the walker along that port's direction; a
//! flip-flop shift carries each port's amplitude into the opposite-facing
//! port of the adjacent vertex and is an involution. Marked-coin search only
//! amplifies under the flip-flop shift, so the lattice builders use it
//! throughout; the line offers both styles because the textbook walk on the
//! line is defined with the direction-preserving shift.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Reflecting,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    LineReflecting,
    Cycle,
    Torus,
    TorusDiagonal,
    HexTorus,
    Bethe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftStyle {
    DirectionPreserving,
    FlipFlop,
}

fn direction_preserving() -> ShiftStyle {
    ShiftStyle::DirectionPreserving
}

/// Serializable description of a graph; `build` produces the concrete
/// [`PortedGraph`]. This is the config-file schema for graphs. The line
/// carries an optional `shift` field (direction-preserving when absent);
/// search configs on lines want `flip_flop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Line {
        n: usize,
        boundary: Boundary,
        #[serde(default = "direction_preserving")]
        shift: ShiftStyle,
    },
    Torus {
        width: usize,
        height: usize,
        #[serde(default)]
        diagonals: bool,
    },
    HexTorus { width: usize, height: usize },
    Bethe { base_degree: usize, shells: usize },
}

impl GraphSpec {
    /// Line spec with the default direction-preserving shift.
    pub fn line(n: usize, boundary: Boundary) -> Self {
        GraphSpec::Line { n, boundary, shift: ShiftStyle::DirectionPreserving }
    }

    /// Line spec with the flip-flop shift, the convention search runs use.
    pub fn line_flip_flop(n: usize, boundary: Boundary) -> Self {
        GraphSpec::Line { n, boundary, shift: ShiftStyle::FlipFlop }
    }

    pub fn build(&self) -> Result<PortedGraph, GraphError> {
        match *self {
            GraphSpec::Line { n, boundary, shift } => build_line_styled(n, boundary, shift),
            GraphSpec::Torus { width, height, diagonals } => build_torus(width, height, diagonals),
            GraphSpec::HexTorus { width, height } => build_hex_torus(width, height),
            GraphSpec::Bethe { base_degree, shells } => {
                build_bethe(&BetheSpec { base_degree, shells })
            }
        }
    }
}

/// Parameters of a Bethe lattice: a central vertex with `base_degree`
/// branches, grown outward for `shells` shells. Shell `s >= 1` holds
/// `d (d-1)^(s-1)` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetheSpec {
    pub base_degree: usize,
    pub shells: usize,
}

impl BetheSpec {
    pub fn shell_size(&self, shell: usize) -> usize {
        if shell == 0 {
            1
        } else {
            self.base_degree * (self.base_degree - 1).pow(shell as u32 - 1)
        }
    }

    pub fn vertex_count(&self) -> usize {
        (0..=self.shells).map(|s| self.shell_size(s)).sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line needs at least 2 vertices, got {got}")]
    LineTooShort { got: usize },
    #[error("torus needs width and height of at least 2, got {width}x{height}")]
    TorusTooSmall { width: usize, height: usize },
    #[error("hexagonal torus needs even dimensions of at least 2, got {width}x{height}")]
    HexDimensionsInvalid { width: usize, height: usize },
    #[error("Bethe lattice needs base degree >= 3 and shells >= 1, got degree {base_degree}, shells {shells}")]
    BetheSpecInvalid { base_degree: usize, shells: usize },
}

/// A finite graph with ordered ports per vertex and the shift permutation on
/// (vertex, port) labels. Immutable after construction; safe to share across
/// concurrent walk evaluations.
#[derive(Debug, Clone)]
pub struct PortedGraph {
    kind: GraphKind,
    style: ShiftStyle,
    spec: GraphSpec,
    degrees: Vec<usize>,
    /// Prefix sums of `degrees`; `offsets[v]..offsets[v+1]` are vertex v's labels.
    offsets: Vec<usize>,
    /// Amplitude at label L moves to label `pairing[L]` under the shift.
    pairing: Vec<usize>,
    /// Vertices carrying a boundary coin (the two ends of a reflecting line).
    boundary: Vec<usize>,
    /// Shell index per vertex; empty unless the graph is a Bethe lattice.
    shell_index: Vec<usize>,
}

impl PortedGraph {
    /// Assemble a graph from raw parts without validation; `validate_graph`
    /// reports any invariant violations as data.
    pub fn from_parts(
        kind: GraphKind,
        style: ShiftStyle,
        spec: GraphSpec,
        degrees: Vec<usize>,
        pairing: Vec<usize>,
        boundary: Vec<usize>,
        shell_index: Vec<usize>,
    ) -> Self {
        let offsets = prefix_sums(&degrees);
        PortedGraph { kind, style, spec, degrees, offsets, pairing, boundary, shell_index }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn shift_style(&self) -> ShiftStyle {
        self.style
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    /// Number of (vertex, port) basis labels, i.e. the sum of all degrees.
    pub fn label_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.degrees[vertex]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn boundary_vertices(&self) -> &[usize] {
        &self.boundary
    }

    #[inline]
    pub fn label(&self, vertex: usize, port: usize) -> usize {
        debug_assert!(port < self.degrees[vertex]);
        self.offsets[vertex] + port
    }

    pub fn vertex_port(&self, label: usize) -> (usize, usize) {
        debug_assert!(label < self.label_count());
        let vertex = self.offsets.partition_point(|&o| o <= label) - 1;
        (vertex, label - self.offsets[vertex])
    }

    /// Where the amplitude at (vertex, port) moves under one shift.
    pub fn shift_pairing(&self, vertex: usize, port: usize) -> (usize, usize) {
        self.vertex_port(self.pairing[self.label(vertex, port)])
    }

    /// Distinct degrees occurring in the graph, ascending.
    pub fn occurring_degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.degrees.clone();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Undirected edge count: labels paired across distinct vertices, halved.
    /// Boundary self-pairings do not contribute.
    pub fn edge_count(&self) -> usize {
        let crossing = (0..self.label_count())
            .filter(|&l| self.vertex_port(self.pairing[l]).0 != self.vertex_port(l).0)
            .count();
        crossing / 2
    }

    /// Shell index of a vertex on a Bethe lattice, `None` elsewhere.
    pub fn shell_of(&self, vertex: usize) -> Option<usize> {
        self.shell_index.get(vertex).copied()
    }

    /// First vertex index of the given shell on a Bethe lattice.
    pub fn shell_start(&self, shell: usize) -> Option<usize> {
        if self.shell_index.is_empty() {
            return None;
        }
        self.shell_index.iter().position(|&s| s == shell)
    }
}

fn prefix_sums(degrees: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(degrees.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &d in degrees {
        acc += d;
        offsets.push(acc);
    }
    offsets
}

/// Line of `n` vertices, degree 2 everywhere, port 0 facing left and port 1
/// facing right, with the direction-preserving shift. See
/// [`build_line_styled`] for the flip-flop variant.
pub fn build_line(n: usize, boundary: Boundary) -> Result<PortedGraph, GraphError> {
    build_line_styled(n, boundary, ShiftStyle::DirectionPreserving)
}

/// Line of `n` vertices in either shift style. Periodic boundaries wrap.
/// Reflecting boundaries mark both ends as boundary vertices and keep the
/// outward-moving amplitude on the end vertex: under the flip-flop style the
/// outward label pairs with itself, under the direction-preserving style it
/// re-enters the same vertex's opposite channel.
pub fn build_line_styled(
    n: usize,
    boundary: Boundary,
    style: ShiftStyle,
) -> Result<PortedGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::LineTooShort { got: n });
    }
    let mut pairing = vec![0usize; 2 * n];
    for x in 0..n {
        let left = (x + n - 1) % n;
        let right = (x + 1) % n;
        match style {
            ShiftStyle::DirectionPreserving => {
                pairing[2 * x] = 2 * left;
                pairing[2 * x + 1] = 2 * right + 1;
            }
            ShiftStyle::FlipFlop => {
                pairing[2 * x] = 2 * left + 1; // into the left neighbour's right-facing port
                pairing[2 * x + 1] = 2 * right;
            }
        }
    }
    let (kind, boundary_vertices) = match boundary {
        Boundary::Periodic => (GraphKind::Cycle, Vec::new()),
        Boundary::Reflecting => {
            match style {
                ShiftStyle::DirectionPreserving => {
                    pairing[0] = 1;
                    pairing[2 * (n - 1) + 1] = 2 * (n - 1);
                }
                ShiftStyle::FlipFlop => {
                    pairing[0] = 0;
                    pairing[2 * (n - 1) + 1] = 2 * (n - 1) + 1;
                }
            }
            (GraphKind::LineReflecting, vec![0, n - 1])
        }
    };
    Ok(PortedGraph::from_parts(
        kind,
        style,
        GraphSpec::Line { n, boundary, shift: style },
        vec![2; n],
        pairing,
        boundary_vertices,
        Vec::new(),
    ))
}

// Row-major vertex indexing; port order N, E, S, W, then NE, SE, SW, NW when
// diagonals are present. North decreases the row index.
const TORUS_DIRS: [(isize, isize); 8] =
    [(-1, 0), (0, 1), (1, 0), (0, -1), (-1, 1), (1, 1), (1, -1), (-1, -1)];

// Port holding the opposite direction, e.g. N <-> S, NE <-> SW.
const TORUS_OPPOSITE: [usize; 8] = [2, 3, 0, 1, 6, 7, 4, 5];

/// Cartesian lattice on a torus, degree 4, or degree 8 with diagonal links.
/// Flip-flop shift: each port pairs with the opposite-direction port of the
/// neighbour it points at.
pub fn build_torus(width: usize, height: usize, diagonals: bool) -> Result<PortedGraph, GraphError> {
    if width < 2 || height < 2 {
        return Err(GraphError::TorusTooSmall { width, height });
    }
    let degree = if diagonals { 8 } else { 4 };
    let n = width * height;
    let mut pairing = vec![0usize; n * degree];
    for row in 0..height {
        for col in 0..width {
            let v = row * width + col;
            for (p, &(dr, dc)) in TORUS_DIRS[..degree].iter().enumerate() {
                let tr = (row as isize + dr).rem_euclid(height as isize) as usize;
                let tc = (col as isize + dc).rem_euclid(width as isize) as usize;
                pairing[v * degree + p] = (tr * width + tc) * degree + TORUS_OPPOSITE[p];
            }
        }
    }
    let kind = if diagonals { GraphKind::TorusDiagonal } else { GraphKind::Torus };
    Ok(PortedGraph::from_parts(
        kind,
        ShiftStyle::FlipFlop,
        GraphSpec::Torus { width, height, diagonals },
        vec![degree; n],
        pairing,
        Vec::new(),
        Vec::new(),
    ))
}

/// Hexagonal lattice in brick-wall form on a width x height vertex torus.
/// Every vertex has East (port 0) and West (port 1) links; the vertical link
/// (port 2) points North when row + column is even and South otherwise,
/// giving uniform degree 3. The shift is flip-flop. Both dimensions must be
/// even or the vertical-link parity cannot close around the torus.
pub fn build_hex_torus(width: usize, height: usize) -> Result<PortedGraph, GraphError> {
    if width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0 {
        return Err(GraphError::HexDimensionsInvalid { width, height });
    }
    let n = width * height;
    let mut pairing = vec![0usize; 3 * n];
    for row in 0..height {
        for col in 0..width {
            let v = row * width + col;
            let east = row * width + (col + 1) % width;
            let west = row * width + (col + width - 1) % width;
            pairing[3 * v] = 3 * east + 1;
            pairing[3 * v + 1] = 3 * west;
            let vertical = if (row + col) % 2 == 0 {
                ((row + height - 1) % height) * width + col
            } else {
                ((row + 1) % height) * width + col
            };
            pairing[3 * v + 2] = 3 * vertical + 2;
        }
    }
    Ok(PortedGraph::from_parts(
        GraphKind::HexTorus,
        ShiftStyle::FlipFlop,
        GraphSpec::HexTorus { width, height },
        vec![3; n],
        pairing,
        Vec::new(),
        Vec::new(),
    ))
}

/// Bethe lattice segment: central vertex of degree d, interior vertices with
/// one parent port (port 0) and d-1 child ports, indexed breadth-first from
/// the centre and annotated with their shell. The flip-flop pairing joins
/// each child port to the child's parent port. Outermost-shell vertices have
/// degree 2: the parent port plus one outward port paired with itself, so
/// that a diffusion-coin default (which degenerates to the spin flip at
/// degree 2) reflects branch-end amplitude back the way it came.
pub fn build_bethe(spec: &BetheSpec) -> Result<PortedGraph, GraphError> {
    if spec.base_degree < 3 || spec.shells < 1 {
        return Err(GraphError::BetheSpecInvalid {
            base_degree: spec.base_degree,
            shells: spec.shells,
        });
    }
    let d = spec.base_degree;
    let total = spec.vertex_count();

    let mut degrees = vec![0usize; total];
    let mut shell_index = vec![0usize; total];
    let mut shell_starts = Vec::with_capacity(spec.shells + 2);
    let mut next = 0usize;
    for s in 0..=spec.shells {
        shell_starts.push(next);
        let size = spec.shell_size(s);
        for v in next..next + size {
            shell_index[v] = s;
            degrees[v] = if s == spec.shells { 2 } else { d };
        }
        next += size;
    }
    shell_starts.push(next);

    let offsets = prefix_sums(&degrees);
    let mut pairing = vec![0usize; *offsets.last().unwrap()];

    // Children of the j-th vertex of shell s sit contiguously in shell s+1.
    for s in 0..spec.shells {
        let start = shell_starts[s];
        let child_start = shell_starts[s + 1];
        let fanout = if s == 0 { d } else { d - 1 };
        let first_child_port = if s == 0 { 0 } else { 1 };
        for j in 0..spec.shell_size(s) {
            let parent = start + j;
            for k in 0..fanout {
                let child = child_start + j * fanout + k;
                let parent_label = offsets[parent] + first_child_port + k;
                let child_label = offsets[child]; // port 0 is the parent port
                pairing[parent_label] = child_label;
                pairing[child_label] = parent_label;
            }
        }
    }
    // Leaf reflectors: the outward port of every outermost vertex.
    for v in shell_starts[spec.shells]..total {
        let outward = offsets[v] + 1;
        pairing[outward] = outward;
    }

    Ok(PortedGraph::from_parts(
        GraphKind::Bethe,
        ShiftStyle::FlipFlop,
        GraphSpec::Bethe { base_degree: d, shells: spec.shells },
        degrees,
        pairing,
        Vec::new(),
        shell_index,
    ))
}

/// A single invariant violation, printable as one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphViolation {
    PairingLengthMismatch { expected: usize, got: usize },
    DanglingPort { vertex: usize, port: usize },
    DuplicateTarget { vertex: usize, port: usize },
    NotInvolution { vertex: usize, port: usize },
    PortNotPreserved { vertex: usize, port: usize },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::PairingLengthMismatch { expected, got } => {
                write!(f, "pairing covers {got} labels but the graph has {expected}")
            }
            GraphViolation::DanglingPort { vertex, port } => {
                write!(f, "dangling port: (vertex {vertex}, port {port}) maps outside the label set")
            }
            GraphViolation::DuplicateTarget { vertex, port } => {
                write!(f, "pairing not injective: (vertex {vertex}, port {port}) repeats a target")
            }
            GraphViolation::NotInvolution { vertex, port } => {
                write!(f, "flip-flop pairing not an involution at (vertex {vertex}, port {port})")
            }
            GraphViolation::PortNotPreserved { vertex, port } => {
                write!(f, "port index changes at (vertex {vertex}, port {port})")
            }
        }
    }
}

/// Check every structural invariant, returning violations as data. Builders
/// must always produce an empty list.
pub fn validate_graph(graph: &PortedGraph) -> Vec<GraphViolation> {
    let mut violations = Vec::new();
    let labels = graph.label_count();
    if graph.pairing.len() != labels {
        violations.push(GraphViolation::PairingLengthMismatch {
            expected: labels,
            got: graph.pairing.len(),
        });
        return violations;
    }

    let mut hit = vec![false; labels];
    for l in 0..labels {
        let (vertex, port) = graph.vertex_port(l);
        let target = graph.pairing[l];
        if target >= labels {
            violations.push(GraphViolation::DanglingPort { vertex, port });
            continue;
        }
        if hit[target] {
            violations.push(GraphViolation::DuplicateTarget { vertex, port });
        }
        hit[target] = true;

        match graph.style {
            ShiftStyle::FlipFlop => {
                if graph.pairing[target] != l {
                    violations.push(GraphViolation::NotInvolution { vertex, port });
                }
            }
            ShiftStyle::DirectionPreserving => {
                let (tv, tp) = graph.vertex_port(target);
                if tp != port {
                    // A reflecting end legitimately feeds its outward channel
                    // back into the same vertex's opposite channel.
                    let reflecting = tv == vertex && graph.boundary.contains(&vertex);
                    if !reflecting {
                        violations.push(GraphViolation::PortNotPreserved { vertex, port });
                    }
                }
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_valid(graph: &PortedGraph) {
        let violations = validate_graph(graph);
        assert!(violations.is_empty(), "violations: {violations:?}");
    }

    #[test]
    fn periodic_line_wraps() {
        let g = build_line(101, Boundary::Periodic).unwrap();
        assert_eq!(g.vertex_count(), 101);
        assert_eq!(g.shift_pairing(0, 0), (100, 0));
        assert_eq!(g.shift_pairing(100, 1), (0, 1));
        assert_valid(&g);
    }

    #[test]
    fn periodic_line_port0_is_cyclic_shift() {
        let g = build_line(5, Boundary::Periodic).unwrap();
        for x in 0..5 {
            assert_eq!(g.shift_pairing(x, 0), ((x + 4) % 5, 0));
        }
    }

    #[test]
    fn reflecting_line_ends_self_pair() {
        let g = build_line(101, Boundary::Reflecting).unwrap();
        // The outward-moving label at each end stays on the same vertex.
        let (v, _) = g.shift_pairing(0, 0);
        assert_eq!(v, 0);
        let (v, _) = g.shift_pairing(100, 1);
        assert_eq!(v, 100);
        assert_eq!(g.boundary_vertices(), &[0, 100]);
        assert_eq!(g.edge_count(), 100);
        assert_valid(&g);

        // Flip-flop variant: the outward labels pair with themselves.
        let g = build_line_styled(101, Boundary::Reflecting, ShiftStyle::FlipFlop).unwrap();
        assert_eq!(g.shift_pairing(0, 0), (0, 0));
        assert_eq!(g.shift_pairing(100, 1), (100, 1));
        assert_eq!(g.edge_count(), 100);
        assert_valid(&g);
    }

    #[test]
    fn flip_flop_line_pairs_opposite_ports() {
        let g = build_line_styled(5, Boundary::Periodic, ShiftStyle::FlipFlop).unwrap();
        for x in 0..5 {
            assert_eq!(g.shift_pairing(x, 0), ((x + 4) % 5, 1));
            assert_eq!(g.shift_pairing(x, 1), ((x + 1) % 5, 0));
        }
        assert_valid(&g);
    }

    #[test]
    fn torus_20x20() {
        let g = build_torus(20, 20, false).unwrap();
        assert_eq!(g.vertex_count(), 400);
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert_eq!(g.edge_count(), 800);
        assert_valid(&g);
    }

    #[test]
    fn torus_diagonal_wrap() {
        let g = build_torus(3, 3, true).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 8));
        // NE from (0,0) wraps the row to 2, column to 1, landing in the
        // neighbour's SW port (NE is port 4, SW port 6).
        assert_eq!(g.shift_pairing(0, 4), (2 * 3 + 1, 6));
        assert_eq!(g.edge_count(), 4 * 9);
        assert_valid(&g);
    }

    #[test]
    fn torus_pairing_is_involution() {
        for (w, h, diag) in [(2, 2, false), (3, 5, false), (4, 4, true)] {
            let g = build_torus(w, h, diag).unwrap();
            for l in 0..g.label_count() {
                assert_eq!(g.pairing()[g.pairing()[l]], l);
            }
            assert_valid(&g);
        }
    }

    #[test]
    fn hex_torus_degree_and_involution() {
        let g = build_hex_torus(4, 4).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(g.label_count(), 48);
        for l in 0..48 {
            assert_eq!(g.pairing()[g.pairing()[l]], l);
        }
        assert_eq!(g.edge_count(), 24);
        assert_valid(&g);
    }

    #[test]
    fn hex_torus_kink_scale_instance() {
        let g = build_hex_torus(42, 42).unwrap();
        assert_eq!(g.vertex_count(), 1764);
        assert_eq!(g.edge_count(), 3 * 1764 / 2);
        assert_valid(&g);
    }

    #[test]
    fn hex_torus_rejects_odd() {
        assert!(build_hex_torus(5, 4).is_err());
        assert!(build_hex_torus(4, 7).is_err());
    }

    #[test]
    fn bethe_shell_sizes() {
        let g = build_bethe(&BetheSpec { base_degree: 3, shells: 3 }).unwrap();
        assert_eq!(g.vertex_count(), 22); // 1 + 3 + 6 + 12
        assert_eq!(g.shell_start(1), Some(1));
        assert_eq!(g.shell_start(2), Some(4));
        assert_eq!(g.shell_start(3), Some(10));
        let leaves = g.degrees().iter().filter(|&&d| d == 2).count();
        assert_eq!(leaves, 12);
        assert_eq!(g.edge_count(), 21); // tree; leaf reflectors are not edges
        assert_valid(&g);
    }

    #[test]
    fn bethe_degree_4() {
        // Direct evaluation of the shell formula: 4 and 12 vertices.
        let spec = BetheSpec { base_degree: 4, shells: 2 };
        assert_eq!(spec.shell_size(1), 4);
        assert_eq!(spec.shell_size(2), 12);
        let g = build_bethe(&spec).unwrap();
        assert_eq!(g.vertex_count(), 17);
        assert_valid(&g);
    }

    #[test]
    fn bethe_single_shell() {
        let g = build_bethe(&BetheSpec { base_degree: 3, shells: 1 }).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.degree(0), 3);
        for v in 1..4 {
            assert_eq!(g.degree(v), 2);
            assert_eq!(g.shift_pairing(v, 0).0, 0);
            assert_eq!(g.shift_pairing(v, 1), (v, 1)); // outward reflector
        }
        assert_valid(&g);
    }

    #[test]
    fn builder_errors() {
        assert!(matches!(build_line(1, Boundary::Periodic), Err(GraphError::LineTooShort { .. })));
        assert!(build_torus(1, 5, false).is_err());
        assert!(build_bethe(&BetheSpec { base_degree: 2, shells: 3 }).is_err());
        assert!(build_bethe(&BetheSpec { base_degree: 3, shells: 0 }).is_err());
    }

    #[test]
    fn dangling_port_reported() {
        let mut g = build_line(3, Boundary::Periodic).unwrap();
        g.pairing[3] = 99;
        let violations = validate_graph(&g);
        assert!(violations.contains(&GraphViolation::DanglingPort { vertex: 1, port: 1 }));
        let line = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n");
        assert!(line.contains("vertex 1, port 1"));
    }

    #[test]
    fn duplicate_target_reported() {
        let mut g = build_line(3, Boundary::Periodic).unwrap();
        let dup = g.pairing[0];
        g.pairing[2] = dup;
        let violations = validate_graph(&g);
        assert!(violations
            .iter()
            .any(|v| matches!(v, GraphViolation::DuplicateTarget { .. })));
    }

    #[test]
    fn exhaustive_invariants_at_desk_scale() {
        let mut graphs = Vec::new();
        for n in [2, 3, 5, 16, 101, 1000] {
            graphs.push(build_line(n, Boundary::Periodic).unwrap());
            graphs.push(build_line(n, Boundary::Reflecting).unwrap());
        }
        for (w, h) in [(2, 2), (3, 5), (20, 20), (48, 48), (100, 100)] {
            graphs.push(build_torus(w, h, false).unwrap());
            graphs.push(build_torus(w, h, true).unwrap());
        }
        for (w, h) in [(2, 2), (4, 6), (42, 42), (100, 100)] {
            graphs.push(build_hex_torus(w, h).unwrap());
        }
        for (d, s) in [(3, 1), (3, 7), (3, 10), (4, 5), (5, 4)] {
            graphs.push(build_bethe(&BetheSpec { base_degree: d, shells: s }).unwrap());
        }
        for g in &graphs {
            assert!(g.label_count() <= 100_000);
            assert_valid(g);
            if g.shift_style() == ShiftStyle::FlipFlop {
                for l in 0..g.label_count() {
                    assert_eq!(g.pairing()[g.pairing()[l]], l);
                }
            }
        }
    }

    #[test]
    fn graph_spec_json() {
        let spec = GraphSpec::Torus { width: 20, height: 20, diagonals: false };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"torus","width":20,"height":20,"diagonals":false}"#);
        // The shift field is optional and defaults to direction-preserving.
        let parsed: GraphSpec =
            serde_json::from_str(r#"{"kind":"line","n":101,"boundary":"periodic"}"#).unwrap();
        assert_eq!(parsed, GraphSpec::line(101, Boundary::Periodic));
        let parsed: GraphSpec = serde_json::from_str(
            r#"{"kind":"line","n":101,"boundary":"periodic","shift":"flip_flop"}"#,
        )
        .unwrap();
        assert_eq!(parsed, GraphSpec::line_flip_flop(101, Boundary::Periodic));
        let parsed: GraphSpec =
            serde_json::from_str(r#"{"kind":"bethe","base_degree":3,"shells":4}"#).unwrap();
        assert_eq!(parsed, GraphSpec::Bethe { base_degree: 3, shells: 4 });
    }
}
