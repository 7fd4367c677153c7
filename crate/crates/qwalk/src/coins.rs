//! Coin unitaries applied to the port register of each vertex.
//!
//! Degree-2 vertices use the Hadamard family (plain, biased, or the complex
//! symmetric variant) and the spin-flip `sigma_x`. Vertices of arbitrary
//! degree use the Grover diffusion family: entries `2/d` everywhere minus the
//! identity. Marking a search target swaps in a negated, phased, or biased
//! member of the same family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

/// Symbolic coin family. Together with `degree`, `delta`, and `phi` this
/// fully determines a concrete unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoinFamily {
    /// `1/sqrt(2) [[1, 1], [1, -1]]` on degree-2 vertices.
    Hadamard,
    /// `[[sqrt(d), sqrt(1-d)], [sqrt(1-d), -sqrt(d)]]` with bias `d = delta`.
    /// `delta = 0.5` reduces to `Hadamard`, `delta = 0` to `SigmaX`.
    BiasedHadamard,
    /// Complex symmetric variant `[[sqrt(d), i sqrt(1-d)], [i sqrt(1-d), sqrt(d)]]`.
    SymmetricHadamard,
    /// Spin flip `[[0, 1], [1, 0]]`.
    SigmaX,
    /// Diffusion coin: all entries `2/degree`, minus the identity.
    Grover,
    /// Negated diffusion coin, the standard marked-vertex coin.
    MarkedGrover,
    /// `e^{i phi}` times `MarkedGrover`; `phi = 0` gives `MarkedGrover` and
    /// `phi = pi` gives `Grover` back.
    PhasedMarkedGrover,
    /// Symmetric unitary with real diagonal `delta` and constant complex
    /// off-diagonal, interpolating from `MarkedGrover` (`delta = 0.5`) to the
    /// identity (`delta = 1`).
    BiasedGrover,
    Identity,
    /// `-Hadamard`, the marked-vertex coin for Hadamard line walks.
    NegatedHadamard,
    /// `-SymmetricHadamard(delta)`, the marked-vertex coin for symmetric line walks.
    NegatedSymmetric,
}

/// Symbolic description of one coin. Serializes as
/// `{"family": ..., "degree": ..., "delta": ..., "phi": ...}` with the two
/// parameters optional (`delta` defaults to 0.5, `phi` to 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinSpec {
    pub family: CoinFamily,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

impl CoinSpec {
    pub fn new(family: CoinFamily, degree: usize) -> Self {
        CoinSpec { family, degree, delta: None, phi: None }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = Some(phi);
        self
    }

    /// Same family and parameters targeted at another degree. Used to
    /// realize one symbolic default coin on graphs with mixed degrees.
    pub fn at_degree(&self, degree: usize) -> Self {
        CoinSpec { degree, ..*self }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoinError {
    #[error("{family:?} coin is {expected}-dimensional, got degree {got}")]
    DegreeMismatch { family: CoinFamily, expected: usize, got: usize },
    #[error("coin degree must be at least 1")]
    ZeroDegree,
    #[error("delta = {delta} outside [{min}, {max}] for {family:?}")]
    DeltaOutOfRange { family: CoinFamily, delta: f64, min: f64, max: f64 },
    #[error("biased Grover coin admits no unitary completion for delta = {delta} < 0.5")]
    BiasedGroverDeltaBelowHalf { delta: f64 },
    #[error("phi = {phi} outside [0, pi]")]
    PhiOutOfRange { phi: f64 },
    #[error("biased Grover coin admits no unitary completion at degree {degree}, delta = {delta}")]
    NoUnitaryCompletion { degree: usize, delta: f64 },
}

/// Dense square complex matrix acting on the ports of one vertex.
/// Immutable after construction and safe to share across concurrent walks;
/// every coin in use is at most 8x8, so no sparse storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinMatrix {
    dim: usize,
    entries: Vec<Complex64>, // row-major
}

impl CoinMatrix {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        CoinMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        CoinMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn negated(&self) -> Self {
        self.scaled(Complex64::new(-1.0, 0.0))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        CoinMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = self.entries[j * d + i].conj();
            }
        }
        CoinMatrix { dim: d, entries }
    }

    pub fn matmul(&self, rhs: &CoinMatrix) -> CoinMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.entries[i * d + k] * rhs.entries[k * d + j];
                }
                entries[i * d + j] = acc;
            }
        }
        CoinMatrix { dim: d, entries }
    }

    /// Matrix-vector product; `input` and `output` must both have length `dim`.
    pub fn apply(&self, input: &[Complex64], output: &mut [Complex64]) {
        let d = self.dim;
        debug_assert_eq!(input.len(), d);
        debug_assert_eq!(output.len(), d);
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..d {
                acc += self.entries[i * d + j] * input[j];
            }
            output[i] = acc;
        }
    }

    /// Largest entry of `U^dagger U - I` in absolute value.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.adjoint().matmul(self);
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let expected = if i == j { 1.0 } else { 0.0 };
                let dev = (product.entries[i * d + j] - Complex64::new(expected, 0.0)).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }
}

/// True iff `matrix` is unitary to within `tol` (max-entry deviation of
/// `U^dagger U` from the identity).
pub fn check_unitary(matrix: &CoinMatrix, tol: f64) -> bool {
    matrix.unitarity_defect() <= tol
}

/// Construct the concrete matrix described by `spec`.
pub fn realize_coin(spec: &CoinSpec) -> Result<CoinMatrix, CoinError> {
    let d = spec.degree;
    if d == 0 {
        return Err(CoinError::ZeroDegree);
    }
    match spec.family {
        CoinFamily::Hadamard => {
            require_degree(spec, 2)?;
            Ok(hadamard())
        }
        CoinFamily::BiasedHadamard => {
            require_degree(spec, 2)?;
            let delta = delta_in_range(spec, 0.0, 1.0)?;
            Ok(biased_hadamard(delta))
        }
        CoinFamily::SymmetricHadamard => {
            require_degree(spec, 2)?;
            let delta = delta_in_range(spec, 0.0, 1.0)?;
            Ok(symmetric_hadamard(delta))
        }
        CoinFamily::SigmaX => {
            require_degree(spec, 2)?;
            Ok(sigma_x())
        }
        CoinFamily::Grover => Ok(grover(d)),
        CoinFamily::MarkedGrover => Ok(grover(d).negated()),
        CoinFamily::PhasedMarkedGrover => {
            let phi = spec.phi.unwrap_or(0.0);
            if !(0.0..=PI).contains(&phi) {
                return Err(CoinError::PhiOutOfRange { phi });
            }
            Ok(grover(d).negated().scaled(Complex64::from_polar(1.0, phi)))
        }
        CoinFamily::BiasedGrover => {
            let delta = spec.delta.unwrap_or(0.5);
            biased_grover(d, delta)
        }
        CoinFamily::Identity => Ok(CoinMatrix::identity(d)),
        CoinFamily::NegatedHadamard => {
            require_degree(spec, 2)?;
            Ok(hadamard().negated())
        }
        CoinFamily::NegatedSymmetric => {
            require_degree(spec, 2)?;
            let delta = delta_in_range(spec, 0.0, 1.0)?;
            Ok(symmetric_hadamard(delta).negated())
        }
    }
}

fn require_degree(spec: &CoinSpec, expected: usize) -> Result<(), CoinError> {
    if spec.degree != expected {
        return Err(CoinError::DegreeMismatch {
            family: spec.family,
            expected,
            got: spec.degree,
        });
    }
    Ok(())
}

fn delta_in_range(spec: &CoinSpec, min: f64, max: f64) -> Result<f64, CoinError> {
    let delta = spec.delta.unwrap_or(0.5);
    if !(min..=max).contains(&delta) {
        return Err(CoinError::DeltaOutOfRange {
            family: spec.family,
            delta,
            min,
            max,
        });
    }
    Ok(delta)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn hadamard() -> CoinMatrix {
    let h = FRAC_1_SQRT_2;
    CoinMatrix::from_entries(2, vec![real(h), real(h), real(h), real(-h)])
}

fn biased_hadamard(delta: f64) -> CoinMatrix {
    let on = delta.sqrt();
    let off = (1.0 - delta).sqrt();
    CoinMatrix::from_entries(2, vec![real(on), real(off), real(off), real(-on)])
}

fn symmetric_hadamard(delta: f64) -> CoinMatrix {
    let on = real(delta.sqrt());
    let off = Complex64::new(0.0, (1.0 - delta).sqrt());
    CoinMatrix::from_entries(2, vec![on, off, off, on])
}

fn sigma_x() -> CoinMatrix {
    CoinMatrix::from_entries(2, vec![real(0.0), real(1.0), real(1.0), real(0.0)])
}

fn grover(d: usize) -> CoinMatrix {
    let off = 2.0 / d as f64;
    let mut entries = vec![real(off); d * d];
    for i in 0..d {
        entries[i * d + i] = real(off - 1.0);
    }
    CoinMatrix::from_entries(d, entries)
}

/// Symmetric unitary with diagonal `delta` and constant off-diagonal `a + ib`.
/// Unitarity pins `|a+ib|^2 = (1-delta^2)/(d-1)` (row norm) and
/// `2 delta a + (d-2)|a+ib|^2 = 0` (row orthogonality); the positive branch
/// of `b` is taken. `b^2 >= 0` forces `delta >= 1 - 2/d`, so on degree 4 the
/// admissible range is exactly `[0.5, 1]`.
fn biased_grover(d: usize, delta: f64) -> Result<CoinMatrix, CoinError> {
    if delta > 1.0 {
        return Err(CoinError::DeltaOutOfRange {
            family: CoinFamily::BiasedGrover,
            delta,
            min: 0.5,
            max: 1.0,
        });
    }
    if delta < 0.5 {
        return Err(CoinError::BiasedGroverDeltaBelowHalf { delta });
    }
    if d == 1 {
        return if delta == 1.0 {
            Ok(CoinMatrix::identity(1))
        } else {
            Err(CoinError::NoUnitaryCompletion { degree: 1, delta })
        };
    }
    let rest = d as f64 - 1.0;
    let off_norm_sq = (1.0 - delta * delta) / rest;
    let a = if d == 2 {
        0.0
    } else {
        -((d - 2) as f64) * (1.0 - delta * delta) / (2.0 * delta * rest)
    };
    let b_sq = off_norm_sq - a * a;
    if b_sq < -1e-12 {
        return Err(CoinError::NoUnitaryCompletion { degree: d, delta });
    }
    let off = Complex64::new(a, b_sq.max(0.0).sqrt());
    let mut entries = vec![off; d * d];
    for i in 0..d {
        entries[i * d + i] = real(delta);
    }
    Ok(CoinMatrix::from_entries(d, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn assert_close(got: Complex64, want: Complex64) {
        assert!(
            (got - want).norm() <= TOL,
            "got {got}, want {want}"
        );
    }

    fn spec(family: CoinFamily, degree: usize) -> CoinSpec {
        CoinSpec::new(family, degree)
    }

    #[test]
    fn hadamard_matrix() {
        let m = realize_coin(&spec(CoinFamily::Hadamard, 2)).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_close(m.entry(0, 0), real(h));
        assert_close(m.entry(0, 1), real(h));
        assert_close(m.entry(1, 0), real(h));
        assert_close(m.entry(1, 1), real(-h));
    }

    #[test]
    fn grover_4_has_half_entries() {
        let m = realize_coin(&spec(CoinFamily::Grover, 4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { -0.5 } else { 0.5 };
                assert_close(m.entry(i, j), real(want));
            }
        }
    }

    #[test]
    fn grover_3_thirds() {
        let m = realize_coin(&spec(CoinFamily::Grover, 3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { -1.0 / 3.0 } else { 2.0 / 3.0 };
                assert_close(m.entry(i, j), real(want));
            }
        }
    }

    #[test]
    fn grover_2_is_sigma_x() {
        let g = realize_coin(&spec(CoinFamily::Grover, 2)).unwrap();
        let x = realize_coin(&spec(CoinFamily::SigmaX, 2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_close(g.entry(i, j), x.entry(i, j));
            }
        }
    }

    #[test]
    fn grover_8_quarters() {
        let m = realize_coin(&spec(CoinFamily::Grover, 8)).unwrap();
        assert_close(m.entry(0, 0), real(-0.75));
        assert_close(m.entry(0, 7), real(0.25));
        assert!(check_unitary(&m, TOL));
    }

    #[test]
    fn grover_is_involution() {
        for d in 1..=8 {
            let g = realize_coin(&spec(CoinFamily::Grover, d)).unwrap();
            let sq = g.matmul(&g);
            let id = CoinMatrix::identity(d);
            for i in 0..d {
                for j in 0..d {
                    assert_close(sq.entry(i, j), id.entry(i, j));
                }
            }
        }
    }

    #[test]
    fn biased_hadamard_endpoints() {
        // delta = 0.5 is the plain Hadamard, delta = 0 the spin flip,
        // delta = 1 the sigma_z matrix.
        let h = realize_coin(&spec(CoinFamily::BiasedHadamard, 2).with_delta(0.5)).unwrap();
        let plain = realize_coin(&spec(CoinFamily::Hadamard, 2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_close(h.entry(i, j), plain.entry(i, j));
            }
        }
        let flip = realize_coin(&spec(CoinFamily::BiasedHadamard, 2).with_delta(0.0)).unwrap();
        let x = realize_coin(&spec(CoinFamily::SigmaX, 2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_close(flip.entry(i, j), x.entry(i, j));
            }
        }
        let z = realize_coin(&spec(CoinFamily::BiasedHadamard, 2).with_delta(1.0)).unwrap();
        assert_close(z.entry(0, 0), real(1.0));
        assert_close(z.entry(1, 1), real(-1.0));
        assert_close(z.entry(0, 1), real(0.0));
    }

    #[test]
    fn symmetric_hadamard_at_half() {
        let m = realize_coin(&spec(CoinFamily::SymmetricHadamard, 2)).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_close(m.entry(0, 0), real(h));
        assert_close(m.entry(0, 1), Complex64::new(0.0, h));
        assert_close(m.entry(1, 0), Complex64::new(0.0, h));
        assert_close(m.entry(1, 1), real(h));
    }

    #[test]
    fn negated_families() {
        let h = realize_coin(&spec(CoinFamily::Hadamard, 2)).unwrap();
        let nh = realize_coin(&spec(CoinFamily::NegatedHadamard, 2)).unwrap();
        let s = realize_coin(&spec(CoinFamily::SymmetricHadamard, 2).with_delta(0.3)).unwrap();
        let ns = realize_coin(&spec(CoinFamily::NegatedSymmetric, 2).with_delta(0.3)).unwrap();
        let g = realize_coin(&spec(CoinFamily::Grover, 5)).unwrap();
        let mg = realize_coin(&spec(CoinFamily::MarkedGrover, 5)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_close(nh.entry(i, j), -h.entry(i, j));
                assert_close(ns.entry(i, j), -s.entry(i, j));
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                assert_close(mg.entry(i, j), -g.entry(i, j));
            }
        }
    }

    #[test]
    fn phased_marked_grover_phase_relation() {
        // phi = 0 is the marked coin itself; phi = pi negates it entrywise,
        // recovering the plain diffusion coin.
        let at_zero = realize_coin(&spec(CoinFamily::PhasedMarkedGrover, 4).with_phi(0.0)).unwrap();
        let at_pi = realize_coin(&spec(CoinFamily::PhasedMarkedGrover, 4).with_phi(PI)).unwrap();
        let marked = realize_coin(&spec(CoinFamily::MarkedGrover, 4)).unwrap();
        let plain = realize_coin(&spec(CoinFamily::Grover, 4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_close(at_zero.entry(i, j), marked.entry(i, j));
                assert_close(at_pi.entry(i, j), -at_zero.entry(i, j));
                assert_close(at_pi.entry(i, j), plain.entry(i, j));
            }
        }
    }

    #[test]
    fn biased_grover_endpoints() {
        let at_half = realize_coin(&spec(CoinFamily::BiasedGrover, 4).with_delta(0.5)).unwrap();
        let marked = realize_coin(&spec(CoinFamily::MarkedGrover, 4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_close(at_half.entry(i, j), marked.entry(i, j));
            }
        }
        let at_one = realize_coin(&spec(CoinFamily::BiasedGrover, 4).with_delta(1.0)).unwrap();
        let id = CoinMatrix::identity(4);
        for i in 0..4 {
            for j in 0..4 {
                assert_close(at_one.entry(i, j), id.entry(i, j));
            }
        }
    }

    #[test]
    fn biased_grover_at_0_8() {
        // Solving the row-norm and row-orthogonality constraints at
        // delta = 0.8 on degree 4 gives a = -(1 - delta^2)/(3 delta) = -0.15
        // and b = sqrt((1 - delta^2)/3 - a^2) = sqrt(0.0975).
        let m = realize_coin(&spec(CoinFamily::BiasedGrover, 4).with_delta(0.8)).unwrap();
        let want_off = Complex64::new(-0.15, 0.0975f64.sqrt());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { real(0.8) } else { want_off };
                assert_close(m.entry(i, j), want);
            }
        }
        assert!((want_off.im - 0.31225).abs() < 1e-4);
        // Independent unitarity oracle: direct matrix multiply.
        let product = m.adjoint().matmul(&m);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_close(product.entry(i, j), real(want));
            }
        }
    }

    #[test]
    fn biased_grover_continuity_in_delta() {
        let steps = 200;
        let mut prev: Option<CoinMatrix> = None;
        for k in 0..=steps {
            let delta = 0.5 + 0.5 * k as f64 / steps as f64;
            let m = realize_coin(&spec(CoinFamily::BiasedGrover, 4).with_delta(delta)).unwrap();
            assert!(check_unitary(&m, TOL), "not unitary at delta = {delta}");
            // The off-diagonal imaginary part grows like sqrt(delta - 1/2)
            // near the lower endpoint, so adjacent steps differ most there.
            if let Some(p) = prev {
                for i in 0..4 {
                    for j in 0..4 {
                        assert!(
                            (m.entry(i, j) - p.entry(i, j)).norm() < 0.1,
                            "entry jump at delta = {delta}"
                        );
                    }
                }
            }
            prev = Some(m);
        }
    }

    #[test]
    fn all_valid_specs_are_unitary() {
        let mut specs = vec![
            spec(CoinFamily::Hadamard, 2),
            spec(CoinFamily::SigmaX, 2),
            spec(CoinFamily::NegatedHadamard, 2),
            spec(CoinFamily::Identity, 4),
            spec(CoinFamily::Identity, 1),
        ];
        for d in 1..=8 {
            specs.push(spec(CoinFamily::Grover, d));
            specs.push(spec(CoinFamily::MarkedGrover, d));
        }
        for k in 0..=10 {
            let delta = k as f64 / 10.0;
            specs.push(spec(CoinFamily::BiasedHadamard, 2).with_delta(delta));
            specs.push(spec(CoinFamily::SymmetricHadamard, 2).with_delta(delta));
            specs.push(spec(CoinFamily::NegatedSymmetric, 2).with_delta(delta));
            specs.push(spec(CoinFamily::PhasedMarkedGrover, 4).with_phi(PI * k as f64 / 10.0));
            if delta >= 0.5 {
                specs.push(spec(CoinFamily::BiasedGrover, 4).with_delta(delta));
                specs.push(spec(CoinFamily::BiasedGrover, 3).with_delta(delta));
                specs.push(spec(CoinFamily::BiasedGrover, 2).with_delta(delta));
            }
        }
        specs.push(spec(CoinFamily::BiasedGrover, 4).with_delta(0.73));
        for s in &specs {
            let m = realize_coin(s).unwrap();
            assert!(check_unitary(&m, TOL), "not unitary: {s:?}");
        }
    }

    #[test]
    fn non_unitary_matrix_rejected() {
        let m = CoinMatrix::from_entries(4, vec![real(0.5); 16]);
        assert!(!check_unitary(&m, 1e-12));
    }

    #[test]
    fn domain_errors() {
        let err = realize_coin(&spec(CoinFamily::BiasedGrover, 4).with_delta(0.3)).unwrap_err();
        assert_eq!(err, CoinError::BiasedGroverDeltaBelowHalf { delta: 0.3 });

        let err = realize_coin(&spec(CoinFamily::BiasedGrover, 4).with_delta(1.2)).unwrap_err();
        assert!(matches!(err, CoinError::DeltaOutOfRange { .. }));

        let err = realize_coin(&spec(CoinFamily::BiasedHadamard, 2).with_delta(-0.1)).unwrap_err();
        assert!(matches!(err, CoinError::DeltaOutOfRange { .. }));

        let err = realize_coin(&spec(CoinFamily::PhasedMarkedGrover, 4).with_phi(3.5)).unwrap_err();
        assert_eq!(err, CoinError::PhiOutOfRange { phi: 3.5 });

        let err = realize_coin(&spec(CoinFamily::PhasedMarkedGrover, 4).with_phi(-0.1)).unwrap_err();
        assert!(matches!(err, CoinError::PhiOutOfRange { .. }));

        let err = realize_coin(&spec(CoinFamily::Hadamard, 4)).unwrap_err();
        assert_eq!(
            err,
            CoinError::DegreeMismatch { family: CoinFamily::Hadamard, expected: 2, got: 4 }
        );

        let err = realize_coin(&spec(CoinFamily::Grover, 0)).unwrap_err();
        assert_eq!(err, CoinError::ZeroDegree);
    }

    #[test]
    fn spec_json_round_trip() {
        let s = spec(CoinFamily::BiasedGrover, 4).with_delta(0.7);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"family":"biased_grover","degree":4,"delta":0.7}"#);
        let back: CoinSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);

        let parsed: CoinSpec =
            serde_json::from_str(r#"{"family":"grover","degree":3}"#).unwrap();
        assert_eq!(parsed, spec(CoinFamily::Grover, 3));
    }
}
