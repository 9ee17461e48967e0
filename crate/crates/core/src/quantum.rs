//! State-vector simulation of the trace-estimation and teleportation
//! processes built on the generalized EPR state `|delta> = sum_a |a, a>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{catalog, entangle};
use crate::par::{self, Execution};
use crate::tensor::{Complex, ComplexMatrix, Tolerance, ONE, ZERO};

/// Largest `n` for `|delta>` on `2n` qubits.
pub const MAX_DELTA_QUBITS: usize = 10;
/// Largest `n` for teleporting an `n`-qubit unitary.
pub const MAX_TELEPORT_QUBITS: usize = 3;
/// Largest `n` for the literal `3n`-qubit contraction in [`measure_apply`].
pub const MAX_CONTRACTION_QUBITS: usize = 6;

const UNITARY_TOL: f64 = 1e-10;
const SHOTS_PER_CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Parse(format!("state length {len} is not 2^n with n >= 1")));
        }
        if let Some(i) = amplitudes.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(StateVector { n_qubits: len.trailing_zeros() as usize, amplitudes })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut amps = vec![ZERO; 1 << n_qubits];
        *amps.get_mut(index).ok_or(Error::StrandOutOfRange { index, n_strands: 1 << n_qubits })? = ONE;
        Self::new(amps)
    }

    /// `[[re, im], ...]`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: Vec<[f64; 2]> = serde_json::from_str(s)?;
        Self::new(raw.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.amplitudes.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sq().sqrt();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(StateVector { n_qubits: self.n_qubits, amplitudes: self.amplitudes.iter().map(|z| z / n).collect() })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch { left: self.amplitudes.len(), right: other.amplitudes.len() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn apply(&self, m: &ComplexMatrix) -> Result<Self> {
        Self::new(m.apply(&self.amplitudes)?)
    }

    /// Fit a unit phase with `self ~ phase * other`; returns `(max residual, phase)`.
    pub fn distance_up_to_phase(&self, other: &Self) -> Result<(f64, Complex)> {
        let ip = other.inner(self)?;
        let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { ONE };
        let res =
            self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - phase * b).norm()).fold(0.0, f64::max);
        Ok((res, phase))
    }
}

/// Unnormalized `|delta>` on `2n` qubits: amplitude one on every `|a, a>`.
pub fn make_delta(n: usize) -> Result<StateVector> {
    if n == 0 || n > MAX_DELTA_QUBITS {
        return Err(Error::Guard { what: "delta qubits", value: n, limit: MAX_DELTA_QUBITS });
    }
    let dim = 1usize << n;
    let mut amps = vec![ZERO; dim * dim];
    for a in 0..dim {
        amps[a * dim + a] = ONE;
    }
    StateVector::new(amps)
}

pub fn make_delta_normalized(n: usize) -> Result<StateVector> {
    make_delta(n)?.normalized()
}

fn qubits_of(u: &ComplexMatrix) -> Result<usize> {
    match u.qubits() {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(Error::WrongDimension { expected: 2, actual: u.dim() }),
    }
}

/// `<delta| (U (x) I) |delta>` by contracting against the explicit `|delta>`.
/// Checked against `tr U`.
pub fn trace_amplitude(u: &ComplexMatrix) -> Result<Complex> {
    let n = qubits_of(u)?;
    let delta = make_delta(n)?;
    let dim = u.dim();
    // (U (x) I)|delta> as a dim x dim array: w[i, j] = sum_k U[i, k] delta[k, j].
    let d = delta.amplitudes();
    let amp: Complex = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| {
            let w: Complex = (0..dim).map(|k| u.get(i, k) * d[k * dim + j]).sum();
            d[i * dim + j].conj() * w
        })
        .sum();
    let tr = u.trace();
    if (amp - tr).norm() > 1e-12 * (dim as f64).max(1.0) {
        return Err(Error::SelfCheck(format!("contraction {amp} differs from trace {tr}")));
    }
    Ok(amp)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSample {
    /// `|tr U|^2 / 4^n`.
    pub exact_p: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub shots: u64,
    pub seed: u64,
    /// `|tr U|` recovered from the exact amplitude.
    pub abs_trace: f64,
}

/// Success probability of measuring `(U (x) I)|delta^>` along `|delta^>`,
/// computed exactly and then sampled `shots` times.
///
/// Shots are drawn in fixed chunks, each from its own ChaCha8 stream of the
/// given seed, so the estimate does not depend on the execution mode.
pub fn sample_trace_probability(u: &ComplexMatrix, shots: u64, seed: u64) -> Result<TraceSample> {
    sample_trace_probability_with(u, shots, seed, Execution::default())
}

pub fn sample_trace_probability_with(u: &ComplexMatrix, shots: u64, seed: u64, exec: Execution) -> Result<TraceSample> {
    if shots == 0 {
        return Err(Error::Parse("shots must be at least 1".into()));
    }
    u.ensure_unitary(Tolerance::new(UNITARY_TOL)?)?;
    let n = qubits_of(u)?;
    let amp = trace_amplitude(u)? / (1u64 << n) as f64;
    let p = amp.norm_sqr().min(1.0);
    let chunks = shots.div_ceil(SHOTS_PER_CHUNK);
    let hits = par::sum_range(exec, chunks as usize, 0u64, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let take = SHOTS_PER_CHUNK.min(shots - c as u64 * SHOTS_PER_CHUNK);
        (0..take).filter(|_| rng.random::<f64>() < p).count() as u64
    });
    let estimate = hits as f64 / shots as f64;
    Ok(TraceSample {
        exact_p: p,
        estimate,
        stderr: (estimate * (1.0 - estimate) / shots as f64).sqrt(),
        shots,
        seed,
        abs_trace: amp.norm() * (1u64 << n) as f64,
    })
}

/// The functional `<M| = sum M[a, b] <a|<b|` on two copies of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementFunctional {
    m: ComplexMatrix,
}

impl MeasurementFunctional {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        qubits_of(&m)?;
        Ok(MeasurementFunctional { m })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measured {
    /// `M^T |psi>`, unnormalized.
    pub out: StateVector,
    /// Born probability of this outcome for normalized `<M|` and `|psi>|delta^>`.
    pub prob: f64,
}

/// Apply `<M|` to the first two factors of `|psi>|delta>`.
///
/// The closed form `M^T psi` is checked against the literal contraction
/// `out[l] = sum_{a,b} M[a,b] (psi (x) delta)[a, b, l]`.
pub fn measure_apply(m: &MeasurementFunctional, psi: &StateVector) -> Result<Measured> {
    let n = qubits_of(&m.m)?;
    if psi.n_qubits() != n {
        return Err(Error::DimensionMismatch { left: m.m.dim(), right: psi.amplitudes().len() });
    }
    if n > MAX_CONTRACTION_QUBITS {
        return Err(Error::Guard { what: "measurement qubits", value: n, limit: MAX_CONTRACTION_QUBITS });
    }
    let closed = psi.apply(&m.m.transpose())?;

    let dim = 1usize << n;
    let delta = make_delta(n)?;
    let full: Vec<Complex> =
        psi.amplitudes().iter().flat_map(|p| delta.amplitudes().iter().map(move |d| p * d)).collect();
    let contracted: Vec<Complex> = (0..dim)
        .map(|l| {
            (0..dim)
                .flat_map(|a| (0..dim).map(move |b| (a, b)))
                .map(|(a, b)| m.m.get(a, b) * full[(a * dim + b) * dim + l])
                .sum()
        })
        .collect();
    let scale = m.m.max_abs() * psi.amplitudes().iter().map(|z| z.norm()).fold(0.0, f64::max) * dim as f64;
    let gap = closed.amplitudes().iter().zip(&contracted).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if gap > 1e-12 * scale.max(1.0) {
        return Err(Error::SelfCheck(format!("closed form and contraction differ by {gap:.3e}")));
    }

    let denom = m.m.frobenius_sq() * dim as f64 * psi.norm_sq();
    if denom == 0.0 {
        return Err(Error::ZeroVector);
    }
    let prob = closed.norm_sq() / denom;
    Ok(Measured { out: closed, prob })
}

/// The modified Paulis `T_00 = I, T_01 = X, T_10 = Y, T_11 = Z`.
pub fn pauli_t(alpha: u8, beta: u8) -> ComplexMatrix {
    match (alpha & 1, beta & 1) {
        (0, 0) => ComplexMatrix::identity(2),
        (0, 1) => catalog::x_tele(),
        (1, 0) => catalog::y_tele(),
        _ => catalog::z_tele(),
    }
}

/// `T_{alpha,beta}` on `n` qubits; bit `k` of each string (most significant
/// first) selects the factor on qubit `k + 1`.
pub fn pauli_t_string(n: usize, alpha: usize, beta: usize) -> ComplexMatrix {
    (0..n).fold(ComplexMatrix::identity(1), |acc, k| {
        let shift = n - 1 - k;
        acc.kron(&pauli_t(((alpha >> shift) & 1) as u8, ((beta >> shift) & 1) as u8))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisCheck {
    pub orthogonal: bool,
    /// Gram matrix of the measuring states for `M, XM, YM, ZM`.
    pub gram: ComplexMatrix,
}

/// Are the measuring states of `M, XM, YM, ZM` mutually orthogonal?
/// Off-diagonal Gram entries are compared to `tol` times the largest diagonal entry.
pub fn basis_orthogonality(m: &ComplexMatrix, tol: Tolerance) -> Result<BasisCheck> {
    if m.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, actual: m.dim() });
    }
    let states: Vec<ComplexMatrix> =
        [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(a, b)| pauli_t(a, b).matmul(m)).collect::<Result<_>>()?;
    let gram = ComplexMatrix::from_fn(4, |i, j| {
        states[i].entries().iter().zip(states[j].entries()).map(|(x, y)| x.conj() * y).sum()
    });
    let diag = (0..4).map(|i| gram.get(i, i).norm()).fold(0.0, f64::max);
    let off = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| gram.get(i, j).norm())
        .fold(0.0, f64::max);
    Ok(BasisCheck { orthogonal: diag > 0.0 && off <= tol.eps() * diag, gram })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeleportReport {
    pub n_qubits: usize,
    pub alpha: usize,
    pub beta: usize,
    /// `alpha` then `beta`, most significant bit first (`2n` bits).
    pub classical_bits: String,
    pub outcome_probability: f64,
    pub received: StateVector,
    pub phase: Complex,
    pub residual: f64,
    pub recovered: bool,
}

/// Born probabilities of the `4^n` outcomes, indexed `alpha * 2^n + beta`.
pub fn teleport_outcome_probabilities(u: &ComplexMatrix, psi: &StateVector) -> Result<Vec<f64>> {
    let n = check_teleport_inputs(u, psi)?;
    let dim = 1usize << n;
    (0..dim * dim).map(|k| Ok(measure_apply(&outcome_functional(n, u, k / dim, k % dim)?, psi)?.prob)).collect()
}

fn check_teleport_inputs(u: &ComplexMatrix, psi: &StateVector) -> Result<usize> {
    let n = qubits_of(u)?;
    if n > MAX_TELEPORT_QUBITS {
        return Err(Error::Guard { what: "teleported qubits", value: n, limit: MAX_TELEPORT_QUBITS });
    }
    u.ensure_unitary(Tolerance::new(UNITARY_TOL)?)?;
    if psi.n_qubits() != n {
        return Err(Error::DimensionMismatch { left: u.dim(), right: psi.amplitudes().len() });
    }
    Ok(n)
}

/// The functional whose measured output is `T_{alpha,beta} U psi`.
fn outcome_functional(n: usize, u: &ComplexMatrix, alpha: usize, beta: usize) -> Result<MeasurementFunctional> {
    MeasurementFunctional::new(pauli_t_string(n, alpha, beta).matmul(u)?.transpose())
}

/// Teleport the action of `u` onto `psi`.
///
/// An outcome `(alpha, beta)` is drawn with its exact Born probability.
/// Bob holds `T_{alpha,beta} U psi` and undoes `T` with its inverse.
pub fn teleport_protocol(u: &ComplexMatrix, psi: &StateVector, seed: u64) -> Result<TeleportReport> {
    let n = check_teleport_inputs(u, psi)?;
    let psi = psi.normalized()?;
    let probs = teleport_outcome_probabilities(u, &psi)?;
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::SelfCheck(format!("outcome probabilities sum to {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut pick = probs.len() - 1;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if draw < acc {
            pick = k;
            break;
        }
    }
    let dim = 1usize << n;
    let (alpha, beta) = (pick / dim, pick % dim);
    let measured = measure_apply(&outcome_functional(n, u, alpha, beta)?, &psi)?;
    let correction = pauli_t_string(n, alpha, beta).inverse()?;
    let received = measured.out.normalized()?.apply(&correction)?;
    let target = psi.apply(u)?;
    let (residual, phase) = received.distance_up_to_phase(&target)?;
    Ok(TeleportReport {
        n_qubits: n,
        alpha,
        beta,
        classical_bits: format!("{alpha:0n$b}{beta:0n$b}"),
        outcome_probability: probs[pick],
        received,
        phase,
        residual,
        recovered: residual <= Tolerance::PHASE.eps(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Projection {
    /// Remaining `n - 1` qubits, normalized.
    pub residual: StateVector,
    pub prob: f64,
    /// Entanglement of the residual, reported for 3-qubit inputs only.
    pub entangled: Option<bool>,
}

/// Project qubit `k` (1-based, most significant first) onto `|bit>`.
pub fn project_qubit(psi: &StateVector, k: usize, bit: u8) -> Result<Projection> {
    let n = psi.n_qubits();
    if n < 2 {
        return Err(Error::WrongDimension { expected: 4, actual: psi.amplitudes().len() });
    }
    if k == 0 || k > n {
        return Err(Error::StrandOutOfRange { index: k, n_strands: n });
    }
    if bit > 1 {
        return Err(Error::Parse(format!("bit must be 0 or 1, got {bit}")));
    }
    let shift = n - k;
    let total = psi.norm_sq();
    if total == 0.0 {
        return Err(Error::ZeroVector);
    }
    let kept: Vec<Complex> = (0..1usize << (n - 1))
        .map(|r| {
            let hi = (r >> shift) << (shift + 1);
            let lo = r & ((1 << shift) - 1);
            psi.amplitudes()[hi | ((bit as usize) << shift) | lo]
        })
        .collect();
    let mass: f64 = kept.iter().map(|z| z.norm_sqr()).sum();
    let prob = mass / total;
    if prob <= 1e-15 {
        return Err(Error::ZeroProbability);
    }
    let residual = StateVector::new(kept)?.normalized()?;
    let entangled =
        if n == 3 { Some(entangle::state_is_entangled(residual.amplitudes(), Tolerance::PHASE)?) } else { None };
    Ok(Projection { residual, prob, entangled })
}

/// `(|000> + |001> + |101> + |110>) / 2`.
pub fn aravind_state() -> StateVector {
    let mut amps = vec![ZERO; 8];
    for i in [0b000, 0b001, 0b101, 0b110] {
        amps[i] = Complex::new(0.5, 0.0);
    }
    StateVector::new(amps).expect("eight amplitudes")
}

/// `(|0..0> + |1..1>) / sqrt 2`.
pub fn ghz_state(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::WrongDimension { expected: 4, actual: 1 << n });
    }
    let mut amps = vec![ZERO; 1 << n];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = Complex::new(s, 0.0);
    amps[(1 << n) - 1] = Complex::new(s, 0.0);
    StateVector::new(amps)
}

/// A seeded random unitary: Gram-Schmidt on uniformly drawn complex columns.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex> =
            (0..dim).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        for _ in 0..2 {
            for c in &cols {
                let ip: Complex = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= ip * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// A seeded random normalized state on `n` qubits.
pub fn random_state(n: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps =
        (0..1usize << n).map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    StateVector::new(amps).and_then(|s| s.normalized()).expect("nonzero with probability one")
}
