//! Dense statevector reference used to cross-check the symbolic code paths.
//!
//! Qubit `q` is bit `q` of the basis-state index. Nothing here consults the
//! stabilizer formalism: states are built gate by gate and Pauli operators are
//! applied as explicit matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2linalg::BinaryMatrix;
use crate::graph::SimpleGraph;
use crate::graphcode::GraphCode;
use crate::graphstate::{lc_operator, LcGate, LocalCliffordOp};
use crate::pauli::PauliOperator;

/// Largest register the oracle will allocate.
pub const MAX_ORACLE_QUBITS: usize = 14;

/// Tolerance for identities that hold exactly up to rounding.
pub const TOLERANCE: f64 = 1e-10;

type Gate = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_size(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooLarge {
            what,
            n,
            max: MAX_ORACLE_QUBITS,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        check_size("state vector", n)?;
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(Self { n, amps })
    }

    /// `|+⟩^{⊗n}`.
    pub fn plus(n: usize) -> Result<Self> {
        check_size("state vector", n)?;
        let a = Complex64::new((1u64 << n) as f64, 0.0).sqrt().inv();
        Ok(Self {
            n,
            amps: vec![a; 1 << n],
        })
    }

    /// Computational basis state with qubit `q` set to `bits[q]`.
    pub fn basis(bits: &[u8]) -> Result<Self> {
        let mut s = Self::zero(bits.len())?;
        let index = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (q, &b)| acc | ((b as usize & 1) << q));
        s.amps[0] = ZERO;
        s.amps[index] = ONE;
        Ok(s)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let n = amps.len().trailing_zeros() as usize;
        check_size("state vector", n)?;
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() < TOLERANCE
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if norm < TOLERANCE {
            return Err(Error::EmptySector);
        }
        for a in &mut self.amps {
            *a /= norm;
        }
        Ok(self)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|` for normalized states; global phase is ignored.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    fn same_size(&self, other: &StateVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "states on {} and {} qubits",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        self.same_size(other)?;
        Ok(StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `self ⊗ other`, with `self` on the low qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_size("state vector", self.n + other.n)?;
        let mut amps = vec![ZERO; 1 << (self.n + other.n)];
        for (j, b) in other.amps.iter().enumerate() {
            for (i, a) in self.amps.iter().enumerate() {
                amps[i | (j << self.n)] = a * b;
            }
        }
        Ok(StateVector {
            n: self.n + other.n,
            amps,
        })
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::DimensionMismatch(format!(
                "qubit {q} outside a {}-qubit register",
                self.n
            )));
        }
        Ok(())
    }

    /// Applies a 2×2 matrix to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: &Gate) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        self.apply_single(q, &[[h, h], [h, -h]])
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        self.apply_single(q, &[[ZERO, ONE], [ONE, ZERO]])
    }

    /// `CZ|a⟩|b⟩ = (−1)^{ab}|a⟩|b⟩`.
    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
        Ok(())
    }
}

pub fn build_graph_state(g: &SimpleGraph) -> Result<StateVector> {
    let n = g.num_vertices();
    check_size("graph state", n)?;
    let mut s = StateVector::plus(n)?;
    for (a, b) in g.edges() {
        s.apply_cz(a, b)?;
    }
    Ok(s)
}

fn letter_gate(x: bool, z: bool) -> Gate {
    // X^x Z^z as a matrix, before any global phase.
    match (x, z) {
        (false, false) => [[ONE, ZERO], [ZERO, ONE]],
        (true, false) => [[ZERO, ONE], [ONE, ZERO]],
        (false, true) => [[ONE, ZERO], [ZERO, -ONE]],
        // X·Z = [[0, -1], [1, 0]]
        (true, true) => [[ZERO, -ONE], [ONE, ZERO]],
    }
}

/// Applies `i^phase · ∏ X^x Z^z` factor by factor.
pub fn apply_pauli(s: &StateVector, p: &PauliOperator) -> Result<StateVector> {
    if p.num_qubits() != s.n {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit Pauli on a {}-qubit state",
            p.num_qubits(),
            s.n
        )));
    }
    let mut out = s.clone();
    for q in 0..s.n {
        let (x, z) = (p.x_bits().get(q), p.z_bits().get(q));
        if x || z {
            out.apply_single(q, &letter_gate(x, z))?;
        }
    }
    Ok(out.scale(I.powi(p.phase() as i32)))
}

/// Applies `p` on the branch where qubit `control` is 1.
pub fn apply_controlled_pauli(
    s: &StateVector,
    control: usize,
    p: &PauliOperator,
) -> Result<StateVector> {
    s.check_qubit(control)?;
    if p.x_bits().get(control) || p.z_bits().get(control) {
        return Err(Error::DimensionMismatch(
            "target overlaps the control qubit".into(),
        ));
    }
    let full = apply_pauli(s, p)?;
    let bit = 1usize << control;
    let amps = s
        .amps
        .iter()
        .zip(&full.amps)
        .enumerate()
        .map(|(i, (a, b))| if i & bit == 0 { *a } else { *b })
        .collect();
    Ok(StateVector { n: s.n, amps })
}

/// `cos(π/4) I ± i sin(π/4) σ`.
fn lc_gate_matrix(gate: LcGate) -> Gate {
    let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let (sigma, sign) = match gate {
        LcGate::SqrtMinusIX => (letter_gate(true, false), -1.0),
        LcGate::SqrtPlusIZ => (letter_gate(false, true), 1.0),
    };
    let mut m = [[ZERO; 2]; 2];
    for r in 0..2 {
        for k in 0..2 {
            let id = if r == k { ONE } else { ZERO };
            m[r][k] = c * id + I * sign * c * sigma[r][k];
        }
    }
    m
}

pub fn apply_local_clifford(s: &StateVector, op: &LocalCliffordOp) -> Result<StateVector> {
    let mut out = s.clone();
    for &(q, gate) in op.factors() {
        out.apply_single(q, &lc_gate_matrix(gate))?;
    }
    Ok(out)
}

/// `∏_i (I + (−1)^{c_i} Z̄_i)/2 · s` without renormalising.
pub fn project_logical_unnormalized(
    s: &StateVector,
    logical_z: &[PauliOperator],
    outcomes: &[u8],
) -> Result<StateVector> {
    if outcomes.len() != logical_z.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} outcomes for {} logical operators",
            outcomes.len(),
            logical_z.len()
        )));
    }
    let mut out = s.clone();
    for (z, &c) in logical_z.iter().zip(outcomes) {
        let zs = apply_pauli(&out, z)?;
        let sign = if c & 1 == 0 { 1.0 } else { -1.0 };
        out = out
            .add(&zs.scale(Complex64::new(sign, 0.0)))?
            .scale(Complex64::new(0.5, 0.0));
    }
    Ok(out)
}

/// The logical basis state `|c⟩_L` obtained by projecting `s`, renormalised.
pub fn project_logical(
    s: &StateVector,
    logical_z: &[PauliOperator],
    outcomes: &[u8],
) -> Result<StateVector> {
    project_logical_unnormalized(s, logical_z, outcomes)?.normalized()
}

/// `‖P s − λ s‖`.
pub fn eigen_deviation(s: &StateVector, p: &PauliOperator, eigenvalue: f64) -> Result<f64> {
    apply_pauli(s, p)?.distance(&s.scale(Complex64::new(eigenvalue, 0.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementPolicy {
    /// Post-select the all-zero outcome.
    ForceZero,
    /// Born-rule sampling from a seeded generator.
    Random(u64),
}

/// Measures qubits `0..k` in the computational basis and returns the outcome
/// bits and the normalised state of the remaining qubits. All `2^k`
/// outcomes must be equally likely.
fn measure_low_qubits(
    s: &StateVector,
    k: usize,
    policy: MeasurementPolicy,
) -> Result<(Vec<u8>, StateVector)> {
    let mask = (1usize << k) - 1;
    let mut probs = vec![0.0; 1 << k];
    for (i, a) in s.amps.iter().enumerate() {
        probs[i & mask] += a.norm_sqr();
    }
    let uniform = 1.0 / (1u64 << k) as f64;
    if let Some((m, p)) = probs
        .iter()
        .enumerate()
        .find(|(_, &p)| (p - uniform).abs() > 1e-9)
    {
        return Err(Error::Internal(format!(
            "measurement outcome {m} has probability {p}, expected {uniform}"
        )));
    }
    let outcome = match policy {
        MeasurementPolicy::ForceZero => 0,
        MeasurementPolicy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r: f64 = rng.gen();
            let mut acc = 0.0;
            probs
                .iter()
                .position(|p| {
                    acc += p;
                    r < acc
                })
                .unwrap_or(probs.len() - 1)
        }
    };
    let amps = s
        .amps
        .iter()
        .enumerate()
        .filter(|(i, _)| i & mask == outcome)
        .map(|(_, a)| *a)
        .collect();
    let rest = StateVector { n: s.n - k, amps }.normalized()?;
    let bits = (0..k).map(|q| ((outcome >> q) & 1) as u8).collect();
    Ok((bits, rest))
}

/// Teleportation-style encoder: `|c⟩ ⊗ |G⟩`, Hadamards on the `k` ancillas,
/// `CZ` between ancilla `i` and output `j` wherever `B[i][j] = 1`, Hadamards
/// again, ancilla measurement, then the correction `∏ X̄_i^{m_i}`.
/// Returns the `n`-qubit output state and the measured bits.
pub fn encode_teleport(
    g: &SimpleGraph,
    b: &BinaryMatrix,
    info_bits: &[u8],
    policy: MeasurementPolicy,
) -> Result<(StateVector, Vec<u8>)> {
    let (k, n) = (b.num_rows(), g.num_vertices());
    check_size("encoder", k + n)?;
    if info_bits.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} information bits for k = {k}",
            info_bits.len()
        )));
    }
    let code = GraphCode::new(g, b.clone())?;
    let mut s = StateVector::basis(info_bits)?.tensor(&build_graph_state(g)?)?;
    for i in 0..k {
        s.apply_h(i)?;
    }
    for i in 0..k {
        for j in b.row(i).iter_ones() {
            s.apply_cz(i, k + j)?;
        }
    }
    for i in 0..k {
        s.apply_h(i)?;
    }
    let (measured, mut data) = measure_low_qubits(&s, k, policy)?;
    for (x, &m) in code.logical_x().iter().zip(&measured) {
        if m == 1 {
            data = apply_pauli(&data, x)?;
        }
    }
    Ok((data, measured))
}

#[derive(Clone, Debug)]
pub struct Transport {
    /// Output state, a codeword of `code2`.
    pub state: StateVector,
    /// Code on the locally complemented graph.
    pub code2: GraphCode,
    /// Intermediate state after undoing the projection; `|G₁⟩` up to phase.
    pub recovered_graph_state: StateVector,
    pub measured: Vec<u8>,
}

/// Moves `|c⟩_L` of `code1` to `|c⟩_L` of the code on `τ_v(G₁)`:
///
/// 1. ancillas `|+⟩^{⊗k}` next to `|c⟩_L`, controlled `X̄_i` from ancilla `i`,
///    Hadamards, ancilla measurement and the correction `∏ Z̄_i^{m_i}`,
///    which yields `|G₁⟩`;
/// 2. `U_v(G₁)`, giving `|τ_v(G₁)⟩`;
/// 3. projection with the logical Z operators of the new code, whose `B` is
///    the echelon kernel basis of `τ_v(G₁)` with the same `k`.
pub fn lc_transport(
    code1: &GraphCode,
    v: usize,
    info_bits: &[u8],
    policy: MeasurementPolicy,
) -> Result<Transport> {
    let (k, n) = (code1.k(), code1.n());
    check_size("transport", k + n)?;
    let g1 = code1.graph();
    let g2 = g1.local_complement(v)?;
    let code2 = GraphCode::derive(&g2, k)?;

    let codeword = project_logical(&build_graph_state(g1)?, code1.logical_z(), info_bits)?;
    let mut s = StateVector::plus(k)?.tensor(&codeword)?;
    for (i, x) in code1.logical_x().iter().enumerate() {
        s = apply_controlled_pauli(&s, i, &x.embed(k + n, k)?)?;
    }
    for i in 0..k {
        s.apply_h(i)?;
    }
    let (measured, mut data) = measure_low_qubits(&s, k, policy)?;
    for (z, &m) in code1.logical_z().iter().zip(&measured) {
        if m == 1 {
            data = apply_pauli(&data, z)?;
        }
    }
    let recovered_graph_state = data.clone();
    let g2_state = apply_local_clifford(&data, &lc_operator(g1, v)?)?;
    let state = project_logical(&g2_state, code2.logical_z(), info_bits)?;
    Ok(Transport {
        state,
        code2,
        recovered_graph_state,
        measured,
    })
}

/// `U_v(G₁)|c⟩_L` applied directly to the codeword, for comparison with
/// [`lc_transport`].
pub fn direct_lc(code1: &GraphCode, v: usize, info_bits: &[u8]) -> Result<StateVector> {
    let codeword = project_logical(
        &build_graph_state(code1.graph())?,
        code1.logical_z(),
        info_bits,
    )?;
    apply_local_clifford(&codeword, &lc_operator(code1.graph(), v)?)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    /// Worst fidelity (or eigenvalue agreement) seen for this check.
    pub fidelity: f64,
}

impl Check {
    fn new(check: impl Into<String>, fidelity: f64) -> Self {
        Self {
            check: check.into(),
            pass: fidelity >= 1.0 - TOLERANCE,
            fidelity,
        }
    }
}

fn all_bit_strings(k: usize) -> impl Iterator<Item = Vec<u8>> {
    (0usize..1 << k).map(move |c| (0..k).map(|i| ((c >> i) & 1) as u8).collect())
}

/// `Re ⟨s|λP|s⟩`, which is 1 exactly when `s` is a `λ`-eigenvector of `P`.
fn eigen_agreement(s: &StateVector, p: &PauliOperator, eigenvalue: f64) -> Result<f64> {
    Ok((s.inner(&apply_pauli(s, p)?)? * eigenvalue).re)
}

/// Runs every oracle identity for `g` with a code of dimension `k` and returns
/// one [`Check`] per identity. `seeds` random measurement seeds, starting at
/// `base_seed`, are used for the encoder in addition to the forced-zero
/// outcome.
pub fn verify_graph(g: &SimpleGraph, k: usize, seeds: u64, base_seed: u64) -> Result<Vec<Check>> {
    let n = g.num_vertices();
    check_size("verification", n + k)?;
    let mut checks = Vec::new();
    let state = build_graph_state(g)?;
    let gens = crate::graphstate::generators(g);

    let mut worst = 1.0f64;
    for kj in gens.generators() {
        worst = worst.min(eigen_agreement(&state, kj, 1.0)?);
    }
    checks.push(Check::new("graph state is fixed by every K_j", worst));

    let mut lc_worst = 1.0f64;
    let mut conj_worst = 1.0f64;
    for v in 0..n {
        let op = lc_operator(g, v)?;
        let moved = apply_local_clifford(&state, &op)?;
        lc_worst = lc_worst.min(build_graph_state(&g.local_complement(v)?)?.fidelity(&moved)?);
        for image in crate::graphstate::conjugate_generators(&gens, &op)? {
            conj_worst = conj_worst.min(eigen_agreement(&moved, &image, 1.0)?);
        }
    }
    checks.push(Check::new("U_v(G)|G> = |tau_v(G)> for every v", lc_worst));
    checks.push(Check::new(
        "conjugated generators fix U_v(G)|G>",
        conj_worst,
    ));

    let code = GraphCode::derive(g, k)?;
    let mut stab_worst = 1.0f64;
    for s in code.stabilizers() {
        stab_worst = stab_worst.min(eigen_agreement(&state, s, 1.0)?);
    }
    for x in code.logical_x() {
        stab_worst = stab_worst.min(eigen_agreement(&state, x, 1.0)?);
    }
    checks.push(Check::new(
        "code stabilizers and logical X fix |G>",
        stab_worst,
    ));

    let mut sum = StateVector {
        n,
        amps: vec![ZERO; 1 << n],
    };
    let mut codeword_worst = 1.0f64;
    let mut logical_x_worst = 1.0f64;
    let mut codewords = Vec::new();
    for c in all_bit_strings(k) {
        let raw = project_logical_unnormalized(&state, code.logical_z(), &c)?;
        sum = sum.add(&raw)?;
        let word = raw.normalized()?;
        for s in code.stabilizers() {
            codeword_worst = codeword_worst.min(eigen_agreement(&word, s, 1.0)?);
        }
        for (z, &ci) in code.logical_z().iter().zip(&c) {
            let lambda = if ci == 0 { 1.0 } else { -1.0 };
            codeword_worst = codeword_worst.min(eigen_agreement(&word, z, lambda)?);
        }
        codewords.push(word);
    }
    for (idx, word) in codewords.iter().enumerate() {
        for (i, x) in code.logical_x().iter().enumerate() {
            let flipped = &codewords[idx ^ (1 << i)];
            logical_x_worst = logical_x_worst.min(flipped.fidelity(&apply_pauli(word, x)?)?);
        }
    }
    let superposition = state.fidelity(&sum)?.min(1.0 - (sum.norm() - 1.0).abs());
    checks.push(Check::new(
        "codewords are fixed by stabilizers with Z-bar eigenvalues (-1)^c",
        codeword_worst,
    ));
    checks.push(Check::new(
        "logical X maps |c>_L to |c xor e_i>_L",
        logical_x_worst,
    ));
    checks.push(Check::new("sum over c of |c>_L equals |G>", superposition));

    let mut enc_worst = 1.0f64;
    for (idx, c) in all_bit_strings(k).enumerate() {
        let policies = std::iter::once(MeasurementPolicy::ForceZero).chain((0..seeds).map(|s| {
            MeasurementPolicy::Random(base_seed.wrapping_add(s * 1_000_003 + idx as u64))
        }));
        for policy in policies {
            let (out, _) = encode_teleport(g, code.b(), &c, policy)?;
            enc_worst = enc_worst.min(out.fidelity(&codewords[idx])?);
        }
    }
    checks.push(Check::new(
        "teleport encoder output equals projected codeword",
        enc_worst,
    ));

    let mut transport_worst = 1.0f64;
    let mut transported = 0;
    for v in 0..n {
        let code2 = match GraphCode::derive(&g.local_complement(v)?, k) {
            Ok(c) => c,
            Err(Error::InsufficientKernel { .. }) => continue,
            Err(e) => return Err(e),
        };
        for (idx, c) in all_bit_strings(k).enumerate() {
            let t = lc_transport(
                &code,
                v,
                &c,
                MeasurementPolicy::Random(base_seed.wrapping_add(idx as u64 + 17 * v as u64)),
            )?;
            for s in code2.stabilizers() {
                transport_worst = transport_worst.min(eigen_agreement(&t.state, s, 1.0)?);
            }
            for (z, &ci) in code2.logical_z().iter().zip(&c) {
                let lambda = if ci == 0 { 1.0 } else { -1.0 };
                transport_worst = transport_worst.min(eigen_agreement(&t.state, z, lambda)?);
            }
            transport_worst = transport_worst.min(t.recovered_graph_state.fidelity(&state)?);
        }
        transported += 1;
    }
    if transported > 0 {
        checks.push(Check::new(
            "transport yields codewords of the complemented code",
            transport_worst,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &StateVector, expected: &[Complex64]) -> bool {
        a.amplitudes()
            .iter()
            .zip(expected)
            .all(|(x, y)| (x - y).norm() < 1e-12)
    }

    #[test]
    fn graph_state_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(
            &build_graph_state(&SimpleGraph::empty(1)).unwrap(),
            &[c(h, 0.0), c(h, 0.0)]
        ));
        let k2 = build_graph_state(&SimpleGraph::path(2)).unwrap();
        assert!(close(
            &k2,
            &[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)]
        ));
        let r5 = build_graph_state(&SimpleGraph::ring(5)).unwrap();
        for kj in ["XZIIZ", "ZXZII", "IZXZI", "IIZXZ", "ZIIZX"] {
            assert!(eigen_deviation(&r5, &p(kj), 1.0).unwrap() < TOLERANCE);
        }
        assert!(matches!(
            build_graph_state(&SimpleGraph::empty(15)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn pauli_action_examples() {
        let zero = StateVector::zero(1).unwrap();
        let one = StateVector::basis(&[1]).unwrap();
        assert!(close(
            &apply_pauli(&zero, &p("X")).unwrap(),
            one.amplitudes()
        ));
        let plus = StateVector::plus(1).unwrap();
        let minus = apply_pauli(&plus, &p("Z")).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&minus, &[c(h, 0.0), c(-h, 0.0)]));
        // Y|0> = i|1>, and the phase convention Y = i·XZ must agree.
        assert!(close(
            &apply_pauli(&zero, &p("Y")).unwrap(),
            &[c(0.0, 0.0), c(0.0, 1.0)]
        ));
        assert!(close(
            &apply_pauli(&zero, &p("-iY")).unwrap(),
            &[c(0.0, 0.0), c(1.0, 0.0)]
        ));
        assert!(apply_pauli(&zero, &p("XX")).is_err());
    }

    #[test]
    fn local_clifford_examples() {
        let zero = StateVector::zero(1).unwrap();
        let rotated =
            apply_local_clifford(&zero, &LocalCliffordOp::new(vec![(0, LcGate::SqrtPlusIZ)]))
                .unwrap();
        let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!(close(&rotated, &[phase, c(0.0, 0.0)]));
        assert!((rotated.fidelity(&zero).unwrap() - 1.0).abs() < TOLERANCE);
        let r5 = SimpleGraph::ring(5);
        let state = build_graph_state(&r5).unwrap();
        let moved = apply_local_clifford(&state, &lc_operator(&r5, 0).unwrap()).unwrap();
        let target = build_graph_state(&r5.local_complement(0).unwrap()).unwrap();
        assert!((moved.fidelity(&target).unwrap() - 1.0).abs() < TOLERANCE);
        assert_eq!(
            apply_local_clifford(&state, &LocalCliffordOp::default()).unwrap(),
            state
        );
    }

    #[test]
    fn projection_examples() {
        let r5 = build_graph_state(&SimpleGraph::ring(5)).unwrap();
        let z = vec![p("ZZZZZ")];
        let zero_l = project_logical(&r5, &z, &[0]).unwrap();
        assert!(eigen_deviation(&zero_l, &z[0], 1.0).unwrap() < TOLERANCE);
        let raw0 = project_logical_unnormalized(&r5, &z, &[0]).unwrap();
        let raw1 = project_logical_unnormalized(&r5, &z, &[1]).unwrap();
        assert!(raw0.add(&raw1).unwrap().distance(&r5).unwrap() < TOLERANCE);
        // Idempotence of the projector.
        let twice = project_logical_unnormalized(&raw0, &z, &[0]).unwrap();
        assert!(twice.distance(&raw0).unwrap() < TOLERANCE);

        let t4 = build_graph_state(&SimpleGraph::star(4)).unwrap();
        let word = project_logical(&t4, &[p("IZZI"), p("IIZZ")], &[0, 0]).unwrap();
        for s in ["XZZZ", "ZXXX", "IZZI", "IIZZ"] {
            assert!(
                eigen_deviation(&word, &p(s), 1.0).unwrap() < TOLERANCE,
                "{s}"
            );
        }
        let zero = StateVector::zero(1).unwrap();
        assert_eq!(
            project_logical(&zero, &[p("Z")], &[1]),
            Err(Error::EmptySector)
        );
        assert!(project_logical(&zero, &[p("Z")], &[0, 1]).is_err());
    }

    #[test]
    fn encoder_examples() {
        let r5 = SimpleGraph::ring(5);
        let b = BinaryMatrix::from_bit_strings(&["11111"]).unwrap();
        let g_state = build_graph_state(&r5).unwrap();
        let z = vec![p("ZZZZZ")];
        let (out, m) = encode_teleport(&r5, &b, &[0], MeasurementPolicy::ForceZero).unwrap();
        assert_eq!(m, vec![0]);
        let zero_l = project_logical(&g_state, &z, &[0]).unwrap();
        assert!((out.fidelity(&zero_l).unwrap() - 1.0).abs() < TOLERANCE);
        let one_l = project_logical(&g_state, &z, &[1]).unwrap();
        for seed in 0..10 {
            let (out, _) = encode_teleport(&r5, &b, &[1], MeasurementPolicy::Random(seed)).unwrap();
            assert!((out.fidelity(&one_l).unwrap() - 1.0).abs() < TOLERANCE);
        }
        let t4 = SimpleGraph::star(4);
        let bt = BinaryMatrix::from_bit_strings(&["0110", "0011"]).unwrap();
        let (out, _) = encode_teleport(&t4, &bt, &[0, 0], MeasurementPolicy::ForceZero).unwrap();
        let word = project_logical(
            &build_graph_state(&t4).unwrap(),
            &[p("IZZI"), p("IIZZ")],
            &[0, 0],
        )
        .unwrap();
        assert!((out.fidelity(&word).unwrap() - 1.0).abs() < TOLERANCE);
        assert!(encode_teleport(&t4, &bt, &[0], MeasurementPolicy::ForceZero).is_err());
    }

    #[test]
    fn random_outcomes_are_seed_dependent() {
        let r5 = SimpleGraph::ring(5);
        let b = BinaryMatrix::from_bit_strings(&["11111"]).unwrap();
        let outcomes: Vec<u8> = (0..20)
            .map(|seed| {
                encode_teleport(&r5, &b, &[0], MeasurementPolicy::Random(seed))
                    .unwrap()
                    .1[0]
            })
            .collect();
        assert!(outcomes.contains(&0) && outcomes.contains(&1));
    }

    #[test]
    fn transport_examples() {
        let code = GraphCode::derive(&SimpleGraph::ring(5), 1).unwrap();
        let t = lc_transport(&code, 0, &[0], MeasurementPolicy::Random(3)).unwrap();
        for s in t.code2.stabilizers() {
            assert!(eigen_deviation(&t.state, s, 1.0).unwrap() < TOLERANCE);
        }
        // A leaf's neighbourhood is a single vertex, so τ_v leaves the star alone.
        let star = GraphCode::derive(&SimpleGraph::star(4), 2).unwrap();
        for c in [[0u8, 0], [1, 0], [0, 1], [1, 1]] {
            let t = lc_transport(&star, 1, &c, MeasurementPolicy::Random(c[0] as u64)).unwrap();
            assert_eq!(t.code2.b(), star.b());
            let word = project_logical(
                &build_graph_state(star.graph()).unwrap(),
                star.logical_z(),
                &c,
            )
            .unwrap();
            assert!((t.state.fidelity(&word).unwrap() - 1.0).abs() < TOLERANCE);
        }
        // τ_0 of the star is K4, whose adjacency matrix is invertible.
        assert!(matches!(
            lc_transport(&star, 0, &[0, 0], MeasurementPolicy::ForceZero),
            Err(Error::InsufficientKernel { .. })
        ));
    }

    #[test]
    fn verify_passes_on_ring_and_star() {
        for (g, k) in [(SimpleGraph::ring(5), 1), (SimpleGraph::star(4), 2)] {
            let report = verify_graph(&g, k, 2, 0).unwrap();
            assert!(report.iter().all(|c| c.pass), "{report:#?}");
        }
    }
}
