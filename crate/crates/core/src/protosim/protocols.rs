//! Encoding, recovery, partial recovery and controlled-U recovery.
//!
//! Every protocol keeps its corrections one-to-one with `-1` outcomes:
//! [`Transcript::corrections`] has one entry per outcome bit equal to 1.

use num_complex::Complex64;
use serde::Serialize;

use super::state::{Outcomes, StateVector};
use super::SimError;
use crate::cws::CwsCode;
use crate::f2core::{F2Vector, PauliWord};
use crate::graphstate::Graph;

pub const MAX_PHYSICAL_QUBITS: usize = 20;
pub const MAX_JOINT_QUBITS: usize = 24;
/// Joint registers above this size need [`SimOptions::allow_heavy`].
pub const HEAVY_JOINT_QUBITS: usize = 22;

/// Residual norms and codespace deficits below this count as zero.
const STATE_TOLERANCE: f64 = 1e-6;

/// When corrections are applied relative to the measurements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionSchedule {
    /// Each correction right after its measurement.
    #[default]
    Interleaved,
    /// All corrections after the last measurement.
    Deferred,
}

/// How recovery returns the physical register to `|G⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryRoute {
    /// Measure every `S_i`, fix `-1` outcomes with `Z_i`, and fix the
    /// recovery qubits with `X` on `-1` outcomes at pivot qubits.
    #[default]
    Literal,
    /// Apply `(I + S_i)/2` for every `i` and renormalize.
    Projector,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SimOptions {
    pub schedule: CorrectionSchedule,
    pub route: RecoveryRoute,
    pub allow_heavy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correction {
    /// Index into [`Transcript::outcomes`].
    pub outcome: usize,
    /// Pauli applied to the physical qubits.
    pub physical: PauliWord,
    /// Letters applied to the input or recovery qubits, one per qubit.
    pub ancilla: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub protocol: String,
    /// What each outcome measured, e.g. `X(in0)` or `S3`.
    pub measured: Vec<String>,
    /// `1` for outcome `-1`.
    pub outcomes: Vec<u8>,
    pub corrections: Vec<Correction>,
    pub seed: Option<u64>,
}

impl Transcript {
    fn new(protocol: &str, outcomes: &Outcomes) -> Self {
        Self {
            protocol: protocol.to_string(),
            measured: Vec::new(),
            outcomes: Vec::new(),
            corrections: Vec::new(),
            seed: outcomes.seed(),
        }
    }

    fn extend(&mut self, other: Transcript) {
        let shift = self.outcomes.len();
        self.measured.extend(other.measured);
        self.outcomes.extend(other.outcomes);
        self.corrections.extend(other.corrections.into_iter().map(|mut c| {
            c.outcome += shift;
            c
        }));
    }
}

fn check_joint(n: usize, extra: usize, opts: &SimOptions) -> Result<(), SimError> {
    if n > MAX_PHYSICAL_QUBITS {
        return Err(SimError::TooManyQubits {
            needed: n,
            limit: MAX_PHYSICAL_QUBITS,
        });
    }
    let joint = n + extra;
    if joint > MAX_JOINT_QUBITS {
        return Err(SimError::TooManyQubits {
            needed: joint,
            limit: MAX_JOINT_QUBITS,
        });
    }
    if joint > HEAVY_JOINT_QUBITS && !opts.allow_heavy {
        return Err(SimError::NeedsHeavy(joint));
    }
    Ok(())
}

fn mask(v: &F2Vector) -> usize {
    v.iter_ones().fold(0, |m, i| m | 1 << i)
}

fn ancilla_letters(width: usize, fix: &[(usize, char)]) -> String {
    let mut s = vec!['I'; width];
    for &(q, c) in fix {
        s[q] = c;
    }
    s.into_iter().collect()
}

/// `|G⟩ = ∏_{(a,b)∈E} CZ_{ab} |+⟩^n`.
pub fn prepare_graph_state(g: &Graph) -> Result<StateVector, SimError> {
    if g.n() > MAX_PHYSICAL_QUBITS {
        return Err(SimError::TooManyQubits {
            needed: g.n(),
            limit: MAX_PHYSICAL_QUBITS,
        });
    }
    let mut s = StateVector::plus(g.n());
    for (a, b) in g.edges() {
        s.apply_cz(a, b);
    }
    Ok(s)
}

/// `Σ_x a_x Z_{xA} |G⟩`, the target of encoding.
pub fn code_state(code: &CwsCode, logical: &StateVector) -> Result<StateVector, SimError> {
    check_logical(code, logical)?;
    subcode_state(code, &(0..code.k()).collect::<Vec<_>>(), logical)
}

/// `Σ_x a_x Z_{Σ_j x_j a_{rows[j]}} |G⟩`: the code state over a subset of generator rows.
pub fn subcode_state(code: &CwsCode, rows: &[usize], logical: &StateVector) -> Result<StateVector, SimError> {
    if logical.num_qubits() != rows.len() {
        return Err(SimError::WrongQubitCount {
            expected: rows.len(),
            found: logical.num_qubits(),
        });
    }
    if let Some(&bad) = rows.iter().find(|&&r| r >= code.k()) {
        return Err(SimError::IndexOutOfRange {
            index: bad,
            k: code.k(),
        });
    }
    let g = prepare_graph_state(code.graph())?;
    let masks: Vec<usize> = rows.iter().map(|&r| mask(code.generator().row(r))).collect();
    let mut out = g.clone();
    out.scale(Complex64::new(0.0, 0.0));
    for (x, &a) in logical.amplitudes().iter().enumerate() {
        let zmask = masks
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 1)
            .fold(0, |m, (_, r)| m ^ r);
        let mut term = g.clone();
        term.apply_xz(0, zmask, None);
        out.add_scaled(a, &term);
    }
    out.normalize();
    Ok(out)
}

/// `Σ_x |⟨G| Z_{xA} |ψ⟩|²`: the weight of `ψ` inside the code space.
pub fn codespace_weight(code: &CwsCode, state: &StateVector) -> Result<f64, SimError> {
    if state.num_qubits() != code.n() {
        return Err(SimError::WrongQubitCount {
            expected: code.n(),
            found: state.num_qubits(),
        });
    }
    let g = prepare_graph_state(code.graph())?;
    let rows: Vec<usize> = code.generator().rows().iter().map(mask).collect();
    Ok((0..1usize << code.k())
        .map(|x| {
            let zmask = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| x >> i & 1 == 1)
                .fold(0, |m, (_, r)| m ^ r);
            let mut basis = g.clone();
            basis.apply_xz(0, zmask, None);
            basis.inner(state).norm_sqr()
        })
        .sum())
}

fn check_logical(code: &CwsCode, logical: &StateVector) -> Result<(), SimError> {
    if logical.num_qubits() != code.k() {
        return Err(SimError::WrongQubitCount {
            expected: code.k(),
            found: logical.num_qubits(),
        });
    }
    Ok(())
}

fn check_encoded(code: &CwsCode, encoded: &StateVector) -> Result<(), SimError> {
    let weight = codespace_weight(code, encoded)?;
    if weight < 1.0 - STATE_TOLERANCE {
        return Err(SimError::NotInCodespace { weight });
    }
    Ok(())
}

/// Measures the Hermitian involution `apply`, leaving the normalized post-measurement state.
fn measure(
    joint: &mut StateVector,
    outcomes: &mut Outcomes,
    apply: impl Fn(&mut StateVector) + Copy,
) -> Result<bool, SimError> {
    let p_minus = joint.minus_probability(apply);
    let minus = outcomes.draw(p_minus)?;
    joint.project_with(minus, apply);
    joint.normalize();
    Ok(minus)
}

fn apply_stabilizer(s: &mut StateVector, g: &Graph, i: usize) {
    s.apply_xz(1 << i, mask(g.neighbors(i)), None);
}

/// Encodes generator rows `rows` onto `phys`, with `logical` on `rows.len()` qubits.
fn encode_rows(
    code: &CwsCode,
    rows: std::ops::Range<usize>,
    phys: &StateVector,
    logical: &StateVector,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
    protocol: &str,
) -> Result<(StateVector, Transcript), SimError> {
    let n = code.n();
    let kk = rows.len();
    check_joint(n, kk, opts)?;
    let mut transcript = Transcript::new(protocol, outcomes);
    let mut joint = StateVector::kron(logical, phys);
    for (r, row) in rows.clone().enumerate() {
        for t in code.generator().row(row).iter_ones() {
            joint.apply_cz(n + r, t);
        }
    }
    let g = code.graph();
    let mut pending = Vec::new();
    for (r, row) in rows.enumerate() {
        let minus = measure(&mut joint, outcomes, |s| s.apply_x(n + r))?;
        transcript.measured.push(format!("X(in{row})"));
        transcript.outcomes.push(minus as u8);
        if minus {
            let pivot = code.pivot(row);
            transcript.corrections.push(Correction {
                outcome: r,
                physical: code.stabilizer_generators().get(pivot).clone(),
                ancilla: String::new(),
            });
            match opts.schedule {
                CorrectionSchedule::Interleaved => apply_stabilizer(&mut joint, g, pivot),
                CorrectionSchedule::Deferred => pending.push(pivot),
            }
        }
    }
    for pivot in pending {
        apply_stabilizer(&mut joint, g, pivot);
    }
    // inputs are now |±⟩ according to their outcomes
    let signs: Vec<f64> = transcript
        .outcomes
        .iter()
        .map(|&b| if b == 1 { -1.0 } else { 1.0 })
        .collect();
    let scale = (1.0 / (1u64 << kk) as f64).sqrt();
    let high_amps = (0..1usize << kk)
        .map(|h| {
            let sign: f64 = (0..kk).filter(|&r| h >> r & 1 == 1).map(|r| signs[r]).product();
            Complex64::new(sign * scale, 0.0)
        })
        .collect();
    let high = StateVector::from_amplitudes(high_amps)?;
    Ok((joint.contract_high(&high)?, transcript))
}

/// Encodes `logical` (on `k` qubits) into `Σ_x a_x Z_{xA} |G⟩`.
pub fn encode(
    code: &CwsCode,
    logical: &StateVector,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
) -> Result<(StateVector, Transcript), SimError> {
    check_logical(code, logical)?;
    let g = prepare_graph_state(code.graph())?;
    encode_rows(code, 0..code.k(), &g, logical, outcomes, opts, "encode")
}

/// Encodes logical qubits `0..split` first, then `split..k` onto the result.
/// `logical` must be a product across that split.
pub fn encode_sequential(
    code: &CwsCode,
    logical: &StateVector,
    split: usize,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
) -> Result<(StateVector, Transcript), SimError> {
    check_logical(code, logical)?;
    let k = code.k();
    if split == 0 || split >= k {
        return Err(SimError::BadSplit { split, k });
    }
    if logical.schmidt_rank(split, 1e-9) != 1 {
        return Err(SimError::NotProductState { split });
    }
    let (second, first, _) = logical.split_product(split);
    let g = prepare_graph_state(code.graph())?;
    let (partial, mut transcript) = encode_rows(code, 0..split, &g, &first, outcomes, opts, "encode_sequential")?;
    let (full, t2) = encode_rows(code, split..k, &partial, &second, outcomes, opts, "encode_sequential")?;
    transcript.extend(t2);
    Ok((full, transcript))
}

/// Measures every graph stabilizer on the physical register of `joint`.
/// `fix(p)` gives recovery-qubit letters to apply on a `-1` at qubit `p`.
fn project_to_graph(
    code: &CwsCode,
    joint: &mut StateVector,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
    transcript: &mut Transcript,
    width: usize,
    fix: impl Fn(usize) -> Vec<(usize, char)>,
) -> Result<(), SimError> {
    let n = code.n();
    let g = code.graph();
    if opts.route == RecoveryRoute::Projector {
        for p in 0..n {
            let w = joint.project_with(false, |s| apply_stabilizer(s, g, p));
            if w < STATE_TOLERANCE {
                return Err(SimError::NotInCodespace { weight: w });
            }
            joint.normalize();
        }
        return Ok(());
    }
    let mut pending = Vec::new();
    for p in 0..n {
        let minus = measure(joint, outcomes, |s| apply_stabilizer(s, g, p))?;
        let index = transcript.outcomes.len();
        transcript.measured.push(format!("S{p}"));
        transcript.outcomes.push(minus as u8);
        if minus {
            let letters = fix(p);
            transcript.corrections.push(Correction {
                outcome: index,
                physical: PauliWord::new(F2Vector::zeros(n), F2Vector::unit(n, p)).expect("lengths agree"),
                ancilla: ancilla_letters(width, &letters),
            });
            match opts.schedule {
                CorrectionSchedule::Interleaved => apply_fix(joint, n, p, &letters),
                CorrectionSchedule::Deferred => pending.push((p, letters)),
            }
        }
    }
    for (p, letters) in pending {
        apply_fix(joint, n, p, &letters);
    }
    Ok(())
}

fn apply_fix(joint: &mut StateVector, n: usize, p: usize, letters: &[(usize, char)]) {
    joint.apply_z(p);
    for &(q, c) in letters {
        match c {
            'X' => joint.apply_x(n + q),
            'Z' => joint.apply_z(n + q),
            // Y: X first, then Z
            _ => {
                joint.apply_x(n + q);
                joint.apply_z(n + q);
            }
        }
    }
}

/// Recovers the logical state from `Σ_x a_x Z_{xA} |G⟩` onto `k` fresh qubits.
/// Returns the logical state and the physical register left behind.
pub fn recover(
    code: &CwsCode,
    encoded: &StateVector,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
) -> Result<(StateVector, StateVector, Transcript), SimError> {
    let (n, k) = (code.n(), code.k());
    check_joint(n, k, opts)?;
    check_encoded(code, encoded)?;
    let mut transcript = Transcript::new("recover", outcomes);
    let mut joint = StateVector::kron(&StateVector::plus(k), encoded);
    for i in 0..k {
        for t in code.generator().row(i).iter_ones() {
            joint.apply_cz(n + i, t);
        }
    }
    let pivots = code.pivots();
    project_to_graph(code, &mut joint, outcomes, opts, &mut transcript, k, |p| {
        pivots
            .iter()
            .position(|&q| q == p)
            .map(|i| vec![(i, 'X')])
            .unwrap_or_default()
    })?;
    let (logical, physical, residual) = joint.split_product(n);
    if residual > STATE_TOLERANCE {
        return Err(SimError::NotSeparable { residual });
    }
    Ok((logical, physical, transcript))
}

/// Recovers logical qubit `which` alone, leaving
/// `Σ_{x'} a_{x'} Z_{x'A'} |G⟩` over the other rows on the physical register.
pub fn partial_recover(
    code: &CwsCode,
    encoded: &StateVector,
    which: usize,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
) -> Result<(StateVector, StateVector, Transcript), SimError> {
    let (n, k) = (code.n(), code.k());
    if which >= k {
        return Err(SimError::IndexOutOfRange { index: which, k });
    }
    check_joint(n, 1, opts)?;
    check_encoded(code, encoded)?;
    let mut transcript = Transcript::new("partial_recover", outcomes);
    let mut joint = StateVector::kron(&StateVector::plus(1), encoded);
    let row = code.generator().row(which);
    for t in row.iter_ones() {
        joint.apply_cz(n, t);
    }
    let pivot = code.pivot(which);
    let g = code.graph();
    let minus = measure(&mut joint, outcomes, |s| apply_stabilizer(s, g, pivot))?;
    transcript.measured.push(format!("S{pivot}"));
    transcript.outcomes.push(minus as u8);
    if minus {
        transcript.corrections.push(Correction {
            outcome: 0,
            physical: PauliWord::new(F2Vector::zeros(n), row.clone()).expect("lengths agree"),
            ancilla: "X".to_string(),
        });
        joint.apply_x(n);
        joint.apply_xz(0, mask(row), None);
    }
    let (qubit, residual_state, residual) = joint.split_product(n);
    if residual > STATE_TOLERANCE {
        return Err(SimError::NotSeparable { residual });
    }
    Ok((qubit, residual_state, transcript))
}

/// Recovers a single logical qubit with one controlled-`U`, where `U Z_A` is a
/// graph stabilizer `S_T`. `u` fixes `T` and the letters; the operator applied
/// is exactly `S_T Z_A`, so `U Z_A = +S_T`.
pub fn recover_controlled_u(
    code: &CwsCode,
    encoded: &StateVector,
    u: &PauliWord,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
) -> Result<(StateVector, Transcript), SimError> {
    let n = code.n();
    if code.k() != 1 {
        return Err(SimError::NeedsSingleLogical(code.k()));
    }
    if u.num_qubits() != n {
        return Err(SimError::LengthMismatch {
            expected: n,
            found: u.num_qubits(),
        });
    }
    let a = code.generator().row(0);
    let s_t = code.stabilizer_generators().product_with_x(u.x_part());
    if &u.z_part().xor(a) != s_t.z_part() {
        return Err(SimError::PreconditionUZA);
    }
    check_joint(n, 1, opts)?;
    check_encoded(code, encoded)?;
    let mut transcript = Transcript::new("recover_controlled_u", outcomes);
    let mut joint = StateVector::kron(&StateVector::plus(1), encoded);
    let g = code.graph();
    joint.apply_xz(0, mask(a), Some(n));
    for i in u.x_part().iter_ones() {
        joint.apply_xz(1 << i, mask(g.neighbors(i)), Some(n));
    }
    // the syndrome is 0 or A; on A the qubit holds X (or ZX) of the payload
    let pivot = code.pivot(0);
    let odd = u.x_part().and(a).weight() % 2 == 1;
    project_to_graph(code, &mut joint, outcomes, opts, &mut transcript, 1, |p| {
        if p != pivot {
            vec![]
        } else if odd {
            vec![(0, 'Y')]
        } else {
            vec![(0, 'X')]
        }
    })?;
    let (qubit, _, residual) = joint.split_product(n);
    if residual > STATE_TOLERANCE {
        return Err(SimError::NotSeparable { residual });
    }
    Ok((qubit, transcript))
}
