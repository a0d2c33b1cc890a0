use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::SimError;
use crate::f2core::PauliWord;

pub const NORM_TOLERANCE: f64 = 1e-9;
/// Qubits in one state vector; `2^26` amplitudes is 1 GiB.
pub const MAX_STATE_QUBITS: usize = 26;
/// Amplitude dumps are limited to this many qubits.
pub const MAX_CSV_QUBITS: usize = 12;

/// Dense pure state on `n` qubits. Qubit `q` is bit `q` of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        assert!(n <= MAX_STATE_QUBITS, "{n} qubits exceed the state size cap");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    /// `|+⟩^⊗n`.
    pub fn plus(n: usize) -> Self {
        assert!(n <= MAX_STATE_QUBITS, "{n} qubits exceed the state size cap");
        let a = (1.0 / (1u64 << n) as f64).sqrt();
        Self {
            n,
            amps: vec![Complex64::new(a, 0.0); 1 << n],
        }
    }

    /// Normalizes the given amplitudes; their count must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(SimError::BadAmplitudeCount(len));
        }
        let mut s = Self {
            n: len.trailing_zeros() as usize,
            amps,
        };
        if s.norm() < NORM_TOLERANCE {
            return Err(SimError::ZeroState);
        }
        s.normalize();
        Ok(s)
    }

    /// Gaussian-random amplitudes, normalized: a Haar-random pure state.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let amps = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_amplitudes(amps).expect("a Gaussian sample is nonzero")
    }

    pub fn random_seeded(n: usize, seed: u64) -> Self {
        Self::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        for a in &mut self.amps {
            *a /= norm;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n, "qubit counts differ");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨self|other⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `high ⊗ low`, with `low` on the low-order qubits.
    pub fn kron(high: &StateVector, low: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(high.amps.len() * low.amps.len());
        for h in &high.amps {
            amps.extend(low.amps.iter().map(|l| h * l));
        }
        StateVector {
            n: high.n + low.n,
            amps,
        }
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    /// `self + c·other` without renormalizing.
    pub fn add_scaled(&mut self, c: Complex64, other: &StateVector) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += c * b;
        }
    }

    pub fn apply_h(&mut self, q: usize) {
        let bit = 1 << q;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = (a + b) * r;
                self.amps[i | bit] = (a - b) * r;
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let mask = (1 << a) | (1 << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// `X^x Z^z` (Z applied first) on the masked qubits, only where `control` is set.
    pub fn apply_xz(&mut self, xmask: usize, zmask: usize, control: Option<usize>) {
        let cmask = control.map_or(0, |c| 1 << c);
        if zmask != 0 {
            for (i, amp) in self.amps.iter_mut().enumerate() {
                if i & cmask == cmask && (i & zmask).count_ones() % 2 == 1 {
                    *amp = -*amp;
                }
            }
        }
        if xmask != 0 {
            for i in 0..self.amps.len() {
                let j = i ^ xmask;
                if i < j && i & cmask == cmask {
                    self.amps.swap(i, j);
                }
            }
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        self.apply_xz(1 << q, 0, None);
    }

    pub fn apply_z(&mut self, q: usize) {
        self.apply_xz(0, 1 << q, None);
    }

    /// The Pauli operator of `p` on qubits `offset..offset + p.len()`, with
    /// `Y = iXZ` so that every letter is the usual Hermitian matrix.
    pub fn apply_pauli(&mut self, p: &PauliWord, offset: usize) {
        let (x, z) = pauli_masks(p, offset);
        self.apply_xz(x, z, None);
        let phase = match p.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        self.scale(phase);
    }

    /// `⟨ψ|P|ψ⟩`; real for Hermitian `P`.
    pub fn expectation(&self, p: &PauliWord, offset: usize) -> f64 {
        let mut image = self.clone();
        image.apply_pauli(p, offset);
        self.inner(&image).re
    }

    /// Applies `(I + sign·P)/2` for the Hermitian operator given by `apply`
    /// and returns the squared norm of the result, left unnormalized.
    pub fn project_with(&mut self, minus: bool, apply: impl Fn(&mut StateVector)) -> f64 {
        let mut image = self.clone();
        apply(&mut image);
        let s = if minus { -0.5 } else { 0.5 };
        for (a, b) in self.amps.iter_mut().zip(&image.amps) {
            *a = *a * 0.5 + b * s;
        }
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Probability of outcome `-1` when measuring the Hermitian involution given by `apply`.
    pub fn minus_probability(&self, apply: impl Fn(&mut StateVector)) -> f64 {
        let mut image = self.clone();
        apply(&mut image);
        ((1.0 - self.inner(&image).re) / 2.0).clamp(0.0, 1.0)
    }

    /// Contracts the high-order qubits against `high`: `Σ_h conj(high_h) ψ[h, ·]`,
    /// normalized. Fails if the overlap vanishes.
    pub fn contract_high(&self, high: &StateVector) -> Result<StateVector, SimError> {
        let low_n = self.n - high.n;
        let size = 1usize << low_n;
        let mut amps = vec![Complex64::new(0.0, 0.0); size];
        for (h, hc) in high.amps.iter().enumerate() {
            let hc = hc.conj();
            for (l, a) in amps.iter_mut().enumerate() {
                *a += hc * self.amps[h * size + l];
            }
        }
        StateVector::from_amplitudes(amps)
    }

    /// Factors `ψ = high ⊗ low` across the split after `low_n` qubits.
    /// Returns the factors and `‖ψ - high ⊗ low‖`, which is 0 for a product state.
    pub fn split_product(&self, low_n: usize) -> (StateVector, StateVector, f64) {
        let size = 1usize << low_n;
        let rows = self.amps.len() / size;
        let (best, _) = (0..rows)
            .map(|h| {
                (
                    h,
                    self.amps[h * size..(h + 1) * size]
                        .iter()
                        .map(Complex64::norm_sqr)
                        .sum::<f64>(),
                )
            })
            .fold((0, -1.0), |acc, (h, w)| if w > acc.1 { (h, w) } else { acc });
        let low = StateVector::from_amplitudes(self.amps[best * size..(best + 1) * size].to_vec())
            .expect("heaviest row is nonzero");
        let high_amps: Vec<Complex64> = (0..rows)
            .map(|h| {
                low.amps
                    .iter()
                    .zip(&self.amps[h * size..(h + 1) * size])
                    .map(|(l, a)| l.conj() * a)
                    .sum()
            })
            .collect();
        let high = StateVector {
            n: self.n - low_n,
            amps: high_amps,
        };
        let product = StateVector::kron(&high, &low);
        let residual = self
            .amps
            .iter()
            .zip(&product.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let mut high = high;
        high.normalize();
        (high, low, residual)
    }

    /// Schmidt rank across the split after `low_n` qubits, counting singular
    /// values above `tol`. Uses Gram-Schmidt on the rows, adequate for the small
    /// registers here.
    pub fn schmidt_rank(&self, low_n: usize, tol: f64) -> usize {
        let size = 1usize << low_n;
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        for row in self.amps.chunks(size) {
            let mut v = row.to_vec();
            for b in &basis {
                let c: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
            let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if norm > tol {
                for vi in &mut v {
                    *vi /= norm;
                }
                basis.push(v);
            }
        }
        basis.len()
    }

    /// Moves qubits so that qubit `order[i]` becomes qubit `i`.
    pub fn permute_qubits(&self, order: &[usize]) -> StateVector {
        assert_eq!(order.len(), self.n);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let j = order
                .iter()
                .enumerate()
                .fold(0usize, |acc, (new, &old)| acc | ((i >> old & 1) << new));
            amps[j] = *a;
        }
        StateVector { n: self.n, amps }
    }

    /// `index,re,im` lines with a header, for at most [`MAX_CSV_QUBITS`] qubits.
    pub fn to_csv(&self) -> Result<String, SimError> {
        if self.n > MAX_CSV_QUBITS {
            return Err(SimError::TooManyQubits {
                needed: self.n,
                limit: MAX_CSV_QUBITS,
            });
        }
        let mut out = String::from("index,re,im\n");
        for (i, a) in self.amps.iter().enumerate() {
            writeln!(out, "{i},{:.17e},{:.17e}", a.re, a.im).expect("writing to a String");
        }
        Ok(out)
    }
}

pub(crate) fn pauli_masks(p: &PauliWord, offset: usize) -> (usize, usize) {
    let to_mask = |v: &crate::f2core::F2Vector| v.iter_ones().fold(0usize, |m, i| m | 1 << (i + offset));
    (to_mask(p.x_part()), to_mask(p.z_part()))
}

/// Source of measurement outcomes: seeded randomness or a forced bit string
/// (`true` = outcome `-1`).
#[derive(Clone, Debug)]
pub enum Outcomes {
    Seeded { seed: u64, rng: Box<ChaCha8Rng> },
    Forced { bits: Vec<bool>, next: usize },
}

/// Below this probability a forced outcome is treated as impossible.
pub const IMPOSSIBLE_OUTCOME: f64 = 1e-12;

impl Outcomes {
    pub fn seeded(seed: u64) -> Self {
        Outcomes::Seeded {
            seed,
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    pub fn forced(bits: Vec<bool>) -> Self {
        Outcomes::Forced { bits, next: 0 }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn forced_str(s: &str) -> Result<Self, SimError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(SimError::BadForcedOutcomes(s.to_string())),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self::forced(bits))
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Outcomes::Seeded { seed, .. } => Some(*seed),
            Outcomes::Forced { .. } => None,
        }
    }

    /// Draws the next outcome given the probability of `-1`.
    pub fn draw(&mut self, p_minus: f64) -> Result<bool, SimError> {
        match self {
            Outcomes::Seeded { rng, .. } => Ok(rng.random::<f64>() < p_minus),
            Outcomes::Forced { bits, next } => {
                let Some(&b) = bits.get(*next) else {
                    return Err(SimError::ForcedOutcomesExhausted(bits.len()));
                };
                let p = if b { p_minus } else { 1.0 - p_minus };
                if p < IMPOSSIBLE_OUTCOME {
                    return Err(SimError::ImpossibleOutcome { index: *next });
                }
                *next += 1;
                Ok(b)
            }
        }
    }
}
