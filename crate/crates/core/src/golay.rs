//! One-dimensional Golay complementary sequences.
//!
//! Sequences are unimodular and stored as phase angles. Complex entries are
//! materialized on demand, with phases that sit on a multiple of `π/2`
//! mapped to the exact values `±1`, `±j`, so binary and quaternary pairs
//! pass the complementarity test with zero rounding error.
//!
//! The aperiodic autocorrelation uses the convention
//!
//! ```text
//! R[τ] = Σ_n u[n] · conj(u[n + τ])          τ ≥ 0
//! R[τ] = Σ_n u[n - τ] · conj(u[n])          τ < 0
//! ```
//!
//! so `R[-τ] = conj(R[τ])` and `R[0] = N`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for complementarity checks on floating-point pipelines.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for validating cataloged and constructed pairs.
pub const CATALOG_TOL: f64 = 1e-12;

/// `e^{jθ}`, exact when `θ` is a multiple of `π/2`.
pub fn unit_phasor(theta: f64) -> Complex64 {
    let quarters = theta / FRAC_PI_2;
    let k = quarters.round();
    if (quarters - k).abs() < 1e-12 {
        match (k as i64).rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, theta)
    }
}

/// Wraps a phase into `[0, 2π)`.
pub fn wrap_phase(theta: f64) -> f64 {
    let wrapped = theta.rem_euclid(2.0 * PI);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if wrapped >= 2.0 * PI {
        0.0
    } else {
        wrapped
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Binary,
    Quaternary,
    Polyphase,
}

impl Alphabet {
    /// Number of phase levels, `None` for unconstrained polyphase.
    pub fn size(self) -> Option<usize> {
        match self {
            Alphabet::Binary => Some(2),
            Alphabet::Quaternary => Some(4),
            Alphabet::Polyphase => None,
        }
    }

    pub fn from_size(size: usize) -> Option<Self> {
        match size {
            2 => Some(Alphabet::Binary),
            4 => Some(Alphabet::Quaternary),
            _ => None,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Binary => "binary",
            Alphabet::Quaternary => "quaternary",
            Alphabet::Polyphase => "polyphase",
        })
    }
}

/// Finite sequence of unit-modulus complex numbers, held as phases in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularSequence {
    phases: Vec<f64>,
}

impl UnimodularSequence {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::invalid("sequence must have at least one entry"));
        }
        if let Some(bad) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::invalid(format!("non-finite phase {bad}")));
        }
        Ok(Self { phases })
    }

    /// Builds a sequence from ±1 entries (`true`/positive is `+1`).
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        Self::new(
            signs
                .iter()
                .map(|&s| if s >= 0 { 0.0 } else { PI })
                .collect(),
        )
    }

    /// Builds a sequence whose entry `n` is `e^{j 2π indices[n] / q}`.
    pub fn from_indices(indices: &[usize], q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("alphabet size must be positive"));
        }
        Self::new(
            indices
                .iter()
                .map(|&k| 2.0 * PI * (k % q) as f64 / q as f64)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn entry(&self, n: usize) -> Complex64 {
        unit_phasor(self.phases[n])
    }

    pub fn entries(&self) -> Vec<Complex64> {
        self.phases.iter().map(|&p| unit_phasor(p)).collect()
    }

    /// Phase indices in a `q`-ary alphabet, or `None` if some phase is off-grid.
    pub fn to_indices(&self, q: usize) -> Option<Vec<usize>> {
        let step = 2.0 * PI / q as f64;
        self.phases
            .iter()
            .map(|&p| {
                let x = wrap_phase(p) / step;
                let k = x.round();
                ((x - k).abs() < 1e-9).then_some((k as usize) % q)
            })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let mut phases = self.phases.clone();
        phases.reverse();
        Self { phases }
    }

    pub fn conjugated(&self) -> Self {
        Self {
            phases: self.phases.iter().map(|&p| -p).collect(),
        }
    }

    pub fn rotated(&self, alpha: f64) -> Self {
        Self {
            phases: self.phases.iter().map(|&p| p + alpha).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        self.rotated(PI)
    }
}

/// Aperiodic autocorrelation over lags `-(N-1) ..= N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationFunction {
    len: usize,
    // index τ + (N - 1)
    values: Vec<Complex64>,
}

impl CorrelationFunction {
    /// Sequence length `N`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn max_lag(&self) -> isize {
        self.len as isize - 1
    }

    /// Value at lag `tau`; zero outside the support.
    pub fn at(&self, tau: isize) -> Complex64 {
        if tau.abs() > self.max_lag() {
            return Complex64::new(0.0, 0.0);
        }
        self.values[(tau + self.max_lag()) as usize]
    }

    /// `(lag, value)` pairs in increasing lag order.
    pub fn iter(&self) -> impl Iterator<Item = (isize, Complex64)> + '_ {
        let offset = self.max_lag();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i as isize - offset, v))
    }

    /// `Σ_τ R[τ] e^{-j2πfτ}`.
    pub fn transform(&self, f: f64) -> Complex64 {
        self.iter()
            .map(|(tau, r)| r * Complex64::from_polar(1.0, -2.0 * PI * f * tau as f64))
            .sum()
    }
}

pub fn acf(u: &UnimodularSequence) -> CorrelationFunction {
    let x = u.entries();
    let n = x.len();
    let max_lag = n as isize - 1;
    let values = (-max_lag..=max_lag)
        .map(|tau| {
            if tau >= 0 {
                let t = tau as usize;
                (0..n - t).map(|i| x[i] * x[i + t].conj()).sum()
            } else {
                let t = (-tau) as usize;
                (0..n - t).map(|i| x[i + t] * x[i].conj()).sum()
            }
        })
        .collect();
    CorrelationFunction { len: n, values }
}

/// Outcome of a complementarity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityReport {
    pub complementary: bool,
    /// Largest `|R_u[τ] + R_w[τ]|` over nonzero lags.
    pub max_off_peak: f64,
    /// `|R_u[0] + R_w[0] - 2N|`.
    pub peak_deviation: f64,
    pub tolerance: f64,
}

impl ComplementarityReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_off_peak.max(self.peak_deviation)
    }

    pub(crate) fn new(max_off_peak: f64, peak_deviation: f64, tolerance: f64) -> Self {
        Self {
            complementary: max_off_peak <= tolerance && peak_deviation <= tolerance,
            max_off_peak,
            peak_deviation,
            tolerance,
        }
    }
}

pub fn is_golay_pair(
    u: &UnimodularSequence,
    w: &UnimodularSequence,
    tol: f64,
) -> Result<ComplementarityReport> {
    if u.len() != w.len() {
        return Err(Error::invalid(format!(
            "sequence lengths differ: {} vs {}",
            u.len(),
            w.len()
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be nonnegative, got {tol}")));
    }
    let (ru, rw) = (acf(u), acf(w));
    let mut max_off_peak = 0.0f64;
    let mut peak_deviation = 0.0;
    for ((tau, a), (_, b)) in ru.iter().zip(rw.iter()) {
        if tau == 0 {
            peak_deviation = (a + b - Complex64::new(2.0 * u.len() as f64, 0.0)).norm();
        } else {
            max_off_peak = max_off_peak.max((a + b).norm());
        }
    }
    Ok(ComplementarityReport::new(max_off_peak, peak_deviation, tol))
}

/// Power spectral density as the transform of the autocorrelation.
pub fn psd(u: &UnimodularSequence, f: f64) -> f64 {
    acf(u).transform(f).re
}

/// Power spectral density evaluated directly as a squared transform
/// magnitude, `|Σ_n u[n] e^{+j2πfn}|²`. The `+` sign matches the
/// autocorrelation convention above, so this equals [`psd`] for any
/// sequence, real or complex.
pub fn psd_direct(u: &UnimodularSequence, f: f64) -> f64 {
    u.entries()
        .iter()
        .enumerate()
        .map(|(n, &x)| x * Complex64::from_polar(1.0, 2.0 * PI * f * n as f64))
        .sum::<Complex64>()
        .norm_sqr()
}

// Seed pairs used for the 16x8 dual-polarized surface.
const SV_BINARY_U: [f64; 8] = [0.0, 0.0, 0.0, 0.0, 0.0, PI, PI, 0.0];
const SV_BINARY_W: [f64; 8] = [0.0, 0.0, PI, PI, 0.0, PI, 0.0, PI];
const SV_QUATERNARY_U: [f64; 8] = [0.0, 0.0, 0.0, 0.0, FRAC_PI_2, -FRAC_PI_2, -FRAC_PI_2, FRAC_PI_2];
const SV_QUATERNARY_W: [f64; 8] = [0.0, 0.0, PI, PI, FRAC_PI_2, -FRAC_PI_2, FRAC_PI_2, -FRAC_PI_2];

const BINARY_10: ([i8; 10], [i8; 10]) = (
    [1, 1, -1, 1, -1, 1, -1, -1, 1, 1],
    [1, 1, -1, 1, 1, 1, 1, 1, -1, -1],
);
const BINARY_26: ([i8; 26], [i8; 26]) = (
    [1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1, -1, 1, 1, 1],
    [1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, 1, 1, 1, -1, 1, -1, -1, -1, 1, 1, -1, -1, -1],
);

// Quaternary phase indices (k -> e^{jπk/2}).
const QUATERNARY_3: ([usize; 3], [usize; 3]) = ([0, 0, 2], [0, 1, 0]);
const QUATERNARY_5: ([usize; 5], [usize; 5]) = ([0, 0, 0, 1, 3], [0, 1, 3, 2, 1]);

const MAX_CATALOG_LENGTH: usize = 1 << 12;

fn binary_phases(length: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    let signs = |s: &[i8]| -> Vec<f64> { s.iter().map(|&x| if x > 0 { 0.0 } else { PI }).collect() };
    match length {
        0 => None,
        1 => Some((vec![0.0], vec![0.0])),
        2 => Some((vec![0.0, 0.0], vec![0.0, PI])),
        8 => Some((SV_BINARY_U.to_vec(), SV_BINARY_W.to_vec())),
        10 => Some((signs(&BINARY_10.0), signs(&BINARY_10.1))),
        26 => Some((signs(&BINARY_26.0), signs(&BINARY_26.1))),
        n if n % 2 == 0 && n <= MAX_CATALOG_LENGTH => {
            // (a|b, a|-b) doubles a pair
            let (a, b) = binary_phases(n / 2)?;
            let u = a.iter().chain(&b).copied().collect();
            let w = a
                .iter()
                .copied()
                .chain(b.iter().map(|&p| wrap_phase(p + PI)))
                .collect();
            Some((u, w))
        }
        _ => None,
    }
}

fn quaternary_phases(length: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    let quarter = |k: &[usize]| -> Vec<f64> { k.iter().map(|&i| FRAC_PI_2 * i as f64).collect() };
    match length {
        1 | 2 | 4 => binary_phases(length),
        3 => Some((quarter(&QUATERNARY_3.0), quarter(&QUATERNARY_3.1))),
        5 => Some((quarter(&QUATERNARY_5.0), quarter(&QUATERNARY_5.1))),
        8 => Some((SV_QUATERNARY_U.to_vec(), SV_QUATERNARY_W.to_vec())),
        _ => None,
    }
}

/// Looks up a known Golay pair.
///
/// Binary lengths are `2^a · {1, 10, 26}` (the length-8 entry is the
/// binary seed of the 16x8 surface design); quaternary lengths are
/// 1, 2, 3, 4, 5 and 8.
pub fn known_golay_pair(
    length: usize,
    alphabet: Alphabet,
) -> Result<(UnimodularSequence, UnimodularSequence)> {
    let phases = match alphabet {
        Alphabet::Binary => binary_phases(length),
        Alphabet::Quaternary => quaternary_phases(length),
        Alphabet::Polyphase => None,
    };
    let (u, w) = phases.ok_or(Error::UnsupportedLength { length, alphabet })?;
    Ok((UnimodularSequence::new(u)?, UnimodularSequence::new(w)?))
}

/// Lengths available from [`known_golay_pair`] up to `max_length`.
pub fn cataloged_lengths(alphabet: Alphabet, max_length: usize) -> Vec<usize> {
    (1..=max_length)
        .filter(|&n| match alphabet {
            Alphabet::Binary => binary_phases(n).is_some(),
            Alphabet::Quaternary => quaternary_phases(n).is_some(),
            Alphabet::Polyphase => false,
        })
        .collect()
}

/// Upper bound on `alphabet_size^(2·length)` for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u128);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(1 << 20)
    }
}

/// Enumerates every Golay pair over a binary or quaternary alphabet.
///
/// Output is sorted lexicographically on `(u indices, w indices)`.
pub fn search_golay_pairs(
    length: usize,
    alphabet_size: usize,
) -> Result<Vec<(UnimodularSequence, UnimodularSequence)>> {
    search_golay_pairs_with_budget(length, alphabet_size, SearchBudget::default())
}

pub fn search_golay_pairs_with_budget(
    length: usize,
    alphabet_size: usize,
    budget: SearchBudget,
) -> Result<Vec<(UnimodularSequence, UnimodularSequence)>> {
    Ok(search_indices(length, alphabet_size, budget)?
        .into_iter()
        .map(|(u, w)| {
            (
                UnimodularSequence::from_indices(&u, alphabet_size).expect("nonempty"),
                UnimodularSequence::from_indices(&w, alphabet_size).expect("nonempty"),
            )
        })
        .collect())
}

type Gaussian = (i64, i64);

fn gauss_mul_conj(a: Gaussian, b: Gaussian) -> Gaussian {
    // a * conj(b)
    (a.0 * b.0 + a.1 * b.1, a.1 * b.0 - a.0 * b.1)
}

/// Exhaustive search in phase-index space with exact integer arithmetic.
pub fn search_indices(
    length: usize,
    alphabet_size: usize,
    budget: SearchBudget,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    if length == 0 {
        return Err(Error::invalid("length must be positive"));
    }
    if alphabet_size != 2 && alphabet_size != 4 {
        return Err(Error::invalid(format!(
            "alphabet size must be 2 or 4, got {alphabet_size}"
        )));
    }
    let q = alphabet_size as u128;
    let candidates = u32::try_from(2 * length)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .unwrap_or(u128::MAX);
    if candidates > budget.0 {
        return Err(Error::ResourceLimit {
            candidates,
            budget: budget.0,
        });
    }

    const QUARTER: [Gaussian; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let step = 4 / alphabet_size;
    let symbols: Vec<Gaussian> = (0..alphabet_size).map(|k| QUARTER[k * step]).collect();

    // Fill w from both ends inward; lag τ is fully determined once every pair
    // (n, n + τ) has been placed.
    let order: Vec<usize> = (0..length)
        .map(|s| if s % 2 == 0 { s / 2 } else { length - 1 - s / 2 })
        .collect();
    let mut step_of = vec![0; length];
    for (s, &pos) in order.iter().enumerate() {
        step_of[pos] = s;
    }
    let mut lags_complete_at: Vec<Vec<usize>> = vec![Vec::new(); length];
    for tau in 1..length {
        let s = (0..length - tau)
            .map(|n| step_of[n].max(step_of[n + tau]))
            .max()
            .expect("tau < length");
        lags_complete_at[s].push(tau);
    }

    let n_u = q.pow(length as u32) as u64;
    let per_u: Vec<Vec<(Vec<usize>, Vec<usize>)>> = (0..n_u)
        .into_par_iter()
        .map(|code| {
            let mut u = vec![0usize; length];
            let mut c = code;
            for slot in u.iter_mut().rev() {
                *slot = (c % alphabet_size as u64) as usize;
                c /= alphabet_size as u64;
            }
            let xu: Vec<Gaussian> = u.iter().map(|&k| symbols[k]).collect();
            let target: Vec<Gaussian> = (0..length)
                .map(|tau| {
                    let r = (0..length - tau).fold((0, 0), |acc, n| {
                        let p = gauss_mul_conj(xu[n], xu[n + tau]);
                        (acc.0 + p.0, acc.1 + p.1)
                    });
                    (-r.0, -r.1)
                })
                .collect();

            let mut found = Vec::new();
            let mut w = vec![0usize; length];
            extend_w(
                0,
                &order,
                &lags_complete_at,
                &symbols,
                &target,
                &mut w,
                &mut found,
            );
            found.sort();
            found.into_iter().map(|w| (u.clone(), w)).collect()
        })
        .collect();
    Ok(per_u.into_iter().flatten().collect())
}

fn extend_w(
    step: usize,
    order: &[usize],
    lags_complete_at: &[Vec<usize>],
    symbols: &[Gaussian],
    target: &[Gaussian],
    w: &mut [usize],
    found: &mut Vec<Vec<usize>>,
) {
    if step == order.len() {
        found.push(w.to_vec());
        return;
    }
    let pos = order[step];
    for k in 0..symbols.len() {
        w[pos] = k;
        let consistent = lags_complete_at[step].iter().all(|&tau| {
            let r = (0..w.len() - tau).fold((0, 0), |acc, n| {
                let p = gauss_mul_conj(symbols[w[n]], symbols[w[n + tau]]);
                (acc.0 + p.0, acc.1 + p.1)
            });
            r == target[tau]
        });
        if consistent {
            extend_w(step + 1, order, lags_complete_at, symbols, target, w, found);
        }
    }
}

/// Equivalence transforms that map Golay pairs to Golay pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairTransform {
    ReverseBoth,
    ConjugateBoth,
    GlobalPhase(f64),
    NegateFirst,
    NegateSecond,
}

pub fn transform_pair(
    u: &UnimodularSequence,
    w: &UnimodularSequence,
    kind: PairTransform,
) -> (UnimodularSequence, UnimodularSequence) {
    match kind {
        PairTransform::ReverseBoth => (u.reversed(), w.reversed()),
        PairTransform::ConjugateBoth => (u.conjugated(), w.conjugated()),
        PairTransform::GlobalPhase(alpha) => (u.rotated(alpha), w.rotated(alpha)),
        PairTransform::NegateFirst => (u.negated(), w.clone()),
        PairTransform::NegateSecond => (u.clone(), w.negated()),
    }
}
