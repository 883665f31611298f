//! Named distributions and ensembles: m-ary copies and xors, the binary
//! symmetric channel extremal systems, copy/xor mixtures, flat-simplex
//! random tables, and exact Gibbs distributions for spin Hamiltonians with
//! couplings of any order.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{IndexSet, JointTable};
use crate::error::{Error, Result};
use crate::metrics::o_information;
use crate::sampling::{exponential, std_normal, stream_rng};
use crate::stats::{compensated_sum, mean, sample_std};
use crate::unit::LogUnit;

/// Exact Gibbs enumeration walks all 2^n spin configurations.
pub const GIBBS_MAX_VARIABLES: usize = 20;

/// Uniform mass 1/m on the m all-equal configurations of n m-ary variables.
pub fn nary_copy(n: usize, m: usize) -> Result<JointTable> {
    if n < 1 || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "copy needs n >= 1 and m >= 2, got n = {n}, m = {m}"
        )));
    }
    let cells = m.checked_pow(n as u32).ok_or(Error::TooLarge {
        what: "copy table",
        n,
        cap: 0,
    })?;
    let mut probs = vec![0.0; cells];
    let mass = 1.0 / m as f64;
    for symbol in 0..m {
        let mut idx = 0usize;
        for _ in 0..n {
            idx = idx * m + symbol;
        }
        probs[idx] = mass;
    }
    JointTable::new(vec![m; n], probs)
}

/// First n−1 variables i.i.d. uniform over m symbols, the last their sum
/// modulo m.
pub fn nary_xor(n: usize, m: usize) -> Result<JointTable> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "xor needs n >= 2 and m >= 2, got n = {n}, m = {m}"
        )));
    }
    let cells = m.checked_pow(n as u32).ok_or(Error::TooLarge {
        what: "xor table",
        n,
        cap: 0,
    })?;
    let mut probs = vec![0.0; cells];
    let free = m.pow((n - 1) as u32);
    let mass = 1.0 / free as f64;
    for assignment in 0..free {
        let mut rem = assignment;
        let mut sum = 0usize;
        let mut idx = 0usize;
        let mut digits = vec![0usize; n - 1];
        for j in (0..n - 1).rev() {
            digits[j] = rem % m;
            rem /= m;
        }
        for &d in &digits {
            sum += d;
            idx = idx * m + d;
        }
        idx = idx * m + sum % m;
        probs[idx] = mass;
    }
    JointTable::new(vec![m; n], probs)
}

/// Which extreme of the binary-symmetric-channel family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BscSide {
    /// X_2 = X_3 = … = X_n, with X_1 linked to X_2 through the channel.
    Upper,
    /// X_3..X_{n−1} i.i.d. fair coins and X_n the parity of X_1..X_{n−1},
    /// with X_1, X_2 linked through the channel.
    Lower,
}

/// Binary system where X_1 and X_2 are fair coins coupled by a binary
/// symmetric channel with crossover probability `eta`, completed to n
/// variables by the chosen extremal construction.
pub fn bsc_extremal(n: usize, eta: f64, side: BscSide) -> Result<JointTable> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "bsc construction needs n >= 3, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "crossover probability must lie in [0, 1], got {eta}"
        )));
    }
    let cells = 1usize << n;
    let mut probs = vec![0.0; cells];
    match side {
        BscSide::Upper => {
            // Free choices: x1 and the shared value of x2..xn.
            for x1 in 0..2usize {
                for x2 in 0..2usize {
                    let chance = 0.5 * if x1 == x2 { 1.0 - eta } else { eta };
                    let mut idx = x1;
                    for _ in 1..n {
                        idx = idx * 2 + x2;
                    }
                    probs[idx] += chance;
                }
            }
        }
        BscSide::Lower => {
            // Free choices: x1, the channel noise, and x3..x_{n-1}.
            let free_bits = n - 3;
            let fair_mass = 0.5f64.powi(free_bits as i32);
            for x1 in 0..2usize {
                for noise in 0..2usize {
                    let x2 = x1 ^ noise;
                    let chance = 0.5 * if noise == 0 { 1.0 - eta } else { eta } * fair_mass;
                    for middle in 0..(1usize << free_bits) {
                        let mut idx = x1 * 2 + x2;
                        let mut parity = x1 ^ x2;
                        for b in (0..free_bits).rev() {
                            let bit = middle >> b & 1;
                            idx = idx * 2 + bit;
                            parity ^= bit;
                        }
                        idx = idx * 2 + parity;
                        probs[idx] += chance;
                    }
                }
            }
        }
    }
    JointTable::new(vec![2; n], probs)
}

/// Entrywise convex combination (1−λ)·copy + λ·xor over n bits.
pub fn mixture_copy_xor(n: usize, lambda: f64) -> Result<JointTable> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "mixture needs n >= 3, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "mixture weight must lie in [0, 1], got {lambda}"
        )));
    }
    let copy = nary_copy(n, 2)?;
    let xor = nary_xor(n, 2)?;
    let probs: Vec<f64> = copy
        .probs()
        .iter()
        .zip(xor.probs())
        .map(|(c, x)| (1.0 - lambda) * c + lambda * x)
        .collect();
    JointTable::new(vec![2; n], probs)
}

/// One draw from the flat Dirichlet over the simplex of dimension
/// ∏shape − 1, via normalized unit-rate exponentials. Deterministic for a
/// fixed seed.
pub fn random_simplex(shape: &[usize], seed: u64) -> Result<JointTable> {
    let cells: usize = shape.iter().product();
    if shape.is_empty() || cells < 2 {
        return Err(Error::InvalidParameter(
            "simplex sampling needs at least two cells".into(),
        ));
    }
    let mut rng = stream_rng(seed, 0);
    let mut probs: Vec<f64> = (0..cells).map(|_| exponential(&mut rng)).collect();
    let total = compensated_sum(probs.iter().copied());
    for p in probs.iter_mut() {
        *p /= total;
    }
    JointTable::new(shape.to_vec(), probs)
}

/// Sparse spin Hamiltonian: ℋ(x) = −Σ_γ J_γ Π_{i∈γ} x_i with x_i ∈ {−1, +1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    n: usize,
    terms: BTreeMap<IndexSet, f64>,
}

#[derive(Serialize, Deserialize)]
struct HamiltonianTermJson {
    gamma: Vec<usize>,
    #[serde(rename = "J")]
    coupling: f64,
}

#[derive(Serialize, Deserialize)]
struct HamiltonianJson {
    n: usize,
    terms: Vec<HamiltonianTermJson>,
}

impl Hamiltonian {
    pub fn new(n: usize) -> Result<Hamiltonian> {
        if n < 1 {
            return Err(Error::InvalidParameter(
                "a Hamiltonian needs at least one spin".into(),
            ));
        }
        Ok(Hamiltonian {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets the coupling for a non-empty subset of spins.
    pub fn set_term(&mut self, gamma: IndexSet, coupling: f64) -> Result<()> {
        if gamma.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        gamma.validate(self.n)?;
        self.terms.insert(gamma, coupling);
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, f64)> {
        self.terms.iter().map(|(g, &j)| (g, j))
    }

    /// Largest interaction order present.
    pub fn max_order(&self) -> usize {
        self.terms.keys().map(|g| g.len()).max().unwrap_or(0)
    }

    /// Energy of a configuration given as bits (bit j set means spin j
    /// is +1; cleared means −1).
    pub fn energy(&self, config: usize) -> f64 {
        let mut e = 0.0;
        for (gamma, coupling) in &self.terms {
            let mut prod = 1.0;
            for i in gamma.iter() {
                prod *= if config >> (self.n - 1 - i) & 1 == 1 {
                    1.0
                } else {
                    -1.0
                };
            }
            e -= coupling * prod;
        }
        e
    }

    pub fn to_json_string(&self) -> String {
        let dto = HamiltonianJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(g, &j)| HamiltonianTermJson {
                    gamma: g.as_slice().to_vec(),
                    coupling: j,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("hamiltonian serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Hamiltonian> {
        let dto: HamiltonianJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut h = Hamiltonian::new(dto.n)?;
        for term in dto.terms {
            h.set_term(IndexSet::new(term.gamma), term.coupling)?;
        }
        Ok(h)
    }
}

/// Exact Gibbs distribution p(x) = exp(−β ℋ(x)) / Z over all 2^n spin
/// configurations. Spins map to the binary alphabet as −1 → 0, +1 → 1.
pub fn gibbs(h: &Hamiltonian, beta: f64) -> Result<JointTable> {
    let n = h.n();
    if n > GIBBS_MAX_VARIABLES {
        return Err(Error::TooLarge {
            what: "exact Gibbs enumeration",
            n,
            cap: GIBBS_MAX_VARIABLES,
        });
    }
    if beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must be >= 0, got {beta}"
        )));
    }
    let cells = 1usize << n;
    let neg_beta_energy: Vec<f64> = (0..cells).map(|cfg| -beta * h.energy(cfg)).collect();
    let max = neg_beta_energy
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = neg_beta_energy.iter().map(|&e| (e - max).exp()).collect();
    let z = compensated_sum(weights.iter().copied());
    let probs = weights.into_iter().map(|w| w / z).collect();
    JointTable::new(vec![2; n], probs)
}

/// Protocol for an ensemble of random k-th order Hamiltonians: couplings
/// J_γ drawn i.i.d. standard normal for every subset with 1 ≤ |γ| ≤ k,
/// one independent stream per trial.
#[derive(Clone, Debug)]
pub struct EnsembleSpec {
    pub n: usize,
    pub k: usize,
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.k < 2 || self.k > self.n {
            return Err(Error::InvalidParameter(format!(
                "interaction order must satisfy 2 <= k <= n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        if self.beta < 0.0 {
            return Err(Error::InvalidParameter(
                "inverse temperature must be >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Mean, spread and a 95% normal-approximation confidence interval
/// (mean ± 1.96·std/√trials) of the per-trial Ω values.
#[derive(Clone, Debug, Serialize)]
pub struct EnsembleSummary {
    pub mean: f64,
    pub std: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug)]
pub struct EnsembleResult {
    /// Per-trial Ω in bits, in trial order.
    pub omegas: Vec<f64>,
    pub summary: EnsembleSummary,
}

/// All non-empty subsets of {0..n-1} with at most `max_order` elements,
/// ordered by size then lexicographically. This order fixes which normal
/// draw lands on which coupling.
fn coupling_subsets(n: usize, max_order: usize) -> Vec<IndexSet> {
    let mut subsets = Vec::new();
    for size in 1..=max_order.min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            subsets.push(IndexSet::new(combo.iter().copied()));
            // Advance to the next lexicographic combination.
            let Some(pivot) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
                break;
            };
            combo[pivot] += 1;
            for j in pivot + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    subsets
}

/// Draws one random Hamiltonian with all interaction orders 1..=k.
pub fn sample_hamiltonian(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Hamiltonian> {
    let mut h = Hamiltonian::new(n)?;
    for gamma in coupling_subsets(n, k) {
        let coupling = std_normal(rng);
        h.set_term(gamma, coupling)?;
    }
    Ok(h)
}

/// Runs the ensemble: per trial, sample a Hamiltonian on stream `trial`,
/// build its Gibbs distribution and evaluate Ω in bits. Trials run in
/// parallel; results are collected in trial order so the summary does not
/// depend on thread count.
pub fn ensemble_omega(spec: &EnsembleSpec) -> Result<EnsembleResult> {
    spec.validate()?;
    let omegas: Vec<f64> = (0..spec.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(spec.seed, trial as u64);
            let h = sample_hamiltonian(spec.n, spec.k, &mut rng)?;
            let table = gibbs(&h, spec.beta)?;
            Ok(o_information(&table, LogUnit::BIT))
        })
        .collect::<Result<_>>()?;
    let m = mean(&omegas);
    let s = sample_std(&omegas);
    let stderr = s / (omegas.len() as f64).sqrt();
    Ok(EnsembleResult {
        summary: EnsembleSummary {
            mean: m,
            std: s,
            stderr,
            ci_low: m - 1.96 * stderr,
            ci_high: m + 1.96 * stderr,
        },
        omegas,
    })
}
