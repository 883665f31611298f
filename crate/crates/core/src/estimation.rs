//! Empirical joint distributions from multi-channel categorical time
//! series, with circular block-bootstrap standard errors for any metric.
//!
//! Counts are plain frequencies: no smoothing, no bias correction. Unseen
//! joint symbols keep probability zero, and alphabet sizes come from the
//! declared channel metadata rather than the observed support. Serial
//! dependence is handled only through the bootstrap's blocks.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{IndexSet, JointTable};
use crate::error::{Error, Result};
use crate::metrics::{
    binding_entropy, o_information, total_correlation, tse_complexity,
};
use crate::sampling::{stream_rng, unit_open};
use crate::stats::sample_std;
use crate::unit::LogUnit;

/// Multi-channel categorical time series with alphabet metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTable {
    channels: Vec<String>,
    alphabets: Vec<Vec<String>>,
    /// data[t][c]: symbol index of channel c at time step t.
    data: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ChannelMeta {
    name: String,
    alphabet: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AlphabetSidecar {
    channels: Vec<ChannelMeta>,
}

impl SeriesTable {
    pub fn new(
        channels: Vec<String>,
        alphabets: Vec<Vec<String>>,
        data: Vec<Vec<usize>>,
    ) -> Result<SeriesTable> {
        if channels.is_empty() {
            return Err(Error::InvalidParameter("series needs at least one channel".into()));
        }
        if channels.len() != alphabets.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} channels but {} alphabets",
                channels.len(),
                alphabets.len()
            )));
        }
        if let Some(empty) = alphabets.iter().position(|a| a.is_empty()) {
            return Err(Error::InvalidParameter(format!(
                "channel {:?} has an empty alphabet",
                channels[empty]
            )));
        }
        if data.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (t, row) in data.iter().enumerate() {
            if row.len() != channels.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row {t} has {} cells for {} channels",
                    row.len(),
                    channels.len()
                )));
            }
            for (c, &symbol) in row.iter().enumerate() {
                if symbol >= alphabets[c].len() {
                    return Err(Error::IndexOutOfRange {
                        index: symbol,
                        n: alphabets[c].len(),
                    });
                }
            }
        }
        Ok(SeriesTable {
            channels,
            alphabets,
            data,
        })
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[String] {
        &self.channels
    }

    pub fn alphabet_sizes(&self) -> Vec<usize> {
        self.alphabets.iter().map(|a| a.len()).collect()
    }

    /// Parses the CSV + JSON-sidecar pair: the CSV header row must name the
    /// sidecar's channels in the same order, and every cell must be a
    /// symbol from its channel's alphabet.
    pub fn from_csv(csv_text: &str, sidecar_json: &str) -> Result<SeriesTable> {
        let sidecar: AlphabetSidecar =
            serde_json::from_str(sidecar_json).map_err(|e| Error::Parse(e.to_string()))?;
        if sidecar.channels.is_empty() {
            return Err(Error::Parse("alphabet sidecar lists no channels".into()));
        }
        let mut lines = csv_text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(Error::EmptySeries)?;
        let names: Vec<&str> = header.split(',').map(str::trim).collect();
        if names.len() != sidecar.channels.len() {
            return Err(Error::Parse(format!(
                "header names {} channels, sidecar {}",
                names.len(),
                sidecar.channels.len()
            )));
        }
        for (name, meta) in names.iter().zip(&sidecar.channels) {
            if *name != meta.name {
                return Err(Error::Parse(format!(
                    "header channel {name:?} does not match sidecar channel {:?}",
                    meta.name
                )));
            }
        }
        let mut data = Vec::new();
        for (row_no, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != names.len() {
                return Err(Error::Parse(format!(
                    "row {} has {} cells for {} channels",
                    row_no + 1,
                    cells.len(),
                    names.len()
                )));
            }
            let mut row = Vec::with_capacity(cells.len());
            for (c, cell) in cells.iter().enumerate() {
                let symbol = sidecar.channels[c]
                    .alphabet
                    .iter()
                    .position(|s| s == cell)
                    .ok_or_else(|| {
                        Error::Parse(format!(
                            "row {}: symbol {cell:?} is not in channel {:?}'s alphabet",
                            row_no + 1,
                            sidecar.channels[c].name
                        ))
                    })?;
                row.push(symbol);
            }
            data.push(row);
        }
        SeriesTable::new(
            sidecar.channels.iter().map(|c| c.name.clone()).collect(),
            sidecar.channels.into_iter().map(|c| c.alphabet).collect(),
            data,
        )
    }

    /// Flat joint symbol per time step, row-major against the alphabet
    /// sizes.
    fn joint_indices(&self) -> Vec<usize> {
        let sizes = self.alphabet_sizes();
        self.data
            .iter()
            .map(|row| {
                let mut idx = 0;
                for (&symbol, &size) in row.iter().zip(&sizes) {
                    idx = idx * size + symbol;
                }
                idx
            })
            .collect()
    }
}

/// Draws `len` i.i.d. samples from a joint table, as a series whose
/// channels take the table's labels (or x1..xn) and whose alphabets are
/// the symbol indices as strings. Deterministic for a fixed seed.
pub fn sample_series(t: &JointTable, len: usize, seed: u64) -> Result<SeriesTable> {
    if len == 0 {
        return Err(Error::EmptySeries);
    }
    let n = t.n();
    let mut cumulative = Vec::with_capacity(t.probs().len());
    let mut acc = 0.0;
    for &p in t.probs() {
        acc += p;
        cumulative.push(acc);
    }
    let mut rng = stream_rng(seed, 0);
    let mut data = Vec::with_capacity(len);
    for _ in 0..len {
        let u = unit_open(&mut rng);
        let flat = cumulative.partition_point(|&c| c < u).min(t.probs().len() - 1);
        let mut coords = vec![0usize; n];
        let mut rem = flat;
        for j in (0..n).rev() {
            coords[j] = rem % t.shape()[j];
            rem /= t.shape()[j];
        }
        data.push(coords);
    }
    let channels: Vec<String> = match t.labels() {
        Some(labels) => labels.to_vec(),
        None => (0..n).map(|j| format!("x{}", j + 1)).collect(),
    };
    let alphabets: Vec<Vec<String>> = t
        .shape()
        .iter()
        .map(|&s| (0..s).map(|v| v.to_string()).collect())
        .collect();
    SeriesTable::new(channels, alphabets, data)
}

/// Empirical joint distribution: counts divided by T, shaped by the
/// declared alphabet sizes.
pub fn empirical_joint(s: &SeriesTable) -> Result<JointTable> {
    if s.is_empty() {
        return Err(Error::EmptySeries);
    }
    let shape = s.alphabet_sizes();
    let cells: usize = shape.iter().product();
    let mut counts = vec![0u64; cells];
    for idx in s.joint_indices() {
        counts[idx] += 1;
    }
    let t_len = s.len() as f64;
    let probs: Vec<f64> = counts.into_iter().map(|c| c as f64 / t_len).collect();
    JointTable::new(shape, probs)?.with_labels(s.channels().to_vec())
}

/// A metric of the joint distribution that the bootstrap can resample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMetric {
    Entropy,
    TotalCorrelation,
    BindingEntropy,
    OInformation,
    TseComplexity,
    PairMutualInformation(usize, usize),
    PairConditionalMutualInformation(usize, usize),
    PairLocalOInformation(usize, usize),
}

impl SeriesMetric {
    pub fn eval(&self, t: &JointTable, unit: LogUnit) -> Result<f64> {
        match *self {
            SeriesMetric::Entropy => Ok(t.entropy(unit)),
            SeriesMetric::TotalCorrelation => Ok(total_correlation(t, unit)),
            SeriesMetric::BindingEntropy => Ok(binding_entropy(t, unit)),
            SeriesMetric::OInformation => Ok(o_information(t, unit)),
            SeriesMetric::TseComplexity => tse_complexity(t, unit),
            SeriesMetric::PairMutualInformation(i, j) => t.mutual_information(
                &IndexSet::from([i]),
                &IndexSet::from([j]),
                None,
                unit,
            ),
            SeriesMetric::PairConditionalMutualInformation(i, j) => {
                let pair = IndexSet::new([i, j]);
                t.mutual_information(
                    &IndexSet::from([i]),
                    &IndexSet::from([j]),
                    Some(&pair.complement(t.n())),
                    unit,
                )
            }
            SeriesMetric::PairLocalOInformation(i, j) => {
                crate::metrics::local_o_information(t, i, j, unit)
            }
        }
    }
}

/// A point estimate with its circular block-bootstrap standard error.
#[derive(Clone, Debug, Serialize)]
pub struct BootstrapResult {
    pub point: f64,
    pub stderr: f64,
    pub replicates: usize,
    pub block_len: usize,
    pub seed: u64,
}

/// Standard dependent-data default: ⌈T^(1/3)⌉.
pub fn default_block_len(t_len: usize) -> usize {
    (t_len as f64).cbrt().ceil() as usize
}

/// Default replicate count when the caller does not specify one.
pub const DEFAULT_REPLICATES: usize = 1000;

/// Circular block bootstrap: each replicate concatenates ⌈T / L⌉ blocks of
/// length L with uniformly random wrap-around starts, truncates to T, and
/// re-evaluates the metric on the replicate's empirical joint. The stderr
/// is the sample standard deviation of the replicate metrics.
pub fn circular_block_bootstrap(
    s: &SeriesTable,
    metric: SeriesMetric,
    block_len: usize,
    replicates: usize,
    seed: u64,
    unit: LogUnit,
) -> Result<BootstrapResult> {
    if block_len < 1 {
        return Err(Error::InvalidParameter("block length must be >= 1".into()));
    }
    if replicates < 2 {
        return Err(Error::InvalidParameter("bootstrap needs >= 2 replicates".into()));
    }
    if block_len > s.len() {
        return Err(Error::BlockTooLong {
            block_len,
            len: s.len(),
        });
    }
    let point = metric.eval(&empirical_joint(s)?, unit)?;
    let values = bootstrap_replicate_values(s, &[metric], block_len, replicates, seed, unit)?;
    let stderr = stderr_of_sorted(values.into_iter().map(|mut row| row.pop().unwrap()));
    Ok(BootstrapResult {
        point,
        stderr,
        replicates,
        block_len,
        seed,
    })
}

/// Evaluates several metrics on every bootstrap replicate (one resampling
/// shared by all metrics). Returns `replicates` rows in replicate order.
fn bootstrap_replicate_values(
    s: &SeriesTable,
    metrics: &[SeriesMetric],
    block_len: usize,
    replicates: usize,
    seed: u64,
    unit: LogUnit,
) -> Result<Vec<Vec<f64>>> {
    let shape = s.alphabet_sizes();
    let cells: usize = shape.iter().product();
    let joint = s.joint_indices();
    let t_len = s.len();
    let blocks = t_len.div_ceil(block_len);

    (0..replicates)
        .into_par_iter()
        .map(|replicate| {
            let mut rng = stream_rng(seed, replicate as u64 + 1);
            let mut counts = vec![0u32; cells];
            let mut remaining = t_len;
            for _ in 0..blocks {
                let start = rng.random_range(0..t_len);
                let take = block_len.min(remaining);
                for offset in 0..take {
                    let mut pos = start + offset;
                    if pos >= t_len {
                        pos -= t_len;
                    }
                    counts[joint[pos]] += 1;
                }
                remaining -= take;
            }
            let probs: Vec<f64> = counts
                .into_iter()
                .map(|c| c as f64 / t_len as f64)
                .collect();
            let table = JointTable::new(shape.clone(), probs)?;
            metrics.iter().map(|m| m.eval(&table, unit)).collect()
        })
        .collect()
}

/// Sorting before accumulation keeps the result independent of evaluation
/// order.
fn stderr_of_sorted<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut v: Vec<f64> = values.into_iter().collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite metric values"));
    sample_std(&v)
}

/// One pair's row in the pairwise report.
#[derive(Clone, Debug, Serialize)]
pub struct PairwiseCell {
    pub i: usize,
    pub j: usize,
    pub pair: String,
    pub mi: f64,
    pub mi_se: f64,
    pub cmi: f64,
    pub cmi_se: f64,
    pub omega_ij: f64,
    pub omega_ij_se: f64,
}

/// Per-pair MI, conditional MI and local O-information with bootstrap
/// standard errors, plus the system's global Ω.
#[derive(Clone, Debug, Serialize)]
pub struct PairwiseReport {
    pub unit: LogUnit,
    pub block_len: usize,
    pub replicates: usize,
    pub seed: u64,
    pub pairs: Vec<PairwiseCell>,
    pub omega: f64,
    pub omega_se: f64,
}

/// Builds the pairwise report for every unordered channel pair. All cells
/// share one set of bootstrap replicates.
pub fn pairwise_report(
    s: &SeriesTable,
    unit: LogUnit,
    block_len: usize,
    replicates: usize,
    seed: u64,
) -> Result<PairwiseReport> {
    let n = s.num_channels();
    if n < 3 {
        return Err(Error::NeedAtLeastThreeVariables(n));
    }
    if block_len > s.len() {
        return Err(Error::BlockTooLong {
            block_len,
            len: s.len(),
        });
    }
    if replicates < 2 {
        return Err(Error::InvalidParameter("bootstrap needs >= 2 replicates".into()));
    }

    let mut metrics = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
            metrics.push(SeriesMetric::PairMutualInformation(i, j));
            metrics.push(SeriesMetric::PairConditionalMutualInformation(i, j));
            metrics.push(SeriesMetric::PairLocalOInformation(i, j));
        }
    }
    metrics.push(SeriesMetric::OInformation);

    let table = empirical_joint(s)?;
    let points: Vec<f64> = metrics
        .iter()
        .map(|m| m.eval(&table, unit))
        .collect::<Result<_>>()?;
    let rows = bootstrap_replicate_values(s, &metrics, block_len, replicates, seed, unit)?;
    let stderrs: Vec<f64> = (0..metrics.len())
        .map(|col| stderr_of_sorted(rows.iter().map(|row| row[col])))
        .collect();

    let cells = pairs
        .iter()
        .enumerate()
        .map(|(idx, &(i, j))| {
            let base = idx * 3;
            PairwiseCell {
                i,
                j,
                pair: format!("{}:{}", s.channels()[i], s.channels()[j]),
                mi: points[base],
                mi_se: stderrs[base],
                cmi: points[base + 1],
                cmi_se: stderrs[base + 1],
                omega_ij: points[base + 2],
                omega_ij_se: stderrs[base + 2],
            }
        })
        .collect();

    Ok(PairwiseReport {
        unit,
        block_len,
        replicates,
        seed,
        pairs: cells,
        omega: points[metrics.len() - 1],
        omega_se: stderrs[metrics.len() - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{nary_copy, nary_xor, random_simplex};

    const BIT: LogUnit = LogUnit::BIT;

    fn binary_alphabets(n: usize) -> (Vec<String>, Vec<Vec<String>>) {
        (
            (0..n).map(|i| format!("c{i}")).collect(),
            (0..n).map(|_| vec!["0".into(), "1".into()]).collect(),
        )
    }

    #[test]
    fn empirical_joint_counts_frequencies() {
        let (channels, alphabets) = binary_alphabets(2);
        let s = SeriesTable::new(
            channels,
            alphabets,
            vec![vec![0, 0], vec![0, 0], vec![1, 1], vec![1, 1]],
        )
        .unwrap();
        let t = empirical_joint(&s).unwrap();
        assert_eq!(t.probs(), &[0.5, 0.0, 0.0, 0.5]);
        let mi = t
            .mutual_information(&IndexSet::from([0]), &IndexSet::from([1]), None, BIT)
            .unwrap();
        assert!((mi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series_has_zero_entropy() {
        let (channels, alphabets) = binary_alphabets(2);
        let s = SeriesTable::new(channels, alphabets, vec![vec![1, 0]; 10]).unwrap();
        let t = empirical_joint(&s).unwrap();
        assert_eq!(t.entropy(BIT), 0.0);
    }

    #[test]
    fn empirical_entropy_bounded_by_observed_support() {
        let t = random_simplex(&[2, 2, 2], 15).unwrap();
        let s = sample_series(&t, 500, 99).unwrap();
        let emp = empirical_joint(&s).unwrap();
        let support = emp.probs().iter().filter(|&&p| p > 0.0).count();
        assert!(emp.entropy(BIT) <= (support as f64).log2() + 1e-12);
    }

    #[test]
    fn large_sample_from_xor3_recovers_omega() {
        let xor = nary_xor(3, 2).unwrap();
        let s = sample_series(&xor, 100_000, 7).unwrap();
        let emp = empirical_joint(&s).unwrap();
        let omega = o_information(&emp, BIT);
        assert!((omega + 1.0).abs() < 0.02, "omega = {omega}");
    }

    #[test]
    fn series_validation() {
        let (channels, alphabets) = binary_alphabets(2);
        assert!(matches!(
            SeriesTable::new(channels.clone(), alphabets.clone(), vec![]).unwrap_err(),
            Error::EmptySeries
        ));
        assert!(SeriesTable::new(channels, alphabets, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let sidecar = r#"{"channels":[
            {"name":"a","alphabet":["x","y"]},
            {"name":"b","alphabet":["x","y","z"]}
        ]}"#;
        let csv = "a,b\nx,z\ny,x\nx,x\n";
        let s = SeriesTable::from_csv(csv, sidecar).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.alphabet_sizes(), vec![2, 3]);
        assert_eq!(s.channels(), &["a".to_string(), "b".to_string()]);

        assert!(SeriesTable::from_csv("b,a\nx,x\n", sidecar).is_err());
        assert!(SeriesTable::from_csv("a,b\nx,q\n", sidecar).is_err());
        assert!(SeriesTable::from_csv("a,b\n", sidecar).is_err());
    }

    #[test]
    fn bootstrap_of_constant_series_has_zero_stderr() {
        let (channels, alphabets) = binary_alphabets(2);
        let s = SeriesTable::new(channels, alphabets, vec![vec![0, 1]; 64]).unwrap();
        let r =
            circular_block_bootstrap(&s, SeriesMetric::Entropy, 4, 50, 3, BIT).unwrap();
        assert_eq!(r.stderr, 0.0);
        assert_eq!(r.point, 0.0);
    }

    #[test]
    fn full_length_blocks_are_rotations_with_zero_stderr() {
        let t = random_simplex(&[2, 2], 1).unwrap();
        let s = sample_series(&t, 200, 5).unwrap();
        let r = circular_block_bootstrap(&s, SeriesMetric::Entropy, 200, 30, 11, BIT).unwrap();
        assert!(r.stderr.abs() < 1e-15, "stderr {}", r.stderr);
    }

    #[test]
    fn bootstrap_is_deterministic_in_seed_and_parameters() {
        let t = random_simplex(&[2, 2], 2).unwrap();
        let s = sample_series(&t, 300, 8).unwrap();
        let a = circular_block_bootstrap(&s, SeriesMetric::TotalCorrelation, 7, 40, 13, BIT)
            .unwrap();
        let b = circular_block_bootstrap(&s, SeriesMetric::TotalCorrelation, 7, 40, 13, BIT)
            .unwrap();
        assert_eq!(a.stderr, b.stderr);
        let c = circular_block_bootstrap(&s, SeriesMetric::TotalCorrelation, 7, 40, 14, BIT)
            .unwrap();
        assert_ne!(a.stderr, c.stderr);
    }

    #[test]
    fn bootstrap_parameter_errors() {
        let t = random_simplex(&[2, 2], 3).unwrap();
        let s = sample_series(&t, 50, 1).unwrap();
        assert!(matches!(
            circular_block_bootstrap(&s, SeriesMetric::Entropy, 51, 10, 1, BIT).unwrap_err(),
            Error::BlockTooLong { .. }
        ));
        assert!(circular_block_bootstrap(&s, SeriesMetric::Entropy, 0, 10, 1, BIT).is_err());
        assert!(circular_block_bootstrap(&s, SeriesMetric::Entropy, 5, 1, 1, BIT).is_err());
    }

    #[test]
    fn entropy_point_is_covered_by_three_stderr() {
        // i.i.d. draws from a fixed table: the analytic entropy should sit
        // inside point ± 3·stderr in at least 95 of 100 seeded repetitions.
        let table = random_simplex(&[2, 2], 42).unwrap();
        let analytic = table.entropy(BIT);
        let mut covered = 0;
        for rep in 0..100u64 {
            let s = sample_series(&table, 2_000, 1_000 + rep).unwrap();
            let r = circular_block_bootstrap(&s, SeriesMetric::Entropy, 13, 200, rep, BIT)
                .unwrap();
            if (r.point - analytic).abs() <= 3.0 * r.stderr {
                covered += 1;
            }
        }
        assert!(covered >= 95, "covered {covered}/100");
    }

    #[test]
    fn pairwise_report_signs_for_copy_and_xor() {
        let copy = nary_copy(4, 2).unwrap();
        let s = sample_series(&copy, 4_000, 21).unwrap();
        let report = pairwise_report(&s, BIT, 16, 60, 5).unwrap();
        assert_eq!(report.pairs.len(), 6);
        assert!(report.omega > 0.0);
        for cell in &report.pairs {
            assert!(cell.omega_ij > 0.0, "pair {} has omega {}", cell.pair, cell.omega_ij);
        }

        let xor = nary_xor(4, 2).unwrap();
        let s = sample_series(&xor, 4_000, 22).unwrap();
        let report = pairwise_report(&s, BIT, 16, 60, 5).unwrap();
        assert!(report.omega < 0.0);
        for cell in &report.pairs {
            assert!(cell.omega_ij < 0.0, "pair {} has omega {}", cell.pair, cell.omega_ij);
        }
    }

    #[test]
    fn pairwise_rows_satisfy_the_local_identity() {
        let t = random_simplex(&[2, 2, 2, 2], 77).unwrap();
        let s = sample_series(&t, 2_000, 31).unwrap();
        let report = pairwise_report(&s, BIT, 12, 30, 2).unwrap();
        for cell in &report.pairs {
            assert!(
                (cell.omega_ij - (cell.mi - cell.cmi)).abs() < 1e-12,
                "pair {}",
                cell.pair
            );
        }
    }

    #[test]
    fn omega_splits_into_complementary_pair_terms_for_four_variables() {
        let t = random_simplex(&[2, 2, 2, 2], 88).unwrap();
        let s = sample_series(&t, 3_000, 41).unwrap();
        let emp = empirical_joint(&s).unwrap();
        let omega = o_information(&emp, BIT);
        for (i, j, k, l) in [(0usize, 1usize, 2usize, 3usize), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let w_ij = crate::metrics::local_o_information(&emp, i, j, BIT).unwrap();
            let w_kl = crate::metrics::local_o_information(&emp, k, l, BIT).unwrap();
            assert!((omega - (w_ij + w_kl)).abs() < 1e-9);
        }
    }

    #[test]
    fn pairwise_report_needs_three_channels() {
        let t = random_simplex(&[2, 2], 4).unwrap();
        let s = sample_series(&t, 100, 9).unwrap();
        assert!(matches!(
            pairwise_report(&s, BIT, 4, 10, 0).unwrap_err(),
            Error::NeedAtLeastThreeVariables(2)
        ));
    }

    #[test]
    fn empirical_omega_converges_with_sample_size() {
        let xor = nary_xor(3, 2).unwrap();
        let analytic = -1.0;
        let mut medians = Vec::new();
        for t_len in [1_000usize, 10_000, 100_000] {
            let mut errors: Vec<f64> = (0..20u64)
                .map(|rep| {
                    let s = sample_series(&xor, t_len, 5_000 + rep).unwrap();
                    let emp = empirical_joint(&s).unwrap();
                    (o_information(&emp, BIT) - analytic).abs()
                })
                .collect();
            errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
            medians.push((errors[9] + errors[10]) / 2.0);
        }
        assert!(
            medians[0] > medians[1] && medians[1] > medians[2],
            "medians {medians:?}"
        );
    }
}
