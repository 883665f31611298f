//! Scalar measures of high-order interdependence: negentropy, total
//! correlation, binding entropy, O-information, interaction information,
//! local O-information, TSE complexity, the ψ profile, and the analytic
//! bounds that constrain them.
//!
//! Subset-enumeration measures (interaction information, TSE, ψ) grow as
//! 2^n and are guarded by a configurable variable-count cap; they error
//! rather than silently truncate.

use serde::{Serialize, Serializer};

use crate::dist::{IndexSet, JointTable};
use crate::error::{Error, Result};
use crate::stats::compensated_sum;
use crate::unit::LogUnit;

/// Default cap for measures that enumerate all 2^n variable subsets.
pub const DEFAULT_SUBSET_CAP: usize = 12;

/// Equality tolerance, in bits, for internal cross-checks between
/// algebraically equivalent routes.
const EQ_TOL_BITS: f64 = 1e-9;

fn clamp_nonneg(v: f64) -> f64 {
    if (-1e-12..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn assert_close_bits(a_nats: f64, b_nats: f64, what: &str) {
    let diff_bits = (a_nats - b_nats).abs() / std::f64::consts::LN_2;
    assert!(
        diff_bits <= EQ_TOL_BITS,
        "invariant violation: {what} differ by {diff_bits:e} bits"
    );
}

/// Σ_j log|X_j| − H(X^n): information disclosed by the statistics alone.
pub fn negentropy(t: &JointTable, unit: LogUnit) -> f64 {
    let nats = t.capacity(LogUnit::NAT) - t.entropy_nats();
    unit.from_nats(clamp_nonneg(nats))
}

/// Per-variable negentropies log|X_j| − H(X_j).
pub fn marginal_negentropies(t: &JointTable, unit: LogUnit) -> Vec<f64> {
    (0..t.n())
        .map(|j| {
            let nats =
                (t.shape()[j] as f64).ln() - t.subset_entropy_nats(&IndexSet::from([j]));
            unit.from_nats(clamp_nonneg(nats))
        })
        .collect()
}

/// Total correlation C = Σ_j H(X_j) − H(X^n): strength of the collective
/// constraints.
pub fn total_correlation(t: &JointTable, unit: LogUnit) -> f64 {
    unit.from_nats(clamp_nonneg(total_correlation_nats(t)))
}

fn total_correlation_nats(t: &JointTable) -> f64 {
    let marginal_sum = compensated_sum(
        (0..t.n()).map(|j| t.subset_entropy_nats(&IndexSet::from([j]))),
    );
    marginal_sum - t.entropy_nats()
}

/// Residual entropies R_j = H(X_j | X^n_{-j}): each variable's private
/// randomness.
pub fn residual_entropies(t: &JointTable, unit: LogUnit) -> Vec<f64> {
    residual_entropies_nats(t)
        .into_iter()
        .map(|r| unit.from_nats(r))
        .collect()
}

fn residual_entropies_nats(t: &JointTable) -> Vec<f64> {
    let h = t.entropy_nats();
    (0..t.n())
        .map(|j| {
            let rest = IndexSet::from([j]).complement(t.n());
            clamp_nonneg(h - t.subset_entropy_nats(&rest))
        })
        .collect()
}

/// Binding entropy B = H(X^n) − Σ_j R_j: randomness shared by two or more
/// variables (the dual total correlation).
pub fn binding_entropy(t: &JointTable, unit: LogUnit) -> f64 {
    unit.from_nats(clamp_nonneg(binding_entropy_nats(t)))
}

fn binding_entropy_nats(t: &JointTable) -> f64 {
    t.entropy_nats() - compensated_sum(residual_entropies_nats(t))
}

/// O-information Ω = C − B. Positive values mark redundancy-dominated
/// systems, negative values synergy-dominated ones.
///
/// Evaluated through both defining routes (C − B, and
/// (n−2)H + Σ_j [H(X_j) − H(X^n_{-j})]), which are asserted to agree.
pub fn o_information(t: &JointTable, unit: LogUnit) -> f64 {
    unit.from_nats(o_information_nats(t))
}

fn o_information_nats(t: &JointTable) -> f64 {
    let n = t.n();
    let via_cb = total_correlation_nats(t) - binding_entropy_nats(t);
    let h = t.entropy_nats();
    let correction = compensated_sum((0..n).map(|j| {
        let rest = IndexSet::from([j]).complement(n);
        t.subset_entropy_nats(&IndexSet::from([j])) - t.subset_entropy_nats(&rest)
    }));
    let via_entropies = (n as f64 - 2.0) * h + correction;
    assert_close_bits(via_cb, via_entropies, "the two O-information routes");
    via_cb
}

/// Entropies of every non-empty variable subset, indexed by bitmask
/// (bit j set means variable j is included). Computed by cascading
/// marginalizations from the full table.
pub(crate) fn all_subset_entropies_nats(t: &JointTable) -> Vec<f64> {
    let n = t.n();
    let full: usize = (1 << n) - 1;
    let mut marginals: Vec<Option<Vec<f64>>> = vec![None; full + 1];
    let mut entropies = vec![0.0; full + 1];

    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));

    for &mask in &masks {
        if mask == full {
            entropies[mask] = t.entropy_nats();
            marginals[mask] = Some(t.probs().to_vec());
            continue;
        }
        let missing_bit = (!mask & full).trailing_zeros() as usize;
        let parent = mask | (1 << missing_bit);
        let parent_dims: Vec<usize> = (0..n).filter(|j| parent >> j & 1 == 1).collect();
        let parent_shape: Vec<usize> = parent_dims.iter().map(|&j| t.shape()[j]).collect();
        let axis = parent_dims
            .iter()
            .position(|&j| j == missing_bit)
            .expect("missing bit is in parent");
        let reduced = sum_out_axis(
            marginals[parent].as_ref().expect("parent marginal computed"),
            &parent_shape,
            axis,
        );
        entropies[mask] = crate::dist::entropy_nats_of(&reduced);
        marginals[mask] = Some(reduced);
    }
    entropies
}

fn sum_out_axis(probs: &[f64], shape: &[usize], axis: usize) -> Vec<f64> {
    let inner: usize = shape[axis + 1..].iter().product();
    let size = shape[axis];
    let outer: usize = shape[..axis].iter().product();
    let mut out = vec![0.0; outer * inner];
    let mut idx = 0;
    for o in 0..outer {
        for _ in 0..size {
            for i in 0..inner {
                out[o * inner + i] += probs[idx];
                idx += 1;
            }
        }
    }
    out
}

fn check_subset_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SubsetExplosion { n, cap })
    } else {
        Ok(())
    }
}

/// Interaction information: the alternating inclusion-exclusion sum
/// −Σ_{γ≠∅} (−1)^{|γ|} H(X^γ) over all non-empty subsets.
pub fn interaction_information(t: &JointTable, unit: LogUnit) -> Result<f64> {
    interaction_information_with_cap(t, unit, DEFAULT_SUBSET_CAP)
}

pub fn interaction_information_with_cap(
    t: &JointTable,
    unit: LogUnit,
    cap: usize,
) -> Result<f64> {
    check_subset_cap(t.n(), cap)?;
    let entropies = all_subset_entropies_nats(t);
    let nats = compensated_sum((1..entropies.len()).map(|mask| {
        let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        sign * entropies[mask]
    }));
    Ok(unit.from_nats(nats))
}

/// Local O-information ω_ij = I(X_i; X_j; X^n_{-ij}): the pairwise
/// contribution of (i, j) to Ω.
pub fn local_o_information(t: &JointTable, i: usize, j: usize, unit: LogUnit) -> Result<f64> {
    let n = t.n();
    if n < 3 {
        return Err(Error::NeedAtLeastThreeVariables(n));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    if i == j {
        return Err(Error::OverlappingSets);
    }
    let a = IndexSet::from([i]);
    let b = IndexSet::from([j]);
    let rest = a.union(&b).complement(n);
    let mi = t.mutual_information(&a, &b, None, LogUnit::NAT)?;
    let cmi = t.mutual_information(&a, &b, Some(&rest), LogUnit::NAT)?;
    Ok(unit.from_nats(mi - cmi))
}

/// Mean total correlation over all size-k subsets, C_n(k).
pub fn avg_subset_correlation(t: &JointTable, k: usize, unit: LogUnit) -> Result<f64> {
    avg_subset_correlation_with_cap(t, k, unit, DEFAULT_SUBSET_CAP)
}

pub fn avg_subset_correlation_with_cap(
    t: &JointTable,
    k: usize,
    unit: LogUnit,
    cap: usize,
) -> Result<f64> {
    let n = t.n();
    if k < 1 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n: n + 1 });
    }
    check_subset_cap(n, cap)?;
    let entropies = all_subset_entropies_nats(t);
    let marginals: Vec<f64> = (0..n).map(|j| entropies[1 << j]).collect();
    let mut sum = 0.0;
    let mut count = 0u64;
    for (mask, &h_mask) in entropies.iter().enumerate().skip(1) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let h_parts: f64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| marginals[j]).sum();
        sum += h_parts - h_mask;
        count += 1;
    }
    Ok(unit.from_nats(clamp_nonneg(sum / count as f64)))
}

/// TSE complexity, Σ_k [(k/n) C(X^n) − C_n(k)].
///
/// Also evaluated through the subset/complement mutual-information form
/// (with the size-n/2 term halved for even n, where each bipartition is
/// visited from both sides); the two routes are asserted to agree.
pub fn tse_complexity(t: &JointTable, unit: LogUnit) -> Result<f64> {
    tse_complexity_with_cap(t, unit, DEFAULT_SUBSET_CAP)
}

pub fn tse_complexity_with_cap(t: &JointTable, unit: LogUnit, cap: usize) -> Result<f64> {
    let n = t.n();
    check_subset_cap(n, cap)?;
    if n < 2 {
        return Ok(0.0);
    }
    let entropies = all_subset_entropies_nats(t);
    let full = entropies.len() - 1;
    let marginals: Vec<f64> = (0..n).map(|j| entropies[1 << j]).collect();
    let h_full = entropies[full];
    let c_full = compensated_sum(marginals.iter().copied()) - h_full;

    // Per-size sums of subset total correlation and of I(γ; complement).
    let mut c_sum = vec![0.0; n + 1];
    let mut mi_sum = vec![0.0; n + 1];
    let mut count = vec![0u64; n + 1];
    for mask in 1..=full {
        let k = mask.count_ones() as usize;
        let h_parts: f64 = (0..n)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| marginals[j])
            .sum();
        c_sum[k] += h_parts - entropies[mask];
        count[k] += 1;
        if k < n {
            mi_sum[k] += entropies[mask] + entropies[full ^ mask] - h_full;
        }
    }

    let via_subsets = compensated_sum((1..=n).map(|k| {
        let c_n_k = c_sum[k] / count[k] as f64;
        (k as f64 / n as f64) * c_full - c_n_k
    }));

    let via_bipartitions = compensated_sum((1..=n / 2).map(|k| {
        let avg = mi_sum[k] / count[k] as f64;
        if n.is_multiple_of(2) && k == n / 2 {
            0.5 * avg
        } else {
            avg
        }
    }));

    assert_close_bits(via_subsets, via_bipartitions, "the two TSE routes");
    Ok(unit.from_nats(clamp_nonneg(via_subsets)))
}

/// ψ(k) for k = 1..n−1 plus the convexity score Ψ.
#[derive(Clone, Debug, Serialize)]
pub struct PsiProfile {
    /// ψ(k): the maximal mutual information between one variable and any
    /// size-k subset excluding it, for k = 1..n−1.
    pub psi: Vec<f64>,
    /// Summed deviation of the growth profile from the straight line
    /// through (0, 0) and (n−1, ψ(n−1)); ψ(0) = 0 since a size-0 subset
    /// carries no information. Profiles that bulge above the line
    /// (early saturation, redundancy) score positive; profiles that stay
    /// below it (late growth, synergy) score negative.
    #[serde(rename = "Psi")]
    pub psi_score: f64,
}

pub fn psi_profile(t: &JointTable, unit: LogUnit) -> Result<PsiProfile> {
    psi_profile_with_cap(t, unit, DEFAULT_SUBSET_CAP)
}

pub fn psi_profile_with_cap(t: &JointTable, unit: LogUnit, cap: usize) -> Result<PsiProfile> {
    let n = t.n();
    if n < 3 {
        return Err(Error::NeedAtLeastThreeVariables(n));
    }
    check_subset_cap(n, cap)?;
    let entropies = all_subset_entropies_nats(t);
    let full = entropies.len() - 1;
    let mut psi_nats = vec![0.0_f64; n - 1];
    for mask in 1..=full {
        let k = mask.count_ones() as usize;
        if k > n - 1 {
            continue;
        }
        for j in 0..n {
            if mask >> j & 1 == 1 {
                continue;
            }
            let mi = entropies[1 << j] + entropies[mask] - entropies[mask | (1 << j)];
            if mi > psi_nats[k - 1] {
                psi_nats[k - 1] = mi;
            }
        }
    }
    let last = psi_nats[n - 2];
    let slope = last / (n - 1) as f64;
    let score_nats = compensated_sum(
        psi_nats
            .iter()
            .enumerate()
            .map(|(idx, &v)| v - slope * (idx + 1) as f64),
    );
    Ok(PsiProfile {
        psi: psi_nats.iter().map(|&v| unit.from_nats(v)).collect(),
        psi_score: unit.from_nats(score_nats),
    })
}

/// Range of the O-information for `n` variables over alphabets of size at
/// most `alphabet_max`: ((2−n) log|X|, (n−2) log|X|).
pub fn omega_bounds(n: usize, alphabet_max: usize, unit: LogUnit) -> (f64, f64) {
    debug_assert!(n >= 2 && alphabet_max >= 2);
    let log_x = unit.from_nats((alphabet_max as f64).ln());
    ((2.0 - n as f64) * log_x, (n as f64 - 2.0) * log_x)
}

/// Bounds on C(X^γ) for any size-m subset γ, given the system's Ω:
/// lower = max{0, Ω/log|X| − (n−m−1)}·log|X|,
/// upper = min{m−1, Ω/log|X| + (n−2)}·log|X|.
///
/// `omega` is taken in `unit`; comparison happens in nats internally.
pub fn subset_correlation_bounds(
    omega: f64,
    n: usize,
    m: usize,
    alphabet_max: usize,
    unit: LogUnit,
) -> (f64, f64) {
    assert!(m >= 1 && m < n, "subset size m must satisfy 1 <= m < n");
    let log_x = (alphabet_max as f64).ln();
    let omega_ratio = unit.to_nats(omega) / log_x;
    let lower = f64::max(0.0, omega_ratio - (n as f64 - m as f64 - 1.0)) * log_x;
    let upper = f64::min(m as f64 - 1.0, omega_ratio + (n as f64 - 2.0)) * log_x;
    (unit.from_nats(lower), unit.from_nats(upper))
}

fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("f64 round trip")
}

fn ser_sig12<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(sig12(*v))
}

fn ser_vec_sig12<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|&x| sig12(x)))
}

fn ser_matrix_sig12<S: Serializer>(
    v: &Option<Vec<Vec<Option<f64>>>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(rows) => s.collect_seq(rows.iter().map(|row| {
            row.iter()
                .map(|cell| cell.map(sig12))
                .collect::<Vec<Option<f64>>>()
        })),
    }
}

/// Bundle of every scalar measure for one table, in a chosen unit.
///
/// Serialized numeric fields carry 12 significant digits.
#[derive(Clone, Debug, Serialize)]
pub struct MetricReport {
    pub unit: LogUnit,
    #[serde(serialize_with = "ser_sig12")]
    pub h_joint: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub negentropy: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub total_correlation: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub binding_entropy: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub o_information: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub tse: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub sum_cb: f64,
    #[serde(serialize_with = "ser_vec_sig12")]
    pub residuals: Vec<f64>,
    #[serde(serialize_with = "ser_vec_sig12")]
    pub marginal_negentropies: Vec<f64>,
    /// ω_ij matrix; the diagonal is undefined and reported as null. Absent
    /// entirely for systems of fewer than three variables.
    #[serde(serialize_with = "ser_matrix_sig12")]
    pub local_omega: Option<Vec<Vec<Option<f64>>>>,
}

impl MetricReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Computes the full [`MetricReport`] and asserts its internal identities:
/// Ω = C − B, 𝒩 = capacity − H, C + B = Σ_i I(X_i; X^n_{-i}), the
/// information decomposition Σ log|X_j| = [C + Σ𝒩(X_j)] + [B + ΣR_j],
/// and the (n−1)/(n−2) log|X| range bounds.
pub fn metric_report(t: &JointTable, unit: LogUnit) -> Result<MetricReport> {
    let n = t.n();
    let h = t.entropy_nats();
    let capacity = t.capacity(LogUnit::NAT);
    let neg = capacity - h;
    let c = total_correlation_nats(t);
    let residuals = residual_entropies_nats(t);
    let b = binding_entropy_nats(t);
    let omega = o_information_nats(t);
    let tse = LogUnit::NAT.to_nats(tse_complexity_with_cap(t, LogUnit::NAT, DEFAULT_SUBSET_CAP)?);
    let marg_neg: Vec<f64> = (0..n)
        .map(|j| {
            clamp_nonneg((t.shape()[j] as f64).ln() - t.subset_entropy_nats(&IndexSet::from([j])))
        })
        .collect();

    let sum_cb = compensated_sum((0..n).map(|j| {
        let a = IndexSet::from([j]);
        let rest = a.complement(n);
        t.subset_entropy_nats(&a) + t.subset_entropy_nats(&rest) - h
    }));

    assert_close_bits(omega, c - b, "o_information and C - B");
    assert_close_bits(neg, capacity - h, "negentropy and capacity - H");
    assert_close_bits(c + b, sum_cb, "C + B and the sum of I(X_i; rest)");
    assert_close_bits(
        neg,
        compensated_sum(marg_neg.iter().copied()) + c,
        "negentropy decomposition",
    );
    assert_close_bits(
        h,
        compensated_sum(residuals.iter().copied()) + b,
        "entropy decomposition",
    );
    if n >= 2 {
        let log_x = (t.max_alphabet() as f64).ln();
        let slack = EQ_TOL_BITS * std::f64::consts::LN_2;
        let n_f = n as f64;
        assert!(c >= -slack && c <= (n_f - 1.0) * log_x + slack, "C out of range");
        assert!(b >= -slack && b <= (n_f - 1.0) * log_x + slack, "B out of range");
        assert!(
            omega.abs() <= (n_f - 2.0) * log_x + slack,
            "Omega out of range"
        );
    }

    let local_omega = if n >= 3 {
        let mut matrix = vec![vec![None; n]; n];
        #[allow(clippy::needless_range_loop)] // symmetric writes need both indices
        for i in 0..n {
            for j in (i + 1)..n {
                let w = local_o_information(t, i, j, unit)?;
                matrix[i][j] = Some(w);
                matrix[j][i] = Some(w);
            }
        }
        Some(matrix)
    } else {
        None
    };

    Ok(MetricReport {
        unit,
        h_joint: unit.from_nats(h),
        negentropy: unit.from_nats(clamp_nonneg(neg)),
        total_correlation: unit.from_nats(clamp_nonneg(c)),
        binding_entropy: unit.from_nats(clamp_nonneg(b)),
        o_information: unit.from_nats(omega),
        tse: unit.from_nats(tse),
        sum_cb: unit.from_nats(clamp_nonneg(sum_cb)),
        residuals: residuals.into_iter().map(|r| unit.from_nats(r)).collect(),
        marginal_negentropies: marg_neg.into_iter().map(|v| unit.from_nats(v)).collect(),
        local_omega,
    })
}
