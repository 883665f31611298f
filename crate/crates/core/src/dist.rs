//! Dense discrete joint distributions and the entropy primitives every
//! measure is built from.
//!
//! A [`JointTable`] stores the probability mass function of `n` variables
//! over a product of finite alphabets as one flat row-major array (last
//! index fastest). Tables are immutable after construction and all
//! operations are pure, so values can be shared freely across threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::compensated_sum;
use crate::unit::LogUnit;

/// Input mass may deviate from 1 by at most this much; within it the table
/// is silently renormalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Entries above this (tiny) negative floor are clamped to zero.
const NEGATIVE_MASS_FLOOR: f64 = -1e-15;

/// Negative rounding residue allowed in quantities that are non-negative by
/// theory (mutual information, conditional entropy); clamped to zero.
const ROUNDING_FLOOR: f64 = -1e-12;

/// A sorted, duplicate-free set of variable indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds a set from arbitrary indices; sorts and removes duplicates.
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> IndexSet {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn empty() -> IndexSet {
        IndexSet(Vec::new())
    }

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> IndexSet {
        IndexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::new(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    /// Complement within {0, .., n-1}.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|i| !self.contains(*i)).collect())
    }

    /// Checks all indices are valid for a table over `n` variables.
    pub fn validate(&self, n: usize) -> Result<()> {
        for &i in &self.0 {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        Ok(())
    }
}

impl From<Vec<usize>> for IndexSet {
    fn from(v: Vec<usize>) -> Self {
        IndexSet::new(v)
    }
}

impl From<&[usize]> for IndexSet {
    fn from(v: &[usize]) -> Self {
        IndexSet::new(v.iter().copied())
    }
}

impl<const N: usize> From<[usize; N]> for IndexSet {
    fn from(v: [usize; N]) -> Self {
        IndexSet::new(v)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::new(iter)
    }
}

/// Dense probability mass function over a product of finite alphabets.
#[derive(Clone, Debug, PartialEq)]
pub struct JointTable {
    shape: Vec<usize>,
    probs: Vec<f64>,
    labels: Option<Vec<String>>,
}

/// On-disk JSON form: `{"shape":[..],"probs":[..],"labels":[..]}` with probs
/// in row-major mixed-radix order, last index fastest.
#[derive(Serialize, Deserialize)]
struct JointTableJson {
    shape: Vec<usize>,
    probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl JointTable {
    /// Builds a table, clamping negative rounding dust to zero and silently
    /// renormalizing when the total mass is within `1e-9` of one.
    pub fn new(shape: Vec<usize>, mut probs: Vec<f64>) -> Result<JointTable> {
        if shape.is_empty() {
            return Err(Error::DimensionMismatch(
                "a table needs at least one variable".into(),
            ));
        }
        if let Some(bad) = shape.iter().position(|&s| s == 0) {
            return Err(Error::DimensionMismatch(format!(
                "variable {bad} has an empty alphabet"
            )));
        }
        let expected: usize = shape.iter().product();
        if probs.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "probs has length {} but the shape product is {expected}",
                probs.len()
            )));
        }
        for (index, p) in probs.iter_mut().enumerate() {
            if *p < NEGATIVE_MASS_FLOOR {
                return Err(Error::NegativeMass { index, value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum = compensated_sum(probs.iter().copied());
        let excess = (sum - 1.0).abs();
        if excess > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum, excess });
        }
        if sum != 1.0 {
            for p in probs.iter_mut() {
                *p /= sum;
            }
        }
        Ok(JointTable {
            shape,
            probs,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<JointTable> {
        if labels.len() != self.shape.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} variables",
                labels.len(),
                self.shape.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Largest alphabet cardinality, |X|.
    pub fn max_alphabet(&self) -> usize {
        *self.shape.iter().max().expect("non-empty shape")
    }

    /// Total storable information Σ_j log|X_j|, in `unit`.
    pub fn capacity(&self, unit: LogUnit) -> f64 {
        unit.from_nats(self.shape.iter().map(|&s| (s as f64).ln()).sum())
    }

    /// Row-major flat index of a full coordinate tuple.
    pub fn flat_index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.shape.len());
        let mut idx = 0;
        for (c, s) in coords.iter().zip(&self.shape) {
            debug_assert!(c < s);
            idx = idx * s + c;
        }
        idx
    }

    /// Sums out every variable not in `keep`.
    pub fn marginalize(&self, keep: &IndexSet) -> Result<JointTable> {
        if keep.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        keep.validate(self.n())?;
        if keep.len() == self.n() {
            return Ok(self.clone());
        }
        let out_shape: Vec<usize> = keep.iter().map(|j| self.shape[j]).collect();
        let out_probs = self.marginal_probs(keep.as_slice());
        let mut out = JointTable {
            shape: out_shape,
            probs: out_probs,
            labels: None,
        };
        if let Some(labels) = &self.labels {
            out.labels = Some(keep.iter().map(|j| labels[j].clone()).collect());
        }
        Ok(out)
    }

    /// Raw marginal mass over the (sorted) kept axes, row-major.
    pub(crate) fn marginal_probs(&self, keep: &[usize]) -> Vec<f64> {
        let out_len: usize = keep.iter().map(|&j| self.shape[j]).product();
        let mut out = vec![0.0; out_len];
        // Strides of the kept axes inside the full flat index.
        let mut strides = vec![0usize; self.n()];
        let mut acc = 1usize;
        for j in (0..self.n()).rev() {
            strides[j] = acc;
            acc *= self.shape[j];
        }
        let plan: Vec<(usize, usize)> = keep
            .iter()
            .map(|&j| (strides[j], self.shape[j]))
            .collect();
        for (flat, &p) in self.probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut out_idx = 0usize;
            for &(stride, size) in &plan {
                out_idx = out_idx * size + (flat / stride) % size;
            }
            out[out_idx] += p;
        }
        out
    }

    /// Independent concatenation: shape `a.shape ++ b.shape`,
    /// `p(x, y) = p_a(x) p_b(y)`.
    pub fn product(&self, other: &JointTable) -> JointTable {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut probs = Vec::with_capacity(self.probs.len() * other.probs.len());
        for &pa in &self.probs {
            for &pb in &other.probs {
                probs.push(pa * pb);
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        JointTable {
            shape,
            probs,
            labels,
        }
    }

    /// Shannon entropy −Σ p log p in `unit`, with 0·log 0 = 0.
    pub fn entropy(&self, unit: LogUnit) -> f64 {
        unit.from_nats(self.entropy_nats())
    }

    pub(crate) fn entropy_nats(&self) -> f64 {
        entropy_nats_of(&self.probs)
    }

    /// Entropy of the marginal over `subset`, in nats. Empty set gives 0.
    pub(crate) fn subset_entropy_nats(&self, subset: &IndexSet) -> f64 {
        if subset.is_empty() {
            return 0.0;
        }
        if subset.len() == self.n() {
            return self.entropy_nats();
        }
        entropy_nats_of(&self.marginal_probs(subset.as_slice()))
    }

    /// H(target | given) = H(target ∪ given) − H(given), clamped at zero
    /// against negative rounding residue.
    pub fn conditional_entropy(
        &self,
        target: &IndexSet,
        given: &IndexSet,
        unit: LogUnit,
    ) -> Result<f64> {
        if target.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        target.validate(self.n())?;
        given.validate(self.n())?;
        if !target.is_disjoint(given) {
            return Err(Error::OverlappingSets);
        }
        let h = self.subset_entropy_nats(&target.union(given)) - self.subset_entropy_nats(given);
        Ok(unit.from_nats(clamp_rounding(h)))
    }

    /// I(a; b | given), with `given = None` meaning plain mutual information.
    /// Clamped at zero against negative rounding residue.
    pub fn mutual_information(
        &self,
        a: &IndexSet,
        b: &IndexSet,
        given: Option<&IndexSet>,
        unit: LogUnit,
    ) -> Result<f64> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let empty = IndexSet::empty();
        let g = given.unwrap_or(&empty);
        a.validate(self.n())?;
        b.validate(self.n())?;
        g.validate(self.n())?;
        if !a.is_disjoint(b) || !a.is_disjoint(g) || !b.is_disjoint(g) {
            return Err(Error::OverlappingSets);
        }
        let i = self.subset_entropy_nats(&a.union(g)) + self.subset_entropy_nats(&b.union(g))
            - self.subset_entropy_nats(&a.union(b).union(g))
            - self.subset_entropy_nats(g);
        Ok(unit.from_nats(clamp_rounding(i)))
    }

    pub fn to_json_string(&self) -> String {
        let dto = JointTableJson {
            shape: self.shape.clone(),
            probs: self.probs.clone(),
            labels: self.labels.clone(),
        };
        serde_json::to_string_pretty(&dto).expect("table serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<JointTable> {
        let dto: JointTableJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let table = JointTable::new(dto.shape, dto.probs)?;
        match dto.labels {
            Some(labels) => table.with_labels(labels),
            None => Ok(table),
        }
    }
}

pub(crate) fn entropy_nats_of(probs: &[f64]) -> f64 {
    let h = compensated_sum(
        probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln()),
    );
    // A lone entry can sit at 1 + ulp after renormalization; never report
    // negative entropy.
    h.max(0.0)
}

fn clamp_rounding(v: f64) -> f64 {
    if (ROUNDING_FLOOR..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}
