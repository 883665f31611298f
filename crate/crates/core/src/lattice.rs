//! The lattice of set partitions of the variable indices, ordered by
//! refinement, and the edge-weight systems that decompose total
//! correlation, binding entropy and O-information along any path from the
//! one-cell partition to the all-singletons partition.
//!
//! Partitions are kept in canonical form (cells sorted by smallest element,
//! indices ascending), so equality, hashing and enumeration order are
//! well-defined. Full enumeration is capped: the node count grows with the
//! Bell numbers and the source-to-sink path count as n!(n−1)!/2^(n−1).

use std::fmt;

use crate::dist::{IndexSet, JointTable};
use crate::error::{Error, Result};
use crate::stats::compensated_sum;
use crate::unit::LogUnit;

/// Full lattice enumeration stops here by default (Bell(9) = 21147 nodes).
pub const DEFAULT_PARTITION_CAP: usize = 9;

/// Full path enumeration stops here by default (56700 paths at n = 7).
pub const DEFAULT_PATH_CAP: usize = 7;

/// A set partition of {0..n−1} in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    cells: Vec<IndexSet>,
    n: usize,
}

impl Partition {
    /// Builds a partition, validating disjointness and full coverage, and
    /// canonicalizing the cell order.
    pub fn new(cells: Vec<IndexSet>, n: usize) -> Result<Partition> {
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::EmptyIndexSet);
            }
            cell.validate(n)?;
            for i in cell.iter() {
                if seen[i] {
                    return Err(Error::InvalidParameter(format!(
                        "index {i} appears in more than one cell"
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidParameter(format!(
                "index {missing} is not covered by any cell"
            )));
        }
        let mut cells = cells;
        cells.sort_by_key(|c| c.as_slice()[0]);
        Ok(Partition { cells, n })
    }

    /// Builds from a per-variable cell assignment, e.g. [0, 1, 0] ↦ (13|2).
    pub fn from_assignment(assignment: &[usize]) -> Partition {
        let n = assignment.len();
        let cells_needed = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); cells_needed];
        for (i, &c) in assignment.iter().enumerate() {
            cells[c].push(i);
        }
        let cells: Vec<IndexSet> = cells
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(IndexSet::new)
            .collect();
        Partition::new(cells, n).expect("assignment always forms a partition")
    }

    /// The one-cell partition (12…n).
    pub fn source(n: usize) -> Partition {
        Partition {
            cells: vec![IndexSet::full(n)],
            n,
        }
    }

    /// The all-singletons partition (1|2|…|n).
    pub fn sink(n: usize) -> Partition {
        Partition {
            cells: (0..n).map(|i| IndexSet::from([i])).collect(),
            n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[IndexSet] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// True when `self` is finer than (or equal to) `coarser`: every cell
    /// of `self` sits inside one cell of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.n != coarser.n {
            return false;
        }
        self.cells.iter().all(|cell| {
            coarser
                .cells
                .iter()
                .any(|big| cell.iter().all(|i| big.contains(i)))
        })
    }
}

impl fmt::Display for Partition {
    /// Canonical string form, cells joined by `|` with 1-based indices
    /// concatenated: `13|2|4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, cell) in self.cells.iter().enumerate() {
            if pos > 0 {
                write!(f, "|")?;
            }
            for i in cell.iter() {
                write!(f, "{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Every partition of {0..n−1}, in deterministic (restricted-growth-string)
/// order. Exactly Bell(n) entries.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>> {
    all_partitions_with_cap(n, DEFAULT_PARTITION_CAP)
}

pub fn all_partitions_with_cap(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n < 1 || n > cap {
        return Err(Error::TooLarge {
            what: "partition lattice enumeration",
            n,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    loop {
        out.push(Partition::from_assignment(&assignment));
        // Next restricted growth string: digit i may reach
        // max(assignment[..i]) + 1.
        let mut i = n;
        let advanced = loop {
            if i <= 1 {
                break false;
            }
            i -= 1;
            let max_prev = assignment[..i].iter().copied().max().unwrap_or(0);
            if assignment[i] <= max_prev {
                assignment[i] += 1;
                for d in assignment.iter_mut().skip(i + 1) {
                    *d = 0;
                }
                break true;
            }
        };
        if !advanced {
            return Ok(out);
        }
    }
}

/// True iff `finer` is obtained from `coarser` by splitting exactly one
/// cell in two.
pub fn covers(coarser: &Partition, finer: &Partition) -> Result<bool> {
    if coarser.n() != finer.n() {
        return Err(Error::SizeMismatch(coarser.n(), finer.n()));
    }
    Ok(covering_split(coarser, finer).is_some())
}

/// If `finer` covers `coarser`, returns (index of the split cell in
/// `coarser`, the two parts).
fn covering_split(
    coarser: &Partition,
    finer: &Partition,
) -> Option<(usize, (IndexSet, IndexSet))> {
    if finer.num_cells() != coarser.num_cells() + 1 || !finer.refines(coarser) {
        return None;
    }
    let mut split: Option<(usize, Vec<&IndexSet>)> = None;
    for (idx, big) in coarser.cells().iter().enumerate() {
        let inside: Vec<&IndexSet> = finer
            .cells()
            .iter()
            .filter(|c| c.iter().all(|i| big.contains(i)))
            .collect();
        match inside.len() {
            1 => {}
            2 => {
                if split.is_some() {
                    return None;
                }
                split = Some((idx, inside));
            }
            _ => return None,
        }
    }
    split.map(|(idx, parts)| (idx, (parts[0].clone(), parts[1].clone())))
}

/// A covering edge of the lattice: `to` splits one cell of `from` in two.
#[derive(Clone, Debug)]
pub struct LatticeEdge {
    pub from: Partition,
    pub to: Partition,
    /// Index (in `from`'s canonical cell order) of the cell that was split.
    pub split_cell: usize,
    /// The two resulting parts, the one holding the smallest index first.
    pub parts: (IndexSet, IndexSet),
}

impl LatticeEdge {
    pub fn new(from: Partition, to: Partition) -> Result<LatticeEdge> {
        if from.n() != to.n() {
            return Err(Error::SizeMismatch(from.n(), to.n()));
        }
        let (split_cell, parts) =
            covering_split(&from, &to).ok_or(Error::NotACoveringEdge)?;
        Ok(LatticeEdge {
            from,
            to,
            split_cell,
            parts,
        })
    }

    /// The cells of `from` other than the split one.
    fn remainder(&self) -> IndexSet {
        let mut rest = Vec::new();
        for (idx, cell) in self.from.cells().iter().enumerate() {
            if idx != self.split_cell {
                rest.extend(cell.iter());
            }
        }
        IndexSet::new(rest)
    }

    /// Text form of the information term this edge realizes,
    /// e.g. `I(2;3|1)`.
    pub fn mi_description(&self) -> String {
        let fmt_set = |s: &IndexSet| -> String {
            s.iter().map(|i| (i + 1).to_string()).collect::<String>()
        };
        let rest = self.remainder();
        if rest.is_empty() {
            format!("I({};{})", fmt_set(&self.parts.0), fmt_set(&self.parts.1))
        } else {
            format!(
                "I({};{}|{})",
                fmt_set(&self.parts.0),
                fmt_set(&self.parts.1),
                fmt_set(&rest)
            )
        }
    }
}

/// A source-to-sink path: consecutive nodes in covering relation.
#[derive(Clone, Debug)]
pub struct LatticePath {
    nodes: Vec<Partition>,
}

impl LatticePath {
    pub fn new(nodes: Vec<Partition>) -> Result<LatticePath> {
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("empty path".into()));
        }
        let n = nodes[0].n();
        if nodes[0].num_cells() != 1 || nodes[nodes.len() - 1].num_cells() != n {
            return Err(Error::InvalidParameter(
                "a path must run from the one-cell partition to all singletons".into(),
            ));
        }
        for pair in nodes.windows(2) {
            if !covers(&pair[0], &pair[1])? {
                return Err(Error::NotACoveringEdge);
            }
        }
        Ok(LatticePath { nodes })
    }

    pub fn nodes(&self) -> &[Partition] {
        &self.nodes
    }

    pub fn edges(&self) -> Result<Vec<LatticeEdge>> {
        self.nodes
            .windows(2)
            .map(|pair| LatticeEdge::new(pair[0].clone(), pair[1].clone()))
            .collect()
    }
}

/// Every source-to-sink path, in deterministic depth-first order. The count
/// is n!(n−1)!/2^(n−1).
pub fn all_paths(n: usize) -> Result<Vec<LatticePath>> {
    all_paths_with_cap(n, DEFAULT_PATH_CAP)
}

pub fn all_paths_with_cap(n: usize, cap: usize) -> Result<Vec<LatticePath>> {
    if n < 1 || n > cap {
        return Err(Error::TooLarge {
            what: "path enumeration",
            n,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut stack = vec![Partition::source(n)];
    descend(&mut stack, &mut out);
    Ok(out)
}

fn descend(stack: &mut Vec<Partition>, out: &mut Vec<LatticePath>) {
    let current = stack.last().expect("non-empty stack").clone();
    if current.num_cells() == current.n() {
        out.push(LatticePath {
            nodes: stack.clone(),
        });
        return;
    }
    for next in covering_refinements(&current) {
        stack.push(next);
        descend(stack, out);
        stack.pop();
    }
}

/// All partitions covering `p`: each splittable cell divided in two, the
/// part keeping the cell's smallest element enumerated by ascending
/// bitmask over the remaining members.
fn covering_refinements(p: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for (idx, cell) in p.cells().iter().enumerate() {
        let members: Vec<usize> = cell.iter().collect();
        if members.len() < 2 {
            continue;
        }
        let movable = &members[1..];
        // mask selects which movable members stay with the smallest one;
        // the all-ones mask would leave the second part empty.
        for mask in 0..(1usize << movable.len()) - 1 {
            let mut part_a = vec![members[0]];
            let mut part_b = Vec::new();
            for (bit, &m) in movable.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    part_a.push(m);
                } else {
                    part_b.push(m);
                }
            }
            let mut cells: Vec<IndexSet> = Vec::with_capacity(p.num_cells() + 1);
            for (other_idx, other) in p.cells().iter().enumerate() {
                if other_idx != idx {
                    cells.push(other.clone());
                }
            }
            cells.push(IndexSet::new(part_a));
            cells.push(IndexSet::new(part_b));
            out.push(Partition::new(cells, p.n()).expect("split preserves partition"));
        }
    }
    out
}

/// The assembly path for a variable order: peel the last variable of
/// `order` off the big cell first, then the next, until all singletons.
pub fn assembly_path(n: usize, order: &[usize]) -> Result<LatticePath> {
    if order.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::NotAPermutation(n));
        }
        seen[i] = true;
    }
    let mut nodes = Vec::with_capacity(n);
    for step in 0..n {
        let split = n - step;
        let mut cells: Vec<IndexSet> = vec![IndexSet::new(order[..split].iter().copied())];
        for &peeled in &order[split..] {
            cells.push(IndexSet::from([peeled]));
        }
        nodes.push(Partition::new(cells, n)?);
    }
    // The last two nodes coincide when the big cell reaches size one.
    nodes.dedup();
    LatticePath::new(nodes)
}

/// H(π) = Σ_cells H(X^cell): the entropy of the product of cell marginals.
pub fn partition_entropy(t: &JointTable, p: &Partition, unit: LogUnit) -> Result<f64> {
    if p.n() != t.n() {
        return Err(Error::SizeMismatch(p.n(), t.n()));
    }
    let nats = compensated_sum(p.cells().iter().map(|c| t.subset_entropy_nats(c)));
    Ok(unit.from_nats(nats))
}

/// R(π) = Σ_cells H(X^cell | all other cells).
pub fn partition_residual(t: &JointTable, p: &Partition, unit: LogUnit) -> Result<f64> {
    if p.n() != t.n() {
        return Err(Error::SizeMismatch(p.n(), t.n()));
    }
    let h = t.entropy_nats();
    let nats = compensated_sum(
        p.cells()
            .iter()
            .map(|c| h - t.subset_entropy_nats(&c.complement(t.n()))),
    );
    Ok(unit.from_nats(nats))
}

/// The three weights of a covering edge:
/// v_h = H(π₂) − H(π₁), the mutual information between the split parts;
/// v_r = R(π₁) − R(π₂), the same conditioned on all other cells;
/// v_s = v_h − v_r, the interaction information of parts and remainder.
#[derive(Clone, Copy, Debug)]
pub struct EdgeWeights {
    pub v_h: f64,
    pub v_r: f64,
    pub v_s: f64,
}

pub fn edge_weights(t: &JointTable, edge: &LatticeEdge, unit: LogUnit) -> Result<EdgeWeights> {
    if edge.from.n() != t.n() {
        return Err(Error::SizeMismatch(edge.from.n(), t.n()));
    }
    let v_h = partition_entropy(t, &edge.to, LogUnit::NAT)?
        - partition_entropy(t, &edge.from, LogUnit::NAT)?;
    let v_r = partition_residual(t, &edge.from, LogUnit::NAT)?
        - partition_residual(t, &edge.to, LogUnit::NAT)?;
    let v_h = clamp_tiny_negative(v_h);
    let v_r = clamp_tiny_negative(v_r);
    Ok(EdgeWeights {
        v_h: unit.from_nats(v_h),
        v_r: unit.from_nats(v_r),
        v_s: unit.from_nats(v_h - v_r),
    })
}

fn clamp_tiny_negative(v: f64) -> f64 {
    if (-1e-12..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// One edge's contribution inside a path decomposition.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EdgeTerm {
    pub from: String,
    pub to: String,
    pub v_h: f64,
    pub v_r: f64,
    pub v_s: f64,
    /// The realized information term, e.g. `I(2;3|1)`.
    pub mi: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PathTotals {
    pub total_correlation: f64,
    pub binding_entropy: f64,
    pub o_information: f64,
}

/// Per-edge weight records along a path plus their accumulated totals,
/// which telescope to C, B and Ω.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PathDecomposition {
    pub edge_terms: Vec<EdgeTerm>,
    pub totals: PathTotals,
}

pub fn decompose_along(
    t: &JointTable,
    path: &LatticePath,
    unit: LogUnit,
) -> Result<PathDecomposition> {
    let mut edge_terms = Vec::with_capacity(path.nodes().len().saturating_sub(1));
    for pair in path.nodes().windows(2) {
        let edge = LatticeEdge::new(pair[0].clone(), pair[1].clone())?;
        let w = edge_weights(t, &edge, unit)?;
        edge_terms.push(EdgeTerm {
            from: edge.from.to_string(),
            to: edge.to.to_string(),
            v_h: w.v_h,
            v_r: w.v_r,
            v_s: w.v_s,
            mi: edge.mi_description(),
        });
    }
    let totals = PathTotals {
        total_correlation: compensated_sum(edge_terms.iter().map(|e| e.v_h)),
        binding_entropy: compensated_sum(edge_terms.iter().map(|e| e.v_r)),
        o_information: compensated_sum(edge_terms.iter().map(|e| e.v_s)),
    };
    Ok(PathDecomposition { edge_terms, totals })
}
