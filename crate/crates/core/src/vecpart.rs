//! Partitions of `gamma` in Q+ into positive roots.
//!
//! A partition `pi: gamma = sum c_alpha alpha` has `n(pi) = sum c_alpha` parts and
//! `d(pi) = #{alpha : c_alpha != 0}` distinct parts. Its weight is
//! `t^(n-d) (t-1)^d`, and the weights summed over all partitions of `gamma` give
//! the coefficient of `e^{-gamma}` in xi.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{q_plus_up_to, RootSystem, RootVector};
use crate::tpoly::TPoly;

pub const DEFAULT_PARTITION_CAP: usize = 10_000_000;

/// A multiset of positive roots, stored as `(root index, multiplicity)` pairs
/// with indices into the system's canonical positive-root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorPartition {
    target: RootVector,
    parts: Vec<(usize, u32)>,
    n: u32,
}

#[derive(Serialize)]
struct PartRecord<'a> {
    root: &'a [i64],
    count: u32,
}

impl VectorPartition {
    /// Build from `(root index, count)` pairs, checking that the parts sum to
    /// `target`.
    pub fn new(target: RootVector, parts: Vec<(usize, u32)>, system: &RootSystem) -> Result<Self> {
        let mut merged: BTreeMap<usize, u32> = BTreeMap::new();
        for (idx, c) in parts {
            if idx >= system.positive_roots().len() {
                return Err(Error::Precondition(format!(
                    "no positive root with index {idx}"
                )));
            }
            if c > 0 {
                *merged.entry(idx).or_default() += c;
            }
        }
        let parts: Vec<(usize, u32)> = merged.into_iter().collect();
        let mut sum = RootVector::zero(system.rank());
        for &(idx, c) in &parts {
            sum = &sum + &system.positive_roots()[idx].scaled(c as i64);
        }
        if sum != target {
            return Err(Error::Precondition(format!(
                "parts sum to {sum}, not to {target}"
            )));
        }
        Ok(Self::from_sorted(target, parts))
    }

    fn from_sorted(target: RootVector, parts: Vec<(usize, u32)>) -> Self {
        let n = parts.iter().map(|&(_, c)| c).sum();
        VectorPartition { target, parts, n }
    }

    pub fn empty(rank: usize) -> Self {
        Self::from_sorted(RootVector::zero(rank), Vec::new())
    }

    pub fn target(&self) -> &RootVector {
        &self.target
    }

    /// `(root index, multiplicity)` pairs in increasing index order.
    pub fn parts(&self) -> &[(usize, u32)] {
        &self.parts
    }

    /// Total number of parts, with repetition.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of distinct parts.
    pub fn d(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn multiplicity(&self, root_index: usize) -> u32 {
        self.parts
            .binary_search_by_key(&root_index, |&(i, _)| i)
            .map_or(0, |k| self.parts[k].1)
    }

    /// `t^(n-d) (t-1)^d`.
    pub fn weight(&self) -> TPoly {
        partition_weight(self.n, self.d())
    }

    /// `[{"root": [...], "count": c}, ...]` in canonical root order.
    pub fn to_json(&self, system: &RootSystem) -> String {
        let records: Vec<PartRecord> = self
            .parts
            .iter()
            .map(|&(idx, count)| PartRecord {
                root: system.positive_roots()[idx].coords(),
                count,
            })
            .collect();
        serde_json::to_string(&records).expect("partition records serialize")
    }
}

/// `t^(n-d) (t-1)^d`.
pub fn partition_weight(n: u32, d: u32) -> TPoly {
    TPoly::from_i64s(&[-1, 1]).pow(d).shift((n - d) as usize)
}

/// `wt(A)`: the sum of the weights of a set of partitions.
pub fn weight_of(partitions: &[VectorPartition]) -> TPoly {
    histogram_weight(&histogram(partitions.iter().map(|p| (p.n, p.d()))))
}

fn histogram(nd: impl Iterator<Item = (u32, u32)>) -> BTreeMap<(u32, u32), u64> {
    let mut h = BTreeMap::new();
    for key in nd {
        *h.entry(key).or_insert(0u64) += 1;
    }
    h
}

fn histogram_weight(h: &BTreeMap<(u32, u32), u64>) -> TPoly {
    h.iter()
        .map(|(&(n, d), &count)| partition_weight(n, d).scale(count))
        .sum()
}

fn q_plus_target(gamma: &RootVector, system: &RootSystem) -> Result<()> {
    if gamma.rank() != system.rank() {
        return Err(Error::DimensionMismatch {
            expected: system.rank(),
            got: gamma.rank(),
        });
    }
    if !gamma.is_nonnegative() {
        return Err(Error::Precondition(format!("{gamma} is not in Q+")));
    }
    Ok(())
}

/// Depth-first search over multiplicity vectors.
///
/// Roots are visited from the last canonical index down, trying the largest
/// feasible multiplicity first. The simple roots come first in canonical order,
/// so once only they remain their multiplicities are forced by the remainder and
/// every branch of the search ends in a partition.
struct Descent<'a, F: FnMut(&[u32])> {
    roots: &'a [RootVector],
    // canonical index of alpha_j, by coordinate j
    simple_at: Vec<usize>,
    mult: Vec<u32>,
    emitted: usize,
    cap: usize,
    visit: F,
}

impl<F: FnMut(&[u32])> Descent<'_, F> {
    fn run(&mut self, level: usize, rem: &mut [i64]) -> Result<()> {
        let rank = rem.len();
        if level < rank {
            for (j, &r) in rem.iter().enumerate() {
                self.mult[self.simple_at[j]] = r as u32;
            }
            self.emitted += 1;
            if self.emitted > self.cap {
                return Err(Error::PartitionCapExceeded { cap: self.cap });
            }
            (self.visit)(&self.mult);
            for &k in &self.simple_at {
                self.mult[k] = 0;
            }
            return Ok(());
        }
        let root = self.roots[level].coords();
        let max = root
            .iter()
            .zip(rem.iter())
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0);
        for c in (0..=max).rev() {
            for (x, &a) in rem.iter_mut().zip(root) {
                *x -= c * a;
            }
            self.mult[level] = c as u32;
            let res = self.run(level - 1, rem);
            for (x, &a) in rem.iter_mut().zip(root) {
                *x += c * a;
            }
            res?;
        }
        self.mult[level] = 0;
        Ok(())
    }
}

/// Visit the dense multiplicity vector (indexed by canonical root index) of
/// every partition of `gamma`.
pub fn for_each_partition<F: FnMut(&[u32])>(
    gamma: &RootVector,
    system: &RootSystem,
    cap: usize,
    visit: F,
) -> Result<()> {
    q_plus_target(gamma, system)?;
    let rank = system.rank();
    let roots = system.positive_roots();
    let simple_at = (0..rank).map(|j| system.simple_root_index(j)).collect();
    debug_assert!((0..rank).all(|j| system.simple_root_index(j) < rank));
    let mut descent = Descent {
        roots,
        simple_at,
        mult: vec![0; roots.len()],
        emitted: 0,
        cap,
        visit,
    };
    let mut rem = gamma.coords().to_vec();
    descent.run(roots.len() - 1, &mut rem)
}

/// All partitions of `gamma`, capped at [`DEFAULT_PARTITION_CAP`].
pub fn enumerate_partitions(
    gamma: &RootVector,
    system: &RootSystem,
) -> Result<Vec<VectorPartition>> {
    enumerate_partitions_capped(gamma, system, DEFAULT_PARTITION_CAP)
}

/// Partitions come out in descending lexicographic order of the multiplicity
/// vector read from the highest canonical root down.
pub fn enumerate_partitions_capped(
    gamma: &RootVector,
    system: &RootSystem,
    cap: usize,
) -> Result<Vec<VectorPartition>> {
    let mut out = Vec::new();
    for_each_partition(gamma, system, cap, |mult| {
        let parts = mult
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k, c))
            .collect();
        out.push(VectorPartition::from_sorted(gamma.clone(), parts));
    })?;
    Ok(out)
}

/// Number of partitions of `gamma` keyed by `(n, d)`.
pub fn nd_histogram(
    gamma: &RootVector,
    system: &RootSystem,
    cap: usize,
) -> Result<BTreeMap<(u32, u32), u64>> {
    let mut h = BTreeMap::new();
    for_each_partition(gamma, system, cap, |mult| {
        let (n, d) = mult
            .iter()
            .filter(|&&c| c > 0)
            .fold((0, 0), |(n, d), &c| (n + c, d + 1));
        *h.entry((n, d)).or_insert(0u64) += 1;
    })?;
    Ok(h)
}

/// Coefficient of `e^{-gamma}` in xi as the weighted sum over partitions.
pub fn xi_coefficient_comb(gamma: &RootVector, system: &RootSystem) -> Result<TPoly> {
    xi_coefficient_comb_capped(gamma, system, DEFAULT_PARTITION_CAP)
}

pub fn xi_coefficient_comb_capped(
    gamma: &RootVector,
    system: &RootSystem,
    cap: usize,
) -> Result<TPoly> {
    Ok(histogram_weight(&nd_histogram(gamma, system, cap)?))
}

fn check_simple(i: usize, system: &RootSystem) -> Result<()> {
    if i < system.rank() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: i,
            rank: system.rank(),
        })
    }
}

/// `(P_i(gamma), P_not_i(gamma))`: partitions that do and do not use `alpha_i`.
pub fn split_by_simple(
    gamma: &RootVector,
    i: usize,
    system: &RootSystem,
) -> Result<(Vec<VectorPartition>, Vec<VectorPartition>)> {
    check_simple(i, system)?;
    let simple = system.simple_root_index(i);
    Ok(enumerate_partitions(gamma, system)?
        .into_iter()
        .partition(|p| p.multiplicity(simple) > 0))
}

/// The part-wise reflection `pi -> s_i pi` from `P_not_i(beta)` to
/// `P_not_i(s_i beta)`. Each image part is checked to be a positive root
/// other than `alpha_i`.
pub fn fact1_map(pi: &VectorPartition, i: usize, system: &RootSystem) -> Result<VectorPartition> {
    check_simple(i, system)?;
    let simple = system.simple_root_index(i);
    if pi.multiplicity(simple) > 0 {
        return Err(Error::Precondition(format!(
            "partition of {} uses alpha_{}",
            pi.target(),
            i + 1
        )));
    }
    let target = system.simple_reflection(i, pi.target())?;
    if !target.is_nonnegative() {
        return Err(Error::Precondition(format!(
            "s_{} of {} is {target}, not in Q+",
            i + 1,
            pi.target()
        )));
    }
    let mut parts = Vec::with_capacity(pi.parts.len());
    for &(idx, c) in &pi.parts {
        let image = system.simple_reflection(i, &system.positive_roots()[idx])?;
        let k = system
            .root_index(&image)
            .filter(|&k| k != simple)
            .ok_or_else(|| {
                Error::Internal(format!(
                    "s_{} maps part {} to {image}, not a positive root other than alpha_{}",
                    i + 1,
                    system.positive_roots()[idx],
                    i + 1
                ))
            })?;
        parts.push((k, c));
    }
    parts.sort_unstable();
    let mapped = VectorPartition::from_sorted(target, parts);
    if mapped.n() != pi.n() || mapped.d() != pi.d() {
        return Err(Error::Internal("reflection changed (n, d)".into()));
    }
    Ok(mapped)
}

/// Outcome of checking the reflection bijection `P_not_i(beta) -> P_not_i(s_i beta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact1Check {
    pub source_weight: TPoly,
    pub image_weight: TPoly,
    pub source_count: usize,
    pub image_count: usize,
    pub injective: bool,
    pub lands_in_image_set: bool,
    pub involutive: bool,
}

impl Fact1Check {
    pub fn holds(&self) -> bool {
        self.source_weight == self.image_weight
            && self.source_count == self.image_count
            && self.injective
            && self.lands_in_image_set
            && self.involutive
    }
}

/// Map every partition of `P_not_i(beta)` and compare against an independent
/// enumeration of `P_not_i(s_i beta)`.
pub fn fact1_check(beta: &RootVector, i: usize, system: &RootSystem) -> Result<Fact1Check> {
    let (_, source) = split_by_simple(beta, i, system)?;
    let reflected = system.simple_reflection(i, beta)?;
    if !reflected.is_nonnegative() {
        return Err(Error::Precondition(format!(
            "s_{} of {beta} is {reflected}, not in Q+",
            i + 1
        )));
    }
    let (_, image_set) = split_by_simple(&reflected, i, system)?;
    let image_set: HashSet<&VectorPartition> = image_set.iter().collect();

    let mut images = HashSet::new();
    let mut lands = true;
    let mut involutive = true;
    let mut image_weight = TPoly::zero();
    for pi in &source {
        let mapped = fact1_map(pi, i, system)?;
        lands &= image_set.contains(&mapped);
        involutive &= fact1_map(&mapped, i, system)? == *pi;
        image_weight += &mapped.weight();
        images.insert(mapped);
    }
    Ok(Fact1Check {
        source_weight: weight_of(&source),
        image_weight,
        source_count: source.len(),
        image_count: image_set.len(),
        injective: images.len() == source.len(),
        lands_in_image_set: lands,
        involutive,
    })
}

/// Both sides of `wt(P_i(beta)) = t wt(P_i(beta - alpha_i)) + (t-1) wt(P_not_i(beta - alpha_i))`.
pub fn fact2_sides(beta: &RootVector, i: usize, system: &RootSystem) -> Result<(TPoly, TPoly)> {
    check_simple(i, system)?;
    let lower = beta.add_simple(i, -1);
    if !lower.is_nonnegative() {
        return Err(Error::Precondition(format!(
            "{beta} - alpha_{} is not in Q+",
            i + 1
        )));
    }
    let (with_i, _) = split_by_simple(beta, i, system)?;
    let (lower_with, lower_without) = split_by_simple(&lower, i, system)?;
    let lhs = weight_of(&with_i);
    let rhs = &TPoly::t() * &weight_of(&lower_with)
        + &TPoly::from_i64s(&[-1, 1]) * &weight_of(&lower_without);
    Ok((lhs, rhs))
}

pub fn verify_fact2(beta: &RootVector, i: usize, system: &RootSystem) -> Result<bool> {
    let (lhs, rhs) = fact2_sides(beta, i, system)?;
    Ok(lhs == rhs)
}

/// Both sides of the recursion summed along the alpha_i-string through a
/// positive root `beta` of length `k`:
/// `wt(P_i(beta)) - wt(P_i(beta - k alpha_i)) = (t-1) sum_{j=1..k} wt(P(beta - j alpha_i))`.
pub fn telescope_sides(beta: &RootVector, i: usize, system: &RootSystem) -> Result<(TPoly, TPoly)> {
    let k = system.root_string_length(beta, i)?;
    let (top, _) = split_by_simple(beta, i, system)?;
    let (bottom, _) = split_by_simple(&beta.add_simple(i, -k), i, system)?;
    let lhs = weight_of(&top) - weight_of(&bottom);
    let mut sum = TPoly::zero();
    for j in 1..=k {
        sum += &xi_coefficient_comb(&beta.add_simple(i, -j), system)?;
    }
    Ok((lhs, &TPoly::from_i64s(&[-1, 1]) * &sum))
}

/// Partition weights of one `gamma`, in total and split by each simple root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWeights {
    /// `wt(P(gamma))`
    pub total: TPoly,
    /// `wt(P_i(gamma))` for each simple root index `i`
    pub with_simple: Vec<TPoly>,
    /// `wt(P_not_i(gamma))` for each simple root index `i`
    pub without_simple: Vec<TPoly>,
}

/// Split weights for every `gamma` in Q+ up to a height, one enumeration per
/// `gamma`.
#[derive(Clone, Debug)]
pub struct WeightTable {
    max_height: i64,
    entries: HashMap<Vec<i64>, SplitWeights>,
}

impl WeightTable {
    pub fn build(system: &RootSystem, max_height: i64, cap: usize) -> Result<Self> {
        let rank = system.rank();
        let simple: Vec<usize> = (0..rank).map(|i| system.simple_root_index(i)).collect();
        let mut entries = HashMap::new();
        for gamma in q_plus_up_to(rank, max_height) {
            let mut total = BTreeMap::new();
            let mut with: Vec<BTreeMap<(u32, u32), u64>> = vec![BTreeMap::new(); rank];
            let mut without = with.clone();
            for_each_partition(&gamma, system, cap, |mult| {
                let (n, d) = mult
                    .iter()
                    .filter(|&&c| c > 0)
                    .fold((0, 0), |(n, d), &c| (n + c, d + 1));
                *total.entry((n, d)).or_insert(0u64) += 1;
                for (i, &k) in simple.iter().enumerate() {
                    let side = if mult[k] > 0 {
                        &mut with[i]
                    } else {
                        &mut without[i]
                    };
                    *side.entry((n, d)).or_insert(0u64) += 1;
                }
            })?;
            entries.insert(
                gamma.coords().to_vec(),
                SplitWeights {
                    total: histogram_weight(&total),
                    with_simple: with.iter().map(histogram_weight).collect(),
                    without_simple: without.iter().map(histogram_weight).collect(),
                },
            );
        }
        Ok(WeightTable {
            max_height,
            entries,
        })
    }

    pub fn max_height(&self) -> i64 {
        self.max_height
    }

    /// `None` outside Q+ or above the table height.
    pub fn get(&self, gamma: &RootVector) -> Option<&SplitWeights> {
        self.entries.get(gamma.coords())
    }
}
