//! Finite root systems built from Cartan data.
//!
//! Roots live in the root lattice in simple-root coordinates. All pairings go
//! through the Cartan matrix, so constructing the positive roots and the Weyl
//! group never needs rational arithmetic; only rho is rational.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_HEIGHT_CAP: i64 = 100;
pub const DEFAULT_WEYL_ORDER_CAP: usize = 10_000_000;

/// A Cartan type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Result<Self> {
        let family = family.to_ascii_uppercase();
        let ok = match family {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 3,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType { family, rank })
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A validated, symmetrizable generalized Cartan matrix.
///
/// `entries[i][j] = 2(a_i, a_j)/(a_i, a_i)`; the symmetrizer `d` satisfies
/// `d_i A_ij = d_j A_ji` and is stored with minimal positive integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    kind: Option<CartanType>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCartan("rank must be positive".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "A[{0}][{0}] = {1} != 2",
                    i + 1,
                    row[i]
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal A[{}][{}] = {a} is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (a == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "zero pattern not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let symmetrizer = symmetrizer(&entries)?;
        Ok(CartanMatrix {
            entries,
            symmetrizer,
            kind: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn kind(&self) -> Option<CartanType> {
        self.kind
    }

    /// Symmetric form on simple roots: `B_ij = d_i A_ij`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.entries[i][j]
    }
}

// Propagate d_j = d_i A_ij / A_ji over each connected component, then clear
// denominators and common factors.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = di * Rational64::new(a[i][j], a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = d.iter().map(|r| (r * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

/// Standard Cartan matrix of a simple Lie algebra, Bourbaki numbering.
///
/// For `G2` the first simple root is long: `[[2,-1],[-3,2]]`.
pub fn cartan_matrix(family: char, rank: usize) -> Result<CartanMatrix> {
    let kind = CartanType::new(family, rank)?;
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind.family {
        'A' | 'B' | 'C' => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        'D' => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        'E' => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        'F' => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        'G' => link(0, 1),
        _ => unreachable!(),
    }
    match kind.family {
        // alpha_n short
        'B' => a[n - 1][n - 2] = -2,
        // alpha_n long
        'C' => a[n - 2][n - 1] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        'F' => a[2][1] = -2,
        // alpha_1 long
        'G' => a[1][0] = -3,
        _ => {}
    }
    let mut m = CartanMatrix::new(a)?;
    m.kind = Some(kind);
    Ok(m)
}

/// An element of the root lattice in simple-root coordinates.
///
/// Ordered by height, then lexicographically by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootVector {
    coords: Vec<i64>,
    height: i64,
}

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        let height = coords.iter().sum();
        RootVector { coords, height }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Membership in Q+: every coordinate nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        RootVector {
            coords: self.coords.iter().map(|&c| c * k).collect(),
            height: self.height * k,
        }
    }

    /// `self + k * alpha_i`.
    pub fn add_simple(&self, i: usize, k: i64) -> Self {
        let mut out = self.clone();
        out.coords[i] += k;
        out.height += k;
        out
    }
}

impl Ord for RootVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height
            .cmp(&other.height)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for RootVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&RootVector> for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        RootVector::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub<&RootVector> for &RootVector {
    type Output = RootVector;
    fn sub(self, rhs: &RootVector) -> RootVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        RootVector::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        self.scaled(-1)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Positive roots of a finite root system together with rho, the highest
/// long root and the number of roots at each height.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive_roots: Vec<RootVector>,
    index: HashMap<Vec<i64>, usize>,
    rho: Vec<Rational64>,
    theta: RootVector,
    height_counts: Vec<usize>,
}

impl RootSystem {
    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// `A2`, `G2`, ... or `custom` for hand-built matrices.
    pub fn label(&self) -> String {
        self.cartan
            .kind()
            .map_or_else(|| "custom".to_string(), |k| k.to_string())
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    /// Position of a positive root in the canonical order.
    pub fn root_index(&self, beta: &RootVector) -> Option<usize> {
        self.index.get(beta.coords()).copied()
    }

    pub fn is_positive_root(&self, beta: &RootVector) -> bool {
        self.index.contains_key(beta.coords())
    }

    /// Positive or negative root.
    pub fn is_root(&self, beta: &RootVector) -> bool {
        self.is_positive_root(beta) || self.is_positive_root(&-beta)
    }

    /// Index of the simple root `alpha_i` in the canonical order.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.index[RootVector::simple(self.rank(), i).coords()]
    }

    pub fn rho(&self) -> &[Rational64] {
        &self.rho
    }

    pub fn theta(&self) -> &RootVector {
        &self.theta
    }

    /// `a_h = #{positive roots of height h}` for `h = 1, 2, ...`.
    pub fn height_counts(&self) -> &[usize] {
        &self.height_counts
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    fn check_dim(&self, beta: &RootVector) -> Result<()> {
        if beta.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: beta.rank(),
            })
        }
    }

    /// `2(beta, alpha_i)/(alpha_i, alpha_i) = sum_j A_ij b_j`.
    pub fn pairing(&self, beta: &RootVector, i: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_dim(beta)?;
        Ok(pairing_raw(&self.cartan, beta.coords(), i))
    }

    /// The invariant form `(beta, gamma)` normalized by the symmetrizer.
    pub fn inner_product(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if beta.coords[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += beta.coords[i] * self.cartan.form(i, j) * gamma.coords[j];
            }
        }
        s
    }

    /// `s_i beta = beta - <beta, alpha_i^vee> alpha_i`.
    pub fn simple_reflection(&self, i: usize, beta: &RootVector) -> Result<RootVector> {
        let k = self.pairing(beta, i)?;
        Ok(beta.add_simple(i, -k))
    }

    /// Length `k` of the alpha_i-string `beta, beta - alpha_i, ..., beta - k alpha_i`
    /// descending from a positive root with positive pairing. Every string
    /// member is checked to be a positive root.
    pub fn root_string_length(&self, beta: &RootVector, i: usize) -> Result<i64> {
        let k = self.pairing(beta, i)?;
        if !self.is_positive_root(beta) {
            return Err(Error::Precondition(format!(
                "{beta} is not a positive root"
            )));
        }
        if k <= 0 {
            return Err(Error::Precondition(format!(
                "pairing of {beta} with simple root {} is {k}, not positive",
                i + 1
            )));
        }
        if beta.height() == 1 {
            return Err(Error::Precondition(format!(
                "{beta} is a simple root; its string leaves the positive roots"
            )));
        }
        for j in 0..=k {
            let member = beta.add_simple(i, -j);
            if !self.is_positive_root(&member) {
                return Err(Error::Internal(format!(
                    "alpha_{}-string through {beta} contains non-root {member}",
                    i + 1
                )));
            }
        }
        Ok(k)
    }

    /// Squared length `(beta, beta)`.
    pub fn norm(&self, beta: &RootVector) -> i64 {
        self.inner_product(beta, beta)
    }
}

fn pairing_raw(cartan: &CartanMatrix, coords: &[i64], i: usize) -> i64 {
    cartan.entries[i]
        .iter()
        .zip(coords)
        .map(|(a, b)| a * b)
        .sum()
}

/// Close the simple roots under root strings, level by level in height.
///
/// At a root beta, the alpha_i-string through beta runs from beta - p alpha_i
/// to beta + q alpha_i with `p - q = <beta, alpha_i^vee>`, so beta + alpha_i is
/// a root exactly when `p > <beta, alpha_i^vee>`.
pub fn build_root_system(cartan: CartanMatrix, height_cap: i64) -> Result<RootSystem> {
    if height_cap < 1 {
        return Err(Error::Domain(format!(
            "height_cap must be >= 1, got {height_cap}"
        )));
    }
    let n = cartan.rank();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut roots: Vec<RootVector> = Vec::new();
    let mut level: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut height = 1;
    while !level.is_empty() {
        if height > height_cap {
            return Err(Error::NotFiniteType { cap: height_cap });
        }
        level.sort();
        for beta in &level {
            known.insert(beta.coords.clone());
        }
        let mut next: Vec<RootVector> = Vec::new();
        let mut seen_next: HashSet<Vec<i64>> = HashSet::new();
        for beta in &level {
            for i in 0..n {
                let mut p = 0;
                loop {
                    let down = beta.add_simple(i, -(p + 1));
                    if down.coords[i] < 0 || !known.contains(&down.coords) {
                        break;
                    }
                    p += 1;
                }
                if p > pairing_raw(&cartan, &beta.coords, i) {
                    let up = beta.add_simple(i, 1);
                    if seen_next.insert(up.coords.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.append(&mut level);
        level = next;
        height += 1;
    }

    let index: HashMap<Vec<i64>, usize> = roots
        .iter()
        .enumerate()
        .map(|(k, r)| (r.coords.clone(), k))
        .collect();

    let rho = solve_rho(&cartan)?;
    for (j, r) in rho.iter().enumerate() {
        let half_sum = Rational64::new(roots.iter().map(|b| b.coords[j]).sum(), 2);
        if *r != half_sum {
            return Err(Error::Internal(format!(
                "rho coordinate {} is {r} but half the positive-root sum gives {half_sum}",
                j + 1
            )));
        }
    }

    let mut system = RootSystem {
        cartan,
        positive_roots: roots,
        index,
        rho,
        theta: RootVector::zero(n),
        height_counts: Vec::new(),
    };

    let max_norm = system
        .positive_roots
        .iter()
        .map(|b| system.norm(b))
        .max()
        .unwrap_or(0);
    let long: Vec<&RootVector> = system
        .positive_roots
        .iter()
        .filter(|b| system.norm(b) == max_norm)
        .collect();
    let top = long.iter().map(|b| b.height).max().unwrap_or(0);
    let highest: Vec<&RootVector> = long.into_iter().filter(|b| b.height == top).collect();
    if highest.len() != 1 {
        return Err(Error::InvalidCartan(format!(
            "{} long roots of maximal height; the Cartan matrix is not of simple type",
            highest.len()
        )));
    }
    let theta = highest[0].clone();
    for i in 0..n {
        if system.is_positive_root(&theta.add_simple(i, 1)) {
            return Err(Error::Internal(format!(
                "theta + alpha_{} is a root",
                i + 1
            )));
        }
    }
    system.theta = theta;

    let max_height = system.positive_roots.last().map_or(0, |b| b.height) as usize;
    let mut counts = vec![0usize; max_height];
    for b in &system.positive_roots {
        counts[b.height as usize - 1] += 1;
    }
    system.height_counts = counts;
    Ok(system)
}

/// Convenience: standard type with the default height cap.
pub fn root_system(family: char, rank: usize) -> Result<RootSystem> {
    build_root_system(cartan_matrix(family, rank)?, DEFAULT_HEIGHT_CAP)
}

// Solve A rho = (1, ..., 1) by Gauss-Jordan elimination over the rationals.
fn solve_rho(cartan: &CartanMatrix) -> Result<Vec<Rational64>> {
    let n = cartan.rank();
    let mut m: Vec<Vec<Rational64>> = cartan
        .entries
        .iter()
        .map(|row| {
            let mut r: Vec<Rational64> = row.iter().map(|&a| Rational64::from_integer(a)).collect();
            r.push(Rational64::one());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::InvalidCartan("Cartan matrix is singular".into()))?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (x, &v) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * v;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n]).collect())
}

/// Every element of Q+ of height at most `max_height`, ordered by height then
/// lexicographically.
pub fn q_plus_up_to(rank: usize, max_height: i64) -> Vec<RootVector> {
    fn fill(prefix: &mut Vec<i64>, rank: usize, budget: i64, out: &mut Vec<RootVector>) {
        if prefix.len() == rank {
            out.push(RootVector::new(prefix.clone()));
            return;
        }
        for c in 0..=budget {
            prefix.push(c);
            fill(prefix, rank, budget - c, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_height >= 0 {
        fill(&mut Vec::with_capacity(rank), rank, max_height, &mut out);
    }
    out.sort();
    out
}

/// A Weyl group element acting on simple-root coordinates, with its sign
/// `(-1)^length`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    sign: i64,
    length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            rank,
            matrix,
            sign: 1,
            length: 0,
        }
    }

    /// The simple reflection `s_i` as a matrix: `I - e_i (row i of A)`.
    pub fn simple_reflection(cartan: &CartanMatrix, i: usize) -> Self {
        let n = cartan.rank();
        let mut w = Self::identity(n);
        for j in 0..n {
            w.matrix[i * n + j] -= cartan.entry(i, j);
        }
        w.sign = -1;
        w.length = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major `rank x rank` matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    /// Word length, i.e. the BFS level at which the element was found.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn compose(&self, rhs: &WeylElement) -> WeylElement {
        let n = self.rank;
        let mut matrix = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    matrix[i * n + j] += a * rhs.matrix[k * n + j];
                }
            }
        }
        WeylElement {
            rank: n,
            matrix,
            sign: self.sign * rhs.sign,
            length: self.length + rhs.length,
        }
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        let n = self.rank;
        RootVector::new(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i * n + j] * v.coords[j]).sum())
                .collect(),
        )
    }

    pub fn apply_rational(&self, v: &[Rational64]) -> Vec<Rational64> {
        let n = self.rank;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| v[j] * self.matrix[i * n + j])
                    .fold(Rational64::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.matrix, self.rank)
    }
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[i64], n: usize) -> i64 {
    let mut m: Vec<i128> = matrix.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return 0;
            };
            for c in 0..n {
                m.swap(k * n + c, r * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
        }
        prev = m[k * n + k];
    }
    (sign * m[n * n - 1]) as i64
}

/// Enumerate the Weyl group by breadth-first closure under left
/// multiplication by simple reflections.
///
/// Elements come out by word length, and lexicographically by matrix within
/// each length. Exceeding `order_cap` elements is an error.
pub fn weyl_group(system: &RootSystem, order_cap: usize) -> Result<Vec<WeylElement>> {
    if order_cap < 1 {
        return Err(Error::Domain("order_cap must be >= 1".into()));
    }
    let n = system.rank();
    let gens: Vec<WeylElement> = (0..n)
        .map(|i| WeylElement::simple_reflection(system.cartan(), i))
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let identity = WeylElement::identity(n);
    seen.insert(identity.matrix.clone());
    let mut all = vec![identity.clone()];
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next: Vec<WeylElement> = Vec::new();
        for w in &frontier {
            for s in &gens {
                let sw = s.compose(w);
                if seen.insert(sw.matrix.clone()) {
                    if seen.len() > order_cap {
                        return Err(Error::WeylGroupTooLarge { cap: order_cap });
                    }
                    next.push(sw);
                }
            }
        }
        next.sort_by(|a, b| a.matrix.cmp(&b.matrix));
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}
