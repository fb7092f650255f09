//! Verifiers for the coefficient formula `[e^{-beta}] xi = t^ht(beta) - t^(ht(beta)-1)`,
//! the Kostka-Foulkes value `K_{theta,0}(t)` and the duality between
//! exponents and the numbers of positive roots at each height.
//!
//! Failures of a claim are recorded in a [`VerificationReport`]; only cap
//! violations and broken preconditions surface as errors.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fseries::xi_series;
use crate::rootsys::{q_plus_up_to, weyl_group, RootSystem, RootVector, DEFAULT_WEYL_ORDER_CAP};
use crate::tpoly::{monomial_gap, TPoly};
use crate::vecpart::{
    fact1_check, nd_histogram, xi_coefficient_comb_capped, WeightTable, DEFAULT_PARTITION_CAP,
};

/// Largest Weyl group summed over without opting into the slow tier.
pub const FAST_TIER_WEYL_ORDER: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub weyl_order_cap: usize,
    pub partition_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl_order_cap: DEFAULT_WEYL_ORDER_CAP,
            partition_cap: DEFAULT_PARTITION_CAP,
        }
    }
}

/// One checked claim. `expected` and `computed` are kept even on success.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<i64>>,
    /// 1-based simple root index, for claims about a particular `alpha_i`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple: Option<usize>,
    pub expected: TPoly,
    pub computed: TPoly,
    /// Second, independently computed value that must also equal `expected`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<TPoly>,
    pub pass: bool,
}

impl ClaimRecord {
    pub fn new(id: impl Into<String>, expected: TPoly, computed: TPoly) -> Self {
        let pass = expected == computed;
        ClaimRecord {
            id: id.into(),
            beta: None,
            simple: None,
            expected,
            computed,
            cross_check: None,
            pass,
        }
    }

    pub fn with_beta(mut self, beta: &RootVector) -> Self {
        self.beta = Some(beta.coords().to_vec());
        self
    }

    pub fn with_simple(mut self, i: usize) -> Self {
        self.simple = Some(i + 1);
        self
    }

    pub fn with_cross_check(mut self, value: TPoly) -> Self {
        self.pass &= value == self.expected;
        self.cross_check = Some(value);
        self
    }

    /// AND an extra structural condition into the verdict.
    pub fn require(mut self, condition: bool) -> Self {
        self.pass &= condition;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub system: String,
    pub claims: Vec<ClaimRecord>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(system: impl Into<String>) -> Self {
        VerificationReport {
            system: system.into(),
            claims: Vec::new(),
            pass: true,
            elapsed: Duration::ZERO,
        }
    }

    pub fn push(&mut self, claim: ClaimRecord) {
        self.pass &= claim.pass;
        self.claims.push(claim);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.claims {
            self.push(c);
        }
        self.elapsed += other.elapsed;
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

fn timed<F>(system: &RootSystem, body: F) -> Result<VerificationReport>
where
    F: FnOnce(&mut VerificationReport) -> Result<()>,
{
    let start = Instant::now();
    let mut report = VerificationReport::new(system.label());
    body(&mut report)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Exponents `m_1 <= ... <= m_l`, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ExponentMultiset(Vec<usize>);

impl ExponentMultiset {
    pub fn new(mut exponents: Vec<usize>) -> Self {
        exponents.sort_unstable();
        ExponentMultiset(exponents)
    }

    pub fn ascending(&self) -> &[usize] {
        &self.0
    }

    pub fn descending(&self) -> Vec<usize> {
        self.0.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// `sum_j t^{m_j}`.
    pub fn generating_poly(&self) -> TPoly {
        self.0.iter().map(|&m| TPoly::monomial(1, m)).sum()
    }

    /// `prod (m_j + 1)`, the order of the Weyl group.
    pub fn degree_product(&self) -> u64 {
        self.0.iter().map(|&m| m as u64 + 1).product()
    }
}

/// Column lengths of the Young diagram with the given row lengths.
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let longest = parts.iter().copied().max().unwrap_or(0);
    (1..=longest)
        .map(|j| parts.iter().filter(|&&p| p >= j).count())
        .collect()
}

/// Check both computations of every positive root's coefficient in xi against
/// `t^ht - t^(ht-1)`: the truncated product and the partition sum.
pub fn verify_prop1(system: &RootSystem) -> Result<VerificationReport> {
    verify_prop1_capped(system, &Caps::default())
}

pub fn verify_prop1_capped(system: &RootSystem, caps: &Caps) -> Result<VerificationReport> {
    timed(system, |report| {
        let xi = xi_series(system, system.theta().height())?;
        for beta in system.positive_roots() {
            let expected = monomial_gap(beta.height())?;
            let comb = xi_coefficient_comb_capped(beta, system, caps.partition_cap)?;
            let series = xi.coefficient(beta)?;
            report.push(
                ClaimRecord::new("prop1", expected, comb)
                    .with_beta(beta)
                    .with_cross_check(series),
            );
        }
        Ok(())
    })
}

/// `t`-analog of Kostant's partition function, `sum_{pi in P(gamma)} t^{n(pi)}`.
/// Zero off Q+.
pub fn t_kostant(gamma: &RootVector, system: &RootSystem) -> Result<TPoly> {
    t_kostant_capped(gamma, system, DEFAULT_PARTITION_CAP)
}

pub fn t_kostant_capped(gamma: &RootVector, system: &RootSystem, cap: usize) -> Result<TPoly> {
    if gamma.rank() != system.rank() {
        return Err(Error::DimensionMismatch {
            expected: system.rank(),
            got: gamma.rank(),
        });
    }
    if !gamma.is_nonnegative() {
        return Ok(TPoly::zero());
    }
    Ok(nd_histogram(gamma, system, cap)?
        .into_iter()
        .map(|((n, _), count)| TPoly::monomial(count, n as usize))
        .sum())
}

/// `K_{theta,0}(t) = sum_{w in W} (-1)^l(w) P_t(w(theta + rho) - rho)`.
pub fn kostka_theta(system: &RootSystem) -> Result<TPoly> {
    kostka_theta_capped(system, &Caps::default())
}

pub fn kostka_theta_capped(system: &RootSystem, caps: &Caps) -> Result<TPoly> {
    let rank = system.rank();
    let shifted: Vec<_> = system
        .theta()
        .coords()
        .iter()
        .zip(system.rho())
        .map(|(&t, r)| r + t)
        .collect();
    let group = weyl_group(system, caps.weyl_order_cap)?;
    let mut memo: HashMap<Vec<i64>, TPoly> = HashMap::new();
    let mut plus = TPoly::zero();
    let mut minus = TPoly::zero();
    for w in &group {
        let image = w.apply_rational(&shifted);
        let mut gamma = Vec::with_capacity(rank);
        for (x, r) in image.iter().zip(system.rho()) {
            let v = x - r;
            if !v.is_integer() {
                return Err(Error::Internal(format!(
                    "w(theta + rho) - rho has non-integral coordinate {v}"
                )));
            }
            gamma.push(v.to_integer());
        }
        if gamma.iter().any(|&c| c < 0) {
            continue;
        }
        let value = match memo.get(&gamma) {
            Some(v) => v,
            None => {
                let v =
                    t_kostant_capped(&RootVector::new(gamma.clone()), system, caps.partition_cap)?;
                memo.entry(gamma).or_insert(v)
            }
        };
        if w.sign() > 0 {
            plus += value;
        } else {
            minus += value;
        }
    }
    let k = plus - minus;
    if !k.has_nonnegative_coeffs() {
        return Err(Error::Internal(format!(
            "Weyl sum for K_theta,0 has a negative coefficient: {k}"
        )));
    }
    Ok(k)
}

/// Read exponents off `sum_j t^{m_j}`.
pub fn exponents_from_kostka(k: &TPoly) -> Result<ExponentMultiset> {
    if !k.coeff(0).to_u64().is_some_and(|c| c == 0) {
        return Err(Error::MalformedKostka(format!(
            "nonzero constant term in {k}"
        )));
    }
    let mut exps = Vec::new();
    for (deg, c) in k.coeffs().iter().enumerate() {
        let mult = c
            .to_usize()
            .ok_or_else(|| Error::MalformedKostka(format!("coefficient {c} of t^{deg} in {k}")))?;
        exps.extend(std::iter::repeat_n(deg, mult));
    }
    Ok(ExponentMultiset::new(exps))
}

/// Exponent `i` with multiplicity `a_i - a_{i+1}`, where `a_i` counts positive
/// roots of height `i`.
pub fn exponents_from_heights(system: &RootSystem) -> Result<ExponentMultiset> {
    let a = system.height_counts();
    let mut exps = Vec::new();
    for (k, &ai) in a.iter().enumerate() {
        let next = a.get(k + 1).copied().unwrap_or(0);
        if ai < next {
            return Err(Error::NonMonotoneHeights {
                index: k + 1,
                lower: ai,
                upper: next,
            });
        }
        exps.extend(std::iter::repeat_n(k + 1, ai - next));
    }
    Ok(ExponentMultiset::new(exps))
}

/// Refuse Weyl sums above the fast-tier size unless `slow` is set. The group
/// order is predicted from the height exponents before anything is enumerated.
pub fn check_tier(system: &RootSystem, slow: bool) -> Result<()> {
    let order = exponents_from_heights(system)?.degree_product();
    if !slow && order > FAST_TIER_WEYL_ORDER {
        return Err(Error::SlowTierRequired {
            system: system.label(),
            order,
        });
    }
    Ok(())
}

pub fn verify_duality(system: &RootSystem) -> Result<bool> {
    Ok(duality_report(system, &Caps::default())?.pass)
}

/// Exponents from `K_{theta,0}` against exponents from heights, and the
/// conjugate of `(a_1, a_2, ...)` against the descending exponents.
pub fn duality_report(system: &RootSystem, caps: &Caps) -> Result<VerificationReport> {
    timed(system, |report| {
        let rank = system.rank();
        let kostka = kostka_theta_capped(system, caps)?;
        let from_heights = exponents_from_heights(system)?;
        let from_kostka = exponents_from_kostka(&kostka)?;

        report.push(ClaimRecord::new(
            "kostka.exponents",
            from_heights.generating_poly(),
            kostka.clone(),
        ));
        let conj = conjugate_partition(system.height_counts());
        let conj_poly: TPoly = conj.iter().map(|&m| TPoly::monomial(1, m)).sum();
        report.push(
            ClaimRecord::new(
                "duality.conjugate",
                conj_poly,
                from_kostka.generating_poly(),
            )
            .require(conj == from_kostka.descending())
            .require(conjugate_partition(&conj) == system.height_counts()),
        );
        report.push(ClaimRecord::new(
            "kostka.at_one",
            TPoly::constant(rank as i64),
            TPoly::constant(kostka.eval(1)),
        ));
        report.push(
            ClaimRecord::new(
                "exponents.sum",
                TPoly::constant(system.positive_roots().len() as i64),
                TPoly::constant(from_kostka.sum() as i64),
            )
            .require(from_kostka.ascending().first() == Some(&1))
            .require(from_kostka.len() == rank),
        );
        Ok(())
    })
}

pub fn verify_constant_term(system: &RootSystem) -> Result<bool> {
    Ok(constant_term_report(system, &Caps::default())?.pass)
}

/// `K_{theta,0}(t) = l + sum_{alpha > 0} [e^{-alpha}] xi` with the right side
/// summed from enumerated partitions.
pub fn constant_term_report(system: &RootSystem, caps: &Caps) -> Result<VerificationReport> {
    timed(system, |report| {
        let kostka = kostka_theta_capped(system, caps)?;
        let mut rhs = TPoly::constant(system.rank() as i64);
        for alpha in system.positive_roots() {
            rhs += &xi_coefficient_comb_capped(alpha, system, caps.partition_cap)?;
        }
        report.push(ClaimRecord::new("constant_term", kostka, rhs));
        Ok(())
    })
}

/// The reflection bijection for every positive root of height at least two
/// and every simple root with positive pairing.
pub fn fact1_report(system: &RootSystem) -> Result<VerificationReport> {
    timed(system, |report| {
        for beta in system.positive_roots().iter().filter(|b| b.height() >= 2) {
            for i in 0..system.rank() {
                if system.pairing(beta, i)? <= 0 {
                    continue;
                }
                let check = fact1_check(beta, i, system)?;
                let holds = check.holds();
                report.push(
                    ClaimRecord::new("fact1", check.source_weight, check.image_weight)
                        .with_beta(beta)
                        .with_simple(i)
                        .require(holds),
                );
            }
        }
        Ok(())
    })
}

/// The one-step recursion for every `gamma` in Q+ up to the height of theta
/// with `gamma - alpha_i` in Q+, and its sum along every alpha_i-string.
pub fn fact2_report(system: &RootSystem, caps: &Caps) -> Result<VerificationReport> {
    timed(system, |report| {
        let rank = system.rank();
        let top = system.theta().height();
        let table = WeightTable::build(system, top, caps.partition_cap)?;
        let t = TPoly::t();
        let t_minus_one = TPoly::from_i64s(&[-1, 1]);
        let lookup = |g: &RootVector| {
            table
                .get(g)
                .ok_or_else(|| Error::Internal(format!("{g} missing from weight table")))
        };
        for gamma in q_plus_up_to(rank, top) {
            for i in 0..rank {
                let lower = gamma.add_simple(i, -1);
                if !lower.is_nonnegative() {
                    continue;
                }
                let (here, below) = (lookup(&gamma)?, lookup(&lower)?);
                let rhs = &t * &below.with_simple[i] + &t_minus_one * &below.without_simple[i];
                report.push(
                    ClaimRecord::new("fact2", here.with_simple[i].clone(), rhs)
                        .with_beta(&gamma)
                        .with_simple(i),
                );
            }
        }
        for beta in system.positive_roots().iter().filter(|b| b.height() >= 2) {
            for i in 0..rank {
                if system.pairing(beta, i)? <= 0 {
                    continue;
                }
                let k = system.root_string_length(beta, i)?;
                let bottom = beta.add_simple(i, -k);
                let lhs = &lookup(beta)?.with_simple[i] - &lookup(&bottom)?.with_simple[i];
                let mut sum = TPoly::zero();
                for j in 1..=k {
                    sum += &lookup(&beta.add_simple(i, -j))?.total;
                }
                report.push(
                    ClaimRecord::new("telescope", lhs, &t_minus_one * &sum)
                        .with_beta(beta)
                        .with_simple(i),
                );
            }
        }
        Ok(())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Prop1,
    Fact1,
    Fact2,
    Duality,
    ConstantTerm,
    All,
}

impl Target {
    fn needs_weyl_sum(self) -> bool {
        matches!(self, Target::Duality | Target::ConstantTerm | Target::All)
    }
}

/// Run one verification target (or all of them, in a fixed order).
pub fn verify(
    system: &RootSystem,
    target: Target,
    caps: &Caps,
    slow: bool,
) -> Result<VerificationReport> {
    if target.needs_weyl_sum() {
        check_tier(system, slow)?;
    }
    match target {
        Target::Prop1 => verify_prop1_capped(system, caps),
        Target::Fact1 => fact1_report(system),
        Target::Fact2 => fact2_report(system, caps),
        Target::Duality => duality_report(system, caps),
        Target::ConstantTerm => constant_term_report(system, caps),
        Target::All => {
            let mut report = VerificationReport::new(system.label());
            for t in [
                Target::Prop1,
                Target::Fact1,
                Target::Fact2,
                Target::Duality,
                Target::ConstantTerm,
            ] {
                report.extend(verify(system, t, caps, slow)?);
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::root_system;

    fn p(c: &[i64]) -> TPoly {
        TPoly::from_i64s(c)
    }

    fn rv(c: &[i64]) -> RootVector {
        RootVector::new(c.to_vec())
    }

    #[test]
    fn prop1_small_systems() {
        let a2 = verify_prop1(&root_system('A', 2).unwrap()).unwrap();
        assert!(a2.pass);
        assert_eq!(a2.claims.len(), 3);
        let top = a2
            .claims
            .iter()
            .find(|c| c.beta == Some(vec![1, 1]))
            .unwrap();
        assert_eq!(top.computed, p(&[0, -1, 1]));

        let g2 = verify_prop1(&root_system('G', 2).unwrap()).unwrap();
        assert!(g2.pass);
        assert_eq!(g2.claims.len(), 6);
        let highest = g2
            .claims
            .iter()
            .find(|c| c.beta == Some(vec![2, 3]))
            .unwrap();
        assert_eq!(highest.expected, p(&[0, 0, 0, 0, -1, 1]));
        for c in g2
            .claims
            .iter()
            .filter(|c| c.beta.as_ref().unwrap().iter().sum::<i64>() == 1)
        {
            assert_eq!(c.computed, p(&[-1, 1]));
        }
    }

    #[test]
    fn t_kostant_examples() {
        let s = root_system('A', 2).unwrap();
        assert_eq!(t_kostant(&rv(&[1, 1]), &s).unwrap(), p(&[0, 1, 1]));
        assert_eq!(t_kostant(&rv(&[1, -1]), &s).unwrap(), TPoly::zero());
        assert_eq!(t_kostant(&rv(&[0, 0]), &s).unwrap(), TPoly::one());
    }

    // A2: theta + rho = (2, 2); s_1 and s_2 send it to (0, 2) and (2, 0), so
    // after subtracting rho only the identity term lands in Q+, giving P_t(1, 1).
    #[test]
    fn kostka_examples() {
        assert_eq!(
            kostka_theta(&root_system('A', 1).unwrap()).unwrap(),
            p(&[0, 1])
        );
        assert_eq!(
            kostka_theta(&root_system('A', 2).unwrap()).unwrap(),
            p(&[0, 1, 1])
        );
        assert_eq!(
            kostka_theta(&root_system('G', 2).unwrap()).unwrap(),
            p(&[0, 1, 0, 0, 0, 1])
        );
    }

    #[test]
    fn kostka_propagates_weyl_cap() {
        let caps = Caps {
            weyl_order_cap: 5,
            ..Caps::default()
        };
        assert_eq!(
            kostka_theta_capped(&root_system('A', 2).unwrap(), &caps).unwrap_err(),
            Error::WeylGroupTooLarge { cap: 5 }
        );
    }

    #[test]
    fn exponents_from_kostka_examples() {
        assert_eq!(
            exponents_from_kostka(&p(&[0, 1, 1])).unwrap().ascending(),
            &[1, 2]
        );
        assert_eq!(
            exponents_from_kostka(&p(&[0, 1, 0, 0, 0, 1]))
                .unwrap()
                .ascending(),
            &[1, 5]
        );
        assert_eq!(
            exponents_from_kostka(&p(&[0, 1, 0, 2, 0, 1]))
                .unwrap()
                .ascending(),
            &[1, 3, 3, 5]
        );
        assert!(matches!(
            exponents_from_kostka(&p(&[0, 1, -1])),
            Err(Error::MalformedKostka(_))
        ));
        assert!(matches!(
            exponents_from_kostka(&p(&[1, 1])),
            Err(Error::MalformedKostka(_))
        ));
    }

    #[test]
    fn exponents_from_heights_examples() {
        let e = |f, r| exponents_from_heights(&root_system(f, r).unwrap()).unwrap();
        assert_eq!(e('A', 2).ascending(), &[1, 2]);
        assert_eq!(e('B', 2).ascending(), &[1, 3]);
        assert_eq!(e('G', 2).ascending(), &[1, 5]);
        assert_eq!(e('E', 8).ascending(), &[1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(e('E', 7).degree_product(), 2_903_040);
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_partition(&[3, 2, 1]), vec![3, 2, 1]);
        assert_eq!(conjugate_partition(&[2, 1, 1, 1, 1]), vec![5, 1]);
        assert_eq!(conjugate_partition(&[]), Vec::<usize>::new());
        let a = [4, 3, 3, 1];
        assert_eq!(conjugate_partition(&conjugate_partition(&a)), a.to_vec());
    }

    #[test]
    fn duality_and_constant_term() {
        for (f, r) in [('A', 1), ('A', 3), ('B', 3), ('G', 2)] {
            let s = root_system(f, r).unwrap();
            assert!(verify_duality(&s).unwrap(), "{f}{r}");
            assert!(verify_constant_term(&s).unwrap(), "{f}{r}");
        }
    }

    #[test]
    fn a2_constant_term_both_sides() {
        let report = constant_term_report(&root_system('A', 2).unwrap(), &Caps::default()).unwrap();
        assert_eq!(report.claims[0].expected, p(&[0, 1, 1]));
        assert_eq!(report.claims[0].computed, p(&[0, 1, 1]));
    }

    #[test]
    fn tier_gate() {
        let e6 = root_system('E', 6).unwrap();
        assert_eq!(
            check_tier(&e6, false).unwrap_err(),
            Error::SlowTierRequired {
                system: "E6".into(),
                order: 51840
            }
        );
        assert!(check_tier(&e6, true).is_ok());
        assert!(check_tier(&root_system('F', 4).unwrap(), false).is_ok());
    }

    #[test]
    fn failing_record_fails_report() {
        let mut report = VerificationReport::new("X");
        report.push(ClaimRecord::new("ok", TPoly::one(), TPoly::one()));
        assert!(report.pass);
        report.push(ClaimRecord::new("bad", TPoly::one(), TPoly::t()));
        assert!(!report.pass);
        assert_eq!(report.failures().count(), 1);
        let cross =
            ClaimRecord::new("x", TPoly::one(), TPoly::one()).with_cross_check(TPoly::zero());
        assert!(!cross.pass);
    }

    #[test]
    fn fact_reports_small() {
        let s = root_system('B', 3).unwrap();
        let f1 = fact1_report(&s).unwrap();
        assert!(f1.pass && !f1.claims.is_empty());
        let f2 = fact2_report(&s, &Caps::default()).unwrap();
        assert!(f2.pass);
        assert!(f2.claims.iter().any(|c| c.id == "telescope"));
    }
}
