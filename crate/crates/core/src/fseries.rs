//! Height-truncated formal power series in `e^{-alpha_1}, ..., e^{-alpha_n}`
//! with coefficients in `Z[t]`, and the product
//! `xi = prod_{alpha > 0} (1 - e^{-alpha}) / (1 - t e^{-alpha})`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, RootVector};
use crate::tpoly::TPoly;

/// Exponent of a monomial `e^{-gamma}`, `gamma` in Q+. Coordinates are
/// unsigned so only Q+ is representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        Exponent(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Exponent(vec![0; rank])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().map(|&c| c as i64).sum()
    }

    /// `None` when some coordinate is negative.
    pub fn from_root_vector(v: &RootVector) -> Option<Self> {
        v.coords()
            .iter()
            .map(|&c| u32::try_from(c).ok())
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn to_root_vector(&self) -> RootVector {
        RootVector::new(self.0.iter().map(|&c| c as i64).collect())
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Z[t][[e^{-alpha_1}, ..., e^{-alpha_n}]]` modulo all monomials
/// of height greater than `trunc_height`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSeries {
    rank: usize,
    trunc_height: i64,
    terms: BTreeMap<Exponent, TPoly>,
}

#[derive(Serialize)]
struct TermRecord<'a> {
    exponent: &'a Exponent,
    coeff: &'a TPoly,
}

impl ExpSeries {
    pub fn zero(rank: usize, trunc_height: i64) -> Self {
        ExpSeries {
            rank,
            trunc_height,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, trunc_height: i64) -> Self {
        let mut s = Self::zero(rank, trunc_height);
        s.terms.insert(Exponent::zero(rank), TPoly::one());
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn trunc_height(&self) -> i64 {
        self.trunc_height
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in (height, lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &TPoly)> {
        self.terms.iter()
    }

    /// Add `coeff * e^{-gamma}` to the series.
    pub fn add_term(&mut self, gamma: Exponent, coeff: TPoly) -> Result<()> {
        self.check_key(&gamma)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(gamma);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    fn check_key(&self, gamma: &Exponent) -> Result<()> {
        if gamma.coords().len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: gamma.coords().len(),
            });
        }
        let height = gamma.height();
        if height > self.trunc_height {
            return Err(Error::OutOfTruncation {
                height,
                trunc: self.trunc_height,
            });
        }
        Ok(())
    }

    /// Coefficient of `e^{-gamma}`; a legitimate zero is returned as the zero
    /// polynomial, while a `gamma` above the truncation height is an error.
    pub fn coefficient(&self, gamma: &RootVector) -> Result<TPoly> {
        let key = Exponent::from_root_vector(gamma)
            .ok_or_else(|| Error::Precondition(format!("{gamma} has a negative coordinate")))?;
        self.check_key(&key)?;
        Ok(self.terms.get(&key).cloned().unwrap_or_default())
    }

    /// Drop every term above `height`, lowering the truncation.
    pub fn truncate(&self, height: i64) -> ExpSeries {
        let height = height.min(self.trunc_height);
        ExpSeries {
            rank: self.rank,
            trunc_height: height,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.height() <= height)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

// Wire format: list of {exponent, coeff} sorted by (height, lex).
impl Serialize for ExpSeries {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.terms
                .iter()
                .map(|(exponent, coeff)| TermRecord { exponent, coeff }),
        )
    }
}

/// Truncated product; any monomial above the truncation height is discarded.
pub fn series_mul(a: &ExpSeries, b: &ExpSeries) -> Result<ExpSeries> {
    if a.rank != b.rank || a.trunc_height != b.trunc_height {
        return Err(Error::SeriesMismatch(format!(
            "rank/truncation ({}, {}) vs ({}, {})",
            a.rank, a.trunc_height, b.rank, b.trunc_height
        )));
    }
    let h = a.trunc_height;
    let mut out: BTreeMap<Exponent, TPoly> = BTreeMap::new();
    for (ka, va) in &a.terms {
        let room = h - ka.height();
        // b's keys are height-ordered
        for (kb, vb) in b.terms.iter().take_while(|(kb, _)| kb.height() <= room) {
            let prod = va * vb;
            *out.entry(ka.add(kb)).or_default() += &prod;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(ExpSeries {
        rank: a.rank,
        trunc_height: h,
        terms: out,
    })
}

/// `(1 - e^{-alpha}) / (1 - t e^{-alpha}) = 1 + sum_{m >= 1} t^{m-1}(t-1) e^{-m alpha}`,
/// truncated at height `trunc_height`.
pub fn geometric_factor(alpha: &RootVector, trunc_height: i64) -> Result<ExpSeries> {
    let base = Exponent::from_root_vector(alpha)
        .filter(|e| e.height() > 0)
        .ok_or_else(|| Error::Precondition(format!("{alpha} is not a nonzero element of Q+")))?;
    if trunc_height < 0 {
        return Err(Error::Domain(format!(
            "truncation height must be >= 0, got {trunc_height}"
        )));
    }
    let rank = alpha.rank();
    let mut series = ExpSeries::one(rank, trunc_height);
    let t_minus_one = TPoly::from_i64s(&[-1, 1]);
    let mut power = Exponent::zero(rank);
    let mut m = 1usize;
    loop {
        power = power.add(&base);
        if power.height() > trunc_height {
            break;
        }
        series.terms.insert(power.clone(), t_minus_one.shift(m - 1));
        m += 1;
    }
    Ok(series)
}

/// The xi series truncated at `trunc_height`, multiplying the single-root
/// factors in canonical positive-root order.
pub fn xi_series(system: &RootSystem, trunc_height: i64) -> Result<ExpSeries> {
    xi_series_ordered(system, system.positive_roots(), trunc_height)
}

/// Default truncation: one above the height of the highest root.
pub fn xi_series_default(system: &RootSystem) -> Result<ExpSeries> {
    xi_series(system, system.theta().height() + 1)
}

/// xi with the factors multiplied in the given order.
pub fn xi_series_ordered(
    system: &RootSystem,
    roots: &[RootVector],
    trunc_height: i64,
) -> Result<ExpSeries> {
    let mut acc = ExpSeries::one(system.rank(), trunc_height);
    for alpha in roots {
        let factor = geometric_factor(alpha, trunc_height)?;
        acc = series_mul(&acc, &factor)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::root_system;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> TPoly {
        TPoly::from_i64s(c)
    }

    fn rv(c: &[i64]) -> RootVector {
        RootVector::new(c.to_vec())
    }

    fn ex(c: &[u32]) -> Exponent {
        Exponent::new(c.to_vec())
    }

    #[test]
    fn product_of_two_simple_factors() {
        let a = geometric_factor(&rv(&[1, 0]), 2).unwrap().truncate(1);
        let b = geometric_factor(&rv(&[0, 1]), 2).unwrap().truncate(1);
        let a = ExpSeries {
            trunc_height: 2,
            ..a
        };
        let b = ExpSeries {
            trunc_height: 2,
            ..b
        };
        let prod = series_mul(&a, &b).unwrap();
        let tm1 = p(&[-1, 1]);
        let expect: Vec<(Exponent, TPoly)> = vec![
            (ex(&[0, 0]), TPoly::one()),
            (ex(&[0, 1]), tm1.clone()),
            (ex(&[1, 0]), tm1.clone()),
            (ex(&[1, 1]), &tm1 * &tm1),
        ];
        let got: Vec<(Exponent, TPoly)> =
            prod.terms().map(|(k, v)| (k.clone(), v.clone())).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn identity_and_truncation() {
        let a = geometric_factor(&rv(&[1, 0]), 4).unwrap();
        assert_eq!(series_mul(&a, &ExpSeries::one(2, 4)).unwrap(), a);

        let mut x = ExpSeries::zero(2, 1);
        x.add_term(ex(&[1, 0]), TPoly::one()).unwrap();
        let sq = series_mul(&x, &x).unwrap();
        assert!(sq.is_empty());

        let other = ExpSeries::one(2, 2);
        assert!(matches!(
            series_mul(&x, &other),
            Err(Error::SeriesMismatch(_))
        ));
        assert!(matches!(
            x.add_term(ex(&[1, 1]), TPoly::one()),
            Err(Error::OutOfTruncation {
                height: 2,
                trunc: 1
            })
        ));
    }

    #[test]
    fn geometric_factor_examples() {
        let f = geometric_factor(&rv(&[1, 0]), 3).unwrap();
        let coeffs: Vec<TPoly> = f.terms().map(|(_, v)| v.clone()).collect();
        assert_eq!(
            coeffs,
            vec![TPoly::one(), p(&[-1, 1]), p(&[0, -1, 1]), p(&[0, 0, -1, 1])]
        );
        assert_eq!(f.coefficient(&rv(&[3, 0])).unwrap(), p(&[0, 0, -1, 1]));

        let g = geometric_factor(&rv(&[1, 1]), 3).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.coefficient(&rv(&[1, 1])).unwrap(), p(&[-1, 1]));

        let h = geometric_factor(&rv(&[1, 1]), 0).unwrap();
        assert_eq!(h, ExpSeries::one(2, 0));

        assert!(geometric_factor(&rv(&[0, 0]), 3).is_err());
        assert!(geometric_factor(&rv(&[1, -1]), 3).is_err());
    }

    #[test]
    fn xi_a2() {
        let s = root_system('A', 2).unwrap();
        let xi = xi_series(&s, 2).unwrap();
        assert_eq!(xi.coefficient(&rv(&[1, 0])).unwrap(), p(&[-1, 1]));
        assert_eq!(xi.coefficient(&rv(&[1, 1])).unwrap(), p(&[0, -1, 1]));
        assert_eq!(xi.coefficient(&rv(&[0, 0])).unwrap(), TPoly::one());
        assert!(matches!(
            xi.coefficient(&rv(&[3, 0])),
            Err(Error::OutOfTruncation {
                height: 3,
                trunc: 2
            })
        ));
        assert!(matches!(
            xi.coefficient(&rv(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    // Independent expansion: the A2 coefficient of e^{-(a1+a2)} from the
    // three factors by direct selection of one term per factor.
    #[test]
    fn xi_a2_brute_force() {
        let s = root_system('A', 2).unwrap();
        let roots = s.positive_roots();
        let factor_coeff = |m: i64| -> TPoly {
            if m == 0 {
                TPoly::one()
            } else {
                p(&[-1, 1]).shift(m as usize - 1)
            }
        };
        let mut total = TPoly::zero();
        for m0 in 0..3 {
            for m1 in 0..3 {
                for m2 in 0..3 {
                    let v = &(&roots[0].scaled(m0) + &roots[1].scaled(m1)) + &roots[2].scaled(m2);
                    if v.coords() == [1, 1] {
                        total += &(&(&factor_coeff(m0) * &factor_coeff(m1)) * &factor_coeff(m2));
                    }
                }
            }
        }
        let xi = xi_series(&s, 2).unwrap();
        assert_eq!(xi.coefficient(&rv(&[1, 1])).unwrap(), total);
    }

    #[test]
    fn truncation_coherence() {
        for &(f, r) in &[('B', 3), ('G', 2)] {
            let s = root_system(f, r).unwrap();
            let h = s.theta().height() + 1;
            let big = xi_series(&s, h).unwrap();
            for lower in 0..h {
                assert_eq!(big.truncate(lower), xi_series(&s, lower).unwrap());
            }
        }
    }

    #[test]
    fn factor_order_does_not_matter() {
        let s = root_system('C', 3).unwrap();
        let h = s.theta().height();
        let mut shuffled = s.positive_roots().to_vec();
        shuffled.reverse();
        shuffled.swap(0, 3);
        shuffled.rotate_left(2);
        assert_eq!(
            xi_series_ordered(&s, &shuffled, h).unwrap(),
            xi_series(&s, h).unwrap()
        );
    }

    #[test]
    fn constant_term_is_one() {
        let s = root_system('D', 4).unwrap();
        let xi = xi_series_default(&s).unwrap();
        assert_eq!(xi.coefficient(&RootVector::zero(4)).unwrap(), TPoly::one());
    }

    #[test]
    fn json_layout() {
        let f = geometric_factor(&rv(&[1, 0]), 1).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"[{"exponent":[0,0],"coeff":[1]},{"exponent":[1,0],"coeff":[-1,1]}]"#
        );
    }

    fn small_series() -> impl Strategy<Value = ExpSeries> {
        prop::collection::vec(
            ((0u32..3, 0u32..3), prop::collection::vec(-3i64..4, 0..3)),
            0..5,
        )
        .prop_map(|terms| {
            let mut s = ExpSeries::zero(2, 3);
            for ((a, b), c) in terms {
                if a + b <= 3 {
                    s.add_term(ex(&[a, b]), TPoly::from_i64s(&c)).unwrap();
                }
            }
            s
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(series_mul(&a, &b).unwrap(), series_mul(&b, &a).unwrap());
            let left = series_mul(&series_mul(&a, &b).unwrap(), &c).unwrap();
            let right = series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
