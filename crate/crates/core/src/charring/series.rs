use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{FormalCharacter, TermJson};
use crate::error::{Error, Result};
use crate::rootdata::Weight;

/// e^{offset} · Σ_a c_a q^a + O(total degree > order), with q_i = e^{−e_i/2}.
///
/// Invariants:
/// - every stored exponent vector has total degree ≤ `order`
/// - no zero coefficients are stored
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    rank: usize,
    offset: Weight,
    order: usize,
    coeffs: BTreeMap<Vec<u32>, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub offset2: Vec<i64>,
    pub order: usize,
    pub terms: Vec<TermJson>,
}

fn degree(a: &[u32]) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

impl TruncatedSeries {
    pub fn zero(rank: usize, offset: Weight, order: usize) -> Self {
        assert_eq!(offset.rank(), rank);
        TruncatedSeries {
            rank,
            offset,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series 1 (offset 0).
    pub fn one(rank: usize, order: usize) -> Self {
        let mut s = Self::zero(rank, Weight::zero(rank), order);
        s.add_coeff(vec![0; rank], BigInt::one());
        s
    }

    /// Builds a series from raw q-exponent coefficients; terms above `order`
    /// are dropped.
    pub fn from_coeffs(offset: Weight, order: usize, coeffs: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut s = Self::zero(offset.rank(), offset, order);
        for (a, c) in coeffs {
            assert_eq!(a.len(), s.rank);
            s.add_coeff(a, c);
        }
        s
    }

    /// Truncation of f around `offset`; every exponent of f must be ≤ offset
    /// coordinatewise.
    pub fn from_character(f: &FormalCharacter, offset: Weight, order: usize) -> Result<Self> {
        if f.rank() != offset.rank() {
            return Err(Error::RankMismatch {
                left: f.rank(),
                right: offset.rank(),
            });
        }
        let mut s = Self::zero(f.rank(), offset, order);
        for (mu, c) in f.terms() {
            let a = s.exponent_of(mu).ok_or_else(|| {
                Error::Structural(format!("exponent ({mu}) exceeds series offset ({})", s.offset))
            })?;
            s.add_coeff(a, c.clone());
        }
        Ok(s)
    }

    /// Truncation of f around its componentwise maximal exponent.
    pub fn from_character_auto(f: &FormalCharacter, order: usize) -> Result<Self> {
        let offset = f.max_exponents().map(Weight::from_doubled).unwrap_or_else(|| Weight::zero(f.rank()));
        Self::from_character(f, offset, order)
    }

    /// q-exponent vector of e^μ relative to this offset, if it is nonnegative.
    pub fn exponent_of(&self, mu: &Weight) -> Option<Vec<u32>> {
        self.offset
            .doubled()
            .iter()
            .zip(mu.doubled())
            .map(|(o, m)| u32::try_from(o - m).ok())
            .collect()
    }

    /// The weight represented by a q-exponent vector.
    pub fn weight_of(&self, a: &[u32]) -> Weight {
        Weight::from_doubled(self.offset.doubled().iter().zip(a).map(|(o, &x)| o - x as i64).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn offset(&self) -> &Weight {
        &self.offset
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.coeffs
    }

    pub fn coefficient(&self, a: &[u32]) -> BigInt {
        self.coeffs.get(a).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_coeff(&mut self, a: Vec<u32>, c: BigInt) {
        if c.is_zero() || degree(&a) > self.order {
            return;
        }
        match self.coeffs.entry(a) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Re-expresses the series around a larger offset; the order grows by the
    /// degree of the shift so that no information is invented or lost.
    pub fn with_offset(&self, offset: &Weight) -> Result<Self> {
        let shift = self.exponent_shift(offset)?;
        let extra = degree(&shift);
        let mut out = Self::zero(self.rank, offset.clone(), self.order + extra);
        for (a, c) in &self.coeffs {
            out.add_coeff(a.iter().zip(&shift).map(|(x, s)| x + s).collect(), c.clone());
        }
        Ok(out)
    }

    fn exponent_shift(&self, offset: &Weight) -> Result<Vec<u32>> {
        if offset.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: offset.rank(),
                right: self.rank,
            });
        }
        offset
            .doubled()
            .iter()
            .zip(self.offset.doubled())
            .map(|(n, o)| u32::try_from(n - o).ok())
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::Structural(format!("offset ({offset}) is below ({})", self.offset)))
    }

    /// Cuts the series down to a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(self.rank, self.offset.clone(), order);
        out.coeffs = self.coeffs.iter().filter(|(a, _)| degree(a) <= order).map(|(a, c)| (a.clone(), c.clone())).collect();
        out
    }

    /// Brings both series to their common (componentwise maximal) offset and
    /// the smaller of the resulting orders.
    pub fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let common = Weight::from_doubled(
            self.offset.doubled().iter().zip(other.offset.doubled()).map(|(a, b)| *a.max(b)).collect(),
        );
        let a = self.with_offset(&common)?;
        let b = other.with_offset(&common)?;
        let order = a.order.min(b.order);
        Ok((a.truncate(order), b.truncate(order)))
    }

    /// Equality as truncated series: after alignment, all coefficients up to
    /// the common order agree.
    pub fn truncated_eq(&self, other: &Self) -> bool {
        match self.align(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.align(other)?;
        for (k, c) in b.coeffs {
            a.add_coeff(k, c);
        }
        Ok(a)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.rank, self.offset.clone(), self.order);
        for (a, c) in &self.coeffs {
            out.add_coeff(a.clone(), c * k);
        }
        out
    }

    /// Product; offsets add and the order is the smaller of the two.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            let da = degree(a);
            if da > order {
                continue;
            }
            for (b, cb) in &other.coeffs {
                if da + degree(b) > order {
                    continue;
                }
                let key: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(key).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            rank: self.rank,
            offset: &self.offset + &other.offset,
            order,
            coeffs: acc,
        })
    }

    /// Multiplicative inverse; the constant coefficient must be ±1.
    pub fn inverse(&self) -> Result<Self> {
        let zero = vec![0u32; self.rank];
        let c0 = self.coefficient(&zero);
        if !c0.abs().is_one() {
            return Err(Error::NonInvertibleLeading(format!("constant coefficient {c0}")));
        }
        let order = self.order;
        // Group the input by total degree, then solve degree by degree:
        // s_d = −c0⁻¹ Σ_{k≥1} p_k s_{d−k}.
        let mut by_degree: Vec<Vec<(&Vec<u32>, &BigInt)>> = vec![Vec::new(); order + 1];
        for (a, c) in &self.coeffs {
            by_degree[degree(a)].push((a, c));
        }
        let mut inv_by_degree: Vec<BTreeMap<Vec<u32>, BigInt>> = vec![BTreeMap::new(); order + 1];
        inv_by_degree[0].insert(zero, c0.clone());
        for d in 1..=order {
            let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
            for k in 1..=d {
                for (pa, pc) in &by_degree[k] {
                    for (sa, sc) in &inv_by_degree[d - k] {
                        let key: Vec<u32> = pa.iter().zip(sa).map(|(x, y)| x + y).collect();
                        *acc.entry(key).or_insert_with(BigInt::zero) += *pc * sc;
                    }
                }
            }
            // c0 = ±1, so dividing by c0 is multiplying by c0.
            acc = acc.into_iter().map(|(k, v)| (k, -(v * &c0))).filter(|(_, v)| !v.is_zero()).collect();
            inv_by_degree[d] = acc;
        }
        let offset = -&self.offset;
        let mut out = Self::zero(self.rank, offset, order);
        for layer in inv_by_degree {
            for (a, c) in layer {
                out.coeffs.insert(a, c);
            }
        }
        Ok(out)
    }

    /// The finite Laurent polynomial given by the stored terms.
    pub fn to_character(&self) -> FormalCharacter {
        FormalCharacter::from_terms(self.rank, self.coeffs.iter().map(|(a, c)| (self.weight_of(a), c.clone())))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            offset2: self.offset.doubled().to_vec(),
            order: self.order,
            terms: self.to_character().to_json_terms(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let rank = json.offset2.len();
        let f = FormalCharacter::from_json_terms(rank, &json.terms)?;
        Self::from_character(&f, Weight::from_doubled(json.offset2.clone()), json.order)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::{odd_denominator, weyl_denominator, RationalCharacter};
    use crate::rootdata::Kind;

    fn q1(terms: &[(u32, i64)], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(Weight::zero(1), order, terms.iter().map(|&(a, c)| (vec![a], BigInt::from(c))))
    }

    #[test]
    fn geometric_expansions() {
        let one = FormalCharacter::one(1);
        let r = RationalCharacter::new(one.clone(), odd_denominator(1).unwrap()).unwrap();
        assert_eq!(r.expand(6).unwrap().with_offset(&Weight::zero(1)).unwrap().truncate(6), q1(&[(1, 1), (3, -1), (5, 1)], 6));
        let r = RationalCharacter::new(one, weyl_denominator(Kind::C, 1).unwrap()).unwrap();
        let s = r.expand(5).unwrap();
        // offset −e1, i.e. q² ⋅ (1 + q⁴ + …)
        assert_eq!(s.offset(), &"-1".parse::<Weight>().unwrap());
        assert_eq!(s.with_offset(&Weight::zero(1)).unwrap().truncate(5), q1(&[(2, 1)], 5));
    }

    #[test]
    fn polynomial_over_one_is_faithful() {
        let f = FormalCharacter::from_terms(1, [("1".parse().unwrap(), BigInt::from(2)), ("-1".parse().unwrap(), BigInt::from(-1))]);
        let s = RationalCharacter::new(f.clone(), FormalCharacter::one(1)).unwrap().expand(10).unwrap();
        assert_eq!(s.to_character(), f);
    }

    #[test]
    fn order_of_product_is_minimum() {
        let a = q1(&[(0, 1), (1, 1)], 4);
        let b = q1(&[(0, 1), (3, 2)], 7);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p, q1(&[(0, 1), (1, 1), (3, 2), (4, 2)], 4));
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let a = q1(&[(0, 2), (1, 1)], 4);
        assert!(matches!(a.inverse(), Err(Error::NonInvertibleLeading(_))));
        let b = q1(&[(0, -1), (2, 1)], 6);
        let inv = b.inverse().unwrap();
        assert!(b.checked_mul(&inv).unwrap().truncated_eq(&TruncatedSeries::one(1, 6)));
    }

    #[test]
    fn from_character_rejects_exponents_above_offset() {
        let f = FormalCharacter::exp("1".parse().unwrap());
        assert!(TruncatedSeries::from_character(&f, Weight::zero(1), 4).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let s = q1(&[(1, 1), (3, -1)], 5);
        let back = TruncatedSeries::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }
}
