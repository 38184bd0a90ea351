//! The formal character ring: sparse Laurent polynomials in e^{e_i/2} with
//! arbitrary-precision integer coefficients, quotients of them, and their
//! truncated expansions in q_i = e^{−e_i/2}.

mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{self, positive_roots, Kind, Weight, WeylElement};

pub use series::{SeriesJson, TruncatedSeries};

/// Σ c_μ e^μ with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalCharacter {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

/// One term of the JSON form: `{"2exp": [...], "coef": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "2exp")]
    pub exp2: Vec<i64>,
    pub coef: String,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), BigInt::one())
    }

    /// The exponential e^μ.
    pub fn exp(mu: Weight) -> Self {
        Self::monomial(mu, BigInt::one())
    }

    pub fn monomial(mu: Weight, coef: BigInt) -> Self {
        let mut f = Self::zero(mu.rank());
        f.add_term(mu, coef);
        f
    }

    /// Builds a character from (weight, coefficient) pairs, summing repeats.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, BigInt)>) -> Self {
        let mut f = Self::zero(rank);
        for (w, c) in terms {
            assert_eq!(w.rank(), rank, "term rank mismatch");
            f.add_term(w, c);
        }
        f
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Weight, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &Weight) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mu: Weight, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa + wb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        FormalCharacter {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Multiply by e^μ.
    pub fn shift(&self, mu: &Weight) -> Self {
        FormalCharacter {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w + mu, c.clone())).collect(),
        }
    }

    /// Apply w to every exponent.
    pub fn act(&self, w: &WeylElement) -> Self {
        FormalCharacter {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (w.act(m), c.clone())).collect(),
        }
    }

    /// Sum of all coefficients, i.e. the dimension for a genuine character.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Canonically greatest exponent and its coefficient.
    pub fn leading_term(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Componentwise maximum of the doubled exponents.
    pub fn max_exponents(&self) -> Option<Vec<i64>> {
        self.fold_exponents(i64::max)
    }

    /// Componentwise minimum of the doubled exponents.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        self.fold_exponents(i64::min)
    }

    fn fold_exponents(&self, op: fn(i64, i64) -> i64) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.doubled().to_vec();
        Some(it.fold(first, |acc, w| acc.iter().zip(w.doubled()).map(|(&a, &b)| op(a, b)).collect()))
    }

    /// Invariant under every w ∈ W (terms permute with equal coefficients).
    pub fn is_weyl_invariant(&self) -> bool {
        match rootdata::weyl_iter(self.rank) {
            Ok(mut it) => it.all(|(w, _)| self.act(&w) == *self),
            Err(_) => false,
        }
    }

    /// Exact quotient `self / divisor` by leading-term elimination.
    ///
    /// Quotient monomials are confined to the box forced by the extreme
    /// exponents of dividend and divisor in each coordinate; a candidate
    /// outside that box (or a non-divisible coefficient) ends the division
    /// with [`Error::InexactDivision`] carrying the current remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_rank(divisor)?;
        let (lead_w, lead_c) = match divisor.leading_term() {
            Some((w, c)) => (w.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let (fmax, fmin) = (self.max_exponents().unwrap(), self.min_exponents().unwrap());
        let (gmax, gmin) = (divisor.max_exponents().unwrap(), divisor.min_exponents().unwrap());
        let hi: Vec<i64> = fmax.iter().zip(&gmax).map(|(a, b)| a - b).collect();
        let lo: Vec<i64> = fmin.iter().zip(&gmin).map(|(a, b)| a - b).collect();

        let mut remainder = self.terms.clone();
        let mut quotient = Self::zero(self.rank);
        let inexact = |rem: &BTreeMap<Weight, BigInt>| {
            let (w, c) = rem.iter().next_back().unwrap();
            Error::InexactDivision {
                terms: rem.len(),
                leading: format!("{c}·e^({w})"),
            }
        };
        while let Some((top, top_c)) = remainder.iter().next_back() {
            let q_w = top - &lead_w;
            let in_box = q_w.doubled().iter().zip(hi.iter().zip(&lo)).all(|(d, (h, l))| d <= h && d >= l);
            let (q_c, r) = top_c.div_rem(&lead_c);
            if !in_box || !r.is_zero() {
                return Err(inexact(&remainder));
            }
            for (gw, gc) in &divisor.terms {
                let key = &q_w + gw;
                let delta = &q_c * gc;
                match remainder.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quotient.add_term(q_w, q_c);
        }
        Ok(quotient)
    }

    /// Canonically sorted JSON terms (descending exponent order).
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| TermJson {
                exp2: w.doubled().to_vec(),
                coef: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(rank: usize, terms: &[TermJson]) -> Result<Self> {
        let mut f = Self::zero(rank);
        for t in terms {
            if t.exp2.len() != rank {
                return Err(Error::RankMismatch {
                    left: t.exp2.len(),
                    right: rank,
                });
            }
            let c: BigInt = t.coef.parse().map_err(|_| Error::Parse(format!("bad coefficient '{}'", t.coef)))?;
            f.add_term(Weight::from_doubled(t.exp2.clone()), c);
        }
        Ok(f)
    }
}

impl Serialize for FormalCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            let mag = c.abs();
            if w.is_zero() {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}e^({w})")?;
            } else {
                write!(f, "{sign}{mag}·e^({w})")?;
            }
        }
        Ok(())
    }
}

impl Add for &FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, rhs: &FormalCharacter) -> FormalCharacter {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &FormalCharacter {
    type Output = FormalCharacter;
    fn sub(self, rhs: &FormalCharacter) -> FormalCharacter {
        self.checked_sub(rhs).expect("rank mismatch")
    }
}

impl Mul for &FormalCharacter {
    type Output = FormalCharacter;
    fn mul(self, rhs: &FormalCharacter) -> FormalCharacter {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

impl Neg for &FormalCharacter {
    type Output = FormalCharacter;
    fn neg(self) -> FormalCharacter {
        self.scale(&BigInt::from(-1))
    }
}

/// Σ_{w∈W} sgn(w) e^{wλ} over W(B_n) = W(C_n). Zero exactly when λ is singular.
pub fn weyl_numerator(lambda: &Weight) -> Result<FormalCharacter> {
    let n = lambda.rank();
    let mut f = FormalCharacter::zero(n);
    for (w, s) in rootdata::weyl_iter(n)? {
        f.add_term(w.act(lambda), BigInt::from(s));
    }
    Ok(f)
}

/// e^{α/2} − e^{−α/2}.
fn root_factor(alpha: &Weight) -> FormalCharacter {
    let half = Weight::from_doubled(alpha.doubled().iter().map(|d| d / 2).collect());
    let mut f = FormalCharacter::exp(half.clone());
    f.add_term(-&half, BigInt::from(-1));
    f
}

/// Π_{α>0} (e^{α/2} − e^{−α/2}) over the positive roots of B_n or C_n.
/// `Kind::Osp` uses its even roots, so it coincides with `Kind::C`.
pub fn weyl_denominator(kind: Kind, n: usize) -> Result<FormalCharacter> {
    let data = positive_roots(kind, n)?;
    Ok(data
        .even_positive_roots
        .iter()
        .fold(FormalCharacter::one(n), |acc, a| &acc * &root_factor(a)))
}

/// Π_i (e^{e_i/2} + e^{−e_i/2}).
pub fn odd_denominator(n: usize) -> Result<FormalCharacter> {
    let data = positive_roots(Kind::Osp, n)?;
    Ok(data.odd_positive_roots.iter().fold(FormalCharacter::one(n), |acc, a| {
        let half = Weight::from_doubled(a.doubled().iter().map(|d| d / 2).collect());
        let mut f = FormalCharacter::exp(half.clone());
        f.add_term(-&half, BigInt::one());
        &acc * &f
    }))
}

/// A quotient of formal characters, compared by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalCharacter {
    pub numerator: FormalCharacter,
    pub denominator: FormalCharacter,
}

impl RationalCharacter {
    pub fn new(numerator: FormalCharacter, denominator: FormalCharacter) -> Result<Self> {
        numerator.check_rank(&denominator)?;
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalCharacter { numerator, denominator })
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.numerator.checked_mul(&other.numerator)?,
            self.denominator.checked_mul(&other.denominator)?,
        )
    }

    /// The quotient as a Laurent polynomial, when it is one.
    pub fn to_polynomial(&self) -> Result<FormalCharacter> {
        self.numerator.exact_div(&self.denominator)
    }

    /// Expansion in q_i = e^{−e_i/2} up to total degree `order`.
    ///
    /// The denominator is written e^{o}·P(q) with o its componentwise maximal
    /// exponent; P(0) must be ±1.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let reduced = self.reduce();
        let den = TruncatedSeries::from_character_auto(&reduced.denominator, order)?;
        let inv = den.inverse()?;
        if reduced.numerator.is_zero() {
            return Ok(TruncatedSeries::zero(self.rank(), inv.offset().clone(), order));
        }
        let num = TruncatedSeries::from_character_auto(&reduced.numerator, order)?;
        num.checked_mul(&inv)
    }

    /// Cancels root factors e^{α/2} ∓ e^{−α/2} common to numerator and
    /// denominator. Weyl denominators contain factors for e_i − e_j, which
    /// have no expansion in the q_i, so they must go before expanding.
    pub fn reduce(&self) -> RationalCharacter {
        let n = self.rank();
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        for f in root_factors(n) {
            while let Ok(d) = den.exact_div(&f) {
                match num.exact_div(&f) {
                    Ok(q) => {
                        num = q;
                        den = d;
                    }
                    Err(_) => break,
                }
            }
        }
        RationalCharacter {
            numerator: num,
            denominator: den,
        }
    }
}

/// e^{α/2} − e^{−α/2} for α = e_i ± e_j and e_i, then e^{e_i/2} + e^{−e_i/2}.
fn root_factors(n: usize) -> Vec<FormalCharacter> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.push(&Weight::unit(n, i) - &Weight::unit(n, j));
            roots.push(&Weight::unit(n, i) + &Weight::unit(n, j));
        }
    }
    for i in 0..n {
        roots.push(Weight::unit(n, i));
    }
    let half = |a: &Weight| Weight::from_doubled(a.doubled().iter().map(|c| c / 2).collect());
    let mut out: Vec<FormalCharacter> = roots
        .iter()
        .map(|a| {
            let h = half(a);
            FormalCharacter::from_terms(n, [(h.clone(), BigInt::one()), (-h, -BigInt::one())])
        })
        .collect();
    for i in 0..n {
        let h = half(&Weight::unit(n, i));
        out.push(FormalCharacter::from_terms(n, [(h.clone(), BigInt::one()), (-h, BigInt::one())]));
    }
    out
}

impl PartialEq for RationalCharacter {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn poly(rank: usize, terms: &[(&str, i64)]) -> FormalCharacter {
        FormalCharacter::from_terms(rank, terms.iter().map(|(e, c)| (w(e), BigInt::from(*c))))
    }

    #[test]
    fn ring_examples() {
        let a = poly(1, &[("1", 1), ("-1", 1)]);
        let b = poly(1, &[("-1", -1)]);
        assert_eq!(&a + &b, poly(1, &[("1", 1)]));
        let x = poly(1, &[("1/2", 1), ("-1/2", -1)]);
        let y = poly(1, &[("1/2", 1), ("-1/2", 1)]);
        assert_eq!(&x * &y, poly(1, &[("1", 1), ("-1", -1)]));
        assert_eq!(&a * &FormalCharacter::one(1), a);
        assert!(matches!(a.checked_add(&FormalCharacter::one(2)), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(weyl_numerator(&w("1/2")).unwrap(), poly(1, &[("1/2", 1), ("-1/2", -1)]));
        assert!(weyl_numerator(&w("0")).unwrap().is_zero());
        let n2 = weyl_numerator(&w("3/2,1/2")).unwrap();
        assert_eq!(n2.len(), 8);
        assert!(n2.terms().values().all(|c| c.abs().is_one()));
        assert_eq!(n2.coefficient_sum(), BigInt::zero());
        // w = swap has sgn −1
        assert_eq!(n2.coefficient(&w("1/2,3/2")), BigInt::from(-1));
        assert_eq!(n2.coefficient(&w("-3/2,-1/2")), BigInt::from(1));
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(weyl_denominator(Kind::B, 1).unwrap(), poly(1, &[("1/2", 1), ("-1/2", -1)]));
        assert_eq!(weyl_denominator(Kind::C, 1).unwrap(), poly(1, &[("1", 1), ("-1", -1)]));
        assert_eq!(odd_denominator(1).unwrap(), poly(1, &[("1/2", 1), ("-1/2", 1)]));
    }

    #[test]
    fn division_examples() {
        let f = poly(1, &[("1", 1), ("-1", -1)]);
        let g = poly(1, &[("1/2", 1), ("-1/2", -1)]);
        assert_eq!(f.exact_div(&g).unwrap(), poly(1, &[("1/2", 1), ("-1/2", 1)]));
        assert_eq!(f.exact_div(&f).unwrap(), FormalCharacter::one(1));
        let num = poly(1, &[("1", 1), ("0", 1)]);
        let den = poly(1, &[("1", 1), ("0", -1)]);
        assert!(matches!(num.exact_div(&den), Err(Error::InexactDivision { .. })));
        assert_eq!(num.exact_div(&FormalCharacter::zero(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn inexact_division_in_two_variables_terminates() {
        let num = poly(2, &[("1,0", 1), ("0,-3", 2)]);
        let den = poly(2, &[("1,1", 1), ("0,0", -1)]);
        assert!(num.exact_div(&den).is_err());
    }

    #[test]
    fn json_terms_sorted_descending() {
        let f = poly(1, &[("-1", 1), ("1", 3)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"[{"2exp":[2],"coef":"3"},{"2exp":[-2],"coef":"1"}]"#);
        let back = FormalCharacter::from_json_terms(1, &f.to_json_terms()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rational_character_equality_by_cross_multiplication() {
        let db = weyl_denominator(Kind::B, 1).unwrap();
        let dc = weyl_denominator(Kind::C, 1).unwrap();
        let d1 = odd_denominator(1).unwrap();
        let a = RationalCharacter::new(db.clone(), dc.clone()).unwrap();
        let b = RationalCharacter::new(FormalCharacter::one(1), d1).unwrap();
        assert_eq!(a, b);
        assert!(RationalCharacter::new(db, FormalCharacter::zero(1)).is_err());
    }
}
