//! Root data for the types B_n, C_n and osp(1|2n), together with the
//! hyperoctahedral Weyl group realized as signed permutations.
//!
//! Every weight is stored with doubled coordinates, so that the half-integers
//! that show up as ρ, ω_n and metaplectic parameters stay exact integers.
//! Root lists use the canonical order: lexicographically descending on the
//! doubled coordinates.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted by [`weyl_iter`] unless a limit is given explicitly.
pub const DEFAULT_MAX_WEYL_RANK: usize = 8;

/// A point of (½ℤ)ⁿ in the basis e_1, …, e_n, stored as `2λ`.
///
/// Serializes as a bare JSON array of the doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    doubled: Vec<i64>,
}

impl Weight {
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Weight { doubled }
    }

    /// Builds a weight from integer coordinates.
    pub fn from_integers(coords: &[i64]) -> Self {
        Weight {
            doubled: coords.iter().map(|c| c.checked_mul(2).expect("weight overflow")).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Weight { doubled: vec![0; n] }
    }

    /// The basis vector e_i (0-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut doubled = vec![0; n];
        doubled[i] = 2;
        Weight { doubled }
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&d| d == 0)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 == 0)
    }

    /// True when every coordinate lies in ℤ + ½.
    pub fn is_half_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 != 0)
    }

    /// Four times the coordinate inner product, ⟨e_i, e_j⟩ = δ_ij.
    pub fn inner4(&self, other: &Weight) -> i64 {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in inner product");
        self.doubled.iter().zip(&other.doubled).map(|(a, b)| a * b).sum()
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            doubled: self.doubled.iter().map(|d| d.checked_mul(k).expect("weight overflow")).collect(),
        }
    }

    /// Coordinates nonzero with pairwise distinct absolute values.
    pub fn is_regular(&self) -> bool {
        self.singular_coordinates().is_empty()
    }

    /// λ_1 > λ_2 > ⋯ > λ_n > 0.
    pub fn is_strictly_dominant(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] > w[1]) && self.doubled.last().is_none_or(|&d| d > 0)
    }

    /// λ_1 ≥ λ_2 ≥ ⋯ ≥ λ_n ≥ 0.
    pub fn is_dominant(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] >= w[1]) && self.doubled.last().is_none_or(|&d| d >= 0)
    }

    /// 1-based positions responsible for non-regularity: zero coordinates and
    /// coordinates that share an absolute value with another.
    pub fn singular_coordinates(&self) -> Vec<usize> {
        let n = self.rank();
        let mut bad = Vec::new();
        for i in 0..n {
            let d = self.doubled[i];
            if d == 0 || (0..n).any(|j| j != i && self.doubled[j].abs() == d.abs()) {
                bad.push(i + 1);
            }
        }
        bad
    }

    fn check_rank(&self, other: &Weight) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in weight arithmetic");
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight {
            doubled: self
                .doubled
                .iter()
                .zip(&rhs.doubled)
                .map(|(a, b)| a.checked_add(*b).expect("weight overflow"))
                .collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight {
            doubled: self
                .doubled
                .iter()
                .zip(&rhs.doubled)
                .map(|(a, b)| a.checked_sub(*b).expect("weight overflow"))
                .collect(),
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            doubled: self.doubled.iter().map(|d| -d).collect(),
        }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// Formats one doubled coordinate as an integer or a half-integer fraction.
pub fn format_half(d: i64) -> String {
    if d % 2 == 0 {
        (d / 2).to_string()
    } else {
        format!("{}/2", d)
    }
}

impl fmt::Display for Weight {
    /// Comma-separated exact coordinates, e.g. `3/2,1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.doubled.iter().map(|&d| format_half(d)).join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated integers or halves (`3/2,-1/2,2`).
    fn from_str(s: &str) -> Result<Self> {
        let mut doubled = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty coordinate in '{s}'")));
            }
            let d = match part.split_once('/') {
                None => part
                    .parse::<i64>()
                    .ok()
                    .and_then(|v| v.checked_mul(2))
                    .ok_or_else(|| Error::Parse(format!("bad coordinate '{part}'")))?,
                Some((num, den)) => {
                    let num: i64 = num.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in '{part}'")))?;
                    let den: i64 = den.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in '{part}'")))?;
                    match den {
                        1 => num.checked_mul(2).ok_or_else(|| Error::Parse(format!("overflow in '{part}'")))?,
                        2 => num,
                        _ => return Err(Error::Parse(format!("coordinate '{part}' is not in ½ℤ"))),
                    }
                }
            };
            doubled.push(d);
        }
        Ok(Weight { doubled })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    B,
    C,
    #[serde(rename = "OSP")]
    Osp,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::B => "B",
            Kind::C => "C",
            Kind::Osp => "OSP",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" | "so" => Ok(Kind::B),
            "c" | "sp" => Ok(Kind::C),
            "osp" => Ok(Kind::Osp),
            _ => Err(Error::Parse(format!("unknown kind '{s}' (expected B, C or osp)"))),
        }
    }
}

/// Positive roots of one of the three root systems.
///
/// For `B` the short roots e_i sit in `even_positive_roots` and
/// `odd_positive_roots` is empty; for `Osp` the even roots are those of C_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemData {
    pub kind: Kind,
    pub rank: usize,
    pub even_positive_roots: Vec<Weight>,
    pub odd_positive_roots: Vec<Weight>,
}

impl RootSystemData {
    /// Even and odd positive roots in one list (canonical order).
    pub fn all_positive_roots(&self) -> Vec<Weight> {
        let mut all: Vec<Weight> = self.even_positive_roots.iter().chain(&self.odd_positive_roots).cloned().collect();
        canonical_sort(&mut all);
        all
    }

    /// Simple roots e_1−e_2, …, e_{n−1}−e_n, followed by e_n (B, OSP) or 2e_n (C).
    pub fn simple_roots(&self) -> Vec<Weight> {
        let n = self.rank;
        let mut simple: Vec<Weight> = (0..n - 1).map(|i| &Weight::unit(n, i) - &Weight::unit(n, i + 1)).collect();
        let last = Weight::unit(n, n - 1);
        simple.push(match self.kind {
            Kind::C => last.scale(2),
            Kind::B | Kind::Osp => last,
        });
        simple
    }
}

fn canonical_sort(ws: &mut [Weight]) {
    ws.sort_by(|a, b| b.cmp(a));
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidRank(n))
    } else {
        Ok(())
    }
}

/// e_i ± e_j for i < j.
fn long_roots(n: usize) -> Vec<Weight> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.push(&Weight::unit(n, i) - &Weight::unit(n, j));
            roots.push(&Weight::unit(n, i) + &Weight::unit(n, j));
        }
    }
    roots
}

pub fn positive_roots(kind: Kind, n: usize) -> Result<RootSystemData> {
    check_rank(n)?;
    let mut even = long_roots(n);
    let mut odd = Vec::new();
    let short: Vec<Weight> = (0..n).map(|i| Weight::unit(n, i)).collect();
    match kind {
        Kind::B => even.extend(short),
        Kind::C => even.extend(short.iter().map(|w| w.scale(2))),
        Kind::Osp => {
            even.extend(short.iter().map(|w| w.scale(2)));
            odd = short;
        }
    }
    canonical_sort(&mut even);
    canonical_sort(&mut odd);
    Ok(RootSystemData {
        kind,
        rank: n,
        even_positive_roots: even,
        odd_positive_roots: odd,
    })
}

fn half_sum(roots: &[Weight], n: usize) -> Weight {
    let total = roots.iter().fold(Weight::zero(n), |acc, r| &acc + r);
    // total is a sum of roots with doubled coordinates; halving keeps it exact
    // because the doubled coordinates of the sum are always even.
    Weight::from_doubled(total.doubled().iter().map(|d| d / 2).collect())
}

/// ρ₀: half-sum of the positive roots of C_n, equal to (n, …, 1).
pub fn rho0(n: usize) -> Result<Weight> {
    check_rank(n)?;
    Ok(half_sum(&positive_roots(Kind::C, n)?.even_positive_roots, n))
}

/// ρ₁: half-sum of the positive odd roots of osp(1|2n), equal to (½, …, ½).
pub fn rho1(n: usize) -> Result<Weight> {
    check_rank(n)?;
    Ok(half_sum(&positive_roots(Kind::Osp, n)?.odd_positive_roots, n))
}

/// ρ for the given kind; for `Osp` this is ρ₀ − ρ₁.
pub fn rho(kind: Kind, n: usize) -> Result<Weight> {
    check_rank(n)?;
    match kind {
        Kind::Osp => Ok(&rho0(n)? - &rho1(n)?),
        _ => Ok(half_sum(&positive_roots(kind, n)?.even_positive_roots, n)),
    }
}

/// ω_i = e_1 + ⋯ + e_i for i < n and ω_n = ½(e_1 + ⋯ + e_n).
pub fn fundamental_weights(n: usize) -> Result<Vec<Weight>> {
    check_rank(n)?;
    Ok((1..=n)
        .map(|i| {
            if i < n {
                Weight::from_doubled((0..n).map(|j| if j < i { 2 } else { 0 }).collect())
            } else {
                Weight::from_doubled(vec![1; n])
            }
        })
        .collect())
}

/// A signed permutation w acting by (wλ)_i = signs_i · λ_{perm(i)} (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::RankMismatch { left: n, right: signs.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Structural(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Structural(format!("signs {signs:?} must be ±1")));
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn act(&self, lambda: &Weight) -> Weight {
        assert_eq!(lambda.rank(), self.rank(), "rank mismatch in Weyl action");
        let d = lambda.doubled();
        Weight::from_doubled(self.perm.iter().zip(&self.signs).map(|(&p, &s)| s as i64 * d[p]).collect())
    }

    /// The element `self ∘ other`, i.e. λ ↦ self(other(λ)).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), other.rank());
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = self.perm.iter().zip(&self.signs).map(|(&p, &s)| s * other.signs[p]).collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
            signs[p] = self.signs[i];
        }
        WeylElement { perm, signs }
    }

    /// Determinant of the signed permutation matrix.
    pub fn sgn(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.perm.len() {
            for j in i + 1..self.perm.len() {
                if self.perm[i] > self.perm[j] {
                    inversions += 1;
                }
            }
        }
        let perm_sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        perm_sign * self.signs.iter().map(|&s| s as i32).product::<i32>()
    }

    /// Dense matrix M with (M v)_i = Σ_j M_ij v_j matching [`WeylElement::act`].
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[i][self.perm[i]] = self.signs[i] as i64;
        }
        m
    }
}

/// All 2ⁿ·n! elements of W(B_n) = W(C_n) paired with their signs.
///
/// Order: permutations in lexicographic order; within each permutation the
/// sign masks run 0..2ⁿ in binary, bit i of the mask negating coordinate i+1.
pub fn weyl_iter(n: usize) -> Result<impl Iterator<Item = (WeylElement, i32)>> {
    weyl_iter_with_limit(n, DEFAULT_MAX_WEYL_RANK)
}

pub fn weyl_iter_with_limit(n: usize, limit: usize) -> Result<impl Iterator<Item = (WeylElement, i32)>> {
    if n > limit {
        return Err(Error::RankLimit { rank: n, limit });
    }
    Ok((0..n).permutations(n).flat_map(move |perm| {
        (0u64..1 << n).map(move |mask| {
            let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let w = WeylElement {
                perm: perm.clone(),
                signs,
            };
            let s = w.sgn();
            (w, s)
        })
    }))
}

/// Returns (w, wλ) with wλ strictly dominant.
pub fn make_dominant(lambda: &Weight) -> Result<(WeylElement, Weight)> {
    let bad = lambda.singular_coordinates();
    if !bad.is_empty() {
        return Err(Error::NonRegular(format!(
            "({lambda}) has zero or repeated absolute values at coordinates {bad:?}"
        )));
    }
    let d = lambda.doubled();
    let mut perm: Vec<usize> = (0..d.len()).collect();
    perm.sort_by(|&a, &b| d[b].abs().cmp(&d[a].abs()));
    let signs = perm.iter().map(|&p| if d[p] > 0 { 1 } else { -1 }).collect();
    let w = WeylElement { perm, signs };
    let dom = w.act(lambda);
    Ok((w, dom))
}

/// Writes Λ = Σ p_i ω_i and checks p_i ∈ ℤ≥0 with p_n even.
pub fn validate_highest_weight(lambda: &Weight, n: usize) -> Result<Vec<i64>> {
    check_rank(n)?;
    if lambda.rank() != n {
        return Err(Error::RankMismatch { left: lambda.rank(), right: n });
    }
    let d = lambda.doubled();
    let mut p = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let diff = d[i] - d[i + 1];
        if diff < 0 || diff % 2 != 0 {
            return Err(Error::NotDominant(format!(
                "({lambda}): p_{} = {} is not a nonnegative integer",
                i + 1,
                format_half(diff)
            )));
        }
        p.push(diff / 2);
    }
    let last = d[n - 1];
    if last < 0 {
        return Err(Error::NotDominant(format!("({lambda}): p_{n} = {last} is negative")));
    }
    if last % 2 != 0 {
        return Err(Error::Spinorial(format!("({lambda}): p_{n} = {last}")));
    }
    p.push(last);
    Ok(p)
}
