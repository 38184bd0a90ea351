//! Harish-Chandra parameters for Sp(2n,ℝ) and Mp(2n,ℝ), stable numerators,
//! the transfer identity against SO(2n+1), and the lifting Γ.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charring::{weyl_denominator, weyl_numerator, FormalCharacter, RationalCharacter};
use crate::error::{Error, Result};
use crate::oscillator::{weil_character, WeilParity};
use crate::rootdata::{make_dominant, Kind, Weight, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParameterParity {
    /// All coordinates in ℤ: Sp(2n,ℝ), or SO(2n+1) in the transfer.
    Integral,
    /// All coordinates in ℤ + ½: genuine for Mp(2n,ℝ).
    Genuine,
}

impl ParameterParity {
    pub fn name(self) -> &'static str {
        match self {
            ParameterParity::Integral => "integral",
            ParameterParity::Genuine => "genuine",
        }
    }
}

/// A regular weight of definite parity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarishChandraParameter {
    lambda: Weight,
    parity: ParameterParity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterJson {
    #[serde(rename = "2lambda")]
    pub lambda2: Vec<i64>,
    pub parity: ParameterParity,
}

impl HarishChandraParameter {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn parity(&self) -> ParameterParity {
        self.parity
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn to_json(&self) -> ParameterJson {
        ParameterJson {
            lambda2: self.lambda.doubled().to_vec(),
            parity: self.parity,
        }
    }
}

impl fmt::Display for HarishChandraParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lambda)
    }
}

/// Determines parity and checks regularity.
pub fn classify(lambda: &Weight) -> Result<HarishChandraParameter> {
    if lambda.rank() == 0 {
        return Err(Error::InvalidRank(0));
    }
    let parity = if lambda.is_integral() {
        ParameterParity::Integral
    } else if lambda.is_half_integral() {
        ParameterParity::Genuine
    } else {
        return Err(Error::MixedParity(format!("({lambda})")));
    };
    let bad = lambda.singular_coordinates();
    if !bad.is_empty() {
        return Err(Error::NonRegular(format!(
            "({lambda}) has zero or repeated absolute values at coordinates {bad:?}"
        )));
    }
    Ok(HarishChandraParameter {
        lambda: lambda.clone(),
        parity,
    })
}

/// ω_n = (½, …, ½).
pub fn omega_n(n: usize) -> Weight {
    Weight::from_doubled(vec![1; n])
}

/// Θ = Σ_w a_w e^{wλ} / D with λ strictly dominant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualCharacter {
    lambda_dom: HarishChandraParameter,
    coeffs: BTreeMap<WeylElement, BigRational>,
}

impl VirtualCharacter {
    pub fn new(lambda_dom: HarishChandraParameter, coeffs: BTreeMap<WeylElement, BigRational>) -> Result<Self> {
        if !lambda_dom.lambda().is_strictly_dominant() {
            return Err(Error::NotDominant(lambda_dom.to_string()));
        }
        let n = lambda_dom.rank();
        if coeffs.keys().any(|w| w.rank() != n) {
            return Err(Error::RankMismatch {
                left: n,
                right: coeffs.keys().find(|w| w.rank() != n).map_or(0, WeylElement::rank),
            });
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| *c != BigRational::from_integer(0.into())).collect();
        Ok(VirtualCharacter { lambda_dom, coeffs })
    }

    /// Σ_w a_w e^{wλ} for λ in any chamber, rewritten around the dominant
    /// representative: with w₀λ dominant, e^{wλ} = e^{(w w₀⁻¹) w₀λ}.
    pub fn from_parameter(lambda: &HarishChandraParameter, coeffs: BTreeMap<WeylElement, BigRational>) -> Result<Self> {
        let (w0, dom) = make_dominant(lambda.lambda())?;
        let w0_inv = w0.inverse();
        let moved = coeffs.into_iter().map(|(w, c)| (w.compose(&w0_inv), c)).collect();
        Self::new(classify(&dom)?, moved)
    }

    /// The single stable term e^{λ} with coefficient 1.
    pub fn basic(lambda: &HarishChandraParameter) -> Result<Self> {
        let id = WeylElement::identity(lambda.rank());
        Self::from_parameter(lambda, BTreeMap::from([(id, BigRational::from_integer(1.into()))]))
    }

    pub fn lambda_dom(&self) -> &HarishChandraParameter {
        &self.lambda_dom
    }

    pub fn coeffs(&self) -> &BTreeMap<WeylElement, BigRational> {
        &self.coeffs
    }

    /// The numerator Σ_w a_w e^{wλ}, when all coefficients are integers.
    pub fn numerator(&self) -> Option<FormalCharacter> {
        let n = self.lambda_dom.rank();
        let mut f = FormalCharacter::zero(n);
        for (w, c) in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            f.add_term(w.act(self.lambda_dom.lambda()), c.to_integer());
        }
        Some(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// Γ: the coefficients stay, the parameter moves by −ω_n (forward, Sp to
/// Mp) or +ω_n (inverse).
pub fn lift_gamma(theta: &VirtualCharacter, direction: Direction) -> Result<VirtualCharacter> {
    let lambda = theta.lambda_dom();
    let n = lambda.rank();
    let (expected, moved) = match direction {
        Direction::Forward => (ParameterParity::Integral, lambda.lambda() - &omega_n(n)),
        Direction::Inverse => (ParameterParity::Genuine, lambda.lambda() + &omega_n(n)),
    };
    if lambda.parity() != expected {
        return Err(Error::WrongParity {
            expected: expected.name(),
            got: lambda.parity().name(),
        });
    }
    VirtualCharacter::new(classify(&moved)?, theta.coeffs().clone())
}

/// λ′ = λ − w⁻¹ω_n with w the dominant-chamber witness of λ.
pub fn lift_ds_parameter(lambda: &HarishChandraParameter) -> Result<HarishChandraParameter> {
    if lambda.parity() != ParameterParity::Integral {
        return Err(Error::WrongParity {
            expected: "integral",
            got: lambda.parity().name(),
        });
    }
    let (w, _) = make_dominant(lambda.lambda())?;
    classify(&(lambda.lambda() - &w.inverse().act(&omega_n(lambda.rank()))))
}

/// Inverse of `lift_ds_parameter`: λ = λ′ + w⁻¹ω_n.
pub fn unlift_ds_parameter(lambda_prime: &HarishChandraParameter) -> Result<HarishChandraParameter> {
    if lambda_prime.parity() != ParameterParity::Genuine {
        return Err(Error::WrongParity {
            expected: "genuine",
            got: lambda_prime.parity().name(),
        });
    }
    let (w, _) = make_dominant(lambda_prime.lambda())?;
    classify(&(lambda_prime.lambda() + &w.inverse().act(&omega_n(lambda_prime.rank()))))
}

/// Σ_{w∈W} sgn(w) e^{wλ}.
pub fn stable_numerator(lambda: &HarishChandraParameter) -> Result<FormalCharacter> {
    weyl_numerator(lambda.lambda())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    pub lambda: Weight,
    pub lambda_prime: Weight,
    /// w with w·λ = λ′.
    pub orbit_witness: WeylElement,
    pub orbit_sign: i32,
    pub order: usize,
    pub numerator_ok: bool,
    pub series_ok: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCertificateJson {
    pub lambda: String,
    pub lambda_prime: String,
    pub orbit_sign: i32,
    pub order: usize,
    pub pass: bool,
}

impl LiftCertificate {
    pub fn to_json(&self) -> LiftCertificateJson {
        LiftCertificateJson {
            lambda: self.lambda.to_string(),
            lambda_prime: self.lambda_prime.to_string(),
            orbit_sign: self.orbit_sign,
            order: self.order,
            pass: self.pass,
        }
    }
}

/// λ = (a₁,…,a_k, b₁,…,b_l) with positive genuine entries; λ′ = (a, −b_l, …, −b₁).
/// Checks N_{λ′} = ±N_λ with the sign of the orbit witness, and
/// expand(N_λ/D_B)·Φ = ±expand(N_{λ′}/D_C).
pub fn verify_adams_transfer(lambda: &Weight, k: usize, order: usize) -> Result<LiftCertificate> {
    let p = classify(lambda)?;
    if p.parity() != ParameterParity::Genuine {
        return Err(Error::WrongParity {
            expected: "genuine",
            got: p.parity().name(),
        });
    }
    let n = lambda.rank();
    if k > n {
        return Err(Error::Parse(format!("split {k} exceeds rank {n}")));
    }
    let d = lambda.doubled();
    if d.iter().any(|&x| x <= 0) {
        return Err(Error::Parse(format!("({lambda}) must have positive entries")));
    }
    let mut prime: Vec<i64> = d[..k].to_vec();
    prime.extend(d[k..].iter().rev().map(|&x| -x));
    let lambda_prime = Weight::from_doubled(prime);

    let (w1, dom1) = make_dominant(lambda)?;
    let (w2, dom2) = make_dominant(&lambda_prime)?;
    debug_assert_eq!(dom1, dom2);
    let witness = w2.inverse().compose(&w1);
    let orbit_sign = witness.sgn();
    debug_assert_eq!(witness.act(lambda), lambda_prime);

    let n_lambda = weyl_numerator(lambda)?;
    let n_prime = weyl_numerator(&lambda_prime)?;
    let numerator_ok = n_prime == n_lambda.scale(&orbit_sign.into());

    let so_side = RationalCharacter::new(n_lambda, weyl_denominator(Kind::B, n)?)?.expand(order)?;
    let lhs = so_side.checked_mul(&weil_character(n, WeilParity::Difference, order)?)?;
    let rhs = RationalCharacter::new(n_prime, weyl_denominator(Kind::C, n)?)?
        .expand(order)?
        .scale(&orbit_sign.into());
    let (lhs, rhs) = lhs.align(&rhs)?;
    let series_ok = lhs.truncated_eq(&rhs);
    Ok(LiftCertificate {
        lambda: lambda.clone(),
        lambda_prime,
        orbit_witness: witness,
        orbit_sign,
        order,
        numerator_ok,
        series_ok,
        pass: numerator_ok && series_ok,
    })
}

/// Every (λ, k) with n distinct positive genuine entries ≤ max_doubled/2,
/// a and b each listed in decreasing order.
pub fn adams_parameters(n: usize, max_doubled: i64) -> Vec<(Weight, usize)> {
    let values: Vec<i64> = (1..=max_doubled).step_by(2).collect();
    let mut out = Vec::new();
    for set in values.iter().copied().combinations(n) {
        for mask in 0..(1u32 << n) {
            let mut a: Vec<i64> = Vec::new();
            let mut b: Vec<i64> = Vec::new();
            for (i, &v) in set.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    b.push(v);
                } else {
                    a.push(v);
                }
            }
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            let k = a.len();
            a.extend(b);
            out.push((Weight::from_doubled(a), k));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub n: usize,
    pub bound: i64,
    pub parameters: usize,
    pub dominant: usize,
    pub injective: bool,
    pub genuine_regular: bool,
    pub roundtrip: bool,
    /// w(λ′) = wλ − ω_n with w the chamber witness of λ.
    pub chamber_compatible: bool,
    /// Dominant inputs land on dominant outputs.
    pub dominance_preserved: bool,
    pub pass: bool,
}

/// All integral regular λ with |λ_i| ≤ bound.
pub fn integral_regular_parameters(n: usize, bound: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for abs in (1..=bound).combinations(n) {
        for perm in abs.iter().copied().permutations(n) {
            for mask in 0..(1u32 << n) {
                let coords: Vec<i64> = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                    .collect();
                out.push(Weight::from_integers(&coords));
            }
        }
    }
    out
}

/// Exhaustive check that λ ↦ λ′ is a bijection onto genuine regular
/// parameters, chamber by chamber.
pub fn bijection_suite(n: usize, bound: i64) -> Result<BijectionReport> {
    if n == 0 {
        return Err(Error::InvalidRank(n));
    }
    if bound < 1 {
        return Err(Error::Parse(format!("bound must be at least 1, got {bound}")));
    }
    let inputs = integral_regular_parameters(n, bound);
    let omega = omega_n(n);
    struct Row {
        out: Weight,
        genuine: bool,
        roundtrip: bool,
        chamber: bool,
        dominant_in: bool,
        dominant_out: bool,
    }
    let rows: Vec<Row> = inputs
        .par_iter()
        .map(|lam| -> Result<Row> {
            let p = classify(lam)?;
            let out = lift_ds_parameter(&p)?;
            let back = unlift_ds_parameter(&out)?;
            let (w, dom) = make_dominant(lam)?;
            Ok(Row {
                genuine: out.parity() == ParameterParity::Genuine && out.lambda().is_regular(),
                roundtrip: back.lambda() == lam,
                chamber: w.act(out.lambda()) == &dom - &omega,
                dominant_in: lam.is_strictly_dominant(),
                dominant_out: out.lambda().is_strictly_dominant(),
                out: out.lambda().clone(),
            })
        })
        .collect::<Result<_>>()?;
    let distinct: HashSet<&Weight> = rows.iter().map(|r| &r.out).collect();
    let injective = distinct.len() == rows.len();
    let genuine_regular = rows.iter().all(|r| r.genuine);
    let roundtrip = rows.iter().all(|r| r.roundtrip);
    let chamber_compatible = rows.iter().all(|r| r.chamber);
    let dominance_preserved = rows.iter().filter(|r| r.dominant_in).all(|r| r.dominant_out);
    Ok(BijectionReport {
        n,
        bound,
        parameters: rows.len(),
        dominant: rows.iter().filter(|r| r.dominant_in).count(),
        injective,
        genuine_regular,
        roundtrip,
        chamber_compatible,
        dominance_preserved,
        pass: injective && genuine_regular && roundtrip && chamber_compatible && dominance_preserved,
    })
}
