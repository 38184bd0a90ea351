//! Characters of the oscillator module M = C[x_1, …, x_n], the transfer
//! factor Φ = ch M⁺ − ch M⁻, and Dirac index identities as truncated series.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::charring::{odd_denominator, weyl_denominator, weyl_numerator, FormalCharacter, RationalCharacter, SeriesJson, TruncatedSeries};
use crate::error::{Error, Result};
use crate::rootdata::{rho, Kind, Weight};
use crate::weylchar::{character_osp, HighestWeight, HighestWeightJson};

/// Sign convention tag: Φ is taken with leading coefficient +1 on q₁⋯q_n.
pub const PHI_SIGN: &str = "+leading";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeilParity {
    Even,
    Odd,
    Difference,
}

impl FromStr for WeilParity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" | "+" => Ok(WeilParity::Even),
            "odd" | "-" => Ok(WeilParity::Odd),
            "difference" | "diff" => Ok(WeilParity::Difference),
            _ => Err(Error::Parse(format!("unknown parity {s:?}"))),
        }
    }
}

/// The oscillator module of rank n: x^a has weight −Σ(a_i + ½)e_i and
/// parity |a| mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilModuleSpec {
    rank: usize,
}

impl WeilModuleSpec {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        Ok(WeilModuleSpec { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Weight of the basis vector 1.
    pub fn weight_of_basis_one(&self) -> Weight {
        Weight::from_doubled(vec![-1; self.rank])
    }

    pub fn weight_of_monomial(&self, a: &[u32]) -> Weight {
        assert_eq!(a.len(), self.rank);
        Weight::from_doubled(a.iter().map(|&x| -(2 * x as i64 + 1)).collect())
    }

    pub fn parity_of_monomial(a: &[u32]) -> WeilParity {
        if a.iter().sum::<u32>() % 2 == 0 {
            WeilParity::Even
        } else {
            WeilParity::Odd
        }
    }
}

fn for_each_exponent(n: usize, max_degree: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(prefix: &mut Vec<u32>, n: usize, budget: usize, f: &mut impl FnMut(&[u32])) {
        if prefix.len() == n {
            f(prefix);
            return;
        }
        for k in 0..=budget {
            prefix.push(k as u32);
            rec(prefix, n, budget - k, f);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, max_degree, f);
}

/// Σ e^{−Σ(a_i+½)e_i} over monomials of the given parity, as a series with
/// offset 0 truncated at total q-degree N. The monomial x^a sits at q^{2a+1}.
pub fn weil_character(n: usize, parity: WeilParity, order: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidRank(n));
    }
    if order == 0 {
        return Err(Error::OrderTooSmall(order));
    }
    let mut coeffs = Vec::new();
    if order >= n {
        for_each_exponent(n, (order - n) / 2, &mut |a| {
            let odd = a.iter().sum::<u32>() % 2 == 1;
            let c = match (parity, odd) {
                (WeilParity::Even, false) | (WeilParity::Odd, true) | (WeilParity::Difference, false) => 1,
                (WeilParity::Difference, true) => -1,
                _ => 0,
            };
            if c != 0 {
                coeffs.push((a.iter().map(|&x| 2 * x + 1).collect(), BigInt::from(c)));
            }
        });
    }
    Ok(TruncatedSeries::from_coeffs(Weight::zero(n), order, coeffs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracIndexCertificate {
    /// None for the trivial module.
    pub highest_weight: Option<HighestWeight>,
    pub n: usize,
    pub order: usize,
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiracIndexJson {
    pub identity: String,
    pub n: usize,
    pub highest_weight: Option<HighestWeightJson>,
    pub order: usize,
    pub lhs: SeriesJson,
    pub rhs: SeriesJson,
    pub phi_sign: String,
    pub pass: bool,
}

impl DiracIndexCertificate {
    fn new(highest_weight: Option<HighestWeight>, order: usize, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Result<Self> {
        let (lhs, rhs) = lhs.align(&rhs)?;
        let verdict = lhs.truncated_eq(&rhs);
        Ok(DiracIndexCertificate {
            n: lhs.rank(),
            highest_weight,
            order,
            lhs,
            rhs,
            verdict,
        })
    }

    pub fn to_json(&self) -> DiracIndexJson {
        DiracIndexJson {
            identity: if self.highest_weight.is_some() {
                "dirac-index-character".into()
            } else {
                "dirac-index-trivial".into()
            },
            n: self.n,
            highest_weight: self.highest_weight.as_ref().map(|hw| HighestWeightJson {
                lambda2: hw.weight().doubled().to_vec(),
                p: hw.coefficients().to_vec(),
            }),
            order: self.order,
            lhs: self.lhs.to_json(),
            rhs: self.rhs.to_json(),
            phi_sign: PHI_SIGN.into(),
            pass: self.verdict,
        }
    }
}

/// V = trivial: D vanishes on 1 ⊗ M, so H_D^± = M^± and the index is Φ.
pub fn dirac_index_trivial(n: usize, order: usize) -> Result<DiracIndexCertificate> {
    let lhs = weil_character(n, WeilParity::Difference, order)?;
    // Right side assembled from the cohomology, which is all of M split by
    // parity.
    let plus = weil_character(n, WeilParity::Even, order)?;
    let minus = weil_character(n, WeilParity::Odd, order)?;
    let rhs = plus.checked_sub(&minus)?;
    DiracIndexCertificate::new(None, order, lhs, rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferFactorCheck {
    pub n: usize,
    pub order: usize,
    /// Φ · D₁ = 1 up to the order.
    pub inverse_ok: bool,
    /// +1 if expand(D_B/D_C) = Φ, −1 if it equals −Φ, 0 otherwise.
    pub matched_sign: i32,
    pub phi_sign: String,
    pub pass: bool,
}

/// Checks Φ · D₁ = 1 and expand(D_B/D_C) = Φ, reporting which sign matched.
pub fn transfer_factor_check(n: usize, order: usize) -> Result<TransferFactorCheck> {
    let phi = weil_character(n, WeilParity::Difference, order)?;
    let d1 = TruncatedSeries::from_character_auto(&odd_denominator(n)?, order)?;
    let prod = phi.checked_mul(&d1)?;
    let inverse_ok = prod.truncated_eq(&TruncatedSeries::one(n, order));
    let ratio = RationalCharacter::new(weyl_denominator(Kind::B, n)?, weyl_denominator(Kind::C, n)?)?.expand(order)?;
    let matched_sign = if ratio.truncated_eq(&phi) {
        1
    } else if ratio.truncated_eq(&phi.neg()) {
        -1
    } else {
        0
    };
    Ok(TransferFactorCheck {
        n,
        order,
        inverse_ok,
        matched_sign,
        phi_sign: PHI_SIGN.into(),
        pass: inverse_ok && matched_sign == 1,
    })
}

pub fn transfer_factor_identity(n: usize, order: usize) -> Result<bool> {
    Ok(transfer_factor_check(n, order)?.pass)
}

/// ch V_Λ · Φ against the expansion of N_{Λ+ρ}/D_C.
pub fn dirac_index_character(hw: &HighestWeight, order: usize) -> Result<DiracIndexCertificate> {
    if order == 0 {
        return Err(Error::OrderTooSmall(order));
    }
    let n = hw.rank();
    let record = character_osp(hw)?;
    let ch = TruncatedSeries::from_character_auto(&record.character, order)?;
    let phi = weil_character(n, WeilParity::Difference, order)?;
    let lhs = ch.checked_mul(&phi)?;
    let shifted = hw.weight() + &rho(Kind::Osp, n)?;
    let rhs = RationalCharacter::new(weyl_numerator(&shifted)?, weyl_denominator(Kind::C, n)?)?.expand(order)?;
    DiracIndexCertificate::new(Some(hw.clone()), order, lhs, rhs)
}

/// ch V · Φ for an arbitrary finite character, aligned at the character's
/// maximal exponent.
pub fn index_series(ch: &FormalCharacter, offset: &Weight, order: usize) -> Result<TruncatedSeries> {
    let n = ch.rank();
    let base = TruncatedSeries::from_character(ch, offset.clone(), order)?;
    base.checked_mul(&weil_character(n, WeilParity::Difference, order)?)
}
