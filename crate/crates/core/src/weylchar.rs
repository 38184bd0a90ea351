//! Irreducible characters of so(2n+1) and of osp(1|2n) restricted to sp(2n),
//! with a Freudenthal multiplicity oracle and the Weyl dimension formula.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::charring::{odd_denominator, weyl_denominator, weyl_numerator, FormalCharacter, TermJson};
use crate::error::{Error, Result};
use crate::rootdata::{self, fundamental_weights, positive_roots, rho, validate_highest_weight, Kind, Weight};

/// Λ = Σ p_i ω_i with p_i ≥ 0 and p_n even.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    lambda: Weight,
    p: Vec<i64>,
}

impl HighestWeight {
    pub fn new(lambda: Weight) -> Result<Self> {
        let p = validate_highest_weight(&lambda, lambda.rank())?;
        Ok(HighestWeight { lambda, p })
    }

    /// From the coefficients on the fundamental weights.
    pub fn from_coefficients(p: &[i64]) -> Result<Self> {
        let n = p.len();
        let om = fundamental_weights(n)?;
        if p.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(format!("coefficients {p:?} must be nonnegative")));
        }
        let lambda = p.iter().zip(&om).fold(Weight::zero(n), |acc, (&c, w)| &acc + &w.scale(c));
        Self::new(lambda)
    }

    pub fn zero(n: usize) -> Self {
        HighestWeight {
            lambda: Weight::zero(n),
            p: vec![0; n],
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.lambda
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.p
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }
}

/// Every Λ with 0 ≤ p_i ≤ `max_p` and p_n even.
pub fn highest_weight_grid(n: usize, max_p: i64) -> Vec<HighestWeight> {
    let mut out = Vec::new();
    let mut p = vec![0i64; n];
    loop {
        if p[n - 1] % 2 == 0 {
            out.push(HighestWeight::from_coefficients(&p).expect("grid weight is valid"));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            p[i] += 1;
            if p[i] <= max_p {
                break;
            }
            p[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCharacterRecord {
    pub kind: Kind,
    pub highest_weight: HighestWeight,
    pub character: FormalCharacter,
    pub dimension: BigInt,
    pub infinitesimal_character: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeightJson {
    #[serde(rename = "2lambda")]
    pub lambda2: Vec<i64>,
    pub p: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecordJson {
    pub kind: Kind,
    pub n: usize,
    pub highest_weight: HighestWeightJson,
    pub dimension: String,
    pub inf_char: Vec<i64>,
    pub terms: Vec<TermJson>,
}

impl IrreducibleCharacterRecord {
    pub fn to_json(&self) -> CharacterRecordJson {
        CharacterRecordJson {
            kind: self.kind,
            n: self.highest_weight.rank(),
            highest_weight: HighestWeightJson {
                lambda2: self.highest_weight.weight().doubled().to_vec(),
                p: self.highest_weight.coefficients().to_vec(),
            },
            dimension: self.dimension.to_string(),
            inf_char: self.infinitesimal_character.doubled().to_vec(),
            terms: self.character.to_json_terms(),
        }
    }

    pub fn from_json(json: &CharacterRecordJson) -> Result<Self> {
        let hw = HighestWeight::new(Weight::from_doubled(json.highest_weight.lambda2.clone()))?;
        if hw.coefficients() != json.highest_weight.p.as_slice() {
            return Err(Error::Parse("highest weight coefficients do not match".into()));
        }
        let dimension = json
            .dimension
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension '{}'", json.dimension)))?;
        Ok(IrreducibleCharacterRecord {
            kind: json.kind,
            character: FormalCharacter::from_json_terms(json.n, &json.terms)?,
            highest_weight: hw,
            dimension,
            infinitesimal_character: Weight::from_doubled(json.inf_char.clone()),
        })
    }
}

type Memo = Mutex<HashMap<(Kind, Weight), Arc<IrreducibleCharacterRecord>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(
    kind: Kind,
    hw: &HighestWeight,
    compute: impl FnOnce() -> Result<IrreducibleCharacterRecord>,
) -> Result<Arc<IrreducibleCharacterRecord>> {
    let key = (kind, hw.weight().clone());
    if let Some(hit) = memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    // Computed outside the lock; concurrent duplicates produce identical values.
    let rec = Arc::new(compute()?);
    memo().lock().unwrap().insert(key, rec.clone());
    Ok(rec)
}

fn record(kind: Kind, hw: &HighestWeight, character: FormalCharacter) -> Result<IrreducibleCharacterRecord> {
    Ok(IrreducibleCharacterRecord {
        kind,
        highest_weight: hw.clone(),
        dimension: character.coefficient_sum(),
        infinitesimal_character: infinitesimal_character(hw, kind)?,
        character,
    })
}

/// so(2n+1) character by the Weyl character formula N_{Λ+ρ}/D_B.
pub fn character_b(hw: &HighestWeight) -> Result<Arc<IrreducibleCharacterRecord>> {
    memoized(Kind::B, hw, || {
        let n = hw.rank();
        let shifted = hw.weight() + &rho(Kind::B, n)?;
        let ch = weyl_numerator(&shifted)?.exact_div(&weyl_denominator(Kind::B, n)?)?;
        record(Kind::B, hw, ch)
    })
}

/// osp(1|2n) character restricted to sp(2n): (N_{Λ+ρ}·D₁)/D_C.
pub fn character_osp(hw: &HighestWeight) -> Result<Arc<IrreducibleCharacterRecord>> {
    memoized(Kind::Osp, hw, || {
        let n = hw.rank();
        let shifted = hw.weight() + &rho(Kind::Osp, n)?;
        let num = &weyl_numerator(&shifted)? * &odd_denominator(n)?;
        let ch = num.exact_div(&weyl_denominator(Kind::C, n)?)?;
        record(Kind::Osp, hw, ch)
    })
}

/// Dominant representative for W(B_n): sorted absolute values.
fn dominant_of(mu: &Weight) -> Weight {
    let mut d: Vec<i64> = mu.doubled().iter().map(|x| x.abs()).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    Weight::from_doubled(d)
}

/// Dominant integral weights below Λ in the dominance order of B_n, lowest
/// height last.
fn dominant_weights_below(lambda: &Weight) -> Vec<(usize, Weight)> {
    let n = lambda.rank();
    let top: Vec<i64> = lambda.doubled().iter().map(|d| d / 2).collect();
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    fn rec(i: usize, prev: i64, current: &mut Vec<i64>, top: &[i64], out: &mut Vec<(usize, Weight)>) {
        let n = top.len();
        if i == n {
            let mut partial = 0i64;
            let mut height = 0i64;
            for j in 0..n {
                partial += top[j] - current[j];
                if partial < 0 {
                    return;
                }
                height += partial;
            }
            out.push((height as usize, Weight::from_integers(current)));
            return;
        }
        for v in (0..=prev).rev() {
            current[i] = v;
            rec(i + 1, v, current, top, out);
        }
    }
    rec(0, top[0], &mut current, &top, &mut out);
    out.sort();
    out
}

/// Weight multiplicities of the so(2n+1) module with highest weight Λ by
/// Freudenthal's recursion, using the coordinate inner product.
pub fn freudenthal_multiplicities(hw: &HighestWeight) -> Result<BTreeMap<Weight, BigInt>> {
    let n = hw.rank();
    let lambda = hw.weight();
    let rho_b = rho(Kind::B, n)?;
    let roots = positive_roots(Kind::B, n)?.even_positive_roots;
    let lr = lambda + &rho_b;
    let lr_norm = lr.inner4(&lr);
    let lambda_norm = lambda.inner4(lambda);

    let mut dominant: HashMap<Weight, BigInt> = HashMap::new();
    for (_, mu) in dominant_weights_below(lambda) {
        if &mu == lambda {
            dominant.insert(mu, BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for alpha in &roots {
            let mut nu = &mu + alpha;
            while nu.inner4(&nu) <= lambda_norm {
                if let Some(m) = dominant.get(&dominant_of(&nu)) {
                    acc += m * BigInt::from(nu.inner4(alpha));
                }
                nu = &nu + alpha;
            }
        }
        let mr = &mu + &rho_b;
        let denom = lr_norm - mr.inner4(&mr);
        if denom <= 0 {
            return Err(Error::Structural(format!("Freudenthal denominator {denom} at ({mu})")));
        }
        let num: BigInt = acc * 2;
        let denom = BigInt::from(denom);
        if !(&num % &denom).is_zero() {
            return Err(Error::Structural(format!("Freudenthal recursion not integral at ({mu})")));
        }
        let m = num / denom;
        if !m.is_zero() {
            dominant.insert(mu, m);
        }
    }

    let mut out = BTreeMap::new();
    for (mu, m) in dominant {
        let orbit: BTreeSet<Weight> = rootdata::weyl_iter(n)?.map(|(w, _)| w.act(&mu)).collect();
        for nu in orbit {
            out.insert(nu, m.clone());
        }
    }
    Ok(out)
}

/// Π_{α>0} ⟨Λ+ρ, α⟩ / ⟨ρ, α⟩. For `Kind::Osp` the product runs over the
/// roots e_i ± e_j and e_i, which gives the total dimension of the graded
/// osp(1|2n) module.
pub fn weyl_dimension(hw: &HighestWeight, kind: Kind) -> Result<BigInt> {
    let n = hw.rank();
    let (roots, rho_k) = match kind {
        Kind::C => (positive_roots(Kind::C, n)?.even_positive_roots, rho(Kind::C, n)?),
        Kind::B | Kind::Osp => (positive_roots(Kind::B, n)?.even_positive_roots, rho(Kind::B, n)?),
    };
    let shifted = hw.weight() + &rho_k;
    let mut prod = BigRational::one();
    for a in &roots {
        prod *= BigRational::new(BigInt::from(shifted.inner4(a)), BigInt::from(rho_k.inner4(a)));
    }
    if !prod.is_integer() {
        return Err(Error::Structural(format!("non-integral dimension {prod}")));
    }
    Ok(prod.to_integer())
}

/// Λ + ρ for the given kind.
pub fn infinitesimal_character(hw: &HighestWeight, kind: Kind) -> Result<Weight> {
    Ok(hw.weight() + &rho(kind, hw.rank())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(s: &str) -> HighestWeight {
        HighestWeight::new(s.parse().unwrap()).unwrap()
    }

    fn mults(ch: &FormalCharacter) -> BTreeMap<Weight, BigInt> {
        ch.terms().clone()
    }

    #[test]
    fn so3_examples() {
        let v = character_b(&hw("1")).unwrap();
        assert_eq!(v.dimension, BigInt::from(3));
        assert_eq!(v.character.len(), 3);
        let five = character_b(&hw("2")).unwrap();
        assert_eq!(five.dimension, BigInt::from(5));
        assert!(five.character.terms().values().all(|c| c.is_one()));
        assert_eq!(character_b(&HighestWeight::zero(2)).unwrap().character, FormalCharacter::one(2));
    }

    #[test]
    fn osp_matches_b() {
        let a = character_osp(&hw("2")).unwrap();
        assert_eq!(a.character, character_b(&hw("2")).unwrap().character);
        assert_eq!(a.dimension, BigInt::from(5));
        let b = character_osp(&hw("1,0")).unwrap();
        assert_eq!(b.character, character_b(&hw("1,0")).unwrap().character);
        assert_eq!(b.dimension, BigInt::from(5));
        assert_eq!(character_osp(&HighestWeight::zero(3)).unwrap().character, FormalCharacter::one(3));
    }

    #[test]
    fn freudenthal_examples() {
        let m = freudenthal_multiplicities(&hw("2")).unwrap();
        assert_eq!(m.get(&Weight::zero(1)), Some(&BigInt::one()));
        assert_eq!(m.len(), 5);
        let triv = freudenthal_multiplicities(&HighestWeight::zero(2)).unwrap();
        assert_eq!(triv, BTreeMap::from([(Weight::zero(2), BigInt::one())]));
        for h in highest_weight_grid(2, 2) {
            let m = freudenthal_multiplicities(&h).unwrap();
            assert_eq!(m.get(h.weight()), Some(&BigInt::one()));
        }
    }

    #[test]
    fn adjoint_of_so5_has_zero_weight_multiplicity_two() {
        // Λ = e1 + e2 is the adjoint representation of so(5): dim 10, rank 2.
        let h = hw("1,1");
        let m = freudenthal_multiplicities(&h).unwrap();
        assert_eq!(m.get(&Weight::zero(2)), Some(&BigInt::from(2)));
        assert_eq!(mults(&character_b(&h).unwrap().character), m);
        assert_eq!(weyl_dimension(&h, Kind::B).unwrap(), BigInt::from(10));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(weyl_dimension(&HighestWeight::zero(3), Kind::B).unwrap(), BigInt::one());
        assert_eq!(weyl_dimension(&hw("2"), Kind::B).unwrap(), BigInt::from(5));
        assert_eq!(weyl_dimension(&hw("1,0"), Kind::B).unwrap(), BigInt::from(5));
        // sp(4) standard representation
        assert_eq!(weyl_dimension(&hw("1,0"), Kind::C).unwrap(), BigInt::from(4));
    }

    #[test]
    fn infinitesimal_character_examples() {
        let h = hw("1,0");
        let expected: Weight = "5/2,1/2".parse().unwrap();
        assert_eq!(infinitesimal_character(&h, Kind::Osp).unwrap(), expected);
        assert_eq!(infinitesimal_character(&h, Kind::B).unwrap(), expected);
        assert_eq!(
            infinitesimal_character(&HighestWeight::zero(2), Kind::Osp).unwrap(),
            rho(Kind::Osp, 2).unwrap()
        );
    }

    #[test]
    fn records_are_weyl_invariant_with_unit_top() {
        for h in highest_weight_grid(2, 2) {
            let r = character_b(&h).unwrap();
            assert!(r.character.is_weyl_invariant());
            let (top, c) = r.character.leading_term().unwrap();
            assert_eq!(top, h.weight());
            assert!(c.is_one());
        }
    }

    #[test]
    fn grid_shape() {
        assert_eq!(highest_weight_grid(3, 3).len(), 32);
        assert_eq!(highest_weight_grid(1, 3).len(), 2);
    }

    #[test]
    fn record_json_roundtrip() {
        let r = character_osp(&hw("1,0")).unwrap();
        let json = serde_json::to_string(&r.to_json()).unwrap();
        let back: CharacterRecordJson = serde_json::from_str(&json).unwrap();
        assert_eq!(IrreducibleCharacterRecord::from_json(&back).unwrap(), *r);
    }
}
