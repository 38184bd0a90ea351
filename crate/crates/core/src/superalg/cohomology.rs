//! Dirac cohomology of explicit osp(1|2)-modules, weight space by weight
//! space.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::module::ExplicitModule;
use super::ops::{casimir, casimir_even_diagonal, dirac_operator, hc_image, kostant_constant};
use super::pbw::{TensorAlgebra, TensorElement};
use super::structure::{Parity, SuperAlgebraStructure};
use super::weyl::act_monomial;
use crate::charring::{SeriesJson, TruncatedSeries};
use crate::error::{Error, Result};
use crate::linalg::{span_rank, QMatrix, Q};
use crate::oscillator::index_series;
use crate::rootdata::Weight;

/// Basis vector v_k ⊗ x^a of V ⊗ M.
type Slot = (usize, u32);

#[derive(Debug, Clone)]
pub struct DiracCohomologyResult {
    pub lambda: Weight,
    pub order: usize,
    /// Weights whose weight space in V ⊗ M is complete below the cutoff.
    pub reliable: Vec<Weight>,
    pub hplus: BTreeMap<Weight, usize>,
    pub hminus: BTreeMap<Weight, usize>,
    pub euler: TruncatedSeries,
    /// ch V · (ch M⁺ − ch M⁻) on the same range.
    pub expected_euler: TruncatedSeries,
    pub euler_ok: bool,
    /// χ_{Λ+ρ}(Ω_g) + C.
    pub kernel_scalar: Q,
    /// Ω_{g₀Δ} acts on Ker D by `kernel_scalar` on every reliable weight.
    pub kernel_scalar_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiracCohomologyJson {
    pub lambda2: Vec<i64>,
    pub order: usize,
    pub hplus: Vec<(Vec<i64>, usize)>,
    pub hminus: Vec<(Vec<i64>, usize)>,
    pub euler: SeriesJson,
    pub euler_ok: bool,
    pub kernel_scalar: String,
    pub kernel_scalar_ok: bool,
    pub pass: bool,
}

impl DiracCohomologyResult {
    pub fn pass(&self) -> bool {
        self.euler_ok && self.kernel_scalar_ok
    }

    pub fn to_json(&self) -> DiracCohomologyJson {
        let list = |m: &BTreeMap<Weight, usize>| m.iter().rev().map(|(w, k)| (w.doubled().to_vec(), *k)).collect();
        DiracCohomologyJson {
            lambda2: self.lambda.doubled().to_vec(),
            order: self.order,
            hplus: list(&self.hplus),
            hminus: list(&self.hminus),
            euler: self.euler.to_json(),
            euler_ok: self.euler_ok,
            kernel_scalar: self.kernel_scalar.to_string(),
            kernel_scalar_ok: self.kernel_scalar_ok,
            pass: self.pass(),
        }
    }
}

/// Applies u ⊗ w to v_k ⊗ x^a, with the sign (−1)^{|w||v_k|} when `graded`.
fn apply(v: &ExplicitModule, t: &TensorElement, vec: &BTreeMap<Slot, Q>, graded: bool) -> BTreeMap<Slot, Q> {
    let d = v.dim();
    let mut out: BTreeMap<Slot, Q> = BTreeMap::new();
    for ((u, w), c) in t.terms() {
        let mut umat = QMatrix::identity(d);
        for &g in u {
            umat = umat.mul(v.action(g as usize));
        }
        for (&(k, a), coef) in vec {
            let Some((exp, kw)) = act_monomial(w, &[a]) else {
                continue;
            };
            let mut scalar = c * coef * Q::from_integer(kw);
            if graded && w.is_odd() && v.parity(k) == Parity::Odd {
                scalar = -scalar;
            }
            for j in 0..d {
                let entry = &umat[(j, k)];
                if entry.is_zero() {
                    continue;
                }
                let slot = out.entry((j, exp[0])).or_insert_with(Q::zero);
                *slot += entry * &scalar;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn to_dense(basis: &[Slot], vec: &BTreeMap<Slot, Q>) -> Result<Vec<Q>> {
    let mut dense = vec![Q::zero(); basis.len()];
    for (slot, c) in vec {
        let i = basis
            .iter()
            .position(|b| b == slot)
            .ok_or_else(|| Error::Structural("operator does not preserve the weight space".into()))?;
        dense[i] = c.clone();
    }
    Ok(dense)
}

fn from_dense(basis: &[Slot], v: &[Q]) -> BTreeMap<Slot, Q> {
    basis
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| (*s, c.clone()))
        .collect()
}

fn restricted(full: &QMatrix, rows: &[usize], cols: &[usize]) -> QMatrix {
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            m[(i, j)] = full[(r, c)].clone();
        }
    }
    m
}

/// dim Ker A − dim(Ker A ∩ Im B) for A: U → U', B: U'' → U.
fn cohomology_dim(a: &QMatrix, b: &QMatrix, dim_u: usize) -> usize {
    let ker = if a.cols() == 0 { Vec::new() } else { a.kernel() };
    let image: Vec<Vec<Q>> = (0..b.cols()).map(|j| b.column(j)).collect();
    let k = ker.len();
    let i = span_rank(&image, dim_u);
    let sum: Vec<Vec<Q>> = ker.iter().cloned().chain(image).collect();
    let both = k + i - span_rank(&sum, dim_u);
    k - both
}

/// H_D(V) = Ker D / (Ker D ∩ Im D) on V ⊗ M for each weight whose weight
/// space lies below the q-degree cutoff `order`, counted relative to the
/// offset Λ.
pub fn dirac_cohomology(v: &ExplicitModule, order: usize) -> Result<DiracCohomologyResult> {
    if order == 0 {
        return Err(Error::OrderTooSmall(order));
    }
    let s = SuperAlgebraStructure::build(1)?;
    let alg = TensorAlgebra::new(&s);
    let d_op = dirac_operator(&alg)?;
    let omega = casimir(&alg)?;
    let omega_diag = casimir_even_diagonal(&alg)?;
    let c = kostant_constant(&s)?.exact;
    let gamma = hc_image(&s, &omega)?;
    let m2 = v.lambda().doubled()[0];
    let lambda_plus_rho = Q::new(BigInt::from(m2 + 1), BigInt::from(2));
    let kernel_scalar = gamma.eval(&lambda_plus_rho) + &c;

    let mut hplus = BTreeMap::new();
    let mut hminus = BTreeMap::new();
    let mut reliable = Vec::new();
    let mut euler_coeffs = Vec::new();
    let mut kernel_scalar_ok = true;
    // v_k ⊗ x^a sits at q-degree 2k + 2a + 1 below Λ
    for t in (1..=order).step_by(2) {
        let half = (t - 1) / 2;
        let basis: Vec<Slot> = (0..=half.min(v.dim() - 1)).map(|k| (k, (half - k) as u32)).collect();
        let weight = Weight::from_doubled(vec![m2 - t as i64]);
        reliable.push(weight.clone());
        let mut dmat = QMatrix::zeros(basis.len(), basis.len());
        for (j, slot) in basis.iter().enumerate() {
            let img = apply(v, &d_op, &BTreeMap::from([(*slot, Q::from_integer(1.into()))]), alg.graded());
            for (i, val) in to_dense(&basis, &img)?.into_iter().enumerate() {
                dmat[(i, j)] = val;
            }
        }
        let plus: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].1.is_multiple_of(2)).collect();
        let minus: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].1 % 2 == 1).collect();
        let d_plus = restricted(&dmat, &minus, &plus);
        let d_minus = restricted(&dmat, &plus, &minus);
        let hp = cohomology_dim(&d_plus, &d_minus, plus.len());
        let hm = cohomology_dim(&d_minus, &d_plus, minus.len());
        if hp > 0 {
            hplus.insert(weight.clone(), hp);
        }
        if hm > 0 {
            hminus.insert(weight.clone(), hm);
        }
        euler_coeffs.push((vec![t as u32], BigInt::from(hp as i64 - hm as i64)));

        for kv in dmat.kernel() {
            let vec = from_dense(&basis, &kv);
            let image = to_dense(&basis, &apply(v, &omega_diag, &vec, alg.graded()))?;
            let expected: Vec<Q> = kv.iter().map(|x| x * &kernel_scalar).collect();
            if image != expected {
                kernel_scalar_ok = false;
            }
        }
    }
    let offset = v.lambda().clone();
    let euler = TruncatedSeries::from_coeffs(offset.clone(), order, euler_coeffs);
    let expected_euler = index_series(&v.character(), &offset, order)?;
    let euler_ok = euler.truncated_eq(&expected_euler);
    Ok(DiracCohomologyResult {
        lambda: v.lambda().clone(),
        order,
        reliable,
        hplus,
        hminus,
        euler,
        expected_euler,
        euler_ok,
        kernel_scalar,
        kernel_scalar_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::module::build_module;

    #[test]
    fn trivial_module_gives_all_of_m() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let v = build_module(&s, 0).unwrap();
        let r = dirac_cohomology(&v, 8).unwrap();
        assert!(r.euler_ok && r.kernel_scalar_ok);
        assert_eq!(r.hplus.len(), 2);
        assert_eq!(r.hminus.len(), 2);
        let coeffs: Vec<i64> = (1..=7).step_by(2).map(|t| i64::try_from(r.euler.coefficient(&[t])).unwrap()).collect();
        assert_eq!(coeffs, [1, -1, 1, -1]);
    }

    #[test]
    fn zero_order_rejected() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let v = build_module(&s, 1).unwrap();
        assert!(matches!(dirac_cohomology(&v, 0), Err(Error::OrderTooSmall(0))));
    }

    #[test]
    fn small_modules_pass() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        for m in 1..=2 {
            let v = build_module(&s, m).unwrap();
            let r = dirac_cohomology(&v, 12).unwrap();
            assert!(r.euler_ok, "m={m}");
            assert!(r.kernel_scalar_ok, "m={m}");
        }
    }
}
