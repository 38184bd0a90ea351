//! α, Casimir elements, Kostant's constant, the Dirac operator and the
//! Harish-Chandra image at rank one.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::pbw::{odd_to_weyl, PbwOrder, TensorAlgebra, TensorElement};
use super::structure::{table_matrix, GeneratorKind, LinComb, Parity, SuperAlgebraStructure};
use super::weyl::{WeylMonomial, WeylPoly};
use crate::certificate::IdentityCertificate;
use crate::error::{Error, Result};
use crate::linalg::{q, q_frac, QMatrix, Q};

/// Largest rank for the D² and Kostant checks.
pub const MAX_DIRAC_RANK: usize = 2;

fn sym_monomial(n: usize, kind: GeneratorKind) -> WeylPoly {
    match kind {
        GeneratorKind::Cartan(i) => WeylPoly::sym_del_x(n, i, i).scale(&q(-1)),
        GeneratorKind::Mixed(i, j) => WeylPoly::sym_del_x(n, i, j),
        GeneratorKind::Raising(i, j) => WeylPoly::del(n, i).mul(&WeylPoly::del(n, j)),
        GeneratorKind::Lowering(i, j) => WeylPoly::x(n, i).mul(&WeylPoly::x(n, j)),
        _ => unreachable!(),
    }
}

/// α(X) ∈ W(g₁) for X ∈ g₀: ν(X) is split into the blocks of sp(2n) and
/// mapped back through the table
/// σ(∂_i x_j) ↔ −E_ij + E_{n+j,n+i}, ∂_i∂_j ↔ E_{i,n+j} + E_{j,n+i},
/// x_i x_j ↔ −E_{n+i,j} − E_{n+j,i}.
pub fn alpha(s: &SuperAlgebraStructure, x: &LinComb) -> Result<WeylPoly> {
    let n = s.rank();
    let nu = s.nu(x).map_err(|_| Error::WrongParity {
        expected: "even",
        got: "odd",
    })?;
    let mut w = WeylPoly::zero(n);
    let mut rebuilt = QMatrix::zeros(2 * n, 2 * n);
    let mut put = |kind: GeneratorKind, c: Q| {
        if c.is_zero() {
            return;
        }
        let p = match kind {
            GeneratorKind::Mixed(i, j) if i == j => WeylPoly::sym_del_x(n, i, i),
            k => sym_monomial(n, k),
        };
        let m = match kind {
            GeneratorKind::Mixed(i, j) if i == j => table_matrix(n, GeneratorKind::Cartan(i)).scale(&q(-1)),
            k => table_matrix(n, k),
        };
        w = w.add(&p.scale(&c));
        rebuilt = rebuilt.add(&m.scale(&c));
    };
    for i in 0..n {
        for j in 0..n {
            put(GeneratorKind::Mixed(i, j), -nu[(i, j)].clone());
        }
        for j in i..n {
            let scale = if i == j { q_frac(1, 2) } else { Q::one() };
            put(GeneratorKind::Raising(i, j), &nu[(i, n + j)] * &scale);
            put(GeneratorKind::Lowering(i, j), -&nu[(n + i, j)] * &scale);
        }
    }
    if rebuilt != nu {
        return Err(Error::Structural("ν(X) is not in sp(2n)".into()));
    }
    Ok(w)
}

/// Matrix of w ↦ [w, ·] on the span of ∂_1..∂_n, x_1..x_n, or None if the
/// commutator leaves that span.
pub fn weyl_action_matrix(w: &WeylPoly) -> Option<QMatrix> {
    let n = w.rank();
    let mut m = QMatrix::zeros(2 * n, 2 * n);
    for l in 0..2 * n {
        let v = if l < n { WeylPoly::del(n, l) } else { WeylPoly::x(n, l - n) };
        for (mono, c) in w.commutator(&v).terms() {
            let k = if mono.degree() != 1 {
                return None;
            } else if let Some(i) = mono.d.iter().position(|&e| e == 1) {
                i
            } else {
                n + mono.x.iter().position(|&e| e == 1).unwrap()
            };
            m[(k, l)] = c.clone();
        }
    }
    Some(m)
}

fn unit(g: usize) -> LinComb {
    LinComb::from([(g, Q::one())])
}

/// Σ_j f_j e_j over a homogeneous basis e_j with B-dual basis f_j.
pub fn casimir_with_basis(alg: &TensorAlgebra, basis: &[LinComb]) -> Result<TensorElement> {
    let s = alg.structure();
    let dual = s.dual_basis(basis)?;
    let n = s.rank();
    let mut omega = TensorElement::zero(n);
    for (e, f) in basis.iter().zip(&dual) {
        let term = alg.mul(&TensorElement::from_lincomb(n, f), &TensorElement::from_lincomb(n, e));
        omega = omega.add(&term);
    }
    Ok(omega)
}

/// Ω_g in U(g), checked to commute with every generator.
pub fn casimir(alg: &TensorAlgebra) -> Result<TensorElement> {
    let s = alg.structure();
    let basis: Vec<LinComb> = (0..s.dim()).map(unit).collect();
    let omega = casimir_with_basis(alg, &basis)?;
    check_central(alg, &omega)?;
    Ok(omega)
}

/// Ω_{g₀} = Σ over the even basis and its dual.
pub fn casimir_even(alg: &TensorAlgebra) -> Result<TensorElement> {
    let s = alg.structure();
    let basis: Vec<LinComb> = s.even_indices().map(unit).collect();
    casimir_with_basis(alg, &basis)
}

pub fn check_central(alg: &TensorAlgebra, z: &TensorElement) -> Result<()> {
    let s = alg.structure();
    for g in 0..s.dim() {
        let c = alg.commutator(z, &alg.gen(g));
        if !c.is_zero() {
            return Err(Error::NotCentral(format!(
                "[z, {}] = {}",
                s.generator(g).name,
                c.display(s)
            )));
        }
    }
    Ok(())
}

/// X_Δ = X ⊗ 1 + 1 ⊗ α(X).
pub fn diagonal(alg: &TensorAlgebra, x: &LinComb) -> Result<TensorElement> {
    let n = alg.rank();
    Ok(TensorElement::from_lincomb(n, x).add(&TensorElement::from_weyl(&alpha(alg.structure(), x)?)))
}

/// Ω_{g₀Δ} = Σ_k (f_k)_Δ (e_k)_Δ.
pub fn casimir_even_diagonal(alg: &TensorAlgebra) -> Result<TensorElement> {
    let s = alg.structure();
    let n = s.rank();
    let mut out = TensorElement::zero(n);
    for g in s.even_indices().collect::<Vec<_>>() {
        let f = diagonal(alg, s.dual_of(g))?;
        let e = diagonal(alg, &unit(g))?;
        out = out.add(&alg.mul(&f, &e));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostantConstant {
    pub n: usize,
    /// Σ_k α(f_k) α(e_k), a scalar in W(g₁).
    pub value: String,
    /// Ordinary trace of Ω_{g₀} acting on g₁.
    pub trace_on_odd: String,
    /// ⅛ of the supertrace of Ω_{g₀} on g₁, g₁ being the odd part.
    pub eighth_supertrace: String,
    pub normalization: String,
    pub agree: bool,
    #[serde(skip)]
    pub exact: Q,
}

/// Kostant's constant C = α(Ω_{g₀}), cross-checked against the trace of
/// Ω_{g₀} on g₁.
pub fn kostant_constant(s: &SuperAlgebraStructure) -> Result<KostantConstant> {
    let n = s.rank();
    let mut sum = WeylPoly::zero(n);
    let mut nu_sum = QMatrix::zeros(2 * n, 2 * n);
    for g in s.even_indices() {
        let f = s.dual_of(g);
        sum = sum.add(&alpha(s, f)?.mul(&alpha(s, &unit(g))?));
        nu_sum = nu_sum.add(&s.nu(f)?.mul(&s.nu(&unit(g))?));
    }
    let value = sum
        .as_scalar()
        .ok_or_else(|| Error::Structural(format!("α(Ω_g0) is not a scalar: {sum}")))?;
    let trace = nu_sum.trace();
    // g₁ is odd, so its supertrace is minus the ordinary trace
    let eighth = -&trace * q_frac(1, 8);
    Ok(KostantConstant {
        n,
        value: value.to_string(),
        trace_on_odd: trace.to_string(),
        eighth_supertrace: eighth.to_string(),
        normalization: "B(X,Y) = -1/4 str(XY), B(d_i,x_j) = 1/2 delta_ij".into(),
        agree: value == eighth,
        exact: value,
    })
}

/// D = Σ_j e_j ⊗ f_j over the odd basis, f_j the B-dual viewed in W(g₁).
pub fn dirac_operator(alg: &TensorAlgebra) -> Result<TensorElement> {
    let s = alg.structure();
    let basis: Vec<LinComb> = s.odd_indices().map(unit).collect();
    dirac_operator_with_basis(alg, &basis)
}

pub fn dirac_operator_with_basis(alg: &TensorAlgebra, odd_basis: &[LinComb]) -> Result<TensorElement> {
    let s = alg.structure();
    if odd_basis.iter().flat_map(|b| b.keys()).any(|&g| s.parity(g) != Parity::Odd) {
        return Err(Error::WrongParity {
            expected: "odd",
            got: "even",
        });
    }
    let dual = s.dual_basis(odd_basis)?;
    let n = s.rank();
    let mut d = TensorElement::zero(n);
    for (e, f) in odd_basis.iter().zip(&dual) {
        let term = alg.mul(
            &TensorElement::from_lincomb(n, e),
            &TensorElement::from_weyl(&odd_to_weyl(s, f)),
        );
        d = d.add(&term);
    }
    Ok(d)
}

#[derive(Debug, Clone)]
pub struct DiracSquare {
    pub certificate: IdentityCertificate,
    pub invariance: IdentityCertificate,
    pub kostant: Q,
    pub residual: TensorElement,
}

/// D² + Ω_g ⊗ 1 − Ω_{g₀Δ} + C = 0, and [X_Δ, D] = 0 for X ∈ g₀.
pub fn verify_dirac_square_with(alg: &TensorAlgebra) -> Result<DiracSquare> {
    let s = alg.structure();
    let n = s.rank();
    if n > MAX_DIRAC_RANK {
        return Err(Error::RankLimit {
            rank: n,
            limit: MAX_DIRAC_RANK,
        });
    }
    let d = dirac_operator(alg)?;
    let omega = casimir(alg)?;
    let omega_diag = casimir_even_diagonal(alg)?;
    let c = kostant_constant(s)?.exact;
    let residual = alg
        .mul(&d, &d)
        .add(&omega)
        .sub(&omega_diag)
        .add(&TensorElement::scalar(n, c.clone()));
    let mut terms: Vec<String> = residual.to_json(s).iter().map(|t| format!("{} {:?} [{}]", t.coef, t.u_word, t.w_word)).collect();
    terms.truncate(8);
    let certificate = IdentityCertificate::from_residual("dirac-square", n, terms);

    let mut inv_terms = Vec::new();
    for g in s.even_indices().collect::<Vec<_>>() {
        let c = alg.commutator(&diagonal(alg, &unit(g))?, &d);
        if !c.is_zero() {
            inv_terms.push(format!("[{}_diag, D] = {}", s.generator(g).name, c.display(s)));
        }
    }
    let invariance = IdentityCertificate::from_residual("dirac-g0-invariance", n, inv_terms);
    Ok(DiracSquare {
        certificate,
        invariance,
        kostant: c,
        residual,
    })
}

pub fn verify_dirac_square(n: usize) -> Result<bool> {
    let s = SuperAlgebraStructure::build(n)?;
    let alg = TensorAlgebra::new(&s);
    let out = verify_dirac_square_with(&alg)?;
    Ok(out.certificate.pass && out.invariance.pass)
}

/// Polynomial in one variable with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// λ ↦ P(λ + a).
    pub fn shift(&self, a: &Q) -> Polynomial {
        // Horner with polynomial accumulator
        let mut acc: Vec<Q> = Vec::new();
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Q::zero(); acc.len() + 1];
            for (k, v) in acc.iter().enumerate() {
                next[k + 1] += v;
                next[k] += v * a;
            }
            next[0] += c;
            acc = next;
        }
        Polynomial::new(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .rev()
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*l"),
                _ => format!("{c}*l^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// γ(z) for central z ∈ U(g) at rank one: write z = u_z + Σ u⁻u⁰u⁺, keep
/// u_z ∈ U(h) as a polynomial in λ = λ(H₁), and shift by ρ = ½.
pub fn hc_image(s: &SuperAlgebraStructure, z: &TensorElement) -> Result<Polynomial> {
    if s.rank() != 1 {
        return Err(Error::RankLimit { rank: s.rank(), limit: 1 });
    }
    let alg = TensorAlgebra::new(s);
    if z.terms().keys().any(|(_, w)| w.degree() != 0) {
        return Err(Error::Structural("hc_image takes elements of U(g)".into()));
    }
    check_central(&alg, &alg.normal_form(z))?;
    let tri = TensorAlgebra::with_order(s, PbwOrder::triangular(s), false);
    let h = s.cartan(0) as u16;
    let mut coeffs: Vec<Q> = Vec::new();
    for ((u, _), c) in tri.normal_form(z).terms() {
        if u.iter().all(|&g| g == h) {
            if coeffs.len() <= u.len() {
                coeffs.resize(u.len() + 1, Q::zero());
            }
            coeffs[u.len()] += c;
        }
    }
    Ok(Polynomial::new(coeffs).shift(&q_frac(-1, 2)))
}

/// Weyl-algebra monomial helper for tests and callers.
pub fn weyl_monomial(d: &[u32], x: &[u32]) -> WeylMonomial {
    WeylMonomial {
        d: d.to_vec(),
        x: x.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_of_cartan_rank_one() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let a = alpha(&s, &unit(s.cartan(0))).unwrap();
        // −σ(∂x) = −∂x + ½
        let mut expected = WeylPoly::monomial(weyl_monomial(&[1], &[1]), q(-1));
        expected.add_term(weyl_monomial(&[0], &[0]), q_frac(1, 2));
        assert_eq!(a, expected);
    }

    #[test]
    fn alpha_of_raising_is_del_squared() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let a = alpha(&s, &unit(s.find("P11").unwrap())).unwrap();
        assert_eq!(a, WeylPoly::monomial(weyl_monomial(&[2], &[0]), q(1)));
    }

    #[test]
    fn alpha_rejects_odd() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        assert!(alpha(&s, &unit(s.del(0))).is_err());
    }

    #[test]
    fn kostant_rank_one() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let k = kostant_constant(&s).unwrap();
        assert_eq!(k.exact, q_frac(-3, 2));
        assert!(k.agree);
    }

    #[test]
    fn polynomial_shift() {
        let p = Polynomial::new(vec![q(0), q(2), q(2)]);
        assert_eq!(p.shift(&q_frac(-1, 2)), Polynomial::new(vec![q_frac(-1, 2), q(0), q(2)]));
    }
}
