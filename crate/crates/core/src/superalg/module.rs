//! Explicit graded irreducible osp(1|2)-modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::pbw::TensorElement;
use super::structure::{Parity, SuperAlgebraStructure};
use crate::charring::FormalCharacter;
use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::rootdata::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitModule {
    lambda: Weight,
    weight_basis: Vec<Weight>,
    parity: Vec<Parity>,
    action: Vec<QMatrix>,
}

impl ExplicitModule {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.weight_basis.len()
    }

    pub fn weight_basis(&self) -> &[Weight] {
        &self.weight_basis
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.parity[k]
    }

    pub fn action(&self, g: usize) -> &QMatrix {
        &self.action[g]
    }

    pub fn character(&self) -> FormalCharacter {
        FormalCharacter::from_terms(1, self.weight_basis.iter().map(|w| (w.clone(), BigInt::one())))
    }

    /// Matrix of an element of U(g) (Weyl factor must be trivial).
    pub fn matrix_of(&self, z: &TensorElement) -> Result<QMatrix> {
        let d = self.dim();
        let mut out = QMatrix::zeros(d, d);
        for ((u, w), c) in z.terms() {
            if w.degree() != 0 {
                return Err(Error::Structural("element has a Weyl-algebra factor".into()));
            }
            let mut m = QMatrix::identity(d);
            for &g in u {
                m = m.mul(&self.action[g as usize]);
            }
            out = out.add(&m.scale(c));
        }
        Ok(out)
    }

    /// Scalar by which z acts, if it acts by a scalar.
    pub fn scalar_of(&self, z: &TensorElement) -> Result<Option<Q>> {
        let m = self.matrix_of(z)?;
        let c = if self.dim() == 0 { Q::zero() } else { m[(0, 0)].clone() };
        Ok((m == QMatrix::identity(self.dim()).scale(&c)).then_some(c))
    }
}

/// The graded irreducible module of highest weight m·e₁ for osp(1|2): basis
/// v_k = x^k v_0 (k = 0..2m) of weight m − k and parity k mod 2. The
/// entries of ∂ are solved from ∂x + x∂ = [∂, x], the even generators are
/// then obtained from brackets of odd ones, and every relation is checked.
pub fn build_module(s: &SuperAlgebraStructure, m: u32) -> Result<ExplicitModule> {
    if s.rank() != 1 {
        return Err(Error::RankLimit { rank: s.rank(), limit: 1 });
    }
    let dim = 2 * m as usize + 1;
    let h = s.cartan(0);
    let del = s.del(0);
    let x = s.x(0);

    let mut xm = QMatrix::zeros(dim, dim);
    for k in 0..dim - 1 {
        xm[(k + 1, k)] = Q::one();
    }
    let mut hm = QMatrix::zeros(dim, dim);
    for k in 0..dim {
        hm[(k, k)] = q(m as i64 - k as i64);
    }

    // ∂ v_k = c_k v_{k−1}; unknowns c_1..c_{2m}
    let unknown = |k: usize| {
        let mut e = QMatrix::zeros(dim, dim);
        e[(k - 1, k)] = Q::one();
        e
    };
    let bracket = s.bracket(del, x);
    if bracket.keys().any(|&g| g != h) {
        return Err(Error::Structural("[∂, x] is not in the Cartan".into()));
    }
    let target = hm.scale(bracket.get(&h).unwrap_or(&Q::zero()));
    let flat = |a: &QMatrix| -> Vec<Q> {
        let mut v = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                v.push(a[(i, j)].clone());
            }
        }
        v
    };
    let columns: Vec<Vec<Q>> = (1..dim)
        .map(|k| {
            let e = unknown(k);
            flat(&e.mul(&xm).add(&xm.mul(&e)))
        })
        .collect();
    let system = if columns.is_empty() {
        QMatrix::zeros(dim * dim, 0)
    } else {
        QMatrix::from_columns(&columns, dim * dim)
    };
    let mut sol = system
        .solve(&flat(&target))
        .ok_or_else(|| Error::Structural(format!("no module of highest weight {m}: inconsistent system")))?;
    if let Some(free) = system.kernel().first() {
        for (s, f) in sol.iter_mut().zip(free) {
            *s += f;
        }
    }
    let mut dm = QMatrix::zeros(dim, dim);
    for (k, c) in (1..dim).zip(sol) {
        dm = dm.add(&unknown(k).scale(&c));
    }

    let mut action = vec![QMatrix::zeros(dim, dim); s.dim()];
    action[h] = hm;
    action[del] = dm;
    action[x] = xm;
    // Even generators other than H from brackets of odd pairs.
    let odd: Vec<usize> = s.odd_indices().collect();
    let even: Vec<usize> = s.even_indices().collect();
    let mut pairs = Vec::new();
    for (i, &a) in odd.iter().enumerate() {
        for &b in &odd[i..] {
            pairs.push((a, b));
        }
    }
    let span = QMatrix::from_columns(
        &pairs
            .iter()
            .map(|&(a, b)| even.iter().map(|g| s.bracket(a, b).get(g).cloned().unwrap_or_default()).collect())
            .collect::<Vec<_>>(),
        even.len(),
    );
    for (slot, &g) in even.iter().enumerate() {
        if g == h {
            continue;
        }
        let mut rhs = vec![Q::zero(); even.len()];
        rhs[slot] = Q::one();
        let coeffs = span
            .solve(&rhs)
            .ok_or_else(|| Error::Structural(format!("{} not in [g1, g1]", s.generator(g).name)))?;
        let mut mat = QMatrix::zeros(dim, dim);
        for (&(a, b), c) in pairs.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let anti = action[a].mul(&action[b]).add(&action[b].mul(&action[a]));
            mat = mat.add(&anti.scale(&c));
        }
        action[g] = mat;
    }

    let module = ExplicitModule {
        lambda: Weight::from_integers(&[m as i64]),
        weight_basis: (0..dim).map(|k| Weight::from_integers(&[m as i64 - k as i64])).collect(),
        parity: (0..dim).map(|k| if k % 2 == 0 { Parity::Even } else { Parity::Odd }).collect(),
        action,
    };
    verify_module(s, &module)?;
    Ok(module)
}

/// Every bracket relation and the highest weight condition.
pub fn verify_module(s: &SuperAlgebraStructure, v: &ExplicitModule) -> Result<()> {
    let d = v.dim();
    for a in 0..s.dim() {
        for b in 0..s.dim() {
            let sign = q(s.parity(a).sign_with(s.parity(b)));
            let lhs = v.action(a).mul(v.action(b)).sub(&v.action(b).mul(v.action(a)).scale(&sign));
            let mut rhs = QMatrix::zeros(d, d);
            for (g, c) in s.bracket(a, b) {
                rhs = rhs.add(&v.action(*g).scale(c));
            }
            if lhs != rhs {
                return Err(Error::Structural(format!(
                    "relation [{}, {}] fails on the module",
                    s.generator(a).name,
                    s.generator(b).name
                )));
            }
        }
    }
    for g in 0..s.dim() {
        let positive = s.generator(g).weight.doubled().iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
        if positive && !v.action(g).column(0).iter().all(Zero::is_zero) {
            return Err(Error::Structural(format!(
                "{} does not kill the highest weight vector",
                s.generator(g).name
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::ops::casimir;
    use crate::superalg::pbw::TensorAlgebra;

    #[test]
    fn trivial_module() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let v = build_module(&s, 0).unwrap();
        assert_eq!(v.dim(), 1);
        assert!((0..s.dim()).all(|g| v.action(g).is_zero()));
    }

    #[test]
    fn small_modules() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let v = build_module(&s, 1).unwrap();
        assert_eq!(v.dim(), 3);
        let weights: Vec<String> = v.weight_basis().iter().map(|w| w.to_string()).collect();
        assert_eq!(weights, ["1", "0", "-1"]);
        assert_eq!(build_module(&s, 2).unwrap().dim(), 5);
    }

    #[test]
    fn casimir_acts_by_scalar() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let alg = TensorAlgebra::new(&s);
        let omega = casimir(&alg).unwrap();
        for m in 0..4 {
            let v = build_module(&s, m).unwrap();
            let c = v.scalar_of(&omega).unwrap().expect("scalar");
            let m = m as i64;
            assert_eq!(c, q(2 * m * m + 2 * m));
        }
    }
}
