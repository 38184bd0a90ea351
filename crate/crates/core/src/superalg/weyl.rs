//! The Weyl algebra W(g₁) on ∂_1..∂_n, x_1..x_n with [∂_i, x_j] = δ_ij,
//! kept in the normal form ∂^a x^b, and its action on C[x_1, …, x_n].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{q, Q};

/// ∂^d x^x with all derivatives on the left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylMonomial {
    pub d: Vec<u32>,
    pub x: Vec<u32>,
}

impl WeylMonomial {
    pub fn one(n: usize) -> Self {
        WeylMonomial {
            d: vec![0; n],
            x: vec![0; n],
        }
    }

    pub fn del(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.d[i] = 1;
        m
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.x[i] = 1;
        m
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn degree(&self) -> u32 {
        self.d.iter().sum::<u32>() + self.x.iter().sum::<u32>()
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// Weight under the Cartan: ∂_i carries +e_i, x_i carries −e_i, in
    /// integer units.
    pub fn weight(&self) -> Vec<i64> {
        self.d.iter().zip(&self.x).map(|(&a, &b)| a as i64 - b as i64).collect()
    }
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.d.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("d{}", i + 1)),
                _ => parts.push(format!("d{}^{}", i + 1, e)),
            }
        }
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Product of two normal monomials as a combination of normal monomials.
pub fn monomial_product(a: &WeylMonomial, b: &WeylMonomial) -> Vec<(WeylMonomial, BigInt)> {
    let n = a.rank();
    // x^{b_i} ∂^{c_i} = Σ_k (−1)^k k! C(b_i,k) C(c_i,k) ∂^{c_i−k} x^{b_i−k}, per variable
    let mut partial: Vec<(WeylMonomial, BigInt)> = vec![(WeylMonomial::one(n), BigInt::one())];
    for i in 0..n {
        let bx = a.x[i];
        let cd = b.d[i];
        let mut next = Vec::new();
        for (m, c) in &partial {
            for k in 0..=bx.min(cd) {
                let mut coef = factorial(k) * binomial(bx, k) * binomial(cd, k);
                if k % 2 == 1 {
                    coef = -coef;
                }
                let mut m2 = m.clone();
                m2.d[i] = a.d[i] + cd - k;
                m2.x[i] = bx - k + b.x[i];
                next.push((m2, c * coef));
            }
        }
        partial = next;
    }
    partial
}

/// Element of W(g₁) in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylPoly {
    rank: usize,
    terms: BTreeMap<WeylMonomial, Q>,
}

impl WeylPoly {
    pub fn zero(rank: usize) -> Self {
        WeylPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(rank: usize, c: Q) -> Self {
        Self::monomial(WeylMonomial::one(rank), c)
    }

    pub fn monomial(m: WeylMonomial, c: Q) -> Self {
        let mut p = Self::zero(m.rank());
        p.add_term(m, c);
        p
    }

    pub fn del(rank: usize, i: usize) -> Self {
        Self::monomial(WeylMonomial::del(rank, i), Q::one())
    }

    pub fn x(rank: usize, i: usize) -> Self {
        Self::monomial(WeylMonomial::x(rank, i), Q::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<WeylMonomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: WeylMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The constant, if this is a scalar.
    pub fn as_scalar(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &WeylPoly) -> WeylPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylPoly) -> WeylPoly {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, k: &Q) -> WeylPoly {
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &WeylPoly) -> WeylPoly {
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cc = ca * cb;
                for (m, k) in monomial_product(a, b) {
                    out.add_term(m, &cc * Q::from_integer(k));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &WeylPoly) -> WeylPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Symmetrized product σ(∂_i x_j) = ½(∂_i x_j + x_j ∂_i).
    pub fn sym_del_x(rank: usize, i: usize, j: usize) -> WeylPoly {
        let a = Self::del(rank, i);
        let b = Self::x(rank, j);
        a.mul(&b).add(&b.mul(&a)).scale(&crate::linalg::q_frac(1, 2))
    }

    /// Action on the monomial x^e of C[x]; returns (exponent, coefficient).
    pub fn act_on_monomial(&self, e: &[u32]) -> Vec<(Vec<u32>, Q)> {
        let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (m, c) in &self.terms {
            if let Some((exp, k)) = act_monomial(m, e) {
                let slot = out.entry(exp.clone()).or_insert_with(Q::zero);
                *slot += c * Q::from_integer(k);
                if slot.is_zero() {
                    out.remove(&exp);
                }
            }
        }
        out.into_iter().collect()
    }
}

/// ∂^d x^x applied to the polynomial x^e.
pub fn act_monomial(m: &WeylMonomial, e: &[u32]) -> Option<(Vec<u32>, BigInt)> {
    let mut exp = Vec::with_capacity(e.len());
    let mut coef = BigInt::one();
    for (i, &ei) in e.iter().enumerate() {
        let raised = ei + m.x[i];
        if m.d[i] > raised {
            return None;
        }
        for k in 0..m.d[i] {
            coef *= raised - k;
        }
        exp.push(raised - m.d[i]);
    }
    Some((exp, coef))
}

impl fmt::Display for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    #[test]
    fn canonical_relation() {
        let d = WeylPoly::del(1, 0);
        let x = WeylPoly::x(1, 0);
        assert_eq!(d.commutator(&x), WeylPoly::scalar(1, q(1)));
        // x ∂ = ∂x − 1
        let xd = x.mul(&d);
        let mut expected = WeylPoly::monomial(
            WeylMonomial {
                d: vec![1],
                x: vec![1],
            },
            q(1),
        );
        expected.add_term(WeylMonomial::one(1), q(-1));
        assert_eq!(xd, expected);
    }

    #[test]
    fn different_variables_commute() {
        let d1 = WeylPoly::del(2, 0);
        let x2 = WeylPoly::x(2, 1);
        assert!(d1.commutator(&x2).is_zero());
    }

    #[test]
    fn symmetrized_product() {
        // σ(∂x) = ∂x − ½
        let s = WeylPoly::sym_del_x(1, 0, 0);
        let mut expected = WeylPoly::monomial(
            WeylMonomial {
                d: vec![1],
                x: vec![1],
            },
            q(1),
        );
        expected.add_term(WeylMonomial::one(1), q_frac(-1, 2));
        assert_eq!(s, expected);
    }

    #[test]
    fn associativity_on_powers() {
        let d = WeylPoly::del(1, 0);
        let x = WeylPoly::x(1, 0);
        let a = x.mul(&x).mul(&d);
        let b = d.mul(&d).add(&x);
        let c = x.mul(&d).mul(&d);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn action_on_polynomials() {
        // ∂² x applied to x² = ∂²(x³) = 6x
        let m = WeylMonomial {
            d: vec![2],
            x: vec![1],
        };
        assert_eq!(act_monomial(&m, &[2]), Some((vec![1], BigInt::from(6))));
        assert_eq!(act_monomial(&WeylMonomial::del(1, 0), &[0]), None);
    }
}
