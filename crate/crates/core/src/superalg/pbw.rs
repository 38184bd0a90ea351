//! Normal forms in U(g) ⊗ W(g₁).
//!
//! U(g) words are straightened with ab = (−1)^{|a||b|} ba + [a, b] and
//! aa = ½[a, a] for odd a, so a normal word is sorted by the chosen PBW order
//! and contains each odd generator at most once. The Weyl factor is kept as
//! ∂^a x^b. The two factors multiply as an ordinary tensor product of
//! associative algebras; the Koszul sign (−1)^{|w₁||u₂|} is available as an
//! option. With Koszul signs D² comes out with the opposite overall sign.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::structure::{LinComb, Parity, SuperAlgebraStructure};
use super::weyl::{monomial_product, WeylMonomial, WeylPoly};
use crate::linalg::{q, q_frac, Q};

pub type UWord = Vec<u16>;

/// Total order on generators used for PBW words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwOrder {
    rank_of: Vec<usize>,
}

impl PbwOrder {
    /// Generators in list order: even first, then odd.
    pub fn standard(s: &SuperAlgebraStructure) -> Self {
        PbwOrder {
            rank_of: (0..s.dim()).collect(),
        }
    }

    /// Negative root vectors, then the Cartan, then positive root vectors.
    /// A central element then reads u_z + Σ u⁻u⁰u⁺, and u_z is the part that
    /// survives on a highest weight vector.
    pub fn triangular(s: &SuperAlgebraStructure) -> Self {
        let class = |i: usize| -> usize {
            let w = s.generator(i).weight.doubled();
            match w.iter().find(|&&c| c != 0) {
                None => 1,
                Some(&c) if c < 0 => 0,
                Some(_) => 2,
            }
        };
        let mut idx: Vec<usize> = (0..s.dim()).collect();
        idx.sort_by_key(|&i| (class(i), i));
        let mut rank_of = vec![0; s.dim()];
        for (r, i) in idx.into_iter().enumerate() {
            rank_of[i] = r;
        }
        PbwOrder { rank_of }
    }

    pub fn rank(&self, g: u16) -> usize {
        self.rank_of[g as usize]
    }
}

/// Exact combination of (PBW word) ⊗ (normal Weyl monomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    rank: usize,
    terms: BTreeMap<(UWord, WeylMonomial), Q>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorTermJson {
    pub u_word: Vec<String>,
    pub w_word: String,
    pub coef: String,
}

impl TensorElement {
    pub fn zero(rank: usize) -> Self {
        TensorElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(rank: usize, c: Q) -> Self {
        let mut t = Self::zero(rank);
        t.add_term(Vec::new(), WeylMonomial::one(rank), c);
        t
    }

    pub fn one(rank: usize) -> Self {
        Self::scalar(rank, Q::one())
    }

    /// A generator of g placed in the U(g) factor.
    pub fn generator(rank: usize, g: usize) -> Self {
        let mut t = Self::zero(rank);
        t.add_term(vec![g as u16], WeylMonomial::one(rank), Q::one());
        t
    }

    pub fn from_lincomb(rank: usize, x: &LinComb) -> Self {
        let mut t = Self::zero(rank);
        for (g, c) in x {
            t.add_term(vec![*g as u16], WeylMonomial::one(rank), c.clone());
        }
        t
    }

    /// 1 ⊗ w.
    pub fn from_weyl(w: &WeylPoly) -> Self {
        let mut t = Self::zero(w.rank());
        for (m, c) in w.terms() {
            t.add_term(Vec::new(), m.clone(), c.clone());
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<(UWord, WeylMonomial), Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, u: UWord, w: WeylMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (u, w);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((u, w), c) in &other.terms {
            out.add_term(u.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, k: &Q) -> TensorElement {
        let mut out = Self::zero(self.rank);
        for ((u, w), c) in &self.terms {
            out.add_term(u.clone(), w.clone(), c * k);
        }
        out
    }

    /// The Weyl factor, if every term has an empty U(g) word.
    pub fn weyl_part(&self) -> Option<WeylPoly> {
        let mut p = WeylPoly::zero(self.rank);
        for ((u, w), c) in &self.terms {
            if !u.is_empty() {
                return None;
            }
            p.add_term(w.clone(), c.clone());
        }
        Some(p)
    }

    pub fn as_scalar(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let ((u, w), c) = self.terms.iter().next().unwrap();
                (u.is_empty() && w.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn to_json(&self, s: &SuperAlgebraStructure) -> Vec<TensorTermJson> {
        self.terms
            .iter()
            .map(|((u, w), c)| TensorTermJson {
                u_word: u.iter().map(|&g| s.generator(g as usize).name.clone()).collect(),
                w_word: w.to_string(),
                coef: c.to_string(),
            })
            .collect()
    }

    /// Human-readable form with generator names.
    pub fn display(&self, s: &SuperAlgebraStructure) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.to_json(s)
            .into_iter()
            .map(|t| {
                let mut factors = t.u_word.clone();
                if t.w_word != "1" || factors.is_empty() {
                    factors.push(format!("[{}]", t.w_word));
                }
                format!("({})*{}", t.coef, factors.join("*"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((u, w), c)| format!("({c})*{u:?}[{w}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type WordForm = Rc<Vec<(UWord, Q)>>;

/// Multiplication in U(g) ⊗ W(g₁) for a fixed structure and PBW order.
pub struct TensorAlgebra<'a> {
    structure: &'a SuperAlgebraStructure,
    order: PbwOrder,
    graded: bool,
    memo: RefCell<HashMap<UWord, WordForm>>,
}

impl<'a> TensorAlgebra<'a> {
    pub fn new(structure: &'a SuperAlgebraStructure) -> Self {
        Self::with_order(structure, PbwOrder::standard(structure), false)
    }

    pub fn with_order(structure: &'a SuperAlgebraStructure, order: PbwOrder, graded: bool) -> Self {
        TensorAlgebra {
            structure,
            order,
            graded,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn structure(&self) -> &'a SuperAlgebraStructure {
        self.structure
    }

    pub fn rank(&self) -> usize {
        self.structure.rank()
    }

    pub fn order(&self) -> &PbwOrder {
        &self.order
    }

    /// Whether products carry the Koszul sign.
    pub fn graded(&self) -> bool {
        self.graded
    }

    pub fn word_is_odd(&self, u: &[u16]) -> bool {
        u.iter().filter(|&&g| self.structure.parity(g as usize) == Parity::Odd).count() % 2 == 1
    }

    fn is_normal(&self, u: &[u16]) -> bool {
        u.windows(2).all(|p| {
            let (a, b) = (self.order.rank(p[0]), self.order.rank(p[1]));
            a < b || (a == b && self.structure.parity(p[0] as usize) == Parity::Even)
        })
    }

    /// PBW normal form of an arbitrary word in the generators.
    pub fn normalize_word(&self, u: &[u16]) -> WordForm {
        if let Some(hit) = self.memo.borrow().get(u) {
            return hit.clone();
        }
        let s = self.structure;
        let spot = u.windows(2).position(|p| {
            let (a, b) = (self.order.rank(p[0]), self.order.rank(p[1]));
            a > b || (p[0] == p[1] && s.parity(p[0] as usize) == Parity::Odd)
        });
        let mut acc: BTreeMap<UWord, Q> = BTreeMap::new();
        let mut push = |form: &[(UWord, Q)], k: &Q| {
            for (w, c) in form {
                let e = acc.entry(w.clone()).or_insert_with(Q::zero);
                *e += c * k;
                if e.is_zero() {
                    acc.remove(w);
                }
            }
        };
        match spot {
            None => push(&[(u.to_vec(), Q::one())], &Q::one()),
            Some(i) => {
                let a = u[i] as usize;
                let b = u[i + 1] as usize;
                let splice = |g: usize| -> UWord {
                    let mut w = u[..i].to_vec();
                    w.push(g as u16);
                    w.extend_from_slice(&u[i + 2..]);
                    w
                };
                if a == b {
                    // odd a: a² = ½[a, a]
                    for (g, c) in s.bracket(a, a) {
                        push(&self.normalize_word(&splice(*g)), &(c * q_frac(1, 2)));
                    }
                } else {
                    let mut swapped = u.to_vec();
                    swapped.swap(i, i + 1);
                    let sign = q(s.parity(a).sign_with(s.parity(b)));
                    push(&self.normalize_word(&swapped), &sign);
                    for (g, c) in s.bracket(a, b) {
                        push(&self.normalize_word(&splice(*g)), c);
                    }
                }
            }
        }
        let form: WordForm = Rc::new(acc.into_iter().collect());
        self.memo.borrow_mut().insert(u.to_vec(), form.clone());
        form
    }

    /// Re-straightens every term; the identity on elements already normal in
    /// this algebra's order, and a change of order otherwise.
    pub fn normal_form(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(t.rank());
        for ((u, w), c) in t.terms() {
            if self.is_normal(u) {
                out.add_term(u.clone(), w.clone(), c.clone());
                continue;
            }
            for (u2, k) in self.normalize_word(u).iter() {
                out.add_term(u2.clone(), w.clone(), c * k);
            }
        }
        out
    }

    pub fn mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(a.rank());
        for ((u1, w1), c1) in a.terms() {
            for ((u2, w2), c2) in b.terms() {
                let mut coef = c1 * c2;
                if self.graded && w1.is_odd() && self.word_is_odd(u2) {
                    coef = -coef;
                }
                let mut word = u1.clone();
                word.extend_from_slice(u2);
                let uform = self.normalize_word(&word);
                let wform = monomial_product(w1, w2);
                for (u, ku) in uform.iter() {
                    let cu = &coef * ku;
                    for (w, kw) in &wform {
                        out.add_term(u.clone(), w.clone(), &cu * Q::from_integer(kw.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// A generator of g in the U(g) factor.
    pub fn gen(&self, g: usize) -> TensorElement {
        TensorElement::generator(self.rank(), g)
    }

    /// 1 ⊗ (odd generator viewed in W(g₁)).
    pub fn weyl_of_odd(&self, g: usize) -> TensorElement {
        TensorElement::from_weyl(&odd_to_weyl(self.structure, &LinComb::from([(g, Q::one())])))
    }
}

/// The odd part of g as degree-one elements of W(g₁).
pub fn odd_to_weyl(s: &SuperAlgebraStructure, x: &LinComb) -> WeylPoly {
    let n = s.rank();
    let mut p = WeylPoly::zero(n);
    for (g, c) in x {
        let g = *g;
        let m = if g >= s.del(0) && g < s.del(0) + n {
            WeylMonomial::del(n, g - s.del(0))
        } else if g >= s.x(0) && g < s.x(0) + n {
            WeylMonomial::x(n, g - s.x(0))
        } else {
            panic!("generator {} is not odd", s.generator(g).name);
        };
        p.add_term(m, c.clone());
    }
    p
}
