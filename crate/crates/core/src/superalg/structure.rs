use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, q_frac, QMatrix, Q};
use crate::rootdata::Weight;

/// Sparse linear combination of generators.
pub type LinComb = BTreeMap<usize, Q>;

pub(crate) fn lc_add_scaled(acc: &mut LinComb, v: &LinComb, k: &Q) {
    for (i, c) in v {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e += c * k;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn sign_with(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// What a generator is, in terms of the indices 0..n of ∂_i and x_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Cartan element H_i, α(H_i) = −σ(∂_i x_i).
    Cartan(usize),
    /// α = σ(∂_i x_j), i ≠ j.
    Mixed(usize, usize),
    /// α = ∂_i ∂_j, i ≤ j.
    Raising(usize, usize),
    /// α = x_i x_j, i ≤ j.
    Lowering(usize, usize),
    /// odd ∂_i
    Del(usize),
    /// odd x_i
    X(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub parity: Parity,
    /// Weight under the Cartan elements H_1, …, H_n.
    pub weight: Weight,
}

/// osp(1|2n) realized inside gl(1|2n) with the invariant form
/// B(X, Y) = −¼ str(XY), which gives B(∂_i, x_j) = ½ δ_ij.
///
/// Generators: H_i, E_ij (i ≠ j), P_ij, N_ij (i ≤ j) span g₀ = sp(2n);
/// ∂_1..∂_n, x_1..x_n span g₁. The odd vector f_k of C^{2n} is realized as
/// the supermatrix [[0, (Jf)ᵀ], [f, 0]] with J = [[0, I], [−I, 0]].
#[derive(Clone)]
pub struct SuperAlgebraStructure {
    n: usize,
    generators: Vec<Generator>,
    matrices: Vec<QMatrix>,
    brackets: Vec<Vec<LinComb>>,
    bform: QMatrix,
    dual: Vec<LinComb>,
}

impl fmt::Debug for SuperAlgebraStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebraStructure")
            .field("n", &self.n)
            .field("dim_even", &self.even_dim())
            .field("dim_odd", &self.odd_dim())
            .finish()
    }
}

/// Largest rank the symbolic engine is built for.
pub const MAX_SYMBOLIC_RANK: usize = 3;

fn unit_block(n2: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n2, n2);
    m[(i, j)] = Q::one();
    m
}

/// sp(2n) matrix in the basis (∂_1..∂_n, x_1..x_n) for each even generator
/// kind, read off the commutator table in the Weyl algebra.
pub fn table_matrix(n: usize, kind: GeneratorKind) -> QMatrix {
    let e = |i, j| unit_block(2 * n, i, j);
    match kind {
        GeneratorKind::Cartan(i) => e(i, i).sub(&e(n + i, n + i)),
        GeneratorKind::Mixed(i, j) => e(n + j, n + i).sub(&e(i, j)),
        GeneratorKind::Raising(i, j) => e(i, n + j).add(&e(j, n + i)),
        GeneratorKind::Lowering(i, j) => e(n + i, j).add(&e(n + j, i)).scale(&q(-1)),
        GeneratorKind::Del(_) | GeneratorKind::X(_) => panic!("odd generator has no sp block"),
    }
}

fn odd_matrix(n: usize, k: usize) -> QMatrix {
    // f = e_k in C^{2n}; column entries (1 + k, 0) = 1, row (0, 1 + l) = (J f)_l.
    let size = 2 * n + 1;
    let mut m = QMatrix::zeros(size, size);
    m[(1 + k, 0)] = Q::one();
    // J e_k: for k < n, J e_k = −e_{n+k}; for k ≥ n, J e_k = e_{k−n}.
    if k < n {
        m[(0, 1 + n + k)] = q(-1);
    } else {
        m[(0, 1 + k - n)] = Q::one();
    }
    m
}

fn even_matrix(n: usize, block: &QMatrix) -> QMatrix {
    let size = 2 * n + 1;
    let mut m = QMatrix::zeros(size, size);
    for i in 0..2 * n {
        for j in 0..2 * n {
            m[(1 + i, 1 + j)] = block[(i, j)].clone();
        }
    }
    m
}

fn supertrace(m: &QMatrix) -> Q {
    let mut s = m[(0, 0)].clone();
    for i in 1..m.rows() {
        s -= &m[(i, i)];
    }
    s
}

fn unit_weight(n: usize, i: usize, k: i64) -> Weight {
    Weight::unit(n, i).scale(k)
}

impl SuperAlgebraStructure {
    /// Builds osp(1|2n) and verifies super Jacobi, invariance of B and the
    /// odd normalization B(∂_i, x_j) = ½ δ_ij.
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(n));
        }
        if n > MAX_SYMBOLIC_RANK {
            return Err(Error::RankLimit {
                rank: n,
                limit: MAX_SYMBOLIC_RANK,
            });
        }
        let mut generators = Vec::new();
        for i in 0..n {
            generators.push(Generator {
                name: format!("H{}", i + 1),
                kind: GeneratorKind::Cartan(i),
                parity: Parity::Even,
                weight: Weight::zero(n),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    generators.push(Generator {
                        name: format!("E{}{}", i + 1, j + 1),
                        kind: GeneratorKind::Mixed(i, j),
                        parity: Parity::Even,
                        weight: &unit_weight(n, i, 1) - &unit_weight(n, j, 1),
                    });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                generators.push(Generator {
                    name: format!("P{}{}", i + 1, j + 1),
                    kind: GeneratorKind::Raising(i, j),
                    parity: Parity::Even,
                    weight: &unit_weight(n, i, 1) + &unit_weight(n, j, 1),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                generators.push(Generator {
                    name: format!("N{}{}", i + 1, j + 1),
                    kind: GeneratorKind::Lowering(i, j),
                    parity: Parity::Even,
                    weight: -(&unit_weight(n, i, 1) + &unit_weight(n, j, 1)),
                });
            }
        }
        for i in 0..n {
            generators.push(Generator {
                name: format!("D{}", i + 1),
                kind: GeneratorKind::Del(i),
                parity: Parity::Odd,
                weight: unit_weight(n, i, 1),
            });
        }
        for i in 0..n {
            generators.push(Generator {
                name: format!("X{}", i + 1),
                kind: GeneratorKind::X(i),
                parity: Parity::Odd,
                weight: unit_weight(n, i, -1),
            });
        }

        let matrices: Vec<QMatrix> = generators
            .iter()
            .map(|g| match g.kind {
                GeneratorKind::Del(i) => odd_matrix(n, i),
                GeneratorKind::X(i) => odd_matrix(n, n + i),
                kind => even_matrix(n, &table_matrix(n, kind)),
            })
            .collect();

        let decomposer = Decomposer::new(&matrices)?;
        let dim = generators.len();
        let mut brackets = vec![vec![LinComb::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let sign = q(generators[i].parity.sign_with(generators[j].parity));
                let m = matrices[i].mul(&matrices[j]).sub(&matrices[j].mul(&matrices[i]).scale(&sign));
                brackets[i][j] = decomposer.decompose(&m).ok_or_else(|| {
                    Error::Structural(format!(
                        "[{}, {}] leaves the algebra",
                        generators[i].name, generators[j].name
                    ))
                })?;
            }
        }

        let mut bform = QMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                bform[(i, j)] = supertrace(&matrices[i].mul(&matrices[j])) * q_frac(-1, 4);
            }
        }

        let mut s = SuperAlgebraStructure {
            n,
            generators,
            matrices,
            brackets,
            bform,
            dual: Vec::new(),
        };
        s.dual = s.dual_basis(&(0..dim).map(|i| LinComb::from([(i, Q::one())])).collect::<Vec<_>>())?;
        s.verify()?;
        Ok(s)
    }

    fn verify(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..self.n {
            for j in 0..self.n {
                let b = &self.bform[(self.del(i), self.x(j))];
                let expected = if i == j { q_frac(1, 2) } else { Q::zero() };
                if *b != expected {
                    return Err(Error::Structural(format!("B(∂{}, x{}) = {b}", i + 1, j + 1)));
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                if self.parity(a) != self.parity(b) && !self.bform[(a, b)].is_zero() {
                    return Err(Error::Structural(format!(
                        "g0 and g1 not orthogonal at ({}, {})",
                        self.generators[a].name, self.generators[b].name
                    )));
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if !self.jacobi_residual(a, b, c).is_empty() {
                        return Err(Error::Structural(format!(
                            "super Jacobi fails on ({}, {}, {})",
                            self.generators[a].name, self.generators[b].name, self.generators[c].name
                        )));
                    }
                    let left = self.form_lc(&self.brackets[a][b], &LinComb::from([(c, Q::one())]));
                    let right = self.form_lc(&LinComb::from([(a, Q::one())]), &self.brackets[b][c]);
                    if left != right {
                        return Err(Error::Structural(format!(
                            "B not invariant on ({}, {}, {})",
                            self.generators[a].name, self.generators[b].name, self.generators[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// (−1)^{|a||c|}[a,[b,c]] + (−1)^{|b||a|}[b,[c,a]] + (−1)^{|c||b|}[c,[a,b]].
    pub fn jacobi_residual(&self, a: usize, b: usize, c: usize) -> LinComb {
        let pa = self.parity(a);
        let pb = self.parity(b);
        let pc = self.parity(c);
        let mut acc = LinComb::new();
        let mut term = |x: usize, inner: &LinComb, sign: i64| {
            for (k, coef) in inner {
                lc_add_scaled(&mut acc, &self.brackets[x][*k], &(coef * q(sign)));
            }
        };
        term(a, &self.brackets[b][c], pa.sign_with(pc));
        term(b, &self.brackets[c][a], pb.sign_with(pa));
        term(c, &self.brackets[a][b], pc.sign_with(pb));
        acc
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn even_dim(&self) -> usize {
        self.generators.iter().filter(|g| g.parity == Parity::Even).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].parity
    }

    pub fn even_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::Even)
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::Odd)
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Index of the Cartan generator H_{i+1}.
    pub fn cartan(&self, i: usize) -> usize {
        i
    }

    /// Index of ∂_{i+1}.
    pub fn del(&self, i: usize) -> usize {
        self.even_dim() + i
    }

    /// Index of x_{i+1}.
    pub fn x(&self, i: usize) -> usize {
        self.even_dim() + self.n + i
    }

    pub fn bracket(&self, a: usize, b: usize) -> &LinComb {
        &self.brackets[a][b]
    }

    /// Bracket of two combinations of homogeneous generators of equal parity
    /// pattern, extended bilinearly.
    pub fn bracket_lc(&self, x: &LinComb, y: &LinComb) -> LinComb {
        let mut acc = LinComb::new();
        for (a, ca) in x {
            for (b, cb) in y {
                lc_add_scaled(&mut acc, &self.brackets[*a][*b], &(ca * cb));
            }
        }
        acc
    }

    pub fn bform(&self) -> &QMatrix {
        &self.bform
    }

    pub fn form_lc(&self, x: &LinComb, y: &LinComb) -> Q {
        let mut s = Q::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                let v = &self.bform[(*a, *b)];
                if !v.is_zero() {
                    s += ca * cb * v;
                }
            }
        }
        s
    }

    pub fn supermatrix(&self, i: usize) -> &QMatrix {
        &self.matrices[i]
    }

    /// Dual of generator i under B: B(e_i, f_i) = 1, B(e_j, f_i) = 0.
    pub fn dual_of(&self, i: usize) -> &LinComb {
        &self.dual[i]
    }

    /// Dual basis f_j of an arbitrary basis e_j with B(e_i, f_j) = δ_ij.
    pub fn dual_basis(&self, basis: &[LinComb]) -> Result<Vec<LinComb>> {
        let k = basis.len();
        let mut gram = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = self.form_lc(&basis[i], &basis[j]);
            }
        }
        let inv = gram
            .inverse()
            .ok_or_else(|| Error::Structural("B is degenerate on the given basis".into()))?;
        Ok((0..k)
            .map(|j| {
                let mut f = LinComb::new();
                for (kk, b) in basis.iter().enumerate() {
                    lc_add_scaled(&mut f, b, &inv[(kk, j)]);
                }
                f
            })
            .collect())
    }

    /// ν(X): the matrix of ad X on g₁ in the basis (∂_1..∂_n, x_1..x_n),
    /// column l holding the image of the l-th odd generator.
    pub fn nu(&self, x: &LinComb) -> Result<QMatrix> {
        if x.keys().any(|&i| self.parity(i) == Parity::Odd) {
            return Err(Error::Structural("ν is defined on g₀ only".into()));
        }
        let n2 = 2 * self.n;
        let base = self.even_dim();
        let mut m = QMatrix::zeros(n2, n2);
        for l in 0..n2 {
            let image = self.bracket_lc(x, &LinComb::from([(base + l, Q::one())]));
            for (k, c) in image {
                m[(k - base, l)] = c;
            }
        }
        Ok(m)
    }
}

/// Coordinates of matrices in a fixed basis of matrices.
struct Decomposer {
    pivot_rows: Vec<usize>,
    inverse: QMatrix,
    basis: Vec<Vec<Q>>,
}

fn flatten(m: &QMatrix) -> Vec<Q> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            v.push(m[(i, j)].clone());
        }
    }
    v
}

impl Decomposer {
    fn new(mats: &[QMatrix]) -> Result<Self> {
        let basis: Vec<Vec<Q>> = mats.iter().map(flatten).collect();
        let len = basis[0].len();
        let tall = QMatrix::from_columns(&basis, len);
        let (_, pivot_rows) = tall.transpose().rref();
        if pivot_rows.len() != mats.len() {
            return Err(Error::Structural("generator matrices are linearly dependent".into()));
        }
        let mut square = QMatrix::zeros(mats.len(), mats.len());
        for (r, &row) in pivot_rows.iter().enumerate() {
            for c in 0..mats.len() {
                square[(r, c)] = tall[(row, c)].clone();
            }
        }
        let inverse = square.inverse().expect("pivot rows give an invertible block");
        Ok(Decomposer {
            pivot_rows,
            inverse,
            basis,
        })
    }

    fn decompose(&self, m: &QMatrix) -> Option<LinComb> {
        let v = flatten(m);
        let rhs: Vec<Q> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        let coords = self.inverse.mul_vec(&rhs);
        let mut check = vec![Q::zero(); v.len()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in check.iter_mut().zip(b) {
                if !x.is_zero() {
                    *slot += c * x;
                }
            }
        }
        if check != v {
            return None;
        }
        Some(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let s1 = SuperAlgebraStructure::build(1).unwrap();
        assert_eq!((s1.even_dim(), s1.odd_dim()), (3, 2));
        let s2 = SuperAlgebraStructure::build(2).unwrap();
        assert_eq!(s2.even_dim(), 10);
        assert_eq!(s2.odd_dim(), 4);
        assert!(matches!(SuperAlgebraStructure::build(4), Err(Error::RankLimit { .. })));
    }

    #[test]
    fn odd_pairing_is_one_half() {
        let s = SuperAlgebraStructure::build(2).unwrap();
        assert_eq!(s.bform()[(s.del(0), s.x(0))], q_frac(1, 2));
        assert_eq!(s.bform()[(s.x(0), s.del(0))], q_frac(-1, 2));
        assert!(s.bform()[(s.del(0), s.x(1))].is_zero());
    }

    #[test]
    fn rank_one_brackets() {
        let s = SuperAlgebraStructure::build(1).unwrap();
        let h = s.cartan(0);
        // [∂, x] = H, [H, ∂] = ∂, [H, x] = −x
        assert_eq!(s.bracket(s.del(0), s.x(0)), &LinComb::from([(h, q(1))]));
        assert_eq!(s.bracket(h, s.del(0)), &LinComb::from([(s.del(0), q(1))]));
        assert_eq!(s.bracket(h, s.x(0)), &LinComb::from([(s.x(0), q(-1))]));
    }

    #[test]
    fn generator_weights_match_cartan_action() {
        let s = SuperAlgebraStructure::build(2).unwrap();
        for g in 0..s.dim() {
            for i in 0..2 {
                let br = s.bracket(s.cartan(i), g);
                let w = &s.generator(g).weight;
                let expected = q_frac(w.doubled()[i], 2);
                if expected.is_zero() {
                    assert!(br.is_empty());
                } else {
                    assert_eq!(br, &LinComb::from([(g, expected)]));
                }
            }
        }
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        let s = SuperAlgebraStructure::build(2).unwrap();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let v = s.form_lc(&LinComb::from([(i, Q::one())]), s.dual_of(j));
                assert_eq!(v, if i == j { Q::one() } else { Q::zero() });
            }
        }
        // the odd duals are 2x_i and −2∂_i
        assert_eq!(s.dual_of(s.del(1)), &LinComb::from([(s.x(1), q(2))]));
        assert_eq!(s.dual_of(s.x(0)), &LinComb::from([(s.del(0), q(-2))]));
    }

    #[test]
    fn nu_is_the_table_matrix() {
        let s = SuperAlgebraStructure::build(2).unwrap();
        for g in s.even_indices().collect::<Vec<_>>() {
            let nu = s.nu(&LinComb::from([(g, Q::one())])).unwrap();
            assert_eq!(nu, table_matrix(2, s.generator(g).kind), "{}", s.generator(g).name);
        }
        assert!(s.nu(&LinComb::from([(s.del(0), Q::one())])).is_err());
    }

    #[test]
    fn rank_three_verifies() {
        let s = SuperAlgebraStructure::build(3).unwrap();
        assert_eq!(s.dim(), 27);
    }
}
