//! Hasse-Schmidt derivations on finite-dimensional algebras given by structure constants,
//! and the conversions between HS families and sequences of ordinary derivations.
//!
//! Operator words are read like module actions: the word `(r_1, …, r_m)` evaluated on maps
//! `x_1, x_2, …` is `x_{r_1} ∘ x_{r_2} ∘ … ∘ x_{r_m}`, so `x_{r_m}` is applied first.
//!
//! All Leibniz-type checks run over every pair of basis elements. By bilinearity this is a
//! complete verification, not a sample.

mod catalog;
pub mod io;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{compositions_of, Composition, NCPoly, Rational};
use crate::newton::c_coeff;

pub use catalog::{taylor_generator, taylor_hs, Generator, TruncatedFree};

/// Coordinate vector of an algebra element.
pub type Vector = Vec<Rational>;

/// Sparse structure constants: the product `e_i · e_j` as `(k, c_k)` pairs.
type SparseVector = Vec<(usize, Rational)>;

fn sparse(v: &[Rational]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// A finite-dimensional associative unital algebra over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestAlgebra {
    labels: Vec<String>,
    unit: Vector,
    table: Vec<Vec<SparseVector>>,
}

impl TestAlgebra {
    /// `products[i][j]` is the coordinate vector of `e_i · e_j`.
    ///
    /// Fails unless every vector has length `labels.len()`, the product is associative on all
    /// basis triples and `unit` is a two-sided unit on all basis elements.
    pub fn new(labels: Vec<String>, unit: Vector, products: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: unit.len(),
            });
        }
        if products.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: products.len(),
            });
        }
        let mut table = Vec::with_capacity(dim);
        for row in &products {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            let mut sparse_row = Vec::with_capacity(dim);
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                sparse_row.push(sparse(v));
            }
            table.push(sparse_row);
        }
        let algebra = TestAlgebra {
            labels,
            unit,
            table,
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    fn check_axioms(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            let ei = self.basis_vector(i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(Error::InvalidAlgebra(format!(
                    "unit law fails on basis element {}",
                    self.labels[i]
                )));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.basis_product(i, j);
                for k in 0..dim {
                    let left = self.mul_sparse(ij, &[(k, Rational::one())]);
                    let jk = self.basis_product(j, k);
                    let right = self.mul_sparse(&[(i, Rational::one())], jk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product_vector(&self, i: usize, j: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    fn mul_sparse(&self, a: &[(usize, Rational)], b: &[(usize, Rational)]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in self.basis_product(*i, *j) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.mul_sparse(&sparse(a), &sparse(b))
    }

    /// Left multiplication by `m` as a linear map.
    pub fn left_multiplication(&self, m: &[Rational]) -> LinMap {
        LinMap::from_columns((0..self.dim()).map(|j| self.mul(m, &self.basis_vector(j))).collect())
    }

    /// Right multiplication by `m` as a linear map.
    pub fn right_multiplication(&self, m: &[Rational]) -> LinMap {
        LinMap::from_columns((0..self.dim()).map(|j| self.mul(&self.basis_vector(j), m)).collect())
    }

    /// The inner derivation `ad(m): x ↦ m·x − x·m`.
    pub fn inner_derivation(&self, m: &[Rational]) -> LinMap {
        &self.left_multiplication(m) - &self.right_multiplication(m)
    }
}

/// A rational square matrix; column `j` is the image of basis element `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    dim: usize,
    entries: Vec<Rational>,
}

impl LinMap {
    pub fn zero(dim: usize) -> Self {
        LinMap {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = LinMap::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    /// Panics if the columns do not form a square matrix.
    pub fn from_columns(columns: Vec<Vector>) -> Self {
        let dim = columns.len();
        let mut m = LinMap::zero(dim);
        for (j, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), dim, "column {j} has the wrong length");
            for (i, c) in col.into_iter().enumerate() {
                m.entries[i * dim + j] = c;
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(LinMap { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn column(&self, col: usize) -> Vector {
        (0..self.dim).map(|i| self.entry(i, col).clone()).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.entry(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(self.dim, other.dim, "composing maps of different dimension");
        let n = self.dim;
        let mut out = LinMap::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> LinMap {
        LinMap {
            dim: self.dim,
            entries: self.entries.iter().map(|c| c * r).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn add_scaled(&mut self, other: &LinMap, r: &Rational) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += b * r;
            }
        }
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(crate::freealg::format_rational).collect())
            .collect();
        write!(f, "LinMap{rows:?}")
    }
}

impl Add for &LinMap {
    type Output = LinMap;

    fn add(self, rhs: &LinMap) -> LinMap {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &LinMap {
    type Output = LinMap;

    fn sub(self, rhs: &LinMap) -> LinMap {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul for &LinMap {
    type Output = LinMap;

    /// Composition, `self` applied last.
    fn mul(self, rhs: &LinMap) -> LinMap {
        self.compose(rhs)
    }
}

fn check_dim(map: &LinMap, algebra: &TestAlgebra) -> Result<()> {
    if map.dim() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: map.dim(),
        });
    }
    Ok(())
}

/// First basis pair `(i, j)` on which `D(e_i e_j) ≠ e_i D(e_j) + D(e_i) e_j`, if any.
pub fn derivation_violation(d: &LinMap, algebra: &TestAlgebra) -> Result<Option<(usize, usize)>> {
    check_dim(d, algebra)?;
    let dim = algebra.dim();
    let images: Vec<Vector> = (0..dim).map(|i| d.column(i)).collect();
    for i in 0..dim {
        let ei = algebra.basis_vector(i);
        for j in 0..dim {
            let ej = algebra.basis_vector(j);
            let lhs = d.apply(&algebra.basis_product_vector(i, j));
            let mut rhs = algebra.mul(&ei, &images[j]);
            for (r, x) in rhs.iter_mut().zip(algebra.mul(&images[i], &ej)) {
                *r += x;
            }
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_derivation(d: &LinMap, algebra: &TestAlgebra) -> Result<bool> {
    Ok(derivation_violation(d, algebra)?.is_none())
}

/// Location of a failure of the Hasse-Schmidt law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HsViolation {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for HsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_{} fails on basis pair ({}, {})", self.n, self.i, self.j)
    }
}

/// First `(n, i, j)` with `d_n(e_i e_j) ≠ Σ_k d_k(e_i) d_{n−k}(e_j)`, checking every `n` up to
/// `maps.len()` and every basis pair; `maps[n-1]` is `d_n` and `d_0 = id`.
pub fn hs_violation(algebra: &TestAlgebra, maps: &[LinMap]) -> Result<Option<HsViolation>> {
    for m in maps {
        check_dim(m, algebra)?;
    }
    let dim = algebra.dim();
    // images[k][i] = d_k(e_i), sparsified
    let mut images: Vec<Vec<SparseVector>> = vec![(0..dim)
        .map(|i| vec![(i, Rational::one())])
        .collect()];
    for m in maps {
        images.push((0..dim).map(|i| sparse(&m.column(i))).collect());
    }
    for n in 1..=maps.len() {
        let dn = &maps[n - 1];
        for i in 0..dim {
            for j in 0..dim {
                let lhs = dn.apply(&algebra.basis_product_vector(i, j));
                let mut rhs = vec![Rational::zero(); dim];
                for k in 0..=n {
                    let term = algebra.mul_sparse(&images[k][i], &images[n - k][j]);
                    for (r, x) in rhs.iter_mut().zip(term) {
                        *r += x;
                    }
                }
                if lhs != rhs {
                    return Ok(Some(HsViolation { n, i, j }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_hs_maps(algebra: &TestAlgebra, maps: &[LinMap]) -> Result<bool> {
    Ok(hs_violation(algebra, maps)?.is_none())
}

/// A validated Hasse-Schmidt family `(id, d_1, …, d_N)` on a [`TestAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSFamily {
    algebra: Arc<TestAlgebra>,
    maps: Vec<LinMap>,
}

impl HSFamily {
    /// `maps[n-1]` is `d_n`. Fails unless the family satisfies the HS law in full.
    pub fn new(algebra: Arc<TestAlgebra>, maps: Vec<LinMap>) -> Result<Self> {
        if let Some(v) = hs_violation(&algebra, &maps)? {
            return Err(Error::NotHasseSchmidt(v.to_string()));
        }
        Ok(HSFamily { algebra, maps })
    }

    /// The family with `d_n = 0` for `1 <= n <= len`.
    pub fn zero(algebra: Arc<TestAlgebra>, len: usize) -> Self {
        let dim = algebra.dim();
        HSFamily {
            algebra,
            maps: vec![LinMap::zero(dim); len],
        }
    }

    pub fn algebra(&self) -> &Arc<TestAlgebra> {
        &self.algebra
    }

    pub fn maps(&self) -> &[LinMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `d_n`, with `d_0` the identity.
    pub fn d(&self, n: usize) -> LinMap {
        if n == 0 {
            LinMap::identity(self.algebra.dim())
        } else {
            self.maps[n - 1].clone()
        }
    }

    pub fn is_hs(&self) -> bool {
        matches!(hs_violation(&self.algebra, &self.maps), Ok(None))
    }
}

/// Evaluates words over a fixed list of letter maps, memoizing every suffix.
pub struct WordEvaluator<'a> {
    letters: &'a [LinMap],
    dim: usize,
    memo: HashMap<Composition, LinMap>,
}

impl<'a> WordEvaluator<'a> {
    /// `letters[k-1]` is the map for letter `k`.
    pub fn new(letters: &'a [LinMap], dim: usize) -> Self {
        WordEvaluator {
            letters,
            dim,
            memo: HashMap::new(),
        }
    }

    /// `x_{r_1} ∘ … ∘ x_{r_m}`; panics on a letter beyond `letters.len()`.
    pub fn word(&mut self, w: &Composition) -> LinMap {
        if w.is_empty() {
            return LinMap::identity(self.dim);
        }
        if let Some(m) = self.memo.get(w) {
            return m.clone();
        }
        let first = w.parts()[0];
        let rest = self.word(&w.tail());
        let out = self.letters[first - 1].compose(&rest);
        self.memo.insert(w.clone(), out.clone());
        out
    }

    pub fn poly(&mut self, p: &NCPoly) -> LinMap {
        let mut out = LinMap::zero(self.dim);
        for (w, c) in p.terms() {
            out.add_scaled(&self.word(w), c);
        }
        out
    }
}

/// Evaluates a polynomial on operators, letter `k` acting as `letters[k-1]`.
pub fn evaluate_operator_poly(p: &NCPoly, letters: &[LinMap], dim: usize) -> LinMap {
    WordEvaluator::new(letters, dim).poly(p)
}

/// Sum over compositions of `n` of `coeff(r) · x_{r_1} ∘ … ∘ x_{r_m}`.
fn composition_sum(
    eval: &mut WordEvaluator<'_>,
    n: usize,
    coeff: impl Fn(&Composition) -> Rational,
) -> LinMap {
    let mut out = LinMap::zero(eval.dim);
    for w in compositions_of(n) {
        let c = coeff(&w);
        out.add_scaled(&eval.word(&w), &c);
    }
    out
}

fn ensure_derivations(maps: &[LinMap], algebra: &TestAlgebra) -> Result<()> {
    for (idx, m) in maps.iter().enumerate() {
        if let Some((i, j)) = derivation_violation(m, algebra)? {
            return Err(Error::NotADerivation {
                index: idx + 1,
                detail: format!(
                    "Leibniz law fails on ({}, {})",
                    algebra.labels()[i],
                    algebra.labels()[j]
                ),
            });
        }
    }
    Ok(())
}

/// `δ_n = n·d_n − δ_1 d_{n−1} − … − δ_{n−1} d_1`.
pub fn delta_from_d(f: &HSFamily) -> Vec<LinMap> {
    let mut deltas: Vec<LinMap> = Vec::with_capacity(f.len());
    for n in 1..=f.len() {
        let mut delta = f.d(n).scale(&Rational::from_integer(BigInt::from(n)));
        for i in 1..n {
            delta = &delta - &deltas[i - 1].compose(&f.maps()[n - i - 1]);
        }
        deltas.push(delta);
    }
    deltas
}

/// `d_n = Σ_{r ⊨ n} c_r · δ_{r_1} ∘ … ∘ δ_{r_m}` with `c_r` the reciprocal suffix-sum product.
pub fn d_from_delta(deltas: &[LinMap], algebra: Arc<TestAlgebra>) -> Result<HSFamily> {
    ensure_derivations(deltas, &algebra)?;
    let mut eval = WordEvaluator::new(deltas, algebra.dim());
    let maps = (1..=deltas.len())
        .map(|n| composition_sum(&mut eval, n, |w| c_coeff(w).expect("nonempty")))
        .collect();
    HSFamily::new(algebra, maps)
}

/// `∂_n = Σ_{r ⊨ n} (−1)^(m+1)/m · d_{r_1} ∘ … ∘ d_{r_m}`.
pub fn partial_from_d(f: &HSFamily) -> Vec<LinMap> {
    let mut eval = WordEvaluator::new(f.maps(), f.algebra().dim());
    (1..=f.len())
        .map(|n| {
            composition_sum(&mut eval, n, |w| {
                let m = w.len() as i64;
                let sign = if m % 2 == 1 { 1 } else { -1 };
                Rational::new(BigInt::from(sign), BigInt::from(m))
            })
        })
        .collect()
}

/// `d_n = Σ_{r ⊨ n} ∂_{r_1} ∘ … ∘ ∂_{r_m} / m!`. Any sequence of derivations is accepted.
pub fn d_from_partial(partials: &[LinMap], algebra: Arc<TestAlgebra>) -> Result<HSFamily> {
    ensure_derivations(partials, &algebra)?;
    let mut eval = WordEvaluator::new(partials, algebra.dim());
    let maps = (1..=partials.len())
        .map(|n| {
            composition_sum(&mut eval, n, |w| {
                let fact = (1..=w.len()).fold(BigInt::one(), |acc, k| acc * k);
                Rational::new(BigInt::one(), fact)
            })
        })
        .collect();
    HSFamily::new(algebra, maps)
}
