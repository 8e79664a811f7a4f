//! Shipped test algebras and families.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::{HSFamily, LinMap, TestAlgebra, Vector};
use crate::error::{Error, Result};
use crate::freealg::Rational;

fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

impl TestAlgebra {
    /// `Q[x]/(x^(trunc+1))` with basis `1, x, …, x^trunc`.
    pub fn truncated_polynomials(trunc: usize) -> TestAlgebra {
        let dim = trunc + 1;
        let labels = (0..dim)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            })
            .collect();
        let products = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i + j < dim {
                            unit_vector(dim, i + j)
                        } else {
                            vec![Rational::zero(); dim]
                        }
                    })
                    .collect()
            })
            .collect();
        TestAlgebra::new(labels, unit_vector(dim, 0), products)
            .expect("truncated polynomial algebra is associative and unital")
    }

    /// Upper-triangular `n × n` rational matrices, basis `E_ij` (`i <= j`) in row-major order.
    pub fn upper_triangular(n: usize) -> Result<TestAlgebra> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let dim = pairs.len();
        let labels = pairs
            .iter()
            .map(|(i, j)| format!("E{}{}", i + 1, j + 1))
            .collect();
        let products = pairs
            .iter()
            .map(|&(i, j)| {
                pairs
                    .iter()
                    .map(|&(k, l)| {
                        if j == k {
                            unit_vector(dim, index[&(i, l)])
                        } else {
                            vec![Rational::zero(); dim]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![Rational::zero(); dim];
        for i in 0..n {
            unit[index[&(i, i)]] = Rational::one();
        }
        TestAlgebra::new(labels, unit, products)
    }
}

/// The derivation `x²·d/dx` on `Q[x]/(x^(trunc+1))`, i.e. `x^k ↦ k·x^(k+1)`.
///
/// `d/dx` itself does not preserve the ideal `(x^(trunc+1))`; in the coordinate `y = 1/x`
/// this map is `−d/dy`, so it plays the role of the Taylor generator on the truncated algebra.
pub fn taylor_generator(trunc: usize) -> LinMap {
    let dim = trunc + 1;
    LinMap::from_columns(
        (0..dim)
            .map(|k| {
                let mut col = vec![Rational::zero(); dim];
                if k >= 1 && k + 1 < dim {
                    col[k + 1] = Rational::from_integer(BigInt::from(k));
                }
                col
            })
            .collect(),
    )
}

/// The Taylor family `exp(t·x²d/dx)` on `Q[x]/(x^(trunc+1))`, i.e. the substitution
/// `x ↦ x/(1 − t·x)`: `d_n(x^k) = C(k+n−1, n)·x^(k+n)` for `k >= 1`, and `d_n(1) = 0`.
/// Maps `d_1, …, d_trunc`.
pub fn taylor_hs(trunc: usize) -> HSFamily {
    let algebra = Arc::new(TestAlgebra::truncated_polynomials(trunc));
    let dim = trunc + 1;
    let maps = (1..=trunc)
        .map(|n| {
            LinMap::from_columns(
                (0..dim)
                    .map(|k| {
                        let mut col = vec![Rational::zero(); dim];
                        if k >= 1 && k + n < dim {
                            let c = binomial(BigInt::from(k + n - 1), BigInt::from(n));
                            col[k + n] = Rational::from_integer(c);
                        }
                        col
                    })
                    .collect(),
            )
        })
        .collect();
    HSFamily::new(algebra, maps).expect("Taylor family satisfies the Hasse-Schmidt law")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    fn letter(self) -> char {
        match self {
            Generator::X => 'x',
            Generator::Y => 'y',
        }
    }
}

/// The free algebra on `x, y` modulo all words longer than `max_len`.
///
/// Basis: all words of length `<= max_len`, ordered by length then lexicographically; the
/// empty word (label `"1"`) is the unit.
#[derive(Clone, Debug)]
pub struct TruncatedFree {
    max_len: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
    algebra: Arc<TestAlgebra>,
}

impl TruncatedFree {
    pub fn new(max_len: usize) -> Self {
        let mut words = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| ['x', 'y'].into_iter().map(move |c| format!("{w}{c}")))
                .collect();
            words.extend(layer.iter().cloned());
        }
        let index: HashMap<String, usize> =
            words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let dim = words.len();
        let products = words
            .iter()
            .map(|a| {
                words
                    .iter()
                    .map(|b| match index.get(&format!("{a}{b}")) {
                        Some(&k) => unit_vector(dim, k),
                        None => vec![Rational::zero(); dim],
                    })
                    .collect()
            })
            .collect();
        let labels = words
            .iter()
            .map(|w| if w.is_empty() { "1".to_string() } else { w.clone() })
            .collect();
        let algebra = TestAlgebra::new(labels, unit_vector(dim, 0), products)
            .expect("truncated free algebra is associative and unital");
        TruncatedFree {
            max_len,
            words,
            index,
            algebra: Arc::new(algebra),
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn algebra(&self) -> &Arc<TestAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Basis index of a word over `x, y` (`""` or `"1"` for the unit).
    pub fn word_index(&self, word: &str) -> Result<usize> {
        let w = if word == "1" { "" } else { word };
        if let Some(&k) = self.index.get(w) {
            return Ok(k);
        }
        if w.chars().all(|c| c == 'x' || c == 'y') {
            Err(Error::TruncationOverflow {
                word: w.to_string(),
                max_len: self.max_len,
            })
        } else {
            Err(Error::Parse(format!("{word:?} is not a word in x, y")))
        }
    }

    /// The element `Σ c·word`.
    pub fn element(&self, terms: &[(&str, Rational)]) -> Result<Vector> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (w, c) in terms {
            v[self.word_index(w)?] += c;
        }
        Ok(v)
    }

    /// Extends prescribed values `d_n(x)`, `d_n(y)` (for `1 <= n <= len`; missing entries are
    /// zero) to a Hasse-Schmidt family on the whole algebra via
    /// `d_n(g·v) = Σ_k d_k(g) · d_{n−k}(v)`.
    ///
    /// Images must have no constant term so that the truncation ideal is preserved.
    pub fn hs_extend(
        &self,
        images: &BTreeMap<(Generator, usize), Vector>,
        len: usize,
    ) -> Result<HSFamily> {
        let dim = self.dim();
        for (&(g, n), v) in images {
            if n == 0 || n > len {
                return Err(Error::InvalidGeneratorImage(format!(
                    "d_{n}({}) is outside 1..={len}",
                    g.letter()
                )));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if !v[0].is_zero() {
                return Err(Error::InvalidGeneratorImage(format!(
                    "d_{n}({}) has a constant term",
                    g.letter()
                )));
            }
        }
        let gen_image = |g: Generator, n: usize| -> Vector {
            if n == 0 {
                return unit_vector(dim, self.index[&g.letter().to_string()]);
            }
            images
                .get(&(g, n))
                .cloned()
                .unwrap_or_else(|| vec![Rational::zero(); dim])
        };
        // cols[n][w] = d_n(word w); words are ordered by length so prefixes come first.
        let mut cols: Vec<Vec<Vector>> = vec![Vec::with_capacity(dim); len + 1];
        for (w_idx, word) in self.words.iter().enumerate() {
            for n in 0..=len {
                let value = if word.is_empty() {
                    if n == 0 {
                        unit_vector(dim, 0)
                    } else {
                        vec![Rational::zero(); dim]
                    }
                } else {
                    let g = if word.starts_with('x') { Generator::X } else { Generator::Y };
                    let rest = self.index[&word[1..]];
                    let mut acc = vec![Rational::zero(); dim];
                    for k in 0..=n {
                        let term = self.algebra.mul(&gen_image(g, k), &cols[n - k][rest]);
                        for (a, t) in acc.iter_mut().zip(term) {
                            *a += t;
                        }
                    }
                    acc
                };
                debug_assert_eq!(cols[n].len(), w_idx);
                cols[n].push(value);
            }
        }
        let maps = cols.into_iter().skip(1).map(LinMap::from_columns).collect();
        HSFamily::new(self.algebra.clone(), maps)
    }
}
