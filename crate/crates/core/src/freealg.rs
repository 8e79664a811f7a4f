//! Free associative algebra over the rationals.
//!
//! Monomials are words in the letters `1, 2, 3, ...` stored as [`Composition`]s. The same
//! word type indexes `Z`-words of NSymm, `U`-words of LieHopf, `P'`-words and the monomial
//! basis `M_c` of QSymm; which alphabet is meant is decided by the caller (see [`Basis`]).
//!
//! Every linear combination is kept in canonical form: a sorted map with no zero
//! coefficients. Sorting uses [`Composition`]'s order: by weight, then by number of parts,
//! then lexicographically on the parts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-7/4"` and similar exact rational strings.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A finite word of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// The one-letter word `(n)`.
    ///
    /// Panics if `n == 0`.
    pub fn single(n: usize) -> Self {
        assert!(n >= 1, "composition parts must be positive");
        Composition(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// The prefix of length `k` and the remaining suffix.
    pub fn split_at(&self, k: usize) -> (Composition, Composition) {
        let (a, b) = self.0.split_at(k);
        (Composition(a.to_vec()), Composition(b.to_vec()))
    }

    pub fn tail(&self) -> Composition {
        Composition(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `1,2,3`, `(1,2,3)`, `()` and the empty string.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl From<&[usize]> for Composition {
    /// Panics on a zero part; use [`Composition::new`] for untrusted input.
    fn from(parts: &[usize]) -> Self {
        Composition::new(parts.to_vec()).expect("composition parts must be positive")
    }
}

impl<const N: usize> From<[usize; N]> for Composition {
    fn from(parts: [usize; N]) -> Self {
        Composition::from(&parts[..])
    }
}

/// All compositions of `n`, each exactly once, in term order.
///
/// There are `2^(n-1)` of them for `n >= 1` and a single empty one for `n = 0`.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    // Each subset of the n-1 gaps between n unit cells is a set of cut points.
    let mut out: Vec<Composition> = (0u64..1u64 << (n - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut run = 1;
            for gap in 0..n - 1 {
                if cuts >> gap & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            Composition(parts)
        })
        .collect();
    out.sort();
    out
}

/// Compositions of every weight `0..=max_weight`, in term order.
pub fn compositions_up_to(max_weight: usize) -> Vec<Composition> {
    (0..=max_weight).flat_map(compositions_of).collect()
}

/// Monomials of a free (tensor power of a) monoid algebra.
pub trait Monomial: Ord + Clone {
    fn unit() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Monomial for Composition {
    fn unit() -> Self {
        Composition::empty()
    }

    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
}

impl Monomial for (Composition, Composition) {
    fn unit() -> Self {
        (Composition::empty(), Composition::empty())
    }

    fn mul(&self, other: &Self) -> Self {
        (self.0.concat(&other.0), self.1.concat(&other.1))
    }
}

impl Monomial for (Composition, Composition, Composition) {
    fn unit() -> Self {
        (Composition::empty(), Composition::empty(), Composition::empty())
    }

    fn mul(&self, other: &Self) -> Self {
        (
            self.0.concat(&other.0),
            self.1.concat(&other.1),
            self.2.concat(&other.2),
        )
    }
}

/// A finite rational linear combination of monomials, in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

/// Element of the free associative algebra (NSymm, LieHopf, or a basis-tagged view).
pub type NCPoly = LinComb<Composition>;

/// Element of the tensor square.
pub type Tensor2 = LinComb<(Composition, Composition)>;

/// Element of the tensor cube; used for coassociativity checks.
pub type Tensor3 = LinComb<(Composition, Composition, Composition)>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Rational)> {
        self.terms.into_iter()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * r))
                .collect(),
        }
    }

    /// True iff every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Least common multiple of all coefficient denominators (1 for the zero element).
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Linear extension of a map on monomials.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Linear extension of a map from monomials to linear combinations.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// `self += r * other`.
    pub fn add_scaled(&mut self, other: &Self, r: &Rational) {
        if r.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * r);
        }
    }

    pub fn leading_term(&self) -> Option<(&K, &Rational)> {
        self.terms.iter().next()
    }
}

impl<K: Monomial> LinComb<K> {
    pub fn one() -> Self {
        Self::monomial(K::unit(), Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::monomial(K::unit(), r)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl NCPoly {
    /// The generator with index `n` (`Z_n`, `U_n`, `P'_n` depending on the alphabet).
    pub fn generator(n: usize) -> Self {
        Self::monomial(Composition::single(n), Rational::one())
    }

    pub fn word(parts: &[usize]) -> Self {
        Self::monomial(Composition::from(parts), Rational::one())
    }

    /// Maximum weight over stored words; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Composition::weight).max().unwrap_or(0)
    }

    /// Whether every stored word has weight exactly `n`.
    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.weight() == n)
    }

    /// The algebra morphism sending each letter `k` to `image(k)`, applied to `self`.
    ///
    /// `image` is called at most once per distinct letter.
    pub fn substitute(&self, mut image: impl FnMut(usize) -> NCPoly) -> NCPoly {
        let mut cache: BTreeMap<usize, NCPoly> = BTreeMap::new();
        self.flat_map(|w| {
            let mut acc = NCPoly::one();
            for &letter in w.parts() {
                let img = cache.entry(letter).or_insert_with(|| image(letter));
                acc = &acc * &*img;
            }
            acc
        })
    }

    pub fn reverse_words(&self) -> NCPoly {
        self.map_keys(Composition::reversed)
    }

    /// `p ⊗ q`.
    pub fn tensor(&self, other: &NCPoly) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term((a.clone(), b.clone()), x * y);
            }
        }
        out
    }
}

impl Tensor2 {
    /// Componentwise degrees `(max left weight, max right weight)`.
    pub fn bidegree(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(l, r), (a, b)| {
            (l.max(a.weight()), r.max(b.weight()))
        })
    }

    /// Applies `f` to the left leg and `g` to the right leg, linearly.
    pub fn map_legs(
        &self,
        mut f: impl FnMut(&Composition) -> NCPoly,
        mut g: impl FnMut(&Composition) -> NCPoly,
    ) -> Tensor2 {
        self.flat_map(|(a, b)| f(a).tensor(&g(b)))
    }
}

impl<K: Monomial> Mul for &LinComb<K> {
    type Output = LinComb<K>;

    fn mul(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = LinComb::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl<K: Monomial> Mul for LinComb<K> {
    type Output = LinComb<K>;

    fn mul(self, rhs: LinComb<K>) -> LinComb<K> {
        &self * &rhs
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;

    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;

    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;

    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;

    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        self.scale(&-Rational::one())
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        -&self
    }
}

/// The alphabet in which a word-indexed polynomial is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "U")]
    U,
    #[serde(rename = "Pprime")]
    PPrime,
    #[serde(rename = "M")]
    M,
}

impl Basis {
    fn render_word(self, w: &Composition) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let letter = match self {
            Basis::M => return format!("M{w}"),
            Basis::Z => "Z",
            Basis::U => "U",
            Basis::PPrime => "P'",
        };
        w.parts()
            .iter()
            .map(|p| format!("{letter}{p}"))
            .collect::<Vec<_>>()
            .join("·")
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "Z",
            Basis::U => "U",
            Basis::PPrime => "Pprime",
            Basis::M => "M",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Basis::Z),
            "U" => Ok(Basis::U),
            "Pprime" => Ok(Basis::PPrime),
            "M" => Ok(Basis::M),
            other => Err(Error::Parse(format!("unknown basis tag {other:?}"))),
        }
    }
}

fn render_term(body: Option<String>, magnitude: &Rational) -> String {
    let coeff = if magnitude.is_integer() {
        magnitude.numer().to_string()
    } else {
        format!("({}/{})", magnitude.numer(), magnitude.denom())
    };
    match body {
        None => coeff,
        Some(b) if magnitude.is_one() => b,
        Some(b) => format!("{coeff}·{b}"),
    }
}

fn render_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (Option<String>, &'a Rational)>,
{
    let mut out = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&render_term(body, &c.abs()));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl NCPoly {
    /// Human-readable rendering, e.g. `(1/2)·P'2 + (1/2)·P'1·P'1`.
    pub fn render(&self, basis: Basis) -> String {
        render_terms(self.terms().map(|(w, c)| {
            let body = (!w.is_empty()).then(|| basis.render_word(w));
            (body, c)
        }))
    }

    /// Inverse of [`NCPoly::render`].
    pub fn parse_rendered(s: &str, basis: Basis) -> Result<NCPoly> {
        parse_rendered(s, basis)
    }
}

impl Tensor2 {
    /// Rendering with `⊗` between legs, e.g. `Z2⊗1 + Z1⊗Z1 + 1⊗Z2`.
    pub fn render(&self, basis: Basis) -> String {
        render_terms(self.terms().map(|((a, b), c)| {
            let body = format!("{}⊗{}", basis.render_word(a), basis.render_word(b));
            (Some(body), c)
        }))
    }
}

fn parse_word(body: &str, basis: Basis) -> Result<Composition> {
    let body = body.trim();
    if body == "1" {
        return Ok(Composition::empty());
    }
    if basis == Basis::M {
        let inner = body
            .strip_prefix('M')
            .ok_or_else(|| Error::Parse(format!("expected M(...) word, found {body:?}")))?;
        return inner.parse();
    }
    let letter = match basis {
        Basis::Z => "Z",
        Basis::U => "U",
        Basis::PPrime => "P'",
        Basis::M => unreachable!(),
    };
    let parts = body
        .split('·')
        .map(|g| {
            g.trim()
                .strip_prefix(letter)
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("expected {letter}<n>, found {g:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Composition::new(parts)
}

fn parse_rendered(s: &str, basis: Basis) -> Result<NCPoly> {
    let s = s.trim();
    if s == "0" {
        return Ok(NCPoly::zero());
    }
    // Split into signed chunks on the " + " / " - " separators emitted by `render`.
    let mut chunks: Vec<(bool, &str)> = Vec::new();
    let mut rest = s;
    let mut negative = false;
    if let Some(r) = rest.strip_prefix('-') {
        negative = true;
        rest = r;
    }
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let next = match (plus, minus) {
            (Some(p), Some(m)) => Some(p.min(m)),
            (p, m) => p.or(m),
        };
        match next {
            Some(i) => {
                chunks.push((negative, &rest[..i]));
                negative = rest[i..].starts_with(" - ");
                rest = &rest[i + 3..];
            }
            None => {
                chunks.push((negative, rest));
                break;
            }
        }
    }
    let mut out = NCPoly::zero();
    for (negative, chunk) in chunks {
        let chunk = chunk.trim();
        let (coeff, body) = if let Some(r) = chunk.strip_prefix('(') {
            let close = r
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced coefficient in {chunk:?}")))?;
            let coeff = parse_rational(&r[..close])?;
            let body = r[close + 1..].trim_start_matches('·');
            (coeff, if body.is_empty() { None } else { Some(body) })
        } else if chunk.starts_with(|c: char| c.is_ascii_digit()) && chunk != "1" {
            match chunk.split_once('·') {
                Some((c, body)) => (parse_rational(c)?, Some(body)),
                None => (parse_rational(chunk)?, None),
            }
        } else {
            (Rational::one(), Some(chunk))
        };
        let word = match body {
            None => Composition::empty(),
            Some(b) => parse_word(b, basis)?,
        };
        out.add_term(word, if negative { -coeff } else { coeff });
    }
    Ok(out)
}

/// Serialized coefficient: decimal strings for numerator and (positive) denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for CoeffRecord {
    fn from(r: &Rational) -> Self {
        CoeffRecord {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&CoeffRecord> for Rational {
    type Error = Error;

    fn try_from(rec: &CoeffRecord) -> Result<Rational> {
        let num: BigInt = rec
            .num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator {:?}", rec.num)))?;
        let den: BigInt = rec
            .den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator {:?}", rec.den)))?;
        if !den.is_positive() {
            return Err(Error::Parse(format!("denominator must be positive, found {}", rec.den)));
        }
        Ok(Rational::new(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: Vec<usize>,
    pub coeff: CoeffRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermRecord {
    pub left_word: Vec<usize>,
    pub right_word: Vec<usize>,
    pub coeff: CoeffRecord,
}

impl NCPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(w, c)| TermRecord {
                word: w.parts().to_vec(),
                coeff: c.into(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for rec in records {
            out.add_term(Composition::new(rec.word.clone())?, Rational::try_from(&rec.coeff)?);
        }
        Ok(out)
    }
}

impl Tensor2 {
    pub fn to_records(&self) -> Vec<TensorTermRecord> {
        self.terms()
            .map(|((a, b), c)| TensorTermRecord {
                left_word: a.parts().to_vec(),
                right_word: b.parts().to_vec(),
                coeff: c.into(),
            })
            .collect()
    }

    pub fn from_records(records: &[TensorTermRecord]) -> Result<Tensor2> {
        let mut out = Tensor2::zero();
        for rec in records {
            let key = (
                Composition::new(rec.left_word.clone())?,
                Composition::new(rec.right_word.clone())?,
            );
            out.add_term(key, Rational::try_from(&rec.coeff)?);
        }
        Ok(out)
    }
}

impl Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        NCPoly::from_records(&records).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Tensor2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TensorTermRecord>::deserialize(d)?;
        Tensor2::from_records(&records).map_err(serde::de::Error::custom)
    }
}

/// A polynomial together with the alphabet its words are read in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub basis: Basis,
    pub terms: NCPoly,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(parts: &[usize]) -> NCPoly {
        NCPoly::word(parts)
    }

    #[test]
    fn compositions_small() {
        assert_eq!(compositions_of(0), vec![Composition::empty()]);
        assert_eq!(compositions_of(1), vec![Composition::from([1])]);
        let three: Vec<Composition> = vec![[3].into(), [1, 2].into(), [2, 1].into(), [1, 1, 1].into()];
        assert_eq!(compositions_of(3), three);
    }

    #[test]
    fn compositions_match_brute_force() {
        // every sequence of parts in 1..=n with sum n, found by bounded search
        fn brute(n: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut stack = vec![Vec::new()];
            while let Some(prefix) = stack.pop() {
                let s: usize = prefix.iter().sum();
                if s == n {
                    out.push(prefix);
                    continue;
                }
                for p in 1..=n - s {
                    let mut next = prefix.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
            out
        }
        for n in 0..=9 {
            let mut expected = brute(n);
            expected.sort();
            let mut got: Vec<Vec<usize>> = compositions_of(n).into_iter().map(|c| c.into_parts()).collect();
            got.sort();
            assert_eq!(got, expected, "n = {n}");
        }
    }

    #[test]
    fn composition_rejects_zero_part() {
        assert_eq!(Composition::new(vec![1, 0]), Err(Error::ZeroPart));
        assert!("1,0".parse::<Composition>().is_err());
        assert_eq!("(2,1)".parse::<Composition>().unwrap(), Composition::from([2, 1]));
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
    }

    #[test]
    fn add_and_scale_examples() {
        assert!((&z(&[1]) + &z(&[1]).scale(&integer(-1))).is_zero());
        assert_eq!(z(&[2]).scale(&integer(2)).scale(&rational(1, 2)), z(&[2]));
        let p = &z(&[1]) + &z(&[1, 1]);
        assert_eq!(p.len(), 2);
        let degrees: Vec<usize> = p.terms().map(|(w, _)| w.weight()).collect();
        assert_eq!(degrees, vec![1, 2]);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&z(&[1]) * &z(&[2]), z(&[1, 2]));
        let one_plus = &NCPoly::one() + &z(&[1]);
        let expected = NCPoly::from_terms([
            (Composition::empty(), integer(1)),
            (Composition::from([1]), integer(2)),
            (Composition::from([1, 1]), integer(1)),
        ]);
        assert_eq!(&one_plus * &one_plus, expected);
        assert_ne!(&z(&[1]) * &z(&[2]), &z(&[2]) * &z(&[1]));
    }

    #[test]
    fn tensor_mul_examples() {
        let l = z(&[1]).tensor(&NCPoly::one());
        let r = NCPoly::one().tensor(&z(&[1]));
        let mixed = z(&[1]).tensor(&z(&[1]));
        assert_eq!(&l * &r, mixed);
        assert_eq!(&r * &l, mixed);
        let s = &l + &r;
        let expected = Tensor2::from_terms([
            (([1, 1].into(), Composition::empty()), integer(1)),
            (([1].into(), [1].into()), integer(2)),
            ((Composition::empty(), [1, 1].into()), integer(1)),
        ]);
        assert_eq!(&s * &s, expected);
        assert_eq!(expected.bidegree(), (2, 2));
    }

    #[test]
    fn integrality() {
        assert!(NCPoly::zero().is_integral());
        assert!(z(&[2]).scale(&integer(3)).is_integral());
        assert!(!z(&[2]).scale(&rational(1, 2)).is_integral());
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let p = NCPoly::from_terms([
            (Composition::from([1]), integer(0)),
            (Composition::from([2]), integer(3)),
            (Composition::from([2]), integer(-3)),
        ]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn substitution_is_multiplicative() {
        // Z1 -> 1 + Z2, Z2 -> Z1Z1
        let p = &z(&[1, 2]) + &z(&[2]).scale(&integer(3));
        let img = |k: usize| match k {
            1 => &NCPoly::one() + &z(&[2]),
            2 => z(&[1, 1]),
            _ => unreachable!(),
        };
        let expected = &(&(&NCPoly::one() + &z(&[2])) * &z(&[1, 1])) + &z(&[1, 1]).scale(&integer(3));
        assert_eq!(p.substitute(img), expected);
    }

    #[test]
    fn render_and_parse() {
        let p = NCPoly::from_terms([
            (Composition::from([2]), rational(1, 2)),
            (Composition::from([1, 1]), rational(1, 2)),
        ]);
        assert_eq!(p.render(Basis::PPrime), "(1/2)·P'2 + (1/2)·P'1·P'1");
        assert_eq!(NCPoly::parse_rendered("(1/2)·P'2 + (1/2)·P'1·P'1", Basis::PPrime).unwrap(), p);
        let q = NCPoly::from_terms([
            (Composition::empty(), rational(-5, 2)),
            (Composition::from([3]), integer(3)),
            (Composition::from([1, 2]), integer(-1)),
        ]);
        assert_eq!(q.render(Basis::Z), "-(5/2) + 3·Z3 - Z1·Z2");
        assert_eq!(NCPoly::parse_rendered(&q.render(Basis::Z), Basis::Z).unwrap(), q);
        assert_eq!(q.render(Basis::M), "-(5/2) + 3·M(3) - M(1,2)");
        assert_eq!(NCPoly::parse_rendered(&q.render(Basis::M), Basis::M).unwrap(), q);
        assert_eq!(NCPoly::zero().render(Basis::U), "0");
        assert_eq!(NCPoly::one().render(Basis::U), "1");
    }

    #[test]
    fn json_shape() {
        let p = NCPoly::from_terms([(Composition::from([2, 1]), rational(-3, 4))]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"word":[2,1],"coeff":{"num":"-3","den":"4"}}]"#);
        let back: NCPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"[{"word":[2,0],"coeff":{"num":"1","den":"1"}}]"#;
        assert!(serde_json::from_str::<NCPoly>(bad).is_err());
        let bad_den = r#"[{"word":[2],"coeff":{"num":"1","den":"-2"}}]"#;
        assert!(serde_json::from_str::<NCPoly>(bad_den).is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-7/14").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), integer(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rational(6, -4)), "-3/2");
    }
}
