//! Quasi-symmetric functions as the graded dual of NSymm, in the monomial basis `M_c`.
//!
//! The pairing `⟨M_a, Z_w⟩ = [a = w]` identifies each graded piece of QSymm with the dual of
//! the corresponding piece of NSymm. Under it the quasi-shuffle product is dual to the NSymm
//! coproduct and deconcatenation is dual to word concatenation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::Result;
use crate::freealg::{
    compositions_of, compositions_up_to, Basis, Composition, NCPoly, PolyDocument, Rational,
    Tensor2,
};
use crate::hopf::{word_coproduct, HopfFamily};
use crate::report::Report;

/// Element of QSymm; the word `c` stands for the monomial quasi-symmetric function `M_c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QSPoly(pub NCPoly);

impl QSPoly {
    pub fn zero() -> Self {
        QSPoly(NCPoly::zero())
    }

    pub fn one() -> Self {
        QSPoly(NCPoly::one())
    }

    pub fn monomial(c: Composition) -> Self {
        QSPoly(NCPoly::monomial(c, Rational::one()))
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn render(&self) -> String {
        self.0.render(Basis::M)
    }

    pub fn document(&self) -> PolyDocument {
        PolyDocument {
            basis: Basis::M,
            terms: self.0.clone(),
        }
    }
}

impl std::ops::Add for &QSPoly {
    type Output = QSPoly;

    fn add(self, rhs: &QSPoly) -> QSPoly {
        QSPoly(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &QSPoly {
    type Output = QSPoly;

    fn sub(self, rhs: &QSPoly) -> QSPoly {
        QSPoly(&self.0 - &rhs.0)
    }
}

/// `⟨q, p⟩` with `⟨M_a, Z_w⟩ = 1` iff `a = w`.
pub fn pairing(q: &QSPoly, p: &NCPoly) -> Rational {
    let (small, large) = if q.0.len() <= p.len() {
        (&q.0, p)
    } else {
        (p, &q.0)
    };
    small
        .terms()
        .map(|(w, c)| c * large.coeff(w))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// `⟨t, s⟩` for `t ∈ QSymm ⊗ QSymm`, `s ∈ NSymm ⊗ NSymm`.
pub fn pairing2(t: &Tensor2, s: &Tensor2) -> Rational {
    t.terms()
        .map(|(k, c)| c * s.coeff(k))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Quasi-shuffle of two monomials, by the first-letter recursion
/// `(a·A) ⧢ (b·B) = a·(A ⧢ bB) + b·(aA ⧢ B) + (a+b)·(A ⧢ B)`.
pub fn quasi_shuffle_words(a: &Composition, b: &Composition) -> BTreeMap<Composition, u64> {
    let mut memo = BTreeMap::new();
    qsh(a.parts(), b.parts(), &mut memo)
}

type QshMemo = BTreeMap<(Vec<usize>, Vec<usize>), BTreeMap<Composition, u64>>;

fn qsh(a: &[usize], b: &[usize], memo: &mut QshMemo) -> BTreeMap<Composition, u64> {
    if a.is_empty() || b.is_empty() {
        let w = if a.is_empty() { b } else { a };
        return BTreeMap::from([(Composition::from(w), 1)]);
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out: BTreeMap<Composition, u64> = BTreeMap::new();
    let mut prepend = |first: usize, rest: BTreeMap<Composition, u64>| {
        for (w, c) in rest {
            let word = Composition::single(first).concat(&w);
            *out.entry(word).or_default() += c;
        }
    };
    prepend(a[0], qsh(&a[1..], b, memo));
    prepend(b[0], qsh(a, &b[1..], memo));
    prepend(a[0] + b[0], qsh(&a[1..], &b[1..], memo));
    memo.insert(key, out.clone());
    out
}

fn quasi_shuffle_unbounded(a: &QSPoly, b: &QSPoly) -> QSPoly {
    let mut out = NCPoly::zero();
    for (u, x) in a.0.terms() {
        for (v, y) in b.0.terms() {
            let xy = x * y;
            for (w, mult) in quasi_shuffle_words(u, v) {
                out.add_term(w, &xy * Rational::from_integer(mult.into()));
            }
        }
    }
    QSPoly(out)
}

/// The product `M_a · M_b` defined by duality: its coefficient on `M_w` is the coefficient of
/// `Z_a ⊗ Z_b` in the NSymm coproduct of the word `Z_w`.
pub fn quasi_shuffle_by_duality(a: &Composition, b: &Composition) -> QSPoly {
    let key = (a.clone(), b.clone());
    QSPoly(NCPoly::from_terms(
        compositions_of(a.weight() + b.weight())
            .into_iter()
            .map(|w| {
                let c = word_coproduct(&w, HopfFamily::NSymm).coeff(&key);
                (w, c)
            }),
    ))
}

/// Deconcatenation coproduct `M_c ↦ Σ_i M_{c[..i]} ⊗ M_{c[i..]}`.
pub fn deconcat(q: &QSPoly) -> Tensor2 {
    q.0.flat_map(|c| {
        Tensor2::from_terms((0..=c.len()).map(|i| (c.split_at(i), Rational::one())))
    })
}

/// `α_n(q) = ⟨q, Z_n⟩`, the coefficient of `M_(n)`.
pub fn alpha(n: usize, q: &QSPoly) -> Rational {
    q.0.coeff(&Composition::single(n))
}

/// `d_n = (id ⊗ α_n) ∘ deconcat`. On monomials it strips a final part equal to `n`.
pub fn d_qsymm(n: usize, q: &QSPoly) -> QSPoly {
    QSPoly(q.0.flat_map(|c| match c.last() {
        Some(last) if last == n => NCPoly::monomial(c.split_at(c.len() - 1).0, Rational::one()),
        _ => NCPoly::zero(),
    }))
}

/// `d_n` computed literally as `(id ⊗ α_n)` applied to `deconcat(q)`.
pub fn d_qsymm_via_coproduct(n: usize, q: &QSPoly) -> QSPoly {
    let delta = deconcat(q);
    let mut out = NCPoly::zero();
    for ((left, right), c) in delta.terms() {
        let a = alpha(n, &QSPoly::monomial(right.clone()));
        out.add_term(left.clone(), c * a);
    }
    QSPoly(out)
}

/// `d_n` extended with `d_0 = id`.
fn d_with_identity(n: usize, q: &QSPoly) -> QSPoly {
    if n == 0 {
        q.clone()
    } else {
        d_qsymm(n, q)
    }
}

impl Engine {
    pub fn quasi_shuffle(&self, a: &QSPoly, b: &QSPoly) -> Result<QSPoly> {
        if !a.is_zero() && !b.is_zero() {
            self.check_degree(a.degree() + b.degree())?;
        }
        Ok(quasi_shuffle_unbounded(a, b))
    }

    /// Checks the Hasse-Schmidt law for `(id, d_1, d_2, …)` against the quasi-shuffle product
    /// on every pair of monomials of total weight `<= max_degree`, plus the derivation law for
    /// `d_1`. One record per total weight.
    pub fn verify_hs_qsymm(&self, max_degree: usize) -> Result<Report> {
        self.check_degree(max_degree)?;
        let mut report = Report::new("qsymm-hs");
        for total in 0..=max_degree {
            report.run(total, "hasse-schmidt law", || {
                let mut checked = 0;
                for a in compositions_up_to(total) {
                    for b in compositions_of(total - a.weight()) {
                        let (ma, mb) = (QSPoly::monomial(a.clone()), QSPoly::monomial(b.clone()));
                        let product = quasi_shuffle_unbounded(&ma, &mb);
                        for n in 1..=max_degree {
                            checked += 1;
                            let lhs = d_qsymm(n, &product);
                            let mut rhs = NCPoly::zero();
                            for k in 0..=n {
                                let da = d_with_identity(k, &ma);
                                let db = d_with_identity(n - k, &mb);
                                rhs += &quasi_shuffle_unbounded(&da, &db).0;
                            }
                            if lhs.0 != rhs {
                                return (
                                    checked,
                                    Some(format!("d_{n} on M{a} · M{b}: {} vs {}", lhs.render(), rhs.render(Basis::M))),
                                );
                            }
                        }
                    }
                }
                (checked, None)
            });
            report.run(total, "d_1 derivation law", || {
                let mut checked = 0;
                for a in compositions_up_to(total) {
                    for b in compositions_of(total - a.weight()) {
                        checked += 1;
                        let (ma, mb) = (QSPoly::monomial(a.clone()), QSPoly::monomial(b.clone()));
                        let lhs = d_qsymm(1, &quasi_shuffle_unbounded(&ma, &mb));
                        let rhs = &quasi_shuffle_unbounded(&ma, &d_qsymm(1, &mb))
                            + &quasi_shuffle_unbounded(&d_qsymm(1, &ma), &mb);
                        if lhs != rhs {
                            return (checked, Some(format!("M{a} · M{b}")));
                        }
                    }
                }
                (checked, None)
            });
        }
        Ok(report)
    }

    /// Compares the quasi-shuffle recursion with the duality-defined product on every pair of
    /// monomials of total weight `<= max_degree`.
    pub fn verify_quasi_shuffle_duality(&self, max_degree: usize) -> Result<Report> {
        self.check_degree(max_degree)?;
        let mut report = Report::new("qsymm-duality");
        for total in 0..=max_degree {
            report.run(total, "quasi-shuffle = dual of coproduct", || {
                let mut checked = 0;
                for a in compositions_up_to(total) {
                    for b in compositions_of(total - a.weight()) {
                        checked += 1;
                        let fast = quasi_shuffle_unbounded(
                            &QSPoly::monomial(a.clone()),
                            &QSPoly::monomial(b.clone()),
                        );
                        if fast != quasi_shuffle_by_duality(&a, &b) {
                            return (checked, Some(format!("M{a} · M{b}")));
                        }
                    }
                }
                (checked, None)
            });
        }
        Ok(report)
    }
}
