//! Coproducts and counit of NSymm and LieHopf, primitivity, and the bialgebra laws.
//!
//! Both algebras are free on generators indexed by `1, 2, 3, ...`, so a coproduct is fixed by
//! its value on generators and extended to words multiplicatively:
//!
//! * NSymm: `Z_n ↦ Σ_{i+j=n} Z_i ⊗ Z_j` with `Z_0 = 1`.
//! * LieHopf: `U_n ↦ U_n ⊗ 1 + 1 ⊗ U_n`.
//!
//! The counit of either family picks out the coefficient of the empty word.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::Result;
use crate::freealg::{
    compositions_of, compositions_up_to, Basis, Composition, NCPoly, Rational, Tensor2, Tensor3,
};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HopfFamily {
    NSymm,
    LieHopf,
}

impl HopfFamily {
    pub fn basis(self) -> Basis {
        match self {
            HopfFamily::NSymm => Basis::Z,
            HopfFamily::LieHopf => Basis::U,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HopfFamily::NSymm => "nsymm",
            HopfFamily::LieHopf => "liehopf",
        }
    }
}

fn unit_word() -> Composition {
    Composition::empty()
}

/// Coproduct of the single generator with index `n`.
pub fn generator_coproduct(n: usize, family: HopfFamily) -> Tensor2 {
    let one = Rational::one();
    match family {
        HopfFamily::NSymm => Tensor2::from_terms((0..=n).map(|i| {
            let left = if i == 0 { unit_word() } else { Composition::single(i) };
            let right = if i == n { unit_word() } else { Composition::single(n - i) };
            ((left, right), one.clone())
        })),
        HopfFamily::LieHopf => Tensor2::from_terms([
            ((Composition::single(n), unit_word()), one.clone()),
            ((unit_word(), Composition::single(n)), one),
        ]),
    }
}

/// Coproduct of a single word, as the product of its letters' coproducts.
pub fn word_coproduct(w: &Composition, family: HopfFamily) -> Tensor2 {
    w.parts()
        .iter()
        .fold(Tensor2::one(), |acc, &n| &acc * &generator_coproduct(n, family))
}

fn coproduct_unbounded(p: &NCPoly, family: HopfFamily) -> Tensor2 {
    p.flat_map(|w| word_coproduct(w, family))
}

pub fn counit(p: &NCPoly) -> Rational {
    p.coeff(&unit_word())
}

/// `(ε ⊗ id)` applied to a tensor.
pub fn counit_left(t: &Tensor2) -> NCPoly {
    NCPoly::from_terms(
        t.terms()
            .filter(|((a, _), _)| a.is_empty())
            .map(|((_, b), c)| (b.clone(), c.clone())),
    )
}

/// `(id ⊗ ε)` applied to a tensor.
pub fn counit_right(t: &Tensor2) -> NCPoly {
    NCPoly::from_terms(
        t.terms()
            .filter(|((_, b), _)| b.is_empty())
            .map(|((a, _), c)| (a.clone(), c.clone())),
    )
}

/// `(μ ⊗ id)` applied to a tensor.
pub fn coproduct_left_leg(t: &Tensor2, family: HopfFamily) -> Tensor3 {
    t.flat_map(|(a, b)| {
        word_coproduct(a, family).map_keys(|(x, y)| (x.clone(), y.clone(), b.clone()))
    })
}

/// `(id ⊗ μ)` applied to a tensor.
pub fn coproduct_right_leg(t: &Tensor2, family: HopfFamily) -> Tensor3 {
    t.flat_map(|(a, b)| {
        word_coproduct(b, family).map_keys(|(x, y)| (a.clone(), x.clone(), y.clone()))
    })
}

/// Result of a primitivity test. `witness` is the first nonzero term of
/// `μ(p) − p⊗1 − 1⊗p` in term order, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub witness: Option<((Composition, Composition), Rational)>,
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        self.witness.is_none()
    }
}

/// `μ(p) − p⊗1 − 1⊗p`; zero exactly when `p` is primitive.
pub fn primitivity_defect(p: &NCPoly, family: HopfFamily) -> Tensor2 {
    let one = NCPoly::one();
    &(&coproduct_unbounded(p, family) - &p.tensor(&one)) - &one.tensor(p)
}

impl Engine {
    pub fn coproduct(&self, p: &NCPoly, family: HopfFamily) -> Result<Tensor2> {
        self.check_degree(p.degree())?;
        Ok(coproduct_unbounded(p, family))
    }

    pub fn primitivity(&self, p: &NCPoly, family: HopfFamily) -> Result<Primitivity> {
        self.check_degree(p.degree())?;
        let defect = primitivity_defect(p, family);
        Ok(Primitivity {
            witness: defect
                .leading_term()
                .map(|(k, c)| (k.clone(), c.clone())),
        })
    }

    pub fn is_primitive(&self, p: &NCPoly, family: HopfFamily) -> Result<bool> {
        Ok(self.primitivity(p, family)?.is_primitive())
    }

    /// Coassociativity, both counit laws and multiplicativity of the coproduct, for both
    /// families, on every word of weight `<= max_degree` (and every pair of words of total
    /// weight `<= max_degree` for multiplicativity).
    pub fn verify_hopf_laws(&self, max_degree: usize) -> Result<Report> {
        self.check_degree(max_degree)?;
        let mut report = Report::new("hopf-laws");
        for family in [HopfFamily::NSymm, HopfFamily::LieHopf] {
            let basis = family.basis();
            for n in 1..=max_degree {
                let words = compositions_of(n);
                report.run(n, format!("coassociativity ({})", family.name()), || {
                    let mut witness = None;
                    for w in &words {
                        let delta = word_coproduct(w, family);
                        let lhs = coproduct_left_leg(&delta, family);
                        let rhs = coproduct_right_leg(&delta, family);
                        if lhs != rhs {
                            witness = Some(format!("word {}", basis_word(w, basis)));
                            break;
                        }
                    }
                    (words.len() as u64, witness)
                });
                report.run(n, format!("counit ({})", family.name()), || {
                    let mut witness = None;
                    for w in &words {
                        let delta = word_coproduct(w, family);
                        let p = NCPoly::monomial(w.clone(), Rational::one());
                        if counit_left(&delta) != p || counit_right(&delta) != p {
                            witness = Some(format!("word {}", basis_word(w, basis)));
                            break;
                        }
                    }
                    (words.len() as u64, witness)
                });
                report.run(n, format!("multiplicativity ({})", family.name()), || {
                    let mut checked = 0;
                    let mut witness = None;
                    'outer: for a in compositions_up_to(n) {
                        for b in compositions_of(n - a.weight()) {
                            checked += 1;
                            let lhs = word_coproduct(&a.concat(&b), family);
                            let rhs = &word_coproduct(&a, family) * &word_coproduct(&b, family);
                            if lhs != rhs {
                                witness = Some(format!(
                                    "pair {} , {}",
                                    basis_word(&a, basis),
                                    basis_word(&b, basis)
                                ));
                                break 'outer;
                            }
                        }
                    }
                    (checked, witness)
                });
            }
        }
        Ok(report)
    }
}

fn basis_word(w: &Composition, basis: Basis) -> String {
    NCPoly::monomial(w.clone(), Rational::one()).render(basis)
}

/// `pq − qp`.
pub fn commutator(p: &NCPoly, q: &NCPoly) -> NCPoly {
    &(p * q) - &(q * p)
}
