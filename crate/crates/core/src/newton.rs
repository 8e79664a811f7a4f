//! Newton primitives of NSymm and the expansion of `Z_n` in the right primitives `P'_k`.
//!
//! ```text
//! P_n  = n·Z_n − (Z_{n−1}P_1 + … + Z_1P_{n−1})
//! P'_n = n·Z_n − (P'_1Z_{n−1} + … + P'_{n−1}Z_1)
//! ```
//!
//! `P_n` and `P'_n` are returned in the `Z`-word basis. Expansions of `Z_n` in the `P'`
//! alphabet are returned as [`PBasisPoly`].

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::freealg::{
    compositions_of, format_rational, integer, Basis, Composition, NCPoly, PolyDocument, Rational,
};
use crate::hopf::HopfFamily;
use crate::report::Report;

/// A polynomial whose word `(r_1, …, r_m)` stands for `P'_{r_1} ··· P'_{r_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PBasisPoly(pub NCPoly);

impl PBasisPoly {
    pub fn as_poly(&self) -> &NCPoly {
        &self.0
    }

    pub fn render(&self) -> String {
        self.0.render(Basis::PPrime)
    }

    pub fn document(&self) -> PolyDocument {
        PolyDocument {
            basis: Basis::PPrime,
            terms: self.0.clone(),
        }
    }
}

/// `c_{r_1,…,r_m} = Π_k 1 / (r_k + r_{k+1} + … + r_m)`, the product of reciprocal suffix sums.
pub fn c_coeff(w: &Composition) -> Result<Rational> {
    if w.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let mut suffix = 0i64;
    let mut out = Rational::one();
    for &r in w.parts().iter().rev() {
        suffix += r as i64;
        out /= integer(suffix);
    }
    Ok(out)
}

impl Engine {
    /// Left Newton primitive `P_n`, via the left recursion.
    pub fn newton_p_left(&self, n: usize) -> Result<NCPoly> {
        self.check_index(n)?;
        Ok(self.p_left.get(n, |earlier, k| {
            let mut p = NCPoly::generator(k).scale(&integer(k as i64));
            for (i, p_i) in earlier.iter().enumerate() {
                // Z_{k-i} P_i, with earlier[i] = P_{i+1}
                let z = NCPoly::generator(k - (i + 1));
                p -= &(&z * p_i);
            }
            p
        }))
    }

    /// Right Newton primitive `P'_n`, via the right recursion.
    pub fn newton_p_right(&self, n: usize) -> Result<NCPoly> {
        self.check_index(n)?;
        Ok(self.p_right.get(n, |earlier, k| {
            let mut p = NCPoly::generator(k).scale(&integer(k as i64));
            for (i, p_i) in earlier.iter().enumerate() {
                let z = NCPoly::generator(k - (i + 1));
                p -= &(p_i * &z);
            }
            p
        }))
    }

    /// Closed form `P_n = Σ (−1)^(m+1) · i_m · Z_{i_1}···Z_{i_m}` over compositions of `n`.
    pub fn newton_p_explicit(&self, n: usize) -> Result<NCPoly> {
        self.check_index(n)?;
        Ok(NCPoly::from_terms(compositions_of(n).into_iter().map(|w| {
            let m = w.len();
            let last = w.last().expect("compositions of n >= 1 are nonempty") as i64;
            let sign = if m % 2 == 1 { 1 } else { -1 };
            (w, integer(sign * last))
        })))
    }

    /// `Z_n` in the `P'` alphabet, by solving the right recursion for `Z_n`:
    /// `Z_n = (1/n)(P'_n + Σ_{i=1}^{n−1} P'_i · Z_{n−i})`.
    pub fn z_in_pprime(&self, n: usize) -> Result<PBasisPoly> {
        self.check_index(n)?;
        Ok(PBasisPoly(self.z_in_pprime.get(n, |earlier, k| {
            let mut z = NCPoly::generator(k);
            for i in 1..k {
                z += &(&NCPoly::generator(i) * &earlier[k - i - 1]);
            }
            z.scale(&Rational::new(1.into(), (k as i64).into()))
        })))
    }

    /// `Z_n` in the `P'` alphabet from the closed-form coefficients `c_r`.
    pub fn z_in_pprime_via_c(&self, n: usize) -> Result<PBasisPoly> {
        self.check_index(n)?;
        let terms = compositions_of(n)
            .into_iter()
            .map(|w| {
                let c = c_coeff(&w)?;
                Ok((w, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PBasisPoly(NCPoly::from_terms(terms)))
    }

    /// Substitutes `P'_k ↦ newton_p_right(k)` into a `P'`-basis polynomial, giving its
    /// `Z`-basis expansion.
    pub fn pprime_to_z(&self, p: &PBasisPoly) -> Result<NCPoly> {
        self.check_degree(p.0.degree())?;
        Ok(p.0.substitute(|k| {
            self.newton_p_right(k)
                .expect("letters of a checked-degree polynomial are in range")
        }))
    }
}

impl Engine {
    /// Primitivity in NSymm of `P_n`, `P'_n` and the logarithm images `u_of_z(n)`.
    pub fn verify_primitivity(&self, max_degree: usize) -> Result<Report> {
        self.check_degree(max_degree)?;
        let mut report = Report::new("primitivity");
        for n in 1..=max_degree {
            let candidates = [
                ("P_n primitive", self.newton_p_left(n)?),
                ("P'_n primitive", self.newton_p_right(n)?),
                ("u_of_z(n) primitive", self.u_of_z(n)?),
            ];
            for (law, p) in candidates {
                report.run(n, law, || {
                    let prim = self.primitivity(&p, HopfFamily::NSymm).expect("in range");
                    let witness = prim.witness.map(|((a, b), c)| {
                        format!(
                            "defect term {}·{}⊗{}",
                            format_rational(&c),
                            word_label(&a),
                            word_label(&b)
                        )
                    });
                    (1, witness)
                });
            }
        }
        Ok(report)
    }

    /// Agreement of the independent constructions of the Newton primitives and of the
    /// `P'` expansion of `Z_n`.
    pub fn verify_newton_consistency(&self, max_degree: usize) -> Result<Report> {
        self.check_degree(max_degree)?;
        let mut report = Report::new("newton-consistency");
        for n in 1..=max_degree {
            report.run(n, "explicit = left recursion", || {
                let a = self.newton_p_explicit(n).expect("in range");
                let b = self.newton_p_left(n).expect("in range");
                (1, diff_witness(&a, &b))
            });
            report.run(n, "right = reversed left", || {
                let a = self.newton_p_right(n).expect("in range");
                let b = self.newton_p_left(n).expect("in range").reverse_words();
                (1, diff_witness(&a, &b))
            });
            report.run(n, "z_in_pprime = z_in_pprime_via_c", || {
                let a = self.z_in_pprime(n).expect("in range");
                let b = self.z_in_pprime_via_c(n).expect("in range");
                (1, diff_witness(&a.0, &b.0).map(|w| format!("P' basis {w}")))
            });
            report.run(n, "z_in_pprime substitutes back to Z_n", || {
                let back = self.pprime_to_z(&self.z_in_pprime(n).expect("in range")).expect("in range");
                (1, diff_witness(&back, &NCPoly::generator(n)))
            });
            if n >= 2 {
                report.run(n, "z_in_pprime not integral", || {
                    let z = self.z_in_pprime(n).expect("in range");
                    let w = z.0.is_integral().then(|| format!("integral: {}", z.render()));
                    (1, w)
                });
            }
        }
        Ok(report)
    }
}

fn word_label(w: &Composition) -> String {
    NCPoly::monomial(w.clone(), Rational::one()).render(Basis::Z)
}

fn diff_witness(a: &NCPoly, b: &NCPoly) -> Option<String> {
    let diff = a - b;
    (!diff.is_zero()).then(|| format!("difference {}", diff.render(Basis::Z)))
}
