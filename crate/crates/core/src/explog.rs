//! The exponential change of generators between NSymm and LieHopf over the rationals,
//! from `1 + Σ Z_n t^n = exp(Σ U_n t^n)`:
//!
//! ```text
//! Z_n = Σ_{r ⊨ n} U_{r_1}···U_{r_m} / m!
//! U_n = Σ_{r ⊨ n} (−1)^(m+1) Z_{r_1}···Z_{r_m} / m
//! ```

use num_bigint::BigInt;
use num_traits::One;

use crate::engine::Engine;
use crate::error::Result;
use crate::freealg::{compositions_of, format_rational, Basis, Composition, NCPoly, Rational};
use crate::hopf::{word_coproduct, HopfFamily};
use crate::report::Report;

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

impl Engine {
    /// `Z_n` as a polynomial in the `U` alphabet.
    pub fn z_of_u(&self, n: usize) -> Result<NCPoly> {
        self.check_index(n)?;
        Ok(self.z_of_u.get(n, |_, k| {
            NCPoly::from_terms(compositions_of(k).into_iter().map(|w| {
                let c = Rational::new(BigInt::one(), factorial(w.len()));
                (w, c)
            }))
        }))
    }

    /// `U_n` as a polynomial in the `Z` alphabet.
    pub fn u_of_z(&self, n: usize) -> Result<NCPoly> {
        self.check_index(n)?;
        Ok(self.u_of_z.get(n, |_, k| {
            NCPoly::from_terms(compositions_of(k).into_iter().map(|w| {
                let m = w.len() as i64;
                let sign = if m % 2 == 1 { 1 } else { -1 };
                (w, Rational::new(BigInt::from(sign), BigInt::from(m)))
            }))
        }))
    }

    /// Rewrites a `Z`-alphabet polynomial in the `U` alphabet.
    pub fn z_to_u(&self, p: &NCPoly) -> Result<NCPoly> {
        self.check_degree(p.degree())?;
        Ok(p.substitute(|k| self.z_of_u(k).expect("letter within checked degree")))
    }

    /// Rewrites a `U`-alphabet polynomial in the `Z` alphabet.
    pub fn u_to_z(&self, p: &NCPoly) -> Result<NCPoly> {
        self.check_degree(p.degree())?;
        Ok(p.substitute(|k| self.u_of_z(k).expect("letter within checked degree")))
    }

    /// Checks, for each `n <= max_degree`, that the two substitutions are mutually inverse on
    /// the generators and that `Z_n ↦ z_of_u(n)` intertwines the NSymm and LieHopf coproducts.
    pub fn verify_iso(&self, max_degree: usize) -> Result<Report> {
        self.check_degree(max_degree)?;
        let mut report = Report::new("iso");
        for n in 1..=max_degree {
            report.run(n, "round-trip U(Z(U_n)) = U_n", || {
                let back = self.z_to_u(&self.u_of_z(n).expect("in range")).expect("in range");
                let target = NCPoly::generator(n);
                (1, (back != target).then(|| witness(&back, &target, Basis::U)))
            });
            report.run(n, "round-trip Z(U(Z_n)) = Z_n", || {
                let back = self.u_to_z(&self.z_of_u(n).expect("in range")).expect("in range");
                let target = NCPoly::generator(n);
                (1, (back != target).then(|| witness(&back, &target, Basis::Z)))
            });
            report.run(n, "coalgebra morphism", || {
                let image = self.z_of_u(n).expect("in range");
                let lhs = image.flat_map(|w| word_coproduct(w, HopfFamily::LieHopf));
                let delta = word_coproduct(&Composition::single(n), HopfFamily::NSymm);
                let to_u = |w: &Composition| {
                    self.z_to_u(&NCPoly::monomial(w.clone(), Rational::one()))
                        .expect("in range")
                };
                let rhs = delta.map_legs(to_u, to_u);
                let diff = &lhs - &rhs;
                let w = diff.leading_term().map(|((a, b), c)| {
                    format!(
                        "{}·{}⊗{}",
                        format_rational(c),
                        NCPoly::monomial(a.clone(), Rational::one()).render(Basis::U),
                        NCPoly::monomial(b.clone(), Rational::one()).render(Basis::U)
                    )
                });
                (1, w)
            });
        }
        Ok(report)
    }
}

fn witness(got: &NCPoly, expected: &NCPoly, basis: Basis) -> String {
    let diff = got - expected;
    format!("difference {}", diff.render(basis))
}
