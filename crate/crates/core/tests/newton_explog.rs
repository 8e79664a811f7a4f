//! Newton primitives and the exp/log isomorphism against power-series oracles computed
//! here, independently of the library's recursions and closed forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nsymm::freealg::{compositions_of, integer, rational, Composition, NCPoly, Rational};
use nsymm::newton::c_coeff;
use nsymm::{Engine, HopfFamily, PBasisPoly};

/// Graded series `Σ_k a_k t^k` truncated at `t^n`, with `a_k` homogeneous of weight `k`.
type Series = Vec<NCPoly>;

fn series_mul(a: &Series, b: &Series, n: usize) -> Series {
    (0..=n)
        .map(|k| {
            let mut acc = NCPoly::zero();
            for i in 0..=k {
                acc += &(&a[i] * &b[k - i]);
            }
            acc
        })
        .collect()
}

fn generator_series(n: usize) -> Series {
    let mut s = vec![NCPoly::zero()];
    s.extend((1..=n).map(NCPoly::generator));
    s
}

/// `exp(X)` for a series with zero constant term.
fn series_exp(x: &Series, n: usize) -> Series {
    let mut out: Series = vec![NCPoly::zero(); n + 1];
    out[0] = NCPoly::one();
    let mut power = out.clone();
    let mut fact = BigInt::one();
    for m in 1..=n {
        power = series_mul(&power, x, n);
        fact *= m;
        let scale = Rational::new(BigInt::one(), fact.clone());
        for k in 0..=n {
            out[k] += &power[k].scale(&scale);
        }
    }
    out
}

/// `log(1 + Y)` for a series with zero constant term.
fn series_log1p(y: &Series, n: usize) -> Series {
    let mut out: Series = vec![NCPoly::zero(); n + 1];
    let mut power: Series = vec![NCPoly::zero(); n + 1];
    power[0] = NCPoly::one();
    for m in 1..=n {
        power = series_mul(&power, y, n);
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let scale = rational(sign, m as i64);
        for k in 0..=n {
            out[k] += &power[k].scale(&scale);
        }
    }
    out
}

/// `(1 + Y)^{-1}` for a series with zero constant term.
fn series_inverse(y: &Series, n: usize) -> Series {
    let mut out: Series = vec![NCPoly::zero(); n + 1];
    let mut power: Series = vec![NCPoly::zero(); n + 1];
    power[0] = NCPoly::one();
    for m in 0..=n {
        if m > 0 {
            power = series_mul(&power, y, n);
        }
        let sign = integer(if m % 2 == 0 { 1 } else { -1 });
        for k in 0..=n {
            out[k] += &power[k].scale(&sign);
        }
    }
    out
}

/// Newton primitives from `Z'(t) = Z(t) P(t)`, i.e. `P(t) = Z(t)^{-1} Z'(t)`.
fn p_left_oracle(n: usize) -> NCPoly {
    let z = generator_series(n);
    let inv = series_inverse(&z, n);
    let mut p = NCPoly::zero();
    for j in 1..=n {
        p += &(&inv[n - j] * &NCPoly::generator(j).scale(&integer(j as i64)));
    }
    p
}

/// `P'(t) = Z'(t) Z(t)^{-1}`.
fn p_right_oracle(n: usize) -> NCPoly {
    let z = generator_series(n);
    let inv = series_inverse(&z, n);
    let mut p = NCPoly::zero();
    for j in 1..=n {
        p += &(&NCPoly::generator(j).scale(&integer(j as i64)) * &inv[n - j]);
    }
    p
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[test]
fn newton_primitives_match_series_oracle() {
    let e = Engine::new(10);
    for n in 1..=8 {
        assert_eq!(e.newton_p_left(n).unwrap(), p_left_oracle(n), "P_{n}");
        assert_eq!(e.newton_p_right(n).unwrap(), p_right_oracle(n), "P'_{n}");
    }
}

#[test]
fn explicit_form_equals_left_recursion_to_ten() {
    let e = Engine::new(10);
    for n in 1..=10 {
        assert_eq!(e.newton_p_explicit(n).unwrap(), e.newton_p_left(n).unwrap(), "n = {n}");
    }
}

#[test]
fn newton_primitives_are_primitive() {
    let e = Engine::default();
    for n in 1..=8 {
        assert!(e.is_primitive(&e.newton_p_left(n).unwrap(), HopfFamily::NSymm).unwrap());
        assert!(e.is_primitive(&e.newton_p_right(n).unwrap(), HopfFamily::NSymm).unwrap());
    }
    // Z_2 alone is not, so the check has teeth
    assert!(!e.is_primitive(&NCPoly::generator(2), HopfFamily::NSymm).unwrap());
}

#[test]
fn leading_terms_are_n_times_generator() {
    let e = Engine::default();
    for n in 1..=8 {
        for p in [e.newton_p_left(n).unwrap(), e.newton_p_right(n).unwrap()] {
            assert_eq!(p.coeff(&Composition::single(n)), integer(n as i64));
            assert!(p.is_integral());
            assert!(p.is_homogeneous_of(n));
        }
    }
}

#[test]
fn right_primitives_are_reversed_left_primitives() {
    let e = Engine::default();
    for n in 1..=8 {
        assert_eq!(e.newton_p_right(n).unwrap(), e.newton_p_left(n).unwrap().reverse_words());
    }
}

#[test]
fn z_in_pprime_small_cases() {
    let e = Engine::default();
    let z2 = e.z_in_pprime(2).unwrap();
    assert_eq!(z2.render(), "(1/2)·P'2 + (1/2)·P'1·P'1");
    // Z_3 = P'3/3 + P'1P'2/6 + P'2P'1/3 + P'1P'1P'1/6
    let expected = NCPoly::from_terms([
        (Composition::from([3]), rational(1, 3)),
        (Composition::from([1, 2]), rational(1, 6)),
        (Composition::from([2, 1]), rational(1, 3)),
        (Composition::from([1, 1, 1]), rational(1, 6)),
    ]);
    assert_eq!(e.z_in_pprime(3).unwrap().0, expected);
}

/// Substitutes the series-oracle `P'_k` for each letter of a `P'`-basis polynomial.
fn substitute_oracle(p: &PBasisPoly) -> NCPoly {
    p.0.substitute(p_right_oracle)
}

#[test]
fn z_in_pprime_expands_back_to_generator() {
    let e = Engine::default();
    for n in 1..=8 {
        let z = e.z_in_pprime(n).unwrap();
        assert_eq!(substitute_oracle(&z), NCPoly::generator(n), "n = {n}");
        assert_eq!(e.pprime_to_z(&z).unwrap(), NCPoly::generator(n));
        assert_eq!(e.z_in_pprime_via_c(n).unwrap(), z);
    }
}

#[test]
fn z_in_pprime_has_denominators() {
    let e = Engine::default();
    assert!(e.z_in_pprime(1).unwrap().0.is_integral());
    for n in 2..=8 {
        let z = e.z_in_pprime(n).unwrap();
        assert!(!z.0.is_integral(), "n = {n}");
        // the coefficient of P'_n is exactly 1/n
        assert_eq!(z.0.coeff(&Composition::single(n)), rational(1, n as i64));
    }
}

#[test]
fn c_coefficients_sum_to_one() {
    // sending every P'_k to t^k sends Z_n to the t^n coefficient of exp(Σ t^k/k) = 1/(1-t)
    for n in 1..=10 {
        let total: Rational = compositions_of(n).iter().map(|w| c_coeff(w).unwrap()).sum();
        assert_eq!(total, Rational::one(), "n = {n}");
    }
    assert!(c_coeff(&Composition::empty()).is_err());
}

#[test]
fn explog_match_series_oracle() {
    let e = Engine::default();
    for n in 1..=8 {
        let exp = series_exp(&generator_series(n), n);
        assert_eq!(e.z_of_u(n).unwrap(), exp[n], "z_of_u({n})");
        let log = series_log1p(&generator_series(n), n);
        assert_eq!(e.u_of_z(n).unwrap(), log[n], "u_of_z({n})");
    }
}

#[test]
fn explog_round_trips_to_eight() {
    let e = Engine::default();
    for n in 1..=8 {
        let g = NCPoly::generator(n);
        assert_eq!(e.z_to_u(&e.u_of_z(n).unwrap()).unwrap(), g);
        assert_eq!(e.u_to_z(&e.z_of_u(n).unwrap()).unwrap(), g);
    }
}

#[test]
fn explog_denominators_divide_factorial() {
    let e = Engine::default();
    for n in 1..=8 {
        let z = e.z_of_u(n).unwrap();
        assert!(factorial(n).is_multiple_of(&z.denominator_lcm()));
        let u = e.u_of_z(n).unwrap();
        let lcm_1_to_n = (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
        assert!(lcm_1_to_n.is_multiple_of(&u.denominator_lcm()));
    }
}

#[test]
fn logarithm_images_are_primitive() {
    let e = Engine::default();
    for n in 1..=8 {
        assert!(e.is_primitive(&e.u_of_z(n).unwrap(), HopfFamily::NSymm).unwrap());
    }
}

#[test]
fn iso_suite_passes_to_six() {
    let report = Engine::default().verify_iso(6).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.records.len(), 18);
}

fn z_poly(max: usize) -> impl Strategy<Value = NCPoly> {
    let word = prop::collection::vec(1usize..=max, 1..=max)
        .prop_filter_map("weight", move |v| {
            let c = Composition::new(v).ok()?;
            (c.weight() <= max).then_some(c)
        });
    prop::collection::vec((word, -5i64..=5, 1i64..=4), 0..5).prop_map(|terms| {
        NCPoly::from_terms(terms.into_iter().map(|(w, n, d)| (w, rational(n, d))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitutions_are_mutually_inverse(p in z_poly(6)) {
        let e = Engine::default();
        prop_assert_eq!(e.u_to_z(&e.z_to_u(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(e.z_to_u(&e.u_to_z(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn z_to_u_is_a_coalgebra_morphism(p in z_poly(5)) {
        let e = Engine::default();
        let lhs = e.coproduct(&e.z_to_u(&p).unwrap(), HopfFamily::LieHopf).unwrap();
        let to_u = |w: &Composition| e.z_to_u(&NCPoly::monomial(w.clone(), Rational::one())).unwrap();
        let rhs = e.coproduct(&p, HopfFamily::NSymm).unwrap().map_legs(to_u, to_u);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pprime_expansion_round_trips(p in z_poly(6)) {
        // any Z-polynomial, rewritten letter by letter in P', maps back to itself
        let e = Engine::default();
        let in_p = p.substitute(|k| e.z_in_pprime(k).unwrap().0);
        prop_assert_eq!(e.pprime_to_z(&PBasisPoly(in_p)).unwrap(), p);
    }

    #[test]
    fn counit_kills_primitives(n in 1usize..=8) {
        let e = Engine::default();
        prop_assert!(nsymm::hopf::counit(&e.newton_p_left(n).unwrap()).is_zero());
    }
}
