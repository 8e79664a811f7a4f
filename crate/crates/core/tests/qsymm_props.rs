use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;

use nsymm::freealg::{compositions_of, compositions_up_to, rational, Composition, NCPoly, Rational};
use nsymm::hopf::word_coproduct;
use nsymm::qsymm::{
    alpha, d_qsymm, d_qsymm_via_coproduct, deconcat, pairing, pairing2, quasi_shuffle_by_duality,
    quasi_shuffle_words,
};
use nsymm::{Engine, HopfFamily, QSPoly};

/// Quasi-shuffle by brute force: `M_a M_b = Σ M_c`, one term for each pair of position sets
/// `A, B` covering `c`, with `|A| = len a`, `|B| = len b`, and `c_i` the sum of the parts of
/// `a` and `b` placed at `i`.
fn brute_quasi_shuffle(a: &Composition, b: &Composition) -> BTreeMap<Composition, u64> {
    let mut out = BTreeMap::new();
    let (p, q) = (a.len(), b.len());
    for c in compositions_of(a.weight() + b.weight()) {
        let l = c.len();
        if l < p.max(q) || l > p + q {
            continue;
        }
        for amask in 0u32..(1 << l) {
            if amask.count_ones() as usize != p {
                continue;
            }
            for bmask in 0u32..(1 << l) {
                if bmask.count_ones() as usize != q || (amask | bmask) != (1 << l) - 1 {
                    continue;
                }
                let (mut ia, mut ib) = (0, 0);
                let ok = (0..l).all(|i| {
                    let mut v = 0;
                    if amask >> i & 1 == 1 {
                        v += a.parts()[ia];
                        ia += 1;
                    }
                    if bmask >> i & 1 == 1 {
                        v += b.parts()[ib];
                        ib += 1;
                    }
                    v == c.parts()[i]
                });
                if ok {
                    *out.entry(c.clone()).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

fn comp(parts: &[usize]) -> Composition {
    Composition::from(parts)
}

fn qs(terms: &[(&[usize], i64)]) -> QSPoly {
    QSPoly(NCPoly::from_terms(
        terms.iter().map(|(w, c)| (comp(w), Rational::from_integer((*c).into()))),
    ))
}

fn all_up_to(max: usize) -> Vec<Composition> {
    let v = compositions_up_to(max);
    assert!(v[0].is_empty());
    v
}

#[test]
fn small_products() {
    let e = Engine::default();
    let m = |w: &[usize]| QSPoly::monomial(comp(w));
    assert_eq!(e.quasi_shuffle(&m(&[1]), &m(&[1])).unwrap(), qs(&[(&[2], 1), (&[1, 1], 2)]));
    assert_eq!(
        e.quasi_shuffle(&m(&[1]), &m(&[2])).unwrap(),
        qs(&[(&[3], 1), (&[1, 2], 1), (&[2, 1], 1)])
    );
    assert_eq!(
        e.quasi_shuffle(&m(&[1, 2]), &m(&[3])).unwrap(),
        qs(&[(&[4, 2], 1), (&[1, 5], 1), (&[3, 1, 2], 1), (&[1, 3, 2], 1), (&[1, 2, 3], 1)])
    );
}

#[test]
fn quasi_shuffle_matches_brute_force_and_duality_to_weight_six() {
    let words = all_up_to(6);
    let mut pairs = 0;
    for a in &words {
        for b in &words {
            if a.weight() + b.weight() > 6 {
                continue;
            }
            let lib = quasi_shuffle_words(a, b);
            assert_eq!(lib, brute_quasi_shuffle(a, b), "{a} * {b}");
            let as_poly = QSPoly(NCPoly::from_terms(
                lib.iter().map(|(c, n)| (c.clone(), Rational::from_integer((*n).into()))),
            ));
            assert_eq!(as_poly, quasi_shuffle_by_duality(a, b), "{a} * {b}");
            pairs += 1;
        }
    }
    let count = |w: usize| if w == 0 { 1 } else { 1usize << (w - 1) };
    let expected: usize = (0..=6)
        .flat_map(|wa| (0..=6 - wa).map(move |wb| count(wa) * count(wb)))
        .sum();
    assert_eq!(pairs, expected);
}

#[test]
fn hs_law_exhaustive_to_weight_six() {
    let e = Engine::default();
    let words = all_up_to(6);
    for a in &words {
        for b in &words {
            if a.weight() + b.weight() > 6 {
                continue;
            }
            let (qa, qb) = (QSPoly::monomial(a.clone()), QSPoly::monomial(b.clone()));
            let ab = e.quasi_shuffle(&qa, &qb).unwrap();
            for n in 1..=6 {
                let lhs = d_qsymm(n, &ab);
                let mut rhs = QSPoly::zero();
                for k in 0..=n {
                    let dk = if k == 0 { qa.clone() } else { d_qsymm(k, &qa) };
                    let dnk = if k == n { qb.clone() } else { d_qsymm(n - k, &qb) };
                    rhs = &rhs + &e.quasi_shuffle(&dk, &dnk).unwrap();
                }
                assert_eq!(lhs, rhs, "d_{n}({a} * {b})");
            }
        }
    }
    let report = e.verify_hs_qsymm(6).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn d_strips_final_part() {
    let q = qs(&[(&[1, 2], 1), (&[2], 3), (&[2, 1], 5)]);
    assert_eq!(d_qsymm(2, &q), qs(&[(&[1], 1), (&[], 3)]));
    assert_eq!(d_qsymm(1, &q), qs(&[(&[2], 5)]));
    assert!(d_qsymm(3, &q).is_zero());
    for c in all_up_to(5) {
        let m = QSPoly::monomial(c);
        for n in 1..=5 {
            assert_eq!(d_qsymm(n, &m), d_qsymm_via_coproduct(n, &m));
        }
    }
}

#[test]
fn alpha_reads_single_part_coefficient() {
    let q = qs(&[(&[3], 4), (&[1, 2], 1)]);
    assert_eq!(alpha(3, &q), rational(4, 1));
    assert!(alpha(2, &q).is_zero());
}

fn qs_poly(max: usize) -> impl Strategy<Value = QSPoly> {
    let word = prop::collection::vec(1usize..=max, 0..=max).prop_filter_map("weight", move |v| {
        let c = Composition::new(v).ok()?;
        (c.weight() <= max).then_some(c)
    });
    prop::collection::vec((word, -4i64..=4, 1i64..=3), 0..4).prop_map(|terms| {
        QSPoly(NCPoly::from_terms(terms.into_iter().map(|(w, n, d)| (w, rational(n, d)))))
    })
}

fn z_word(max: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..=max, 0..=max).prop_filter_map("weight", move |v| {
        let c = Composition::new(v).ok()?;
        (c.weight() <= max).then_some(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_commutative(a in qs_poly(3), b in qs_poly(3)) {
        let e = Engine::default();
        prop_assert_eq!(e.quasi_shuffle(&a, &b).unwrap(), e.quasi_shuffle(&b, &a).unwrap());
    }

    #[test]
    fn product_is_associative_and_unital(a in qs_poly(2), b in qs_poly(2), c in qs_poly(2)) {
        let e = Engine::default();
        let left = e.quasi_shuffle(&e.quasi_shuffle(&a, &b).unwrap(), &c).unwrap();
        let right = e.quasi_shuffle(&a, &e.quasi_shuffle(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(e.quasi_shuffle(&a, &QSPoly::one()).unwrap(), a);
    }

    #[test]
    fn deconcat_is_coassociative(q in qs_poly(6)) {
        let t = deconcat(&q);
        let left = t.flat_map(|(a, b)| {
            deconcat(&QSPoly::monomial(a.clone()))
                .map_keys(|(x, y)| (x.clone(), y.clone(), b.clone()))
        });
        let right = t.flat_map(|(a, b)| {
            deconcat(&QSPoly::monomial(b.clone()))
                .map_keys(|(x, y)| (a.clone(), x.clone(), y.clone()))
        });
        prop_assert_eq!(left, right);
        // counit on either leg gives q back
        let first: NCPoly = t.flat_map(|(a, b)| if a.is_empty() { NCPoly::monomial(b.clone(), Rational::one()) } else { NCPoly::zero() });
        prop_assert_eq!(first, q.0);
    }

    #[test]
    fn deconcat_is_dual_to_concatenation(q in qs_poly(6), a in z_word(3), b in z_word(3)) {
        let lhs = pairing2(&deconcat(&q), &NCPoly::monomial(a.clone(), Rational::one()).tensor(&NCPoly::monomial(b.clone(), Rational::one())));
        let rhs = pairing(&q, &NCPoly::monomial(a.concat(&b), Rational::one()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_dual_to_coproduct(a in z_word(3), b in z_word(3), w in z_word(6)) {
        let prod = quasi_shuffle_by_duality(&a, &b);
        let lhs = pairing(&prod, &NCPoly::monomial(w.clone(), Rational::one()));
        let ab = NCPoly::monomial(a, Rational::one()).tensor(&NCPoly::monomial(b, Rational::one()));
        let rhs = pairing2(&word_coproduct(&w, HopfFamily::NSymm), &ab);
        prop_assert_eq!(lhs, rhs);
    }
}
