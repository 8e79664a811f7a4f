//! Sample families shared by the integration targets.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use nsymm::freealg::{integer, rational, Rational};
use nsymm::hsops::{d_from_partial, Generator, HSFamily, LinMap, TestAlgebra, TruncatedFree};

pub const FREE_LEN: usize = 4;

type ImagePlan<'a> = Vec<((Generator, usize), Vec<(&'a str, Rational)>)>;

fn image(free: &TruncatedFree, terms: &[(&str, Rational)]) -> Vec<Rational> {
    free.element(terms).expect("words fit the truncation")
}

/// HS families on the free algebra in `x, y` truncated above word length 4, built from
/// prescribed generator images.
pub fn free_samples(free: &TruncatedFree, len: usize) -> Vec<HSFamily> {
    use Generator::{X, Y};
    let plans: Vec<ImagePlan> = vec![
        // exponential of the derivation x ↦ y
        vec![((X, 1), vec![("y", integer(1))])],
        vec![((X, 1), vec![("y", integer(1))]), ((X, 2), vec![("x", integer(1))])],
        vec![
            ((X, 1), vec![("xy", integer(1))]),
            ((Y, 1), vec![("x", rational(1, 2))]),
            ((Y, 2), vec![("yy", integer(1)), ("x", integer(-3))]),
            ((X, 3), vec![("y", rational(2, 3))]),
        ],
        vec![
            ((X, 1), vec![("x", integer(1)), ("y", integer(1))]),
            ((Y, 2), vec![("xyx", integer(1))]),
            ((Y, 4), vec![("y", rational(-1, 5))]),
            ((X, 5), vec![("yx", integer(2))]),
        ],
    ];
    plans
        .into_iter()
        .map(|plan| {
            let images: BTreeMap<_, _> = plan
                .into_iter()
                .filter(|((_, n), _)| *n <= len)
                .map(|(k, terms)| (k, image(free, &terms)))
                .collect();
            free.hs_extend(&images, len).expect("valid generator images")
        })
        .collect()
}

pub fn upper3() -> Arc<TestAlgebra> {
    Arc::new(TestAlgebra::upper_triangular(3).expect("upper triangular algebra"))
}

fn ints(v: [i64; 6]) -> Vec<Rational> {
    v.iter().map(|&x| integer(x)).collect()
}

/// Inner derivations `ad(m)` on 3×3 upper-triangular matrices (basis E11, E12, E13, E22,
/// E23, E33), chosen so that consecutive ones do not commute.
pub fn inner_derivations(len: usize) -> Vec<LinMap> {
    let a = upper3();
    let ms = [
        [1, 1, 0, 0, 2, 0],
        [0, 3, 1, 1, 0, -1],
        [2, 0, -1, 0, 1, 1],
        [0, 0, 1, -1, 1, 0],
        [1, -2, 0, 3, 0, 0],
        [0, 1, 1, 0, -1, 2],
    ];
    ms.iter().cycle().take(len).map(|m| a.inner_derivation(&ints(*m))).collect()
}

pub fn inner_build(len: usize) -> HSFamily {
    d_from_partial(&inner_derivations(len), upper3()).expect("derivations")
}
