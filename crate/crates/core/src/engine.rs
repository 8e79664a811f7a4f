use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::freealg::NCPoly;

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Holds the global truncation degree and the per-index memo tables.
///
/// All memoized sequences are computed in index order, so a cached entry only ever
/// depends on entries with smaller index. Cached values are identical to freshly
/// computed ones.
#[derive(Debug)]
pub struct Engine {
    max_degree: usize,
    pub(crate) p_left: SeqMemo,
    pub(crate) p_right: SeqMemo,
    pub(crate) z_in_pprime: SeqMemo,
    pub(crate) z_of_u: SeqMemo,
    pub(crate) u_of_z: SeqMemo,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(DEFAULT_MAX_DEGREE)
    }
}

impl Engine {
    /// Panics if `max_degree == 0`.
    pub fn new(max_degree: usize) -> Self {
        assert!(max_degree >= 1, "max_degree must be at least 1");
        Engine {
            max_degree,
            p_left: SeqMemo::default(),
            p_right: SeqMemo::default(),
            z_in_pprime: SeqMemo::default(),
            z_of_u: SeqMemo::default(),
            u_of_z: SeqMemo::default(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Rejects generator indices outside `1..=max_degree`.
    pub fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_degree {
            return Err(Error::IndexOutOfRange {
                n,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::DegreeOverflow {
                degree,
                max: self.max_degree,
            });
        }
        Ok(())
    }

    /// Product that refuses to leave the truncated range instead of dropping terms.
    pub fn mul(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
        if !p.is_zero() && !q.is_zero() {
            self.check_degree(p.degree() + q.degree())?;
        }
        Ok(p * q)
    }
}

/// Memo table for a sequence `a_1, a_2, ...` defined by a recursion on earlier terms.
#[derive(Debug, Default)]
pub(crate) struct SeqMemo {
    items: RwLock<Vec<NCPoly>>,
}

impl SeqMemo {
    /// Returns `a_n`, extending the table with `step(earlier, k)` for every missing `k <= n`.
    /// `earlier[i]` holds `a_{i+1}`.
    pub(crate) fn get(&self, n: usize, step: impl Fn(&[NCPoly], usize) -> NCPoly) -> NCPoly {
        debug_assert!(n >= 1);
        if let Some(p) = self.items.read().expect("memo lock poisoned").get(n - 1) {
            return p.clone();
        }
        let mut items = self.items.write().expect("memo lock poisoned");
        while items.len() < n {
            let k = items.len() + 1;
            let next = step(&items, k);
            items.push(next);
        }
        items[n - 1].clone()
    }
}
