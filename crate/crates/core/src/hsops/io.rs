//! JSON-facing schemas for algebras, HS families and derivation lists.
//!
//! Every scalar is an exact rational string such as `"3"` or `"-1/2"`.

use serde::{Deserialize, Serialize};

use super::{HSFamily, LinMap, TestAlgebra, Vector};
use crate::error::{Error, Result};
use crate::freealg::{format_rational, parse_rational, Rational};

/// One nonzero structure constant block: the coordinates of `e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub product: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    /// Pairs that are absent multiply to zero.
    pub structure_constants: Vec<StructureEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapsKind {
    /// `maps[n-1]` is `d_n` of a Hasse-Schmidt family.
    HsFamily,
    /// `maps[n-1]` is the n-th ordinary derivation (`δ_n` or `∂_n`).
    Derivations,
}

/// An algebra together with a list of square matrices given row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub algebra: AlgebraDoc,
    pub kind: MapsKind,
    pub maps: Vec<Vec<Vec<String>>>,
}

fn parse_vector(values: &[String], context: &str) -> Result<Vector> {
    values
        .iter()
        .map(|s| parse_rational(s).map_err(|e| Error::Parse(format!("{context}: {e}"))))
        .collect()
}

fn format_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl AlgebraDoc {
    pub fn from_algebra(a: &TestAlgebra) -> Self {
        let dim = a.dim();
        let mut structure_constants = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = a.basis_product_vector(i, j);
                if v.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                    structure_constants.push(StructureEntry {
                        i,
                        j,
                        product: format_vector(&v),
                    });
                }
            }
        }
        AlgebraDoc {
            labels: a.labels().to_vec(),
            unit: format_vector(a.unit()),
            structure_constants,
        }
    }

    pub fn to_algebra(&self) -> Result<TestAlgebra> {
        let dim = self.labels.len();
        let unit = parse_vector(&self.unit, "unit")?;
        let zero = vec![Rational::from_integer(0.into()); dim];
        let mut products = vec![vec![zero; dim]; dim];
        let mut seen = vec![vec![false; dim]; dim];
        for (k, entry) in self.structure_constants.iter().enumerate() {
            let ctx = format!("structure_constants[{k}]");
            if entry.i >= dim || entry.j >= dim {
                return Err(Error::Parse(format!(
                    "{ctx}: index ({}, {}) out of range for dimension {dim}",
                    entry.i, entry.j
                )));
            }
            if seen[entry.i][entry.j] {
                return Err(Error::Parse(format!(
                    "{ctx}: duplicate entry for ({}, {})",
                    entry.i, entry.j
                )));
            }
            seen[entry.i][entry.j] = true;
            let v = parse_vector(&entry.product, &ctx)?;
            if v.len() != dim {
                return Err(Error::Parse(format!(
                    "{ctx}: product has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            products[entry.i][entry.j] = v;
        }
        TestAlgebra::new(self.labels.clone(), unit, products)
    }
}

fn map_to_rows(m: &LinMap) -> Vec<Vec<String>> {
    m.rows().map(format_vector).collect()
}

impl FamilyDoc {
    pub fn from_family(f: &HSFamily) -> Self {
        FamilyDoc {
            algebra: AlgebraDoc::from_algebra(f.algebra()),
            kind: MapsKind::HsFamily,
            maps: f.maps().iter().map(map_to_rows).collect(),
        }
    }

    pub fn from_derivations(algebra: &TestAlgebra, maps: &[LinMap]) -> Self {
        FamilyDoc {
            algebra: AlgebraDoc::from_algebra(algebra),
            kind: MapsKind::Derivations,
            maps: maps.iter().map(map_to_rows).collect(),
        }
    }

    /// Parses the matrices, checking that each is square of the algebra's dimension.
    pub fn linear_maps(&self) -> Result<Vec<LinMap>> {
        let dim = self.algebra.labels.len();
        self.maps
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != dim {
                    return Err(Error::Parse(format!(
                        "maps[{k}] has {} rows, expected {dim}",
                        rows.len()
                    )));
                }
                let rows = rows
                    .iter()
                    .enumerate()
                    .map(|(r, row)| parse_vector(row, &format!("maps[{k}] row {r}")))
                    .collect::<Result<Vec<_>>>()?;
                LinMap::from_rows(rows).map_err(|e| Error::Parse(format!("maps[{k}]: {e}")))
            })
            .collect()
    }
}
