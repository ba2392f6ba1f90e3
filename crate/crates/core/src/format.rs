//! JSON file formats. Scalars are strings so that exact values survive a
//! round trip; prime-field residues take their modulus from the algebra.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::commuting::{Decomposition, LinearMap};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    /// `[i, j, k, c]`: `b_i b_j` has coefficient `c` on `b_k`.
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            name: a.name().to_string(),
            field: a.field(),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            unit: a.unit().map(Element::to_strings),
            structure: a
                .structure_entries()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, c.to_string()))
                .collect(),
            comment: a.comment().map(str::to_string),
        }
    }

    pub fn into_algebra(self) -> Result<Algebra, AlgebraError> {
        let field = self.field.validate()?;
        if self.basis.len() != self.dim {
            return Err(AlgebraError::LabelCount {
                expected: self.dim,
                found: self.basis.len(),
            });
        }
        let entries = self
            .structure
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, field.parse_scalar(c)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let algebra = match self.unit {
            Some(u) => {
                let unit = Element::parse_strings(field, &u)?;
                Algebra::with_declared_unit(self.name, field, self.basis, entries, unit)?
            }
            None => Algebra::new(self.name, field, self.basis, entries)?,
        };
        Ok(match self.comment {
            Some(c) => algebra.with_comment(c),
            None => algebra,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub dim: usize,
    /// Row-major; column `k` is the image of `b_k`.
    pub matrix: Vec<Vec<String>>,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_string).collect())
        .collect()
}

impl MapFile {
    pub fn from_map(phi: &LinearMap) -> Self {
        MapFile {
            dim: phi.dim(),
            matrix: matrix_strings(phi.matrix()),
        }
    }

    pub fn into_map(self, field: FieldSpec) -> Result<LinearMap, AlgebraError> {
        if self.matrix.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: self.matrix.len(),
            });
        }
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.matrix {
            if row.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    found: row.len(),
                });
            }
            rows.push(Element::parse_strings(field, row)?.into_coords());
        }
        let m = if self.dim == 0 {
            Matrix::zeros(field, 0, 0)
        } else {
            Matrix::from_rows(field, rows)
        };
        LinearMap::new(m).map_err(|e| AlgebraError::Format(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub z: Vec<String>,
    pub z1: Option<Vec<String>>,
    pub z2: Option<Vec<String>>,
    pub xi: Vec<Vec<String>>,
    pub verified: bool,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionFile {
            z: d.z.to_strings(),
            z1: d.z1.as_ref().map(Element::to_strings),
            z2: d.z2.as_ref().map(Element::to_strings),
            xi: matrix_strings(d.xi.matrix()),
            verified: d.verified,
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, AlgebraError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgebraError::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| AlgebraError::Format(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<Algebra, AlgebraError> {
    read_json::<AlgebraFile>(path)?.into_algebra()
}

pub fn load_map(path: &Path, field: FieldSpec) -> Result<LinearMap, AlgebraError> {
    read_json::<MapFile>(path)?.into_map(field)
}

/// An element file holds a JSON array of scalar strings.
pub fn load_element(path: &Path, field: FieldSpec) -> Result<Element, AlgebraError> {
    let items: Vec<String> = read_json(path)?;
    Ok(Element::parse_strings(field, &items)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}
