//! Finite-dimensional algebras given by structure constants.
//!
//! The product of basis vectors `b_i · b_j = Σ_k c[i][j][k] b_k` is stored
//! sparsely per `(i, j)` pair; products of general elements are expanded
//! bilinearly into dense coordinate vectors.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::{independent_subset, rank, solve, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("structure entry ({i}, {j}, {k}) lies outside dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("structure entry ({i}, {j}, {k}) is given twice")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("expected {expected} basis labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the declared unit fails u·b = b·u = b for basis vector {label}")]
    BadUnit { label: String },
    #[error("algebras over different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("algebra {0:?} has no unit")]
    NotUnital(String),
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("unknown basis label or malformed element {0:?}")]
    BadElement(String),
    #[error("malformed file: {0}")]
    Format(String),
}

/// Coordinates of an algebra element in the algebra's fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Element(vec![field.zero(); dim])
    }

    pub fn basis(field: FieldSpec, dim: usize, index: usize) -> Self {
        let mut v = vec![field.zero(); dim];
        v[index] = field.one();
        Element(v)
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element(self.0.iter().map(|x| x * c).collect())
    }

    /// Scalar strings, as used in the JSON formats.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }

    pub fn parse_strings<S: AsRef<str>>(field: FieldSpec, items: &[S]) -> Result<Self, FieldError> {
        items
            .iter()
            .map(|s| field.parse_scalar(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Element)
    }
}

/// Comma-separated scalars: the inline form the CLI accepts.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_strings().join(","))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "elements of different algebras");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "elements of different algebras");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

/// Which polynomial identity a basis triple violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlternativeLaw {
    /// `(b_i, b_i, b_j) = 0`
    Left,
    /// `(b_j, b_i, b_i) = 0`
    Right,
    /// `(b_i, b_j, b_k) + (b_j, b_i, b_k) = 0`
    LeftLinearized,
    /// `(b_k, b_i, b_j) + (b_k, b_j, b_i) = 0`
    RightLinearized,
}

impl fmt::Display for AlternativeLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlternativeLaw::Left => "(x,x,y) = 0",
            AlternativeLaw::Right => "(y,x,x) = 0",
            AlternativeLaw::LeftLinearized => "(x,y,w) + (y,x,w) = 0",
            AlternativeLaw::RightLinearized => "(w,x,y) + (w,y,x) = 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: AlternativeLaw,
    /// Basis indices `(i, j, k)`; `k` is unused by the unlinearized laws.
    pub indices: (usize, usize, usize),
    /// The nonzero value of the offending expression.
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternativityReport {
    pub alternative: bool,
    pub witness: Option<LawViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    field: FieldSpec,
    labels: Vec<String>,
    /// `table[i * dim + j]` lists the nonzero `(k, c[i][j][k])`, sorted by `k`.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Option<Element>,
    comment: Option<String>,
}

impl Algebra {
    /// Builds an algebra from structure constants and caches its unit, if any.
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        labels: Vec<String>,
        entries: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let field = field.validate()?;
        let dim = labels.len();
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, k, dim });
            }
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch(field, c.field()));
            }
            let slot = &mut table[i * dim + j];
            if slot.iter().any(|(kk, _)| *kk == k) {
                return Err(AlgebraError::DuplicateEntry { i, j, k });
            }
            if !c.is_zero() {
                slot.push((k, c));
            }
        }
        for slot in &mut table {
            slot.sort_by_key(|(k, _)| *k);
        }
        let mut algebra = Algebra {
            name: name.into(),
            field,
            labels,
            table,
            unit: None,
            comment: None,
        };
        algebra.unit = find_unit(&algebra);
        Ok(algebra)
    }

    /// Like [`Algebra::new`], but checks a declared unit instead of searching.
    pub fn with_declared_unit(
        name: impl Into<String>,
        field: FieldSpec,
        labels: Vec<String>,
        entries: Vec<(usize, usize, usize, Scalar)>,
        unit: Element,
    ) -> Result<Self, AlgebraError> {
        let mut algebra = Algebra::new(name, field, labels, entries)?;
        if unit.dim() != algebra.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: algebra.dim(),
                found: unit.dim(),
            });
        }
        for k in 0..algebra.dim() {
            let b = algebra.basis(k);
            if algebra.multiply(&unit, &b) != b || algebra.multiply(&b, &unit) != b {
                return Err(AlgebraError::BadUnit {
                    label: algebra.labels[k].clone(),
                });
            }
        }
        algebra.unit = Some(unit);
        Ok(algebra)
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn require_unit(&self) -> Result<&Element, AlgebraError> {
        self.unit
            .as_ref()
            .ok_or_else(|| AlgebraError::NotUnital(self.name.clone()))
    }

    /// Structure constants as sorted `(i, j, k, c)` entries.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.table[i * n + j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    /// Checks that `x` has this algebra's dimension and field.
    pub fn check_element(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        if let Some(bad) = x.coords().iter().find(|c| c.field() != self.field) {
            return Err(AlgebraError::FieldMismatch(self.field, bad.field()));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let n = self.dim();
        assert!(
            a.dim() == n && b.dim() == n,
            "elements of different algebras"
        );
        let mut out = vec![self.field.zero(); n];
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords().iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let slot = &self.table[i * n + j];
                if slot.is_empty() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in slot {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        Element(out)
    }

    /// `(xy)z − x(yz)`
    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Element {
        let left = self.multiply(&self.multiply(x, y), z);
        let right = self.multiply(x, &self.multiply(y, z));
        &left - &right
    }

    /// `xy − yx`
    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        &self.multiply(x, y) - &self.multiply(y, x)
    }

    /// Matrix of `x ↦ z·x`; column `k` holds `z·b_k`.
    pub fn left_multiplication(&self, z: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|k| self.multiply(z, &self.basis(k)).into_coords())
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `x ↦ x·z`.
    pub fn right_multiplication(&self, z: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|k| self.multiply(&self.basis(k), z).into_coords())
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// First basis triple `(i, j, k)` with a nonzero associator, in
    /// lexicographic order.
    pub fn associator_witness(&self) -> Option<((usize, usize, usize), Element)> {
        let n = self.dim();
        let basis: Vec<Element> = (0..n).map(|i| self.basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.associator(&basis[i], &basis[j], &basis[k]);
                    if !a.is_zero() {
                        return Some(((i, j, k), a));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associator_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }
}

/// Decides alternativity through the linearized basis identities, which are
/// equivalent to `(x,x,y) = 0 = (y,x,x)` away from characteristic 2.
pub fn is_alternative(a: &Algebra) -> AlternativityReport {
    let n = a.dim();
    let basis: Vec<Element> = (0..n).map(|i| a.basis(i)).collect();
    let fail = |law, indices, value| AlternativityReport {
        alternative: false,
        witness: Some(LawViolation {
            law,
            indices,
            value,
        }),
    };
    for i in 0..n {
        for j in 0..n {
            let left = a.associator(&basis[i], &basis[i], &basis[j]);
            if !left.is_zero() {
                return fail(AlternativeLaw::Left, (i, j, 0), left);
            }
            let right = a.associator(&basis[j], &basis[i], &basis[i]);
            if !right.is_zero() {
                return fail(AlternativeLaw::Right, (i, j, 0), right);
            }
            for k in 0..n {
                let l = &a.associator(&basis[i], &basis[j], &basis[k])
                    + &a.associator(&basis[j], &basis[i], &basis[k]);
                if !l.is_zero() {
                    return fail(AlternativeLaw::LeftLinearized, (i, j, k), l);
                }
                let r = &a.associator(&basis[k], &basis[i], &basis[j])
                    + &a.associator(&basis[k], &basis[j], &basis[i]);
                if !r.is_zero() {
                    return fail(AlternativeLaw::RightLinearized, (i, j, k), r);
                }
            }
        }
    }
    AlternativityReport {
        alternative: true,
        witness: None,
    }
}

/// Solves `u·b_j = b_j = b_j·u` for all `j`. A two-sided unit is unique, so
/// any solution of the linear system is the unit.
pub fn find_unit(a: &Algebra) -> Option<Element> {
    let n = a.dim();
    if n == 0 {
        return None;
    }
    let field = a.field();
    // Column t of the left block is b_t·b_j, of the right block b_j·b_t.
    let mut system = Matrix::zeros(field, 0, n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        let bj = a.basis(j);
        let left: Vec<Vec<Scalar>> = (0..n)
            .map(|t| a.multiply(&a.basis(t), &bj).into_coords())
            .collect();
        let right: Vec<Vec<Scalar>> = (0..n)
            .map(|t| a.multiply(&bj, &a.basis(t)).into_coords())
            .collect();
        system.stack(&Matrix::from_columns(field, n, &left));
        system.stack(&Matrix::from_columns(field, n, &right));
        rhs.extend(bj.coords().iter().cloned());
        rhs.extend(bj.coords().iter().cloned());
    }
    solve(&system, &rhs).map(Element::new)
}

/// Block-diagonal sum `A ⊕ B`; basis labels are prefixed to stay distinct.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch(a.field(), b.field()));
    }
    let off = a.dim();
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("a.{l}")).collect();
    labels.extend(b.labels().iter().map(|l| format!("b.{l}")));
    let mut entries = a.structure_entries();
    entries.extend(
        b.structure_entries()
            .into_iter()
            .map(|(i, j, k, c)| (i + off, j + off, k + off, c)),
    );
    Algebra::new(
        format!("{} (+) {}", a.name(), b.name()),
        a.field(),
        labels,
        entries,
    )
}

/// A subspace of an algebra, held by a linearly independent spanning list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Element>,
}

impl Subspace {
    pub fn new(
        field: FieldSpec,
        ambient: usize,
        basis: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        if let Some(bad) = basis.iter().find(|b| b.dim() != ambient) {
            return Err(AlgebraError::DimensionMismatch {
                expected: ambient,
                found: bad.dim(),
            });
        }
        let s = Subspace {
            field,
            ambient,
            basis,
        };
        if rank(&s.as_columns()) != s.basis.len() {
            return Err(AlgebraError::Dependent);
        }
        Ok(s)
    }

    /// The span of arbitrary vectors, keeping the earliest independent ones.
    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Element>) -> Self {
        let coords: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        let keep = independent_subset(field, ambient, &coords);
        let basis = keep.into_iter().map(|i| vectors[i].clone()).collect();
        Subspace {
            field,
            ambient,
            basis,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient)
                .map(|i| Element::basis(field, ambient, i))
                .collect(),
        }
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn as_columns(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        Matrix::from_columns(self.field, self.ambient, &cols)
    }

    /// Rank-based membership: `rank(basis ∪ {x}) = rank(basis)`.
    pub fn contains(&self, x: &Element) -> bool {
        if x.is_zero() {
            return true;
        }
        let mut cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        cols.push(x.coords().to_vec());
        rank(&Matrix::from_columns(self.field, self.ambient, &cols)) == self.dim()
    }

    /// Coefficients of `x` in this basis, when `x` lies in the subspace.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Scalar>> {
        solve(&self.as_columns(), x.coords()).filter(|c| &self.combination(c) == x)
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Element {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let mut acc = Element::zero(self.field, self.ambient);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// A basis vector of `self` missing from `other`, if any.
    pub fn first_outside(&self, other: &Subspace) -> Option<Element> {
        self.basis.iter().find(|b| !other.contains(b)).cloned()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cayley_dickson, matrix_algebra, zorn, CayleyDicksonParams};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    /// 2×2 matrix product on coordinate vectors (E11, E12, E21, E22).
    fn matmul2(x: &[i64], y: &[i64]) -> Vec<i64> {
        vec![
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    }

    #[test]
    fn matrix_units_multiply_like_matrices() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut x = vec![0; 4];
                let mut y = vec![0; 4];
                x[i] = 1;
                y[j] = 1;
                let expected = Element::from_i64(q(), &matmul2(&x, &y));
                assert_eq!(m2.multiply(&m2.basis(i), &m2.basis(j)), expected);
            }
        }
        // E12 · E21 = E11, E12² = 0
        assert_eq!(m2.multiply(&m2.basis(1), &m2.basis(2)), m2.basis(0));
        assert!(m2.multiply(&m2.basis(1), &m2.basis(1)).is_zero());
    }

    #[test]
    fn commutator_examples() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        let x = Element::from_i64(q(), &[1, -2, 3, 5]);
        assert!(m2.commutator(&x, &x).is_zero());
        assert_eq!(m2.commutator(&m2.basis(0), &m2.basis(1)), m2.basis(1));
        assert!(m2.commutator(m2.unit().unwrap(), &x).is_zero());
    }

    #[test]
    fn unit_detection() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        assert_eq!(find_unit(&m2), Some(Element::from_i64(q(), &[1, 0, 0, 1])));
        let (z, _) = zorn(q());
        assert_eq!(
            find_unit(&z),
            Some(Element::from_i64(q(), &[1, 1, 0, 0, 0, 0, 0, 0]))
        );
        let null = Algebra::new("null", q(), vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(find_unit(&null), None);
        assert!(null.require_unit().is_err());
    }

    #[test]
    fn alternativity_classification() {
        let (m3, _) = matrix_algebra(q(), 3).unwrap();
        assert!(is_alternative(&m3).alternative);
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(is_alternative(&zorn(f5).0).alternative);
        let sed =
            cayley_dickson(q(), &CayleyDicksonParams::new(vec![q().one(); 4]).unwrap()).unwrap();
        let report = is_alternative(&sed.algebra);
        assert!(!report.alternative);
        let w = report.witness.unwrap();
        assert!(!w.value.is_zero());
    }

    #[test]
    fn sedenion_stage_has_associator_witness() {
        let sed =
            cayley_dickson(q(), &CayleyDicksonParams::new(vec![q().one(); 4]).unwrap()).unwrap();
        let ((i, j, k), v) = sed.algebra.associator_witness().unwrap();
        let a = &sed.algebra;
        assert_eq!(a.associator(&a.basis(i), &a.basis(j), &a.basis(k)), v);
        assert!(!v.is_zero());
    }

    #[test]
    fn direct_sums() {
        let field_alg =
            Algebra::new("Q", q(), vec!["1".into()], vec![(0, 0, 0, q().one())]).unwrap();
        let qq = direct_sum(&field_alg, &field_alg).unwrap();
        assert_eq!(qq.dim(), 2);
        assert!(qq.is_commutative() && qq.is_associative());
        assert_eq!(qq.unit(), Some(&Element::from_i64(q(), &[1, 1])));
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        let s = direct_sum(&field_alg, &m2).unwrap();
        assert_eq!(s.dim(), 5);
        assert!(is_alternative(&s).alternative);
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            direct_sum(&m2, &zorn(f5).0),
            Err(AlgebraError::FieldMismatch(..))
        ));
    }

    #[test]
    fn construction_errors() {
        let err = Algebra::new("x", q(), vec!["a".into()], vec![(0, 1, 0, q().one())]);
        assert!(matches!(err, Err(AlgebraError::IndexOutOfRange { .. })));
        let err = Algebra::new(
            "x",
            q(),
            vec!["a".into()],
            vec![(0, 0, 0, q().one()), (0, 0, 0, q().one())],
        );
        assert!(matches!(err, Err(AlgebraError::DuplicateEntry { .. })));
        let err = Algebra::with_declared_unit(
            "x",
            q(),
            vec!["a".into()],
            vec![(0, 0, 0, q().one())],
            Element::from_i64(q(), &[2]),
        );
        assert!(matches!(err, Err(AlgebraError::BadUnit { .. })));
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::new(q(), 3, vec![Element::from_i64(q(), &[1, 1, 0])]).unwrap();
        assert!(s.contains(&Element::from_i64(q(), &[3, 3, 0])));
        assert!(!s.contains(&Element::from_i64(q(), &[1, 0, 0])));
        assert!(Subspace::new(
            q(),
            3,
            vec![
                Element::from_i64(q(), &[1, 1, 0]),
                Element::from_i64(q(), &[2, 2, 0])
            ]
        )
        .is_err());
        let sp = Subspace::span(
            q(),
            3,
            vec![
                Element::from_i64(q(), &[0, 0, 0]),
                Element::from_i64(q(), &[1, 1, 0]),
                Element::from_i64(q(), &[2, 2, 0]),
            ],
        );
        assert!(sp.same_as(&s));
    }

    fn arb_elem(dim: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-4i64..5, dim)
    }

    proptest! {
        #[test]
        fn zorn_is_bilinear(a in arb_elem(8), a2 in arb_elem(8), b in arb_elem(8), s in -5i64..6) {
            let (z, _) = zorn(q());
            let (a, a2, b) = (Element::from_i64(q(), &a), Element::from_i64(q(), &a2), Element::from_i64(q(), &b));
            let s = q().from_i64(s);
            let lhs = z.multiply(&(&a.scale(&s) + &a2), &b);
            let rhs = &z.multiply(&a, &b).scale(&s) + &z.multiply(&a2, &b);
            prop_assert_eq!(lhs, rhs);
            let lhs = z.multiply(&b, &(&a.scale(&s) + &a2));
            let rhs = &z.multiply(&b, &a).scale(&s) + &z.multiply(&b, &a2);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn alternative_laws_hold_pointwise(x in arb_elem(8), y in arb_elem(8)) {
            let f = FieldSpec::prime(7).unwrap();
            for alg in [zorn(q()).0, zorn(f).0] {
                prop_assert!(is_alternative(&alg).alternative);
                let x = Element::from_i64(alg.field(), &x);
                let y = Element::from_i64(alg.field(), &y);
                prop_assert!(alg.associator(&x, &x, &y).is_zero());
                prop_assert!(alg.associator(&y, &x, &x).is_zero());
                prop_assert!(alg.associator(&x, &y, &x).is_zero());
            }
        }

        #[test]
        fn octonion_laws_hold_pointwise(x in arb_elem(8), y in arb_elem(8), g in prop::sample::select(vec![-1i64, 1, 2])) {
            let params = CayleyDicksonParams::new(vec![q().from_i64(g), q().from_i64(-1), q().one()]).unwrap();
            let o = cayley_dickson(q(), &params).unwrap().algebra;
            let x = Element::from_i64(q(), &x);
            let y = Element::from_i64(q(), &y);
            prop_assert!(o.associator(&x, &x, &y).is_zero());
            prop_assert!(o.associator(&y, &x, &x).is_zero());
            prop_assert!(o.associator(&x, &y, &x).is_zero());
        }
    }

    /// Exhaustive triple enumeration agrees with the linearized basis test.
    #[test]
    fn alternativity_matches_enumeration_over_f5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let t2 = Algebra::new(
            "T2",
            f5,
            vec!["E11".into(), "E12".into(), "E22".into()],
            vec![
                (0, 0, 0, f5.one()),
                (0, 1, 1, f5.one()),
                (1, 2, 1, f5.one()),
                (2, 2, 2, f5.one()),
            ],
        )
        .unwrap();
        // u·u = v, v·u = v: (u, u, u) = v
        let weird = Algebra::new(
            "W",
            f5,
            vec!["u".into(), "v".into()],
            vec![(0, 0, 1, f5.one()), (1, 0, 1, f5.one())],
        )
        .unwrap();
        let (m2, _) = matrix_algebra(f5, 2).unwrap();
        for alg in [t2, weird, m2] {
            let elems = enumerate(f5, alg.dim());
            let mut brute = true;
            'outer: for x in &elems {
                for y in &elems {
                    if !alg.associator(x, x, y).is_zero() || !alg.associator(y, x, x).is_zero() {
                        brute = false;
                        break 'outer;
                    }
                }
            }
            assert_eq!(is_alternative(&alg).alternative, brute, "{}", alg.name());
        }
    }

    fn enumerate(f: FieldSpec, dim: usize) -> Vec<Element> {
        let elems = f.elements().unwrap();
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v: Vec<Scalar>| {
                    elems.iter().map(move |e| {
                        let mut w = v.clone();
                        w.push(e.clone());
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Element::new).collect()
    }
}
