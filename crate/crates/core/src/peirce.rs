//! Peirce decomposition relative to an idempotent, together with the linear
//! subspaces the decomposition is used to study: the center, the nucleus,
//! and the annihilator conditions `x𝔯·e_i = 0`.
//!
//! Every universally quantified condition in this module is bilinear, so it
//! is checked on basis vectors and turned into a kernel computation.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, Subspace};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{kernel_basis, solve, Matrix};

/// Default cap on `p^dim` for exhaustive finite-field scans.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeirceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{element} is not a nontrivial idempotent")]
    NotIdempotent { element: Element },
    #[error("e{i}x·e{j} != e{i}·xe{j} for basis vector {label}")]
    MixedIdentity { i: u8, j: u8, label: String },
    #[error("hypothesis x𝔯·e{side} = 0 => x = 0 fails; witness {witness}")]
    HypothesisFailed { side: u8, witness: Element },
    #[error("lift precondition failed: {0}")]
    LiftPrecondition(String),
    #[error("exhaustive scans need a finite field")]
    NotFinite,
    #[error("exhaustive scan over {size} elements exceeds budget {budget}")]
    BudgetExceeded { size: String, budget: u64 },
}

/// One of the two complementary idempotents `e1`, `e2 = 1 − e1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::One, Side::Two];

    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    fn index(self) -> usize {
        self.number() as usize - 1
    }
}

/// A Peirce component `𝔯_ij = e_i 𝔯 e_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub row: Side,
    pub col: Side,
}

impl Component {
    pub const R11: Component = Component::new(Side::One, Side::One);
    pub const R12: Component = Component::new(Side::One, Side::Two);
    pub const R21: Component = Component::new(Side::Two, Side::One);
    pub const R22: Component = Component::new(Side::Two, Side::Two);
    pub const ALL: [Component; 4] = [Self::R11, Self::R12, Self::R21, Self::R22];

    pub const fn new(row: Side, col: Side) -> Self {
        Component { row, col }
    }

    pub fn diagonal(side: Side) -> Self {
        Component::new(side, side)
    }

    pub fn is_diagonal(self) -> bool {
        self.row == self.col
    }

    pub fn transposed(self) -> Self {
        Component::new(self.col, self.row)
    }

    fn index(self) -> usize {
        self.row.index() * 2 + self.col.index()
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}{}", self.row.number(), self.col.number())
    }
}

/// `e·e = e`, `e ≠ 0`, `e ≠ 1`.
pub fn verify_idempotent(a: &Algebra, e: &Element) -> Result<bool, PeirceError> {
    let unit = a.require_unit()?;
    a.check_element(e)?;
    Ok(!e.is_zero() && e != unit && &a.multiply(e, e) == e)
}

/// Outcome of testing `x𝔯·e_i = {0} ⇒ x = 0` for `i = 1, 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub holds: [bool; 2],
    /// A nonzero `x` with `(x·r)·e_i = 0` for every `r`, when one exists.
    pub witnesses: [Option<Element>; 2],
}

impl HypothesisReport {
    pub fn holds_for(&self, side: Side) -> bool {
        self.holds[side.index()]
    }

    pub fn witness(&self, side: Side) -> Option<&Element> {
        self.witnesses[side.index()].as_ref()
    }

    pub fn holds_both(&self) -> bool {
        self.holds[0] && self.holds[1]
    }

    fn first_failure(&self) -> Option<(Side, &Element)> {
        Side::BOTH
            .into_iter()
            .find_map(|s| self.witness(s).map(|w| (s, w)))
    }
}

/// Reads the hypothesis as `(x·r)·e_i = 0` for all `r`; the solution set is
/// the kernel of `x ↦ ((x·b_k)·e_i)_k`.
pub fn hypothesis_check(a: &Algebra, e1: &Element) -> Result<HypothesisReport, PeirceError> {
    let unit = a.require_unit()?;
    a.check_element(e1)?;
    let e2 = unit - e1;
    let n = a.dim();
    let mut holds = [true; 2];
    let mut witnesses = [None, None];
    for (slot, e) in [e1, &e2].into_iter().enumerate() {
        let mut system = Matrix::zeros(a.field(), 0, n);
        for k in 0..n {
            let bk = a.basis(k);
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|t| a.multiply(&a.multiply(&a.basis(t), &bk), e).into_coords())
                .collect();
            system.stack(&Matrix::from_columns(a.field(), n, &cols));
        }
        if let Some(w) = kernel_basis(&system).into_iter().next() {
            holds[slot] = false;
            witnesses[slot] = Some(Element::new(w));
        }
    }
    Ok(HypothesisReport { holds, witnesses })
}

/// The commutative center `{z : [z, x] = 0 ∀x}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterBasis(pub Subspace);

/// The nucleus `{r : (x,y,r) = (x,r,y) = (r,x,y) = 0 ∀x,y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusBasis(pub Subspace);

impl CenterBasis {
    pub fn subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.0.contains(x)
    }
}

impl NucleusBasis {
    pub fn subspace(&self) -> &Subspace {
        &self.0
    }
}

fn kernel_subspace(a: &Algebra, system: &Matrix) -> Subspace {
    let basis = kernel_basis(system).into_iter().map(Element::new).collect();
    Subspace::new(a.field(), a.dim(), basis).expect("kernel bases are independent")
}

pub fn center(a: &Algebra) -> CenterBasis {
    let n = a.dim();
    let mut system = Matrix::zeros(a.field(), 0, n);
    for k in 0..n {
        let bk = a.basis(k);
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|t| a.commutator(&a.basis(t), &bk).into_coords())
            .collect();
        system.stack(&Matrix::from_columns(a.field(), n, &cols));
    }
    CenterBasis(kernel_subspace(a, &system))
}

pub fn nucleus(a: &Algebra) -> NucleusBasis {
    let n = a.dim();
    let basis: Vec<Element> = (0..n).map(|i| a.basis(i)).collect();
    let mut system = Matrix::zeros(a.field(), 0, n);
    for x in &basis {
        for y in &basis {
            let mut blocks: [Vec<Vec<Scalar>>; 3] = Default::default();
            for t in &basis {
                blocks[0].push(a.associator(x, y, t).into_coords());
                blocks[1].push(a.associator(x, t, y).into_coords());
                blocks[2].push(a.associator(t, x, y).into_coords());
            }
            for cols in &blocks {
                system.stack(&Matrix::from_columns(a.field(), n, cols));
            }
        }
    }
    NucleusBasis(kernel_subspace(a, &system))
}

/// The Peirce decomposition `𝔯 = 𝔯11 ⊕ 𝔯12 ⊕ 𝔯21 ⊕ 𝔯22` for a fixed idempotent.
///
/// The center and the hypothesis report are computed alongside, since every
/// downstream use of the decomposition needs both.
#[derive(Debug, Clone)]
pub struct PeirceData<'a> {
    algebra: &'a Algebra,
    e: [Element; 2],
    projectors: [Matrix; 4],
    components: [Subspace; 4],
    center: CenterBasis,
    hypothesis: HypothesisReport,
}

/// Projectors `P_ij(x) = e_i·(x·e_j)` and their column spaces.
///
/// Before trusting that bracketing the mixed identity `e_i x·e_j = e_i·x e_j`
/// is checked on every basis vector.
pub fn peirce_decompose<'a>(a: &'a Algebra, e1: &Element) -> Result<PeirceData<'a>, PeirceError> {
    if !verify_idempotent(a, e1)? {
        return Err(PeirceError::NotIdempotent {
            element: e1.clone(),
        });
    }
    let unit = a.require_unit()?;
    let e = [e1.clone(), unit - e1];
    let n = a.dim();
    let field = a.field();
    let mut projectors: Vec<Matrix> = Vec::with_capacity(4);
    let mut components: Vec<Subspace> = Vec::with_capacity(4);
    for c in Component::ALL {
        let (ei, ej) = (&e[c.row.index()], &e[c.col.index()]);
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let bk = a.basis(k);
            let right_first = a.multiply(ei, &a.multiply(&bk, ej));
            let left_first = a.multiply(&a.multiply(ei, &bk), ej);
            if right_first != left_first {
                return Err(PeirceError::MixedIdentity {
                    i: c.row.number(),
                    j: c.col.number(),
                    label: a.labels()[k].clone(),
                });
            }
            cols.push(right_first.into_coords());
        }
        let p = Matrix::from_columns(field, n, &cols);
        let images: Vec<Element> = cols.into_iter().map(Element::new).collect();
        components.push(Subspace::span(field, n, images));
        projectors.push(p);
    }
    let hypothesis = hypothesis_check(a, e1)?;
    Ok(PeirceData {
        algebra: a,
        e,
        projectors: projectors.try_into().expect("four projectors"),
        components: components.try_into().expect("four components"),
        center: center(a),
        hypothesis,
    })
}

impl<'a> PeirceData<'a> {
    pub fn algebra(&self) -> &'a Algebra {
        self.algebra
    }

    pub fn e(&self, side: Side) -> &Element {
        &self.e[side.index()]
    }

    pub fn projector(&self, c: Component) -> &Matrix {
        &self.projectors[c.index()]
    }

    pub fn component(&self, c: Component) -> &Subspace {
        &self.components[c.index()]
    }

    /// Dimensions of `(𝔯11, 𝔯12, 𝔯21, 𝔯22)`.
    pub fn dims(&self) -> [usize; 4] {
        Component::ALL.map(|c| self.component(c).dim())
    }

    pub fn project(&self, c: Component, x: &Element) -> Element {
        Element::new(self.projector(c).mul_vec(x.coords()))
    }

    /// `e1 x e1 + e2 x e2`
    pub fn diagonal_part(&self, x: &Element) -> Element {
        &self.project(Component::R11, x) + &self.project(Component::R22, x)
    }

    pub fn center(&self) -> &CenterBasis {
        &self.center
    }

    pub fn hypothesis(&self) -> &HypothesisReport {
        &self.hypothesis
    }

    /// Fails with the first witness unless the hypothesis holds for both sides.
    pub fn require_hypothesis(&self) -> Result<(), PeirceError> {
        match self.hypothesis.first_failure() {
            None => Ok(()),
            Some((side, w)) => Err(PeirceError::HypothesisFailed {
                side: side.number(),
                witness: w.clone(),
            }),
        }
    }

    /// `𝒵(𝔯_ii) = {z ∈ 𝔯_ii : [z, 𝔯_ii] = 0}`.
    pub fn component_center(&self, side: Side) -> Subspace {
        let a = self.algebra;
        let comp = self.component(Component::diagonal(side));
        let mut system = Matrix::zeros(a.field(), 0, comp.dim());
        for y in comp.basis() {
            let cols: Vec<Vec<Scalar>> = comp
                .basis()
                .iter()
                .map(|w| a.commutator(w, y).into_coords())
                .collect();
            system.stack(&Matrix::from_columns(a.field(), a.dim(), &cols));
        }
        let vectors = kernel_basis(&system)
            .into_iter()
            .map(|coeffs| comp.combination(&coeffs))
            .collect();
        Subspace::new(a.field(), a.dim(), vectors).expect("independent")
    }

    /// Some central `z` with `z·e_i = y`, without checking where `y` lives.
    pub fn central_lift(&self, y: &Element, side: Side) -> Option<Element> {
        let a = self.algebra;
        let cb = self.center.subspace();
        let cols: Vec<Vec<Scalar>> = cb
            .basis()
            .iter()
            .map(|c| a.multiply(c, self.e(side)).into_coords())
            .collect();
        let m = Matrix::from_columns(a.field(), a.dim(), &cols);
        solve(&m, y.coords()).map(|coeffs| cb.combination(&coeffs))
    }
}

/// Which multiplication rule of the decomposition a check concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeirceRelation {
    /// `𝔯_ij 𝔯_jl ⊆ 𝔯_il`
    Chain,
    /// `𝔯_ij 𝔯_ij ⊆ 𝔯_ji`
    Square,
    /// `𝔯_ij 𝔯_kl = 0` for `j ≠ k`, `(i,j) ≠ (k,l)`
    Orthogonal,
    /// `x_ij² = 0` for `i ≠ j`
    Nilpotent,
}

impl PeirceRelation {
    pub const ALL: [PeirceRelation; 4] = [
        PeirceRelation::Chain,
        PeirceRelation::Square,
        PeirceRelation::Orthogonal,
        PeirceRelation::Nilpotent,
    ];

    pub fn numeral(self) -> &'static str {
        match self {
            PeirceRelation::Chain => "i",
            PeirceRelation::Square => "ii",
            PeirceRelation::Orthogonal => "iii",
            PeirceRelation::Nilpotent => "iv",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            PeirceRelation::Chain => "R_ij R_jl ⊆ R_il",
            PeirceRelation::Square => "R_ij R_ij ⊆ R_ji",
            PeirceRelation::Orthogonal => "R_ij R_kl = 0 (j != k, (i,j) != (k,l))",
            PeirceRelation::Nilpotent => "x_ij^2 = 0 (i != j)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub left: (Component, Element),
    pub right: (Component, Element),
    /// The offending product (or `xy + yx` for the linearized square law).
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: PeirceRelation,
    pub pass: bool,
    /// Number of basis products evaluated.
    pub checked: usize,
    pub witness: Option<RelationWitness>,
}

/// Checks the four multiplication rules on component basis pairs. The square
/// law is checked as `x² = 0` on basis vectors plus `xy + yx = 0` on pairs,
/// which is equivalent away from characteristic 2.
pub fn check_peirce_relations(pd: &PeirceData<'_>) -> Vec<RelationCheck> {
    let a = pd.algebra;
    let mut out = Vec::with_capacity(4);
    for relation in PeirceRelation::ALL {
        let mut checked = 0;
        let mut witness = None;
        let mut record = |left: Component,
                          x: &Element,
                          right: Component,
                          y: &Element,
                          value: Element,
                          ok: bool| {
            checked += 1;
            if !ok && witness.is_none() {
                witness = Some(RelationWitness {
                    left: (left, x.clone()),
                    right: (right, y.clone()),
                    value,
                });
            }
        };
        for c1 in Component::ALL {
            for c2 in Component::ALL {
                let target = match relation {
                    PeirceRelation::Chain if c1.col == c2.row => {
                        Some(Component::new(c1.row, c2.col))
                    }
                    PeirceRelation::Square if c1 == c2 => Some(c1.transposed()),
                    PeirceRelation::Orthogonal if c1.col != c2.row && c1 != c2 => None,
                    PeirceRelation::Nilpotent if c1 == c2 && !c1.is_diagonal() => None,
                    _ => continue,
                };
                let b1 = pd.component(c1).basis();
                let b2 = pd.component(c2).basis();
                for (p, x) in b1.iter().enumerate() {
                    for (q, y) in b2.iter().enumerate() {
                        match relation {
                            PeirceRelation::Nilpotent => {
                                if q < p {
                                    continue;
                                }
                                let v = if p == q {
                                    a.multiply(x, x)
                                } else {
                                    &a.multiply(x, y) + &a.multiply(y, x)
                                };
                                let ok = v.is_zero();
                                record(c1, x, c2, y, v, ok);
                            }
                            PeirceRelation::Orthogonal => {
                                let v = a.multiply(x, y);
                                let ok = v.is_zero();
                                record(c1, x, c2, y, v, ok);
                            }
                            _ => {
                                let v = a.multiply(x, y);
                                let target = target.expect("inclusion target");
                                let ok = pd.component(target).contains(&v);
                                record(c1, x, c2, y, v, ok);
                            }
                        }
                    }
                }
            }
        }
        out.push(RelationCheck {
            relation,
            pass: witness.is_none(),
            checked,
            witness,
        });
    }
    out
}

/// `{z11 + z22 : [z11 + z22, 𝔯12] = [z11 + z22, 𝔯21] = 0}`, which equals the
/// center once the hypothesis holds.
pub fn center_via_peirce(pd: &PeirceData<'_>) -> Result<CenterBasis, PeirceError> {
    pd.require_hypothesis()?;
    let a = pd.algebra;
    let diag: Vec<Element> = [Component::R11, Component::R22]
        .iter()
        .flat_map(|c| pd.component(*c).basis().to_vec())
        .collect();
    let mut system = Matrix::zeros(a.field(), 0, diag.len());
    for c in [Component::R12, Component::R21] {
        for y in pd.component(c).basis() {
            let cols: Vec<Vec<Scalar>> = diag
                .iter()
                .map(|w| a.commutator(w, y).into_coords())
                .collect();
            system.stack(&Matrix::from_columns(a.field(), a.dim(), &cols));
        }
    }
    let span = Subspace::new(a.field(), a.dim(), diag).expect("R11 ⊕ R22 basis is independent");
    let vectors = kernel_basis(&system)
        .into_iter()
        .map(|coeffs| span.combination(&coeffs))
        .collect();
    Ok(CenterBasis(
        Subspace::new(a.field(), a.dim(), vectors).expect("independent"),
    ))
}

/// Finds central `z` with `z·e_i = z_ii`, given `z_ii ∈ 𝒵(𝔯_ii)`.
///
/// Returns `Ok(None)` when no central lift exists; among several lifts the
/// one from [`solve`]'s zero-free-variable convention is returned.
pub fn lift_central(
    pd: &PeirceData<'_>,
    z_ii: &Element,
    side: Side,
) -> Result<Option<Element>, PeirceError> {
    let a = pd.algebra;
    a.check_element(z_ii)?;
    let comp = pd.component(Component::diagonal(side));
    if !comp.contains(z_ii) {
        return Err(PeirceError::LiftPrecondition(format!(
            "{z_ii} does not lie in {}",
            Component::diagonal(side)
        )));
    }
    if let Some(y) = comp
        .basis()
        .iter()
        .find(|y| !a.commutator(z_ii, y).is_zero())
    {
        return Err(PeirceError::LiftPrecondition(format!(
            "{z_ii} does not commute with {y} in {}",
            Component::diagonal(side)
        )));
    }
    Ok(pd.central_lift(z_ii, side))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeReport {
    pub prime: bool,
    /// Nonzero `(a, b)` with `(a·x)·b = 0` for all `x`.
    pub witness: Option<(Element, Element)>,
    /// Projective representatives examined.
    pub scanned: u64,
}

pub(crate) fn check_budget(field: FieldSpec, dim: usize, budget: u64) -> Result<u64, PeirceError> {
    let FieldSpec::Prime { p } = field else {
        return Err(PeirceError::NotFinite);
    };
    let size = u32::try_from(dim)
        .ok()
        .and_then(|d| p.checked_pow(d))
        .filter(|&s| s <= budget);
    size.ok_or_else(|| PeirceError::BudgetExceeded {
        size: format!("{p}^{dim}"),
        budget,
    })
}

/// Decodes a flat index into base-`p` digits, most significant first.
pub(crate) fn digits(field: FieldSpec, p: u64, len: usize, mut index: u64) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for slot in out.iter_mut().rev() {
        *slot = field.from_i64((index % p) as i64);
        index /= p;
    }
    out
}

/// Decides primeness by the criterion `a𝔯·b = 0 ⇒ a = 0 or b = 0`.
///
/// `a` runs over projective representatives (first nonzero coordinate 1),
/// ordered by the position of that leading 1 and then lexicographically;
/// for each, the `b` with `(a·b_k)·b = 0 ∀k` form a kernel. The reported
/// witness is the first `a` in that order, independent of thread count.
pub fn prime_check_exhaustive(a: &Algebra, budget: u64) -> Result<PrimeReport, PeirceError> {
    let field = a.field();
    let n = a.dim();
    check_budget(field, n, budget)?;
    let FieldSpec::Prime { p } = field else {
        unreachable!("checked above");
    };
    // (a·b_k)·b_t = Σ_s a_s (b_s b_k) b_t, so the system is Σ_s a_s M_s.
    let basis: Vec<Element> = (0..n).map(|i| a.basis(i)).collect();
    let blocks: Vec<Matrix> = basis
        .iter()
        .map(|bs| {
            let mut m = Matrix::zeros(field, 0, n);
            for bk in &basis {
                let sk = a.multiply(bs, bk);
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|bt| a.multiply(&sk, bt).into_coords())
                    .collect();
                m.stack(&Matrix::from_columns(field, n, &cols));
            }
            m
        })
        .collect();
    // offsets[pos] = number of representatives whose leading 1 is before pos
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0u64;
    for pos in 0..n {
        offsets.push(total);
        total += p.pow((n - pos - 1) as u32);
    }
    let representative = |idx: u64| -> Element {
        let pos = offsets.iter().rposition(|&o| o <= idx).expect("in range");
        let mut coords = vec![field.zero(); n];
        coords[pos] = field.one();
        let tail = digits(field, p, n - pos - 1, idx - offsets[pos]);
        for (slot, v) in coords[pos + 1..].iter_mut().zip(tail) {
            *slot = v;
        }
        Element::new(coords)
    };
    let witness = (0..total).into_par_iter().find_map_first(|idx| {
        let x = representative(idx);
        let mut system = Matrix::zeros(field, n * n, n);
        for (s, coeff) in x.coords().iter().enumerate() {
            if !coeff.is_zero() {
                let block = &blocks[s];
                for r in 0..n * n {
                    for c in 0..n {
                        let v = &block[(r, c)];
                        if !v.is_zero() {
                            system[(r, c)] = &system[(r, c)] + &(coeff * v);
                        }
                    }
                }
            }
        }
        kernel_basis(&system)
            .into_iter()
            .next()
            .map(|b| (x, Element::new(b)))
    });
    Ok(PrimeReport {
        prime: witness.is_none(),
        witness,
        scanned: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::constructions::{ground_field, matrix_algebra, zorn};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn qq(field: FieldSpec) -> Algebra {
        let f = ground_field(field).algebra;
        direct_sum(&f, &f).unwrap()
    }

    #[test]
    fn idempotent_checks() {
        let (m2, e11) = matrix_algebra(q(), 2).unwrap();
        assert!(verify_idempotent(&m2, &e11).unwrap());
        assert!(!verify_idempotent(&m2, m2.unit().unwrap()).unwrap());
        assert!(!verify_idempotent(&m2, &m2.basis(1)).unwrap());
        assert!(!verify_idempotent(&m2, &m2.zero()).unwrap());
        let null = Algebra::new("null", q(), vec!["a".into()], vec![]).unwrap();
        assert!(matches!(
            verify_idempotent(&null, &null.basis(0)),
            Err(PeirceError::Algebra(AlgebraError::NotUnital(_)))
        ));
        assert!(matches!(
            peirce_decompose(&m2, &m2.basis(1)),
            Err(PeirceError::NotIdempotent { .. })
        ));
    }

    #[test]
    fn matrix_decomposition() {
        let (m2, e11) = matrix_algebra(q(), 2).unwrap();
        let pd = peirce_decompose(&m2, &e11).unwrap();
        assert_eq!(pd.dims(), [1, 1, 1, 1]);
        for (c, k) in Component::ALL.into_iter().zip(0..4) {
            assert_eq!(pd.component(c).basis(), &[m2.basis(k)]);
        }
        let sum = Component::ALL
            .iter()
            .map(|c| pd.projector(*c).clone())
            .reduce(|a, b| a.add(&b))
            .unwrap();
        assert_eq!(sum, Matrix::identity(q(), 4));
        assert!(check_peirce_relations(&pd).iter().all(|r| r.pass));
    }

    #[test]
    fn projectors_are_orthogonal_idempotents() {
        let (z, e11) = zorn(q());
        let pd = peirce_decompose(&z, &e11).unwrap();
        assert_eq!(pd.dims(), [1, 3, 3, 1]);
        for c in Component::ALL {
            for d in Component::ALL {
                let prod = pd.projector(c).mul(pd.projector(d));
                if c == d {
                    assert_eq!(&prod, pd.projector(c));
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
    }

    #[test]
    fn zorn_relations_over_f5() {
        let (z, e11) = zorn(f5());
        let pd = peirce_decompose(&z, &e11).unwrap();
        let checks = check_peirce_relations(&pd);
        assert!(checks.iter().all(|r| r.pass), "{checks:?}");
        // u1 u2 lies in R21
        let u1u2 = z.multiply(&z.basis(2), &z.basis(3));
        assert!(pd.component(Component::R21).contains(&u1u2));
        assert!(!u1u2.is_zero());
    }

    #[test]
    fn relation_failure_is_witnessed() {
        // e·x = x, x·x = x: x lands in R11 but the algebra is not alternative
        let f = q();
        let alg = Algebra::new(
            "bad",
            f,
            vec!["1".into(), "e".into(), "x".into()],
            vec![
                (0, 0, 0, f.one()),
                (0, 1, 1, f.one()),
                (1, 0, 1, f.one()),
                (0, 2, 2, f.one()),
                (2, 0, 2, f.one()),
                (1, 1, 1, f.one()),
                (1, 2, 2, f.one()),
                (2, 2, 2, f.one()),
            ],
        )
        .unwrap();
        let e = alg.basis(1);
        match peirce_decompose(&alg, &e) {
            Ok(pd) => {
                let checks = check_peirce_relations(&pd);
                let bad: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
                assert!(!bad.is_empty());
                assert!(bad.iter().all(|c| c.witness.is_some()));
            }
            Err(PeirceError::MixedIdentity { .. }) => {}
            Err(other) => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn centers() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        let c = center(&m2);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(m2.unit().unwrap()));
        let qq = qq(q());
        assert_eq!(center(&qq).dim(), 2);
        let (z, _) = zorn(q());
        let cz = center(&z);
        assert_eq!(cz.dim(), 1);
        assert!(cz.contains(z.unit().unwrap()));
    }

    #[test]
    fn scalar_matrices_are_the_center_of_m3() {
        // oracle: z commutes with every E_ij iff z is scalar
        let (m3, _) = matrix_algebra(q(), 3).unwrap();
        let c = center(&m3);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&Element::from_i64(q(), &[7, 0, 0, 0, 7, 0, 0, 0, 7])));
        assert!(!c.contains(&Element::from_i64(q(), &[1, 0, 0, 0, 2, 0, 0, 0, 1])));
    }

    #[test]
    fn nuclei() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        assert_eq!(nucleus(&m2).subspace().dim(), 4);
        let (z, _) = zorn(q());
        let nz = nucleus(&z);
        assert_eq!(nz.subspace().dim(), 1);
        assert!(nz.subspace().contains(z.unit().unwrap()));
        assert!(center(&z).subspace().is_subspace_of(nz.subspace()));
    }

    #[test]
    fn hypothesis_examples() {
        let (m2, e11) = matrix_algebra(q(), 2).unwrap();
        assert_eq!(hypothesis_check(&m2, &e11).unwrap().holds, [true, true]);
        let (z, e) = zorn(q());
        assert_eq!(hypothesis_check(&z, &e).unwrap().holds, [true, true]);
        let qq = qq(q());
        let h = hypothesis_check(&qq, &qq.basis(0)).unwrap();
        assert_eq!(h.holds, [false, false]);
        assert_eq!(h.witness(Side::One), Some(&qq.basis(1)));
        assert_eq!(h.witness(Side::Two), Some(&qq.basis(0)));
    }

    #[test]
    fn center_via_peirce_matches_center() {
        let (m2, e11) = matrix_algebra(q(), 2).unwrap();
        let pd = peirce_decompose(&m2, &e11).unwrap();
        let c = center_via_peirce(&pd).unwrap();
        assert!(c.subspace().same_as(center(&m2).subspace()));
        assert!(c.contains(m2.unit().unwrap()));
        let (z, e) = zorn(q());
        let pd = peirce_decompose(&z, &e).unwrap();
        assert!(center_via_peirce(&pd)
            .unwrap()
            .subspace()
            .same_as(center(&z).subspace()));
        let qq = qq(q());
        let pd = peirce_decompose(&qq, &qq.basis(0)).unwrap();
        assert!(matches!(
            center_via_peirce(&pd),
            Err(PeirceError::HypothesisFailed { side: 1, .. })
        ));
    }

    #[test]
    fn central_lifts() {
        let (m2, e11) = matrix_algebra(q(), 2).unwrap();
        let pd = peirce_decompose(&m2, &e11).unwrap();
        let c = q().from_ratio(-3, 7);
        let z = lift_central(&pd, &e11.scale(&c), Side::One)
            .unwrap()
            .unwrap();
        assert_eq!(z, m2.unit().unwrap().scale(&c));
        assert_eq!(
            lift_central(&pd, &m2.zero(), Side::Two).unwrap(),
            Some(m2.zero())
        );
        assert!(matches!(
            lift_central(&pd, &m2.basis(1), Side::One),
            Err(PeirceError::LiftPrecondition(_))
        ));
        let qq = qq(q());
        let pd = peirce_decompose(&qq, &qq.basis(0)).unwrap();
        assert_eq!(
            lift_central(&pd, &qq.basis(0), Side::One).unwrap(),
            Some(qq.basis(0))
        );
    }

    #[test]
    fn every_central_element_lifts_its_corners() {
        let (z, e) = zorn(q());
        let pd = peirce_decompose(&z, &e).unwrap();
        for c in pd.center().subspace().basis() {
            for side in Side::BOTH {
                let corner = pd.project(Component::diagonal(side), c);
                let lift = lift_central(&pd, &corner, side).unwrap().unwrap();
                assert_eq!(z.multiply(&lift, pd.e(side)), corner);
            }
        }
    }

    #[test]
    fn primeness() {
        let (m2, _) = matrix_algebra(f5(), 2).unwrap();
        assert!(prime_check_exhaustive(&m2, DEFAULT_BUDGET).unwrap().prime);
        let ff = qq(f5());
        let r = prime_check_exhaustive(&ff, DEFAULT_BUDGET).unwrap();
        assert!(!r.prime);
        assert_eq!(r.witness, Some((ff.basis(0), ff.basis(1))));
        assert!(matches!(
            prime_check_exhaustive(&m2, 100),
            Err(PeirceError::BudgetExceeded { .. })
        ));
        let (mq, _) = matrix_algebra(q(), 2).unwrap();
        assert_eq!(
            prime_check_exhaustive(&mq, DEFAULT_BUDGET),
            Err(PeirceError::NotFinite)
        );
    }
}
