//! Commuting and anti-commuting linear maps, and the decomposition
//! `φ(x) = z·x + Ξ(x)` with `z` central and `Ξ` center-valued.
//!
//! All checks run on basis vectors. Every condition involved is bilinear in
//! its arguments (after polarization for the commuting condition), so basis
//! checks decide the universal statements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{solve, Matrix};
use crate::peirce::{check_budget, digits, CenterBasis, Component, PeirceData, PeirceError, Side};

/// Random coefficients are drawn uniformly from `-COEFF_RANGE..=COEFF_RANGE`.
pub const COEFF_RANGE: i64 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommutingError {
    #[error("map has dimension {found}, algebra has dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("map is over {found}, algebra is over {expected}")]
    FieldMismatch {
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error(transparent)]
    Peirce(#[from] PeirceError),
    #[error("not commuting: [φ(b{i}), b{j}] + [φ(b{j}), b{i}] = {value}")]
    NotCommuting { i: usize, j: usize, value: Element },
    #[error("no central lift of {element} along e{side}")]
    LiftFailed { side: u8, element: Element },
}

/// A linear endomorphism acting on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self, CommutingError> {
        if matrix.rows() != matrix.cols() {
            return Err(CommutingError::Dimension {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        Ok(LinearMap { matrix })
    }

    /// The map sending `b_k` to `f(k)`.
    pub fn from_images(a: &Algebra, f: impl Fn(usize) -> Element) -> Self {
        let cols: Vec<Vec<Scalar>> = (0..a.dim()).map(|k| f(k).into_coords()).collect();
        LinearMap {
            matrix: Matrix::from_columns(a.field(), a.dim(), &cols),
        }
    }

    pub fn identity(a: &Algebra) -> Self {
        LinearMap {
            matrix: Matrix::identity(a.field(), a.dim()),
        }
    }

    pub fn zero(a: &Algebra) -> Self {
        LinearMap {
            matrix: Matrix::zeros(a.field(), a.dim(), a.dim()),
        }
    }

    pub fn left_multiplication(a: &Algebra, z: &Element) -> Self {
        LinearMap {
            matrix: a.left_multiplication(z),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::new(self.matrix.mul_vec(x.coords()))
    }

    pub fn image(&self, k: usize) -> Element {
        Element::new(self.matrix.column(k))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn check_against(&self, a: &Algebra) -> Result<(), CommutingError> {
        if self.dim() != a.dim() {
            return Err(CommutingError::Dimension {
                expected: a.dim(),
                found: self.dim(),
            });
        }
        if self.matrix.field() != a.field() {
            return Err(CommutingError::FieldMismatch {
                expected: a.field(),
                found: self.matrix.field(),
            });
        }
        Ok(())
    }
}

/// A failing basis pair `(b_i, b_j)` and the nonzero value found there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub holds: bool,
    pub witness: Option<PairWitness>,
}

fn scan_pairs(a: &Algebra, symmetric: bool, f: impl Fn(usize, usize) -> Element) -> MapCheck {
    let n = a.dim();
    for i in 0..n {
        let start = if symmetric { i } else { 0 };
        for j in start..n {
            let value = f(i, j);
            if !value.is_zero() {
                return MapCheck {
                    holds: false,
                    witness: Some(PairWitness { i, j, value }),
                };
            }
        }
    }
    MapCheck {
        holds: true,
        witness: None,
    }
}

/// `[φ(b_i), b_j] + [φ(b_j), b_i] = 0` for all `i ≤ j`.
pub fn is_commuting(a: &Algebra, phi: &LinearMap) -> Result<MapCheck, CommutingError> {
    phi.check_against(a)?;
    let images: Vec<Element> = (0..a.dim()).map(|k| phi.image(k)).collect();
    Ok(scan_pairs(a, true, |i, j| {
        &a.commutator(&images[i], &a.basis(j)) + &a.commutator(&images[j], &a.basis(i))
    }))
}

/// `[φ(b_i), b_j] + [b_i, φ(b_j)] = 0` for all `i, j`.
pub fn is_anti_commuting(a: &Algebra, phi: &LinearMap) -> Result<MapCheck, CommutingError> {
    phi.check_against(a)?;
    let images: Vec<Element> = (0..a.dim()).map(|k| phi.image(k)).collect();
    Ok(scan_pairs(a, false, |i, j| {
        &a.commutator(&images[i], &a.basis(j)) + &a.commutator(&a.basis(i), &images[j])
    }))
}

/// Why a candidate decomposition was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationFailure {
    pub basis_index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub z: Element,
    pub xi: LinearMap,
    pub verified: bool,
    /// Central lift of `e2 φ(e1) e2`; absent for the oracle route.
    pub z1: Option<Element>,
    /// Central lift of `e1 φ(e2) e1`; absent for the oracle route.
    pub z2: Option<Element>,
    pub failure: Option<VerificationFailure>,
}

impl Decomposition {
    /// `z·b_k + Ξ(b_k)` for every basis vector.
    pub fn images(&self, a: &Algebra) -> Vec<Element> {
        (0..a.dim())
            .map(|k| &a.multiply(&self.z, &a.basis(k)) + &self.xi.image(k))
            .collect()
    }
}

fn first_noncentral(a: &Algebra, x: &Element) -> Option<usize> {
    (0..a.dim()).find(|&l| !a.commutator(x, &a.basis(l)).is_zero())
}

/// Checks `z` central, `Ξ(b_k)` central, and `φ(b_k) = z·b_k + Ξ(b_k)`.
pub fn verify_decomposition(
    a: &Algebra,
    phi: &LinearMap,
    z: &Element,
    xi: &LinearMap,
) -> Option<VerificationFailure> {
    if let Some(l) = first_noncentral(a, z) {
        return Some(VerificationFailure {
            basis_index: l,
            reason: format!("z does not commute with {}", a.labels()[l]),
        });
    }
    for k in 0..a.dim() {
        let xk = xi.image(k);
        if let Some(l) = first_noncentral(a, &xk) {
            return Some(VerificationFailure {
                basis_index: k,
                reason: format!(
                    "Ξ({}) does not commute with {}",
                    a.labels()[k],
                    a.labels()[l]
                ),
            });
        }
        if phi.image(k) != &a.multiply(z, &a.basis(k)) + &xk {
            return Some(VerificationFailure {
                basis_index: k,
                reason: format!("φ({0}) != z·{0} + Ξ({0})", a.labels()[k]),
            });
        }
    }
    None
}

fn assemble(
    a: &Algebra,
    phi: &LinearMap,
    z: Element,
    z1: Option<Element>,
    z2: Option<Element>,
) -> Decomposition {
    let xi = phi.sub(&LinearMap::left_multiplication(a, &z));
    let failure = verify_decomposition(a, phi, &z, &xi);
    Decomposition {
        z,
        xi,
        verified: failure.is_none(),
        z1,
        z2,
        failure,
    }
}

/// Builds `z` from the explicit formula
/// `z = e1φ(e1)e1 + e2φ(e2)e2 − (z1·e1 + z2·e2)` with `z1·e2 = e2φ(e1)e2`
/// and `z2·e1 = e1φ(e2)e1`, sets `Ξ = φ − L_z`, then verifies the result.
///
/// A failed verification is returned in the decomposition, not as an error.
pub fn decompose(pd: &PeirceData<'_>, phi: &LinearMap) -> Result<Decomposition, CommutingError> {
    let a = pd.algebra();
    phi.check_against(a)?;
    pd.require_hypothesis()?;
    let check = is_commuting(a, phi)?;
    if let Some(w) = check.witness {
        return Err(CommutingError::NotCommuting {
            i: w.i,
            j: w.j,
            value: w.value,
        });
    }
    let (e1, e2) = (pd.e(Side::One), pd.e(Side::Two));
    let (phi_e1, phi_e2) = (phi.apply(e1), phi.apply(e2));
    let lift = |y: Element, side: Side| -> Result<Element, CommutingError> {
        crate::peirce::lift_central(pd, &y, side)?.ok_or(CommutingError::LiftFailed {
            side: side.number(),
            element: y,
        })
    };
    let z1 = lift(pd.project(Component::R22, &phi_e1), Side::Two)?;
    let z2 = lift(pd.project(Component::R11, &phi_e2), Side::One)?;
    let diagonal = &pd.project(Component::R11, &phi_e1) + &pd.project(Component::R22, &phi_e2);
    let correction = &a.multiply(&z1, e1) + &a.multiply(&z2, e2);
    let z = &diagonal - &correction;
    Ok(assemble(a, phi, z, Some(z1), Some(z2)))
}

/// Finds central `z` with `φ(b_k) − z·b_k` central for all `k` by one linear
/// solve over center coordinates. Independent of the Peirce decomposition.
pub fn decompose_oracle(
    a: &Algebra,
    center: &CenterBasis,
    phi: &LinearMap,
) -> Result<Option<Decomposition>, CommutingError> {
    phi.check_against(a)?;
    let n = a.dim();
    let cb = center.subspace().basis();
    // Σ_t α_t [c_t b_k, b_l] = [φ(b_k), b_l]
    let mut system = Matrix::zeros(a.field(), 0, cb.len());
    let mut rhs = Vec::with_capacity(n * n * n);
    for k in 0..n {
        let bk = a.basis(k);
        let products: Vec<Element> = cb.iter().map(|c| a.multiply(c, &bk)).collect();
        let image = phi.image(k);
        for l in 0..n {
            let bl = a.basis(l);
            let cols: Vec<Vec<Scalar>> = products
                .iter()
                .map(|p| a.commutator(p, &bl).into_coords())
                .collect();
            system.stack(&Matrix::from_columns(a.field(), n, &cols));
            rhs.extend(a.commutator(&image, &bl).into_coords());
        }
    }
    Ok(solve(&system, &rhs).map(|alpha| {
        let z = center.subspace().combination(&alpha);
        assemble(a, phi, z, None, None)
    }))
}

/// A map `x ↦ z·x + Ξ(x)` together with its generating data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingSample {
    pub z: Element,
    pub xi: LinearMap,
    pub phi: LinearMap,
}

fn draw(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    field.from_i64(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))
}

/// Draws `z` with center coordinates in `[-3, 3]` and `Ξ = C·R`, where the
/// columns of `C` are the center basis and `R` has entries in `[-3, 3]`.
pub fn random_commuting_sample(a: &Algebra, center: &CenterBasis, seed: u64) -> CommutingSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = a.field();
    let cs = center.subspace();
    let alpha: Vec<Scalar> = (0..cs.dim()).map(|_| draw(&mut rng, field)).collect();
    let z = cs.combination(&alpha);
    let r_rows: Vec<Vec<Scalar>> = (0..cs.dim())
        .map(|_| (0..a.dim()).map(|_| draw(&mut rng, field)).collect())
        .collect();
    let xi_matrix = if cs.dim() == 0 {
        Matrix::zeros(field, a.dim(), a.dim())
    } else {
        cs.as_columns().mul(&Matrix::from_rows(field, r_rows))
    };
    let xi = LinearMap { matrix: xi_matrix };
    let phi = LinearMap::left_multiplication(a, &z).add(&xi);
    CommutingSample { z, xi, phi }
}

pub fn random_commuting_map(a: &Algebra, center: &CenterBasis, seed: u64) -> LinearMap {
    random_commuting_sample(a, center, seed).phi
}

/// A map with every matrix entry drawn from `[-3, 3]`.
pub fn random_linear_map(a: &Algebra, seed: u64) -> LinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..a.dim())
        .map(|_| (0..a.dim()).map(|_| draw(&mut rng, a.field())).collect())
        .collect();
    LinearMap {
        matrix: Matrix::from_rows(a.field(), rows),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub commuting: bool,
    /// The first `x` in lexicographic coordinate order with `[φ(x), x] ≠ 0`.
    pub witness: Option<Element>,
    pub scanned: u64,
}

/// Tests `[φ(x), x] = 0` literally on every element of a finite algebra.
pub fn exhaustive_commuting_check(
    a: &Algebra,
    phi: &LinearMap,
    budget: u64,
) -> Result<ExhaustiveReport, CommutingError> {
    phi.check_against(a)?;
    let total = check_budget(a.field(), a.dim(), budget)?;
    let p = a.field().characteristic();
    let witness = (0..total).into_par_iter().find_map_first(|idx| {
        let x = Element::new(digits(a.field(), p, a.dim(), idx));
        let bracket = a.commutator(&phi.apply(&x), &x);
        (!bracket.is_zero()).then_some(x)
    });
    Ok(ExhaustiveReport {
        commuting: witness.is_none(),
        witness,
        scanned: total,
    })
}

/// First basis pair with `z·[b_i, b_j] ≠ 0`.
pub fn z_commutator_witness(a: &Algebra, z: &Element) -> Option<PairWitness> {
    scan_pairs(a, true, |i, j| {
        a.multiply(z, &a.commutator(&a.basis(i), &a.basis(j)))
    })
    .witness
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matrix_algebra, zorn};
    use crate::peirce::{center, peirce_decompose, DEFAULT_BUDGET};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn transpose(a: &Algebra, n: usize) -> LinearMap {
        LinearMap::from_images(a, |k| a.basis((k % n) * n + k / n))
    }

    /// `x ↦ c·x + trace(x)·1` on `M_n`.
    fn scaled_plus_trace(a: &Algebra, n: usize, c: i64) -> LinearMap {
        let unit = a.unit().unwrap().clone();
        LinearMap::from_images(a, |k| {
            let scaled = a.basis(k).scale(&a.field().from_i64(c));
            if k % (n + 1) == 0 {
                &scaled + &unit
            } else {
                scaled
            }
        })
    }

    #[test]
    fn commuting_examples() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        assert!(is_commuting(&m2, &LinearMap::identity(&m2)).unwrap().holds);
        assert!(
            is_commuting(&m2, &scaled_plus_trace(&m2, 2, 0))
                .unwrap()
                .holds
        );
        let t = is_commuting(&m2, &transpose(&m2, 2)).unwrap();
        assert!(!t.holds);
        let w = t.witness.unwrap();
        // [E11, E12] + [E21, E11] = E12 + E21
        assert_eq!((w.i, w.j), (0, 1));
        assert_eq!(w.value, Element::from_i64(q(), &[0, 1, 1, 0]));
        // the diagonal pair: 2[E21, E12] = 2(E22 − E11)
        let t = transpose(&m2, 2);
        let diag = m2.commutator(&t.image(1), &m2.basis(1));
        assert_eq!(diag, Element::from_i64(q(), &[-1, 0, 0, 1]));
    }

    #[test]
    fn anti_commuting_examples() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        assert!(is_anti_commuting(&m2, &LinearMap::zero(&m2)).unwrap().holds);
        assert!(
            is_anti_commuting(&m2, &scaled_plus_trace(&m2, 2, 0))
                .unwrap()
                .holds
        );
        let w = is_anti_commuting(&m2, &LinearMap::identity(&m2))
            .unwrap()
            .witness
            .unwrap();
        assert_eq!((w.i, w.j), (0, 1));
    }

    #[test]
    fn dimension_is_checked() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        let (m3, _) = matrix_algebra(q(), 3).unwrap();
        assert_eq!(
            is_commuting(&m2, &LinearMap::identity(&m3)),
            Err(CommutingError::Dimension {
                expected: 4,
                found: 9
            })
        );
        assert!(LinearMap::new(Matrix::zeros(q(), 2, 3)).is_err());
    }

    #[test]
    fn decompose_identity_and_trace() {
        let (m2, e) = matrix_algebra(q(), 2).unwrap();
        let unit = m2.unit().unwrap().clone();
        let pd = peirce_decompose(&m2, &e).unwrap();

        let d = decompose(&pd, &LinearMap::identity(&m2)).unwrap();
        assert!(d.verified);
        assert_eq!(d.z, unit);
        assert!(d.xi.matrix().is_zero());
        assert_eq!(d.z1, Some(m2.zero()));
        assert_eq!(d.z2, Some(m2.zero()));

        let trace = scaled_plus_trace(&m2, 2, 0);
        let d = decompose(&pd, &trace).unwrap();
        assert!(d.verified);
        assert!(d.z.is_zero());
        assert_eq!(d.xi, trace);
        assert_eq!(d.z1.as_ref(), Some(&unit));
        assert_eq!(d.z2.as_ref(), Some(&unit));

        let d = decompose(&pd, &scaled_plus_trace(&m2, 2, 2)).unwrap();
        assert!(d.verified);
        assert_eq!(d.z, unit.scale(&q().from_i64(2)));
        assert_eq!(d.xi, trace);
    }

    #[test]
    fn decompose_refuses_transpose() {
        let (m2, e) = matrix_algebra(q(), 2).unwrap();
        let pd = peirce_decompose(&m2, &e).unwrap();
        let t = transpose(&m2, 2);
        assert!(matches!(
            decompose(&pd, &t),
            Err(CommutingError::NotCommuting { i: 0, j: 1, .. })
        ));
        assert_eq!(decompose_oracle(&m2, &center(&m2), &t).unwrap(), None);
    }

    #[test]
    fn oracle_agrees_on_samples() {
        let (z, e) = zorn(q());
        let pd = peirce_decompose(&z, &e).unwrap();
        for seed in 0..5 {
            let s = random_commuting_sample(&z, pd.center(), seed);
            let d = decompose(&pd, &s.phi).unwrap();
            let o = decompose_oracle(&z, pd.center(), &s.phi).unwrap().unwrap();
            assert!(d.verified && o.verified);
            assert_eq!(d.images(&z), o.images(&z));
            assert_eq!(o.z, s.z);
        }
    }

    #[test]
    fn samples_are_deterministic_and_commuting() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        let c = center(&m2);
        assert_eq!(
            random_commuting_map(&m2, &c, 9),
            random_commuting_map(&m2, &c, 9)
        );
        assert_eq!(random_linear_map(&m2, 9), random_linear_map(&m2, 9));
        for seed in 0..20 {
            let s = random_commuting_sample(&m2, &c, seed);
            assert!(is_commuting(&m2, &s.phi).unwrap().holds);
            // α·x + λ(x)·1: off-diagonal images are α times themselves plus a scalar
            let alpha = &s.z.coords()[0];
            for k in 0..4 {
                let img = s.phi.image(k);
                let rest = &img - &m2.basis(k).scale(alpha);
                assert_eq!(rest.coords()[0], rest.coords()[3]);
                assert!(rest.coords()[1].is_zero() && rest.coords()[2].is_zero());
            }
        }
    }

    #[test]
    fn exhaustive_check_over_f5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let (m2, _) = matrix_algebra(f5, 2).unwrap();
        let r = exhaustive_commuting_check(&m2, &LinearMap::identity(&m2), DEFAULT_BUDGET).unwrap();
        assert!(r.commuting);
        assert_eq!(r.scanned, 625);
        let r = exhaustive_commuting_check(&m2, &transpose(&m2, 2), DEFAULT_BUDGET).unwrap();
        assert!(!r.commuting);
        let x = r.witness.unwrap();
        let t = transpose(&m2, 2);
        assert!(!m2.commutator(&t.apply(&x), &x).is_zero());
        assert!(matches!(
            exhaustive_commuting_check(&m2, &t, 10),
            Err(CommutingError::Peirce(PeirceError::BudgetExceeded { .. }))
        ));
    }

    #[test]
    fn z_commutator_probe() {
        let (m2, _) = matrix_algebra(q(), 2).unwrap();
        assert!(z_commutator_witness(&m2, &m2.zero()).is_none());
        assert!(z_commutator_witness(&m2, m2.unit().unwrap()).is_some());
    }
}
