//! Builtin algebras: full matrix algebras, Zorn's vector matrices (the split
//! octonions) and the Cayley–Dickson doubling.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// Product convention used by [`cayley_dickson_double`].
pub const CAYLEY_DICKSON_CONVENTION: &str =
    "(a,b)(c,d) = (ac + gamma*d*conj(b), conj(a)*d + c*b); conj(a,b) = (conj(a), -b)";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("matrix algebras need n >= 2 to carry a nontrivial idempotent (got {0})")]
    MatrixTooSmall(usize),
    #[error("Cayley-Dickson needs at least one doubling step")]
    NoSteps,
    #[error("doubling parameter {step} is zero")]
    ZeroGamma { step: usize },
    #[error("doubling parameters must lie in {expected}")]
    GammaField { expected: FieldSpec },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `M_n(F)` with matrix-unit basis `E_ij` (row-major) and its idempotent `E_11`.
pub fn matrix_algebra(field: FieldSpec, n: usize) -> Result<(Algebra, Element), ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::MatrixTooSmall(n));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let labels = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                if n < 10 {
                    format!("E{}{}", i + 1, j + 1)
                } else {
                    format!("E{}_{}", i + 1, j + 1)
                }
            })
        })
        .collect();
    let mut entries = Vec::new();
    // E_ij E_jl = E_il
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                entries.push((idx(i, j), idx(j, l), idx(i, l), field.one()));
            }
        }
    }
    let algebra = Algebra::new(
        format!("M{n}({})", field.short_name()),
        field,
        labels,
        entries,
    )?
    .with_comment(format!("matrix algebra n={n}"));
    let e11 = algebra.basis(0);
    Ok((algebra, e11))
}

/// Zorn's vector-matrix algebra over `field`, with basis
/// `e11, e22, u1, u2, u3, v1, v2, v3` and idempotent `e11`.
///
/// An element `[a, u; v, b]` multiplies as
/// `[a a' + u·v', a u' + b' u − v×v'; a' v + b v' + u×u', b b' + v·u']`.
pub fn zorn(field: FieldSpec) -> (Algebra, Element) {
    let labels = ["e11", "e22", "u1", "u2", "u3", "v1", "v2", "v3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let one = field.one();
    let minus = -&one;
    let (e11, e22) = (0, 1);
    let u = |i: usize| 2 + i;
    let v = |i: usize| 5 + i;
    let mut entries = vec![(e11, e11, e11, one.clone()), (e22, e22, e22, one.clone())];
    for i in 0..3 {
        entries.push((e11, u(i), u(i), one.clone()));
        entries.push((u(i), e22, u(i), one.clone()));
        entries.push((v(i), e11, v(i), one.clone()));
        entries.push((e22, v(i), v(i), one.clone()));
        // u·v' lands on e11, v·u' on e22
        entries.push((u(i), v(i), e11, one.clone()));
        entries.push((v(i), u(i), e22, one.clone()));
    }
    // u_i u_j = v_k and v_i v_j = −u_k for cyclic (i, j, k)
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        entries.push((u(i), u(j), v(k), one.clone()));
        entries.push((u(j), u(i), v(k), minus.clone()));
        entries.push((v(i), v(j), u(k), minus.clone()));
        entries.push((v(j), v(i), u(k), one.clone()));
    }
    let algebra = Algebra::new(
        format!("Zorn({})", field.short_name()),
        field,
        labels,
        entries,
    )
    .expect("Zorn structure constants are well formed")
    .with_comment("Zorn vector matrices [a,u;v,b], basis e11,e22,u1..u3,v1..v3");
    let e = algebra.basis(e11);
    (algebra, e)
}

/// One doubling parameter per step, each nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyDicksonParams {
    gammas: Vec<Scalar>,
}

impl CayleyDicksonParams {
    pub fn new(gammas: Vec<Scalar>) -> Result<Self, ConstructionError> {
        if gammas.is_empty() {
            return Err(ConstructionError::NoSteps);
        }
        if let Some(step) = gammas.iter().position(Scalar::is_zero) {
            return Err(ConstructionError::ZeroGamma { step: step + 1 });
        }
        Ok(CayleyDicksonParams { gammas })
    }

    pub fn steps(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[Scalar] {
        &self.gammas
    }
}

/// An algebra together with a designated involution fixing the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveAlgebra {
    pub algebra: Algebra,
    /// Matrix of the involution on coordinates.
    pub conjugation: Matrix,
}

impl InvolutiveAlgebra {
    pub fn conjugate(&self, x: &Element) -> Element {
        Element::new(self.conjugation.mul_vec(x.coords()))
    }
}

/// The ground field as a one-dimensional algebra with trivial involution.
pub fn ground_field(field: FieldSpec) -> InvolutiveAlgebra {
    let algebra = Algebra::new(
        field.short_name(),
        field,
        vec!["e0".to_string()],
        vec![(0, 0, 0, field.one())],
    )
    .expect("one-dimensional field algebra");
    InvolutiveAlgebra {
        algebra,
        conjugation: Matrix::identity(field, 1),
    }
}

/// One doubling step; see [`CAYLEY_DICKSON_CONVENTION`].
pub fn cayley_dickson_double(
    base: &InvolutiveAlgebra,
    gamma: &Scalar,
) -> Result<InvolutiveAlgebra, ConstructionError> {
    let field = base.algebra.field();
    if gamma.is_zero() {
        return Err(ConstructionError::ZeroGamma { step: 1 });
    }
    if gamma.field() != field {
        return Err(ConstructionError::GammaField { expected: field });
    }
    let n = base.algebra.dim();
    let a = &base.algebra;
    let split = |x: &Element| {
        let (l, r) = x.coords().split_at(n);
        (Element::new(l.to_vec()), Element::new(r.to_vec()))
    };
    let join = |l: Element, r: Element| {
        let mut c = l.into_coords();
        c.extend(r.into_coords());
        Element::new(c)
    };
    let mut entries = Vec::new();
    for i in 0..2 * n {
        for j in 0..2 * n {
            let (x0, x1) = split(&Element::basis(field, 2 * n, i));
            let (y0, y1) = split(&Element::basis(field, 2 * n, j));
            let left = &a.multiply(&x0, &y0) + &a.multiply(&y1, &base.conjugate(&x1)).scale(gamma);
            let right = &a.multiply(&base.conjugate(&x0), &y1) + &a.multiply(&y0, &x1);
            for (k, c) in join(left, right).into_coords().into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let labels = (0..2 * n).map(|k| format!("e{k}")).collect();
    let algebra = Algebra::new(format!("CD{}", 2 * n), field, labels, entries)?;
    let mut conjugation = Matrix::zeros(field, 2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            conjugation[(r, c)] = base.conjugation[(r, c)].clone();
        }
        conjugation[(n + r, n + r)] = -&field.one();
    }
    Ok(InvolutiveAlgebra {
        algebra,
        conjugation,
    })
}

/// Iterated doubling starting from the ground field.
pub fn cayley_dickson(
    field: FieldSpec,
    params: &CayleyDicksonParams,
) -> Result<InvolutiveAlgebra, ConstructionError> {
    let mut current = ground_field(field);
    for (step, gamma) in params.gammas().iter().enumerate() {
        current = cayley_dickson_double(&current, gamma).map_err(|e| match e {
            ConstructionError::ZeroGamma { .. } => ConstructionError::ZeroGamma { step: step + 1 },
            other => other,
        })?;
    }
    let gammas: Vec<String> = params.gammas().iter().map(ToString::to_string).collect();
    let name = format!("CD({}; {})", field.short_name(), gammas.join(","));
    let comment = format!(
        "Cayley-Dickson steps={} gammas={}; convention {}",
        params.steps(),
        gammas.join(","),
        CAYLEY_DICKSON_CONVENTION
    );
    current.algebra = current.algebra.renamed(name).with_comment(comment);
    Ok(current)
}

/// Looks for a nontrivial idempotent inside some two-dimensional subalgebra
/// `span{1, b_k}` with `b_k² = λ·1`: writing `e = α + β b_k`, `e² = e` forces
/// `α = 1/2` and `β² = 1/(4λ)`, solvable when `λ` is a nonzero square.
pub fn split_idempotent(a: &Algebra) -> Option<Element> {
    let unit = a.unit()?;
    let field = a.field();
    let half = field.from_ratio(1, 2);
    let four = field.from_i64(4);
    let unit_index = (0..a.dim()).find(|&i| &a.basis(i) == unit);
    for k in 0..a.dim() {
        if Some(k) == unit_index {
            continue;
        }
        let b = a.basis(k);
        let sq = a.multiply(&b, &b);
        // sq = λ·unit ?
        let Some(pos) = unit.coords().iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let lambda = &sq.coords()[pos] * &unit.coords()[pos].inverse().expect("nonzero");
        if lambda.is_zero() || unit.scale(&lambda) != sq {
            continue;
        }
        let target = (&four * &lambda).inverse().expect("nonzero");
        if let Some(beta) = target.sqrt() {
            let e = &unit.scale(&half) + &b.scale(&beta);
            debug_assert_eq!(a.multiply(&e, &e), e);
            return Some(e);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_alternative;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn matrix_algebra_shapes() {
        let (m2, e) = matrix_algebra(q(), 2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.unit(), Some(&Element::from_i64(q(), &[1, 0, 0, 1])));
        assert!(is_alternative(&m2).alternative);
        assert_eq!(m2.multiply(&e, &e), e);
        assert!(!e.is_zero() && Some(&e) != m2.unit());
        let (m3, _) = matrix_algebra(FieldSpec::prime(5).unwrap(), 3).unwrap();
        assert_eq!(m3.dim(), 9);
        assert_eq!(
            matrix_algebra(q(), 1),
            Err(ConstructionError::MatrixTooSmall(1))
        );
    }

    #[test]
    fn zorn_properties() {
        let (z, e11) = zorn(q());
        assert!(is_alternative(&z).alternative);
        assert!(!z.is_associative());
        let u1 = z.basis(2);
        assert_eq!(z.multiply(&e11, &u1), u1);
        assert!(z.multiply(&u1, &e11).is_zero());
        // u1 u2 = v3
        assert_eq!(z.multiply(&z.basis(2), &z.basis(3)), z.basis(7));
    }

    #[test]
    fn cayley_dickson_stages() {
        let one = q().one();
        let neg = -&one;
        for steps in 1..=3usize {
            for mask in 0..(1u32 << steps) {
                let gammas = (0..steps)
                    .map(|s| {
                        if mask >> s & 1 == 1 {
                            neg.clone()
                        } else {
                            one.clone()
                        }
                    })
                    .collect();
                let cd = cayley_dickson(q(), &CayleyDicksonParams::new(gammas).unwrap()).unwrap();
                assert_eq!(cd.algebra.dim(), 1 << steps);
                assert!(is_alternative(&cd.algebra).alternative);
                assert_eq!(cd.algebra.is_associative(), steps <= 2);
                assert_eq!(cd.algebra.unit(), Some(&cd.algebra.basis(0)));
            }
        }
        let sed = cayley_dickson(q(), &CayleyDicksonParams::new(vec![one; 4]).unwrap()).unwrap();
        assert!(!is_alternative(&sed.algebra).alternative);
    }

    #[test]
    fn split_octonions_have_idempotents() {
        let cd =
            cayley_dickson(q(), &CayleyDicksonParams::new(vec![q().one(); 3]).unwrap()).unwrap();
        let e = split_idempotent(&cd.algebra).unwrap();
        assert_eq!(cd.algebra.multiply(&e, &e), e);
        assert_eq!(
            e,
            Element::new(vec![
                q().from_ratio(1, 2),
                q().from_ratio(1, 2),
                q().zero(),
                q().zero(),
                q().zero(),
                q().zero(),
                q().zero(),
                q().zero()
            ])
        );
        // division quaternions over Q (gammas -1, -1): no square lambda
        let h = cayley_dickson(
            q(),
            &CayleyDicksonParams::new(vec![-q().one(), -q().one()]).unwrap(),
        )
        .unwrap();
        assert_eq!(split_idempotent(&h.algebra), None);
    }

    #[test]
    fn conjugation_is_an_anti_involution() {
        let cd = cayley_dickson(
            q(),
            &CayleyDicksonParams::new(vec![q().one(), q().from_i64(-1), q().from_i64(2)]).unwrap(),
        )
        .unwrap();
        let a = &cd.algebra;
        let x = Element::from_i64(q(), &[1, -2, 3, 0, 5, -1, 2, 7]);
        let y = Element::from_i64(q(), &[0, 4, -3, 1, 1, 2, -2, 3]);
        assert_eq!(cd.conjugate(&cd.conjugate(&x)), x);
        assert_eq!(
            cd.conjugate(&a.multiply(&x, &y)),
            a.multiply(&cd.conjugate(&y), &cd.conjugate(&x))
        );
        assert_eq!(cd.conjugate(a.unit().unwrap()), a.unit().unwrap().clone());
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(
            CayleyDicksonParams::new(vec![]),
            Err(ConstructionError::NoSteps)
        );
        assert_eq!(
            CayleyDicksonParams::new(vec![q().one(), q().zero()]),
            Err(ConstructionError::ZeroGamma { step: 2 })
        );
    }
}
