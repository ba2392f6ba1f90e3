//! The nine intermediate statements behind the decomposition theorem, each as
//! an exact check over one (algebra, idempotent, commuting map) instance.
//!
//! Statements quantified over a Peirce component are checked on that
//! component's basis; `φ` is additive and every expression is bilinear, so
//! this is equivalent. Existential statements ("some central `z` with ...")
//! are linear feasibility problems over center coordinates.

use std::fmt;

use crate::algebra::{is_alternative, Element};
use crate::commuting::{is_commuting, LinearMap};
use crate::field::Scalar;
use crate::linalg::{solve, Matrix};
use crate::peirce::{center, center_via_peirce, Component, PeirceData, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::L1,
        LemmaId::L2,
        LemmaId::L3,
        LemmaId::L4,
        LemmaId::L5,
        LemmaId::L6,
        LemmaId::L7,
        LemmaId::L8,
        LemmaId::L9,
    ];

    pub fn statement(self) -> &'static str {
        match self {
            LemmaId::L1 => "Z(R) = {z11 + z22 : [z11 + z22, R12] = [z11 + z22, R21] = 0}",
            LemmaId::L2 => "every z in Z(R_ii) is z·e_i for some central z",
            LemmaId::L3 => "φ(1), φ(e_i) in R11 + R22 and e_i φ(1) e_i lifts centrally",
            LemmaId::L4 => "φ(x_ii) in R11 + R22 and e_j φ(x_ii) e_j lifts centrally",
            LemmaId::L5 => "off-diagonal images: items (i)-(iv)",
            LemmaId::L6 => "φ(1) central and e_i φ(e_i) e_i = z_i e_i in Z(R_ii)",
            LemmaId::L7 => "e1φ(e1)e1 + e2φ(e2)e2 − (z e1 + z' e2) central for some central z, z'",
            LemmaId::L8 => "[e1 φ(x_ij) e1 + e2 φ(x_ij) e2, x_ji] = 0",
            LemmaId::L9 => "diagonal part of φ(x_ij) central; e_i φ(x_ii) e_i = z_i e_i + (e_i φ(e_i) e_i − z'_i e_i) x_ii",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The failing equation and the elements it was evaluated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaWitness {
    pub equation: String,
    pub elements: Vec<(String, Element)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaStatus {
    Pass,
    Fail(LemmaWitness),
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub status: LemmaStatus,
    pub notes: String,
    /// Basis instances evaluated.
    pub instances: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.status == LemmaStatus::Pass
    }

    pub fn witness(&self) -> Option<&LemmaWitness> {
        match &self.status {
            LemmaStatus::Fail(w) => Some(w),
            _ => None,
        }
    }
}

const BASIS_NOTE: &str = "checked on component basis vectors; extends by additivity of φ";

/// Accumulates instance counts and keeps the first failure.
struct Checker<'p, 'a> {
    pd: &'p PeirceData<'a>,
    instances: usize,
    failure: Option<LemmaWitness>,
}

impl<'p, 'a> Checker<'p, 'a> {
    fn new(pd: &'p PeirceData<'a>) -> Self {
        Checker {
            pd,
            instances: 0,
            failure: None,
        }
    }

    fn check(
        &mut self,
        ok: bool,
        equation: impl FnOnce() -> String,
        elements: impl FnOnce() -> Vec<(String, Element)>,
    ) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(LemmaWitness {
                equation: equation(),
                elements: elements(),
            });
        }
    }

    fn zero(&mut self, value: Element, equation: &str, inputs: &[(&str, &Element)]) {
        let ok = value.is_zero();
        self.check(
            ok,
            || equation.to_string(),
            || {
                let mut els: Vec<(String, Element)> = inputs
                    .iter()
                    .map(|(n, e)| (n.to_string(), (*e).clone()))
                    .collect();
                els.push(("value".into(), value.clone()));
                els
            },
        );
    }

    fn diagonal(&mut self, x: &Element, what: &str) {
        let off = &self.pd.project(Component::R12, x) + &self.pd.project(Component::R21, x);
        self.zero(off, &format!("{what} ∈ R11 + R22"), &[(what, x)]);
    }

    fn lifts(&mut self, y: &Element, side: Side, what: &str) {
        let ok = self.pd.central_lift(y, side).is_some();
        self.check(
            ok,
            || format!("{what} = z·e{} for some central z", side.number()),
            || vec![(what.to_string(), y.clone())],
        );
    }

    fn central(&mut self, x: &Element, what: &str) {
        let a = self.pd.algebra();
        for l in 0..a.dim() {
            let c = a.commutator(x, &a.basis(l));
            let label = a.labels()[l].clone();
            self.zero(c, &format!("[{what}, {label}] = 0"), &[(what, x)]);
        }
    }

    fn finish(self, lemma: LemmaId, notes: &str) -> LemmaReport {
        LemmaReport {
            lemma,
            status: match self.failure {
                None => LemmaStatus::Pass,
                Some(w) => LemmaStatus::Fail(w),
            },
            notes: notes.to_string(),
            instances: self.instances,
        }
    }
}

fn not_applicable(reason: &str) -> Vec<LemmaReport> {
    LemmaId::ALL
        .into_iter()
        .map(|lemma| LemmaReport {
            lemma,
            status: LemmaStatus::NotApplicable(reason.to_string()),
            notes: String::new(),
            instances: 0,
        })
        .collect()
}

/// Returns a reason when the instance does not meet the suite's preconditions.
pub fn gate(pd: &PeirceData<'_>, phi: &LinearMap) -> Option<String> {
    let a = pd.algebra();
    if phi.check_against(a).is_err() {
        return Some("map does not match the algebra".into());
    }
    if !pd.hypothesis().holds_both() {
        return Some("hypothesis_check failed".into());
    }
    if !is_alternative(a).alternative {
        return Some("not alternative".into());
    }
    if !is_commuting(a, phi).map(|c| c.holds).unwrap_or(false) {
        return Some("not commuting".into());
    }
    None
}

/// Runs one lemma. Reports are not-applicable when [`gate`] rejects the input.
pub fn run_lemma(id: LemmaId, pd: &PeirceData<'_>, phi: &LinearMap) -> LemmaReport {
    if let Some(reason) = gate(pd, phi) {
        return LemmaReport {
            lemma: id,
            status: LemmaStatus::NotApplicable(reason),
            notes: String::new(),
            instances: 0,
        };
    }
    Ctx { pd, phi }.run(id)
}

/// All nine reports in order; every lemma is evaluated even after a failure.
pub fn run_all(pd: &PeirceData<'_>, phi: &LinearMap) -> Vec<LemmaReport> {
    if let Some(reason) = gate(pd, phi) {
        return not_applicable(&reason);
    }
    let ctx = Ctx { pd, phi };
    LemmaId::ALL.into_iter().map(|id| ctx.run(id)).collect()
}

struct Ctx<'p, 'a> {
    pd: &'p PeirceData<'a>,
    phi: &'p LinearMap,
}

impl<'p, 'a> Ctx<'p, 'a> {
    fn run(&self, id: LemmaId) -> LemmaReport {
        match id {
            LemmaId::L1 => self.l1(),
            LemmaId::L2 => self.l2(),
            LemmaId::L3 => self.l3(),
            LemmaId::L4 => self.l4(),
            LemmaId::L5 => self.l5(),
            LemmaId::L6 => self.l6(),
            LemmaId::L7 => self.l7(),
            LemmaId::L8 => self.l8(),
            LemmaId::L9 => self.l9(),
        }
    }

    fn basis(&self, c: Component) -> &'p [Element] {
        self.pd.component(c).basis()
    }

    fn corner(&self, c: Component, x: &Element) -> Element {
        self.pd.project(c, x)
    }

    /// `e_i φ(x) e_i + e_j φ(x) e_j`
    fn diagonal_image(&self, x: &Element) -> Element {
        self.pd.diagonal_part(&self.phi.apply(x))
    }

    fn unit(&self) -> Element {
        self.pd
            .algebra()
            .unit()
            .expect("gated on unitality")
            .clone()
    }

    fn l1(&self) -> LemmaReport {
        let a = self.pd.algebra();
        let mut ck = Checker::new(self.pd);
        let full = center(a);
        let via = center_via_peirce(self.pd).expect("gated on the hypothesis");
        let outside = full
            .subspace()
            .first_outside(via.subspace())
            .or_else(|| via.subspace().first_outside(full.subspace()));
        ck.check(
            outside.is_none(),
            || "Z(R) = Peirce characterization".into(),
            || vec![("in one side only".into(), outside.clone().unwrap())],
        );
        ck.finish(LemmaId::L1, "subspace equality by rank")
    }

    fn l2(&self) -> LemmaReport {
        let a = self.pd.algebra();
        let mut ck = Checker::new(self.pd);
        for side in Side::BOTH {
            for z in self.pd.component_center(side).basis() {
                let lift = self.pd.central_lift(z, side);
                let ok = lift
                    .as_ref()
                    .is_some_and(|c| &a.multiply(c, self.pd.e(side)) == z);
                ck.check(
                    ok,
                    || format!("z_{0}{0} = z·e{0} for some central z", side.number()),
                    || vec![("z_ii".into(), z.clone())],
                );
            }
        }
        ck.finish(LemmaId::L2, "basis of Z(R_ii) computed as a kernel")
    }

    fn l3(&self) -> LemmaReport {
        let mut ck = Checker::new(self.pd);
        let phi1 = self.phi.apply(&self.unit());
        ck.diagonal(&phi1, "φ(1)");
        for side in Side::BOTH {
            let phi_e = self.phi.apply(self.pd.e(side));
            ck.diagonal(&phi_e, &format!("φ(e{})", side.number()));
            let corner = self.corner(Component::diagonal(side), &phi1);
            ck.lifts(&corner, side, &format!("e{0} φ(1) e{0}", side.number()));
        }
        ck.finish(LemmaId::L3, "lifts solved as existence problems")
    }

    fn l4(&self) -> LemmaReport {
        let mut ck = Checker::new(self.pd);
        for side in Side::BOTH {
            let other = side.other();
            for x in self.basis(Component::diagonal(side)) {
                let image = self.phi.apply(x);
                ck.diagonal(&image, "φ(x_ii)");
                let corner = self.corner(Component::diagonal(other), &image);
                ck.lifts(&corner, other, "e_j φ(x_ii) e_j");
            }
        }
        ck.finish(LemmaId::L4, BASIS_NOTE)
    }

    fn l5(&self) -> LemmaReport {
        let a = self.pd.algebra();
        let mut ck = Checker::new(self.pd);
        for (i, j) in [(Side::One, Side::Two), (Side::Two, Side::One)] {
            let cij = Component::new(i, j);
            let (ii, jj) = (Component::diagonal(i), Component::diagonal(j));
            let phi_ei = self.phi.apply(self.pd.e(i));
            let phi_ej = self.phi.apply(self.pd.e(j));
            let d_i = &self.corner(ii, &phi_ei) + &self.corner(jj, &phi_ei);
            let d_j = &self.corner(jj, &phi_ej) + &self.corner(ii, &phi_ej);
            let basis = self.basis(cij);
            for x in basis {
                let image = self.phi.apply(x);
                // (i)
                ck.zero(
                    self.corner(cij.transposed(), &image),
                    "(i) e_j φ(x_ij) e_i = 0",
                    &[("x_ij", x)],
                );
                // (ii), both equalities
                let off = self.corner(cij, &image);
                ck.zero(
                    &off - &a.commutator(&d_i, x),
                    "(ii) e_i φ(x_ij) e_j = [e_iφ(e_i)e_i + e_jφ(e_i)e_j, x_ij]",
                    &[("x_ij", x)],
                );
                ck.zero(
                    &off + &a.commutator(&d_j, x),
                    "(ii) e_i φ(x_ij) e_j = −[e_jφ(e_j)e_j + e_iφ(e_j)e_i, x_ij]",
                    &[("x_ij", x)],
                );
                // (iv)
                ck.lifts(&self.corner(ii, &image), i, "e_i φ(x_ij) e_i");
                ck.lifts(&self.corner(jj, &image), j, "e_j φ(x_ij) e_j");
            }
            // (iii), polarized over basis pairs
            for (p, x) in basis.iter().enumerate() {
                for y in &basis[p..] {
                    let v = &a.commutator(&self.diagonal_image(x), y)
                        + &a.commutator(&self.diagonal_image(y), x);
                    ck.zero(
                        v,
                        "(iii) [D(φ(x_ij)), x_ij] = 0 (polarized)",
                        &[("x", x), ("y", y)],
                    );
                }
            }
        }
        ck.finish(LemmaId::L5, BASIS_NOTE)
    }

    fn l6(&self) -> LemmaReport {
        let mut ck = Checker::new(self.pd);
        let phi1 = self.phi.apply(&self.unit());
        ck.central(&phi1, "φ(1)");
        for side in Side::BOTH {
            let corner = self.corner(Component::diagonal(side), &self.phi.apply(self.pd.e(side)));
            let what = format!("e{0} φ(e{0}) e{0}", side.number());
            ck.lifts(&corner, side, &what);
            let inside = self.pd.component_center(side).contains(&corner);
            ck.check(
                inside,
                || format!("{what} ∈ Z(R{0}{0})", side.number()),
                || vec![(what.clone(), corner.clone())],
            );
        }
        ck.finish(LemmaId::L6, "centrality checked against every basis vector")
    }

    fn l7(&self) -> LemmaReport {
        let a = self.pd.algebra();
        let mut ck = Checker::new(self.pd);
        let (e1, e2) = (self.pd.e(Side::One), self.pd.e(Side::Two));
        let w = &self.corner(Component::R11, &self.phi.apply(e1))
            + &self.corner(Component::R22, &self.phi.apply(e2));
        let cb = self.pd.center().subspace().basis();
        // Σ α_t [c_t e1, b_l] + Σ β_t [c_t e2, b_l] = [w, b_l]
        let generators: Vec<Element> = cb
            .iter()
            .map(|c| a.multiply(c, e1))
            .chain(cb.iter().map(|c| a.multiply(c, e2)))
            .collect();
        let mut system = Matrix::zeros(a.field(), 0, generators.len());
        let mut rhs = Vec::new();
        for l in 0..a.dim() {
            let bl = a.basis(l);
            let cols: Vec<Vec<Scalar>> = generators
                .iter()
                .map(|g| a.commutator(g, &bl).into_coords())
                .collect();
            system.stack(&Matrix::from_columns(a.field(), a.dim(), &cols));
            rhs.extend(a.commutator(&w, &bl).into_coords());
        }
        let feasible = solve(&system, &rhs).is_some();
        ck.check(
            feasible,
            || "exists central z, z' with e1φ(e1)e1 + e2φ(e2)e2 − (z e1 + z' e2) central".into(),
            || vec![("e1φ(e1)e1 + e2φ(e2)e2".into(), w.clone())],
        );
        ck.finish(
            LemmaId::L7,
            "z, z' found by linear feasibility, not the proof's constants",
        )
    }

    fn l8(&self) -> LemmaReport {
        let a = self.pd.algebra();
        let mut ck = Checker::new(self.pd);
        for c in [Component::R12, Component::R21] {
            for x in self.basis(c) {
                let d = self.diagonal_image(x);
                for y in self.basis(c.transposed()) {
                    ck.zero(
                        a.commutator(&d, y),
                        "[e1 φ(x_ij) e1 + e2 φ(x_ij) e2, x_ji] = 0",
                        &[("x_ij", x), ("x_ji", y)],
                    );
                }
            }
        }
        ck.finish(LemmaId::L8, BASIS_NOTE)
    }

    fn l9(&self) -> LemmaReport {
        let a = self.pd.algebra();
        let mut ck = Checker::new(self.pd);
        for c in [Component::R12, Component::R21] {
            for x in self.basis(c) {
                ck.central(&self.diagonal_image(x), "D(φ(x_ij))");
            }
        }
        let cb = self.pd.center().subspace().basis();
        for side in Side::BOTH {
            let ii = Component::diagonal(side);
            let ei = self.pd.e(side);
            let w = self.corner(ii, &self.phi.apply(ei));
            let lifted: Vec<Element> = cb.iter().map(|c| a.multiply(c, ei)).collect();
            for x in self.basis(ii) {
                // Σ α_t (c_t e_i) − Σ β_t ((c_t e_i) x) = e_i φ(x) e_i − w·x
                let rhs = &self.corner(ii, &self.phi.apply(x)) - &a.multiply(&w, x);
                let cols: Vec<Vec<Scalar>> = lifted
                    .iter()
                    .map(|g| g.clone().into_coords())
                    .chain(lifted.iter().map(|g| (-&a.multiply(g, x)).into_coords()))
                    .collect();
                let system = Matrix::from_columns(a.field(), a.dim(), &cols);
                let feasible = solve(&system, rhs.coords()).is_some();
                ck.check(
                    feasible,
                    || "e_i φ(x_ii) e_i = z_i e_i + (e_i φ(e_i) e_i − z'_i e_i) x_ii".into(),
                    || vec![("x_ii".into(), x.clone())],
                );
            }
        }
        ck.finish(
            LemmaId::L9,
            "centrality over all basis r; (z_i, z'_i) solved jointly per basis x_ii",
        )
    }
}
