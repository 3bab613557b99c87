//! Centrality tests, the graded centre and its assembly as a submonad.
//!
//! An element `t ∈ T^z X` with `z` central in the grading is central when the
//! left-first and right-first composites agree on `(t, s)` for every grade
//! `b` and every `s ∈ T^b Y`. For polynomial functors an `s` only touches as
//! many points of `Y` as the degree of `T^b`, so by naturality it suffices to
//! test canonical sets up to that size.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finkit::{all_functions, canonical_sets, product, EvalError, EvalResult, FinFn, FinSet, Value};
use crate::graded_monad::laws::check_commutative;
use crate::graded_monad::{check_graded_monad_morphism, GradeFunctor, GradedMonadMorphism, GradedStrongMonad, MonadError};
use crate::pomonoid::{centre_of_pomonoid, Grade, PomonoidMorphism};
use crate::report::{instance, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentreError {
    #[error("grade {0} is not central in the grading")]
    GradeNotCentral(String),
    #[error("{0} is not in the carrier")]
    ElementNotInCarrier(String),
    #[error("not a submonad: {0}")]
    NotASubmonad(String),
    #[error("{component} left the central subset at {witness}")]
    CentralityViolation { component: String, witness: String },
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Eval(EvalError),
}

impl From<EvalError> for CentreError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::CentralityViolation { component, witness } => CentreError::CentralityViolation { component, witness },
            other => CentreError::Eval(other),
        }
    }
}

/// Largest test set `|Y|` used against partners of grade `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Bound {
    /// `degree(T^b)`, which decides centrality for polynomial functors.
    #[default]
    Degree,
    DegreePlus(usize),
    Fixed(usize),
}

impl Bound {
    pub fn for_grade(&self, m: &GradedStrongMonad, b: Grade) -> usize {
        match *self {
            Bound::Degree => m.degree(b),
            Bound::DegreePlus(n) => m.degree(b) + n,
            Bound::Fixed(n) => n,
        }
    }
}

/// A pair `(t, s)` on which the two composites disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub partner_grade: String,
    pub partner_set_size: usize,
    pub s: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={} |Y|={} s={} gives {} vs {}",
            self.partner_grade, self.partner_set_size, self.s, self.lhs, self.rhs
        )
    }
}

fn show(r: &EvalResult) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// First partner that breaks centrality of `t`, if any.
pub fn centrality_witness(
    m: &GradedStrongMonad,
    z: Grade,
    x: &FinSet,
    t: &Value,
    bound: Bound,
) -> Result<Option<Witness>, CentreError> {
    let p = m.grading();
    if !p.is_central(z) {
        return Err(CentreError::GradeNotCentral(p.name(z).to_string()));
    }
    if !m.carrier(z, x)?.contains(t) {
        return Err(CentreError::ElementNotInCarrier(t.to_string()));
    }
    Ok(witness_unchecked(m, z, x, t, bound))
}

fn witness_unchecked(m: &GradedStrongMonad, z: Grade, x: &FinSet, t: &Value, bound: Bound) -> Option<Witness> {
    let p = m.grading();
    for b in p.grades() {
        for y in canonical_sets(bound.for_grade(m, b)) {
            let Ok(tby) = m.carrier(b, &y) else { continue };
            for s in tby.iter() {
                let l = m.left_first(z, b, x, &y, t, s);
                let r = m.right_first(z, b, x, &y, t, s);
                let same = matches!((&l, &r), (Ok(a), Ok(c)) if a == c);
                if !same {
                    return Some(Witness {
                        partner_grade: p.name(b).to_string(),
                        partner_set_size: y.len(),
                        s: s.to_string(),
                        lhs: show(&l),
                        rhs: show(&r),
                    });
                }
            }
        }
    }
    None
}

pub fn is_central(m: &GradedStrongMonad, z: Grade, x: &FinSet, t: &Value, bound: Bound) -> Result<bool, CentreError> {
    Ok(centrality_witness(m, z, x, t, bound)?.is_none())
}

/// An object with an injective leg into `T^z X`.
#[derive(Clone, Debug)]
pub struct CentralCone {
    pub grade: Grade,
    pub base: FinSet,
    pub apex: FinSet,
    pub leg: FinFn,
}

impl CentralCone {
    /// The unique map `other.apex → self.apex` whose composite with this leg
    /// is `other.leg`, if it exists.
    pub fn factor(&self, other: &CentralCone) -> Option<FinFn> {
        if other.grade != self.grade || other.base != self.base {
            return None;
        }
        let mut preimage = HashMap::new();
        for (a, img) in self.apex.iter().zip(self.leg.images()) {
            preimage.insert(img.clone(), a.clone());
        }
        let images = other
            .leg
            .images()
            .iter()
            .map(|v| preimage.get(v).cloned())
            .collect::<Option<Vec<_>>>()?;
        FinFn::new(other.apex.clone(), self.apex.clone(), images).ok()
    }
}

/// The terminal central cone at `(z, X)`: the central elements with their
/// inclusion.
pub fn graded_centre_at(m: &GradedStrongMonad, z: Grade, x: &FinSet, bound: Bound) -> Result<CentralCone, CentreError> {
    let p = m.grading();
    if !p.is_central(z) {
        return Err(CentreError::GradeNotCentral(p.name(z).to_string()));
    }
    let carrier = m.carrier(z, x)?;
    let apex = carrier.filter(
        format!("Z^{}{}", p.name(z), x.name()),
        |t| witness_unchecked(m, z, x, t, bound).is_none(),
    );
    let leg = FinFn::new(apex.clone(), carrier, apex.elems().to_vec()).map_err(|e| EvalError::Other(e.to_string()))?;
    Ok(CentralCone { grade: z, base: x.clone(), apex, leg })
}

/// The cone equation after the leg, one instance per apex point.
pub fn check_central_cone(m: &GradedStrongMonad, cone: &CentralCone, bound: Bound) -> Report {
    let z = cone.grade;
    let mut r = Report::new(format!("{}: central cone at ({}, |X|={})", m.name(), m.grade_name(z), cone.base.len()));
    r.declare("cone-equation");
    if !m.grading().is_central(z) {
        r.fail(instance("cone-equation", &[m.grade_name(z)], &[], "grade", "not central", "central"));
        return r;
    }
    for w in cone.apex.iter() {
        let t = match cone.leg.apply(w) {
            Ok(t) => t,
            Err(e) => {
                r.fail(instance("cone-equation", &[m.grade_name(z)], &[cone.base.len()], w, e, "leg defined"));
                continue;
            }
        };
        match witness_unchecked(m, z, &cone.base, &t, bound) {
            None => r.pass("cone-equation"),
            Some(wit) => r.fail(instance(
                "cone-equation",
                &[m.grade_name(z), &wit.partner_grade],
                &[cone.base.len(), wit.partner_set_size],
                format!("({t},{})", wit.s),
                wit.lhs,
                wit.rhs,
            )),
        }
    }
    r
}

/// Stability of central cones under precomposition with any `g : W → apex`
/// and under postcomposition with `T^z f` for any `f : X → X'`.
pub fn check_cone_closure(m: &GradedStrongMonad, cone: &CentralCone, bound: Bound, k: usize) -> Report {
    let z = cone.grade;
    let mut r = Report::new(format!("{}: cone closure at ({}, |X|={})", m.name(), m.grade_name(z), cone.base.len()));
    r.declare("precompose");
    r.declare("postcompose");
    for w in canonical_sets(k) {
        for g in all_functions(&w, &cone.apex) {
            let Ok(leg) = g.then(&cone.leg) else { continue };
            let pre = CentralCone { grade: z, base: cone.base.clone(), apex: w.clone(), leg };
            let sub = check_central_cone(m, &pre, bound);
            r.check("precompose", sub.passed(), || {
                instance("precompose", &[m.grade_name(z)], &[w.len()], format!("{g:?}"), "not central", "central")
            });
        }
    }
    for x2 in canonical_sets(k) {
        let Ok(target) = m.carrier(z, &x2) else { continue };
        for f in all_functions(&cone.base, &x2) {
            let leg = FinFn::from_fn(&cone.apex, &target, |w| {
                let t = cone.leg.apply(w)?;
                m.fmap(z, &|v| f.apply(v), &|| x2.clone(), &t)
            });
            let ok = match leg {
                Ok(leg) => {
                    let post = CentralCone { grade: z, base: x2.clone(), apex: cone.apex.clone(), leg };
                    check_central_cone(m, &post, bound).passed()
                }
                Err(_) => false,
            };
            r.check("postcompose", ok, || {
                instance("postcompose", &[m.grade_name(z)], &[cone.base.len(), x2.len()], format!("{f:?}"), "not central", "central")
            });
        }
    }
    r
}

/// The central subset of `T^z`, as a functor in its own right.
pub struct CentralSubfunctor {
    parent: GradedStrongMonad,
    grade: Grade,
    bound: Bound,
    cache: Mutex<HashMap<FinSet, FinSet>>,
}

impl CentralSubfunctor {
    pub fn new(parent: GradedStrongMonad, grade: Grade, bound: Bound) -> CentralSubfunctor {
        CentralSubfunctor { parent, grade, bound, cache: Mutex::default() }
    }

    fn subset(&self, x: &FinSet) -> FinSet {
        if let Some(hit) = self.cache.lock().expect("centre cache").get(x) {
            return hit.clone();
        }
        let set = match graded_centre_at(&self.parent, self.grade, x, self.bound) {
            Ok(cone) => cone.apex,
            Err(_) => FinSet::canonical(0),
        };
        self.cache.lock().expect("centre cache").insert(x.clone(), set.clone());
        set
    }

    /// Checks that `v` lies in the central subset over `x`.
    pub fn guard(&self, component: &str, x: &FinSet, v: Value) -> EvalResult {
        if self.subset(x).contains(&v) {
            Ok(v)
        } else {
            Err(EvalError::CentralityViolation { component: component.to_string(), witness: v.to_string() })
        }
    }
}

impl GradeFunctor for CentralSubfunctor {
    fn obj(&self, x: &FinSet) -> FinSet {
        self.subset(x)
    }

    fn map(&self, f: &dyn Fn(&Value) -> EvalResult, cod: &dyn Fn() -> FinSet, t: &Value) -> EvalResult {
        let v = self.parent.fmap(self.grade, f, cod, t)?;
        self.guard("functor", &cod(), v)
    }

    fn degree(&self) -> usize {
        self.parent.degree(self.grade)
    }

    fn describe(&self) -> String {
        format!("Z[{}]", self.parent.functor(self.grade).map(|f| f.describe()).unwrap_or_default())
    }
}

/// Sizes and members of one central subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentreRecord {
    pub grade: String,
    pub set: usize,
    pub carrier_size: usize,
    pub centre_size: usize,
    pub members: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CentreResult {
    pub records: Vec<CentreRecord>,
    pub monad: GradedStrongMonad,
    pub inclusion: GradedMonadMorphism,
}

/// Assembles the centre over `Z(G)`, with every structure map restricted and
/// its outputs checked for membership. Components are also evaluated
/// eagerly on all inputs over sets of size at most `k`.
pub fn build_centre_monad(m: &GradedStrongMonad, bound: Bound, k: usize) -> Result<CentreResult, CentreError> {
    m.ensure_complete()?;
    let (zg, incl) = centre_of_pomonoid(m.grading());
    let up: Arc<Vec<Grade>> = Arc::new(incl.map().to_vec());
    let subs: Arc<Vec<Arc<CentralSubfunctor>>> =
        Arc::new(up.iter().map(|&g| Arc::new(CentralSubfunctor::new(m.clone(), g, bound))).collect());

    let mut z = GradedStrongMonad::new(format!("centre:{}", m.name()), zg.clone());
    for (i, s) in subs.iter().enumerate() {
        z = z.with_shared_functor(Grade(i), s.clone());
    }
    let unit = zg.unit();
    let (p, s) = (m.clone(), subs.clone());
    z = z.with_eta(move |x, v| s[unit.0].guard("eta", x, p.eta(x, v)?));
    let (p, s, u, zgm) = (m.clone(), subs.clone(), up.clone(), zg.clone());
    z = z.with_mu(move |a, b, x, v| {
        let ab = zgm.mul(a, b);
        s[ab.0].guard("mu", x, p.mu(u[a.0], u[b.0], x, v)?)
    });
    let (p, s, u) = (m.clone(), subs.clone(), up.clone());
    z = z.with_lift(move |a, a2, x, v| s[a2.0].guard("lift", x, p.lift(u[a.0], u[a2.0], x, v)?));
    let (p, s, u) = (m.clone(), subs.clone(), up.clone());
    z = z.with_strength(move |a, x, y, xv, t| s[a.0].guard("strength", &product(x, y), p.strength(u[a.0], x, y, xv, t)?));

    let mut records = Vec::new();
    for g in zg.grades() {
        for x in canonical_sets(k) {
            let carrier = m.carrier(up[g.0], &x)?;
            let centre = z.carrier(g, &x)?;
            records.push(CentreRecord {
                grade: zg.name(g).to_string(),
                set: x.len(),
                carrier_size: carrier.len(),
                centre_size: centre.len(),
                members: centre.iter().map(|v| v.to_string()).collect(),
            });
        }
    }
    verify_components(&z, k)?;

    let inclusion = GradedMonadMorphism::new(z.clone(), m.clone(), incl, |_, _, v| Ok(v.clone()));
    Ok(CentreResult { records, monad: z, inclusion })
}

fn verify_components(z: &GradedStrongMonad, k: usize) -> Result<(), CentreError> {
    let p = z.grading().clone();
    for x in canonical_sets(k) {
        for v in x.iter() {
            z.eta(&x, v)?;
        }
        for a in p.grades() {
            for b in p.grades() {
                let zbx = z.carrier(b, &x)?;
                for u in z.carrier(a, &zbx)?.iter() {
                    z.mu(a, b, &x, u)?;
                }
            }
            for a2 in p.grades().filter(|&a2| p.leq(a, a2)) {
                for t in z.carrier(a, &x)?.iter() {
                    z.lift(a, a2, &x, t)?;
                }
            }
            for y in canonical_sets(k) {
                let zay = z.carrier(a, &y)?;
                for xv in x.iter() {
                    for t in zay.iter() {
                        z.strength(a, &x, &y, xv, t)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `T` regraded over `Z(G)` with full carriers, and the identity-on-elements
/// morphism back into `T`.
pub fn regrade_to_centre(m: &GradedStrongMonad) -> (GradedStrongMonad, GradedMonadMorphism) {
    let (zg, incl) = centre_of_pomonoid(m.grading());
    let s = m.regraded(format!("{}|Z", m.name()), zg, incl.map().to_vec());
    let h = GradedMonadMorphism::new(s.clone(), m.clone(), incl, |_, _, v| Ok(v.clone()));
    (s, h)
}

/// The two equivalent characterisations of a central submonad, evaluated
/// independently.
#[derive(Clone, Debug)]
pub struct CentralityVerdict {
    /// Every `(S^z X, ι^z_X)` is a central cone.
    pub condition1: bool,
    /// `ι` factors through the centre and `S` is commutative.
    pub condition2: bool,
    pub report: Report,
}

impl CentralityVerdict {
    pub fn agree(&self) -> bool {
        self.condition1 == self.condition2
    }
}

pub fn check_centrality_conditions(
    h: &GradedMonadMorphism,
    bound: Bound,
    k: usize,
) -> Result<CentralityVerdict, CentreError> {
    let (s, m) = (&h.source, &h.target);
    let morph = check_graded_monad_morphism(h, k);
    if !morph.passed() {
        let first = morph.failures.first().map(|f| f.law.clone()).unwrap_or_default();
        return Err(CentreError::NotASubmonad(format!("morphism check failed ({first})")));
    }
    if !h.is_injective(k) {
        return Err(CentreError::NotASubmonad("a component is not injective".into()));
    }
    let tp = m.grading();
    if let Some(g) = s.grading().grades().find(|&g| !tp.is_central(h.phi.apply(g))) {
        return Err(CentreError::NotASubmonad(format!("grade {} maps outside the centre", s.grade_name(g))));
    }

    let mut r = Report::new(format!("centrality of {} in {}", s.name(), m.name()));
    let cone_of = |g: Grade, x: &FinSet| -> Result<CentralCone, CentreError> {
        let apex = s.carrier(g, x)?;
        let target = m.carrier(h.phi.apply(g), x)?;
        let leg = FinFn::from_fn(&apex, &target, |v| (h.iota)(g, x, v))?;
        Ok(CentralCone { grade: h.phi.apply(g), base: x.clone(), apex, leg })
    };

    let mut c1 = true;
    for g in s.grading().grades() {
        for x in canonical_sets(k) {
            let cone = cone_of(g, &x)?;
            let sub = check_central_cone(m, &cone, bound);
            c1 &= sub.passed();
            r.check("condition-1", sub.passed(), || {
                let f = sub.failures.first();
                instance(
                    "condition-1",
                    &[s.grade_name(g)],
                    &[x.len()],
                    f.map(|f| f.witness.clone()).unwrap_or_default(),
                    f.map(|f| f.lhs.clone()).unwrap_or_default(),
                    f.map(|f| f.rhs.clone()).unwrap_or_default(),
                )
            });
        }
    }

    let mut factors = true;
    for g in s.grading().grades() {
        for x in canonical_sets(k) {
            let cone = cone_of(g, &x)?;
            let centre = graded_centre_at(m, cone.grade, &x, bound)?;
            let ok = centre.factor(&cone).is_some();
            factors &= ok;
            r.check("condition-2-factorisation", ok, || {
                let stray = cone.leg.images().iter().find(|v| !centre.apex.contains(v)).cloned();
                instance(
                    "condition-2-factorisation",
                    &[s.grade_name(g)],
                    &[x.len()],
                    stray.map(|v| v.to_string()).unwrap_or_default(),
                    "outside the centre",
                    "inside the centre",
                )
            });
        }
    }
    let comm = check_commutative(s, k);
    let commutes = comm.passed();
    r.check("condition-2-commutative", commutes, || {
        let f = comm.failures.first();
        instance(
            "condition-2-commutative",
            &f.map(|f| f.grades.iter().map(String::as_str).collect::<Vec<_>>()).unwrap_or_default(),
            &f.map(|f| f.set_sizes.clone()).unwrap_or_default(),
            f.map(|f| f.witness.clone()).unwrap_or_default(),
            f.map(|f| f.lhs.clone()).unwrap_or_default(),
            f.map(|f| f.rhs.clone()).unwrap_or_default(),
        )
    });
    let c2 = factors && commutes;
    r.check("conditions-agree", c1 == c2, || {
        instance("conditions-agree", &[], &[], "characterisations disagree", format!("condition 1: {c1}"), format!("condition 2: {c2}"))
    });
    r.note(format!("condition 1: {c1}; condition 2: {c2}"));
    Ok(CentralityVerdict { condition1: c1, condition2: c2, report: r })
}

/// Identity-on-elements morphism from a monad over `Z(G)` into `m`.
pub fn inclusion_into(s: &GradedStrongMonad, m: &GradedStrongMonad) -> Result<GradedMonadMorphism, CentreError> {
    let (_, incl) = centre_of_pomonoid(m.grading());
    if s.grading() != &incl.source {
        return Err(CentreError::NotASubmonad("grading is not the centre of the target grading".into()));
    }
    let phi = PomonoidMorphism::from_grades(s.grading().clone(), m.grading().clone(), incl.map().to_vec())
        .map_err(MonadError::from)?;
    Ok(GradedMonadMorphism::new(s.clone(), m.clone(), phi, |_, _, v| Ok(v.clone())))
}
