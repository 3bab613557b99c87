//! Pomonoid-graded strong monads on finite sets.
//!
//! A [`GradedStrongMonad`] holds a grading pomonoid, one endofunctor per
//! grade and the structure maps as element transformers: code that acts on
//! encoded elements uniformly in the underlying set. Naturality is not
//! enforced by construction; the law suites in [`laws`] check it.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::finkit::{mon, product, EvalError, EvalResult, FinSet, FunctorExpr, Value};
use crate::pomonoid::{Grade, Pomonoid, PomonoidError};

pub mod laws;
pub mod morphism;
pub mod registry;

pub use laws::{
    check_commutative, check_commutative_pair, check_costrength_coherence, check_monad_laws, check_order_laws,
    check_strength_laws, derive_costrength, PairVerdict,
};
pub use morphism::{check_graded_monad_morphism, GradedMonadMorphism, IotaFn};
pub use registry::{registry, RegistryArgs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("component missing: {0}")]
    ComponentMissing(String),
    #[error("unknown monad {0}")]
    UnknownName(String),
    #[error("monad {0} needs {1}")]
    MissingArgument(String, String),
    #[error(transparent)]
    Pomonoid(#[from] PomonoidError),
    #[error("{0}")]
    Invalid(String),
}

/// The endofunctor sitting at one grade.
pub trait GradeFunctor: Send + Sync {
    fn obj(&self, x: &FinSet) -> FinSet;

    /// Acts on one element. `cod` produces the target set and is only
    /// consulted by functors that need to verify membership.
    fn map(&self, f: &dyn Fn(&Value) -> EvalResult, cod: &dyn Fn() -> FinSet, t: &Value) -> EvalResult;

    /// Largest number of argument-set slots an element occupies.
    fn degree(&self) -> usize;

    fn describe(&self) -> String;
}

impl GradeFunctor for FunctorExpr {
    fn obj(&self, x: &FinSet) -> FinSet {
        self.apply_obj(x)
    }

    fn map(&self, f: &dyn Fn(&Value) -> EvalResult, _cod: &dyn Fn() -> FinSet, t: &Value) -> EvalResult {
        self.map_value(f, t)
    }

    fn degree(&self) -> usize {
        FunctorExpr::degree(self)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// `η_X : X → T^i X`
pub type EtaFn = Arc<dyn Fn(&FinSet, &Value) -> EvalResult + Send + Sync>;
/// `μ^{a,b}_X : T^a T^b X → T^{a∗b} X`
pub type MuFn = Arc<dyn Fn(Grade, Grade, &FinSet, &Value) -> EvalResult + Send + Sync>;
/// `T^{a≤a'}_X : T^a X → T^{a'} X`
pub type LiftFn = Arc<dyn Fn(Grade, Grade, &FinSet, &Value) -> EvalResult + Send + Sync>;
/// `τ^a_{X,Y} : X ⊗ T^a Y → T^a (X⊗Y)`, arguments `(a, X, Y, x, t)`.
pub type StrengthFn = Arc<dyn Fn(Grade, &FinSet, &FinSet, &Value, &Value) -> EvalResult + Send + Sync>;
/// `τ'^a_{X,Y} : T^a X ⊗ Y → T^a (X⊗Y)`, arguments `(a, X, Y, t, y)`.
pub type CostrengthFn = Arc<dyn Fn(Grade, &FinSet, &FinSet, &Value, &Value) -> EvalResult + Send + Sync>;

type CarrierCache = Arc<Mutex<HashMap<(Grade, FinSet), FinSet>>>;

#[derive(Clone)]
pub struct GradedStrongMonad {
    name: String,
    grading: Pomonoid,
    functors: Vec<Option<Arc<dyn GradeFunctor>>>,
    eta: Option<EtaFn>,
    mu: Option<MuFn>,
    lift: Option<LiftFn>,
    strength: Option<StrengthFn>,
    costrength: Option<CostrengthFn>,
    carriers: CarrierCache,
}

impl fmt::Debug for GradedStrongMonad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedStrongMonad")
            .field("name", &self.name)
            .field("grading", &self.grading.names())
            .finish_non_exhaustive()
    }
}

impl GradedStrongMonad {
    /// An empty monad; supply the pieces with the `with_*` methods.
    pub fn new(name: impl Into<String>, grading: Pomonoid) -> GradedStrongMonad {
        let n = grading.len();
        GradedStrongMonad {
            name: name.into(),
            grading,
            functors: vec![None; n],
            eta: None,
            mu: None,
            lift: None,
            strength: None,
            costrength: None,
            carriers: Arc::default(),
        }
    }

    pub fn with_functor(mut self, a: Grade, f: impl GradeFunctor + 'static) -> Self {
        self.functors[a.0] = Some(Arc::new(f));
        self.carriers = Arc::default();
        self
    }

    pub fn with_shared_functor(mut self, a: Grade, f: Arc<dyn GradeFunctor>) -> Self {
        self.functors[a.0] = Some(f);
        self.carriers = Arc::default();
        self
    }

    pub fn with_eta(mut self, f: impl Fn(&FinSet, &Value) -> EvalResult + Send + Sync + 'static) -> Self {
        self.eta = Some(Arc::new(f));
        self
    }

    pub fn with_mu(mut self, f: impl Fn(Grade, Grade, &FinSet, &Value) -> EvalResult + Send + Sync + 'static) -> Self {
        self.mu = Some(Arc::new(f));
        self
    }

    pub fn with_lift(mut self, f: impl Fn(Grade, Grade, &FinSet, &Value) -> EvalResult + Send + Sync + 'static) -> Self {
        self.lift = Some(Arc::new(f));
        self
    }

    pub fn with_strength(
        mut self,
        f: impl Fn(Grade, &FinSet, &FinSet, &Value, &Value) -> EvalResult + Send + Sync + 'static,
    ) -> Self {
        self.strength = Some(Arc::new(f));
        self
    }

    /// Replaces the derived costrength. Only useful to build deliberately
    /// broken instances.
    pub fn with_costrength(
        mut self,
        f: impl Fn(Grade, &FinSet, &FinSet, &Value, &Value) -> EvalResult + Send + Sync + 'static,
    ) -> Self {
        self.costrength = Some(Arc::new(f));
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grading(&self) -> &Pomonoid {
        &self.grading
    }

    pub fn grade_name(&self, a: Grade) -> &str {
        self.grading.name(a)
    }

    pub fn has_costrength_override(&self) -> bool {
        self.costrength.is_some()
    }

    pub fn ensure_complete(&self) -> Result<(), MonadError> {
        if let Some(i) = self.functors.iter().position(Option::is_none) {
            let g = self.grading.name(Grade(i));
            return Err(MonadError::ComponentMissing(format!("functor at grade {g}")));
        }
        let missing = [
            ("eta", self.eta.is_none()),
            ("mu", self.mu.is_none()),
            ("lift", self.lift.is_none()),
            ("strength", self.strength.is_none()),
        ];
        match missing.iter().find(|(_, m)| *m) {
            Some((what, _)) => Err(MonadError::ComponentMissing(what.to_string())),
            None => Ok(()),
        }
    }

    pub fn functor(&self, a: Grade) -> Result<&Arc<dyn GradeFunctor>, EvalError> {
        self.functors[a.0]
            .as_ref()
            .ok_or_else(|| EvalError::Missing(format!("functor at grade {}", self.grading.name(a))))
    }

    pub fn degree(&self, a: Grade) -> usize {
        self.functors[a.0].as_ref().map_or(0, |f| f.degree())
    }

    /// `T^a X`, memoized.
    pub fn carrier(&self, a: Grade, x: &FinSet) -> Result<FinSet, EvalError> {
        let key = (a, x.clone());
        if let Some(hit) = self.carriers.lock().expect("carrier cache").get(&key) {
            return Ok(hit.clone());
        }
        let set = self.functor(a)?.obj(x);
        self.carriers.lock().expect("carrier cache").insert(key, set.clone());
        Ok(set)
    }

    /// `T^a f` on one element.
    pub fn fmap(
        &self,
        a: Grade,
        f: &dyn Fn(&Value) -> EvalResult,
        cod: &dyn Fn() -> FinSet,
        t: &Value,
    ) -> EvalResult {
        self.functor(a)?.map(f, cod, t)
    }

    pub fn eta(&self, x: &FinSet, v: &Value) -> EvalResult {
        let f = self.eta.as_ref().ok_or_else(|| EvalError::Missing("eta".into()))?;
        f(x, v)
    }

    pub fn mu(&self, a: Grade, b: Grade, x: &FinSet, v: &Value) -> EvalResult {
        let f = self.mu.as_ref().ok_or_else(|| EvalError::Missing("mu".into()))?;
        f(a, b, x, v)
    }

    pub fn lift(&self, a: Grade, a2: Grade, x: &FinSet, v: &Value) -> EvalResult {
        if !self.grading.leq(a, a2) {
            return Err(EvalError::Other(format!(
                "no lift {} <= {}",
                self.grading.name(a),
                self.grading.name(a2)
            )));
        }
        let f = self.lift.as_ref().ok_or_else(|| EvalError::Missing("lift".into()))?;
        f(a, a2, x, v)
    }

    pub fn strength(&self, a: Grade, x: &FinSet, y: &FinSet, xv: &Value, t: &Value) -> EvalResult {
        let f = self.strength.as_ref().ok_or_else(|| EvalError::Missing("strength".into()))?;
        f(a, x, y, xv, t)
    }

    /// `τ'^a_{X,Y} = T^a(γ_{Y,X}) ∘ τ^a_{Y,X} ∘ γ_{T^a X, Y}`, unless overridden.
    pub fn costrength(&self, a: Grade, x: &FinSet, y: &FinSet, t: &Value, yv: &Value) -> EvalResult {
        if let Some(f) = &self.costrength {
            return f(a, x, y, t, yv);
        }
        self.derived_costrength(a, x, y, t, yv)
    }

    pub fn derived_costrength(&self, a: Grade, x: &FinSet, y: &FinSet, t: &Value, yv: &Value) -> EvalResult {
        let swapped = self.strength(a, y, x, yv, t)?;
        self.fmap(a, &mon::swap, &|| product(x, y), &swapped)
    }

    /// Left-first composite `μ^{a,b} ∘ T^a τ^b ∘ τ'^a : T^a X ⊗ T^b Y → T^{a∗b}(X⊗Y)`.
    pub fn left_first(&self, a: Grade, b: Grade, x: &FinSet, y: &FinSet, t: &Value, s: &Value) -> EvalResult {
        let tby = self.carrier(b, y)?;
        let outer = self.costrength(a, x, &tby, t, s)?;
        let inner = self.fmap(
            a,
            &|p| {
                let (xv, sv) = p.as_pair()?;
                self.strength(b, x, y, xv, sv)
            },
            &|| self.carrier(b, &product(x, y)).unwrap_or_else(|_| FinSet::canonical(0)),
            &outer,
        )?;
        self.mu(a, b, &product(x, y), &inner)
    }

    /// Right-first composite `μ^{b,a} ∘ T^b τ'^a ∘ τ^b : T^a X ⊗ T^b Y → T^{b∗a}(X⊗Y)`.
    pub fn right_first(&self, a: Grade, b: Grade, x: &FinSet, y: &FinSet, t: &Value, s: &Value) -> EvalResult {
        let tax = self.carrier(a, x)?;
        let outer = self.strength(b, &tax, y, t, s)?;
        let inner = self.fmap(
            b,
            &|p| {
                let (tv, yv) = p.as_pair()?;
                self.costrength(a, x, y, tv, yv)
            },
            &|| self.carrier(a, &product(x, y)).unwrap_or_else(|_| FinSet::canonical(0)),
            &outer,
        )?;
        self.mu(b, a, &product(x, y), &inner)
    }

    /// The same monad over a sub-pomonoid; `incl[k]` is the grade of this
    /// monad that grade `k` of `sub` stands for. Carriers are kept whole.
    pub fn regraded(&self, name: impl Into<String>, sub: Pomonoid, incl: Vec<Grade>) -> GradedStrongMonad {
        let mut out = GradedStrongMonad::new(name, sub);
        for (k, g) in incl.iter().enumerate() {
            if let Some(f) = &self.functors[g.0] {
                out = out.with_shared_functor(Grade(k), f.clone());
            }
        }
        let parent = self.clone();
        let up = Arc::new(incl);
        let p = parent.clone();
        out = out.with_eta(move |x, v| p.eta(x, v));
        let (p, m) = (parent.clone(), up.clone());
        out = out.with_mu(move |a, b, x, v| p.mu(m[a.0], m[b.0], x, v));
        let (p, m) = (parent.clone(), up.clone());
        out = out.with_lift(move |a, a2, x, v| p.lift(m[a.0], m[a2.0], x, v));
        let (p, m) = (parent.clone(), up.clone());
        out = out.with_strength(move |a, x, y, xv, t| p.strength(m[a.0], x, y, xv, t));
        if self.costrength.is_some() {
            let (p, m) = (parent, up);
            out = out.with_costrength(move |a, x, y, t, yv| p.costrength(m[a.0], x, y, t, yv));
        }
        out
    }
}

/// Canonical strength of a polynomial functor: every Id leaf `y` becomes `(x, y)`.
pub fn cartesian_strength(xv: &Value, t: &Value) -> EvalResult {
    t.map_vars(&|y| Ok(Value::pair(xv.clone(), y.clone())))
}
