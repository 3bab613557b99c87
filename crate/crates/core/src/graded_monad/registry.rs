//! Built-in graded monads.

use std::sync::Arc;

use crate::finkit::{EvalError, FunctorExpr, Value};
use crate::pomonoid::{self, centre_of_pomonoid, Grade, Pomonoid};
use crate::relaxations;

use super::{cartesian_strength, GradedStrongMonad, MonadError};

/// Names accepted by [`registry`], with a one-line description.
pub const BUILTINS: &[(&str, &str)] = &[
    ("identity", "T^a X = X at every grade of the given pomonoid (default: trivial)"),
    ("multi_error_writer", "writer graded by {t,e,wa,wb}: T^t = X, T^e = 1, T^wa = X×{a}, T^wb = X×{b}"),
    ("bool_writer_pair", "(Bool, tt<=ff, tt, and)-graded writer over a monoid M: T^tt = X×Z(M), T^ff = X×M"),
    ("monoid_writer", "ordinary writer X×M over a monoid M, trivially graded"),
    ("language_writer", "writer graded by a capped language duoid: T^L X = {(x, L') | L' ⊆ L}"),
    ("centre:<name>", "computed centre of another built-in"),
];

/// Optional parameters for the built-ins.
#[derive(Clone, Debug, Default)]
pub struct RegistryArgs {
    /// Grading for `identity`.
    pub pomonoid: Option<Pomonoid>,
    /// Monoid `M` for the writer built-ins (order ignored); defaults to the
    /// multi-error monoid.
    pub monoid: Option<Pomonoid>,
    pub alphabet: Option<String>,
    pub cap: Option<usize>,
    /// Generator languages for `language_writer`; defaults to one singleton
    /// per letter.
    pub generators: Option<Vec<String>>,
}

pub fn registry(name: &str, args: &RegistryArgs) -> Result<GradedStrongMonad, MonadError> {
    match name {
        "identity" => Ok(identity(args.pomonoid.clone().unwrap_or_else(pomonoid::trivial))),
        "multi_error_writer" => Ok(multi_error_writer()),
        "bool_writer_pair" => Ok(bool_writer_pair(&args.monoid.clone().unwrap_or_else(pomonoid::multi_error))),
        "monoid_writer" => Ok(monoid_writer(&args.monoid.clone().unwrap_or_else(pomonoid::multi_error))),
        "language_writer" => {
            let alphabet = args.alphabet.clone().unwrap_or_else(|| "ab".into());
            let cap = args.cap.unwrap_or(2);
            let generators = match &args.generators {
                Some(g) => g.clone(),
                None => alphabet.chars().map(|c| format!("{{{c}}}")).collect(),
            };
            let duoid = relaxations::language_duoid_from_literals(&alphabet, cap, &generators, relaxations::DEFAULT_BUDGET)
                .map_err(|e| MonadError::Invalid(e.to_string()))?;
            Ok(relaxations::build_language_writer(&duoid).monad)
        }
        other => Err(MonadError::UnknownName(other.to_string())),
    }
}

/// `T^a = Id` at every grade, all structure maps identities.
pub fn identity(grading: Pomonoid) -> GradedStrongMonad {
    let mut m = GradedStrongMonad::new("identity", grading.clone());
    for a in grading.grades() {
        m = m.with_functor(a, FunctorExpr::Id);
    }
    m.with_eta(|_, x| Ok(Value::var(x.clone())))
        .with_mu(|_, _, _, v| Ok(Value::var(v.as_var()?.as_var()?.clone())))
        .with_lift(|_, _, _, v| Ok(v.clone()))
        .with_strength(|_, _, _, x, t| cartesian_strength(x, t))
}

fn tagged() -> impl Fn(&str) -> FunctorExpr {
    |tag: &str| FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::constant(&[tag]).expect("tag token"))
}

/// Payload of an element of `T^g X` for the multi-error shapes; `None` at `e`.
fn me_payload<'v>(p: &Pomonoid, g: Grade, v: &'v Value) -> Result<Option<&'v Value>, EvalError> {
    match p.name(g) {
        "t" => v.as_var().map(Some),
        "e" => v.as_const().map(|_| None),
        _ => {
            let (x, tag) = v.as_pair()?;
            tag.as_const()?;
            x.as_var().map(Some)
        }
    }
}

fn me_wrap(p: &Pomonoid, g: Grade, x: Value) -> Value {
    match p.name(g) {
        "t" => Value::var(x),
        "e" => Value::konst("*"),
        w => Value::pair(Value::var(x), Value::konst(&w[1..])),
    }
}

/// The multi-error writer, graded by `{t, e, wa, wb}` with `e` as top.
pub fn multi_error_writer() -> GradedStrongMonad {
    multi_error_writer_with(Arc::new(|p: &Pomonoid, a: Grade, b: Grade| p.mul(a, b)))
}

/// Picks the grade of a product from the grading and the two factors.
pub type GradeChoice = Arc<dyn Fn(&Pomonoid, Grade, Grade) -> Grade + Send + Sync>;

/// Multi-error writer whose warning-warning multiplication lands at the
/// grade chosen by `target` instead of `a∗b`.
pub fn multi_error_writer_with(target: GradeChoice) -> GradedStrongMonad {
    let p = pomonoid::multi_error_with_top();
    let tagged = tagged();
    let mut m = GradedStrongMonad::new("multi_error_writer", p.clone());
    for a in p.grades() {
        let f = match p.name(a) {
            "t" => FunctorExpr::Id,
            "e" => FunctorExpr::constant(&["*"]).expect("unit token"),
            w => tagged(&w[1..]),
        };
        m = m.with_functor(a, f);
    }
    let (pm, pl) = (p.clone(), p.clone());
    m.with_eta(|_, x| Ok(Value::var(x.clone())))
        .with_mu(move |a, b, _, v| {
            let ab = pm.mul(a, b);
            if pm.name(ab) == "e" {
                return Ok(Value::konst("*"));
            }
            let inner = me_payload(&pm, a, v)?.ok_or_else(|| EvalError::shape("payload", v))?;
            let x = me_payload(&pm, b, inner)?.ok_or_else(|| EvalError::shape("payload", inner))?;
            let warnings = pm.name(a).starts_with('w') && pm.name(b).starts_with('w');
            let grade = if warnings { target(&pm, a, b) } else { ab };
            Ok(me_wrap(&pm, grade, x.clone()))
        })
        .with_lift(move |a, a2, _, v| {
            if a == a2 {
                Ok(v.clone())
            } else if pl.name(a2) == "e" {
                Ok(Value::konst("*"))
            } else {
                Err(EvalError::Other(format!("no lift {} <= {}", pl.name(a), pl.name(a2))))
            }
        })
        .with_strength(|_, _, _, x, t| cartesian_strength(x, t))
}

pub type Combine = Arc<dyn Fn(&str, &str) -> Result<String, EvalError> + Send + Sync>;

/// Writer monad `T^a X = X × tags(a)` with `μ((x,m2),m1) = (x, m1·m2)`
/// (outer tag first) and lifts that are inclusions of tag sets.
pub fn writer_monad(
    name: &str,
    grading: Pomonoid,
    tags: Vec<Vec<String>>,
    unit_tag: String,
    combine: Combine,
) -> GradedStrongMonad {
    let mut m = GradedStrongMonad::new(name, grading.clone());
    for a in grading.grades() {
        let f = FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::constant(&tags[a.0]).expect("tag tokens"));
        m = m.with_functor(a, f);
    }
    m.with_eta(move |_, x| Ok(Value::pair(Value::var(x.clone()), Value::konst(unit_tag.clone()))))
        .with_mu(move |_, _, _, v| {
            let (outer, m1) = v.as_pair()?;
            let (x, m2) = outer.as_var()?.as_pair()?;
            let tag = combine(m1.as_const()?, m2.as_const()?)?;
            Ok(Value::pair(x.as_var().cloned().map(Value::var)?, Value::konst(tag)))
        })
        .with_lift(|_, _, _, v| Ok(v.clone()))
        .with_strength(|_, _, _, x, t| cartesian_strength(x, t))
}

fn monoid_combine(m: &Pomonoid) -> Combine {
    let m = m.clone();
    Arc::new(move |a: &str, b: &str| {
        let ga = m.grade(a).ok_or_else(|| EvalError::Other(format!("unknown tag {a}")))?;
        let gb = m.grade(b).ok_or_else(|| EvalError::Other(format!("unknown tag {b}")))?;
        Ok(m.name(m.mul(ga, gb)).to_string())
    })
}

/// Bool-graded writer over `M`: grade `tt` keeps tags in `Z(M)`.
pub fn bool_writer_pair(monoid: &Pomonoid) -> GradedStrongMonad {
    let (z, _) = centre_of_pomonoid(monoid);
    let tags = vec![z.names().to_vec(), monoid.names().to_vec()];
    let unit = monoid.name(monoid.unit()).to_string();
    writer_monad("bool_writer_pair", pomonoid::bool_and(), tags, unit, monoid_combine(monoid))
}

/// Plain writer over `M`, graded by the trivial pomonoid.
pub fn monoid_writer(monoid: &Pomonoid) -> GradedStrongMonad {
    let tags = vec![monoid.names().to_vec()];
    let unit = monoid.name(monoid.unit()).to_string();
    writer_monad("monoid_writer", pomonoid::trivial(), tags, unit, monoid_combine(monoid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finkit::FinSet;

    #[test]
    fn multi_error_carriers() {
        let m = multi_error_writer();
        let p = m.grading().clone();
        let x = FinSet::canonical(2);
        let size = |g: &str| m.carrier(p.grade(g).unwrap(), &x).unwrap().len();
        assert_eq!(size("t"), 2);
        assert_eq!(size("e"), 1);
        assert_eq!(size("wa"), 2);
        assert_eq!(size("wb"), 2);
    }

    #[test]
    fn multi_error_mu_keeps_value_and_inner_warning() {
        let m = multi_error_writer();
        let p = m.grading().clone();
        let (wa, wb) = (p.grade("wa").unwrap(), p.grade("wb").unwrap());
        let x = FinSet::canonical(1);
        // outer wa, inner wb: ((x:(x:y0,c:b)),c:a)
        let u = Value::parse("(x:(x:y0,c:b),c:a)").unwrap();
        assert_eq!(m.mu(wa, wb, &x, &u).unwrap().to_string(), "(x:y0,c:b)");
    }

    #[test]
    fn keeping_the_outer_warning_is_unlawful() {
        let m = multi_error_writer_with(Arc::new(|_: &Pomonoid, a: Grade, _: Grade| a));
        let r = crate::graded_monad::check_monad_laws(&m, 1);
        let failing: Vec<&str> = r.tallies.iter().filter(|t| t.failed > 0).map(|t| t.law.as_str()).collect();
        assert!(failing.contains(&"associativity"), "{failing:?}");
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(registry("nope", &RegistryArgs::default()), Err(MonadError::UnknownName(_))));
    }

    #[test]
    fn identity_over_trivial_is_identity_monad() {
        let m = registry("identity", &RegistryArgs::default()).unwrap();
        assert_eq!(m.grading().len(), 1);
        let x = FinSet::canonical(2);
        let i = m.grading().unit();
        assert_eq!(m.carrier(i, &x).unwrap().len(), 2);
        assert_eq!(m.eta(&x, &Value::atom("y1")).unwrap().to_string(), "x:y1");
    }

    #[test]
    fn bool_writer_uses_monoid_centre() {
        let m = bool_writer_pair(&pomonoid::multi_error());
        let x = FinSet::canonical(1);
        let tt = m.grading().grade("tt").unwrap();
        let tags: Vec<String> = m.carrier(tt, &x).unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(tags, vec!["(x:y0,c:e)", "(x:y0,c:t)"]);
    }
}
