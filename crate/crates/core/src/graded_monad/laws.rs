//! Exhaustive law checks over canonical sets up to a size bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::finkit::{all_functions, canonical_sets, mon, product, EvalResult, FinFn, FinSet, Value};
use crate::pomonoid::Grade;
use crate::report::{instance, Report};

use super::{CostrengthFn, GradedStrongMonad};

fn show(r: &EvalResult) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Both sides evaluated, are equal and lie in `carrier`.
fn agree(l: &EvalResult, r: &EvalResult, carrier: &FinSet) -> bool {
    matches!((l, r), (Ok(a), Ok(b)) if a == b && carrier.contains(a))
}

fn car(m: &GradedStrongMonad, a: Grade, x: &FinSet) -> FinSet {
    m.carrier(a, x).unwrap_or_else(|_| FinSet::canonical(0))
}

fn ordered_pairs(m: &GradedStrongMonad) -> Vec<(Grade, Grade)> {
    let p = m.grading();
    let mut out = Vec::new();
    for a in p.grades() {
        for b in p.grades() {
            if p.leq(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn incomplete(m: &GradedStrongMonad, subject: &str) -> Option<Report> {
    m.ensure_complete().err().map(|e| {
        let mut r = Report::new(subject);
        r.fail(instance("complete", &[], &[], m.name(), e, "all components"));
        r
    })
}

/// Unit, associativity and naturality of `η` and `μ`.
pub fn check_monad_laws(m: &GradedStrongMonad, k: usize) -> Report {
    let subject = format!("{}: monad laws", m.name());
    if let Some(r) = incomplete(m, &subject) {
        return r;
    }
    let mut r = Report::new(subject);
    let p = m.grading();
    let i = p.unit();
    let sets = canonical_sets(k);
    for law in ["left-unit", "right-unit", "associativity", "eta-natural", "mu-natural"] {
        r.declare(law);
    }
    for x in &sets {
        for a in p.grades() {
            let tax = car(m, a, x);
            let an = m.grade_name(a);
            let tix = car(m, i, x);
            for t in tax.iter() {
                let l = m.eta(&tax, t).and_then(|u| m.mu(i, a, x, &u));
                let ok = agree(&l, &Ok(t.clone()), &tax);
                r.check("left-unit", ok, || instance("left-unit", &[an], &[x.len()], t, show(&l), t));
                let rr = m
                    .fmap(a, &|v| m.eta(x, v), &|| tix.clone(), t)
                    .and_then(|u| m.mu(a, i, x, &u));
                let ok = agree(&rr, &Ok(t.clone()), &tax);
                r.check("right-unit", ok, || instance("right-unit", &[an], &[x.len()], t, show(&rr), t));
            }
        }
        for a in p.grades() {
            for b in p.grades() {
                for c in p.grades() {
                    let (ab, bc) = (p.mul(a, b), p.mul(b, c));
                    let abc = p.mul(ab, c);
                    let target = car(m, abc, x);
                    let tcx = car(m, c, x);
                    let tbcx = car(m, b, &tcx);
                    let tabcx = car(m, a, &tbcx);
                    let tbc_x = car(m, bc, x);
                    let names = [m.grade_name(a), m.grade_name(b), m.grade_name(c)];
                    for u in tabcx.iter() {
                        let l = m.mu(a, b, &tcx, u).and_then(|v| m.mu(ab, c, x, &v));
                        let rr = m
                            .fmap(a, &|v| m.mu(b, c, x, v), &|| tbc_x.clone(), u)
                            .and_then(|v| m.mu(a, bc, x, &v));
                        let ok = agree(&l, &rr, &target);
                        r.check("associativity", ok, || {
                            instance("associativity", &names, &[x.len()], u, show(&l), show(&rr))
                        });
                    }
                }
            }
        }
    }
    for x in &sets {
        for y in &sets {
            let fns = all_functions(x, y);
            let tiy = car(m, i, y);
            for f in &fns {
                for xv in x.iter() {
                    let l = m.eta(x, xv).and_then(|u| m.fmap(i, &|v| f.apply(v), &|| y.clone(), &u));
                    let rr = f.apply(xv).and_then(|yv| m.eta(y, &yv));
                    let ok = agree(&l, &rr, &tiy);
                    r.check("eta-natural", ok, || {
                        instance("eta-natural", &[], &[x.len(), y.len()], format!("{f:?} at {xv}"), show(&l), show(&rr))
                    });
                }
            }
            for a in p.grades() {
                for b in p.grades() {
                    let ab = p.mul(a, b);
                    let tbx = car(m, b, x);
                    let tby = car(m, b, y);
                    let tabx = car(m, a, &tbx);
                    let taby = car(m, ab, y);
                    let names = [m.grade_name(a), m.grade_name(b)];
                    for f in &fns {
                        for u in tabx.iter() {
                            let l = m
                                .fmap(a, &|v| m.fmap(b, &|w| f.apply(w), &|| y.clone(), v), &|| tby.clone(), u)
                                .and_then(|v| m.mu(a, b, y, &v));
                            let rr = m.mu(a, b, x, u).and_then(|v| m.fmap(ab, &|w| f.apply(w), &|| y.clone(), &v));
                            let ok = agree(&l, &rr, &taby);
                            r.check("mu-natural", ok, || {
                                instance("mu-natural", &names, &[x.len(), y.len()], format!("{f:?} at {u}"), show(&l), show(&rr))
                            });
                        }
                    }
                }
            }
        }
    }
    r
}

/// Lift identities, composition, compatibility with `μ`, naturality.
pub fn check_order_laws(m: &GradedStrongMonad, k: usize) -> Report {
    let subject = format!("{}: order laws", m.name());
    if let Some(r) = incomplete(m, &subject) {
        return r;
    }
    let mut r = Report::new(subject);
    let p = m.grading();
    for law in ["lift-identity", "lift-composition", "mu-grade-natural", "lift-natural"] {
        r.declare(law);
    }
    if !p.has_nontrivial_order() {
        r.note("discrete order: only identity lifts");
    }
    let sets = canonical_sets(k);
    let pairs = ordered_pairs(m);
    for x in &sets {
        for a in p.grades() {
            let tax = car(m, a, x);
            for t in tax.iter() {
                let l = m.lift(a, a, x, t);
                let ok = agree(&l, &Ok(t.clone()), &tax);
                r.check("lift-identity", ok, || instance("lift-identity", &[m.grade_name(a)], &[x.len()], t, show(&l), t));
            }
        }
        for &(a, a1) in &pairs {
            for &(_, a2) in pairs.iter().filter(|(s, _)| *s == a1) {
                let target = car(m, a2, x);
                for t in car(m, a, x).iter() {
                    let l = m.lift(a, a1, x, t).and_then(|v| m.lift(a1, a2, x, &v));
                    let rr = m.lift(a, a2, x, t);
                    let ok = agree(&l, &rr, &target);
                    r.check("lift-composition", ok, || {
                        instance(
                            "lift-composition",
                            &[m.grade_name(a), m.grade_name(a1), m.grade_name(a2)],
                            &[x.len()],
                            t,
                            show(&l),
                            show(&rr),
                        )
                    });
                }
            }
        }
        for &(a, a1) in &pairs {
            for &(b, b1) in &pairs {
                let (ab, ab1) = (p.mul(a, b), p.mul(a1, b1));
                let target = car(m, ab1, x);
                let tbx = car(m, b, x);
                let tb1x = car(m, b1, x);
                let names = [m.grade_name(a), m.grade_name(a1), m.grade_name(b), m.grade_name(b1)];
                for u in car(m, a, &tbx).iter() {
                    let l = m.mu(a, b, x, u).and_then(|v| m.lift(ab, ab1, x, &v));
                    let rr = m
                        .fmap(a, &|v| m.lift(b, b1, x, v), &|| tb1x.clone(), u)
                        .and_then(|v| m.lift(a, a1, &tb1x, &v))
                        .and_then(|v| m.mu(a1, b1, x, &v));
                    let ok = agree(&l, &rr, &target);
                    r.check("mu-grade-natural", ok, || {
                        instance("mu-grade-natural", &names, &[x.len()], u, show(&l), show(&rr))
                    });
                }
            }
        }
    }
    for x in &sets {
        for y in &sets {
            let fns = all_functions(x, y);
            for &(a, a1) in &pairs {
                let target = car(m, a1, y);
                let tax = car(m, a, x);
                for f in &fns {
                    for t in tax.iter() {
                        let l = m.lift(a, a1, x, t).and_then(|v| m.fmap(a1, &|w| f.apply(w), &|| y.clone(), &v));
                        let rr = m.fmap(a, &|w| f.apply(w), &|| y.clone(), t).and_then(|v| m.lift(a, a1, y, &v));
                        let ok = agree(&l, &rr, &target);
                        r.check("lift-natural", ok, || {
                            instance(
                                "lift-natural",
                                &[m.grade_name(a), m.grade_name(a1)],
                                &[x.len(), y.len()],
                                format!("{f:?} at {t}"),
                                show(&l),
                                show(&rr),
                            )
                        });
                    }
                }
            }
        }
    }
    r
}

/// `T^a f` for a product map `f ⊗ g` given as value functions.
fn tensor<'a>(
    f: &'a dyn Fn(&Value) -> EvalResult,
    g: &'a dyn Fn(&Value) -> EvalResult,
) -> impl Fn(&Value) -> EvalResult + 'a {
    move |v| {
        let (l, r) = v.as_pair()?;
        Ok(Value::pair(f(l)?, g(r)?))
    }
}

fn ok_clone(v: &Value) -> EvalResult {
    Ok(v.clone())
}

fn apply(f: &FinFn) -> impl Fn(&Value) -> EvalResult + '_ {
    move |v| f.apply(v)
}

/// Strength axioms: unitor, associator, `η`, `μ`, naturality, lifts.
pub fn check_strength_laws(m: &GradedStrongMonad, k: usize) -> Report {
    let subject = format!("{}: strength laws", m.name());
    if let Some(r) = incomplete(m, &subject) {
        return r;
    }
    let mut r = Report::new(subject);
    let p = m.grading();
    let i = p.unit();
    for law in [
        "strength-unitor",
        "strength-eta",
        "strength-associator",
        "strength-mu",
        "strength-natural-left",
        "strength-natural-right",
        "strength-lift",
    ] {
        r.declare(law);
    }
    let sets = canonical_sets(k);
    let unit = FinSet::unit();
    for a in p.grades() {
        let an = m.grade_name(a);
        for y in &sets {
            let tay = car(m, a, y);
            for t in tay.iter() {
                let l = m
                    .strength(a, &unit, y, &Value::unit(), t)
                    .and_then(|v| m.fmap(a, &mon::left_unitor, &|| y.clone(), &v));
                let ok = agree(&l, &Ok(t.clone()), &tay);
                r.check("strength-unitor", ok, || instance("strength-unitor", &[an], &[y.len()], t, show(&l), t));
            }
        }
    }
    for x in &sets {
        for y in &sets {
            let xy = product(x, y);
            let tixy = car(m, i, &xy);
            for xv in x.iter() {
                for yv in y.iter() {
                    let l = m.eta(y, yv).and_then(|t| m.strength(i, x, y, xv, &t));
                    let rr = m.eta(&xy, &Value::pair(xv.clone(), yv.clone()));
                    let ok = agree(&l, &rr, &tixy);
                    r.check("strength-eta", ok, || {
                        instance("strength-eta", &[], &[x.len(), y.len()], format!("({xv},{yv})"), show(&l), show(&rr))
                    });
                }
            }
        }
    }
    for a in p.grades() {
        let an = m.grade_name(a);
        for w in &sets {
            for x in &sets {
                let wx = product(w, x);
                for y in &sets {
                    let wx_y = product(&wx, y);
                    let target = car(m, a, &wx_y);
                    let xy = product(x, y);
                    let tay = car(m, a, y);
                    for wv in w.iter() {
                        for xv in x.iter() {
                            let wxv = Value::pair(wv.clone(), xv.clone());
                            for t in tay.iter() {
                                let l = m.strength(a, &wx, y, &wxv, t);
                                let rr = m
                                    .strength(a, x, y, xv, t)
                                    .and_then(|v| m.strength(a, w, &xy, wv, &v))
                                    .and_then(|v| m.fmap(a, &mon::assoc_inv, &|| wx_y.clone(), &v));
                                let ok = agree(&l, &rr, &target);
                                r.check("strength-associator", ok, || {
                                    instance(
                                        "strength-associator",
                                        &[an],
                                        &[w.len(), x.len(), y.len()],
                                        format!("({wxv},{t})"),
                                        show(&l),
                                        show(&rr),
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for a in p.grades() {
        for b in p.grades() {
            let ab = p.mul(a, b);
            let names = [m.grade_name(a), m.grade_name(b)];
            for x in &sets {
                for y in &sets {
                    let xy = product(x, y);
                    let target = car(m, ab, &xy);
                    let tby = car(m, b, y);
                    let tbxy = car(m, b, &xy);
                    for xv in x.iter() {
                        for u in car(m, a, &tby).iter() {
                            let l = m.mu(a, b, y, u).and_then(|v| m.strength(ab, x, y, xv, &v));
                            let rr = m
                                .strength(a, x, &tby, xv, u)
                                .and_then(|v| {
                                    m.fmap(
                                        a,
                                        &|pv| {
                                            let (xx, s) = pv.as_pair()?;
                                            m.strength(b, x, y, xx, s)
                                        },
                                        &|| tbxy.clone(),
                                        &v,
                                    )
                                })
                                .and_then(|v| m.mu(a, b, &xy, &v));
                            let ok = agree(&l, &rr, &target);
                            r.check("strength-mu", ok, || {
                                instance("strength-mu", &names, &[x.len(), y.len()], format!("({xv},{u})"), show(&l), show(&rr))
                            });
                        }
                    }
                }
            }
        }
    }
    for a in p.grades() {
        let an = m.grade_name(a);
        for x in &sets {
            for x2 in &sets {
                let fns = all_functions(x, x2);
                for y in &sets {
                    let x2y = product(x2, y);
                    let target = car(m, a, &x2y);
                    let tay = car(m, a, y);
                    for f in &fns {
                        let fa = apply(f);
                        let map = tensor(&fa, &ok_clone);
                        for xv in x.iter() {
                            for t in tay.iter() {
                                let l = m
                                    .strength(a, x, y, xv, t)
                                    .and_then(|v| m.fmap(a, &map, &|| x2y.clone(), &v));
                                let rr = f.apply(xv).and_then(|fx| m.strength(a, x2, y, &fx, t));
                                let ok = agree(&l, &rr, &target);
                                r.check("strength-natural-left", ok, || {
                                    instance(
                                        "strength-natural-left",
                                        &[an],
                                        &[x.len(), x2.len(), y.len()],
                                        format!("{f:?} at ({xv},{t})"),
                                        show(&l),
                                        show(&rr),
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
        for y in &sets {
            for y2 in &sets {
                let fns = all_functions(y, y2);
                let tay = car(m, a, y);
                for x in &sets {
                    let xy2 = product(x, y2);
                    let target = car(m, a, &xy2);
                    for g in &fns {
                        let ga = apply(g);
                        let map = tensor(&ok_clone, &ga);
                        for xv in x.iter() {
                            for t in tay.iter() {
                                let l = m
                                    .strength(a, x, y, xv, t)
                                    .and_then(|v| m.fmap(a, &map, &|| xy2.clone(), &v));
                                let rr = m
                                    .fmap(a, &ga, &|| y2.clone(), t)
                                    .and_then(|gt| m.strength(a, x, y2, xv, &gt));
                                let ok = agree(&l, &rr, &target);
                                r.check("strength-natural-right", ok, || {
                                    instance(
                                        "strength-natural-right",
                                        &[an],
                                        &[x.len(), y.len(), y2.len()],
                                        format!("{g:?} at ({xv},{t})"),
                                        show(&l),
                                        show(&rr),
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for (a, a1) in ordered_pairs(m) {
        for x in &sets {
            for y in &sets {
                let xy = product(x, y);
                let target = car(m, a1, &xy);
                for xv in x.iter() {
                    for t in car(m, a, y).iter() {
                        let l = m.strength(a, x, y, xv, t).and_then(|v| m.lift(a, a1, &xy, &v));
                        let rr = m.lift(a, a1, y, t).and_then(|v| m.strength(a1, x, y, xv, &v));
                        let ok = agree(&l, &rr, &target);
                        r.check("strength-lift", ok, || {
                            instance(
                                "strength-lift",
                                &[m.grade_name(a), m.grade_name(a1)],
                                &[x.len(), y.len()],
                                format!("({xv},{t})"),
                                show(&l),
                                show(&rr),
                            )
                        });
                    }
                }
            }
        }
    }
    r
}

/// The costrength obtained from the strength by conjugating with the symmetry.
pub fn derive_costrength(m: &GradedStrongMonad) -> CostrengthFn {
    let m = m.clone();
    std::sync::Arc::new(move |a, x, y, t, yv| m.derived_costrength(a, x, y, t, yv))
}

/// Costrength axioms and its interchange with the strength.
pub fn check_costrength_coherence(m: &GradedStrongMonad, k: usize) -> Report {
    let subject = format!("{}: costrength coherence", m.name());
    if let Some(r) = incomplete(m, &subject) {
        return r;
    }
    let mut r = Report::new(subject);
    let p = m.grading();
    let i = p.unit();
    for law in [
        "costrength-derived",
        "costrength-eta",
        "costrength-mu",
        "costrength-unitor",
        "costrength-associator",
        "strength-costrength-interchange",
    ] {
        r.declare(law);
    }
    if m.has_costrength_override() {
        r.note("costrength supplied explicitly instead of derived");
    }
    let sets = canonical_sets(k);
    let unit = FinSet::unit();
    for a in p.grades() {
        let an = m.grade_name(a);
        for x in &sets {
            let tax = car(m, a, x);
            for y in &sets {
                let xy = product(x, y);
                let target = car(m, a, &xy);
                for t in tax.iter() {
                    for yv in y.iter() {
                        let l = m.costrength(a, x, y, t, yv);
                        let rr = m.derived_costrength(a, x, y, t, yv);
                        let ok = agree(&l, &rr, &target);
                        r.check("costrength-derived", ok, || {
                            instance("costrength-derived", &[an], &[x.len(), y.len()], format!("({t},{yv})"), show(&l), show(&rr))
                        });
                    }
                }
            }
            for t in tax.iter() {
                let l = m
                    .costrength(a, x, &unit, t, &Value::unit())
                    .and_then(|v| m.fmap(a, &mon::right_unitor, &|| x.clone(), &v));
                let ok = agree(&l, &Ok(t.clone()), &tax);
                r.check("costrength-unitor", ok, || instance("costrength-unitor", &[an], &[x.len()], t, show(&l), t));
            }
        }
    }
    for x in &sets {
        for y in &sets {
            let xy = product(x, y);
            let tixy = car(m, i, &xy);
            for xv in x.iter() {
                for yv in y.iter() {
                    let l = m.eta(x, xv).and_then(|t| m.costrength(i, x, y, &t, yv));
                    let rr = m.eta(&xy, &Value::pair(xv.clone(), yv.clone()));
                    let ok = agree(&l, &rr, &tixy);
                    r.check("costrength-eta", ok, || {
                        instance("costrength-eta", &[], &[x.len(), y.len()], format!("({xv},{yv})"), show(&l), show(&rr))
                    });
                }
            }
        }
    }
    for a in p.grades() {
        for b in p.grades() {
            let ab = p.mul(a, b);
            let names = [m.grade_name(a), m.grade_name(b)];
            for x in &sets {
                let tbx = car(m, b, x);
                for y in &sets {
                    let xy = product(x, y);
                    let target = car(m, ab, &xy);
                    let tbxy = car(m, b, &xy);
                    for u in car(m, a, &tbx).iter() {
                        for yv in y.iter() {
                            let l = m.mu(a, b, x, u).and_then(|v| m.costrength(ab, x, y, &v, yv));
                            let rr = m
                                .costrength(a, &tbx, y, u, yv)
                                .and_then(|v| {
                                    m.fmap(
                                        a,
                                        &|pv| {
                                            let (s, yy) = pv.as_pair()?;
                                            m.costrength(b, x, y, s, yy)
                                        },
                                        &|| tbxy.clone(),
                                        &v,
                                    )
                                })
                                .and_then(|v| m.mu(a, b, &xy, &v));
                            let ok = agree(&l, &rr, &target);
                            r.check("costrength-mu", ok, || {
                                instance("costrength-mu", &names, &[x.len(), y.len()], format!("({u},{yv})"), show(&l), show(&rr))
                            });
                        }
                    }
                }
            }
        }
    }
    for a in p.grades() {
        let an = m.grade_name(a);
        for x in &sets {
            let tax = car(m, a, x);
            for y in &sets {
                let xy = product(x, y);
                for z in &sets {
                    let yz = product(y, z);
                    let xy_z = product(&xy, z);
                    let target = car(m, a, &xy_z);
                    for t in tax.iter() {
                        for yv in y.iter() {
                            for zv in z.iter() {
                                let l = m.costrength(a, x, y, t, yv).and_then(|v| m.costrength(a, &xy, z, &v, zv));
                                let rr = m
                                    .costrength(a, x, &yz, t, &Value::pair(yv.clone(), zv.clone()))
                                    .and_then(|v| m.fmap(a, &mon::assoc_inv, &|| xy_z.clone(), &v));
                                let ok = agree(&l, &rr, &target);
                                r.check("costrength-associator", ok, || {
                                    instance(
                                        "costrength-associator",
                                        &[an],
                                        &[x.len(), y.len(), z.len()],
                                        format!("(({t},{yv}),{zv})"),
                                        show(&l),
                                        show(&rr),
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // τ' ∘ (τ ⊗ Y) = T α⁻¹ ∘ τ ∘ (W ⊗ τ') ∘ α
    for a in p.grades() {
        let an = m.grade_name(a);
        for w in &sets {
            for x in &sets {
                let wx = product(w, x);
                let tax = car(m, a, x);
                for y in &sets {
                    let xy = product(x, y);
                    let wx_y = product(&wx, y);
                    let target = car(m, a, &wx_y);
                    for wv in w.iter() {
                        for t in tax.iter() {
                            for yv in y.iter() {
                                let l = m.strength(a, w, x, wv, t).and_then(|v| m.costrength(a, &wx, y, &v, yv));
                                let rr = m
                                    .costrength(a, x, y, t, yv)
                                    .and_then(|v| m.strength(a, w, &xy, wv, &v))
                                    .and_then(|v| m.fmap(a, &mon::assoc_inv, &|| wx_y.clone(), &v));
                                let ok = agree(&l, &rr, &target);
                                r.check("strength-costrength-interchange", ok, || {
                                    instance(
                                        "strength-costrength-interchange",
                                        &[an],
                                        &[w.len(), x.len(), y.len()],
                                        format!("(({wv},{t}),{yv})"),
                                        show(&l),
                                        show(&rr),
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// Outcome of comparing the two composites for one grade pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PairVerdict {
    Pass,
    /// `T^{a∗b}(X⊗Y)` and `T^{b∗a}(X⊗Y)` differ as sets.
    CarrierMismatch { x: usize, y: usize },
    ValueMismatch { x: usize, y: usize, t: String, s: String, lhs: String, rhs: String },
}

impl PairVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PairVerdict::Pass)
    }
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairVerdict::Pass => write!(f, "pass"),
            PairVerdict::CarrierMismatch { x, y } => write!(f, "carrier mismatch at |X|={x}, |Y|={y}"),
            PairVerdict::ValueMismatch { x, y, t, s, lhs, rhs } => {
                write!(f, "value mismatch at |X|={x}, |Y|={y}: ({t},{s}) gives {lhs} vs {rhs}")
            }
        }
    }
}

/// Compares the left-first and right-first composites at grades `(a, b)`
/// over all `X, Y` of size at most `k`; stops at the first mismatch.
pub fn check_commutative_pair(m: &GradedStrongMonad, a: Grade, b: Grade, k: usize) -> PairVerdict {
    let p = m.grading();
    let (ab, ba) = (p.mul(a, b), p.mul(b, a));
    let sets = canonical_sets(k);
    for x in &sets {
        for y in &sets {
            let xy = product(x, y);
            let left_carrier = car(m, ab, &xy);
            if ab != ba && left_carrier != car(m, ba, &xy) {
                return PairVerdict::CarrierMismatch { x: x.len(), y: y.len() };
            }
            let tax = car(m, a, x);
            let tby = car(m, b, y);
            for t in tax.iter() {
                for s in tby.iter() {
                    let l = m.left_first(a, b, x, y, t, s);
                    let rr = m.right_first(a, b, x, y, t, s);
                    if !agree(&l, &rr, &left_carrier) {
                        return PairVerdict::ValueMismatch {
                            x: x.len(),
                            y: y.len(),
                            t: t.to_string(),
                            s: s.to_string(),
                            lhs: show(&l),
                            rhs: show(&rr),
                        };
                    }
                }
            }
        }
    }
    PairVerdict::Pass
}

/// Verdict for every grade pair.
pub fn commutativity_table(m: &GradedStrongMonad, k: usize) -> Vec<(Grade, Grade, PairVerdict)> {
    let p = m.grading();
    let mut out = Vec::new();
    for a in p.grades() {
        for b in p.grades() {
            out.push((a, b, check_commutative_pair(m, a, b, k)));
        }
    }
    out
}

/// Commutativity at every grade pair, one law instance per pair.
pub fn check_commutative(m: &GradedStrongMonad, k: usize) -> Report {
    let subject = format!("{}: commutativity", m.name());
    if let Some(r) = incomplete(m, &subject) {
        return r;
    }
    let mut r = Report::new(subject);
    r.declare("commutative");
    for (a, b, v) in commutativity_table(m, k) {
        let names = [m.grade_name(a), m.grade_name(b)];
        match &v {
            PairVerdict::Pass => r.pass("commutative"),
            PairVerdict::CarrierMismatch { x, y } => {
                let (ab, ba) = (m.grading().mul(a, b), m.grading().mul(b, a));
                r.fail(instance(
                    "commutative",
                    &names,
                    &[*x, *y],
                    "carrier",
                    format!("T^{}", m.grade_name(ab)),
                    format!("T^{}", m.grade_name(ba)),
                ))
            }
            PairVerdict::ValueMismatch { x, y, t, s, lhs, rhs } => {
                r.fail(instance("commutative", &names, &[*x, *y], format!("({t},{s})"), lhs, rhs))
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_monad::registry::{bool_writer_pair, identity, multi_error_writer};
    use crate::pomonoid;

    #[test]
    fn identity_monad_satisfies_everything() {
        let m = identity(pomonoid::bool_and());
        for r in [
            check_monad_laws(&m, 2),
            check_order_laws(&m, 2),
            check_strength_laws(&m, 2),
            check_costrength_coherence(&m, 2),
            check_commutative(&m, 2),
        ] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn multi_error_writer_is_lawful() {
        let m = multi_error_writer();
        for r in [
            check_monad_laws(&m, 2),
            check_order_laws(&m, 2),
            check_strength_laws(&m, 2),
            check_costrength_coherence(&m, 2),
        ] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn warnings_do_not_commute() {
        let m = multi_error_writer();
        let p = m.grading();
        let (wa, wb, t) = (p.grade("wa").unwrap(), p.grade("wb").unwrap(), p.grade("t").unwrap());
        assert!(matches!(check_commutative_pair(&m, wa, wb, 1), PairVerdict::CarrierMismatch { .. }));
        assert!(check_commutative_pair(&m, t, wb, 2).passed());
    }

    #[test]
    fn missing_component_is_reported() {
        let m = GradedStrongMonad::new("empty", pomonoid::trivial());
        let r = check_monad_laws(&m, 1);
        assert!(!r.passed());
        assert_eq!(r.failures[0].law, "complete");
    }

    #[test]
    fn broken_costrength_fails_mu_diagram() {
        let me = pomonoid::multi_error();
        let m = bool_writer_pair(&me).with_costrength(|_, _, _, t, yv| {
            let (x, tag) = t.as_pair()?;
            let tag = if tag.as_const()? == "wa" { "e" } else { tag.as_const()? };
            Ok(Value::pair(Value::var(Value::pair(x.as_var()?.clone(), yv.clone())), Value::konst(tag)))
        });
        let r = check_costrength_coherence(&m, 1);
        assert!(r.tally("costrength-mu").unwrap().failed > 0, "{r}");
        assert_eq!(r.tally("costrength-eta").unwrap().failed, 0);
    }
}
