//! Morphisms of graded strong monads.
//!
//! A morphism `(φ, ι) : S → T` pairs a pomonoid morphism `φ` with
//! components `ι^a_X : S^a X → T^{φ a} X`. Since `φ` is only lax, the unit and
//! multiplication squares close up with the lifts `i ≤ φ(i)` and
//! `φa∗φb ≤ φ(a∗b)`.

use std::sync::Arc;

use crate::finkit::{all_functions, canonical_sets, product, EvalResult, FinSet, Value};
use crate::pomonoid::{check_pomonoid_morphism, Grade, PomonoidMorphism};
use crate::report::{instance, Report};

use super::GradedStrongMonad;

/// `ι^a_X`, arguments `(a, X, element of S^a X)`.
pub type IotaFn = Arc<dyn Fn(Grade, &FinSet, &Value) -> EvalResult + Send + Sync>;

#[derive(Clone)]
pub struct GradedMonadMorphism {
    pub source: GradedStrongMonad,
    pub target: GradedStrongMonad,
    pub phi: PomonoidMorphism,
    pub iota: IotaFn,
}

impl std::fmt::Debug for GradedMonadMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedMonadMorphism")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("phi", &self.phi.map())
            .finish_non_exhaustive()
    }
}

impl GradedMonadMorphism {
    pub fn new(
        source: GradedStrongMonad,
        target: GradedStrongMonad,
        phi: PomonoidMorphism,
        iota: impl Fn(Grade, &FinSet, &Value) -> EvalResult + Send + Sync + 'static,
    ) -> GradedMonadMorphism {
        GradedMonadMorphism { source, target, phi, iota: Arc::new(iota) }
    }

    /// Every `ι^a_X` with `|X| ≤ k` is injective.
    pub fn is_injective(&self, k: usize) -> bool {
        let s = &self.source;
        for x in canonical_sets(k) {
            for a in s.grading().grades() {
                let Ok(sx) = s.carrier(a, &x) else { return false };
                let mut images = Vec::with_capacity(sx.len());
                for v in sx.iter() {
                    match (self.iota)(a, &x, v) {
                        Ok(img) => images.push(img),
                        Err(_) => return false,
                    }
                }
                images.sort();
                images.dedup();
                if images.len() != sx.len() {
                    return false;
                }
            }
        }
        true
    }
}

fn show(r: &EvalResult) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn agree(l: &EvalResult, r: &EvalResult, carrier: &FinSet) -> bool {
    matches!((l, r), (Ok(a), Ok(b)) if a == b && carrier.contains(a))
}

/// Checks `φ`, the unit, multiplication and strength squares, lift
/// compatibility and naturality of `ι`, over sets of size at most `k`.
pub fn check_graded_monad_morphism(h: &GradedMonadMorphism, k: usize) -> Report {
    let (s, t) = (&h.source, &h.target);
    let mut r = Report::new(format!("morphism {} -> {}", s.name(), t.name()));
    for law in ["iota-eta", "iota-mu", "iota-strength", "iota-lift", "iota-natural"] {
        r.declare(law);
    }
    for m in [s, t] {
        if let Err(e) = m.ensure_complete() {
            r.fail(instance("complete", &[], &[], m.name(), e, "all components"));
            return r;
        }
    }
    let phi_report = check_pomonoid_morphism(&h.phi);
    let phi_ok = phi_report.passed();
    r.merge(phi_report);
    if !phi_ok {
        r.note("grade map is not a pomonoid morphism; monad squares skipped");
        return r;
    }
    let (sp, tp) = (s.grading(), t.grading());
    let phi = |a: Grade| h.phi.apply(a);
    let iota = |a: Grade, x: &FinSet, v: &Value| (h.iota)(a, x, v);
    let tcar = |a: Grade, x: &FinSet| t.carrier(a, x).unwrap_or_else(|_| FinSet::canonical(0));
    let scar = |a: Grade, x: &FinSet| s.carrier(a, x).unwrap_or_else(|_| FinSet::canonical(0));
    let sets = canonical_sets(k);
    let si = sp.unit();

    for x in &sets {
        let target = tcar(phi(si), x);
        for xv in x.iter() {
            let l = s.eta(x, xv).and_then(|v| iota(si, x, &v));
            let rr = t.eta(x, xv).and_then(|v| t.lift(tp.unit(), phi(si), x, &v));
            let ok = agree(&l, &rr, &target);
            r.check("iota-eta", ok, || instance("iota-eta", &[], &[x.len()], xv, show(&l), show(&rr)));
        }
    }
    for a in sp.grades() {
        for b in sp.grades() {
            let ab = sp.mul(a, b);
            let (fa, fb, fab) = (phi(a), phi(b), phi(ab));
            let names = [sp.name(a), sp.name(b)];
            for x in &sets {
                let target = tcar(fab, x);
                let sbx = scar(b, x);
                let tfbx = tcar(fb, x);
                for u in scar(a, &sbx).iter() {
                    let l = s.mu(a, b, x, u).and_then(|v| iota(ab, x, &v));
                    let rr = s
                        .fmap(a, &|v| iota(b, x, v), &|| tfbx.clone(), u)
                        .and_then(|v| iota(a, &tfbx, &v))
                        .and_then(|v| t.mu(fa, fb, x, &v))
                        .and_then(|v| t.lift(tp.mul(fa, fb), fab, x, &v));
                    let ok = agree(&l, &rr, &target);
                    r.check("iota-mu", ok, || instance("iota-mu", &names, &[x.len()], u, show(&l), show(&rr)));
                }
            }
        }
    }
    for a in sp.grades() {
        let an = [sp.name(a)];
        for x in &sets {
            for y in &sets {
                let xy = product(x, y);
                let target = tcar(phi(a), &xy);
                for xv in x.iter() {
                    for tv in scar(a, y).iter() {
                        let l = s.strength(a, x, y, xv, tv).and_then(|v| iota(a, &xy, &v));
                        let rr = iota(a, y, tv).and_then(|v| t.strength(phi(a), x, y, xv, &v));
                        let ok = agree(&l, &rr, &target);
                        r.check("iota-strength", ok, || {
                            instance("iota-strength", &an, &[x.len(), y.len()], format!("({xv},{tv})"), show(&l), show(&rr))
                        });
                    }
                }
            }
        }
    }
    for a in sp.grades() {
        for a1 in sp.grades().filter(|&a1| sp.leq(a, a1)) {
            for x in &sets {
                let target = tcar(phi(a1), x);
                for tv in scar(a, x).iter() {
                    let l = s.lift(a, a1, x, tv).and_then(|v| iota(a1, x, &v));
                    let rr = iota(a, x, tv).and_then(|v| t.lift(phi(a), phi(a1), x, &v));
                    let ok = agree(&l, &rr, &target);
                    r.check("iota-lift", ok, || {
                        instance("iota-lift", &[sp.name(a), sp.name(a1)], &[x.len()], tv, show(&l), show(&rr))
                    });
                }
            }
        }
    }
    for x in &sets {
        for y in &sets {
            let fns = all_functions(x, y);
            for a in sp.grades() {
                let target = tcar(phi(a), y);
                let sax = scar(a, x);
                for f in &fns {
                    for tv in sax.iter() {
                        let l = iota(a, x, tv).and_then(|v| t.fmap(phi(a), &|w| f.apply(w), &|| y.clone(), &v));
                        let rr = s.fmap(a, &|w| f.apply(w), &|| y.clone(), tv).and_then(|v| iota(a, y, &v));
                        let ok = agree(&l, &rr, &target);
                        r.check("iota-natural", ok, || {
                            instance("iota-natural", &[sp.name(a)], &[x.len(), y.len()], format!("{f:?} at {tv}"), show(&l), show(&rr))
                        });
                    }
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_monad::registry::{bool_writer_pair, monoid_writer};
    use crate::pomonoid;

    fn bool_into_writer() -> GradedMonadMorphism {
        let me = pomonoid::multi_error();
        let s = bool_writer_pair(&me);
        let t = monoid_writer(&me);
        let phi = PomonoidMorphism::new(s.grading().clone(), t.grading().clone(), &[("tt", "i"), ("ff", "i")]).unwrap();
        GradedMonadMorphism::new(s, t, phi, |_, _, v| Ok(v.clone()))
    }

    #[test]
    fn inclusion_is_a_morphism() {
        let h = bool_into_writer();
        let r = check_graded_monad_morphism(&h, 2);
        assert!(r.passed(), "{r}");
        assert!(h.is_injective(2));
    }

    #[test]
    fn wrong_component_is_caught() {
        let mut h = bool_into_writer();
        h.iota = Arc::new(|_, _, v| {
            let (x, _) = v.as_pair()?;
            Ok(Value::pair(x.clone(), Value::konst("e")))
        });
        let r = check_graded_monad_morphism(&h, 1);
        assert!(r.tally("iota-eta").unwrap().failed > 0);
        assert!(!h.is_injective(1));
    }
}
