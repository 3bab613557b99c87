//! Relaxed commutativity: bimonoidal centres, duoidal gradations and the
//! concatenation/shuffle duoid of capped languages.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::centre::{Bound, CentralCone};
use crate::finkit::{canonical_sets, mon, product, EvalError, EvalResult, FinFn, FinSet, Value};
use crate::graded_monad::laws::check_commutative;
use crate::graded_monad::registry::{writer_monad, Combine};
use crate::graded_monad::GradedStrongMonad;
use crate::pomonoid::{Bimonoid, Duoid, Grade, Pomonoid, PomonoidError, SecondProduct};
use crate::report::{instance, Report};

/// Closure size beyond which [`language_duoid`] gives up.
pub const DEFAULT_BUDGET: usize = 64;

/// Grade tuples checked exhaustively up to this many grades. Larger gradings
/// get every tuple over their first this-many grades plus a strided sample.
pub const EXHAUSTIVE_GRADES: usize = 6;

/// Strided sample size for grade tuples on larger gradings.
pub const SAMPLED_TUPLES: usize = 1296;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelaxError {
    #[error("languages over different alphabets or caps: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("invalid language literal {0:?}: {1}")]
    InvalidLiteral(String, String),
    #[error("no generator languages given")]
    EmptyGenerators,
    #[error("closure exceeded {0} languages")]
    ClosureExplosion(usize),
    #[error("bimonoid is over a different pomonoid than the monad")]
    BimonoidMismatch,
    #[error("not commutative: {0}")]
    NotCommutative(String),
    #[error(transparent)]
    Pomonoid(#[from] PomonoidError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A finite language whose words all have length at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CappedLanguage {
    alphabet: String,
    cap: usize,
    words: BTreeSet<String>,
}

fn normalize_alphabet(alphabet: &str) -> String {
    let set: BTreeSet<char> = alphabet.chars().collect();
    set.into_iter().collect()
}

impl CappedLanguage {
    /// Words longer than `cap` are dropped.
    pub fn new<S: AsRef<str>>(alphabet: &str, cap: usize, words: &[S]) -> Result<CappedLanguage, RelaxError> {
        let alphabet = normalize_alphabet(alphabet);
        let mut set = BTreeSet::new();
        for w in words {
            let w = w.as_ref();
            if let Some(c) = w.chars().find(|c| !alphabet.contains(*c)) {
                return Err(RelaxError::InvalidLiteral(w.to_string(), format!("letter {c:?} not in alphabet")));
            }
            if w.chars().count() <= cap {
                set.insert(w.to_string());
            }
        }
        Ok(CappedLanguage { alphabet, cap, words: set })
    }

    /// `{ab,ba}`, `{}` for the empty language, `_` for the empty word.
    pub fn parse(alphabet: &str, cap: usize, text: &str) -> Result<CappedLanguage, RelaxError> {
        let bad = |why: &str| RelaxError::InvalidLiteral(text.to_string(), why.to_string());
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| bad("expected braces"))?;
        let mut words = Vec::new();
        if !inner.trim().is_empty() {
            for w in inner.split(',') {
                let w = w.trim();
                match w {
                    "" => return Err(bad("empty word; write _ for the empty word")),
                    "_" => words.push(String::new()),
                    _ => {
                        if w.chars().count() > cap {
                            return Err(bad(&format!("word {w} longer than cap {cap}")));
                        }
                        words.push(w.to_string());
                    }
                }
            }
        }
        CappedLanguage::new(alphabet, cap, &words)
    }

    pub fn epsilon(alphabet: &str, cap: usize) -> CappedLanguage {
        CappedLanguage { alphabet: normalize_alphabet(alphabet), cap, words: BTreeSet::from([String::new()]) }
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset_of(&self, other: &CappedLanguage) -> bool {
        self.words.is_subset(&other.words)
    }

    fn compatible(&self, other: &CappedLanguage) -> Result<(), RelaxError> {
        if self.alphabet != other.alphabet || self.cap != other.cap {
            return Err(RelaxError::AlphabetMismatch(
                format!("{}/{}", self.alphabet, self.cap),
                format!("{}/{}", other.alphabet, other.cap),
            ));
        }
        Ok(())
    }

    fn with_words(&self, words: BTreeSet<String>) -> CappedLanguage {
        CappedLanguage { alphabet: self.alphabet.clone(), cap: self.cap, words }
    }

    /// `{ww' | |ww'| ≤ cap}`
    pub fn concat(&self, other: &CappedLanguage) -> Result<CappedLanguage, RelaxError> {
        self.compatible(other)?;
        let mut out = BTreeSet::new();
        for u in &self.words {
            for v in &other.words {
                if u.chars().count() + v.chars().count() <= self.cap {
                    out.insert(format!("{u}{v}"));
                }
            }
        }
        Ok(self.with_words(out))
    }

    /// All interleavings of a word of each, up to `cap`.
    pub fn shuffle(&self, other: &CappedLanguage) -> Result<CappedLanguage, RelaxError> {
        self.compatible(other)?;
        let mut out = BTreeSet::new();
        for u in &self.words {
            for v in &other.words {
                if u.chars().count() + v.chars().count() <= self.cap {
                    let (u, v): (Vec<char>, Vec<char>) = (u.chars().collect(), v.chars().collect());
                    interleave(&u, &v, &mut String::new(), &mut out);
                }
            }
        }
        Ok(self.with_words(out))
    }

    /// Every sublanguage, as literals.
    pub fn sublanguages(&self) -> Vec<CappedLanguage> {
        let words: Vec<&String> = self.words.iter().collect();
        (0u64..1 << words.len())
            .map(|mask| {
                let picked = words.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| (*w).clone());
                self.with_words(picked.collect())
            })
            .collect()
    }
}

fn interleave(u: &[char], v: &[char], acc: &mut String, out: &mut BTreeSet<String>) {
    match (u.split_first(), v.split_first()) {
        (None, None) => {
            out.insert(acc.clone());
        }
        (Some((c, rest)), None) | (None, Some((c, rest))) => {
            acc.push(*c);
            interleave(rest, &[], acc, out);
            acc.pop();
        }
        (Some((c, ur)), Some((d, vr))) => {
            acc.push(*c);
            interleave(ur, v, acc, out);
            acc.pop();
            acc.push(*d);
            interleave(u, vr, acc, out);
            acc.pop();
        }
    }
}

impl CappedLanguage {
    /// Words ordered by length, then lexicographically.
    fn shortlex(&self) -> Vec<&String> {
        let mut words: Vec<&String> = self.words.iter().collect();
        words.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        words
    }
}

impl fmt::Display for CappedLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<&str> = self.shortlex().iter().map(|w| if w.is_empty() { "_" } else { w.as_str() }).collect();
        write!(f, "{{{}}}", shown.join(","))
    }
}

/// A duoid whose elements are capped languages.
#[derive(Clone, Debug)]
pub struct LanguageDuoid {
    pub alphabet: String,
    pub cap: usize,
    pub languages: Vec<CappedLanguage>,
    pub duoid: Duoid,
}

impl LanguageDuoid {
    pub fn grade_of(&self, l: &CappedLanguage) -> Option<Grade> {
        self.languages.iter().position(|x| x == l).map(Grade)
    }

    pub fn language(&self, g: Grade) -> &CappedLanguage {
        &self.languages[g.0]
    }

    pub fn parse(&self, literal: &str) -> Result<CappedLanguage, RelaxError> {
        CappedLanguage::parse(&self.alphabet, self.cap, literal)
    }
}

/// Closes `generators ∪ {ε}` under concatenation and shuffle; ordered by
/// inclusion.
pub fn language_duoid(
    alphabet: &str,
    cap: usize,
    generators: &[CappedLanguage],
    budget: usize,
) -> Result<LanguageDuoid, RelaxError> {
    if generators.is_empty() {
        return Err(RelaxError::EmptyGenerators);
    }
    let eps = CappedLanguage::epsilon(alphabet, cap);
    let mut langs = vec![eps.clone()];
    for g in generators {
        g.compatible(&eps)?;
        if !langs.contains(g) {
            langs.push(g.clone());
        }
    }
    let mut done = 0;
    while done < langs.len() {
        let n = langs.len();
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                for l in [langs[i].concat(&langs[j])?, langs[i].shuffle(&langs[j])?] {
                    if !langs.contains(&l) {
                        langs.push(l);
                        if langs.len() > budget {
                            return Err(RelaxError::ClosureExplosion(budget));
                        }
                    }
                }
            }
        }
        done = n;
    }
    langs.sort_by(|a, b| {
        let key = |l: &CappedLanguage| l.shortlex().into_iter().map(|w| (w.len(), w.clone())).collect::<Vec<_>>();
        a.len().cmp(&b.len()).then_with(|| key(a).cmp(&key(b)))
    });
    let names: Vec<String> = langs.iter().map(|l| l.to_string()).collect();
    let find = |l: &CappedLanguage| langs.iter().position(|x| x == l).expect("closed under the operations");
    let unit = find(&eps);
    let mut le = Vec::new();
    for (i, a) in langs.iter().enumerate() {
        for (j, b) in langs.iter().enumerate() {
            if a.is_subset_of(b) {
                le.push((i, j));
            }
        }
    }
    let base = Pomonoid::from_fn(&names, unit, |a, b| find(&langs[a].concat(&langs[b]).expect("same alphabet")), &le)?;
    let par = SecondProduct::from_fn(base, Grade(unit), |a, b| {
        Grade(find(&langs[a.0].shuffle(&langs[b.0]).expect("same alphabet")))
    });
    Ok(LanguageDuoid { alphabet: normalize_alphabet(alphabet), cap, languages: langs, duoid: Duoid(par) })
}

pub fn language_duoid_from_literals<S: AsRef<str>>(
    alphabet: &str,
    cap: usize,
    generators: &[S],
    budget: usize,
) -> Result<LanguageDuoid, RelaxError> {
    let gens = generators
        .iter()
        .map(|g| CappedLanguage::parse(alphabet, cap, g.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    language_duoid(alphabet, cap, &gens, budget)
}

/// `m_{a,b,X,Y}`, arguments `(a, b, X, Y, t, s)`.
pub type MFn = Arc<dyn Fn(Grade, Grade, &FinSet, &FinSet, &Value, &Value) -> EvalResult + Send + Sync>;

/// A graded monad over the sequential part of a duoid, with a monoidal
/// structure `m` landing at the parallel product of grades.
#[derive(Clone)]
pub struct DuoidalGradedMonad {
    pub monad: GradedStrongMonad,
    pub duoid: Duoid,
    pub m: MFn,
}

impl DuoidalGradedMonad {
    pub fn with_m(
        mut self,
        m: impl Fn(Grade, Grade, &FinSet, &FinSet, &Value, &Value) -> EvalResult + Send + Sync + 'static,
    ) -> Self {
        self.m = Arc::new(m);
        self
    }
}

/// The writer monad graded by a language duoid: `T^L X = X × P(L)`.
pub fn build_language_writer(d: &LanguageDuoid) -> DuoidalGradedMonad {
    let tags = d
        .languages
        .iter()
        .map(|l| l.sublanguages().iter().map(|s| s.to_string()).collect())
        .collect();
    let (alphabet, cap) = (d.alphabet.clone(), d.cap);
    let combine: Combine = Arc::new(move |outer: &str, inner: &str| {
        let l = CappedLanguage::parse(&alphabet, cap, outer).map_err(|e| EvalError::Other(e.to_string()))?;
        let r = CappedLanguage::parse(&alphabet, cap, inner).map_err(|e| EvalError::Other(e.to_string()))?;
        Ok(l.concat(&r).map_err(|e| EvalError::Other(e.to_string()))?.to_string())
    });
    let unit = CappedLanguage::epsilon(&d.alphabet, d.cap).to_string();
    let monad = writer_monad("language_writer", d.duoid.base().clone(), tags, unit, combine);
    let (alphabet, cap) = (d.alphabet.clone(), d.cap);
    let m: MFn = Arc::new(move |_, _, _, _, t, s| {
        let (x, l) = t.as_pair()?;
        let (y, r) = s.as_pair()?;
        let l = CappedLanguage::parse(&alphabet, cap, l.as_const()?).map_err(|e| EvalError::Other(e.to_string()))?;
        let r = CappedLanguage::parse(&alphabet, cap, r.as_const()?).map_err(|e| EvalError::Other(e.to_string()))?;
        let tag = l.shuffle(&r).map_err(|e| EvalError::Other(e.to_string()))?;
        Ok(Value::pair(Value::var(Value::pair(x.as_var()?.clone(), y.as_var()?.clone())), Value::konst(tag.to_string())))
    });
    DuoidalGradedMonad { monad, duoid: d.duoid.clone(), m }
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

/// All `arity`-tuples of grades when there are at most
/// [`EXHAUSTIVE_GRADES`] grades. Otherwise every tuple over the first
/// [`EXHAUSTIVE_GRADES`] grades (the smallest ones, for closure-built
/// gradings), followed by a fixed stride through the rest.
pub fn grade_tuples(n: usize, arity: u32) -> Vec<Vec<Grade>> {
    let total = n.pow(arity);
    let decode = |mut q: usize, base: usize| {
        let mut t = vec![Grade(0); arity as usize];
        for slot in t.iter_mut().rev() {
            *slot = Grade(q % base);
            q /= base;
        }
        t
    };
    if n <= EXHAUSTIVE_GRADES || total <= SAMPLED_TUPLES {
        return (0..total).map(|q| decode(q, n)).collect();
    }
    let mut seen = BTreeSet::new();
    let small = (0..EXHAUSTIVE_GRADES.pow(arity)).map(|q| decode(q, EXHAUSTIVE_GRADES));
    // 7919 is prime, so the stride visits distinct tuples unless n is a multiple of it.
    let strided = (0..SAMPLED_TUPLES).map(|i| decode((i * 7919 + 1) % total, n));
    small.chain(strided).filter(|t| seen.insert(t.clone())).collect()
}

/// Main duoidal diagram plus the monoidal diagrams for `m`.
pub fn check_duoidal_gradation(dm: &DuoidalGradedMonad, k: usize) -> Report {
    let t = &dm.monad;
    let mut r = Report::new(format!("{}: duoidal gradation", t.name()));
    for law in ["duoidal-main", "m-eta", "m-associativity", "m-unit-left", "m-unit-right"] {
        r.declare(law);
    }
    if let Err(e) = t.ensure_complete() {
        r.fail(instance("complete", &[], &[], t.name(), e, "all components"));
        return r;
    }
    let p = t.grading();
    let d = &dm.duoid;
    let n = p.len();
    let m = |a: Grade, b: Grade, x: &FinSet, y: &FinSet, u: &Value, v: &Value| (dm.m)(a, b, x, y, u, v);
    let car = |a: Grade, x: &FinSet| t.carrier(a, x).unwrap_or_else(|_| FinSet::canonical(0));
    let sets = canonical_sets(k);
    let quads = grade_tuples(n, 4);
    if quads.len() < n.pow(4) {
        r.note(format!("duoidal-main: sampled {} of {} grade quadruples", quads.len(), n.pow(4)));
    }
    for q in &quads {
        let (a, b, c, e) = (q[0], q[1], q[2], q[3]);
        let names = [p.name(a), p.name(b), p.name(c), p.name(e)];
        let (ab, ce) = (p.mul(a, b), p.mul(c, e));
        let (ac, be) = (d.par(a, c), d.par(b, e));
        let top = d.par(ab, ce);
        let low = p.mul(ac, be);
        if !p.leq(low, top) {
            r.fail(instance("duoidal-main", &names, &[], "interchange", p.name(low), p.name(top)));
            continue;
        }
        for x in &sets {
            let tbx = car(b, x);
            let tabx = car(a, &tbx);
            for y in &sets {
                let tey = car(e, y);
                let tcey = car(c, &tey);
                let xy = product(x, y);
                let target = car(top, &xy);
                let tbexy = car(be, &xy);
                for u in tabx.iter() {
                    for v in tcey.iter() {
                        let l = t
                            .mu(a, b, x, u)
                            .and_then(|mu_u| t.mu(c, e, y, v).and_then(|mu_v| m(ab, ce, x, y, &mu_u, &mu_v)));
                        let rr = m(a, c, &tbx, &tey, u, v)
                            .and_then(|w| {
                                t.fmap(
                                    ac,
                                    &|pv| {
                                        let (s1, s2) = pv.as_pair()?;
                                        m(b, e, x, y, s1, s2)
                                    },
                                    &|| tbexy.clone(),
                                    &w,
                                )
                            })
                            .and_then(|w| t.mu(ac, be, &xy, &w))
                            .and_then(|w| t.lift(low, top, &xy, &w));
                        let ok = agree(&l, &rr, &target);
                        r.check("duoidal-main", ok, || {
                            instance("duoidal-main", &names, &[x.len(), y.len()], format!("({u},{v})"), show(&l), show(&rr))
                        });
                    }
                }
            }
        }
    }

    let i = p.unit();
    let ii = d.par(i, i);
    for x in &sets {
        for y in &sets {
            let xy = product(x, y);
            let target = car(ii, &xy);
            for xv in x.iter() {
                for yv in y.iter() {
                    let l = t.eta(x, xv).and_then(|a| t.eta(y, yv).and_then(|b| m(i, i, x, y, &a, &b)));
                    let rr = t.eta(&xy, &Value::pair(xv.clone(), yv.clone())).and_then(|v| t.lift(i, ii, &xy, &v));
                    let ok = agree(&l, &rr, &target);
                    r.check("m-eta", ok, || instance("m-eta", &[], &[x.len(), y.len()], format!("({xv},{yv})"), show(&l), show(&rr)));
                }
            }
        }
    }

    let small = canonical_sets(k.min(1));
    for q in grade_tuples(n, 3) {
        let (a, b, c) = (q[0], q[1], q[2]);
        let names = [p.name(a), p.name(b), p.name(c)];
        let (ab, bc) = (d.par(a, b), d.par(b, c));
        let abc = d.par(ab, c);
        for x in &small {
            for y in &small {
                for z in &small {
                    let xy = product(x, y);
                    let yz = product(y, z);
                    let xy_z = product(&xy, z);
                    let target = car(abc, &xy_z);
                    let (tax, tby, tcz) = (car(a, x), car(b, y), car(c, z));
                    for u in tax.iter() {
                        for v in tby.iter() {
                            for w in tcz.iter() {
                                let l = m(a, b, x, y, u, v).and_then(|uv| m(ab, c, &xy, z, &uv, w));
                                let rr = m(b, c, y, z, v, w)
                                    .and_then(|vw| m(a, bc, x, &yz, u, &vw))
                                    .and_then(|o| t.fmap(abc, &mon::assoc_inv, &|| xy_z.clone(), &o));
                                let ok = agree(&l, &rr, &target);
                                r.check("m-associativity", ok, || {
                                    instance(
                                        "m-associativity",
                                        &names,
                                        &[x.len(), y.len(), z.len()],
                                        format!("({u},{v},{w})"),
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

    let one = FinSet::unit();
    for a in p.grades() {
        let (ia, ai) = (d.par(i, a), d.par(a, i));
        for x in &sets {
            let tax = car(a, x);
            for tv in tax.iter() {
                let target = car(ia, x);
                let l = t
                    .eta(&one, &Value::unit())
                    .and_then(|e| m(i, a, &one, x, &e, tv))
                    .and_then(|o| t.fmap(ia, &mon::left_unitor, &|| x.clone(), &o));
                let rr = t.lift(a, ia, x, tv);
                let ok = agree(&l, &rr, &target);
                r.check("m-unit-left", ok, || instance("m-unit-left", &[p.name(a)], &[x.len()], tv, show(&l), show(&rr)));

                let target = car(ai, x);
                let l = t
                    .eta(&one, &Value::unit())
                    .and_then(|e| m(a, i, x, &one, tv, &e))
                    .and_then(|o| t.fmap(ai, &mon::right_unitor, &|| x.clone(), &o));
                let rr = t.lift(a, ai, x, tv);
                let ok = agree(&l, &rr, &target);
                r.check("m-unit-right", ok, || instance("m-unit-right", &[p.name(a)], &[x.len()], tv, show(&l), show(&rr)));
            }
        }
    }
    r
}

/// For a commutative monad over a commutative grading, `m` is the common
/// value of the two composites and `∥` is `∗`; returns it with the report of
/// the monoidality diagrams.
pub fn derive_monoidal_m(t: &GradedStrongMonad, k: usize) -> Result<(DuoidalGradedMonad, Report), RelaxError> {
    let p = t.grading();
    if let Some((a, b)) = p.grades().flat_map(|a| p.grades().map(move |b| (a, b))).find(|&(a, b)| !p.commutes(a, b)) {
        return Err(RelaxError::NotCommutative(format!("grading: {} and {} do not commute", p.name(a), p.name(b))));
    }
    let comm = check_commutative(t, k);
    if let Some(f) = comm.failures.first() {
        return Err(RelaxError::NotCommutative(format!("grades ({}) at {}", f.grades.join(","), f.witness)));
    }
    let tm = t.clone();
    let m: MFn = Arc::new(move |a, b, x, y, u, v| tm.left_first(a, b, x, y, u, v));
    let dm = DuoidalGradedMonad { monad: t.clone(), duoid: Duoid::degenerate(p), m };
    let report = check_duoidal_gradation(&dm, k);
    Ok((dm, report))
}

/// Elements of `T^a X` whose two composites agree with every partner after
/// both are lifted to `a ⊛ b`.
pub fn bimonoidal_centre_at(
    t: &GradedStrongMonad,
    bm: &Bimonoid,
    a: Grade,
    x: &FinSet,
    bound: Bound,
) -> Result<CentralCone, RelaxError> {
    if bm.base() != t.grading() {
        return Err(RelaxError::BimonoidMismatch);
    }
    let p = t.grading();
    let carrier = t.carrier(a, x)?;
    let central = |tv: &Value| {
        p.grades().all(|b| {
            let top = bm.op2(a, b);
            canonical_sets(bound.for_grade(t, b)).iter().all(|y| {
                let xy = product(x, y);
                let Ok(tby) = t.carrier(b, y) else { return false };
                tby.iter().all(|s| {
                    let l = t.left_first(a, b, x, y, tv, s).and_then(|v| t.lift(p.mul(a, b), top, &xy, &v));
                    let r = t.right_first(a, b, x, y, tv, s).and_then(|v| t.lift(p.mul(b, a), top, &xy, &v));
                    matches!((l, r), (Ok(l), Ok(r)) if l == r)
                })
            })
        })
    };
    let apex = carrier.filter(format!("B^{}{}", p.name(a), x.name()), central);
    let leg = FinFn::new(apex.clone(), carrier, apex.elems().to_vec()).map_err(|e| EvalError::Other(e.to_string()))?;
    Ok(CentralCone { grade: a, base: x.clone(), apex, leg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pomonoid::check_duoid;

    fn lang(ab: &str, cap: usize, s: &str) -> CappedLanguage {
        CappedLanguage::parse(ab, cap, s).unwrap()
    }

    #[test]
    fn literals_round_trip() {
        for s in ["{}", "{_}", "{a,ab,ba}", "{_,b}"] {
            assert_eq!(lang("ab", 3, s).to_string(), s);
        }
        assert!(CappedLanguage::parse("ab", 3, "{c}").is_err());
        assert!(CappedLanguage::parse("ab", 1, "{ab}").is_err());
        assert!(CappedLanguage::parse("ab", 3, "a").is_err());
    }

    #[test]
    fn concat_and_shuffle() {
        assert_eq!(lang("ab", 3, "{a}").concat(&lang("ab", 3, "{b}")).unwrap().to_string(), "{ab}");
        assert_eq!(lang("abc", 3, "{ab}").shuffle(&lang("abc", 3, "{c}")).unwrap().to_string(), "{abc,acb,cab}");
        assert_eq!(lang("ab", 2, "{ab}").shuffle(&lang("ab", 2, "{a}")).unwrap().to_string(), "{}");
    }

    #[test]
    fn epsilon_is_a_unit_for_both() {
        let e = CappedLanguage::epsilon("ab", 3);
        let l = lang("ab", 3, "{a,ab}");
        assert_eq!(e.concat(&l).unwrap(), l);
        assert_eq!(l.concat(&e).unwrap(), l);
        assert_eq!(e.shuffle(&l).unwrap(), l);
    }

    #[test]
    fn mismatched_alphabets() {
        let r = lang("ab", 3, "{a}").concat(&lang("a", 3, "{a}"));
        assert!(matches!(r, Err(RelaxError::AlphabetMismatch(..))));
    }

    #[test]
    fn closure_sizes() {
        let d = language_duoid_from_literals("ab", 3, &["{a}", "{b}"], DEFAULT_BUDGET).unwrap();
        assert_eq!(d.languages.len(), 23);
        assert!(check_duoid(&d.duoid).passed());
        let d = language_duoid_from_literals("a", 2, &["{a}"], DEFAULT_BUDGET).unwrap();
        assert_eq!(d.languages.len(), 4);
        let d = language_duoid_from_literals("ab", 3, &["{_}"], DEFAULT_BUDGET).unwrap();
        assert_eq!(d.languages.len(), 1);
        assert!(matches!(
            language_duoid_from_literals("ab", 3, &["{a}", "{b}"], 5),
            Err(RelaxError::ClosureExplosion(5))
        ));
        assert!(matches!(language_duoid("ab", 3, &[], 10), Err(RelaxError::EmptyGenerators)));
    }

    #[test]
    fn interchange_instance() {
        let (a, b, e) = (lang("ab", 3, "{a}"), lang("ab", 3, "{b}"), CappedLanguage::epsilon("ab", 3));
        let l = a.shuffle(&b).unwrap().concat(&e.shuffle(&e).unwrap()).unwrap();
        let r = a.concat(&e).unwrap().shuffle(&b.concat(&e).unwrap()).unwrap();
        assert!(l.is_subset_of(&r));
    }

    #[test]
    fn writer_m_shuffles_tags() {
        let d = language_duoid_from_literals("ab", 2, &["{a}", "{b}"], DEFAULT_BUDGET).unwrap();
        let w = build_language_writer(&d);
        let (ga, gb) = (d.grade_of(&lang("ab", 2, "{a}")).unwrap(), d.grade_of(&lang("ab", 2, "{b}")).unwrap());
        let x = FinSet::canonical(1);
        let t = Value::parse("(x:y0,c:{a})").unwrap();
        let s = Value::parse("(x:y0,c:{b})").unwrap();
        let out = (w.m)(ga, gb, &x, &x, &t, &s).unwrap();
        assert_eq!(out.to_string(), "(x:(y0,y0),c:{ab,ba})");
        let eta = w.monad.eta(&x, &Value::atom("y0")).unwrap();
        assert_eq!(eta.to_string(), "(x:y0,c:{_})");
    }

    #[test]
    fn one_letter_writer_is_duoidal() {
        let d = language_duoid_from_literals("a", 2, &["{a}"], DEFAULT_BUDGET).unwrap();
        let r = check_duoidal_gradation(&build_language_writer(&d), 2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn swapped_m_fails_unitor() {
        let d = language_duoid_from_literals("a", 2, &["{a}"], DEFAULT_BUDGET).unwrap();
        let w = build_language_writer(&d);
        let orig = w.m.clone();
        let w = w.with_m(move |a, b, x, y, t, s| {
            let v = orig(a, b, x, y, t, s)?;
            let (xy, tag) = v.as_pair()?;
            Ok(Value::pair(Value::var(mon::swap(xy.as_var()?)?), tag.clone()))
        });
        let r = check_duoidal_gradation(&w, 1);
        assert!(r.tally("m-unit-left").unwrap().failed > 0);
    }

    #[test]
    fn tuples_are_exhaustive_or_sampled() {
        assert_eq!(grade_tuples(4, 4).len(), 256);
        let s = grade_tuples(23, 4);
        let small = EXHAUSTIVE_GRADES.pow(4);
        assert!(s.len() <= small + SAMPLED_TUPLES && s.len() > small + 1000);
        assert!(s[..small].iter().all(|t| t.iter().all(|g| g.0 < EXHAUSTIVE_GRADES)));
        let mut dedup = s.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), s.len());
    }
}
