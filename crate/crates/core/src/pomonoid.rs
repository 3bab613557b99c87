//! Finite partially ordered monoids, their morphisms and centres, and the
//! bimonoid / duoid extensions carrying a second, commutative product.
//!
//! Text format (line oriented, `#` starts a comment):
//!
//! ```text
//! elements t e wa wb
//! unit t
//! mul t wa wa          # one line per ordered pair: a * b = c
//! le t e               # order generators; closed reflexively/transitively
//! op2 wa wb e          # bimonoid / duoid files only
//! unit2 t
//! ```

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::finkit::is_valid_token;
use crate::report::{instance, Report};

/// Index of an element of a pomonoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PomonoidError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("invalid element name {0:?}")]
    InvalidName(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("missing table entry {0} * {1}")]
    MissingTableEntry(String, String),
    #[error("conflicting table entries for {0} * {1}")]
    ConflictingEntry(String, String),
    #[error("associativity fails at ({0}, {1}, {2})")]
    AssociativityViolation(String, String, String),
    #[error("{0} is not neutral for the unit")]
    UnitViolation(String),
    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    AntisymmetryViolation(String, String),
    #[error("multiplication is not monotone: {0} <= {1}, {2} <= {3}")]
    MonotonicityViolation(String, String, String, String),
    #[error("the structure has no second operation")]
    MissingSecondOperation,
    #[error("morphism does not map element {0}")]
    UnmappedElement(String),
    #[error("{0} is not absorbing")]
    NotAbsorbing(String),
    #[error("{0} is not the maximum of the order")]
    NotTop(String),
}

/// Unvalidated pomonoid description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPomonoid {
    pub elements: Vec<String>,
    pub unit: String,
    pub mul: Vec<(String, String, String)>,
    pub le: Vec<(String, String)>,
}

/// A raw pomonoid together with an optional second product (`op2`/`unit2`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawStructure {
    pub base: RawPomonoid,
    pub op2: Vec<(String, String, String)>,
    pub unit2: Option<String>,
}

pub fn parse_structure(text: &str) -> Result<RawStructure, PomonoidError> {
    let mut out = RawStructure::default();
    let mut saw_elements = false;
    let mut saw_unit = false;
    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        let content = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = words.split_first() else { continue };
        let err = |message: String| PomonoidError::Parse { line: line_no, message };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!("`{head}` takes {n} argument(s), got {}", args.len())))
            }
        };
        match head {
            "elements" => {
                if saw_elements {
                    return Err(err("`elements` given twice".into()));
                }
                saw_elements = true;
                out.base.elements = args.iter().map(|s| s.to_string()).collect();
            }
            "unit" => {
                arity(1)?;
                if saw_unit {
                    return Err(err("`unit` given twice".into()));
                }
                saw_unit = true;
                out.base.unit = args[0].to_string();
            }
            "mul" => {
                arity(3)?;
                out.base.mul.push((args[0].into(), args[1].into(), args[2].into()));
            }
            "le" => {
                arity(2)?;
                out.base.le.push((args[0].into(), args[1].into()));
            }
            "op2" => {
                arity(3)?;
                out.op2.push((args[0].into(), args[1].into(), args[2].into()));
            }
            "unit2" => {
                arity(1)?;
                if out.unit2.is_some() {
                    return Err(err("`unit2` given twice".into()));
                }
                out.unit2 = Some(args[0].to_string());
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if !saw_elements {
        return Err(PomonoidError::Parse { line: 0, message: "missing `elements` line".into() });
    }
    if !saw_unit {
        return Err(PomonoidError::Parse { line: 0, message: "missing `unit` line".into() });
    }
    Ok(out)
}

/// Parses and validates a pomonoid file; second-product lines are ignored.
pub fn parse_pomonoid(text: &str) -> Result<Pomonoid, PomonoidError> {
    validate_pomonoid(&parse_structure(text)?.base)
}

/// A validated finite pomonoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pomonoid {
    names: Vec<String>,
    index: HashMap<String, usize>,
    unit: usize,
    table: Vec<usize>,
    leq: Vec<bool>,
}

fn build_table(
    names: &[String],
    index: &HashMap<String, usize>,
    entries: &[(String, String, String)],
) -> Result<Vec<usize>, PomonoidError> {
    let n = names.len();
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| PomonoidError::UnknownElement(s.to_string()));
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for (a, b, c) in entries {
        let (ia, ib, ic) = (lookup(a)?, lookup(b)?, lookup(c)?);
        match table[ia * n + ib] {
            Some(prev) if prev != ic => return Err(PomonoidError::ConflictingEntry(a.clone(), b.clone())),
            _ => table[ia * n + ib] = Some(ic),
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            match table[a * n + b] {
                Some(c) => out.push(c),
                None => return Err(PomonoidError::MissingTableEntry(names[a].clone(), names[b].clone())),
            }
        }
    }
    Ok(out)
}

/// Validates a raw description: total table, unit, associativity, partial
/// order (after closure) and monotonicity, each checked exhaustively.
pub fn validate_pomonoid(raw: &RawPomonoid) -> Result<Pomonoid, PomonoidError> {
    let names = raw.elements.clone();
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if !is_valid_token(name) {
            return Err(PomonoidError::InvalidName(name.clone()));
        }
        if index.insert(name.clone(), i).is_some() {
            return Err(PomonoidError::DuplicateElement(name.clone()));
        }
    }
    let n = names.len();
    let unit = *index.get(&raw.unit).ok_or_else(|| PomonoidError::UnknownElement(raw.unit.clone()))?;
    let table = build_table(&names, &index, &raw.mul)?;
    let mul = |a: usize, b: usize| table[a * n + b];

    for (a, name) in names.iter().enumerate() {
        if mul(unit, a) != a || mul(a, unit) != a {
            return Err(PomonoidError::UnitViolation(name.clone()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(PomonoidError::AssociativityViolation(
                        names[a].clone(),
                        names[b].clone(),
                        names[c].clone(),
                    ));
                }
            }
        }
    }

    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (a, b) in &raw.le {
        let ia = *index.get(a).ok_or_else(|| PomonoidError::UnknownElement(a.clone()))?;
        let ib = *index.get(b).ok_or_else(|| PomonoidError::UnknownElement(b.clone()))?;
        leq[ia * n + ib] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if leq[a * n + b] && leq[b * n + a] {
                return Err(PomonoidError::AntisymmetryViolation(names[a].clone(), names[b].clone()));
            }
        }
    }
    for w in 0..n {
        for x in 0..n {
            if !leq[w * n + x] {
                continue;
            }
            for y in 0..n {
                for z in 0..n {
                    if leq[y * n + z] && !leq[mul(w, y) * n + mul(x, z)] {
                        return Err(PomonoidError::MonotonicityViolation(
                            names[w].clone(),
                            names[x].clone(),
                            names[y].clone(),
                            names[z].clone(),
                        ));
                    }
                }
            }
        }
    }
    Ok(Pomonoid { names, index, unit, table, leq })
}

impl Pomonoid {
    /// Builds and validates from a multiplication function on indices.
    pub fn from_fn<S: AsRef<str>>(
        names: &[S],
        unit: usize,
        mul: impl Fn(usize, usize) -> usize,
        le: &[(usize, usize)],
    ) -> Result<Pomonoid, PomonoidError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        let mut raw = RawPomonoid {
            elements: names.clone(),
            unit: names.get(unit).cloned().unwrap_or_default(),
            ..RawPomonoid::default()
        };
        for a in 0..n {
            for b in 0..n {
                raw.mul.push((names[a].clone(), names[b].clone(), names[mul(a, b)].clone()));
            }
        }
        raw.le = le.iter().map(|&(a, b)| (names[a].clone(), names[b].clone())).collect();
        validate_pomonoid(&raw)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn grades(&self) -> impl Iterator<Item = Grade> + Clone {
        (0..self.names.len()).map(Grade)
    }

    pub fn unit(&self) -> Grade {
        Grade(self.unit)
    }

    pub fn mul(&self, a: Grade, b: Grade) -> Grade {
        Grade(self.table[a.0 * self.names.len() + b.0])
    }

    pub fn leq(&self, a: Grade, b: Grade) -> bool {
        self.leq[a.0 * self.names.len() + b.0]
    }

    pub fn name(&self, g: Grade) -> &str {
        &self.names[g.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grade(&self, name: &str) -> Option<Grade> {
        self.index.get(name).copied().map(Grade)
    }

    pub fn commutes(&self, a: Grade, b: Grade) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_central(&self, z: Grade) -> bool {
        self.grades().all(|b| self.commutes(z, b))
    }

    pub fn is_commutative(&self) -> bool {
        self.grades().all(|a| self.is_central(a))
    }

    /// All comparable pairs `a ≤ b`, including the diagonal.
    pub fn order_pairs(&self) -> Vec<(Grade, Grade)> {
        let mut out = Vec::new();
        for a in self.grades() {
            for b in self.grades() {
                if self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn has_nontrivial_order(&self) -> bool {
        self.order_pairs().iter().any(|(a, b)| a != b)
    }

    /// The same monoid with the discrete order.
    pub fn discrete(&self) -> Pomonoid {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Pomonoid { leq, ..self.clone() }
    }

    /// Covering-free generator list (every strict pair) for serialization.
    pub fn to_text(&self) -> String {
        let mut out = format!("elements {}\nunit {}\n", self.names.join(" "), self.name(self.unit()));
        for a in self.grades() {
            for b in self.grades() {
                out.push_str(&format!("mul {} {} {}\n", self.name(a), self.name(b), self.name(self.mul(a, b))));
            }
        }
        for (a, b) in self.order_pairs() {
            if a != b {
                out.push_str(&format!("le {} {}\n", self.name(a), self.name(b)));
            }
        }
        out
    }

    /// Sub-pomonoid on the given elements (must be closed and contain the
    /// unit), with the restricted order, plus the inclusion.
    fn restrict(&self, keep: &[Grade]) -> (Pomonoid, Vec<Grade>) {
        let names: Vec<String> = keep.iter().map(|g| self.names[g.0].clone()).collect();
        let pos = |g: Grade| keep.iter().position(|k| *k == g).expect("sub-carrier closed under *");
        let n = keep.len();
        let mut table = Vec::with_capacity(n * n);
        let mut leq = Vec::with_capacity(n * n);
        for &a in keep {
            for &b in keep {
                table.push(pos(self.mul(a, b)));
                leq.push(self.leq(a, b));
            }
        }
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let sub = Pomonoid { names, index, unit: pos(self.unit()), table, leq };
        (sub, keep.to_vec())
    }
}

impl fmt::Display for Pomonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

/// A monotone lax map between pomonoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PomonoidMorphism {
    pub source: Pomonoid,
    pub target: Pomonoid,
    map: Vec<Grade>,
}

impl PomonoidMorphism {
    pub fn new(source: Pomonoid, target: Pomonoid, map: &[(&str, &str)]) -> Result<Self, PomonoidError> {
        let mut images = vec![None; source.len()];
        for (a, b) in map {
            let ia = source.grade(a).ok_or_else(|| PomonoidError::UnknownElement(a.to_string()))?;
            let ib = target.grade(b).ok_or_else(|| PomonoidError::UnknownElement(b.to_string()))?;
            images[ia.0] = Some(ib);
        }
        let map = images
            .into_iter()
            .enumerate()
            .map(|(i, g)| g.ok_or_else(|| PomonoidError::UnmappedElement(source.names[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PomonoidMorphism { source, target, map })
    }

    pub fn from_grades(source: Pomonoid, target: Pomonoid, map: Vec<Grade>) -> Result<Self, PomonoidError> {
        if map.len() != source.len() {
            let missing = source.names.get(map.len()).cloned().unwrap_or_default();
            return Err(PomonoidError::UnmappedElement(missing));
        }
        Ok(PomonoidMorphism { source, target, map })
    }

    pub fn identity(p: &Pomonoid) -> PomonoidMorphism {
        PomonoidMorphism { source: p.clone(), target: p.clone(), map: p.grades().collect() }
    }

    pub fn apply(&self, g: Grade) -> Grade {
        self.map[g.0]
    }

    pub fn map(&self) -> &[Grade] {
        &self.map
    }
}

/// `e ⊑ φ(i)`, `φx ⊛ φy ⊑ φ(x∗y)` and monotonicity, with witnesses.
pub fn check_pomonoid_morphism(phi: &PomonoidMorphism) -> Report {
    let (s, t) = (&phi.source, &phi.target);
    let mut r = Report::new(format!("pomonoid morphism {} -> {}", s, t));
    let i = s.unit();
    r.check("unit", t.leq(t.unit(), phi.apply(i)), || {
        instance("unit", &[s.name(i)], &[], "(i)", t.name(t.unit()), t.name(phi.apply(i)))
    });
    for x in s.grades() {
        for y in s.grades() {
            let lhs = t.mul(phi.apply(x), phi.apply(y));
            let rhs = phi.apply(s.mul(x, y));
            r.check("multiplicative", t.leq(lhs, rhs), || {
                instance("multiplicative", &[s.name(x), s.name(y)], &[], format!("({},{})", s.name(x), s.name(y)), t.name(lhs), t.name(rhs))
            });
            if s.leq(x, y) {
                let (fx, fy) = (phi.apply(x), phi.apply(y));
                r.check("monotone", t.leq(fx, fy), || {
                    instance("monotone", &[s.name(x), s.name(y)], &[], format!("({},{})", s.name(x), s.name(y)), t.name(fx), t.name(fy))
                });
            }
        }
    }
    r
}

/// `Z(P) = {z | ∀b. z∗b = b∗z}` with the restricted table and order, and
/// the inclusion morphism into `P`.
pub fn centre_of_pomonoid(p: &Pomonoid) -> (Pomonoid, PomonoidMorphism) {
    let keep: Vec<Grade> = p.grades().filter(|&z| p.is_central(z)).collect();
    let (sub, incl) = p.restrict(&keep);
    let phi = PomonoidMorphism { source: sub.clone(), target: p.clone(), map: incl };
    (sub, phi)
}

/// A pomonoid with a second, commutative multiplication on the same carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondProduct {
    pub base: Pomonoid,
    table: Vec<usize>,
    unit: usize,
}

impl SecondProduct {
    pub fn from_raw(raw: &RawStructure) -> Result<SecondProduct, PomonoidError> {
        let base = validate_pomonoid(&raw.base)?;
        let unit_name = raw.unit2.as_ref().ok_or(PomonoidError::MissingSecondOperation)?;
        if raw.op2.is_empty() {
            return Err(PomonoidError::MissingSecondOperation);
        }
        let unit = base.grade(unit_name).ok_or_else(|| PomonoidError::UnknownElement(unit_name.clone()))?.0;
        let table = build_table(&base.names, &base.index, &raw.op2)?;
        Ok(SecondProduct { base, table, unit })
    }

    pub fn from_fn(base: Pomonoid, unit: Grade, op: impl Fn(Grade, Grade) -> Grade) -> SecondProduct {
        let mut table = Vec::with_capacity(base.len() * base.len());
        for a in base.grades() {
            for b in base.grades() {
                table.push(op(a, b).0);
            }
        }
        SecondProduct { base, table, unit: unit.0 }
    }

    pub fn op(&self, a: Grade, b: Grade) -> Grade {
        Grade(self.table[a.0 * self.base.len() + b.0])
    }

    pub fn unit(&self) -> Grade {
        Grade(self.unit)
    }

    pub fn to_text(&self) -> String {
        let p = &self.base;
        let mut out = p.to_text();
        for a in p.grades() {
            for b in p.grades() {
                out.push_str(&format!("op2 {} {} {}\n", p.name(a), p.name(b), p.name(self.op(a, b))));
            }
        }
        out.push_str(&format!("unit2 {}\n", p.name(self.unit())));
        out
    }

    /// Commutative monoid laws and monotonicity of the second product.
    fn check_commutative_monoid(&self, r: &mut Report, sym: &str) {
        let p = &self.base;
        let n = |g: Grade| p.name(g).to_string();
        for a in p.grades() {
            let (l, rr) = (self.op(self.unit(), a), self.op(a, self.unit()));
            r.check(&format!("{sym}-unit"), l == a && rr == a, || {
                instance(&format!("{sym}-unit"), &[&n(a)], &[], n(a), n(l), n(rr))
            });
            for b in p.grades() {
                let (ab, ba) = (self.op(a, b), self.op(b, a));
                r.check(&format!("{sym}-commutative"), ab == ba, || {
                    instance(&format!("{sym}-commutative"), &[&n(a), &n(b)], &[], format!("({},{})", n(a), n(b)), n(ab), n(ba))
                });
                for c in p.grades() {
                    let (l, rr) = (self.op(self.op(a, b), c), self.op(a, self.op(b, c)));
                    r.check(&format!("{sym}-associative"), l == rr, || {
                        instance(&format!("{sym}-associative"), &[&n(a), &n(b), &n(c)], &[], format!("({},{},{})", n(a), n(b), n(c)), n(l), n(rr))
                    });
                }
            }
        }
        for (w, x) in p.order_pairs() {
            for (y, z) in p.order_pairs() {
                let (l, rr) = (self.op(w, y), self.op(x, z));
                r.check(&format!("{sym}-monotone"), p.leq(l, rr), || {
                    instance(&format!("{sym}-monotone"), &[&n(w), &n(x), &n(y), &n(z)], &[], format!("({},{},{},{})", n(w), n(x), n(y), n(z)), n(l), n(rr))
                });
            }
        }
    }

    /// `a∗b ≤ a ○ b` for every pair.
    fn check_over_approximation(&self, r: &mut Report, law: &str) {
        let p = &self.base;
        for a in p.grades() {
            for b in p.grades() {
                let (l, rr) = (p.mul(a, b), self.op(a, b));
                r.check(law, p.leq(l, rr), || {
                    instance(law, &[p.name(a), p.name(b)], &[], format!("({},{})", p.name(a), p.name(b)), p.name(l), p.name(rr))
                });
            }
        }
    }
}

/// Pomonoid with a commutative `⊛` over-approximating `∗`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimonoid(pub SecondProduct);

/// Pomonoid with a commutative `∥` satisfying the interchange inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Duoid(pub SecondProduct);

impl Bimonoid {
    pub fn base(&self) -> &Pomonoid {
        &self.0.base
    }

    pub fn op2(&self, a: Grade, b: Grade) -> Grade {
        self.0.op(a, b)
    }
}

impl Duoid {
    pub fn base(&self) -> &Pomonoid {
        &self.0.base
    }

    pub fn par(&self, a: Grade, b: Grade) -> Grade {
        self.0.op(a, b)
    }

    pub fn par_unit(&self) -> Grade {
        self.0.unit()
    }

    /// The duoid whose parallel product is `∗` itself (needs `∗` commutative
    /// for [`check_duoid`] to pass).
    pub fn degenerate(p: &Pomonoid) -> Duoid {
        Duoid(SecondProduct::from_fn(p.clone(), p.unit(), |a, b| p.mul(a, b)))
    }
}

pub fn check_bimonoid(b: &Bimonoid) -> Report {
    let mut r = Report::new(format!("bimonoid {}", b.base()));
    b.0.check_commutative_monoid(&mut r, "op2");
    b.0.check_over_approximation(&mut r, "delta");
    r
}

pub fn check_duoid(d: &Duoid) -> Report {
    let p = d.base();
    let mut r = Report::new(format!("duoid {}", p));
    d.0.check_commutative_monoid(&mut r, "par");
    let n = |g: Grade| p.name(g).to_string();
    for a in p.grades() {
        for b in p.grades() {
            for c in p.grades() {
                for e in p.grades() {
                    let l = p.mul(d.par(a, c), d.par(b, e));
                    let rr = d.par(p.mul(a, b), p.mul(c, e));
                    r.check("interchange", p.leq(l, rr), || {
                        instance("interchange", &[&n(a), &n(b), &n(c), &n(e)], &[], format!("({},{},{},{})", n(a), n(b), n(c), n(e)), n(l), n(rr))
                    });
                }
            }
        }
    }
    d.0.check_over_approximation(&mut r, "seq-below-par");
    r
}

/// `a ⊛ b = a∗b` when both are central (or either is the unit), `⊤` otherwise.
///
/// Unit arguments are passed through so that `i` stays neutral for `⊛`;
/// sending `i ⊛ a` to `⊤` for a non-central `a` breaks the unit law.
pub fn bimonoid_from_absorbing_top(p: &Pomonoid, top: &str) -> Result<Bimonoid, PomonoidError> {
    let t = p.grade(top).ok_or_else(|| PomonoidError::UnknownElement(top.to_string()))?;
    if p.grades().any(|x| p.mul(t, x) != t || p.mul(x, t) != t) {
        return Err(PomonoidError::NotAbsorbing(top.to_string()));
    }
    if p.grades().any(|x| !p.leq(x, t)) {
        return Err(PomonoidError::NotTop(top.to_string()));
    }
    let i = p.unit();
    let op = |a: Grade, b: Grade| {
        if a == i || b == i || (p.is_central(a) && p.is_central(b)) {
            p.mul(a, b)
        } else {
            t
        }
    };
    Ok(Bimonoid(SecondProduct::from_fn(p.clone(), i, op)))
}

/// The literal rule without the unit pass-through; kept to document why the
/// pass-through is needed.
pub fn absorbing_top_literal(p: &Pomonoid, top: Grade) -> Bimonoid {
    let op = |a: Grade, b: Grade| if p.is_central(a) && p.is_central(b) { p.mul(a, b) } else { top };
    Bimonoid(SecondProduct::from_fn(p.clone(), p.unit(), op))
}

/// The multi-error grading `{t, e, wa, wb}`: `t` neutral, `e` absorbing, and
/// a product of two warnings keeps the right-hand one.
pub fn multi_error_raw() -> RawPomonoid {
    let names = ["t", "e", "wa", "wb"];
    fn mul<'s>(a: &'s str, b: &'s str) -> &'s str {
        match (a, b) {
            ("t", x) | (x, "t") => x,
            ("e", _) | (_, "e") => "e",
            (_, w) => w,
        }
    }
    let mut raw = RawPomonoid {
        elements: names.iter().map(|s| s.to_string()).collect(),
        unit: "t".into(),
        ..RawPomonoid::default()
    };
    for a in names {
        for b in names {
            raw.mul.push((a.into(), b.into(), mul(a, b).into()));
        }
    }
    raw
}

pub fn multi_error() -> Pomonoid {
    validate_pomonoid(&multi_error_raw()).expect("multi-error table is a monoid")
}

/// Multi-error grading ordered with the error `e` as absorbing top.
pub fn multi_error_with_top() -> Pomonoid {
    let mut raw = multi_error_raw();
    raw.le = ["t", "wa", "wb"].iter().map(|a| (a.to_string(), "e".to_string())).collect();
    validate_pomonoid(&raw).expect("top order is monotone")
}

/// `((Bool, tt ≤ ff), tt, ∧)` where `tt` is "central so far".
pub fn bool_and() -> Pomonoid {
    Pomonoid::from_fn(&["tt", "ff"], 0, |a, b| a.max(b), &[(0, 1)]).expect("bool pomonoid")
}

pub fn trivial() -> Pomonoid {
    Pomonoid::from_fn(&["i"], 0, |_, _| 0, &[]).expect("trivial pomonoid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_error_is_valid_and_centre_is_t_e() {
        let p = multi_error();
        let (z, incl) = centre_of_pomonoid(&p);
        assert_eq!(z.names(), &["t", "e"]);
        assert!(check_pomonoid_morphism(&incl).passed());
    }

    #[test]
    fn singleton_is_valid() {
        let p = trivial();
        assert_eq!(p.len(), 1);
        assert!(p.is_commutative());
    }

    #[test]
    fn broken_warning_product_is_not_associative() {
        let mut raw = multi_error_raw();
        for entry in raw.mul.iter_mut() {
            if entry.0 == "wa" && entry.1 == "wb" {
                entry.2 = "e".into();
            }
        }
        assert!(matches!(validate_pomonoid(&raw), Err(PomonoidError::AssociativityViolation(..))));
    }

    #[test]
    fn left_zero_with_unit_has_trivial_centre() {
        // a*x = a, b*x = b for x != 1
        let p = Pomonoid::from_fn(&["1", "a", "b"], 0, |x, y| if x == 0 { y } else { x }, &[]).unwrap();
        let (z, _) = centre_of_pomonoid(&p);
        assert_eq!(z.names(), &["1"]);
    }

    #[test]
    fn commutative_centre_is_whole() {
        let p = bool_and();
        let (z, _) = centre_of_pomonoid(&p);
        assert_eq!(z, p);
    }

    #[test]
    fn validation_errors() {
        let mut raw = multi_error_raw();
        raw.elements.push("t".into());
        assert!(matches!(validate_pomonoid(&raw), Err(PomonoidError::DuplicateElement(_))));

        let mut raw = multi_error_raw();
        raw.mul.pop();
        assert!(matches!(validate_pomonoid(&raw), Err(PomonoidError::MissingTableEntry(..))));

        let mut raw = multi_error_raw();
        raw.unit = "e".into();
        assert!(matches!(validate_pomonoid(&raw), Err(PomonoidError::UnitViolation(_))));

        let mut raw = multi_error_raw();
        raw.le = vec![("wa".into(), "wb".into()), ("wb".into(), "wa".into())];
        assert!(matches!(validate_pomonoid(&raw), Err(PomonoidError::AntisymmetryViolation(..))));

        // e <= t breaks monotonicity: e*wa = e but t*wa = wa, and e is not <= wa
        let mut raw = multi_error_raw();
        raw.le = vec![("e".into(), "t".into())];
        assert!(matches!(validate_pomonoid(&raw), Err(PomonoidError::MonotonicityViolation(..))));
    }

    #[test]
    fn text_round_trip() {
        let p = multi_error_with_top();
        let back = validate_pomonoid(&parse_structure(&p.to_text()).unwrap().base).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_structure("elements a\nunit a\nmul a a\n").unwrap_err();
        assert!(matches!(err, PomonoidError::Parse { line: 3, .. }));
        assert!(parse_structure("unit a\n").is_err());
        assert!(matches!(parse_structure("elements a\nunit a\nfoo\n"), Err(PomonoidError::Parse { line: 3, .. })));
    }

    #[test]
    fn constant_morphism_depends_on_order() {
        let all_e = [("t", "e"), ("e", "e"), ("wa", "e"), ("wb", "e")];
        let ok = PomonoidMorphism::new(multi_error(), multi_error_with_top(), &all_e).unwrap();
        assert!(check_pomonoid_morphism(&ok).passed());
        let bad = PomonoidMorphism::new(multi_error(), multi_error(), &all_e).unwrap();
        let report = check_pomonoid_morphism(&bad);
        assert!(!report.passed());
        let w = report.failures_of("unit").next().unwrap();
        assert_eq!(w.witness, "(i)");
        assert_eq!(report.tally("multiplicative").unwrap().failed, 0);
    }

    #[test]
    fn unmapped_element_is_an_error() {
        let err = PomonoidMorphism::new(multi_error(), multi_error(), &[("t", "t")]).unwrap_err();
        assert!(matches!(err, PomonoidError::UnmappedElement(_)));
    }

    #[test]
    fn identity_morphism_passes() {
        for p in [multi_error(), multi_error_with_top(), bool_and(), trivial()] {
            assert!(check_pomonoid_morphism(&PomonoidMorphism::identity(&p)).passed());
        }
    }

    #[test]
    fn absorbing_top_bimonoid() {
        let p = multi_error_with_top();
        let b = bimonoid_from_absorbing_top(&p, "e").unwrap();
        assert!(check_bimonoid(&b).passed(), "{}", check_bimonoid(&b));
        let g = |s| p.grade(s).unwrap();
        assert_eq!(b.op2(g("wa"), g("wb")), g("e"));
        assert_eq!(b.op2(g("wb"), g("wa")), g("e"));
        assert_eq!(b.op2(g("t"), g("wa")), g("wa"));
        // literal rule: t ⊛ wa = e, so t is not neutral
        let literal = absorbing_top_literal(&p, g("e"));
        let r = check_bimonoid(&literal);
        assert!(r.tally("op2-unit").unwrap().failed > 0);
    }

    #[test]
    fn absorbing_top_preconditions() {
        assert!(matches!(bimonoid_from_absorbing_top(&multi_error_with_top(), "wa"), Err(PomonoidError::NotAbsorbing(_))));
        assert!(matches!(bimonoid_from_absorbing_top(&multi_error(), "e"), Err(PomonoidError::NotTop(_))));
    }

    #[test]
    fn commutative_second_product_equal_to_first() {
        let p = bool_and();
        let b = Bimonoid(SecondProduct::from_fn(p.clone(), p.unit(), |a, b| p.mul(a, b)));
        assert!(check_bimonoid(&b).passed());
        assert!(check_duoid(&Duoid::degenerate(&p)).passed());
    }

    #[test]
    fn noncommutative_parallel_fails() {
        let d = Duoid::degenerate(&multi_error());
        let r = check_duoid(&d);
        assert!(r.tally("par-commutative").unwrap().failed > 0);
    }

    #[test]
    fn second_product_from_text() {
        let p = bool_and();
        let b = Bimonoid(SecondProduct::from_fn(p.clone(), p.unit(), |a, b| p.mul(a, b)));
        let raw = parse_structure(&b.0.to_text()).unwrap();
        assert_eq!(SecondProduct::from_raw(&raw).unwrap(), b.0);
        assert!(matches!(
            SecondProduct::from_raw(&parse_structure(&p.to_text()).unwrap()),
            Err(PomonoidError::MissingSecondOperation)
        ));
    }
}
