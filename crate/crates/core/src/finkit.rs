//! Finite sets, finite functions, the cartesian monoidal structure on them,
//! and polynomial endofunctors with a canonical element encoding.
//!
//! Every value that flows through the workbench is a [`Value`]: a base-set
//! token, a functor leaf, a pair, or a sum injection. The textual encoding
//! produced by `Display` is injective and parses back with [`Value::parse`]:
//!
//! ```text
//! y0            base-set element (atom)
//! x:<v>         Id leaf holding an element of the argument set
//! c:<tok>       Const leaf
//! (<l>,<r>)     pair (product functor, or an element of X ⊗ Y)
//! inl:<v>       left injection
//! inr:<v>       right injection
//! ```

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Token of the monoidal unit `I = {*}`.
pub const UNIT_TOKEN: &str = "*";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Atom(String),
    Var(Box<Value>),
    Const(String),
    Pair(Box<Value>, Box<Value>),
    Inl(Box<Value>),
    Inr(Box<Value>),
}

impl Value {
    pub fn atom(tok: impl Into<String>) -> Value {
        Value::Atom(tok.into())
    }

    pub fn var(v: Value) -> Value {
        Value::Var(Box::new(v))
    }

    pub fn konst(tok: impl Into<String>) -> Value {
        Value::Const(tok.into())
    }

    pub fn pair(l: Value, r: Value) -> Value {
        Value::Pair(Box::new(l), Box::new(r))
    }

    pub fn unit() -> Value {
        Value::Atom(UNIT_TOKEN.to_string())
    }

    pub fn as_pair(&self) -> Result<(&Value, &Value), EvalError> {
        match self {
            Value::Pair(l, r) => Ok((l, r)),
            other => Err(EvalError::shape("pair", other)),
        }
    }

    pub fn as_var(&self) -> Result<&Value, EvalError> {
        match self {
            Value::Var(v) => Ok(v),
            other => Err(EvalError::shape("x:<v>", other)),
        }
    }

    pub fn as_const(&self) -> Result<&str, EvalError> {
        match self {
            Value::Const(t) => Ok(t),
            other => Err(EvalError::shape("c:<tok>", other)),
        }
    }

    /// Rewrites every Id leaf with `f`, leaving the shape untouched.
    pub fn map_vars(&self, f: &dyn Fn(&Value) -> EvalResult) -> EvalResult {
        Ok(match self {
            Value::Var(v) => Value::var(f(v)?),
            Value::Pair(l, r) => Value::pair(l.map_vars(f)?, r.map_vars(f)?),
            Value::Inl(v) => Value::Inl(Box::new(v.map_vars(f)?)),
            Value::Inr(v) => Value::Inr(Box::new(v.map_vars(f)?)),
            leaf => leaf.clone(),
        })
    }

    /// Parses the canonical encoding.
    pub fn parse(text: &str) -> Result<Value, EncodingError> {
        let mut p = EncodingParser { src: text, pos: 0 };
        let v = p.value()?;
        if p.pos != text.len() {
            return Err(EncodingError { pos: p.pos, message: "trailing input".into() });
        }
        Ok(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(t) => write!(f, "{t}"),
            Value::Var(v) => write!(f, "x:{v}"),
            Value::Const(t) => write!(f, "c:{t}"),
            Value::Pair(l, r) => write!(f, "({l},{r})"),
            Value::Inl(v) => write!(f, "inl:{v}"),
            Value::Inr(v) => write!(f, "inr:{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad element encoding at byte {pos}: {message}")]
pub struct EncodingError {
    pub pos: usize,
    pub message: String,
}

struct EncodingParser<'a> {
    src: &'a str,
    pos: usize,
}

impl EncodingParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn err(&self, message: &str) -> EncodingError {
        EncodingError { pos: self.pos, message: message.to_string() }
    }

    fn value(&mut self) -> Result<Value, EncodingError> {
        let rest = self.rest();
        if rest.starts_with('(') {
            self.pos += 1;
            let l = self.value()?;
            if !self.rest().starts_with(',') {
                return Err(self.err("expected ','"));
            }
            self.pos += 1;
            let r = self.value()?;
            if !self.rest().starts_with(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            Ok(Value::pair(l, r))
        } else if rest.starts_with("x:") {
            self.pos += 2;
            Ok(Value::var(self.value()?))
        } else if rest.starts_with("c:") {
            self.pos += 2;
            Ok(Value::Const(self.token()?))
        } else if rest.starts_with("inl:") {
            self.pos += 4;
            Ok(Value::Inl(Box::new(self.value()?)))
        } else if rest.starts_with("inr:") {
            self.pos += 4;
            Ok(Value::Inr(Box::new(self.value()?)))
        } else {
            Ok(Value::Atom(self.token()?))
        }
    }

    /// A token runs until `,` or `)` outside braces; braces may nest.
    fn token(&mut self) -> Result<String, EncodingError> {
        let start = self.pos;
        let mut depth = 0usize;
        for (off, ch) in self.rest().char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => {
                    if depth == 0 {
                        return Err(EncodingError { pos: start + off, message: "unbalanced '}'".into() });
                    }
                    depth -= 1;
                }
                ',' | ')' if depth == 0 => {
                    self.pos = start + off;
                    return self.finish_token(start);
                }
                '(' | ':' if depth == 0 => {
                    return Err(EncodingError { pos: start + off, message: format!("unexpected '{ch}'") })
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(self.err("unterminated '{'"));
        }
        self.pos = self.src.len();
        self.finish_token(start)
    }

    fn finish_token(&self, start: usize) -> Result<String, EncodingError> {
        if self.pos == start {
            return Err(EncodingError { pos: start, message: "empty token".into() });
        }
        Ok(self.src[start..self.pos].to_string())
    }
}

/// True when `tok` can be used as an atom or Const token without breaking
/// the encoding.
pub fn is_valid_token(tok: &str) -> bool {
    if tok.is_empty() || tok.chars().any(char::is_whitespace) {
        return false;
    }
    if ["x:", "c:", "inl:", "inr:"].iter().any(|p| tok.starts_with(p)) {
        return false;
    }
    matches!(Value::parse(tok), Ok(Value::Atom(ref t)) if t == tok)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("expected {expected}, got {got}")]
    Shape { expected: String, got: String },
    #[error("component missing: {0}")]
    Missing(String),
    #[error("{0} is not in the domain")]
    NotInDomain(String),
    #[error("{component} left the central subset at {witness}")]
    CentralityViolation { component: String, witness: String },
    #[error("{0}")]
    Other(String),
}

impl EvalError {
    pub fn shape(expected: &str, got: &Value) -> EvalError {
        EvalError::Shape { expected: expected.to_string(), got: got.to_string() }
    }
}

pub type EvalResult = Result<Value, EvalError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinError {
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("function table has {got} entries for a domain of size {expected}")]
    NotTotal { expected: usize, got: usize },
    #[error("image {0} lies outside the codomain")]
    OutsideCodomain(String),
    #[error("functions do not compose: codomain and domain differ")]
    NotComposable,
}

struct FinSetInner {
    name: String,
    elems: Vec<Value>,
    index: HashMap<Value, usize>,
}

/// A finite set of values kept in canonical (sorted) order.
///
/// Cloning is cheap. Equality and hashing ignore the name.
#[derive(Clone)]
pub struct FinSet(Arc<FinSetInner>);

impl FinSet {
    pub fn new(name: impl Into<String>, elems: Vec<Value>) -> Result<FinSet, FinError> {
        let mut elems = elems;
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(FinError::DuplicateElement(w[0].to_string()));
            }
        }
        Ok(FinSet::from_sorted(name.into(), elems))
    }

    /// Builds a set of atoms from tokens.
    pub fn of_tokens<S: AsRef<str>>(name: impl Into<String>, toks: &[S]) -> Result<FinSet, FinError> {
        let mut elems = Vec::with_capacity(toks.len());
        for t in toks {
            let t = t.as_ref();
            if !is_valid_token(t) {
                return Err(FinError::InvalidToken(t.to_string()));
            }
            elems.push(Value::atom(t));
        }
        FinSet::new(name, elems)
    }

    /// Caller guarantees `elems` is sorted and duplicate free.
    fn from_sorted(name: String, elems: Vec<Value>) -> FinSet {
        let index = elems.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        FinSet(Arc::new(FinSetInner { name, elems, index }))
    }

    /// Deduplicates and sorts; used by enumerators that may repeat values.
    pub(crate) fn collect(name: String, mut elems: Vec<Value>) -> FinSet {
        elems.sort();
        elems.dedup();
        FinSet::from_sorted(name, elems)
    }

    /// The canonical test set `Y_n = {y0, …, y(n-1)}`.
    pub fn canonical(n: usize) -> FinSet {
        let elems = (0..n).map(|i| Value::atom(format!("y{i}"))).collect();
        FinSet::collect(format!("Y{n}"), elems)
    }

    /// The monoidal unit `{*}`.
    pub fn unit() -> FinSet {
        FinSet::from_sorted("I".into(), vec![Value::unit()])
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn elems(&self) -> &[Value] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.0.index.contains_key(v)
    }

    pub fn position(&self, v: &Value) -> Option<usize> {
        self.0.index.get(v).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Value> {
        self.0.elems.iter()
    }

    pub fn renamed(&self, name: impl Into<String>) -> FinSet {
        FinSet::from_sorted(name.into(), self.0.elems.clone())
    }

    /// Subset of the elements satisfying `keep`, in the same order.
    pub fn filter(&self, name: impl Into<String>, keep: impl Fn(&Value) -> bool) -> FinSet {
        let elems = self.0.elems.iter().filter(|v| keep(v)).cloned().collect();
        FinSet::from_sorted(name.into(), elems)
    }

    pub fn is_subset_of(&self, other: &FinSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elems == other.0.elems
    }
}

impl Eq for FinSet {}

impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.elems.hash(state);
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name(), self)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// The cartesian product `X ⊗ Y`, ordered with `X` as the major key.
pub fn product(x: &FinSet, y: &FinSet) -> FinSet {
    let mut elems = Vec::with_capacity(x.len() * y.len());
    for a in x.iter() {
        for b in y.iter() {
            elems.push(Value::pair(a.clone(), b.clone()));
        }
    }
    FinSet::from_sorted(format!("({}⊗{})", x.name(), y.name()), elems)
}

/// A total function between finite sets, stored as an image table aligned
/// with the domain order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    images: Vec<Value>,
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, images: Vec<Value>) -> Result<FinFn, FinError> {
        if images.len() != dom.len() {
            return Err(FinError::NotTotal { expected: dom.len(), got: images.len() });
        }
        if let Some(bad) = images.iter().find(|v| !cod.contains(v)) {
            return Err(FinError::OutsideCodomain(bad.to_string()));
        }
        Ok(FinFn { dom, cod, images })
    }

    pub fn from_fn(dom: &FinSet, cod: &FinSet, f: impl Fn(&Value) -> EvalResult) -> Result<FinFn, EvalError> {
        let images = dom.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
        FinFn::new(dom.clone(), cod.clone(), images).map_err(|e| EvalError::Other(e.to_string()))
    }

    pub fn identity(x: &FinSet) -> FinFn {
        FinFn { dom: x.clone(), cod: x.clone(), images: x.elems().to_vec() }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn images(&self) -> &[Value] {
        &self.images
    }

    pub fn apply(&self, v: &Value) -> EvalResult {
        self.dom
            .position(v)
            .map(|i| self.images[i].clone())
            .ok_or_else(|| EvalError::NotInDomain(v.to_string()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFn) -> Result<FinFn, FinError> {
        if self.cod != other.dom {
            return Err(FinError::NotComposable);
        }
        let images = self.images.iter().map(|v| other.apply(v).expect("composable")).collect();
        Ok(FinFn { dom: self.dom.clone(), cod: other.cod.clone(), images })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.images.clone();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.dom.len() == self.cod.len()
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.dom.iter().zip(&self.images).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        f.write_str("}")
    }
}

/// Every function `X → Y`, enumerated in lexicographic order of image tables.
pub fn all_functions(x: &FinSet, y: &FinSet) -> Vec<FinFn> {
    if x.is_empty() {
        return vec![FinFn { dom: x.clone(), cod: y.clone(), images: vec![] }];
    }
    if y.is_empty() {
        return vec![];
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; x.len()];
    loop {
        let images = digits.iter().map(|&d| y.elems()[d].clone()).collect();
        out.push(FinFn { dom: x.clone(), cod: y.clone(), images });
        let mut i = x.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < y.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Canonical sets `Y_0 ..= Y_k`.
pub fn canonical_sets(k: usize) -> Vec<FinSet> {
    (0..=k).map(FinSet::canonical).collect()
}

/// Polynomial endofunctor expressions on finite sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FunctorExpr {
    Id,
    Const(FinSet),
    Prod(Box<FunctorExpr>, Box<FunctorExpr>),
    Sum(Box<FunctorExpr>, Box<FunctorExpr>),
}

impl FunctorExpr {
    /// `Const` over a set of tokens.
    pub fn constant<S: AsRef<str>>(toks: &[S]) -> Result<FunctorExpr, FinError> {
        Ok(FunctorExpr::Const(FinSet::of_tokens("K", toks)?))
    }

    pub fn prod(l: FunctorExpr, r: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Prod(Box::new(l), Box::new(r))
    }

    pub fn sum(l: FunctorExpr, r: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Sum(Box::new(l), Box::new(r))
    }

    /// Maximum number of Id leaves in one element.
    pub fn degree(&self) -> usize {
        match self {
            FunctorExpr::Id => 1,
            FunctorExpr::Const(_) => 0,
            FunctorExpr::Prod(l, r) => l.degree() + r.degree(),
            FunctorExpr::Sum(l, r) => l.degree().max(r.degree()),
        }
    }

    /// `|F X|` by the polynomial count, without enumerating.
    pub fn count(&self, n: usize) -> usize {
        match self {
            FunctorExpr::Id => n,
            FunctorExpr::Const(c) => c.len(),
            FunctorExpr::Prod(l, r) => l.count(n) * r.count(n),
            FunctorExpr::Sum(l, r) => l.count(n) + r.count(n),
        }
    }

    fn enumerate(&self, x: &FinSet) -> Vec<Value> {
        match self {
            FunctorExpr::Id => x.iter().cloned().map(Value::var).collect(),
            FunctorExpr::Const(c) => c
                .iter()
                .map(|v| match v {
                    Value::Atom(t) => Value::Const(t.clone()),
                    other => Value::Const(other.to_string()),
                })
                .collect(),
            FunctorExpr::Prod(l, r) => {
                let rs = r.enumerate(x);
                let mut out = Vec::new();
                for a in l.enumerate(x) {
                    for b in &rs {
                        out.push(Value::pair(a.clone(), b.clone()));
                    }
                }
                out
            }
            FunctorExpr::Sum(l, r) => l
                .enumerate(x)
                .into_iter()
                .map(|v| Value::Inl(Box::new(v)))
                .chain(r.enumerate(x).into_iter().map(|v| Value::Inr(Box::new(v))))
                .collect(),
        }
    }

    /// All elements of `F X`, in canonical order.
    pub fn apply_obj(&self, x: &FinSet) -> FinSet {
        FinSet::collect(format!("{self}({})", x.name()), self.enumerate(x))
    }

    /// Structural action on a value: Id leaves are rewritten by `f`.
    pub fn map_value(&self, f: &dyn Fn(&Value) -> EvalResult, v: &Value) -> EvalResult {
        match (self, v) {
            (FunctorExpr::Id, Value::Var(inner)) => Ok(Value::var(f(inner)?)),
            (FunctorExpr::Const(_), Value::Const(_)) => Ok(v.clone()),
            (FunctorExpr::Prod(l, r), Value::Pair(a, b)) => Ok(Value::pair(l.map_value(f, a)?, r.map_value(f, b)?)),
            (FunctorExpr::Sum(l, _), Value::Inl(a)) => Ok(Value::Inl(Box::new(l.map_value(f, a)?))),
            (FunctorExpr::Sum(_, r), Value::Inr(b)) => Ok(Value::Inr(Box::new(r.map_value(f, b)?))),
            (shape, got) => Err(EvalError::shape(&format!("element of {shape}"), got)),
        }
    }

    /// `F f : F X → F Y`.
    pub fn apply_mor(&self, f: &FinFn) -> FinFn {
        let dom = self.apply_obj(f.dom());
        let cod = self.apply_obj(f.cod());
        let images = dom
            .iter()
            .map(|v| self.map_value(&|x| f.apply(x), v).expect("shape of enumerated element"))
            .collect();
        FinFn { dom, cod, images }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Id => f.write_str("Id"),
            FunctorExpr::Const(c) => write!(f, "K{c}"),
            FunctorExpr::Prod(l, r) => write!(f, "({l}×{r})"),
            FunctorExpr::Sum(l, r) => write!(f, "({l}+{r})"),
        }
    }
}

/// Value-level structure maps of the cartesian monoidal category.
pub mod mon {
    use super::{EvalError, EvalResult, Value, UNIT_TOKEN};

    /// `γ : (a,b) ↦ (b,a)`.
    pub fn swap(v: &Value) -> EvalResult {
        let (a, b) = v.as_pair()?;
        Ok(Value::pair(b.clone(), a.clone()))
    }

    /// `α : ((a,b),c) ↦ (a,(b,c))`.
    pub fn assoc(v: &Value) -> EvalResult {
        let (ab, c) = v.as_pair()?;
        let (a, b) = ab.as_pair()?;
        Ok(Value::pair(a.clone(), Value::pair(b.clone(), c.clone())))
    }

    /// `α⁻¹ : (a,(b,c)) ↦ ((a,b),c)`.
    pub fn assoc_inv(v: &Value) -> EvalResult {
        let (a, bc) = v.as_pair()?;
        let (b, c) = bc.as_pair()?;
        Ok(Value::pair(Value::pair(a.clone(), b.clone()), c.clone()))
    }

    fn expect_unit(v: &Value) -> Result<(), EvalError> {
        match v {
            Value::Atom(t) if t == UNIT_TOKEN => Ok(()),
            other => Err(EvalError::shape("*", other)),
        }
    }

    /// `λ : (*,x) ↦ x`.
    pub fn left_unitor(v: &Value) -> EvalResult {
        let (u, x) = v.as_pair()?;
        expect_unit(u)?;
        Ok(x.clone())
    }

    pub fn left_unitor_inv(v: &Value) -> EvalResult {
        Ok(Value::pair(Value::unit(), v.clone()))
    }

    /// `ρ : (x,*) ↦ x`.
    pub fn right_unitor(v: &Value) -> EvalResult {
        let (x, u) = v.as_pair()?;
        expect_unit(u)?;
        Ok(x.clone())
    }

    pub fn right_unitor_inv(v: &Value) -> EvalResult {
        Ok(Value::pair(v.clone(), Value::unit()))
    }
}

/// The symmetric monoidal structure maps at concrete objects.
#[derive(Clone, Debug)]
pub struct MonoidalKit {
    pub xy: FinSet,
    pub yx: FinSet,
    /// `γ_{X,Y} : X⊗Y → Y⊗X`
    pub gamma: FinFn,
    /// `γ_{Y,X} : Y⊗X → X⊗Y`
    pub gamma_rev: FinFn,
    /// `α_{X,Y,Z} : (X⊗Y)⊗Z → X⊗(Y⊗Z)`
    pub alpha: FinFn,
    pub alpha_inv: FinFn,
    /// `λ_X : I⊗X → X`
    pub lambda: FinFn,
    pub lambda_inv: FinFn,
    /// `ρ_X : X⊗I → X`
    pub rho: FinFn,
    pub rho_inv: FinFn,
}

pub fn monoidal_kit(x: &FinSet, y: &FinSet, z: &FinSet) -> MonoidalKit {
    let build = |dom: &FinSet, cod: &FinSet, f: fn(&Value) -> EvalResult| {
        FinFn::from_fn(dom, cod, f).expect("structure map is total")
    };
    let i = FinSet::unit();
    let xy = product(x, y);
    let yx = product(y, x);
    let xy_z = product(&xy, z);
    let x_yz = product(x, &product(y, z));
    let ix = product(&i, x);
    let xi = product(x, &i);
    MonoidalKit {
        gamma: build(&xy, &yx, mon::swap),
        gamma_rev: build(&yx, &xy, mon::swap),
        alpha: build(&xy_z, &x_yz, mon::assoc),
        alpha_inv: build(&x_yz, &xy_z, mon::assoc_inv),
        lambda: build(&ix, x, mon::left_unitor),
        lambda_inv: build(x, &ix, mon::left_unitor_inv),
        rho: build(&xi, x, mon::right_unitor),
        rho_inv: build(x, &xi, mon::right_unitor_inv),
        xy,
        yx,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(s: &FinSet) -> Vec<String> {
        s.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn const_functor_ignores_argument() {
        let one = FunctorExpr::constant(&["*"]).unwrap();
        for n in 0..4 {
            assert_eq!(tokens(&one.apply_obj(&FinSet::canonical(n))), vec!["c:*"]);
        }
    }

    #[test]
    fn identity_functor_enumerates_leaves() {
        let x = FinSet::of_tokens("X", &["0", "1"]).unwrap();
        assert_eq!(tokens(&FunctorExpr::Id.apply_obj(&x)), vec!["x:0", "x:1"]);
    }

    #[test]
    fn writer_shape_enumeration() {
        let x = FinSet::of_tokens("X", &["0", "1"]).unwrap();
        let f = FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::constant(&["a"]).unwrap());
        assert_eq!(tokens(&f.apply_obj(&x)), vec!["(x:0,c:a)", "(x:1,c:a)"]);
    }

    #[test]
    fn apply_mor_on_identity_is_the_function() {
        let x = FinSet::canonical(2);
        let y = FinSet::canonical(3);
        for f in all_functions(&x, &y) {
            let g = FunctorExpr::Id.apply_mor(&f);
            for v in x.iter() {
                assert_eq!(g.apply(&Value::var(v.clone())).unwrap(), Value::var(f.apply(v).unwrap()));
            }
        }
    }

    #[test]
    fn apply_mor_on_square_is_pointwise() {
        let sq = FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id);
        for n in 0..=3 {
            let x = FinSet::canonical(n);
            for m in 0..=3 {
                let y = FinSet::canonical(m);
                for f in all_functions(&x, &y) {
                    let ff = sq.apply_mor(&f);
                    for a in x.iter() {
                        for b in x.iter() {
                            let input = Value::pair(Value::var(a.clone()), Value::var(b.clone()));
                            let expect = Value::pair(
                                Value::var(f.apply(a).unwrap()),
                                Value::var(f.apply(b).unwrap()),
                            );
                            assert_eq!(ff.apply(&input).unwrap(), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn function_enumeration_counts() {
        for n in 0..=3 {
            for m in 0..=3 {
                let fs = all_functions(&FinSet::canonical(n), &FinSet::canonical(m));
                assert_eq!(fs.len(), m.pow(n as u32));
            }
        }
    }

    #[test]
    fn gamma_is_an_involution() {
        for n in 0..=3 {
            for m in 0..=3 {
                let x = FinSet::canonical(n);
                let y = FinSet::of_tokens("Y", &["a", "b", "c"][..m]).unwrap();
                let kit = monoidal_kit(&x, &y, &FinSet::unit());
                let round = kit.gamma.then(&kit.gamma_rev).unwrap();
                assert_eq!(round, FinFn::identity(&kit.xy));
                assert!(kit.gamma.is_bijective());
            }
        }
    }

    #[test]
    fn unitors_and_associator_are_bijections() {
        let x = FinSet::canonical(2);
        let kit = monoidal_kit(&x, &FinSet::canonical(3), &FinSet::canonical(2));
        for f in [&kit.alpha, &kit.alpha_inv, &kit.lambda, &kit.lambda_inv, &kit.rho, &kit.rho_inv] {
            assert!(f.is_bijective());
        }
        assert_eq!(kit.alpha.then(&kit.alpha_inv).unwrap(), FinFn::identity(kit.alpha.dom()));
        for v in x.iter() {
            assert_eq!(kit.lambda.apply(&Value::pair(Value::unit(), v.clone())).unwrap(), *v);
        }
    }

    #[test]
    fn pentagon_and_hexagon_at_size_two() {
        let s = FinSet::canonical(2);
        let t = FinSet::of_tokens("T", &["p", "q"]).unwrap();
        let u = FinSet::of_tokens("U", &["r", "s"]).unwrap();
        let w = FinSet::of_tokens("W", &["m", "n"]).unwrap();
        // pentagon on ((s,t),u),w
        let dom = product(&product(&product(&s, &t), &u), &w);
        for v in dom.iter() {
            let top = mon::assoc(&mon::assoc(v).unwrap()).unwrap();
            let (stu, wv) = v.as_pair().unwrap();
            let step1 = Value::pair(mon::assoc(stu).unwrap(), wv.clone());
            let step2 = mon::assoc(&step1).unwrap();
            let (a, rest) = step2.as_pair().unwrap();
            let bottom = Value::pair(a.clone(), mon::assoc(rest).unwrap());
            assert_eq!(top, bottom);
        }
        // hexagon on (s,t),u
        let dom = product(&product(&s, &t), &u);
        for v in dom.iter() {
            let lhs = mon::assoc(&mon::swap(&mon::assoc(v).unwrap()).unwrap()).unwrap();
            let (st, uv) = v.as_pair().unwrap();
            let a = mon::assoc(&Value::pair(mon::swap(st).unwrap(), uv.clone())).unwrap();
            let (b, rest) = a.as_pair().unwrap();
            let rhs = Value::pair(b.clone(), mon::swap(rest).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn encoding_rejects_garbage() {
        assert!(Value::parse("(x:a,").is_err());
        assert!(Value::parse("x:").is_err());
        assert!(Value::parse("(a,b)c").is_err());
        assert_eq!(Value::parse("c:{ab,ba}").unwrap(), Value::konst("{ab,ba}"));
        assert!(!is_valid_token("a,b"));
        assert!(is_valid_token("{a,b}"));
        assert!(!is_valid_token("x:y"));
    }

    #[test]
    fn sum_enumeration_and_degree() {
        let f = FunctorExpr::sum(
            FunctorExpr::prod(FunctorExpr::Id, FunctorExpr::Id),
            FunctorExpr::constant(&["k"]).unwrap(),
        );
        assert_eq!(f.degree(), 2);
        let x = FinSet::canonical(2);
        let all = f.apply_obj(&x);
        assert_eq!(all.len(), 5);
        assert!(all.contains(&Value::parse("inr:c:k").unwrap()));
        assert!(all.contains(&Value::parse("inl:(x:y0,x:y1)").unwrap()));
    }
}
