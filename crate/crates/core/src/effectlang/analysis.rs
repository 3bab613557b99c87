//! Grade inference and operand-reordering verdicts.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EffectError, Expr, ExprKind, Pos, Program};
use crate::graded_monad::{check_commutative_pair, GradedStrongMonad};
use crate::pomonoid::{Grade, Pomonoid};

/// Inferred grade of every node, indexed by node id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeMap {
    pub grades: Vec<Grade>,
}

impl GradeMap {
    pub fn of(&self, e: &Expr) -> Grade {
        self.grades[e.id]
    }
}

/// Sequencing is left to right: arguments run before the call, the left
/// operand before the right one, the bound expression before the body.
pub fn infer_grades(prog: &Program, p: &Pomonoid) -> Result<GradeMap, EffectError> {
    let mut prim_grades = HashMap::new();
    for prim in &prog.prims {
        let g = p.grade(&prim.grade).ok_or_else(|| EffectError::UnknownGrade {
            grade: prim.grade.clone(),
            line: prim.pos.line,
            col: prim.pos.col,
        })?;
        prim_grades.insert(prim.name.as_str(), g);
    }
    let mut grades = vec![p.unit(); prog.size()];
    fn go(e: &Expr, p: &Pomonoid, prims: &HashMap<&str, Grade>, out: &mut [Grade]) -> Grade {
        let g = match &e.kind {
            ExprKind::Var(_) | ExprKind::Lit(_) => p.unit(),
            ExprKind::Call(f, arg) => {
                let ga = go(arg, p, prims, out);
                p.mul(ga, prims[f.as_str()])
            }
            ExprKind::Op(_, l, r) | ExprKind::Let(_, l, r) => {
                let gl = go(l, p, prims, out);
                let gr = go(r, p, prims, out);
                p.mul(gl, gr)
            }
        };
        out[e.id] = g;
        g
    }
    go(&prog.main, p, &prim_grades, &mut grades);
    Ok(GradeMap { grades })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReorderVerdict {
    /// The operands may be evaluated in either order.
    Free,
    /// The grades commute but the computations are not known to.
    GradeCommutesOnly,
    /// The written order must be kept.
    Forced,
}

impl fmt::Display for ReorderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReorderVerdict::Free => "FREE",
            ReorderVerdict::GradeCommutesOnly => "GRADE_COMMUTES_ONLY",
            ReorderVerdict::Forced => "FORCED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReorderEntry {
    pub pos: Pos,
    pub op: String,
    pub a: String,
    pub b: String,
    pub verdict: ReorderVerdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReorderReport {
    pub entries: Vec<ReorderEntry>,
}

impl ReorderReport {
    pub fn to_json_lines(&self) -> String {
        self.entries.iter().map(|e| serde_json::to_string(e).expect("serializable") + "\n").collect()
    }
}

impl fmt::Display for ReorderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<8} {:<6} {:<10} {:<10} verdict", "at", "op", "left", "right")?;
        for e in &self.entries {
            writeln!(f, "{:<8} {:<6} {:<10} {:<10} {}", e.pos.to_string(), e.op, e.a, e.b, e.verdict)?;
        }
        Ok(())
    }
}

/// One verdict per `op` node, in source order.
///
/// With a monad, a grade pair whose two evaluation orders disagree on some
/// tested element is `FORCED` whatever the grades say. Otherwise the pair is
/// `FREE` when either grade is central, `GRADE_COMMUTES_ONLY` when the grades
/// merely commute with each other, and `FORCED` when they do not.
pub fn reorder_report(
    prog: &Program,
    p: &Pomonoid,
    monad: Option<&GradedStrongMonad>,
    k: usize,
) -> Result<ReorderReport, EffectError> {
    if let Some(m) = monad {
        if m.grading() != p {
            return Err(EffectError::GradingMismatch { monad: m.grading().to_string(), program: p.to_string() });
        }
    }
    let grades = infer_grades(prog, p)?;
    let mut ops = Vec::new();
    collect_ops(&prog.main, &mut ops);
    ops.sort_by_key(|e| e.pos);
    let mut monad_cache: HashMap<(Grade, Grade), bool> = HashMap::new();
    let mut entries = Vec::new();
    for e in ops {
        let ExprKind::Op(op, l, r) = &e.kind else { unreachable!("collected op nodes only") };
        let (a, b) = (grades.of(l), grades.of(r));
        let mut monad_ok = |a: Grade, b: Grade| {
            let Some(m) = monad else { return true };
            let key = if a <= b { (a, b) } else { (b, a) };
            *monad_cache.entry(key).or_insert_with(|| {
                check_commutative_pair(m, a, b, k).passed() && check_commutative_pair(m, b, a, k).passed()
            })
        };
        let verdict = if !monad_ok(a, b) {
            ReorderVerdict::Forced
        } else if p.is_central(a) || p.is_central(b) {
            ReorderVerdict::Free
        } else if p.commutes(a, b) {
            ReorderVerdict::GradeCommutesOnly
        } else {
            ReorderVerdict::Forced
        };
        entries.push(ReorderEntry {
            pos: e.pos,
            op: op.clone(),
            a: p.name(a).to_string(),
            b: p.name(b).to_string(),
            verdict,
        });
    }
    Ok(ReorderReport { entries })
}

fn collect_ops<'e>(e: &'e Expr, out: &mut Vec<&'e Expr>) {
    match &e.kind {
        ExprKind::Var(_) | ExprKind::Lit(_) => {}
        ExprKind::Call(_, arg) => collect_ops(arg, out),
        ExprKind::Op(_, l, r) => {
            out.push(e);
            collect_ops(l, out);
            collect_ops(r, out);
        }
        ExprKind::Let(_, l, r) => {
            collect_ops(l, out);
            collect_ops(r, out);
        }
    }
}
