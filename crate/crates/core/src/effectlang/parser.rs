//! Recursive-descent parser for effect programs.
//!
//! ```text
//! program := decl* "main" "=" expr
//! decl    := "prim" ident "!" grade
//! expr    := "let" ident "=" expr "in" expr
//!          | op "(" expr "," expr ")"      op = "op" followed by a name or symbols
//!          | ident "(" expr ")"
//!          | ident | integer
//! ```
//! `#` starts a comment that runs to the end of the line.

use std::collections::HashSet;

use super::{EffectError, Expr, ExprKind, Pos, Prim, Program};

const OP_SYMBOLS: &str = "+-*/<>=!&|^%~@$.?";

struct Parser {
    chars: Vec<char>,
    at: usize,
    line: usize,
    col: usize,
    next_id: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), at: 0, line: 1, col: 1, next_id: 0 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn error(&self, expected: &str) -> EffectError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        };
        EffectError::Syntax { line: self.line, col: self.col, expected: format!("{expected}, found {found}") }
    }

    fn expect(&mut self, c: char) -> Result<(), EffectError> {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_trivia();
        let c = self.peek()?;
        if !(c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            out.push(c);
            self.bump();
        }
        Some(out)
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, EffectError> {
        self.ident().ok_or_else(|| self.error(what))
    }

    /// Lookahead for a keyword without consuming anything else.
    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_trivia();
        let n = kw.chars().count();
        let word: String = self.chars[self.at..].iter().take(n).collect();
        let after = self.chars.get(self.at + n).copied();
        word == kw && !after.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    fn keyword(&mut self, kw: &str) -> Result<(), EffectError> {
        if self.at_keyword(kw) {
            for _ in 0..kw.chars().count() {
                self.bump();
            }
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    /// A grade name: any run of non-space characters outside comments.
    fn grade(&mut self) -> Result<String, EffectError> {
        self.skip_trivia();
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|c| !c.is_whitespace() && *c != '#') {
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            return Err(self.error("a grade"));
        }
        Ok(out)
    }

    fn node(&mut self, pos: Pos, kind: ExprKind) -> Expr {
        let id = self.next_id;
        self.next_id += 1;
        Expr { id, pos, kind }
    }

    fn program(&mut self) -> Result<Program, EffectError> {
        let mut prims: Vec<Prim> = Vec::new();
        loop {
            if self.at_keyword("prim") {
                let pos = self.pos();
                self.keyword("prim")?;
                let name = self.expect_ident("a primitive name")?;
                self.expect('!')?;
                let grade = self.grade()?;
                if prims.iter().any(|p| p.name == name) {
                    return Err(EffectError::Syntax {
                        line: pos.line,
                        col: pos.col,
                        expected: format!("a fresh primitive name, `{name}` is declared twice"),
                    });
                }
                prims.push(Prim { name, grade, pos });
            } else if self.at_keyword("main") {
                self.keyword("main")?;
                self.expect('=')?;
                let main = self.expr()?;
                self.skip_trivia();
                if self.peek().is_some() {
                    return Err(self.error("end of input"));
                }
                return Ok(Program { prims, main });
            } else {
                return Err(self.error("`prim` or `main`"));
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, EffectError> {
        self.skip_trivia();
        let pos = self.pos();
        if self.at_keyword("let") {
            self.keyword("let")?;
            let var = self.expect_ident("a variable name")?;
            self.expect('=')?;
            let bound = self.expr()?;
            self.keyword("in")?;
            let body = self.expr()?;
            return Ok(self.node(pos, ExprKind::Let(var, Box::new(bound), Box::new(body))));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                    digits.push(d);
                    self.bump();
                }
                let n = digits.parse::<i64>().map_err(|_| EffectError::Syntax {
                    line: pos.line,
                    col: pos.col,
                    expected: "an integer that fits in 64 bits".into(),
                })?;
                Ok(self.node(pos, ExprKind::Lit(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = self.ident().expect("starts with a letter");
                let symbolic = name == "op" && self.peek().is_some_and(|c| OP_SYMBOLS.contains(c));
                if symbolic {
                    while let Some(c) = self.peek().filter(|c| OP_SYMBOLS.contains(*c)) {
                        name.push(c);
                        self.bump();
                    }
                }
                self.skip_trivia();
                if self.peek() != Some('(') {
                    if symbolic {
                        return Err(self.error("'(' after an operator"));
                    }
                    return Ok(self.node(pos, ExprKind::Var(name)));
                }
                self.bump();
                let first = self.expr()?;
                self.skip_trivia();
                if self.peek() == Some(',') {
                    if !name.starts_with("op") {
                        return Err(self.error("')' (only `op` nodes take two arguments)"));
                    }
                    self.bump();
                    let second = self.expr()?;
                    self.expect(')')?;
                    let op = name["op".len()..].to_string();
                    return Ok(self.node(pos, ExprKind::Op(op, Box::new(first), Box::new(second))));
                }
                self.expect(')')?;
                if symbolic {
                    return Err(EffectError::Syntax { line: pos.line, col: pos.col, expected: "two operands".into() });
                }
                Ok(self.node(pos, ExprKind::Call(name, Box::new(first))))
            }
            _ => Err(self.error("an expression")),
        }
    }
}

/// Parses and checks scoping: every call names a declared primitive and
/// every variable is bound by an enclosing `let`.
pub fn parse_program(text: &str) -> Result<Program, EffectError> {
    let program = Parser::new(text).program()?;
    let prims: HashSet<&str> = program.prims.iter().map(|p| p.name.as_str()).collect();
    check_scope(&program.main, &prims, &mut Vec::new())?;
    Ok(program)
}

fn check_scope(e: &Expr, prims: &HashSet<&str>, scope: &mut Vec<String>) -> Result<(), EffectError> {
    match &e.kind {
        ExprKind::Var(v) => {
            if scope.iter().any(|s| s == v) {
                Ok(())
            } else {
                Err(EffectError::UnboundVariable { name: v.clone(), line: e.pos.line, col: e.pos.col })
            }
        }
        ExprKind::Lit(_) => Ok(()),
        ExprKind::Call(f, arg) => {
            if !prims.contains(f.as_str()) {
                return Err(EffectError::UnknownPrimitive { name: f.clone(), line: e.pos.line, col: e.pos.col });
            }
            check_scope(arg, prims, scope)
        }
        ExprKind::Op(_, l, r) => {
            check_scope(l, prims, scope)?;
            check_scope(r, prims, scope)
        }
        ExprKind::Let(v, bound, body) => {
            check_scope(bound, prims, scope)?;
            scope.push(v.clone());
            let out = check_scope(body, prims, scope);
            scope.pop();
            out
        }
    }
}
