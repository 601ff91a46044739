//! Boolean expressions over named automata, and the model file parser.
//!
//! A model file declares one automaton per line as `name: expression`.
//! Expressions combine `0`, `1`, automaton names, `!`, `&`, `|` and
//! parentheses; `!` binds tightest, then `&`, then `|`, and both binary
//! operators associate to the left. `#` starts a comment, blank lines are
//! ignored, and declarations may refer to names declared further down.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

use crate::config::Config;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate automaton name {name:?}")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}, column {col}: undeclared name {name:?}")]
    UndeclaredName {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("model declares no automata")]
    EmptyModel,
}

/// A Boolean expression; variables are 1-based automaton indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(l: Expr, r: Expr) -> Expr {
        Expr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Expr, r: Expr) -> Expr {
        Expr::Or(Box::new(l), Box::new(r))
    }

    /// Evaluates the expression on a configuration. Total: every variable
    /// index must be within the configuration's dimension.
    pub fn eval(&self, x: Config) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(i) => x.get(*i),
            Expr::Not(e) => !e.eval(x),
            Expr::And(l, r) => l.eval(x) && r.eval(x),
            Expr::Or(l, r) => l.eval(x) || r.eval(x),
        }
    }

    /// Largest variable index mentioned, or 0 for a variable-free expression.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => *i,
            Expr::Not(e) => e.max_var(),
            Expr::And(l, r) | Expr::Or(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Renders the expression with the given automaton names, inserting the
    /// minimal parentheses needed to reparse to the same tree.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        self.render(names, 0, &mut out);
        out
    }

    // Precedence levels: Or 0, And 1, Not/atoms 2. A left-associative
    // operator requires its right operand to sit one level higher.
    fn render(&self, names: &[String], min_level: u8, out: &mut String) {
        let level = match self {
            Expr::Or(..) => 0,
            Expr::And(..) => 1,
            _ => 2,
        };
        let parens = level < min_level;
        if parens {
            out.push('(');
        }
        match self {
            Expr::Const(b) => out.push(if *b { '1' } else { '0' }),
            Expr::Var(i) => out.push_str(&names[*i - 1]),
            Expr::Not(e) => {
                out.push('!');
                e.render(names, 2, out);
            }
            Expr::And(l, r) => {
                l.render(names, 1, out);
                out.push_str(" & ");
                r.render(names, 2, out);
            }
            Expr::Or(l, r) => {
                l.render(names, 0, out);
                out.push_str(" | ");
                r.render(names, 1, out);
            }
        }
        if parens {
            out.push(')');
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(b) => write!(f, "Const({b})"),
            Expr::Var(i) => write!(f, "Var({i})"),
            Expr::Not(e) => write!(f, "Not({e:?})"),
            Expr::And(l, r) => write!(f, "And({l:?}, {r:?})"),
            Expr::Or(l, r) => write!(f, "Or({l:?}, {r:?})"),
        }
    }
}

/// Result of parsing a model file: automaton names in declaration order and
/// one local expression per automaton. The 1-based position in declaration
/// order is the automaton's index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedModel {
    pub names: Vec<String>,
    pub exprs: Vec<Expr>,
}

impl ParsedModel {
    pub fn dim(&self) -> usize {
        self.names.len()
    }
}

/// Parses a model file. Declaration order fixes automaton indices; forward
/// references are allowed.
pub fn parse_model(text: &str) -> Result<ParsedModel, ParseError> {
    // First pass: collect declared names so references can be resolved in
    // any order.
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut decls: Vec<(usize, usize, &str)> = Vec::new(); // (line, expr col, expr text)

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let colon = content.find(':').ok_or_else(|| ParseError::Syntax {
            line,
            col: content.chars().count() + 1,
            msg: "expected ':' after automaton name".into(),
        })?;
        let name_part = &content[..colon];
        let name = name_part.trim();
        if !is_ident(name) {
            let col = content
                .char_indices()
                .position(|(_, c)| !c.is_whitespace())
                .map_or(1, |p| p + 1);
            return Err(ParseError::Syntax {
                line,
                col,
                msg: format!("invalid automaton name {name:?}"),
            });
        }
        if index.contains_key(name) {
            return Err(ParseError::DuplicateName {
                line,
                name: name.to_string(),
            });
        }
        index.insert(name.to_string(), names.len() + 1);
        names.push(name.to_string());
        let expr_col = content[..colon + 1].chars().count() + 1;
        decls.push((line, expr_col, &content[colon + 1..]));
    }

    if names.is_empty() {
        return Err(ParseError::EmptyModel);
    }

    let mut exprs = Vec::with_capacity(decls.len());
    for (line, col, src) in decls {
        exprs.push(ExprParser::new(src, line, col, &index).parse()?);
    }
    Ok(ParsedModel { names, exprs })
}

/// Parses a single expression against a fixed list of automaton names.
pub fn parse_expression(text: &str, names: &[String]) -> Result<Expr, ParseError> {
    let index: HashMap<String, usize> = names
        .iter()
        .enumerate()
        .map(|(k, name)| (name.clone(), k + 1))
        .collect();
    ExprParser::new(text, 1, 1, &index).parse()
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_base: usize,
    index: &'a HashMap<String, usize>,
}

impl<'a> ExprParser<'a> {
    fn new(src: &str, line: usize, col_base: usize, index: &'a HashMap<String, usize>) -> Self {
        ExprParser {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col_base,
            index,
        }
    }

    fn parse(mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let expr = self.disjunction()?;
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(self.syntax(format!("unexpected {c:?}")));
        }
        Ok(expr)
    }

    fn disjunction(&mut self) -> Result<Expr, ParseError> {
        let mut expr = self.conjunction()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('|') {
                self.pos += 1;
                let rhs = self.conjunction()?;
                expr = Expr::or(expr, rhs);
            } else {
                return Ok(expr);
            }
        }
    }

    fn conjunction(&mut self) -> Result<Expr, ParseError> {
        let mut expr = self.unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('&') {
                self.pos += 1;
                let rhs = self.unary()?;
                expr = Expr::and(expr, rhs);
            } else {
                return Ok(expr);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.peek() == Some('!') {
            self.pos += 1;
            return Ok(Expr::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Expr::Const(false))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Expr::Const(true))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.index.get(&name) {
                    Some(&i) => Ok(Expr::Var(i)),
                    None => Err(ParseError::UndeclaredName {
                        line: self.line,
                        col: self.col_base + start,
                        name,
                    }),
                }
            }
            Some(c) => Err(self.syntax(format!("unexpected {c:?}"))),
            None => Err(self.syntax("unexpected end of expression".into())),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: String) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col_base + self.pos,
            msg,
        }
    }
}
