//! Boolean networks: named automata with one local function each, plus
//! compiled whole-space truth tables for fast evaluation.

use std::fmt;
use std::sync::OnceLock;

use crate::config::{AutomataSet, Config, MAX_SET_DIM};
use crate::expr::{parse_model, Expr, ParseError, ParsedModel};

// Bit patterns of a variable's value across the 64 codes of one word, for
// variables whose bit position k sits inside the word.
const VAR_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A Boolean network of dimension `n`: the global map whose i-th component
/// is the local function of automaton `i`.
///
/// Immutable after construction and shareable across threads. Truth tables
/// are compiled on first whole-space use; per-configuration evaluation falls
/// back to the expression tree until then.
pub struct BooleanNetwork {
    names: Vec<String>,
    exprs: Vec<Expr>,
    tables: OnceLock<Vec<Vec<u64>>>,
}

impl BooleanNetwork {
    /// Parses a model file (see [`crate::expr`] for the grammar).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Self::from_parsed(parse_model(text)?))
    }

    pub fn from_parsed(model: ParsedModel) -> Self {
        BooleanNetwork {
            names: model.names,
            exprs: model.exprs,
            tables: OnceLock::new(),
        }
    }

    /// Builds a network directly from one truth table per automaton; row `i`
    /// lists `f_{i+1}` over all codes in ascending order. Automata are named
    /// `x1..xn`. The stored expression is the disjunction of the row's
    /// minterms.
    pub fn from_truth_tables(rows: &[Vec<bool>]) -> Self {
        let n = rows.len();
        assert!((1..=16).contains(&n), "truth-table construction supports 1..=16 automata");
        let size = 1usize << n;
        let exprs = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), size, "each row needs {size} entries");
                let ones: Vec<u64> = (0..size as u64).filter(|&c| row[c as usize]).collect();
                if ones.is_empty() {
                    return Expr::Const(false);
                }
                if ones.len() == size {
                    return Expr::Const(true);
                }
                ones.iter()
                    .map(|&code| {
                        let x = Config::new(n, code);
                        (1..=n)
                            .map(|i| {
                                if x.get(i) {
                                    Expr::var(i)
                                } else {
                                    Expr::not(Expr::var(i))
                                }
                            })
                            .reduce(Expr::and)
                            .unwrap()
                    })
                    .reduce(Expr::or)
                    .unwrap()
            })
            .collect();
        BooleanNetwork {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            exprs,
            tables: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    pub fn expr(&self, i: usize) -> &Expr {
        &self.exprs[i - 1]
    }

    /// Value of the local function of automaton `i` on `x`.
    pub fn local(&self, i: usize, x: Config) -> bool {
        assert!(i >= 1 && i <= self.dim(), "automaton {i} out of range");
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        match self.tables.get() {
            Some(tables) => {
                let code = x.code();
                tables[i - 1][(code >> 6) as usize] >> (code & 63) & 1 == 1
            }
            None => self.exprs[i - 1].eval(x),
        }
    }

    /// The global map: applies every local function simultaneously.
    pub fn apply(&self, x: Config) -> Config {
        let n = self.dim();
        let mut code = 0u64;
        for i in 1..=n {
            code = code << 1 | self.local(i, x) as u64;
        }
        Config::new(n, code)
    }

    /// Applies the local functions of exactly the automata in `targets`,
    /// leaving the others unchanged (the elementary update).
    pub fn update(&self, targets: AutomataSet, x: Config) -> Config {
        assert!(targets.within(self.dim()), "update set {targets} out of range");
        let mut y = x;
        for i in targets.iter() {
            y = y.with(i, self.local(i, x));
        }
        y
    }

    /// Automata whose local function disagrees with their current state.
    pub fn unstable(&self, x: Config) -> AutomataSet {
        (1..=self.dim())
            .filter(|&i| self.local(i, x) != x.get(i))
            .collect()
    }

    /// Compiles the per-automaton truth tables (one bit per code) if not
    /// already done. Evaluation is word-parallel over the expression tree.
    pub fn compile_tables(&self) {
        let n = self.dim();
        assert!(
            n <= MAX_SET_DIM,
            "dimension {n} too large for whole-space truth tables"
        );
        self.tables.get_or_init(|| {
            let words = if n <= 6 { 1 } else { 1usize << (n - 6) };
            let tail = if n < 6 { (1u64 << (1 << n)) - 1 } else { u64::MAX };
            self.exprs
                .iter()
                .map(|e| {
                    (0..words)
                        .map(|w| eval_word(e, n, (w as u64) << 6) & tail)
                        .collect()
                })
                .collect()
        });
    }

    /// Model file serialization; reparsing yields the same network.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, expr) in self.names.iter().zip(&self.exprs) {
            out.push_str(name);
            out.push_str(": ");
            out.push_str(&expr.to_text(&self.names));
            out.push('\n');
        }
        out
    }
}

// Evaluates an expression on the 64 consecutive codes starting at `base`,
// one code per bit.
fn eval_word(e: &Expr, n: usize, base: u64) -> u64 {
    match e {
        Expr::Const(b) => {
            if *b {
                u64::MAX
            } else {
                0
            }
        }
        Expr::Var(i) => {
            let k = n - i;
            if k < 6 {
                VAR_PATTERNS[k]
            } else if base >> k & 1 == 1 {
                u64::MAX
            } else {
                0
            }
        }
        Expr::Not(c) => !eval_word(c, n, base),
        Expr::And(l, r) => eval_word(l, n, base) & eval_word(r, n, base),
        Expr::Or(l, r) => eval_word(l, n, base) | eval_word(r, n, base),
    }
}

impl fmt::Debug for BooleanNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanNetwork({})", self.names.join(","))
    }
}
