//! Length-preserving boolean circuits, formulas, and the length-preserving lift.
//!
//! Circuits are synthesized from truth tables by Shannon expansion on the
//! first variable, with identical subtables and gates shared. That is
//! exponential in the arity and fine up to about twenty inputs. Inversion
//! is exhaustive, 64 inputs per pass, and returns the least preimage.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bounds::PolyBound;
use crate::machine::{parse_program, run_counted, Provenance, WordFunction};
use crate::words::{decode3, encode3, pair, unpair, Tri, TriWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("expected {expected} input bits, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("gate {gate} refers to g{operand}, which is not earlier")]
    ForwardReference { gate: usize, operand: usize },
    #[error("input index {0} out of range")]
    InputOutOfRange(usize),
    #[error("{outputs} outputs for arity {arity}; circuits here preserve length")]
    OutputCount { arity: usize, outputs: usize },
    #[error("function undefined at {0}")]
    Undefined(Word),
    #[error("function changes the length of {0}")]
    NotLengthPreserving(Word),
    #[error("arity {0} is too large to tabulate")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("literal {0} names no variable")]
    Literal(i64),
    #[error("clause with {0} literals; at most 3 allowed")]
    WideClause(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
}

impl Gate {
    fn operands(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Gate::Input(_) | Gate::Const(_) => (None, None),
            Gate::Not(a) => (Some(a), None),
            Gate::And(a, b) | Gate::Or(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }
}

/// An acyclic circuit with as many outputs as inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    arity: usize,
    gates: Vec<Gate>,
    outputs: Vec<usize>,
}

impl Circuit {
    pub fn new(arity: usize, gates: Vec<Gate>, outputs: Vec<usize>) -> Result<Self, CircuitError> {
        for (i, g) in gates.iter().enumerate() {
            if let Gate::Input(k) = g {
                if *k >= arity {
                    return Err(CircuitError::InputOutOfRange(*k));
                }
            }
            if let Some(op) = g.operands().find(|&op| op >= i) {
                return Err(CircuitError::ForwardReference { gate: i, operand: op });
            }
        }
        if outputs.len() != arity {
            return Err(CircuitError::OutputCount { arity, outputs: outputs.len() });
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= gates.len()) {
            return Err(CircuitError::ForwardReference { gate: gates.len(), operand: o });
        }
        Ok(Circuit { arity, gates, outputs })
    }

    /// Wires input `i` to output `i`.
    pub fn identity(n: usize) -> Self {
        Circuit::new(n, (0..n).map(Gate::Input).collect(), (0..n).collect()).unwrap()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// `f_C(x)`, in gate order.
    pub fn eval(&self, x: &Word) -> Result<Word, CircuitError> {
        self.check_arity(x)?;
        let mut v: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let bit = match *g {
                Gate::Input(k) => x.bits()[k],
                Gate::Const(b) => b,
                Gate::Not(a) => !v[a],
                Gate::And(a, b) => v[a] && v[b],
                Gate::Or(a, b) => v[a] || v[b],
            };
            v.push(bit);
        }
        Ok(Word::from_bits(self.outputs.iter().map(|&o| v[o])))
    }

    /// Evaluates 64 inputs at once: lane `l` of input `k` is the `k`-th bit
    /// of input word number `base + l`.
    fn eval_lanes(&self, base: u64) -> Vec<u64> {
        const PATTERN: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let n = self.arity;
        let mut v: Vec<u64> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let lanes = match *g {
                Gate::Input(k) => {
                    let shift = n - 1 - k;
                    if shift < 6 {
                        PATTERN[shift]
                    } else if (base >> shift) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Gate::Const(b) => if b { u64::MAX } else { 0 },
                Gate::Not(a) => !v[a],
                Gate::And(a, b) => v[a] & v[b],
                Gate::Or(a, b) => v[a] | v[b],
            };
            v.push(lanes);
        }
        self.outputs.iter().map(|&o| v[o]).collect()
    }

    fn check_arity(&self, x: &Word) -> Result<(), CircuitError> {
        if x.len() != self.arity {
            return Err(CircuitError::Arity { expected: self.arity, got: x.len() });
        }
        Ok(())
    }

    /// Self-delimiting binary code: the numbers `arity, #gates`, each gate as
    /// `tag, operands`, then the outputs, in binary separated by `#`, then
    /// passed through `encode3`.
    pub fn code(&self) -> Word {
        let mut nums = vec![self.arity, self.gates.len()];
        for g in &self.gates {
            match *g {
                Gate::Input(k) => nums.extend([0, k]),
                Gate::Const(b) => nums.extend([1, b as usize]),
                Gate::Not(a) => nums.extend([2, a]),
                Gate::And(a, b) => nums.extend([3, a, b]),
                Gate::Or(a, b) => nums.extend([4, a, b]),
            }
        }
        nums.extend(&self.outputs);
        let mut t = TriWord::default();
        for (i, n) in nums.iter().enumerate() {
            if i > 0 {
                t.push(Tri::Hash);
            }
            t.extend_bits(&binary(*n));
        }
        encode3(&t)
    }

    pub fn decode(code: &Word) -> Option<Circuit> {
        let fields = decode3(code).ok()?.split_hash();
        let mut nums = fields.iter().map(|f| f.to_index().filter(|_| !f.is_empty()).map(|v| v as usize));
        let mut next = || nums.next().flatten();
        let arity = next()?;
        let count = next()?;
        let mut gates = Vec::with_capacity(count.min(1 << 20));
        for _ in 0..count {
            gates.push(match next()? {
                0 => Gate::Input(next()?),
                1 => Gate::Const(next()? == 1),
                2 => Gate::Not(next()?),
                3 => Gate::And(next()?, next()?),
                4 => Gate::Or(next()?, next()?),
                _ => return None,
            });
        }
        let outputs = (0..arity).map(|_| next()).collect::<Option<Vec<_>>>()?;
        if next().is_some() {
            return None;
        }
        let c = Circuit::new(arity, gates, outputs).ok()?;
        (c.code() == *code).then_some(c)
    }
}

fn binary(n: usize) -> Word {
    if n == 0 {
        return Word::from(vec![false]);
    }
    let bits = usize::BITS - n.leading_zeros();
    Word::from_index(n as u64, bits as usize)
}

/// `ev_circ(C, x) = (C, f_C(x))`.
pub fn ev_circ(c: &Circuit, x: &Word) -> Result<(Circuit, Word), CircuitError> {
    Ok((c.clone(), c.eval(x)?))
}

/// `ev_circ` on pair encodings `code(C)` header, then `x`.
pub fn ev_circ_function() -> WordFunction {
    WordFunction::new("ev_circ", PolyBound::linear12(), Provenance::Combinator, |t| {
        let (u, x) = unpair(t)?;
        let y = Circuit::decode(&u)?.eval(&x).ok()?;
        Some(pair(&u, &y))
    })
}

/// The least `x` in dictionary order with `f_C(x) = y`.
pub fn invert_circuit_brute(c: &Circuit, y: &Word) -> Result<Option<Word>, CircuitError> {
    c.check_arity(y)?;
    let n = c.arity;
    if n >= 64 {
        return Err(CircuitError::TooLarge(n));
    }
    let total = 1u64 << n;
    let live = if total < 64 { (1u64 << total) - 1 } else { u64::MAX };
    let mut base = 0u64;
    while base < total {
        let out = c.eval_lanes(base);
        let hit = out
            .iter()
            .zip(y.bits())
            .fold(live, |m, (&lane, &bit)| m & if bit { lane } else { !lane });
        if hit != 0 {
            return Ok(Some(Word::from_index(base + hit.trailing_zeros() as u64, n)));
        }
        base += 64;
    }
    Ok(None)
}

/// A truth table of `2^n` bits, bit `i` for input word number `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Table {
    len: u64,
    words: Vec<u64>,
}

impl Table {
    fn halves(&self) -> (Table, Table) {
        let half = self.len / 2;
        if half >= 64 {
            let k = self.words.len() / 2;
            return (
                Table { len: half, words: self.words[..k].to_vec() },
                Table { len: half, words: self.words[k..].to_vec() },
            );
        }
        let mask = (1u64 << half) - 1;
        let w = self.words[0];
        (Table { len: half, words: vec![w & mask] }, Table { len: half, words: vec![(w >> half) & mask] })
    }

    fn constant(&self) -> Option<bool> {
        let full = if self.len >= 64 { u64::MAX } else { (1u64 << self.len) - 1 };
        if self.words.iter().all(|&w| w == 0) {
            Some(false)
        } else if self.words.iter().all(|&w| w == full) {
            Some(true)
        } else {
            None
        }
    }
}

struct Builder {
    gates: Vec<Gate>,
    ids: HashMap<Gate, usize>,
    tables: HashMap<Table, usize>,
}

impl Builder {
    fn gate(&mut self, g: Gate) -> usize {
        if let Some(&id) = self.ids.get(&g) {
            return id;
        }
        self.gates.push(g);
        self.ids.insert(g, self.gates.len() - 1);
        self.gates.len() - 1
    }

    /// `var` is the variable the table's top half is split on.
    fn build(&mut self, var: usize, t: Table) -> usize {
        if let Some(b) = t.constant() {
            return self.gate(Gate::Const(b));
        }
        if let Some(&id) = self.tables.get(&t) {
            return id;
        }
        let (lo, hi) = t.halves();
        let id = if lo == hi {
            self.build(var + 1, lo)
        } else {
            let (l, h) = (lo.constant(), hi.constant());
            let x = self.gate(Gate::Input(var));
            match (l, h) {
                (Some(false), Some(true)) => x,
                (Some(true), Some(false)) => self.gate(Gate::Not(x)),
                (Some(false), _) => {
                    let b = self.build(var + 1, hi);
                    self.gate(Gate::And(x, b))
                }
                (_, Some(true)) => {
                    let a = self.build(var + 1, lo);
                    self.gate(Gate::Or(x, a))
                }
                _ => {
                    let a = self.build(var + 1, lo);
                    let b = self.build(var + 1, hi);
                    let nx = self.gate(Gate::Not(x));
                    let xb = self.gate(Gate::And(x, b));
                    let na = self.gate(Gate::And(nx, a));
                    self.gate(Gate::Or(xb, na))
                }
            }
        };
        self.tables.insert(t, id);
        id
    }
}

/// A circuit `C_n` with `C_n(x) = f(x)` for every `x` of length `n`.
pub fn synthesize_circuit(f: impl Fn(&Word) -> Option<Word>, n: usize) -> Result<Circuit, CircuitError> {
    if n > 24 {
        return Err(CircuitError::TooLarge(n));
    }
    let len = 1u64 << n;
    let blocks = len.div_ceil(64) as usize;
    let mut tables = vec![vec![0u64; blocks]; n];
    for (i, x) in Word::all_of_len(n).enumerate() {
        let y = f(&x).ok_or_else(|| CircuitError::Undefined(x.clone()))?;
        if y.len() != n {
            return Err(CircuitError::NotLengthPreserving(x));
        }
        for (j, &b) in y.bits().iter().enumerate() {
            if b {
                tables[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut b = Builder { gates: Vec::new(), ids: HashMap::new(), tables: HashMap::new() };
    let outputs = tables.into_iter().map(|words| b.build(0, Table { len, words })).collect();
    Circuit::new(n, b.gates, outputs)
}

/// One circuit per input length, synthesized on first use.
#[derive(Clone)]
pub struct CircuitFamily {
    f: Arc<dyn Fn(&Word) -> Option<Word> + Send + Sync>,
    cache: Arc<Mutex<HashMap<usize, Arc<Circuit>>>>,
}

impl CircuitFamily {
    pub fn new(f: impl Fn(&Word) -> Option<Word> + Send + Sync + 'static) -> Self {
        CircuitFamily { f: Arc::new(f), cache: Arc::default() }
    }

    pub fn at(&self, n: usize) -> Result<Arc<Circuit>, CircuitError> {
        if let Some(c) = self.cache.lock().unwrap().get(&n) {
            return Ok(Arc::clone(c));
        }
        let c = Arc::new(synthesize_circuit(|x| (self.f)(x), n)?);
        self.cache.lock().unwrap().insert(n, Arc::clone(&c));
        Ok(c)
    }
}

/// `α(x) = (C_|x|, x)` and `β(C, y) = y`, so that `f = β ∘ ev_circ ∘ α`
/// for length-preserving total `f`.
pub fn circ_reduce(family: &CircuitFamily) -> (WordFunction, WordFunction) {
    let fam = family.clone();
    let alpha = WordFunction::new("α[circuit]", PolyBound::new(2, 1u32 << 12).unwrap(), Provenance::Combinator, move |x| {
        Some(pair(&fam.at(x.len()).ok()?.code(), x))
    });
    let beta = WordFunction::new("β[circuit]", PolyBound::new(2, 12u32).unwrap(), Provenance::Combinator, |t| {
        let (u, y) = unpair(t)?;
        let c = Circuit::decode(&u)?;
        (c.arity() == y.len()).then_some(y)
    });
    (alpha, beta)
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "% arity {}", self.arity)?;
        for (i, g) in self.gates.iter().enumerate() {
            match g {
                Gate::Input(k) => writeln!(f, "g{i} = IN {k}")?,
                Gate::Const(b) => writeln!(f, "g{i} = CONST {}", *b as u8)?,
                Gate::Not(a) => writeln!(f, "g{i} = NOT g{a}")?,
                Gate::And(a, b) => writeln!(f, "g{i} = AND g{a} g{b}")?,
                Gate::Or(a, b) => writeln!(f, "g{i} = OR g{a} g{b}")?,
            }
        }
        let outs: Vec<String> = self.outputs.iter().map(|o| format!("g{o}")).collect();
        writeln!(f, "OUT {}", outs.join(" "))
    }
}

impl FromStr for Circuit {
    type Err = CircuitError;

    /// Gates must be numbered `g0, g1, …` in order. The arity is the number
    /// of outputs.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut gates = Vec::new();
        let mut outputs = None;
        for (i, raw) in s.lines().enumerate() {
            let err = |msg: &str| CircuitError::Parse { line: i + 1, msg: msg.to_string() };
            let line = raw.split('%').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let wire = |t: &str| t.strip_prefix('g').and_then(|n| n.parse::<usize>().ok()).ok_or_else(|| err("bad wire"));
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "OUT" {
                outputs = Some(toks[1..].iter().map(|t| wire(t)).collect::<Result<Vec<_>, _>>()?);
                continue;
            }
            if toks.len() < 3 || toks[1] != "=" || wire(toks[0])? != gates.len() {
                return Err(err("expected `g<next id> = …`"));
            }
            let num = |t: Option<&&str>| t.and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| err("bad number"));
            let operand = |k: usize| toks.get(k).ok_or_else(|| err("missing operand")).and_then(|t| wire(t));
            gates.push(match toks[2] {
                "IN" => Gate::Input(num(toks.get(3))?),
                "CONST" => Gate::Const(num(toks.get(3))? == 1),
                "NOT" => Gate::Not(operand(3)?),
                "AND" => Gate::And(operand(3)?, operand(4)?),
                "OR" => Gate::Or(operand(3)?, operand(4)?),
                _ => return Err(err("unknown gate")),
            });
        }
        let outputs = outputs.ok_or(CircuitError::Parse { line: 0, msg: "missing OUT line".into() })?;
        Circuit::new(outputs.len(), gates, outputs)
    }
}

/// A formula in conjunctive normal form with clauses of at most three literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    vars: usize,
    /// DIMACS literals: `v + 1` for `x_v`, `-(v + 1)` for its negation.
    clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self, CircuitError> {
        for c in &clauses {
            if c.len() > 3 {
                return Err(CircuitError::WideClause(c.len()));
            }
            if let Some(&l) = c.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > vars) {
                return Err(CircuitError::Literal(l));
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    pub fn eval(&self, tau: &Word) -> Result<bool, CircuitError> {
        if tau.len() != self.vars {
            return Err(CircuitError::Arity { expected: self.vars, got: tau.len() });
        }
        let lit = |l: i64| tau.bits()[l.unsigned_abs() as usize - 1] == (l > 0);
        Ok(self.clauses.iter().all(|c| c.iter().any(|&l| lit(l))))
    }
}

/// `(B, τ) ↦ (B, B(τ))`.
pub fn critical_formula_map(b: &CnfFormula, tau: &Word) -> Result<(CnfFormula, bool), CircuitError> {
    Ok((b.clone(), b.eval(tau)?))
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for c in &self.clauses {
            let lits: Vec<String> = c.iter().map(i64::to_string).collect();
            writeln!(f, "{} 0", lits.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for CnfFormula {
    type Err = CircuitError;

    /// DIMACS: comment lines start with `c`, a `p cnf <vars> <clauses>`
    /// header, clauses terminated by `0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut vars = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let err = || CircuitError::Parse { line: i + 1, msg: "bad DIMACS line".into() };
            if let Some(rest) = line.strip_prefix("p cnf") {
                vars = Some(rest.split_whitespace().next().and_then(|v| v.parse().ok()).ok_or_else(err)?);
                continue;
            }
            for tok in line.split_whitespace() {
                match tok.parse::<i64>().map_err(|_| err())? {
                    0 => clauses.push(std::mem::take(&mut current)),
                    l => current.push(l),
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        CnfFormula::new(vars.ok_or(CircuitError::Parse { line: 0, msg: "missing `p cnf` header".into() })?, clauses)
    }
}

/// Splits `0^n 1 x` into `(n, x)`.
fn split_unary(t: &Word) -> Option<(usize, Word)> {
    let n = t.bits().iter().position(|&b| b)?;
    Some((n, t.suffix_from(n + 1)?))
}

/// `ℓ_f(0^n 1 x) = 0^|x| 1 f(x)` when `n = |f(x)|`; length preserving.
pub fn lp_lift(f: &WordFunction) -> WordFunction {
    let g = f.clone();
    WordFunction::new(format!("ℓ[{}]", f.name()), PolyBound::linear12(), Provenance::Combinator, move |t| {
        let (n, x) = split_unary(t)?;
        let y = g.apply(&x)?;
        (y.len() == n).then(|| Word::zeros(x.len()).with(true).concat(&y))
    })
}

/// `ℓ_f` made total on each length by sending undefined inputs to `0^n`,
/// which is never an image of `ℓ_f`.
pub fn lp_lift_total(f: &WordFunction) -> impl Fn(&Word) -> Option<Word> + Send + Sync + 'static {
    let l = lp_lift(f);
    move |t| Some(l.apply(t).unwrap_or_else(|| Word::zeros(t.len())))
}

/// `α(x) = 0^|f(x)| 1 x`.
pub fn lp_alpha(f: &WordFunction) -> WordFunction {
    let g = f.clone();
    let bound = PolyBound::compose(f.bound(), &PolyBound::new(1, 24u32).unwrap());
    WordFunction::new("α[ℓ]", bound, Provenance::Combinator, move |x| {
        Some(Word::zeros(g.apply(x)?.len()).with(true).concat(x))
    })
}

/// `β(0^m 1 z) = z`.
pub fn lp_beta() -> WordFunction {
    WordFunction::new("β[ℓ]", PolyBound::linear12(), Provenance::Combinator, |t| split_unary(t).map(|(_, z)| z))
}

/// Inverts `f` with an inverse of `ℓ_f` that can also be asked whether a
/// word is in its domain: the first `m ≤ p_f(|y|)` with `0^m 1 y` in the
/// domain fixes the preimage length, then the inverse supplies it.
pub fn weak_turing_invert(
    pf: &PolyBound,
    ell_inv_domain: impl Fn(&Word) -> bool,
    ell_inv: impl Fn(&Word) -> Option<Word>,
    y: &Word,
) -> Option<Word> {
    let limit = pf.eval_usize(y.len()).to_usize()?;
    let m = (0..=limit).find(|&m| ell_inv_domain(&Word::zeros(m).with(true).concat(y)))?;
    let z = ell_inv(&Word::zeros(m).with(true).concat(y))?;
    split_unary(&z).map(|(_, x)| x)
}

/// `e_i(w, x) = (w, φ_w(x))` when `x` and `φ_w(x)` both start with `i`,
/// have the same length, and `p_w ≤ q`; otherwise `(w, 0^|x|)`.
pub fn critical_pair(i: bool, q: &PolyBound) -> WordFunction {
    let q = q.clone();
    WordFunction::new(format!("e{}", i as u8), PolyBound::linear12(), Provenance::Combinator, move |t| {
        let (u, x) = unpair(t)?;
        let y = parse_program(&u)
            .ok()
            .filter(|w| w.bound().leq(&q) && x.first() == Some(i))
            .and_then(|w| run_counted(&w, &x).output())
            .filter(|y| y.len() == x.len() && y.first() == Some(i));
        Some(pair(&u, &y.unwrap_or_else(|| Word::zeros(x.len()))))
    })
}
