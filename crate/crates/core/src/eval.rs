//! The restricted evaluator, generator words, and the compilers between
//! generator words and programs.
//!
//! # The generator pipeline
//!
//! [`star_evaluate`] computes `φ_w(x)` using only the eight generators:
//!
//! ```text
//! π′^(2|w′|+2) ∘ contr ∘ recontr^(2m) ∘ ev ∘ reexpand^m ∘ expand ∘ π_(header(ex^m w))
//! ```
//!
//! with `m = bitlength(a + k)`. The header announces `ex^m(w)`; expand and
//! the `m` reexpands move it to `ex^(2m+1)(w)`, whose bound has come down to
//! `12n + 12`, so the evaluator for `q₂(n) = c·n² + c` accepts it. The
//! padding gives the run its time: the budget is measured on the padded
//! input. The first `m` recontrs undo the reexpands and the next `m` shrink
//! the block far enough that contr's guard `h ≤ 4|y|²+7|y|+2` holds even
//! when the output is much shorter than the input. Then `2m + 1` co steps
//! have cancelled `2m + 1` ex steps and the header is dropped.
//!
//! One difference to a direct run remains: the evaluator checks balance on
//! padded lengths, so a pipeline can be defined where
//! [`run_counted`](crate::machine::run_counted) reports a balance violation.
//! With `a ≥ 12` that needs inputs longer than 12 bits, far outside the
//! tested range.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::bounds::PolyBound;
use crate::machine::{
    parse_program, run_counted_with, serialize_program, stock, Body, Builtin, PolyProgram, Provenance, RunLimits,
    WordFunction,
};
use crate::padding::{self, co_program, ex_program, PaddedWord};
use crate::words::{header, pair, pair_sparse, unpair, unpair_sparse, SparseWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("q₂ constant must be at least 12, got {0}")]
    SmallConstant(u64),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("a generator word needs at least one letter")]
    EmptyWord,
    #[error("hosting the padding generators inside ev needs c ≥ 60, got {0}")]
    CoreNeedsLargerC(u64),
}

/// `q₂(n) = c·n² + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Q2Config {
    c: u64,
}

impl Q2Config {
    /// # Panics
    /// When `c < 12`; use [`Q2Config::try_new`] for untrusted input.
    pub fn new(c: u64) -> Self {
        Self::try_new(c).expect("c ≥ 12")
    }

    pub fn try_new(c: u64) -> Result<Self, EvalError> {
        if c < 12 {
            return Err(EvalError::SmallConstant(c));
        }
        Ok(Q2Config { c })
    }

    pub fn c(self) -> u64 {
        self.c
    }

    pub fn bound(self) -> PolyBound {
        PolyBound::new(2, self.c).unwrap()
    }
}

impl Default for Q2Config {
    fn default() -> Self {
        Q2Config { c: 12 }
    }
}

/// Evaluates `header(w)·x ↦ header(w)·φ_w(x)` for programs with `p_w ≤ q`,
/// returning the inner run's step count alongside.
pub fn ev_counted(q: &PolyBound, t: &SparseWord, limits: RunLimits) -> (Option<SparseWord>, BigUint) {
    let Some((u, x)) = unpair_sparse(t) else { return (None, BigUint::zero()) };
    let Ok(w) = parse_program(&u) else { return (None, BigUint::zero()) };
    if !w.bound().leq(q) {
        return (None, BigUint::zero());
    }
    let out = run_counted_with(&w, &x, limits);
    (out.result.ok().map(|y| pair_sparse(&u, &y)), out.steps_used)
}

pub fn ev_sparse(q: &PolyBound, t: &SparseWord) -> Option<SparseWord> {
    ev_counted(q, t, RunLimits::default()).0
}

/// `ev_q`: `header(w)·x ↦ header(w)·φ_w(x)`, defined when `p_w ≤ q` and the run outputs.
pub fn ev_qc(q: &PolyBound, t: &Word) -> Option<Word> {
    ev_sparse(q, &SparseWord::from(t))?.to_word()
}

/// `ev_q` as a [`WordFunction`].
pub fn ev_function(cfg: Q2Config) -> WordFunction {
    let q = cfg.bound();
    WordFunction::sparse(format!("ev[c={}]", cfg.c), Builtin::Ev { c: cfg.c }.bound(), Provenance::Combinator, move |t| {
        ev_sparse(&q, t)
    })
}

/// The injective variant: `header(w)·x ↦ header(w)·encode3(y)·11·x`.
pub fn e_qc(q: &PolyBound, t: &Word) -> Option<Word> {
    let (u, x) = unpair(t)?;
    let y = ev_qc(q, t).and_then(|r| unpair(&r)).map(|(_, y)| y)?;
    Some(pair(&u, &pair(&y, &x)))
}

/// Projection turning [`e_qc`] output into [`ev_qc`] output; checks both
/// balance directions against `q`.
pub fn e_projection(q: &PolyBound, t: &Word) -> Option<Word> {
    let (u, rest) = unpair(t)?;
    let (y, x) = unpair(&rest)?;
    let (ny, nx) = (BigUint::from(y.len()), BigUint::from(x.len()));
    (ny <= q.eval(&nx) && nx <= q.eval(&ny)).then(|| pair(&u, &y))
}

/// Explicit inverse of [`e_qc`]: read the input back out of the output.
pub fn e_inverse(t: &Word) -> Option<Word> {
    let (u, rest) = unpair(t)?;
    let (_, x) = unpair(&rest)?;
    Some(pair(&u, &x))
}

/// A letter of a generator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Pi0,
    Pi1,
    Pi1Prime,
    Expand,
    Reexpand,
    Contr,
    Recontr,
    Ev,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::Pi0,
        Generator::Pi1,
        Generator::Pi1Prime,
        Generator::Ev,
        Generator::Expand,
        Generator::Reexpand,
        Generator::Contr,
        Generator::Recontr,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Generator::Pi0 => "pi0",
            Generator::Pi1 => "pi1",
            Generator::Pi1Prime => "pi1'",
            Generator::Expand => "expand",
            Generator::Reexpand => "reexpand",
            Generator::Contr => "contr",
            Generator::Recontr => "recontr",
            Generator::Ev => "ev",
        }
    }

    pub fn apply(self, t: &SparseWord, cfg: Q2Config) -> Option<SparseWord> {
        match self {
            Generator::Pi0 => Some(t.prepend(&Word::from(vec![false]))),
            Generator::Pi1 => Some(t.prepend(&Word::from(vec![true]))),
            Generator::Pi1Prime => t.drop_prefix(&1u32.into()),
            Generator::Expand => padding::expand(t),
            Generator::Reexpand => padding::reexpand(t),
            Generator::Contr => padding::contr(t),
            Generator::Recontr => padding::recontr(t),
            Generator::Ev => ev_sparse(&cfg.bound(), t),
        }
    }

    /// The program realizing this generator inside a compiled word.
    pub fn program(self, cfg: Q2Config) -> PolyProgram {
        let builtin = |b: Builtin| PolyProgram::new(Body::Builtin(b), b.bound(), 0).unwrap();
        match self {
            Generator::Pi0 => stock::prepend(false),
            Generator::Pi1 => stock::prepend(true),
            Generator::Pi1Prime => stock::drop_first(),
            Generator::Expand => builtin(Builtin::Expand),
            Generator::Reexpand => builtin(Builtin::Reexpand),
            Generator::Contr => builtin(Builtin::Contr),
            Generator::Recontr => builtin(Builtin::Recontr),
            Generator::Ev => builtin(Builtin::Ev { c: cfg.c }),
        }
    }

    fn is_padding(self) -> bool {
        matches!(self, Generator::Expand | Generator::Reexpand | Generator::Contr | Generator::Recontr)
    }
}

impl FromStr for Generator {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .into_iter()
            .find(|g| g.token() == s)
            .ok_or_else(|| EvalError::UnknownGenerator(s.to_string()))
    }
}

/// A non-empty composite of generators, written outermost first:
/// `pi1 pi0` maps `x` to `10x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord(Vec<Generator>);

impl GeneratorWord {
    pub fn new(letters: Vec<Generator>) -> Result<Self, EvalError> {
        if letters.is_empty() {
            return Err(EvalError::EmptyWord);
        }
        Ok(GeneratorWord(letters))
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `π_v` spelled as `π_{v1} … π_{vn}`.
    pub fn affix(v: &Word) -> Vec<Generator> {
        v.bits().iter().map(|&b| if b { Generator::Pi1 } else { Generator::Pi0 }).collect()
    }

    /// Replaces each padding generator `g` by `π′^|h| ∘ ev ∘ π_h` where `h`
    /// announces a one-builtin program for `g`, leaving only `π₀, π₁, π₁′, ev`.
    pub fn to_core(&self, cfg: Q2Config) -> Result<GeneratorWord, EvalError> {
        if self.0.iter().any(|g| g.is_padding()) && cfg.c < 60 {
            return Err(EvalError::CoreNeedsLargerC(cfg.c));
        }
        let mut out = Vec::new();
        for &g in &self.0 {
            if g.is_padding() {
                let h = header(&serialize_program(&g.program(cfg)));
                out.extend(std::iter::repeat(Generator::Pi1Prime).take(h.len()));
                out.push(Generator::Ev);
                out.extend(Self::affix(&h));
            } else {
                out.push(g);
            }
        }
        Ok(GeneratorWord(out))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self.0.iter().map(|g| g.token()).collect();
        f.write_str(&tokens.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorWord::new(s.split_whitespace().map(str::parse).collect::<Result<_, _>>()?)
    }
}

/// `Π s (x)`: generators applied right to left.
pub fn eval_generator_word_sparse(s: &GeneratorWord, x: &SparseWord, cfg: Q2Config) -> Option<SparseWord> {
    s.0.iter().rev().try_fold(x.clone(), |t, g| g.apply(&t, cfg))
}

pub fn eval_generator_word(s: &GeneratorWord, x: &Word, cfg: Q2Config) -> Option<Word> {
    eval_generator_word_sparse(s, &SparseWord::from(x), cfg)?.to_word()
}

/// The length-lex first `x` with `|x| ≤ max_len` where the two words
/// disagree in value or definedness. `None` is evidence, not proof.
pub fn equivalence_search(s1: &GeneratorWord, s2: &GeneratorWord, max_len: usize, cfg: Q2Config) -> Option<Word> {
    Word::all_up_to(max_len).find(|x| eval_generator_word(s1, x, cfg) != eval_generator_word(s2, x, cfg))
}

/// The shape of the pipeline for one program.
#[derive(Clone, Debug)]
pub struct StarPlan {
    /// `bitlength(a + k)`.
    pub m: u64,
    /// `header(ex^m(w))`, prepended first.
    pub affix: Word,
    /// `co^(2m+1)(ex^(2m+1)(w))`, the program announced at the end.
    pub w_prime: PolyProgram,
    /// `2|w′| + 2`, the header length dropped at the end.
    pub drop: usize,
}

pub fn star_plan(w: &PolyProgram) -> StarPlan {
    let m = w.bound().padding_rounds();
    let ex_m = (0..m).fold(w.clone(), |p, _| ex_program(&p));
    let ex_full = (0..=m).fold(ex_m.clone(), |p, _| ex_program(&p));
    let w_prime = (0..=2 * m).fold(ex_full, |p, _| co_program(&p).expect("depth ≥ 1"));
    let drop = 2 * serialize_program(&w_prime).len() + 2;
    StarPlan { m, affix: header(&serialize_program(&ex_m)), w_prime, drop }
}

/// One stage of a traced pipeline run.
#[derive(Clone, Debug)]
pub struct StarStage {
    pub name: &'static str,
    /// Pad size when the value is a padded word.
    pub pad: Option<BigUint>,
}

/// Pipeline evaluation with the pad size after each stage.
pub fn star_evaluate_traced(w: &PolyProgram, x: &Word, cfg: Q2Config) -> (Option<Word>, Vec<StarStage>) {
    let plan = star_plan(w);
    let mut trace = Vec::new();
    let mut record = |name, t: &SparseWord| {
        trace.push(StarStage { name, pad: PaddedWord::parse(t).map(|p| p.pad) });
    };
    let m = plan.m as usize;
    let mut stages: Vec<(&'static str, Box<dyn Fn(&SparseWord) -> Option<SparseWord>>)> = Vec::new();
    stages.push(("expand", Box::new(padding::expand)));
    for _ in 0..m {
        stages.push(("reexpand", Box::new(padding::reexpand)));
    }
    let q = cfg.bound();
    stages.push(("ev", Box::new(move |t| ev_sparse(&q, t))));
    for _ in 0..2 * m {
        stages.push(("recontr", Box::new(padding::recontr)));
    }
    stages.push(("contr", Box::new(padding::contr)));
    let drop = BigUint::from(plan.drop);
    stages.push(("drop", Box::new(move |t| t.drop_prefix(&drop))));

    let mut t = SparseWord::from(x).prepend(&plan.affix);
    record("affix", &t);
    for (name, f) in &stages {
        match f(&t) {
            Some(next) => {
                t = next;
                record(name, &t);
            }
            None => return (None, trace),
        }
    }
    (t.to_word(), trace)
}

/// `φ_w(x)` computed by the generator pipeline.
///
/// Programs with a nonzero padding depth are outside its reach (their
/// semantics strips a block the pipeline does not add) and give `None`.
pub fn star_evaluate(w: &PolyProgram, x: &Word, cfg: Q2Config) -> Option<Word> {
    if w.pad_depth > 0 {
        return None;
    }
    star_evaluate_traced(w, x, cfg).0
}

/// A word denoting the empty function: `π₁` puts a `1` in front, and no
/// header starts with `1` unless it is the empty (unparsable) one.
pub fn empty_function_word() -> GeneratorWord {
    GeneratorWord(vec![Generator::Contr, Generator::Pi1])
}

/// The pipeline of [`star_evaluate`] as a literal generator word.
///
/// Words that are not depth-0 programs compile to [`empty_function_word`].
/// The length is `(2|w′|+2) + 1 + 2m + 1 + m + 1 + |affix|`.
pub fn compile_beta(u: &Word) -> GeneratorWord {
    let Ok(w) = parse_program(u) else { return empty_function_word() };
    if w.pad_depth > 0 {
        return empty_function_word();
    }
    let plan = star_plan(&w);
    let m = plan.m as usize;
    let mut s = vec![Generator::Pi1Prime; plan.drop];
    s.push(Generator::Contr);
    s.extend(std::iter::repeat(Generator::Recontr).take(2 * m));
    s.push(Generator::Ev);
    s.extend(std::iter::repeat(Generator::Reexpand).take(m));
    s.push(Generator::Expand);
    s.extend(GeneratorWord::affix(&plan.affix));
    GeneratorWord(s)
}

/// A program computing `Π s`: the generators' programs run in sequence,
/// under the left fold of bound composition.
pub fn compile_alpha(s: &GeneratorWord, cfg: Q2Config) -> PolyProgram {
    let applied: Vec<Generator> = s.0.iter().rev().copied().collect();
    let programs: Vec<PolyProgram> = applied.iter().map(|g| g.program(cfg)).collect();
    let bound = programs[1..]
        .iter()
        .fold(programs[0].bound().clone(), |acc, p| PolyBound::compose(&acc, p.bound()));
    let body = Body::Seq(programs.into_iter().map(|p| p.body).collect());
    PolyProgram::new(body, bound, 0).expect("composed coefficient ≥ 12")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::bound;
    use crate::machine::run_counted;
    use crate::words::w;

    fn gw(s: &str) -> GeneratorWord {
        s.parse().unwrap()
    }

    #[test]
    fn evaluator_contract() {
        let id = stock::identity();
        let u = serialize_program(&id);
        let q = bound(2, 12);
        assert_eq!(ev_qc(&q, &pair(&u, &w("01"))), Some(pair(&u, &w("01"))));
        let big = serialize_program(&id.with_bound(bound(3, 12)).unwrap());
        assert_eq!(ev_qc(&q, &pair(&big, &w("01"))), None);
        assert_eq!(ev_qc(&q, &w("10")), None);
    }

    #[test]
    fn regular_variant() {
        let u = serialize_program(&stock::identity());
        let q = bound(2, 12);
        let t = pair(&u, &w("0"));
        assert_eq!(e_qc(&q, &t), Some(pair(&u, &pair(&w("0"), &w("0")))));
        for (_, p) in stock::corpus() {
            let u = serialize_program(&p);
            for x in Word::all_up_to(4) {
                let t = pair(&u, &x);
                let e = e_qc(&q, &t);
                assert_eq!(e.as_ref().and_then(|e| e_projection(&q, e)), ev_qc(&q, &t));
                if let Some(e) = e {
                    assert_eq!(e_qc(&q, &e_inverse(&e).unwrap()), Some(e));
                }
            }
        }
    }

    #[test]
    fn generator_words() {
        let cfg = Q2Config::default();
        assert_eq!(eval_generator_word(&gw("pi1 pi0"), &w("1"), cfg), Some(w("101")));
        assert_eq!(eval_generator_word(&gw("ev"), &w("1"), cfg), None);
        assert!("".parse::<GeneratorWord>().is_err());
        assert_eq!(equivalence_search(&gw("pi0"), &gw("pi1"), 4, cfg), Some(w("")));
        assert_eq!(equivalence_search(&gw("pi1' pi0"), &gw("pi1' pi1"), 5, cfg), None);
        assert_eq!(gw("pi1' ev").to_string(), "pi1' ev");
    }

    #[test]
    fn alpha_examples() {
        let cfg = Q2Config::default();
        let p = compile_alpha(&gw("pi0"), cfg);
        assert_eq!(run_counted(&p, &w("1")).output(), Some(w("01")));
        let p = compile_alpha(&gw("pi1' pi1'"), cfg);
        assert_eq!(p.bound(), &bound(1, 312));
    }

    #[test]
    fn star_examples() {
        let cfg = Q2Config::default();
        assert_eq!(star_evaluate(&stock::identity(), &w("0101"), cfg), Some(w("0101")));
        assert_eq!(star_evaluate(&stock::constant_empty(), &w("1"), cfg), Some(w("")));
        assert_eq!(star_evaluate(&stock::negation(), &w("10"), cfg), Some(w("01")));
    }

    #[test]
    fn malformed_words_compile_to_nothing() {
        let s = compile_beta(&w("1010"));
        assert_eq!(s, empty_function_word());
        let cfg = Q2Config::default();
        assert!(Word::all_up_to(8).all(|x| eval_generator_word(&s, &x, cfg).is_none()));
    }
}
