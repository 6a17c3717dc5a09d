//! The counted Turing machine, polynomial programs and their serialization,
//! choice-sequence machines, and the [`WordFunction`] interface.

mod choice;
mod function;
mod grammar;
mod run;
pub mod stock;
mod text;
mod tm;

pub use choice::{choice_run, compile_fm, contains_one, fm, guess_double_zero, ChoiceProgram, ChoiceRule};
pub use function::{Provenance, WordFunction};
pub use grammar::{parse_program, serialize_program};
pub use run::{run_counted, run_counted_sparse, run_counted_with, Reject, RunLimits, RunOutcome};
pub use text::{parse_text, render_text};
pub use tm::{Move, Symbol, Transition, TuringProgram, MAX_TAPES};

use num_bigint::BigUint;
use thiserror::Error;

use crate::bounds::PolyBound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("tape count {0} outside 1..={max}", max = MAX_TAPES)]
    TapeCount(usize),
    #[error("state index out of range")]
    StateOutOfRange,
    #[error("rule from q{state} has the wrong number of tape entries")]
    Arity { state: usize },
    #[error("the accept state may not have outgoing rules")]
    RuleFromAccept,
    #[error("rule from q{state} moves left of an endmarker")]
    LeftOfEndmarker { state: usize },
    #[error("rule from q{state} writes or overwrites an endmarker")]
    Endmarker { state: usize },
    #[error("two rules from q{state} read the same symbols")]
    Nondeterministic { state: usize },
    #[error("a counted program needs a ≥ 12, got {0}")]
    CoefficientBelow12(BigUint),
    #[error("malformed program word: {0}")]
    Malformed(&'static str),
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
}

/// Operations with a fixed cost formula instead of a transition table.
///
/// They let generator compositions be expressed as programs without
/// synthesizing transition tables for the padding arithmetic. Each charges
/// `|input| + |output|` steps, plus the inner run for `Ev`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Expand,
    Reexpand,
    Contr,
    Recontr,
    /// The restricted evaluator for `q₂(n) = c·n² + c`.
    Ev { c: u64 },
}

impl Builtin {
    pub(crate) fn index(self) -> usize {
        match self {
            Builtin::Expand => 0,
            Builtin::Reexpand => 1,
            Builtin::Contr => 2,
            Builtin::Recontr => 3,
            Builtin::Ev { .. } => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Expand => "expand",
            Builtin::Reexpand => "reexpand",
            Builtin::Contr => "contr",
            Builtin::Recontr => "recontr",
            Builtin::Ev { .. } => "ev",
        }
    }

    /// A bound that dominates the builtin's cost and both balance directions.
    pub fn bound(self) -> PolyBound {
        match self {
            Builtin::Ev { c } => PolyBound::new(2, 5 * c.max(12)).unwrap(),
            _ => PolyBound::new(2, 60u32).unwrap(),
        }
    }
}

/// What a program does between reading its input and producing output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Body {
    Machine(TuringProgram),
    /// Runs the parts left to right, each on the previous output.
    Seq(Vec<Body>),
    Builtin(Builtin),
}

/// A body with its bounding polynomial and padding depth.
///
/// Depth `d > 0` means the input is expected as `0^h 11 z`: one block is
/// stripped, the body runs on `z`, and `0^h 11` is put back in front of the
/// result. The time budget is measured on the whole padded input; that is
/// the point of padding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyProgram {
    pub body: Body,
    bound: PolyBound,
    pub pad_depth: u32,
}

impl PolyProgram {
    pub fn new(body: Body, bound: PolyBound, pad_depth: u32) -> Result<Self, ProgramError> {
        if bound.a() < &BigUint::from(12u32) {
            return Err(ProgramError::CoefficientBelow12(bound.a().clone()));
        }
        Ok(PolyProgram { body, bound, pad_depth })
    }

    pub fn machine(tm: TuringProgram, bound: PolyBound) -> Result<Self, ProgramError> {
        Self::new(Body::Machine(tm), bound, 0)
    }

    pub fn bound(&self) -> &PolyBound {
        &self.bound
    }

    /// Same body with another bound (the coefficient must stay ≥ 12).
    pub fn with_bound(&self, bound: PolyBound) -> Result<Self, ProgramError> {
        Self::new(self.body.clone(), bound, self.pad_depth)
    }
}
