use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{Body, Builtin, PolyProgram, Symbol, TuringProgram, MAX_TAPES};
use crate::words::{Segment, SparseWord, Word};

/// Why a counted run produced no output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reject {
    /// The counter ran out.
    Timeout,
    /// Output too short for the input: `|x| > p(|y|)`.
    BalanceViolation,
    /// The machine stopped outside its accept state.
    NoOutput,
    /// A padded program got an input without the `0^h 11` block.
    MalformedInput,
    /// The host's simulation cap was reached before the counter.
    StepCap,
}

impl fmt::Display for Reject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reject::Timeout => "timeout",
            Reject::BalanceViolation => "balanceViolation",
            Reject::NoOutput => "noOutput",
            Reject::MalformedInput => "malformedInput",
            Reject::StepCap => "stepCap",
        })
    }
}

/// Host-side safety limits. Counter budgets of padded runs are astronomical,
/// so transition-table simulation stops at `step_cap` regardless.
#[derive(Clone, Copy, Debug)]
pub struct RunLimits {
    pub step_cap: u64,
}

impl Default for RunLimits {
    fn default() -> Self {
        RunLimits { step_cap: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub result: Result<SparseWord, Reject>,
    pub steps_used: BigUint,
    /// The execution share of the counter for this input.
    pub budget: BigUint,
}

impl RunOutcome {
    /// The output as a plain word, if there is one and it is small enough.
    pub fn output(&self) -> Option<Word> {
        self.result.as_ref().ok().and_then(SparseWord::to_word)
    }

    pub fn is_output(&self) -> bool {
        self.result.is_ok()
    }
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Ok(y) => write!(f, "{y}"),
            Err(r) => write!(f, "REJECT({r})"),
        }
    }
}

pub fn run_counted(w: &PolyProgram, x: &Word) -> RunOutcome {
    run_counted_with(w, &SparseWord::from(x), RunLimits::default())
}

pub fn run_counted_sparse(w: &PolyProgram, x: &SparseWord) -> RunOutcome {
    run_counted_with(w, x, RunLimits::default())
}

/// Runs `w` on `x` under its polynomial counter.
pub fn run_counted_with(w: &PolyProgram, x: &SparseWord, limits: RunLimits) -> RunOutcome {
    let n = x.len();
    let budget = w.bound().counter_budget(&n).expect("programs carry a ≥ 12").exec;
    let mut steps = BigUint::zero();
    let result = (|| {
        if w.pad_depth == 0 {
            return exec_body(&w.body, x, &budget, &mut steps, limits);
        }
        let (h, rest) = x.strip_leading_zeros();
        let z = rest.strip_prefix(&Word::from(vec![true, true])).ok_or(Reject::MalformedInput)?;
        let y = exec_body(&w.body, &z, &budget, &mut steps, limits)?;
        Ok(SparseWord::zeros(h).append(&Word::from(vec![true, true])).concat(&y))
    })()
    .and_then(|y| if n > w.bound().eval(&y.len()) { Err(Reject::BalanceViolation) } else { Ok(y) });
    RunOutcome { result, steps_used: steps, budget }
}

fn exec_body(
    body: &Body,
    input: &SparseWord,
    budget: &BigUint,
    steps: &mut BigUint,
    limits: RunLimits,
) -> Result<SparseWord, Reject> {
    let remaining = budget - &*steps;
    match body {
        Body::Machine(tm) => {
            let cap_binds = remaining > BigUint::from(limits.step_cap);
            let limit = remaining.to_u64().unwrap_or(u64::MAX).min(limits.step_cap);
            let (halt, used) = simulate(tm, input, limit);
            *steps += used;
            match halt {
                Halt::Accept(out) => Ok(SparseWord::from(Word::from(out))),
                Halt::Stuck => Err(Reject::NoOutput),
                Halt::Exhausted if cap_binds => Err(Reject::StepCap),
                Halt::Exhausted => Err(Reject::Timeout),
            }
        }
        Body::Seq(parts) => parts.iter().try_fold(input.clone(), |acc, part| exec_body(part, &acc, budget, steps, limits)),
        Body::Builtin(b) => {
            let (out, inner) = apply_builtin(*b, input, limits);
            let cost = input.len() + inner + out.as_ref().map_or_else(BigUint::zero, SparseWord::len);
            if cost > remaining {
                *steps = budget.clone();
                return Err(Reject::Timeout);
            }
            *steps += cost;
            out.ok_or(Reject::NoOutput)
        }
    }
}

/// Applies a builtin; the second component counts inner machine steps.
pub(crate) fn apply_builtin(b: Builtin, t: &SparseWord, limits: RunLimits) -> (Option<SparseWord>, BigUint) {
    use crate::padding;
    match b {
        Builtin::Expand => (padding::expand(t), BigUint::zero()),
        Builtin::Reexpand => (padding::reexpand(t), BigUint::zero()),
        Builtin::Contr => (padding::contr(t), BigUint::zero()),
        Builtin::Recontr => (padding::recontr(t), BigUint::zero()),
        Builtin::Ev { c } => crate::eval::ev_counted(&crate::eval::Q2Config::new(c).bound(), t, limits),
    }
}

enum Halt {
    Accept(Vec<bool>),
    Stuck,
    Exhausted,
}

/// Read-only view of the input plus a sparse overlay of writes.
struct InputTape<'a> {
    starts: Vec<usize>,
    pieces: Vec<Segment<'a>>,
    overlay: HashMap<usize, Symbol>,
}

impl<'a> InputTape<'a> {
    fn new(x: &'a SparseWord) -> Self {
        let mut starts = Vec::new();
        let mut pieces = Vec::new();
        let mut at = 1usize;
        for seg in x.segments() {
            starts.push(at);
            let len = match seg {
                Segment::Bits(b) => b.len(),
                Segment::Zeros(n) => n.to_usize().unwrap_or(usize::MAX),
            };
            at = at.saturating_add(len);
            pieces.push(seg);
        }
        starts.push(at);
        InputTape { starts, pieces, overlay: HashMap::new() }
    }

    fn read(&self, cell: usize) -> Symbol {
        if cell == 0 {
            return Symbol::End;
        }
        if let Some(&s) = self.overlay.get(&cell) {
            return s;
        }
        if cell >= *self.starts.last().unwrap() {
            return Symbol::Blank;
        }
        let i = self.starts.partition_point(|&s| s <= cell) - 1;
        match self.pieces[i] {
            Segment::Bits(b) => Symbol::from_bit(b[cell - self.starts[i]]),
            Segment::Zeros(_) => Symbol::Zero,
        }
    }
}

fn simulate(tm: &TuringProgram, input: &SparseWord, limit: u64) -> (Halt, u64) {
    let k = tm.tapes();
    let mut tape0 = InputTape::new(input);
    let mut work: Vec<Vec<Symbol>> = (1..k).map(|_| vec![Symbol::End]).collect();
    let mut heads = [1usize; MAX_TAPES];
    let mut read = [Symbol::Blank; MAX_TAPES];
    let mut out = Vec::new();
    let mut state = tm.start();
    let mut steps = 0u64;
    loop {
        if state == tm.accept() {
            return (Halt::Accept(out), steps);
        }
        if steps >= limit {
            return (Halt::Exhausted, steps);
        }
        read[0] = tape0.read(heads[0]);
        for i in 1..k {
            read[i] = work[i - 1].get(heads[i]).copied().unwrap_or(Symbol::Blank);
        }
        let Some(t) = tm.lookup(state, &read[..k]) else {
            return (Halt::Stuck, steps);
        };
        for i in 0..k {
            if t.write[i] != read[i] {
                if i == 0 {
                    tape0.overlay.insert(heads[0], t.write[0]);
                } else {
                    let cells = &mut work[i - 1];
                    if cells.len() <= heads[i] {
                        cells.resize(heads[i] + 1, Symbol::Blank);
                    }
                    cells[heads[i]] = t.write[i];
                }
            }
            match t.moves[i] {
                super::Move::Left => heads[i] -= 1,
                super::Move::Stay => {}
                super::Move::Right => heads[i] += 1,
            }
        }
        if let Some(b) = t.emit {
            out.push(b);
        }
        state = t.to;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::bound;
    use crate::machine::stock;
    use crate::words::w;

    #[test]
    fn identity_uses_exact_budget() {
        let out = run_counted(&stock::identity(), &w("0101"));
        assert_eq!(out.output(), Some(w("0101")));
        assert_eq!(out.steps_used, BigUint::from(5u32));
        assert_eq!(out.budget, BigUint::from(5u32));
    }

    #[test]
    fn loop_times_out() {
        let out = run_counted(&stock::looping(), &w("1"));
        assert_eq!(out.result, Err(Reject::Timeout));
        assert_eq!(out.steps_used, out.budget);
    }

    #[test]
    fn first_bit_balance() {
        let p = stock::first_bit();
        assert_eq!(p.bound(), &bound(1, 12));
        assert_eq!(run_counted(&p, &Word::zeros(30)).result, Err(Reject::BalanceViolation));
        assert_eq!(run_counted(&p, &w("10")).output(), Some(w("1")));
        assert_eq!(run_counted(&p, &w("")).result, Err(Reject::NoOutput));
    }

    #[test]
    fn padded_mode_strips_one_block() {
        let p = stock::negation().with_bound(bound(1, 12)).unwrap();
        let p = PolyProgram::new(p.body.clone(), bound(1, 12), 2).unwrap();
        let out = run_counted(&p, &w("0001101"));
        assert_eq!(out.output(), Some(w("0001110")));
        assert_eq!(run_counted(&p, &w("0010")).result, Err(Reject::MalformedInput));
    }

    #[test]
    fn reads_sparse_inputs() {
        let big = SparseWord::zeros(BigUint::from(1000u32)).append(&w("11"));
        let out = run_counted_sparse(&stock::identity(), &big);
        assert_eq!(out.result.unwrap(), big);
    }
}
