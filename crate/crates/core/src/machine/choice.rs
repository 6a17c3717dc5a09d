//! Machines with binary nondeterminism, resolved by an explicit choice sequence.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Body, Move, PolyProgram, ProgramError, Symbol, Transition, TuringProgram, WordFunction};
use crate::bounds::{bound, PolyBound};
use crate::machine::Provenance;
use crate::words::{unpair, Word};

/// One option of a single-tape nondeterministic rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceRule {
    pub from: usize,
    pub read: Symbol,
    pub to: usize,
    pub write: Symbol,
    pub moves: Move,
}

/// A single-tape machine with at most two options per configuration.
///
/// Where two rules apply, the next bit of the choice sequence picks one
/// (`0` the first listed, `1` the second). Runs are cut off at the execution
/// budget of `bound`.
#[derive(Clone, Debug)]
pub struct ChoiceProgram {
    states: usize,
    start: usize,
    accept: usize,
    rules: Vec<ChoiceRule>,
    bound: PolyBound,
}

impl ChoiceProgram {
    pub fn new(
        states: usize,
        start: usize,
        accept: usize,
        rules: Vec<ChoiceRule>,
        bound: PolyBound,
    ) -> Result<Self, ProgramError> {
        if start >= states || accept >= states {
            return Err(ProgramError::StateOutOfRange);
        }
        for r in &rules {
            if r.from >= states || r.to >= states {
                return Err(ProgramError::StateOutOfRange);
            }
            if r.from == accept {
                return Err(ProgramError::RuleFromAccept);
            }
            match (r.read, r.write) {
                (Symbol::End, Symbol::End) if r.moves == Move::Left => {
                    return Err(ProgramError::LeftOfEndmarker { state: r.from })
                }
                (Symbol::End, Symbol::End) => {}
                (Symbol::End, _) | (_, Symbol::End) => return Err(ProgramError::Endmarker { state: r.from }),
                _ => {}
            }
            if rules.iter().filter(|o| (o.from, o.read) == (r.from, r.read)).count() > 2 {
                return Err(ProgramError::Nondeterministic { state: r.from });
            }
        }
        if bound.a() < &BigUint::from(12u32) {
            return Err(ProgramError::CoefficientBelow12(bound.a().clone()));
        }
        Ok(ChoiceProgram { states, start, accept, rules, bound })
    }

    fn options(&self, state: usize, read: Symbol) -> Vec<&ChoiceRule> {
        self.rules.iter().filter(|r| r.from == state && r.read == read).collect()
    }

    pub fn bound(&self) -> &PolyBound {
        &self.bound
    }
}

/// Whether `m` accepts `x` using exactly the choices `s`.
///
/// Each branching step consumes one bit; running out of bits at a branch
/// rejects, and so does accepting with bits left over. Exact consumption
/// keeps `f_M` polynomially balanced.
pub fn choice_run(m: &ChoiceProgram, x: &Word, s: &Word) -> bool {
    let budget = m.bound.counter_budget(&x.len().into()).expect("a ≥ 12").exec.to_u64().unwrap_or(u64::MAX);
    let mut tape: Vec<Symbol> = std::iter::once(Symbol::End).chain(x.bits().iter().map(|&b| Symbol::from_bit(b))).collect();
    let (mut head, mut state, mut used, mut steps) = (1usize, m.start, 0usize, 0u64);
    loop {
        if state == m.accept {
            return used == s.len();
        }
        if steps >= budget {
            return false;
        }
        if tape.len() <= head {
            tape.resize(head + 1, Symbol::Blank);
        }
        let opts = m.options(state, tape[head]);
        let rule = match opts.as_slice() {
            [] => return false,
            [only] => *only,
            [first, second] => {
                let Some(&bit) = s.bits().get(used) else { return false };
                used += 1;
                if bit {
                    second
                } else {
                    first
                }
            }
            _ => unreachable!("validated"),
        };
        tape[head] = rule.write;
        match rule.moves {
            Move::Left => head -= 1,
            Move::Stay => {}
            Move::Right => head += 1,
        }
        state = rule.to;
        steps += 1;
    }
}

/// `f_M(⟨x, s⟩) = x` when `m` accepts `x` with choices `s`; pairs are
/// `encode3(x)·11·s`.
pub fn fm(m: &ChoiceProgram) -> WordFunction {
    let m = m.clone();
    let b = fm_bound(&m);
    WordFunction::new("f_M", b, Provenance::Combinator, move |t| {
        let (x, s) = unpair(t)?;
        choice_run(&m, &x, &s).then_some(x)
    })
}

fn fm_bound(m: &ChoiceProgram) -> PolyBound {
    PolyBound::new(m.bound.k(), m.bound.a() * 3u32).unwrap()
}

const SYMS: [Symbol; 4] = [Symbol::Zero, Symbol::One, Symbol::Blank, Symbol::End];

/// A deterministic three-tape program computing [`fm`].
///
/// Tape 0 holds `encode3(x)·11·s`; the program decodes `x` onto tapes 1
/// and 2, simulates `m` on tape 2 while reading choices from tape 0, checks
/// that `s` is used up, and copies tape 1 to the output. Its bound has
/// coefficient `3a` for `m`'s coefficient `a`, which covers the decoding and
/// copying overhead when `m` runs in at most `|x| + 1` steps.
pub fn compile_fm(m: &ChoiceProgram) -> Result<PolyProgram, ProgramError> {
    const D0: usize = 0;
    const D1: usize = 1;
    const D2: usize = 2;
    const RW: usize = 3;
    const COPY: usize = 4;
    const DONE: usize = 5;
    let base = 6;
    let mstate = |q: usize| if q == m.accept { COPY } else { base + q };
    let states = base + m.states;
    let mut rules = Vec::new();
    let mut rule = |from, read: [Symbol; 3], to, write: [Symbol; 3], moves: [Move; 3], emit| {
        rules.push(Transition { from, read: read.to_vec(), to, write: write.to_vec(), moves: moves.to_vec(), emit });
    };
    use Move::{Left as L, Right as R, Stay as S};
    use Symbol::{Blank as B, End as E, One as I, Zero as O};
    for a in SYMS {
        for b in SYMS {
            rule(D0, [O, a, b], D1, [O, a, b], [R, S, S], None);
            rule(D0, [I, a, b], D2, [I, a, b], [R, S, S], None);
            rule(D2, [I, a, b], RW, [I, a, b], [R, S, S], None);
        }
    }
    for (bit, sym) in [(false, O), (true, I)] {
        let _ = bit;
        rule(D1, [sym, B, B], D0, [sym, sym, sym], [R, R, R], None);
    }
    for t0 in SYMS {
        let keep = |s: Symbol| s;
        for s in [O, I, B] {
            rule(RW, [t0, s, s], RW, [keep(t0), s, s], [S, L, L], None);
        }
        rule(RW, [t0, E, E], mstate(m.start), [t0, E, E], [S, R, R], None);
    }
    for q in (0..m.states).filter(|&q| q != m.accept) {
        for r in SYMS {
            let opts = m.options(q, r);
            for t1 in SYMS {
                match opts.as_slice() {
                    [] => {}
                    [only] => {
                        for t0 in SYMS {
                            rule(mstate(q), [t0, t1, r], mstate(only.to), [t0, t1, only.write], [S, S, only.moves], None);
                        }
                    }
                    [first, second] => {
                        for (c, opt) in [(O, first), (I, second)] {
                            rule(mstate(q), [c, t1, r], mstate(opt.to), [c, t1, opt.write], [R, S, opt.moves], None);
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
    for t2 in SYMS {
        rule(COPY, [B, O, t2], COPY, [B, O, t2], [S, R, S], Some(false));
        rule(COPY, [B, I, t2], COPY, [B, I, t2], [S, R, S], Some(true));
        rule(COPY, [B, B, t2], DONE, [B, B, t2], [S, S, S], None);
    }
    let tm = TuringProgram::new(3, states, D0, DONE, rules)?;
    PolyProgram::new(Body::Machine(tm), fm_bound(m), 0)
}

/// Accepts words containing a `1`: at each `1` it guesses whether to stop.
pub fn contains_one() -> ChoiceProgram {
    use Move::{Right as R, Stay as S};
    use Symbol::{One as I, Zero as O};
    let r = |from, read, to, write, moves| ChoiceRule { from, read, to, write, moves };
    ChoiceProgram::new(2, 0, 1, vec![r(0, O, 0, O, R), r(0, I, 1, I, S), r(0, I, 0, I, R)], bound(1, 12)).unwrap()
}

/// Accepts words containing `00`: at each `0` it guesses that the next bit is `0`.
pub fn guess_double_zero() -> ChoiceProgram {
    use Move::{Right as R, Stay as S};
    use Symbol::{One as I, Zero as O};
    let r = |from, read, to, write, moves| ChoiceRule { from, read, to, write, moves };
    ChoiceProgram::new(
        3,
        0,
        2,
        vec![
            r(0, O, 0, O, R),
            r(0, O, 1, O, R),
            r(0, I, 0, I, R),
            r(1, O, 2, O, S),
            r(1, I, 0, I, R),
        ],
        bound(1, 12),
    )
    .unwrap()
}

pub(crate) fn compiled_contains_one() -> PolyProgram {
    compile_fm(&contains_one()).expect("fixture compiles")
}

pub(crate) fn compiled_guess_double_zero() -> PolyProgram {
    compile_fm(&guess_double_zero()).expect("fixture compiles")
}
