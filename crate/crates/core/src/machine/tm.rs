use std::fmt;

use super::ProgramError;

/// Tape symbols. Cell 0 of every tape holds [`Symbol::End`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Blank,
    End,
}

impl Symbol {
    pub(crate) fn index(self) -> usize {
        self as usize
    }

    pub(crate) fn from_index(i: usize) -> Symbol {
        [Symbol::Zero, Symbol::One, Symbol::Blank, Symbol::End][i]
    }

    pub fn from_bit(b: bool) -> Symbol {
        if b {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => '_',
            Symbol::End => '^',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        Some(match c {
            '0' => Symbol::Zero,
            '1' => Symbol::One,
            '_' => Symbol::Blank,
            '^' => Symbol::End,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    pub fn to_char(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Stay => 'S',
            Move::Right => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Move> {
        Some(match c {
            'L' => Move::Left,
            'S' => Move::Stay,
            'R' => Move::Right,
            _ => return None,
        })
    }
}

/// One rule: in `from` reading `read`, write `write`, move, optionally emit
/// an output bit, and enter `to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: usize,
    pub read: Vec<Symbol>,
    pub to: usize,
    pub write: Vec<Symbol>,
    pub moves: Vec<Move>,
    pub emit: Option<bool>,
}

/// Most tapes a program may use; keeps the dispatch table small.
pub const MAX_TAPES: usize = 6;

/// A deterministic multi-tape machine with a write-only output.
///
/// Tape 0 holds the input. Heads start on cell 1, just right of the
/// endmarker. The run halts with its output when it enters `accept`, and
/// fails when no rule applies.
#[derive(Clone, Debug)]
pub struct TuringProgram {
    tapes: usize,
    states: usize,
    start: usize,
    accept: usize,
    transitions: Vec<Transition>,
    dispatch: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl PartialEq for TuringProgram {
    fn eq(&self, other: &Self) -> bool {
        (self.tapes, self.states, self.start, self.accept) == (other.tapes, other.states, other.start, other.accept)
            && self.transitions == other.transitions
    }
}

impl Eq for TuringProgram {}

impl std::hash::Hash for TuringProgram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.tapes, self.states, self.start, self.accept, &self.transitions).hash(state);
    }
}

impl TuringProgram {
    /// Validates and indexes a transition list. Transitions are kept sorted
    /// by `(from, read)` so equal programs serialize identically.
    pub fn new(
        tapes: usize,
        states: usize,
        start: usize,
        accept: usize,
        mut transitions: Vec<Transition>,
    ) -> Result<Self, ProgramError> {
        if tapes == 0 || tapes > MAX_TAPES {
            return Err(ProgramError::TapeCount(tapes));
        }
        if start >= states || accept >= states {
            return Err(ProgramError::StateOutOfRange);
        }
        transitions.sort_by(|a, b| (a.from, &a.read).cmp(&(b.from, &b.read)));
        let width = 4usize.pow(tapes as u32);
        let mut dispatch = vec![NONE; states * width];
        for (i, t) in transitions.iter().enumerate() {
            if t.read.len() != tapes || t.write.len() != tapes || t.moves.len() != tapes {
                return Err(ProgramError::Arity { state: t.from });
            }
            if t.from >= states || t.to >= states {
                return Err(ProgramError::StateOutOfRange);
            }
            if t.from == accept {
                return Err(ProgramError::RuleFromAccept);
            }
            for ((r, w), m) in t.read.iter().zip(&t.write).zip(&t.moves) {
                match (r, w) {
                    (Symbol::End, Symbol::End) if *m == Move::Left => {
                        return Err(ProgramError::LeftOfEndmarker { state: t.from })
                    }
                    (Symbol::End, Symbol::End) => {}
                    (Symbol::End, _) | (_, Symbol::End) => {
                        return Err(ProgramError::Endmarker { state: t.from })
                    }
                    _ => {}
                }
            }
            let slot = &mut dispatch[t.from * width + read_key(&t.read)];
            if *slot != NONE {
                return Err(ProgramError::Nondeterministic { state: t.from });
            }
            *slot = i as u32;
        }
        Ok(TuringProgram { tapes, states, start, accept, transitions, dispatch })
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub(crate) fn lookup(&self, state: usize, read: &[Symbol]) -> Option<&Transition> {
        let width = 4usize.pow(self.tapes as u32);
        match self.dispatch[state * width + read_key(read)] {
            NONE => None,
            i => Some(&self.transitions[i as usize]),
        }
    }
}

fn read_key(read: &[Symbol]) -> usize {
    read.iter().fold(0, |acc, s| acc * 4 + s.index())
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms = |v: &[Symbol]| v.iter().map(|s| s.to_char()).collect::<String>();
        let moves: String = self.moves.iter().map(|m| m.to_char()).collect();
        let emit = match self.emit {
            None => '-',
            Some(false) => '0',
            Some(true) => '1',
        };
        write!(
            f,
            "q{} {} -> q{} {} {} {}",
            self.from,
            syms(&self.read),
            self.to,
            syms(&self.write),
            moves,
            emit
        )
    }
}
