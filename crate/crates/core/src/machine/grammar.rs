//! Bit-exact program words.
//!
//! A program serializes as `encode3(G # bin(k) # bin(a) # bin(d))` where
//! `bin` is MSB-first binary without leading zeros and `G` is the body in
//! the following grammar (`⟨n⟩` is unary `1^n 0`):
//!
//! ```text
//! body    = "0" machine | "10" seq | "11" builtin
//! machine = ⟨tapes⟩ ⟨states⟩ ⟨start⟩ ⟨accept⟩ ⟨#rules⟩ rule*
//! rule    = ⟨from⟩ sym^tapes ⟨to⟩ sym^tapes move^tapes emit
//! sym     = 00 zero | 01 one | 10 blank | 11 endmarker
//! move    = 00 left | 01 stay | 10 right
//! emit    = 00 none | 10 emit 0 | 11 emit 1
//! seq     = ⟨count⟩ body*
//! builtin = ⟨index⟩            (0 expand, 1 reexpand, 2 contr, 3 recontr)
//!         | ⟨4⟩ ⟨|bin c|⟩ bin(c)  (ev with q₂ = c·n² + c)
//! ```
//!
//! Rules appear sorted by `(from, read)`, so each program has exactly one word.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{Body, Builtin, Move, PolyProgram, ProgramError, Symbol, Transition, TuringProgram};
use crate::bounds::PolyBound;
use crate::words::{decode3, encode3, Tri, TriWord, Word};

pub fn serialize_program(w: &PolyProgram) -> Word {
    let mut g = Vec::new();
    write_body(&mut g, &w.body);
    let mut t = TriWord::from(&Word::from(g));
    for n in [BigUint::from(w.bound().k()), w.bound().a().clone(), BigUint::from(w.pad_depth)] {
        t.push(Tri::Hash);
        t.extend_bits(&Word::from(bin(&n)));
    }
    encode3(&t)
}

pub fn parse_program(u: &Word) -> Result<PolyProgram, ProgramError> {
    let t = decode3(u).map_err(|_| ProgramError::Malformed("not a code word"))?;
    let pieces = t.split_hash();
    let [g, k, a, d] = pieces.as_slice() else {
        return Err(ProgramError::Malformed("expected four fields"));
    };
    let mut r = Reader { bits: g.bits(), pos: 0 };
    let body = r.body()?;
    if r.pos != g.len() {
        return Err(ProgramError::Malformed("trailing bits after body"));
    }
    let k = unbin(k)?.to_u32().ok_or(ProgramError::Malformed("degree too large"))?;
    let a = unbin(a)?;
    let d = unbin(d)?.to_u32().ok_or(ProgramError::Malformed("depth too large"))?;
    let bound = PolyBound::new(k, a).map_err(|_| ProgramError::Malformed("zero bound field"))?;
    PolyProgram::new(body, bound, d)
}

fn bin(n: &BigUint) -> Vec<bool> {
    if n.is_zero() {
        return vec![false];
    }
    (0..n.bits()).rev().map(|i| n.bit(i)).collect()
}

fn unbin(w: &Word) -> Result<BigUint, ProgramError> {
    match w.bits() {
        [] => Err(ProgramError::Malformed("empty number")),
        [false, _, ..] => Err(ProgramError::Malformed("leading zero")),
        bits => Ok(bits.iter().fold(BigUint::zero(), |acc, &b| (acc << 1u8) + b as u32)),
    }
}

fn unary(out: &mut Vec<bool>, n: usize) {
    out.extend(std::iter::repeat(true).take(n));
    out.push(false);
}

fn sym_bits(s: Symbol) -> [bool; 2] {
    let i = s.index();
    [i & 2 != 0, i & 1 != 0]
}

fn write_body(out: &mut Vec<bool>, body: &Body) {
    match body {
        Body::Machine(tm) => {
            out.push(false);
            for n in [tm.tapes(), tm.states(), tm.start(), tm.accept(), tm.transitions().len()] {
                unary(out, n);
            }
            for t in tm.transitions() {
                unary(out, t.from);
                t.read.iter().for_each(|&s| out.extend(sym_bits(s)));
                unary(out, t.to);
                t.write.iter().for_each(|&s| out.extend(sym_bits(s)));
                for m in &t.moves {
                    out.extend(match m {
                        Move::Left => [false, false],
                        Move::Stay => [false, true],
                        Move::Right => [true, false],
                    });
                }
                out.extend(match t.emit {
                    None => [false, false],
                    Some(b) => [true, b],
                });
            }
        }
        Body::Seq(parts) => {
            out.extend([true, false]);
            unary(out, parts.len());
            parts.iter().for_each(|p| write_body(out, p));
        }
        Body::Builtin(b) => {
            out.extend([true, true]);
            unary(out, b.index());
            if let Builtin::Ev { c } = b {
                let c = bin(&BigUint::from(*c));
                unary(out, c.len());
                out.extend(c);
            }
        }
    }
}

struct Reader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl Reader<'_> {
    fn bit(&mut self) -> Result<bool, ProgramError> {
        let b = *self.bits.get(self.pos).ok_or(ProgramError::Malformed("truncated body"))?;
        self.pos += 1;
        Ok(b)
    }

    fn unary(&mut self) -> Result<usize, ProgramError> {
        let mut n = 0;
        while self.bit()? {
            n += 1;
        }
        Ok(n)
    }

    fn pair(&mut self) -> Result<(bool, bool), ProgramError> {
        Ok((self.bit()?, self.bit()?))
    }

    fn sym(&mut self) -> Result<Symbol, ProgramError> {
        let (h, l) = self.pair()?;
        Ok(Symbol::from_index(2 * h as usize + l as usize))
    }

    fn body(&mut self) -> Result<Body, ProgramError> {
        if !self.bit()? {
            return self.machine().map(Body::Machine);
        }
        if !self.bit()? {
            let n = self.unary()?;
            if n > self.bits.len() {
                return Err(ProgramError::Malformed("sequence count exceeds input"));
            }
            return (0..n).map(|_| self.body()).collect::<Result<_, _>>().map(Body::Seq);
        }
        Ok(Body::Builtin(match self.unary()? {
            0 => Builtin::Expand,
            1 => Builtin::Reexpand,
            2 => Builtin::Contr,
            3 => Builtin::Recontr,
            4 => {
                let len = self.unary()?;
                if len > 64 {
                    return Err(ProgramError::Malformed("ev constant too large"));
                }
                let bits: Vec<bool> = (0..len).map(|_| self.bit()).collect::<Result<_, _>>()?;
                let c = unbin(&Word::from(bits))?.to_u64().unwrap();
                if c < 12 {
                    return Err(ProgramError::Malformed("ev constant below 12"));
                }
                Builtin::Ev { c }
            }
            _ => return Err(ProgramError::Malformed("unknown builtin")),
        }))
    }

    fn machine(&mut self) -> Result<TuringProgram, ProgramError> {
        let tapes = self.unary()?;
        if tapes == 0 || tapes > super::MAX_TAPES {
            return Err(ProgramError::TapeCount(tapes));
        }
        let states = self.unary()?;
        let start = self.unary()?;
        let accept = self.unary()?;
        let count = self.unary()?;
        if count > self.bits.len() {
            return Err(ProgramError::Malformed("rule count exceeds input"));
        }
        let mut rules = Vec::with_capacity(count);
        for _ in 0..count {
            let from = self.unary()?;
            let read = (0..tapes).map(|_| self.sym()).collect::<Result<Vec<_>, _>>()?;
            let to = self.unary()?;
            let write = (0..tapes).map(|_| self.sym()).collect::<Result<Vec<_>, _>>()?;
            let moves = (0..tapes)
                .map(|_| match self.pair()? {
                    (false, false) => Ok(Move::Left),
                    (false, true) => Ok(Move::Stay),
                    (true, false) => Ok(Move::Right),
                    (true, true) => Err(ProgramError::Malformed("bad move code")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let emit = match self.pair()? {
                (false, false) => None,
                (true, b) => Some(b),
                (false, true) => return Err(ProgramError::Malformed("bad emit code")),
            };
            rules.push(Transition { from, read, to, write, moves, emit });
        }
        let sorted = rules.windows(2).all(|p| (p[0].from, &p[0].read) < (p[1].from, &p[1].read));
        if !sorted {
            return Err(ProgramError::Malformed("rules out of canonical order"));
        }
        TuringProgram::new(tapes, states, start, accept, rules)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::stock;
    use crate::words::w;

    #[test]
    fn numbers_render_msb_first() {
        assert_eq!(Word::from(bin(&BigUint::from(2u32))), w("10"));
        assert_eq!(Word::from(bin(&BigUint::from(12u32))), w("1100"));
        assert_eq!(Word::from(bin(&BigUint::zero())), w("0"));
        assert!(unbin(&w("01")).is_err());
    }

    #[test]
    fn malformed_words() {
        assert!(parse_program(&w("1010")).is_err());
        assert!(parse_program(&w("")).is_err());
    }

    #[test]
    fn stock_round_trip() {
        for (name, p) in stock::corpus() {
            let u = serialize_program(&p);
            assert_eq!(parse_program(&u).as_ref(), Ok(&p), "{name}");
            let blocks: Vec<&[bool]> = u.bits().chunks(2).collect();
            let hashes = blocks.iter().filter(|b| b == &&[true, true]).count();
            assert_eq!(hashes, 3, "{name}");
        }
    }
}
