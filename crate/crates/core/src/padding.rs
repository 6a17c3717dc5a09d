//! Affix maps and the four padding combinators.
//!
//! A padded word has the shape `header · 11 · 0^h · 11 · payload`, where the
//! header announces a program. `expand` inserts the block, `reexpand` blows
//! it up quadratically, `recontr` shrinks it back, and `contr` removes it
//! when it is not too large for the payload. Each step also moves the
//! announced program one `ex` or `co` step, so the program's padding depth
//! tracks the number of blocks in play.
//!
//! The one-block pad after `expand` is `4|x|²+7|x|+2`, so that
//! `|0^N 11 x| = (2(|x|+1))²`. (A shorter formula with leading coefficient 1
//! also circulates for this walk-through; it does not give a square and is
//! not used.)

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::bounds::{BoundError, PolyBound};
use crate::machine::{parse_program, serialize_program, PolyProgram, Provenance, WordFunction};
use crate::words::{header, pair_sparse, unpair_sparse, SparseWord, Word};

/// `4n² + 7n + 2`, the pad inserted by [`expand`].
pub fn expand_pad(n: &BigUint) -> BigUint {
    4u32 * n * n + 7u32 * n + 2u32
}

/// `4h² + 8h + 2`, the pad produced by [`reexpand`].
pub fn reexpand_pad(h: &BigUint) -> BigUint {
    4u32 * h * h + 8u32 * h + 2u32
}

/// `max(1, ⌊isqrt(h+2)/2⌋ − 1)`, the pad produced by [`recontr`].
pub fn recontr_pad(h: &BigUint) -> BigUint {
    let r = (h + 2u32).sqrt() / 2u32;
    if r <= BigUint::from(2u32) {
        BigUint::one()
    } else {
        r - 1u32
    }
}

/// `ex(w)`: bound `(⌈k/2⌉, max(12, ⌈a/2^k⌉+1))`, one more padding level.
pub fn ex_program(w: &PolyProgram) -> PolyProgram {
    PolyProgram::new(w.body.clone(), w.bound().ex(), w.pad_depth + 1).expect("ex keeps a ≥ 12")
}

/// `co(w)`: bound `(2k, (a−1)·2^(2k))`, one padding level less.
pub fn co_program(w: &PolyProgram) -> Result<PolyProgram, BoundError> {
    if w.pad_depth == 0 {
        return Err(BoundError::NoPadding);
    }
    PolyProgram::new(w.body.clone(), w.bound().co(), w.pad_depth - 1).map_err(|_| BoundError::CoefficientBelow12(w.bound().co().a().clone()))
}

/// Right inverse of [`co_program`] on its image.
fn co_program_inverse(w: &PolyProgram) -> Option<PolyProgram> {
    PolyProgram::new(w.body.clone(), w.bound().co_inverse()?, w.pad_depth + 1).ok()
}

/// `header(u) · 11 · 0^pad · 11 · payload` with `u` a serialized program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedWord {
    pub program: Word,
    pub pad: BigUint,
    pub payload: SparseWord,
}

impl PaddedWord {
    pub fn parse(t: &SparseWord) -> Option<Self> {
        let (program, rest) = unpair_sparse(t)?;
        let (pad, rest) = rest.strip_leading_zeros();
        let payload = rest.strip_prefix(&Word::from(vec![true, true]))?;
        Some(PaddedWord { program, pad, payload })
    }

    pub fn to_sparse(&self) -> SparseWord {
        let block = SparseWord::zeros(self.pad.clone()).append(&Word::from(vec![true, true])).concat(&self.payload);
        pair_sparse(&self.program, &block)
    }
}

impl fmt::Display for PaddedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = header(&self.program);
        write!(f, "[{}]|11|0^{}|11|{}", h.prefix(h.len() - 2), self.pad, self.payload)
    }
}

fn program_of(u: &Word) -> Option<PolyProgram> {
    parse_program(u).ok()
}

/// `header(w)·x ↦ header(ex w)·0^(4|x|²+7|x|+2)·11·x`.
pub fn expand(t: &SparseWord) -> Option<SparseWord> {
    let (u, x) = unpair_sparse(t)?;
    let w = program_of(&u)?;
    let padded = PaddedWord { program: serialize_program(&ex_program(&w)), pad: expand_pad(&x.len()), payload: x };
    Some(padded.to_sparse())
}

/// `header(u)·0^h·11·x ↦ header(ex u)·0^(4h²+8h+2)·11·x`.
pub fn reexpand(t: &SparseWord) -> Option<SparseWord> {
    let p = PaddedWord::parse(t)?;
    let w = program_of(&p.program)?;
    Some(PaddedWord { program: serialize_program(&ex_program(&w)), pad: reexpand_pad(&p.pad), payload: p.payload }.to_sparse())
}

/// `header(w)·0^h·11·y ↦ header(co w)·y` when `h ≤ 4|y|²+7|y|+2`.
pub fn contr(t: &SparseWord) -> Option<SparseWord> {
    let p = PaddedWord::parse(t)?;
    if p.pad > expand_pad(&p.payload.len()) {
        return None;
    }
    let w = co_program(&program_of(&p.program)?).ok()?;
    Some(pair_sparse(&serialize_program(&w), &p.payload))
}

/// `header(u)·0^h·11·y ↦ header(co u)·0^(max(1, ⌊√(h+2)/2⌋−1))·11·y`.
pub fn recontr(t: &SparseWord) -> Option<SparseWord> {
    let p = PaddedWord::parse(t)?;
    let w = co_program(&program_of(&p.program)?).ok()?;
    Some(PaddedWord { program: serialize_program(&w), pad: recontr_pad(&p.pad), payload: p.payload }.to_sparse())
}

/// Inverse of [`expand`]: removes a block whose size is exactly the expand pad.
pub fn expand_inverse(t: &SparseWord) -> Option<SparseWord> {
    let p = PaddedWord::parse(t)?;
    (p.pad == expand_pad(&p.payload.len())).then_some(())?;
    let w = co_program(&program_of(&p.program)?).ok()?;
    Some(pair_sparse(&serialize_program(&w), &p.payload))
}

/// Inverse of [`reexpand`]: exact square root of the pad, header moved by `co`.
pub fn reexpand_inverse(t: &SparseWord) -> Option<SparseWord> {
    let p = PaddedWord::parse(t)?;
    let r = (&p.pad + 2u32).sqrt();
    if &r * &r != &p.pad + 2u32 || &r % 2u32 == BigUint::one() || r < BigUint::from(2u32) {
        return None;
    }
    let h = r / 2u32 - 1u32;
    let w = co_program(&program_of(&p.program)?).ok()?;
    Some(PaddedWord { program: serialize_program(&w), pad: h, payload: p.payload }.to_sparse())
}

/// Inverse of [`contr`]: reinstates an empty block and undoes `co`.
pub fn contr_inverse(t: &SparseWord) -> Option<SparseWord> {
    let (u, y) = unpair_sparse(t)?;
    let w = co_program_inverse(&program_of(&u)?)?;
    Some(PaddedWord { program: serialize_program(&w), pad: BigUint::default(), payload: y }.to_sparse())
}

/// Inverse of [`recontr`]: pad `g ≥ 1` becomes `4g²+8g+2`, header undoes `co`.
pub fn recontr_inverse(t: &SparseWord) -> Option<SparseWord> {
    let p = PaddedWord::parse(t)?;
    if p.pad < BigUint::one() {
        return None;
    }
    let w = co_program_inverse(&program_of(&p.program)?)?;
    Some(PaddedWord { program: serialize_program(&w), pad: reexpand_pad(&p.pad), payload: p.payload }.to_sparse())
}

fn padding_bound() -> PolyBound {
    PolyBound::new(2, 60u32).unwrap()
}

fn combinator(name: &str, f: fn(&SparseWord) -> Option<SparseWord>) -> WordFunction {
    WordFunction::sparse(name, padding_bound(), Provenance::Combinator, f)
}

pub fn expand_fn() -> WordFunction {
    combinator("expand", expand)
}

pub fn reexpand_fn() -> WordFunction {
    combinator("reexpand", reexpand)
}

pub fn contr_fn() -> WordFunction {
    combinator("contr", contr)
}

pub fn recontr_fn() -> WordFunction {
    combinator("recontr", recontr)
}

/// The four combinators, each with its explicit inverse.
pub fn combinators_with_inverses() -> Vec<(WordFunction, WordFunction)> {
    vec![
        (expand_fn(), combinator("expand′", expand_inverse)),
        (reexpand_fn(), combinator("reexpand′", reexpand_inverse)),
        (contr_fn(), combinator("contr′", contr_inverse)),
        (recontr_fn(), combinator("recontr′", recontr_inverse)),
    ]
}

/// `π_v : x ↦ v·x`.
pub fn affix(v: &Word) -> WordFunction {
    let v = v.clone();
    let b = PolyBound::new(1, (v.len() as u64 + 1) * 12).unwrap();
    WordFunction::sparse(format!("π_{v}"), b, Provenance::Combinator, move |x| Some(x.prepend(&v)))
}

/// `π′_k`: drops the first `k` bits, undefined on shorter words.
pub fn drop_prefix(k: usize) -> WordFunction {
    let b = PolyBound::new(1, (k as u64 + 1) * 12).unwrap();
    WordFunction::sparse(format!("π′_{k}"), b, Provenance::Combinator, move |t| t.drop_prefix(&BigUint::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::bound;
    use crate::machine::stock;
    use crate::words::w;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn pad_formulas() {
        assert_eq!(expand_pad(&n(1)), n(13));
        assert_eq!(expand_pad(&n(0)), n(2));
        assert_eq!(expand_pad(&n(1)) + 2u32 + 1u32, n(16));
        assert_eq!(reexpand_pad(&n(13)), n(782));
        assert_eq!(reexpand_pad(&n(0)), n(2));
        assert_eq!(reexpand_pad(&n(1)), n(14));
        assert_eq!(recontr_pad(&n(14)), n(1));
        assert_eq!(recontr_pad(&n(782)), n(13));
        assert_eq!(recontr_pad(&n(0)), n(1));
    }

    #[test]
    fn contr_guard_boundary() {
        let u = serialize_program(&ex_program(&stock::identity()));
        let block = |h: u64, y: &str| PaddedWord { program: u.clone(), pad: n(h), payload: SparseWord::from(w(y)) }.to_sparse();
        assert!(contr(&block(13, "1")).is_some());
        assert!(contr(&block(14, "1")).is_none());
        assert!(contr(&block(2, "")).is_some());
    }

    #[test]
    fn program_transforms() {
        let p = |k, a| stock::identity().with_bound(bound(k, a)).unwrap();
        assert_eq!(ex_program(&p(2, 12)).bound(), &bound(1, 12));
        assert_eq!(ex_program(&p(1, 100)).bound(), &bound(1, 51));
        let co = co_program(&ex_program(&p(2, 12))).unwrap();
        assert_eq!(co.bound(), &bound(2, 44));
        assert!(p(2, 12).bound().leq(co.bound()));
        assert!(co_program(&p(1, 12)).is_err());
    }

    #[test]
    fn expand_then_contr_recovers_payload() {
        let u = serialize_program(&stock::identity());
        for x in Word::all_up_to(6) {
            let t = pair_sparse(&u, &SparseWord::from(&x));
            let e = expand(&t).unwrap();
            let p = PaddedWord::parse(&e).unwrap();
            assert_eq!(p.pad, expand_pad(&n(x.len() as u64)));
            let back = contr(&e).unwrap();
            assert_eq!(unpair_sparse(&back).unwrap().1.to_word(), Some(x));
        }
    }

    #[test]
    fn rendering() {
        let u = w("01");
        let p = PaddedWord { program: u, pad: n(3), payload: SparseWord::from(w("1")) };
        assert_eq!(p.to_string(), "[0001]|11|0^3|11|1");
        assert_eq!(PaddedWord::parse(&p.to_sparse()), Some(p));
    }
}
