use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::Word;

/// Largest word (in bits) that [`SparseWord::to_word`] will build.
pub const MATERIALIZE_LIMIT: usize = 1 << 24;

/// Zero runs at least this long are kept symbolic.
const ZERO_RUN: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Seg {
    Bits(Vec<bool>),
    Zeros(BigUint),
}

/// A borrowed piece of a [`SparseWord`].
#[derive(Clone, Copy, Debug)]
pub enum Segment<'a> {
    Bits(&'a [bool]),
    Zeros(&'a BigUint),
}

/// A binary word whose long zero runs are stored as counts.
///
/// Padding combinators produce runs like `0^(4h²+8h+2)` iterated several
/// times, far beyond anything addressable, so every operation here works on
/// the run-length form. The representation is canonical: equal words compare
/// equal.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseWord {
    segs: Vec<Seg>,
}

#[derive(Default)]
struct Builder {
    segs: Vec<Seg>,
    buf: Vec<bool>,
    zeros_small: usize,
    zeros_big: BigUint,
}

impl Builder {
    fn bit(&mut self, b: bool) {
        if b {
            self.flush_zeros();
            self.buf.push(true);
        } else {
            self.zeros_small += 1;
        }
    }

    fn zeros(&mut self, n: &BigUint) {
        self.zeros_big += n;
    }

    fn push(&mut self, seg: Segment<'_>) {
        match seg {
            Segment::Bits(bits) => bits.iter().for_each(|&b| self.bit(b)),
            Segment::Zeros(n) => self.zeros(n),
        }
    }

    fn flush_zeros(&mut self) {
        let total = std::mem::take(&mut self.zeros_big) + self.zeros_small;
        self.zeros_small = 0;
        match total.to_usize() {
            Some(0) => {}
            Some(n) if n < ZERO_RUN => self.buf.extend(std::iter::repeat(false).take(n)),
            _ => {
                if !self.buf.is_empty() {
                    self.segs.push(Seg::Bits(std::mem::take(&mut self.buf)));
                }
                self.segs.push(Seg::Zeros(total));
            }
        }
    }

    fn finish(mut self) -> SparseWord {
        self.flush_zeros();
        if !self.buf.is_empty() {
            self.segs.push(Seg::Bits(self.buf));
        }
        SparseWord { segs: self.segs }
    }
}

impl SparseWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `0^n`.
    pub fn zeros(n: BigUint) -> Self {
        let mut b = Builder::default();
        b.zeros(&n);
        b.finish()
    }

    pub fn from_segments<'a>(segs: impl IntoIterator<Item = Segment<'a>>) -> Self {
        let mut b = Builder::default();
        segs.into_iter().for_each(|s| b.push(s));
        b.finish()
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<'_>> {
        self.segs.iter().map(|s| match s {
            Seg::Bits(b) => Segment::Bits(b),
            Seg::Zeros(n) => Segment::Zeros(n),
        })
    }

    pub fn len(&self) -> BigUint {
        self.segs
            .iter()
            .map(|s| match s {
                Seg::Bits(b) => BigUint::from(b.len()),
                Seg::Zeros(n) => n.clone(),
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn concat(&self, other: &SparseWord) -> SparseWord {
        Self::from_segments(self.segments().chain(other.segments()))
    }

    /// `prefix · self`.
    pub fn prepend(&self, prefix: &Word) -> SparseWord {
        Self::from_segments(std::iter::once(Segment::Bits(prefix.bits())).chain(self.segments()))
    }

    /// `self · suffix`.
    pub fn append(&self, suffix: &Word) -> SparseWord {
        Self::from_segments(self.segments().chain(std::iter::once(Segment::Bits(suffix.bits()))))
    }

    /// The plain word, when it has at most [`MATERIALIZE_LIMIT`] bits.
    pub fn to_word(&self) -> Option<Word> {
        let n = self.len().to_usize().filter(|&n| n <= MATERIALIZE_LIMIT)?;
        let mut out = Vec::with_capacity(n);
        for seg in self.segments() {
            match seg {
                Segment::Bits(b) => out.extend_from_slice(b),
                Segment::Zeros(z) => out.extend(std::iter::repeat(false).take(z.to_usize()?)),
            }
        }
        Some(Word::from(out))
    }

    /// Lazy bit stream. Astronomical zero runs are effectively endless.
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.segments().flat_map(|seg| -> Box<dyn Iterator<Item = bool> + '_> {
            match seg {
                Segment::Bits(b) => Box::new(b.iter().copied()),
                Segment::Zeros(n) => {
                    Box::new(std::iter::repeat(false).take(n.to_usize().unwrap_or(usize::MAX)))
                }
            }
        })
    }

    pub fn first(&self) -> Option<bool> {
        self.bits().next()
    }

    /// Splits off the first `n` bits; `None` when the word is shorter.
    pub fn split_at(&self, n: usize) -> Option<(Word, SparseWord)> {
        let head: Vec<bool> = self.bits().take(n).collect();
        if head.len() < n {
            return None;
        }
        let rest = self.drop_prefix(&BigUint::from(n))?;
        Some((Word::from(head), rest))
    }

    /// Removes the first `n` bits; `None` when the word is shorter.
    pub fn drop_prefix(&self, n: &BigUint) -> Option<SparseWord> {
        let mut left = n.clone();
        let mut b = Builder::default();
        for seg in self.segments() {
            if left.is_zero() {
                b.push(seg);
                continue;
            }
            match seg {
                Segment::Bits(bits) => {
                    let len = BigUint::from(bits.len());
                    if left >= len {
                        left -= len;
                    } else {
                        let k = left.to_usize().unwrap();
                        b.push(Segment::Bits(&bits[k..]));
                        left = BigUint::zero();
                    }
                }
                Segment::Zeros(z) => {
                    if &left >= z {
                        left -= z;
                    } else {
                        b.zeros(&(z - &left));
                        left = BigUint::zero();
                    }
                }
            }
        }
        left.is_zero().then(|| b.finish())
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<SparseWord> {
        let (head, rest) = self.split_at(prefix.len())?;
        (&head == prefix).then_some(rest)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.bits().take(prefix.len()).eq(prefix.bits().iter().copied())
    }

    /// Splits `0^h · rest` with `h` maximal.
    pub fn strip_leading_zeros(&self) -> (BigUint, SparseWord) {
        let mut h = BigUint::zero();
        for seg in self.segments() {
            match seg {
                Segment::Zeros(z) => h += z,
                Segment::Bits(bits) => {
                    h += bits.iter().take_while(|&&b| !b).count();
                    break;
                }
            }
        }
        let rest = self.drop_prefix(&h).expect("counted within the word");
        (h, rest)
    }
}

impl From<Word> for SparseWord {
    fn from(w: Word) -> Self {
        SparseWord::from(&w)
    }
}

impl From<&Word> for SparseWord {
    fn from(w: &Word) -> Self {
        SparseWord::from_segments([Segment::Bits(w.bits())])
    }
}

impl fmt::Display for SparseWord {
    /// Plain bits, with symbolic runs shown as `0^(n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for seg in self.segments() {
            match seg {
                Segment::Bits(b) => write!(f, "{}", Word::from(b.to_vec()))?,
                Segment::Zeros(n) => write!(f, "0^({n})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn canonical_form() {
        let a = SparseWord::from(w("1")).concat(&SparseWord::zeros(100u32.into()));
        let mut bits = vec![true];
        bits.extend(std::iter::repeat(false).take(100));
        let b = SparseWord::from(Word::from(bits));
        assert_eq!(a, b);
        assert_eq!(a.len(), BigUint::from(101u32));
    }

    #[test]
    fn huge_runs_stay_symbolic() {
        let big = BigUint::from(10u32).pow(300);
        let s = SparseWord::zeros(big.clone()).prepend(&w("11")).append(&w("101"));
        assert_eq!(s.len(), &big + 5u32);
        assert!(s.to_word().is_none());
        let (h, rest) = s.drop_prefix(&2u32.into()).unwrap().strip_leading_zeros();
        assert_eq!(h, big + 0u32);
        assert_eq!(rest.to_word(), Some(w("101")));
    }

    #[test]
    fn split_and_strip() {
        let s = SparseWord::from(w("0011010"));
        let (head, rest) = s.split_at(3).unwrap();
        assert_eq!(head, w("001"));
        assert_eq!(rest.to_word().unwrap(), w("1010"));
        assert!(s.split_at(8).is_none());
        assert_eq!(s.strip_prefix(&w("00")).unwrap().to_word().unwrap(), w("11010"));
        assert!(s.strip_prefix(&w("1")).is_none());
        assert_eq!(s.to_string(), "0011010");
    }
}
