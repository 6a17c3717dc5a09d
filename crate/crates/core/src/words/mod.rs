//! Binary words, the ternary alphabet `{0,1,#}`, its binary code, and prefix codes.
//!
//! [`Word`] derives `Ord` from `Vec<bool>`, which is exactly *dictionary order*:
//! the first differing bit decides and a prefix precedes its proper extensions.
//! Use [`length_lex`] when shorter words must come first.

mod pair;
mod prefix;
mod sparse;
mod tri;

pub use pair::{header, pair, pair_sparse, unpair, unpair_sparse};
pub use prefix::{is_prefix_code, minimal_prefix_code, minimal_prefix_code_of, shortest_prefix_in, PrefixCode};
pub use sparse::{Segment, SparseWord, MATERIALIZE_LIMIT};
pub use tri::{decode3, encode3, hash_affix, hash_strip, Tri, TriWord};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Failure to read or decode a word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid character {0:?} in word")]
    InvalidChar(char),
    #[error("encoded word has odd length {0}")]
    OddLength(usize),
    #[error("block 10 at bit {0} is not a letter code")]
    InvalidBlock(usize),
}

/// A finite word over `{0,1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<bool>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Word(bits.into_iter().collect())
    }

    /// `b^n`.
    pub fn repeat(bit: bool, n: usize) -> Self {
        Word(vec![bit; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::repeat(false, n)
    }

    /// The `n`-bit word of `value`, most significant bit first.
    pub fn from_index(value: u64, n: usize) -> Self {
        Word((0..n).map(|i| (value >> (n - 1 - i)) & 1 == 1).collect())
    }

    /// Inverse of [`Word::from_index`]; `None` past 64 bits.
    pub fn to_index(&self) -> Option<u64> {
        (self.len() <= 64).then(|| self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn first(&self) -> Option<bool> {
        self.0.first().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    /// `self · bit` as a new word.
    pub fn with(&self, bit: bool) -> Self {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// First `n` bits (or the whole word).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    /// Everything after the first `n` bits; `None` when the word is shorter.
    pub fn suffix_from(&self, n: usize) -> Option<Word> {
        self.0.get(n..).map(|s| Word(s.to_vec()))
    }

    /// All words of length exactly `n`, in dictionary order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 64, "refusing to enumerate 2^{n} words");
        (0..1u64 << n).map(move |i| Word::from_index(i, n))
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_len)
    }
}

/// Shorter words first, then dictionary order.
pub fn length_lex(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        self.0.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts `0`/`1` strings; `""`, `"ε"` and `"eps"` denote the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ε" || s == "eps" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(WordError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl From<Vec<bool>> for Word {
    fn from(v: Vec<bool>) -> Self {
        Word(v)
    }
}

/// Shorthand used throughout tests and docs: `w("0101")`.
///
/// # Panics
/// On characters other than `0`, `1`, or the empty-word spellings.
pub fn w(s: &str) -> Word {
    s.parse().expect("literal word")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_order_puts_prefix_first() {
        assert!(w("0") < w("00"));
        assert!(w("00") < w("01"));
        assert!(w("011") < w("1"));
        assert_eq!(length_lex(&w("1"), &w("00")), Ordering::Less);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Word::all_up_to(3).count(), 15);
        let v: Vec<_> = Word::all_of_len(2).map(|x| x.to_string()).collect();
        assert_eq!(v, ["00", "01", "10", "11"]);
    }

    #[test]
    fn parse_and_show() {
        assert_eq!(w("ε"), Word::empty());
        assert_eq!(Word::empty().to_string(), "ε");
        assert_eq!(w("0110").to_string(), "0110");
        assert!("01x".parse::<Word>().is_err());
        assert_eq!(Word::from_index(5, 4), w("0101"));
        assert_eq!(w("0101").to_index(), Some(5));
    }
}
