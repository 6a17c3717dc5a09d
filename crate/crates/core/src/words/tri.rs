use std::fmt;
use std::str::FromStr;

use super::{Word, WordError};

/// A letter of `{0,1,#}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tri {
    Zero,
    One,
    Hash,
}

impl Tri {
    fn code(self) -> [bool; 2] {
        match self {
            Tri::Zero => [false, false],
            Tri::One => [false, true],
            Tri::Hash => [true, true],
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::One
        } else {
            Tri::Zero
        }
    }
}

/// A word over `{0,1,#}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TriWord(pub Vec<Tri>);

impl TriWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, t: Tri) {
        self.0.push(t);
    }

    pub fn extend_bits(&mut self, w: &Word) {
        self.0.extend(w.bits().iter().map(|&b| Tri::from(b)));
    }

    /// Pieces between `#` letters; binary by construction.
    pub fn split_hash(&self) -> Vec<Word> {
        self.0
            .split(|&t| t == Tri::Hash)
            .map(|piece| Word::from_bits(piece.iter().map(|&t| t == Tri::One)))
            .collect()
    }
}

impl From<&Word> for TriWord {
    fn from(w: &Word) -> Self {
        TriWord(w.bits().iter().map(|&b| Tri::from(b)).collect())
    }
}

impl fmt::Display for TriWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for t in &self.0 {
            f.write_str(match t {
                Tri::Zero => "0",
                Tri::One => "1",
                Tri::Hash => "#",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TriWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for TriWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ε" || s == "eps" {
            return Ok(TriWord::default());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Tri::Zero),
                '1' => Ok(Tri::One),
                '#' => Ok(Tri::Hash),
                other => Err(WordError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TriWord)
    }
}

/// Letter-wise code `0 ↦ 00`, `1 ↦ 01`, `# ↦ 11`.
pub fn encode3(t: &TriWord) -> Word {
    Word::from_bits(t.0.iter().flat_map(|l| l.code()))
}

/// Inverse of [`encode3`].
pub fn decode3(w: &Word) -> Result<TriWord, WordError> {
    let bits = w.bits();
    if bits.len() % 2 == 1 {
        return Err(WordError::OddLength(bits.len()));
    }
    bits.chunks(2)
        .enumerate()
        .map(|(i, pair)| match pair {
            [false, false] => Ok(Tri::Zero),
            [false, true] => Ok(Tri::One),
            [true, true] => Ok(Tri::Hash),
            _ => Err(WordError::InvalidBlock(2 * i)),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(TriWord)
}

/// `x ↦ x#`.
pub fn hash_affix(x: &Word) -> TriWord {
    let mut t = TriWord::from(x);
    t.push(Tri::Hash);
    t
}

/// Right inverse of [`hash_affix`]: defined exactly on `{0,1}*#`.
pub fn hash_strip(t: &TriWord) -> Option<Word> {
    let (last, body) = t.0.split_last()?;
    (*last == Tri::Hash && !body.contains(&Tri::Hash))
        .then(|| Word::from_bits(body.iter().map(|&l| l == Tri::One)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn t(s: &str) -> TriWord {
        s.parse().unwrap()
    }

    #[test]
    fn code_table() {
        assert_eq!(encode3(&t("01#")), w("000111"));
        assert_eq!(decode3(&w("0001")).unwrap(), t("01"));
        assert_eq!(decode3(&w("10")), Err(WordError::InvalidBlock(0)));
        assert_eq!(decode3(&w("000")), Err(WordError::OddLength(3)));
    }

    #[test]
    fn hash_maps() {
        assert_eq!(hash_affix(&w("01")), t("01#"));
        assert_eq!(hash_strip(&t("01#")), Some(w("01")));
        assert_eq!(hash_strip(&t("01")), None);
        assert_eq!(hash_strip(&t("0#1#")), None);
    }
}
