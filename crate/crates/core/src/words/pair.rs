//! The pairing `⟨u, x⟩ = encode3(u)·11·x` used for headers and pair inputs.

use num_bigint::BigUint;

use super::{encode3, SparseWord, TriWord, Word, MATERIALIZE_LIMIT};

/// `encode3(u) · 11`, the header that announces `u`.
pub fn header(u: &Word) -> Word {
    let mut t = encode3(&TriWord::from(u)).into_bits();
    t.extend([true, true]);
    Word::from(t)
}

pub fn pair(u: &Word, x: &Word) -> Word {
    header(u).concat(x)
}

pub fn pair_sparse(u: &Word, x: &SparseWord) -> SparseWord {
    x.prepend(&header(u))
}

/// Reads `encode3(u)·11·x` back; `u` must be binary.
pub fn unpair(t: &Word) -> Option<(Word, Word)> {
    let (u, used) = read_header(t.bits().iter().copied())?;
    Some((u, t.suffix_from(used)?))
}

pub fn unpair_sparse(t: &SparseWord) -> Option<(Word, SparseWord)> {
    let (u, used) = read_header(t.bits())?;
    Some((u, t.drop_prefix(&BigUint::from(used))?))
}

fn read_header(mut bits: impl Iterator<Item = bool>) -> Option<(Word, usize)> {
    let mut u = Vec::new();
    loop {
        if u.len() > MATERIALIZE_LIMIT {
            return None;
        }
        match (bits.next()?, bits.next()?) {
            (false, b) => u.push(b),
            (true, true) => {
                let used = 2 * u.len() + 2;
                return Some((Word::from(u), used));
            }
            (true, false) => return None,
        }
    }
}
