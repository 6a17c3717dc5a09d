use std::collections::BTreeSet;

use super::Word;

/// A finite set of words none of which is a proper prefix of another.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrefixCode(BTreeSet<Word>);

impl PrefixCode {
    /// Checks the prefix property; returns the offending pair on failure.
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self, (Word, Word)> {
        let set: BTreeSet<Word> = words.into_iter().collect();
        // In dictionary order a word's extensions follow it immediately,
        // so checking neighbours suffices.
        let v: Vec<&Word> = set.iter().collect();
        for pair in v.windows(2) {
            if pair[0].is_prefix_of(pair[1]) {
                return Err((pair[0].clone(), pair[1].clone()));
            }
        }
        Ok(PrefixCode(set))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    /// The unique code word that is a prefix of `y`, with the remaining suffix.
    pub fn factor(&self, y: &Word) -> Option<(Word, Word)> {
        (0..=y.len()).find_map(|n| {
            let p = y.prefix(n);
            self.0.contains(&p).then(|| (p, y.suffix_from(n).unwrap()))
        })
    }

    /// Membership of `y` in the right ideal `C·{0,1}*`.
    pub fn generates(&self, y: &Word) -> bool {
        self.factor(y).is_some()
    }
}

/// Whether no word of `set` is a proper prefix of another.
pub fn is_prefix_code<'a>(set: impl IntoIterator<Item = &'a Word>) -> bool {
    PrefixCode::new(set.into_iter().cloned()).is_ok()
}

/// The prefix code generating the same right ideal as `generators`.
pub fn minimal_prefix_code(generators: impl IntoIterator<Item = Word>) -> PrefixCode {
    let set: BTreeSet<Word> = generators.into_iter().collect();
    let mut kept: Vec<Word> = Vec::new();
    for g in set {
        // Dictionary order visits a generator's prefixes before it.
        if !kept.last().is_some_and(|k| k.is_prefix_of(&g)) {
            kept.push(g);
        }
    }
    PrefixCode(kept.into_iter().collect())
}

/// The members of a right ideal, given by a predicate, that have no proper
/// prefix in it, among words of length at most `max_len`.
pub fn minimal_prefix_code_of(mut member: impl FnMut(&Word) -> bool, max_len: usize) -> PrefixCode {
    let mut kept: Vec<Word> = Vec::new();
    for x in Word::all_up_to(max_len) {
        // Shorter words come first, so every kept prefix is already known.
        if !kept.iter().any(|k| k.is_prefix_of(&x)) && member(&x) {
            kept.push(x);
        }
    }
    PrefixCode(kept.into_iter().collect())
}

/// Shortest prefix `p` of `y` with `member(p)`.
pub fn shortest_prefix_in(y: &Word, mut member: impl FnMut(&Word) -> bool) -> Option<Word> {
    (0..=y.len()).map(|n| y.prefix(n)).find(|p| member(p))
}
