use std::fmt;
use std::sync::Arc;

use super::{run_counted_sparse, PolyProgram};
use crate::bounds::PolyBound;
use crate::words::{SparseWord, Word};

/// Where a [`WordFunction`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Program,
    Table,
    Combinator,
}

type Dense = dyn Fn(&Word) -> Option<Word> + Send + Sync;
type Sparse = dyn Fn(&SparseWord) -> Option<SparseWord> + Send + Sync;

/// A partial function on binary words with a declared balance bound.
///
/// Functions that operate on padded words also carry a [`SparseWord`]
/// evaluator; others materialize sparse inputs on demand.
#[derive(Clone)]
pub struct WordFunction {
    name: Arc<str>,
    bound: PolyBound,
    provenance: Provenance,
    dense: Arc<Dense>,
    sparse: Option<Arc<Sparse>>,
}

impl WordFunction {
    pub fn new(
        name: impl Into<String>,
        bound: PolyBound,
        provenance: Provenance,
        f: impl Fn(&Word) -> Option<Word> + Send + Sync + 'static,
    ) -> Self {
        WordFunction { name: name.into().into(), bound, provenance, dense: Arc::new(f), sparse: None }
    }

    /// A function defined on run-length words; the plain evaluator is derived.
    pub fn sparse(
        name: impl Into<String>,
        bound: PolyBound,
        provenance: Provenance,
        f: impl Fn(&SparseWord) -> Option<SparseWord> + Send + Sync + 'static,
    ) -> Self {
        let f: Arc<Sparse> = Arc::new(f);
        let g = Arc::clone(&f);
        WordFunction {
            name: name.into().into(),
            bound,
            provenance,
            dense: Arc::new(move |x| g(&SparseWord::from(x)).and_then(|y| y.to_word())),
            sparse: Some(f),
        }
    }

    /// `φ_w`, evaluated by the counted machine.
    pub fn from_program(name: impl Into<String>, w: PolyProgram) -> Self {
        let bound = w.bound().clone();
        Self::sparse(name, bound, Provenance::Program, move |x| run_counted_sparse(&w, x).result.ok())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> &PolyBound {
        &self.bound
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn apply(&self, x: &Word) -> Option<Word> {
        (self.dense)(x)
    }

    pub fn apply_sparse(&self, x: &SparseWord) -> Option<SparseWord> {
        match &self.sparse {
            Some(f) => f(x),
            None => self.apply(&x.to_word()?).map(SparseWord::from),
        }
    }

    pub fn is_defined(&self, x: &Word) -> bool {
        self.apply(x).is_some()
    }

    /// `outer ∘ self` (apply `self` first).
    pub fn then(&self, outer: &WordFunction) -> WordFunction {
        let (f, g) = (self.clone(), outer.clone());
        WordFunction::sparse(
            format!("{}∘{}", outer.name, self.name),
            PolyBound::compose(&self.bound, &outer.bound),
            Provenance::Combinator,
            move |x| g.apply_sparse(&f.apply_sparse(x)?),
        )
    }

    /// Renamed copy.
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into().into();
        self
    }

    /// Both balance inequalities for one defined pair.
    pub fn balanced_at(&self, x: &Word, y: &Word) -> bool {
        let (nx, ny) = (x.len().into(), y.len().into());
        self.bound.eval(&nx) >= ny && self.bound.eval(&ny) >= nx
    }
}

impl fmt::Debug for WordFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordFunction({}, {}, {:?})", self.name, self.bound, self.provenance)
    }
}
