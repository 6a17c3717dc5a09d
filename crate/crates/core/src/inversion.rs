//! Inverses by exhaustive search, and checkers for simulations and
//! inversive reductions.
//!
//! An [`EnumOracle`] stands in for the NP oracle "is `y` in `f(z·{0,1}*)`?".
//! It searches candidates up to the balance bound, capped by `max_probe`;
//! a capped negative answer is reported as [`Verdict::NoWithinCap`].
//!
//! Inverses are chosen in dictionary order, where a word precedes its
//! proper extensions. The greedy loop in [`f_prime_select`] realizes
//! exactly that order: for the minimum it stops at the first preimage on
//! its path, for the maximum it keeps extending with `1` (else `0`) until no
//! preimage lies further down.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bounds::PolyBound;
use crate::circuits::{ev_circ_function, lp_beta, lp_lift, CircuitFamily, Circuit};
use crate::eval::{ev_function, Q2Config};
use crate::machine::{serialize_program, PolyProgram, Provenance, WordFunction};
use crate::words::{decode3, encode3, hash_affix, hash_strip, header, pair, unpair, Word};

/// Default cap on the search radius.
pub const DEFAULT_MAX_PROBE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InversionError {
    #[error("sample inverse `{name}` is not an inverse of the target at {at}")]
    SampleNotInverse { name: String, at: Word },
    #[error("program bound {0} exceeds the evaluator bound {1}")]
    AboveEvaluator(PolyBound, PolyBound),
    #[error("greedy loop left the preimage set at {0}; the oracle is inconsistent")]
    OracleInconsistent(Word),
}

/// Which inputs the oracle tries for a target `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchSpace {
    /// Every word up to the radius.
    All,
    /// Words of length `|y|`, for length-preserving functions.
    SameLength,
    /// For `y = header(u)·y′`: the words `header(u)·x`, radius from `|y′|`.
    KeepHeader,
    /// For `y = code(y′#)·v`: the words `code(x#)·v`, radius from `|y′|`.
    Encoded,
}

impl SearchSpace {
    /// Common prefix and payload length of the target, and the candidate builder.
    fn split(self, y: &Word) -> Option<(Word, usize)> {
        match self {
            SearchSpace::All | SearchSpace::SameLength => Some((Word::empty(), y.len())),
            SearchSpace::KeepHeader => {
                let (u, rest) = unpair(y)?;
                Some((header(&u), rest.len()))
            }
            SearchSpace::Encoded => split_code(y).map(|(y1, _)| (Word::empty(), y1.len())),
        }
    }

    fn candidates(self, y: &Word, radius: usize) -> Vec<Word> {
        match self {
            SearchSpace::All => Word::all_up_to(radius).collect(),
            SearchSpace::SameLength => Word::all_of_len(y.len()).collect(),
            SearchSpace::KeepHeader => {
                let (u, _) = unpair(y).expect("split checked");
                Word::all_up_to(radius).map(|x| pair(&u, &x)).collect()
            }
            SearchSpace::Encoded => {
                let (_, v) = split_code(y).expect("split checked");
                Word::all_up_to(radius).map(|x| code_hash(&x).concat(&v)).collect()
            }
        }
    }
}

/// `code(x#)`.
pub fn code_hash(x: &Word) -> Word {
    encode3(&hash_affix(x))
}

/// Splits `code(x#)·v` into `(x, v)`.
pub fn split_code(y: &Word) -> Option<(Word, Word)> {
    let end = (0..y.len() / 2).find(|&i| y.bits()[2 * i] && y.bits()[2 * i + 1])?;
    let head = y.prefix(2 * end + 2);
    let x = hash_strip(&decode3(&head).ok()?)?;
    Some((x, y.suffix_from(2 * end + 2)?))
}

/// Oracle answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    /// No witness within the capped radius; the full bound was not searched.
    NoWithinCap,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

/// All preimages of one target found within the radius, in dictionary order.
#[derive(Clone, Debug)]
pub struct Preimages {
    pub prefix: Word,
    pub words: Vec<Word>,
    pub radius: usize,
    pub capped: bool,
}

impl Preimages {
    fn verdict(&self) -> Verdict {
        match (self.words.is_empty(), self.capped) {
            (false, _) => Verdict::Yes,
            (true, false) => Verdict::No,
            (true, true) => Verdict::NoWithinCap,
        }
    }
}

/// Bounded-enumeration stand-in for the image oracles.
#[derive(Clone)]
pub struct EnumOracle {
    f: WordFunction,
    q: PolyBound,
    max_probe: usize,
    space: SearchSpace,
    cache: Arc<Mutex<HashMap<Word, Arc<Preimages>>>>,
    /// For [`SearchSpace::All`]: every image of the ball of each radius.
    balls: Arc<Mutex<HashMap<usize, Arc<HashMap<Word, Vec<Word>>>>>>,
}

impl EnumOracle {
    /// Searches with the function's own bound.
    pub fn new(f: &WordFunction, max_probe: usize, space: SearchSpace) -> Self {
        Self::with_bound(f, f.bound().clone(), max_probe, space)
    }

    pub fn with_bound(f: &WordFunction, q: PolyBound, max_probe: usize, space: SearchSpace) -> Self {
        EnumOracle { f: f.clone(), q, max_probe, space, cache: Arc::default(), balls: Arc::default() }
    }

    pub fn function(&self) -> &WordFunction {
        &self.f
    }

    pub fn space(&self) -> SearchSpace {
        self.space
    }

    /// `min(q(|y|), max_probe)` on the payload length, and whether the cap bit.
    pub fn radius(&self, payload: usize) -> (usize, bool) {
        let full = self.q.eval_usize(payload).to_usize().unwrap_or(usize::MAX);
        (full.min(self.max_probe), full > self.max_probe)
    }

    pub fn preimages(&self, y: &Word) -> Arc<Preimages> {
        if let Some(p) = self.cache.lock().unwrap().get(y) {
            return Arc::clone(p);
        }
        let p = Arc::new(match self.space.split(y) {
            None => Preimages { prefix: Word::empty(), words: Vec::new(), radius: 0, capped: false },
            Some((prefix, payload)) => {
                let (radius, capped) = match self.space {
                    SearchSpace::SameLength => (y.len(), y.len() > self.max_probe),
                    _ => self.radius(payload),
                };
                let mut words: Vec<Word> = if capped && self.space == SearchSpace::SameLength {
                    Vec::new()
                } else if self.space == SearchSpace::All {
                    self.ball(radius).get(y).cloned().unwrap_or_default()
                } else {
                    self.space
                        .candidates(y, radius)
                        .into_iter()
                        .filter(|x| self.f.apply(x).as_ref() == Some(y))
                        .collect()
                };
                words.sort();
                Preimages { prefix, words, radius, capped }
            }
        });
        self.cache.lock().unwrap().insert(y.clone(), Arc::clone(&p));
        p
    }

    /// One pass over all inputs up to `radius`, shared by every target.
    fn ball(&self, radius: usize) -> Arc<HashMap<Word, Vec<Word>>> {
        if let Some(b) = self.balls.lock().unwrap().get(&radius) {
            return Arc::clone(b);
        }
        let mut table: HashMap<Word, Vec<Word>> = HashMap::new();
        for x in Word::all_up_to(radius) {
            if let Some(y) = self.f.apply(&x) {
                table.entry(y).or_default().push(x);
            }
        }
        let table = Arc::new(table);
        self.balls.lock().unwrap().insert(radius, Arc::clone(&table));
        table
    }

    /// Is `y ∈ Im(f)`?
    pub fn image_member(&self, y: &Word) -> Verdict {
        self.preimages(y).verdict()
    }

    /// Is `y ∈ f(z·{0,1}*)`?
    pub fn extension_member(&self, y: &Word, z: &Word) -> Verdict {
        let p = self.preimages(y);
        if p.words.iter().any(|x| z.is_prefix_of(x)) {
            Verdict::Yes
        } else if p.capped {
            Verdict::NoWithinCap
        } else {
            Verdict::No
        }
    }
}

impl fmt::Debug for EnumOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnumOracle({}, q={}, cap={}, {:?})", self.f.name(), self.q, self.max_probe, self.space)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Min,
    Max,
}

/// The greedy oracle loop, returning the dictionary-order minimum or
/// maximum of `f^{-1}(y)` within the radius.
pub fn f_prime_select(o: &EnumOracle, dir: Direction, y: &Word) -> Result<Option<Word>, InversionError> {
    if !o.image_member(y).is_yes() {
        return Ok(None);
    }
    let p = o.preimages(y);
    let is_pre = |z: &Word| p.words.binary_search(z).is_ok();
    let ext = |z: &Word| o.extension_member(y, z).is_yes();
    let mut z = p.prefix.clone();
    let guard = p.words.iter().map(Word::len).max().unwrap_or(0);
    match dir {
        Direction::Min => {
            while !is_pre(&z) {
                if z.len() > guard {
                    return Err(InversionError::OracleInconsistent(z));
                }
                z = if ext(&z.with(false)) { z.with(false) } else { z.with(true) };
            }
        }
        Direction::Max => loop {
            if z.len() > guard {
                return Err(InversionError::OracleInconsistent(z));
            }
            if ext(&z.with(true)) {
                z.push(true);
            } else if ext(&z.with(false)) {
                z.push(false);
            } else if is_pre(&z) {
                break;
            } else {
                return Err(InversionError::OracleInconsistent(z));
            }
        },
    }
    Ok(Some(z))
}

/// The `i`-th preimage in dictionary order (1-based), clamped to the last.
pub fn f_prime_ith(o: &EnumOracle, i: usize, y: &Word) -> Option<Word> {
    let p = o.preimages(y);
    let i = i.max(1).min(p.words.len());
    p.words.get(i.checked_sub(1)?).cloned()
}

/// How a sampled inverse picks among preimages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Selector {
    Min,
    Max,
    Ith(usize),
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Min => f.write_str("min"),
            Selector::Max => f.write_str("max"),
            Selector::Ith(i) => write!(f, "#{i}"),
        }
    }
}

/// The inverse `f′` that answers with the selected preimage.
pub fn inverse_function(o: &EnumOracle, sel: Selector) -> WordFunction {
    let o2 = o.clone();
    WordFunction::new(
        format!("{}′[{sel}]", o.f.name()),
        o.f.bound().clone(),
        Provenance::Combinator,
        move |y| match sel {
            Selector::Min => f_prime_select(&o2, Direction::Min, y).ok().flatten(),
            Selector::Max => f_prime_select(&o2, Direction::Max, y).ok().flatten(),
            Selector::Ith(i) => f_prime_ith(&o2, i, y),
        },
    )
}

/// `f(f_inv(f(x))) = f(x)` for every `x` of length `≤ l` in `Dom(f)`.
pub fn verify_inverse(f: &WordFunction, f_inv: &WordFunction, l: usize) -> bool {
    inverse_counterexample(f, f_inv, Word::all_up_to(l)).is_none()
}

/// The first input `x` where `f ∘ f_inv ∘ f` and `f` differ.
pub fn inverse_counterexample(
    f: &WordFunction,
    f_inv: &WordFunction,
    inputs: impl IntoIterator<Item = Word>,
) -> Option<Word> {
    inputs.into_iter().find(|x| match f.apply(x) {
        None => false,
        Some(y) => f_inv.apply(&y).and_then(|z| f.apply(&z)) != Some(y),
    })
}

/// `(β, α)` with `f₁ = β ∘ f₂ ∘ α`.
#[derive(Clone, Debug)]
pub struct SimulationWitness {
    pub beta: WordFunction,
    pub alpha: WordFunction,
}

impl SimulationWitness {
    pub fn sandwich(&self, f: &WordFunction) -> WordFunction {
        self.alpha.then(f).then(&self.beta)
    }
}

/// The first `x` with `|x| ≤ l` where `β ∘ f₂ ∘ α` and `f₁` differ.
pub fn simulation_counterexample(f1: &WordFunction, f2: &WordFunction, w: &SimulationWitness, l: usize) -> Option<Word> {
    let g = w.sandwich(f2);
    Word::all_up_to(l).find(|x| g.apply(x) != f1.apply(x))
}

pub fn check_simulation(f1: &WordFunction, f2: &WordFunction, w: &SimulationWitness, l: usize) -> bool {
    simulation_counterexample(f1, f2, w, l).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransportKind {
    Encoding,
    Evaluator,
    Circuit,
    LpLift,
    Custom,
}

type Transport = dyn Fn(&WordFunction) -> SimulationWitness + Send + Sync;

/// A proved reduction `f₁ ≤ f₂`: the forward simulation, and the map from
/// inverses of `f₂` to the sandwich `(β′, α′)` with `f₁′ = β′ ∘ f₂′ ∘ α′`.
#[derive(Clone)]
pub struct Reduction {
    pub kind: TransportKind,
    pub source: WordFunction,
    pub target: WordFunction,
    pub witness: SimulationWitness,
    /// The space an oracle for the target should search.
    pub target_space: SearchSpace,
    /// Whether `α′` asks the sampled inverse about its domain.
    pub weak_turing: bool,
    transport: Arc<Transport>,
}

impl Reduction {
    pub fn new(
        kind: TransportKind,
        source: WordFunction,
        target: WordFunction,
        witness: SimulationWitness,
        target_space: SearchSpace,
        transport: impl Fn(&WordFunction) -> SimulationWitness + Send + Sync + 'static,
    ) -> Self {
        Reduction { kind, source, target, witness, target_space, weak_turing: false, transport: Arc::new(transport) }
    }

    /// The sandwich for one inverse of the target.
    pub fn transport(&self, target_inverse: &WordFunction) -> SimulationWitness {
        (self.transport)(target_inverse)
    }

    /// The transported inverse of the source.
    pub fn transported(&self, target_inverse: &WordFunction) -> WordFunction {
        self.transport(target_inverse).sandwich(target_inverse)
    }

    /// An oracle for the target in the right search space.
    pub fn target_oracle(&self, max_probe: usize) -> EnumOracle {
        EnumOracle::new(&self.target, max_probe, self.target_space)
    }
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Reduction({:?}: {} ≤ {})", self.kind, self.source.name(), self.target.name())
    }
}

/// `f^C(code(x#)·v) = code(f(x)#)·v`.
pub fn encoding_of(f: &WordFunction) -> WordFunction {
    let g = f.clone();
    let bound = PolyBound::new(f.bound().k(), f.bound().a() * 2u32).unwrap();
    WordFunction::new(format!("{}^C", f.name()), bound, Provenance::Combinator, move |t| {
        let (x, v) = split_code(t)?;
        Some(code_hash(&g.apply(&x)?).concat(&v))
    })
}

fn encoding_witness() -> SimulationWitness {
    SimulationWitness {
        alpha: WordFunction::new("code(·#)", PolyBound::new(1, 24u32).unwrap(), Provenance::Combinator, |x| {
            Some(code_hash(x))
        }),
        beta: WordFunction::new("r∘dec", PolyBound::linear12(), Provenance::Combinator, |t| {
            hash_strip(&decode3(t).ok()?)
        }),
    }
}

/// `f ≤ f^C` through `code(·#)` and `r ∘ dec`; inverses transport by the same pair.
pub fn encoding_reduction(f: &WordFunction) -> Reduction {
    let w = encoding_witness();
    let t = w.clone();
    Reduction::new(TransportKind::Encoding, f.clone(), encoding_of(f), w, SearchSpace::Encoded, move |_| t.clone())
}

fn header_witness(u: &Word) -> SimulationWitness {
    let (u1, u2) = (u.clone(), u.clone());
    let h = header(u).len() as u64;
    SimulationWitness {
        alpha: WordFunction::new("π_header", PolyBound::new(1, 12 * (h + 1)).unwrap(), Provenance::Combinator, move |x| {
            Some(pair(&u1, x))
        }),
        beta: WordFunction::new("π′_header", PolyBound::linear12(), Provenance::Combinator, move |t| {
            t.strip_prefix(&header(&u2))
        }),
    }
}

/// `φ_w ≤ ev_{q₂}` for `p_w ≤ q₂`: announce `w`, evaluate, drop the header.
pub fn evaluator_reduction(w: &PolyProgram, cfg: Q2Config) -> Result<Reduction, InversionError> {
    if !w.bound().leq(&cfg.bound()) {
        return Err(InversionError::AboveEvaluator(w.bound().clone(), cfg.bound()));
    }
    let u = serialize_program(w);
    let witness = header_witness(&u);
    let t = witness.clone();
    Ok(Reduction::new(
        TransportKind::Evaluator,
        WordFunction::from_program("φ_w", w.clone()),
        ev_function(cfg),
        witness,
        SearchSpace::KeepHeader,
        move |_| t.clone(),
    ))
}

/// `f ≤ ev_circ` for length-preserving total `f`: `α(x) = (C_|x|, x)`.
pub fn circuit_reduction(f: &WordFunction) -> Reduction {
    let g = f.clone();
    let family = CircuitFamily::new(move |x| g.apply(x));
    let fam = family.clone();
    let alpha = WordFunction::new("α[C_n]", PolyBound::new(2, 1u32 << 12).unwrap(), Provenance::Combinator, move |x| {
        Some(pair(&fam.at(x.len()).ok()?.code(), x))
    });
    let beta = WordFunction::new("β[C_n]", PolyBound::linear12(), Provenance::Combinator, |t| {
        let (u, y) = unpair(t)?;
        (Circuit::decode(&u)?.arity() == y.len()).then_some(y)
    });
    let witness = SimulationWitness { beta, alpha };
    let t = witness.clone();
    Reduction::new(TransportKind::Circuit, f.clone(), ev_circ_function(), witness, SearchSpace::KeepHeader, move |_| {
        t.clone()
    })
}

/// `f ≤ ℓ_f`: `α(x) = 0^|f(x)| 1 x`, `β(0^m 1 z) = z`. An inverse `ℓ′` is
/// transported by asking, for `m = 0, 1, …, p_f(|y|)`, whether `0^m 1 y` is
/// in its domain (answered as `ℓ_f(ℓ′(t)) = t`), then applying it.
pub fn lp_reduction(f: &WordFunction) -> Reduction {
    let lift = lp_lift(f);
    let g = f.clone();
    let alpha = WordFunction::new("α[ℓ]", PolyBound::compose(f.bound(), &PolyBound::new(1, 24u32).unwrap()), Provenance::Combinator, move |x| {
        Some(Word::zeros(g.apply(x)?.len()).with(true).concat(x))
    });
    let witness = SimulationWitness { beta: lp_beta(), alpha };
    let (l2, pf) = (lift.clone(), f.bound().clone());
    let mut r = Reduction::new(TransportKind::LpLift, f.clone(), lift, witness, SearchSpace::SameLength, move |inv| {
        let (inv, l, pf) = (inv.clone(), l2.clone(), pf.clone());
        let alpha = WordFunction::new("α′[queries]", pf.clone(), Provenance::Combinator, move |y| {
            let limit = pf.eval_usize(y.len()).to_usize()?;
            (0..=limit)
                .map(|m| Word::zeros(m).with(true).concat(y))
                .find(|t| inv.apply(t).and_then(|z| l.apply(&z)).as_ref() == Some(t))
        });
        SimulationWitness { beta: lp_beta(), alpha }
    });
    r.weak_turing = true;
    r
}

/// Outcome for one sampled inverse of the target.
#[derive(Clone, Debug)]
pub struct SampleReport {
    pub name: String,
    /// First input where the transported inverse fails, if any.
    pub counterexample: Option<Word>,
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub kind: TransportKind,
    /// First input where the forward simulation fails, if any.
    pub simulation: Option<Word>,
    pub samples: Vec<SampleReport>,
    /// Whether every sample produced the same `(β′, α′)` on the tested words.
    pub uniform: bool,
    pub weak_turing: bool,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.simulation.is_none() && self.samples.iter().all(|s| s.counterexample.is_none())
    }

    /// The first failing sample.
    pub fn failing_sample(&self) -> Option<&SampleReport> {
        self.samples.iter().find(|s| s.counterexample.is_some())
    }
}

/// Checks the simulation and, for each sampled inverse of the target, that
/// the transported function inverts the source on inputs up to `l`.
///
/// Samples are first verified as inverses of the target on `A^{≤l}` and on
/// `α(A^{≤l})`.
pub fn check_inversive_reduction(
    r: &Reduction,
    samples: &[WordFunction],
    l: usize,
) -> Result<ReductionReport, InversionError> {
    let inputs: Vec<Word> = Word::all_up_to(l).collect();
    let mut target_inputs = inputs.clone();
    target_inputs.extend(inputs.iter().filter_map(|x| r.witness.alpha.apply(x)));
    for s in samples {
        if let Some(at) = inverse_counterexample(&r.target, s, target_inputs.iter().cloned()) {
            return Err(InversionError::SampleNotInverse { name: s.name().to_string(), at });
        }
    }
    let simulation = simulation_counterexample(&r.source, &r.target, &r.witness, l);
    let images: Vec<Word> = inputs.iter().filter_map(|x| r.source.apply(x)).collect();
    let mut reports = Vec::new();
    let mut sandwiches = Vec::new();
    for s in samples {
        let w = r.transport(s);
        let f1_inv = w.sandwich(s);
        reports.push(SampleReport {
            name: s.name().to_string(),
            counterexample: inverse_counterexample(&r.source, &f1_inv, inputs.iter().cloned()),
        });
        sandwiches.push((w, s.clone()));
    }
    // Uniformity: α′ agrees on the source's images, β′ on every middle value.
    let uniform = sandwiches.windows(2).all(|pair| {
        let ((w1, s1), (w2, s2)) = (&pair[0], &pair[1]);
        images.iter().all(|y| {
            let (a1, a2) = (w1.alpha.apply(y), w2.alpha.apply(y));
            let mids = [a1.as_ref().and_then(|a| s1.apply(a)), a2.as_ref().and_then(|a| s2.apply(a))];
            a1 == a2 && mids.iter().flatten().all(|m| w1.beta.apply(m) == w2.beta.apply(m))
        })
    });
    Ok(ReductionReport { kind: r.kind, simulation, samples: reports, uniform, weak_turing: r.weak_turing })
}

/// The min, max and second inverses of the target, from its oracle.
pub fn standard_samples(r: &Reduction, max_probe: usize) -> Vec<WordFunction> {
    let o = r.target_oracle(max_probe);
    [Selector::Min, Selector::Max, Selector::Ith(2)].into_iter().map(|s| inverse_function(&o, s)).collect()
}
