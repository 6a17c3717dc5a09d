//! Right-ideal morphisms as finite tables.
//!
//! A [`RimTable`] maps a prefix code `P` to words and extends to `P·{0,1}*`
//! by `h(p·z) = h(p)·z`. The empty table is the zero of the monoid.
//!
//! Green-relation checks here are bounded: they look at inputs up to a
//! length `L`. For a table whose domain and image words are all shorter
//! than `L`, every entry is exercised on inputs of length `≤ L`, and the
//! morphism law carries any disagreement found at length `n` to all longer
//! words, so the bounded answer is the answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bounds::PolyBound;
use crate::machine::{Provenance, WordFunction};
use crate::words::{minimal_prefix_code_of, shortest_prefix_in, PrefixCode, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RimError {
    #[error("domain words {0} and {1} overlap: one is a prefix of the other")]
    NotPrefixCode(Word, Word),
    #[error("{0} is not a member of the prefix code")]
    NotInCode(Word),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Anything that can be evaluated pointwise as a partial function.
pub trait PartialMap {
    fn at(&self, x: &Word) -> Option<Word>;

    /// Whether `y` is an image. The default searches inputs up to `radius`.
    fn in_image(&self, y: &Word, radius: usize) -> bool {
        Word::all_up_to(radius).any(|x| self.at(&x).as_ref() == Some(y))
    }
}

impl PartialMap for WordFunction {
    fn at(&self, x: &Word) -> Option<Word> {
        self.apply(x)
    }
}

impl<F: Fn(&Word) -> Option<Word>> PartialMap for F {
    fn at(&self, x: &Word) -> Option<Word> {
        self(x)
    }
}

/// A right-ideal morphism given by its values on a prefix code.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RimTable {
    entries: BTreeMap<Word, Word>,
}

impl RimTable {
    pub fn new(entries: impl IntoIterator<Item = (Word, Word)>) -> Result<Self, RimError> {
        let entries: BTreeMap<Word, Word> = entries.into_iter().collect();
        PrefixCode::new(entries.keys().cloned()).map_err(|(a, b)| RimError::NotPrefixCode(a, b))?;
        Ok(RimTable { entries })
    }

    /// The empty morphism.
    pub fn zero() -> Self {
        RimTable::default()
    }

    pub fn identity() -> Self {
        arrow(&Word::empty(), &Word::empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `domC`, the prefix code generating the domain.
    pub fn dom_code(&self) -> PrefixCode {
        PrefixCode::new(self.entries.keys().cloned()).expect("checked on construction")
    }

    /// `h(p·z) = h(p)·z` for the unique `p ∈ domC` that is a prefix of `x`.
    pub fn apply(&self, x: &Word) -> Option<Word> {
        (0..=x.len()).find_map(|n| {
            let v = self.entries.get(&x.prefix(n))?;
            Some(v.concat(&x.suffix_from(n).unwrap()))
        })
    }

    /// `self ∘ h`: apply `h` first.
    pub fn compose(&self, h: &RimTable) -> RimTable {
        let mut out = BTreeMap::new();
        for (p, v) in &h.entries {
            if let Some(gv) = self.apply(v) {
                out.insert(p.clone(), gv);
                continue;
            }
            // `v` is too short for `self` to decide: split `p` by the rest
            // of each domain word that extends `v`.
            for (q, gq) in &self.entries {
                if let Some(s) = q.strip_prefix(v) {
                    out.insert(p.concat(&s), gq.clone());
                }
            }
        }
        RimTable { entries: out }
    }

    /// `imC`: the prefix code generating the image ideal.
    ///
    /// Image words need not form a prefix code, so this is recomputed from
    /// membership rather than read off the table.
    pub fn im_code(&self) -> PrefixCode {
        let max = self.entries.values().map(Word::len).max().unwrap_or(0);
        minimal_prefix_code_of(|y| self.in_image(y, 0), max)
    }

    /// The inverse built from shortest preimages of `imC`: for each
    /// generator `v`, the shortest (then least) domain word mapping to it.
    pub fn inverse(&self) -> RimTable {
        let code = self.im_code();
        let entries = code.iter().map(|v| {
            let p = self
                .entries
                .iter()
                .filter(|(_, fv)| *fv == v)
                .map(|(p, _)| p)
                .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
                .expect("image generators are table values");
            (v.clone(), p.clone())
        });
        RimTable { entries: entries.collect() }
    }

    /// As a [`WordFunction`]; the bound covers the longest entry.
    pub fn to_function(&self, name: impl Into<String>) -> WordFunction {
        let longest = self.entries.iter().map(|(p, v)| p.len().max(v.len())).max().unwrap_or(0);
        let bound = PolyBound::new(1, 12 * (longest as u64 + 1)).unwrap();
        let t = self.clone();
        WordFunction::new(name, bound, Provenance::Table, move |x| t.apply(x))
    }
}

impl PartialMap for RimTable {
    fn at(&self, x: &Word) -> Option<Word> {
        self.apply(x)
    }

    /// Exact: `y` is an image iff some table value is a prefix of it.
    fn in_image(&self, y: &Word, _radius: usize) -> bool {
        self.entries.values().any(|v| v.is_prefix_of(y))
    }
}

/// `(v ← u)`, the morphism `u·x ↦ v·x`.
pub fn arrow(v: &Word, u: &Word) -> RimTable {
    RimTable { entries: BTreeMap::from([(u.clone(), v.clone())]) }
}

impl fmt::Display for RimTable {
    /// One `p -> q` line per entry, in dictionary order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.iter().try_for_each(|(p, v)| writeln!(f, "{p} -> {v}"))
    }
}

impl fmt::Debug for RimTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl FromStr for RimTable {
    type Err = RimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.split('%').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (p, v) = line
                .split_once("->")
                .ok_or_else(|| RimError::Parse { line: i + 1, msg: "expected `p -> q`".into() })?;
            entries.push((p.trim().parse()?, v.trim().parse()?));
        }
        RimTable::new(entries)
    }
}

/// Whether two maps agree in value and definedness on all words of length `≤ l`.
pub fn agree_up_to(f: &impl PartialMap, g: &impl PartialMap, l: usize) -> bool {
    first_disagreement(f, g, l).is_none()
}

pub fn first_disagreement(f: &impl PartialMap, g: &impl PartialMap, l: usize) -> Option<Word> {
    Word::all_up_to(l).find(|x| f.at(x) != g.at(x))
}

/// Outcome of the bounded right-order test `f ≤_R r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightOrder {
    /// `f = r ∘ r′ ∘ f` on inputs of length `≤ L`.
    pub eq_holds: bool,
    /// Every image of an input of length `≤ L` lies in `Im(r)`.
    pub image_included: bool,
}

/// Outcome of the bounded left-order test `f ≤_L r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftOrder {
    /// `f = f ∘ r′ ∘ r` on inputs of length `≤ L`.
    pub eq_holds: bool,
    /// `Dom(f) ⊆ Dom(r)` and `r(x₁) = r(x₂) ⇒ f(x₁) = f(x₂)` on `Dom(r)`, undefined
    /// counting as a value, up to `L`.
    pub partition_coarser: bool,
}

/// `f ≤_R r` for regular `r` with inverse `r_inv`, tested up to length `l`.
///
/// Images are the values of inputs up to `l`; `Im(r)` membership is asked of
/// `r` with the same radius (exact for tables).
pub fn green_leq_r(f: &impl PartialMap, r: &impl PartialMap, r_inv: &impl PartialMap, l: usize) -> RightOrder {
    let images: Vec<(Word, Word)> = Word::all_up_to(l).filter_map(|x| f.at(&x).map(|y| (x, y))).collect();
    let eq_holds = Word::all_up_to(l).all(|x| {
        let y = f.at(&x);
        y.clone().and_then(|y| r_inv.at(&y)).and_then(|z| r.at(&z)) == y
    });
    let image_included = images.iter().all(|(_, y)| r.in_image(y, l));
    RightOrder { eq_holds, image_included }
}

/// `f ≤_L r` for regular `r` with inverse `r_inv`, tested up to length `l`.
pub fn green_leq_l(f: &impl PartialMap, r: &impl PartialMap, r_inv: &impl PartialMap, l: usize) -> LeftOrder {
    let eq_holds = Word::all_up_to(l).all(|x| f.at(&x) == r.at(&x).and_then(|y| r_inv.at(&y)).and_then(|z| f.at(&z)));
    // A class of r must be wholly inside or wholly outside Dom(f).
    let mut classes: BTreeMap<Word, Option<Word>> = BTreeMap::new();
    let partition_coarser = Word::all_up_to(l).all(|x| match (r.at(&x), f.at(&x)) {
        (None, fx) => fx.is_none(),
        (Some(rx), fx) => *classes.entry(rx).or_insert_with(|| fx.clone()) == fx,
    });
    LeftOrder { eq_holds, partition_coarser }
}

/// The pair `π, π′` attached to a prefix code `P` and a member `p₀`:
/// `π` prefixes `p₀` to words outside `(P−{p₀})·{0,1}*`, `π′` undoes it.
pub fn pp0_pair(code: &PrefixCode, p0: &Word) -> Result<(WordFunction, WordFunction), RimError> {
    if !code.contains(p0) {
        return Err(RimError::NotInCode(p0.clone()));
    }
    let rest = PrefixCode::new(code.iter().filter(|p| *p != p0).cloned()).unwrap();
    let bound = PolyBound::new(1, 12 * (p0.len() as u64 + 1)).unwrap();
    let (r1, q1) = (rest.clone(), p0.clone());
    let pi = WordFunction::new(format!("π[{p0}]"), bound.clone(), Provenance::Table, move |x| {
        Some(if r1.generates(x) { x.clone() } else { q1.concat(x) })
    });
    let q2 = p0.clone();
    let pi_prime = WordFunction::new(format!("π′[{p0}]"), bound, Provenance::Table, move |x| {
        if rest.generates(x) {
            Some(x.clone())
        } else {
            x.strip_prefix(&q2)
        }
    });
    Ok((pi, pi_prime))
}

/// `f′(y) = f₀′(p)·z` where `p` is the shortest prefix of `y` in `Im(f)`
/// and `y = p·z`; `f₀′` only needs to invert `f` on image words.
pub fn rim_inverse_from_point_inverse(
    f0_inv: impl Fn(&Word) -> Option<Word> + Send + Sync + 'static,
    im_member: impl Fn(&Word) -> bool + Send + Sync + 'static,
    bound: PolyBound,
) -> WordFunction {
    WordFunction::new("f′[shortest prefix]", bound, Provenance::Combinator, move |y| {
        let p = shortest_prefix_in(y, &im_member)?;
        Some(f0_inv(&p)?.concat(&y.suffix_from(p.len()).unwrap()))
    })
}

/// [`rim_inverse_from_point_inverse`] for a table, with the point inverse
/// found by searching the domain code.
pub fn shortest_prefix_inverse(f: &RimTable) -> WordFunction {
    let (g, h) = (f.clone(), f.clone());
    let longest = f.entries().map(|(p, v)| p.len().max(v.len())).max().unwrap_or(0);
    let bound = PolyBound::new(1, 12 * (longest as u64 + 1)).unwrap();
    let f0_inv = move |y: &Word| {
        // y is an image with no shorter image prefix, so it is a table value
        // or a value extended by a suffix; take the shortest such preimage.
        g.entries()
            .filter_map(|(p, v)| y.strip_prefix(v).map(|z| p.concat(&z)))
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
    };
    rim_inverse_from_point_inverse(f0_inv, move |y| h.in_image(y, 0), bound)
}

/// `ψ_f(0) = ε`, `ψ_f(1x) = 1·f(x)`.
pub fn psi_lift(f: &WordFunction) -> WordFunction {
    let g = f.clone();
    let bound = PolyBound::compose(f.bound(), &PolyBound::new(1, 24u32).unwrap());
    WordFunction::new(format!("ψ[{}]", f.name()), bound, Provenance::Combinator, move |x| match x.first() {
        Some(false) if x.len() == 1 => Some(Word::empty()),
        Some(true) => Some(Word::from(vec![true]).concat(&g.apply(&x.suffix_from(1).unwrap())?)),
        _ => None,
    })
}

/// `(ε ← y₀) ∘ f ∘ (x₀ ← ε)` for the first domain word `x₀` and `y₀ = f(x₀)`;
/// the identity whenever `f` is not the zero.
pub fn j0_witness(f: &RimTable) -> Option<RimTable> {
    let (x0, y0) = f.entries().next()?;
    Some(arrow(&Word::empty(), y0).compose(&f.compose(&arrow(x0, &Word::empty()))))
}

/// Whether `f` is total and injective on inputs of length `≤ l`.
pub fn total_injective_up_to(f: &impl PartialMap, l: usize) -> bool {
    let mut seen = BTreeSet::new();
    Word::all_up_to(l).all(|x| f.at(&x).is_some_and(|y| seen.insert(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn t(s: &str) -> RimTable {
        s.replace(';', "\n").parse().unwrap()
    }

    #[test]
    fn application() {
        assert_eq!(t("0 -> 00; 1 -> 01").apply(&w("10")), Some(w("010")));
        assert_eq!(t("00 -> 1").apply(&w("01")), None);
        assert_eq!(arrow(&w("11"), &w("")).apply(&w("0")), Some(w("110")));
        assert_eq!(arrow(&w("1"), &w("0")).apply(&w("01")), Some(w("11")));
        assert!("0 -> 1\n01 -> 1".parse::<RimTable>().is_err());
    }

    #[test]
    fn composition() {
        let id = arrow(&w(""), &w("0")).compose(&arrow(&w("0"), &w("")));
        assert!(agree_up_to(&id, &RimTable::identity(), 6));
        assert!(RimTable::zero().compose(&t("0 -> 1")).is_empty());
        assert_eq!(t("0 -> 1").compose(&t("1 -> 0")), t("1 -> 1"));
        // v shorter than the outer domain words.
        let c = t("00 -> 1; 01 -> ε").compose(&t("1 -> 0"));
        assert_eq!(c, t("10 -> 1; 11 -> ε"));
    }

    #[test]
    fn image_code_can_be_smaller_than_values() {
        let f = t("0 -> 1; 10 -> 11");
        assert_eq!(f.im_code().iter().cloned().collect::<Vec<_>>(), vec![w("1")]);
        assert_eq!(f.inverse(), t("1 -> 0"));
    }

    #[test]
    fn green_examples() {
        let r = arrow(&w("0"), &w(""));
        let r_inv = arrow(&w(""), &w("0"));
        assert_eq!(
            green_leq_r(&arrow(&w("00"), &w("")), &r, &r_inv, 5),
            RightOrder { eq_holds: true, image_included: true }
        );
        assert_eq!(
            green_leq_r(&arrow(&w("1"), &w("")), &r, &r_inv, 5),
            RightOrder { eq_holds: false, image_included: false }
        );
        let id = RimTable::identity();
        assert_eq!(
            green_leq_l(&r_inv, &id, &id, 6),
            LeftOrder { eq_holds: true, partition_coarser: true }
        );
        // x ↦ 0x is injective and total, so the identity sits below it.
        let shift = t("ε -> 0");
        assert!(green_leq_l(&id, &shift, &shift.inverse(), 6).eq_holds);
        // Forgetting the first bit merges 0 and 1 and loses ε.
        let collapse = t("0 -> ε; 1 -> ε");
        let l = green_leq_l(&id, &collapse, &collapse.inverse(), 6);
        assert!(!l.eq_holds && !l.partition_coarser);
    }

    #[test]
    fn pp0_examples() {
        let code = PrefixCode::new([w("0"), w("1")]).unwrap();
        let (pi, pi_p) = pp0_pair(&code, &w("1")).unwrap();
        assert_eq!(pi.apply(&w("01")), Some(w("01")));
        assert_eq!(pi.apply(&w("10")), Some(w("110")));
        assert_eq!(pi.apply(&w("")), Some(w("1")));
        assert_eq!(pi_p.apply(&w("110")), Some(w("10")));
        assert_eq!(pi_p.apply(&w("011")), Some(w("011")));
        assert!(pp0_pair(&code, &w("00")).is_err());
    }

    #[test]
    fn shortest_prefix_inverse_examples() {
        let f = t("0 -> 00; 1 -> 01");
        let g = shortest_prefix_inverse(&f);
        assert_eq!(g.apply(&w("010")), Some(w("10")));
        assert_eq!(g.apply(&w("11")), None);
        let id = shortest_prefix_inverse(&RimTable::identity());
        assert!(Word::all_up_to(5).all(|x| id.apply(&x) == Some(x.clone())));
    }

    #[test]
    fn psi_examples() {
        let id = RimTable::identity().to_function("id");
        let psi = psi_lift(&id);
        assert_eq!(psi.apply(&w("10")), Some(w("10")));
        assert_eq!(psi.apply(&w("0")), Some(w("")));
        assert_eq!(psi.apply(&w("")), None);
        assert_eq!(psi.apply(&w("01")), None);
    }

    #[test]
    fn j0_identity() {
        let f = t("01 -> 1; 1 -> 00");
        assert!(agree_up_to(&j0_witness(&f).unwrap(), &RimTable::identity(), 6));
        assert!(j0_witness(&RimTable::zero()).is_none());
    }
}
