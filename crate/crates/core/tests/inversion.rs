use std::collections::BTreeSet;

use fpm::bounds::bound;
use fpm::inversion::{
    check_inversive_reduction, f_prime_ith, f_prime_select, inverse_function, standard_samples, verify_inverse,
    Direction, EnumOracle, Reduction, SearchSpace, Selector, SimulationWitness, TransportKind, Verdict,
};
use fpm::machine::{stock, Provenance, WordFunction};
use fpm::rim::{green_leq_r, RimTable};
use fpm::words::Word;

const PROBE: usize = 10;

fn fixtures() -> Vec<WordFunction> {
    let mut fs: Vec<WordFunction> = ["truncate-half", "first-bit", "negation", "rotate", "drop-first"]
        .into_iter()
        .map(|name| {
            let w = stock::corpus().into_iter().find(|(n, _)| *n == name).unwrap().1;
            WordFunction::from_program(name, w)
        })
        .collect();
    fs.push(WordFunction::new("popcount-parity", bound(1, 12), Provenance::Table, |x| {
        Some(Word::from_bits([x.bits().iter().filter(|&&b| b).count() % 2 == 1]))
    }));
    fs
}

fn preimages(f: &WordFunction, o: &EnumOracle, y: &Word) -> Vec<Word> {
    let (radius, _) = o.radius(y.len());
    let set: BTreeSet<Word> = Word::all_up_to(radius).filter(|x| f.apply(x).as_ref() == Some(y)).collect();
    set.into_iter().collect()
}

#[test]
fn min_max_and_ith_are_consistent() {
    for f in fixtures() {
        let o = EnumOracle::new(&f, PROBE, SearchSpace::All);
        for y in Word::all_up_to(4) {
            let pre = preimages(&f, &o, &y);
            let lo = f_prime_select(&o, Direction::Min, &y).unwrap();
            let hi = f_prime_select(&o, Direction::Max, &y).unwrap();
            assert_eq!(lo.as_ref(), pre.first(), "{} min at {y}", f.name());
            assert_eq!(hi.as_ref(), pre.last(), "{} max at {y}", f.name());
            let (Some(lo), Some(hi)) = (lo, hi) else { continue };
            assert!(lo <= hi);
            assert_eq!(lo == hi, pre.len() == 1);
            assert_eq!(f.apply(&lo), Some(y.clone()));
            assert_eq!(f_prime_ith(&o, 1, &y), Some(lo));
            assert_eq!(f_prime_ith(&o, usize::MAX, &y), Some(hi));
        }
    }
}

#[test]
fn image_oracle_matches_a_verified_inverse() {
    for f in fixtures() {
        let o = EnumOracle::new(&f, PROBE, SearchSpace::All);
        let inv = inverse_function(&o, Selector::Min);
        assert!(verify_inverse(&f, &inv, 5), "{}", f.name());
        for y in Word::all_up_to(4) {
            let via_inverse = inv.apply(&y).and_then(|x| f.apply(&x)).as_ref() == Some(&y);
            let v = o.image_member(&y);
            assert_eq!(v.is_yes(), via_inverse, "{} at {y}", f.name());
            if !via_inverse {
                let (_, capped) = o.radius(y.len());
                assert_eq!(v, if capped { Verdict::NoWithinCap } else { Verdict::No });
            }
        }
    }
}

#[test]
fn same_length_space_for_permutations() {
    let f = &fixtures()[3];
    let o = EnumOracle::new(f, PROBE, SearchSpace::SameLength);
    for y in Word::all_up_to(8) {
        let x = f_prime_select(&o, Direction::Min, &y).unwrap().unwrap();
        assert_eq!(x.len(), y.len());
        assert_eq!(f.apply(&x), Some(y));
    }
}

fn tables() -> Vec<RimTable> {
    ["0 -> 1\n1 -> 0", "ε -> ε", "00 -> 0\n01 -> 10\n1 -> 11", "0 -> 0", "1 -> 0", "0 -> 00\n1 -> 01", "ε -> 0", "0 -> 11\n1 -> 10"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// `f ≤_R g` gives `f = g ∘ (g₀′ f)`; an inverse `s` of `g` yields the
/// inverse `f₀′ ∘ g ∘ s` of `f`.
fn right_reduction(f: &RimTable, g: &RimTable) -> Reduction {
    let (ff, gf) = (f.to_function("f"), g.to_function("g"));
    let alpha = ff.then(&g.inverse().to_function("g₀′"));
    let id = WordFunction::new("id", bound(1, 12), Provenance::Table, |x| Some(x.clone()));
    let beta_prime = gf.then(&f.inverse().to_function("f₀′"));
    let witness = SimulationWitness { beta: id.clone(), alpha };
    Reduction::new(TransportKind::Custom, ff, gf, witness, SearchSpace::All, move |_| SimulationWitness {
        beta: beta_prime.clone(),
        alpha: id.clone(),
    })
}

#[test]
fn right_equivalent_tables_transport_inverses_both_ways() {
    let ts = tables();
    let mut pairs = 0;
    for f in &ts {
        for g in &ts {
            let fg = green_leq_r(f, g, &g.inverse(), 6).eq_holds;
            let gf = green_leq_r(g, f, &f.inverse(), 6).eq_holds;
            if !(fg && gf) {
                continue;
            }
            for r in [right_reduction(f, g), right_reduction(g, f)] {
                let samples = standard_samples(&r, 7);
                let report = check_inversive_reduction(&r, &samples, 4).unwrap();
                assert!(report.passed(), "{f:?} vs {g:?}: {report:?}");
            }
            pairs += 1;
        }
    }
    // Identity, the swap and the three-way split share the full image.
    assert!(pairs >= 9, "only {pairs} pairs");
}
