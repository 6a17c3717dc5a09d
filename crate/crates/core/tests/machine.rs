use std::collections::BTreeSet;

use num_bigint::BigUint;

use fpm::bounds::bound;
use fpm::eval::{compile_alpha, compile_beta, eval_generator_word, GeneratorWord, Q2Config};
use fpm::machine::{
    choice_run, compile_fm, contains_one, fm, guess_double_zero, parse_program, parse_text, render_text,
    run_counted, serialize_program, stock, ChoiceProgram,
};
use fpm::words::{pair, Word};

#[test]
fn runs_are_deterministic() {
    for (name, w) in stock::corpus() {
        for x in Word::all_up_to(5) {
            assert_eq!(run_counted(&w, &x), run_counted(&w, &x), "{name} at {x}");
        }
    }
}

#[test]
fn larger_budgets_keep_results() {
    for (name, w) in stock::corpus() {
        let Ok(bigger) = w.with_bound(bound(w.bound().k() + 1, 64)) else { continue };
        assert!(w.bound().leq(bigger.bound()));
        for x in Word::all_up_to(6) {
            let (a, b) = (run_counted(&w, &x), run_counted(&bigger, &x));
            if a.is_output() {
                assert_eq!(a.result, b.result, "{name} at {x}");
            }
        }
    }
}

#[test]
fn successful_runs_are_balanced() {
    for (name, w) in stock::corpus() {
        for x in Word::all_up_to(7) {
            let Some(y) = run_counted(&w, &x).output() else { continue };
            let p = w.bound();
            assert!(BigUint::from(y.len()) <= p.eval_usize(x.len()), "{name}: |y| too big at {x}");
            assert!(BigUint::from(x.len()) <= p.eval_usize(y.len()), "{name}: |x| too big at {x}");
        }
    }
}

#[test]
fn serialization_round_trips_through_both_forms() {
    for (name, w) in stock::corpus() {
        let u = serialize_program(&w);
        let back = parse_program(&u).unwrap();
        assert_eq!(serialize_program(&back), u, "{name}");
        let text = parse_text(&render_text(&w)).unwrap();
        assert_eq!(serialize_program(&text), u, "{name}");
    }
}

/// Words `x` of length `≤ n` that `m` accepts with some choice string of length `≤ s`.
fn language(m: &ChoiceProgram, n: usize, s: usize) -> BTreeSet<Word> {
    Word::all_up_to(n).filter(|x| Word::all_up_to(s).any(|c| choice_run(m, x, &c))).collect()
}

#[test]
fn image_of_fm_is_the_accepted_language() {
    for (m, accepts) in [
        (contains_one(), (|x: &Word| x.bits().contains(&true)) as fn(&Word) -> bool),
        (guess_double_zero(), |x: &Word| x.bits().windows(2).any(|p| p == [false, false])),
    ] {
        let f = fm(&m);
        let program = compile_fm(&m).unwrap();
        let lang = language(&m, 8, 9);
        let expected: BTreeSet<Word> = Word::all_up_to(8).filter(accepts).collect();
        assert_eq!(lang, expected);
        let mut image = BTreeSet::new();
        for x in Word::all_up_to(6) {
            for s in Word::all_up_to(7) {
                let t = pair(&x, &s);
                let y = f.apply(&t);
                assert_eq!(y, run_counted(&program, &t).output(), "compiled f_M at {x}, {s}");
                image.extend(y);
            }
        }
        let small: BTreeSet<Word> = expected.into_iter().filter(|x| x.len() <= 6).collect();
        assert_eq!(image, small);
    }
}

#[test]
fn generator_words_evaluate_like_their_source_programs() {
    let cfg = Q2Config::default();
    for w in [stock::identity(), stock::negation(), stock::constant_empty(), stock::first_bit()] {
        let s = compile_beta(&serialize_program(&w));
        for x in Word::all_up_to(4) {
            assert_eq!(eval_generator_word(&s, &x, cfg), run_counted(&w, &x).output(), "{x}");
        }
    }
}

// Bounds compose multiplicatively, so compiled programs are checked on short words.
#[test]
fn compiled_generator_words_run_like_the_words() {
    let cfg = Q2Config::default();
    for src in ["pi1", "pi0 pi1", "contr pi1", "contr expand pi1", "recontr reexpand pi0", "pi1' pi1' pi0"] {
        let s: GeneratorWord = src.parse().unwrap();
        let p = compile_alpha(&s, cfg);
        for x in Word::all_up_to(4) {
            assert_eq!(run_counted(&p, &x).output(), eval_generator_word(&s, &x, cfg), "{src} at {x}");
        }
    }
}
