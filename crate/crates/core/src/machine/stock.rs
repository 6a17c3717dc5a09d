//! Small programs used as fixtures, in the docs and by the generator compiler.
//!
//! Every bound here is chosen so that the counter never fires: the budget
//! always covers the program's actual running time.

use super::{choice, parse_text, PolyProgram};

fn load(src: &str) -> PolyProgram {
    parse_text(src).expect("stock program parses")
}

/// `x ↦ x` in `|x| + 1` steps, bound `12n + 12`.
pub fn identity() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start copy
         accept done
         copy 0 -> copy 0 R 0
         copy 1 -> copy 1 R 1
         copy _ -> done _ S -",
    )
}

/// Flips every bit.
pub fn negation() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start flip
         accept done
         flip 0 -> flip 0 R 1
         flip 1 -> flip 1 R 0
         flip _ -> done _ S -",
    )
}

/// `x ↦` first bit of `x`; undefined on ε.
pub fn first_bit() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start s
         accept done
         s 0 -> done 0 S 0
         s 1 -> done 1 S 1",
    )
}

/// `x ↦ ε`. Balance makes it undefined once `|x| > 12`.
pub fn constant_empty() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start s
         accept done
         s 0 -> done 0 S -
         s 1 -> done 1 S -
         s _ -> done _ S -",
    )
}

/// `x ↦ 01`.
pub fn constant_01() -> PolyProgram {
    load(
        "bound k=1 a=24
         tapes 1
         start s
         accept done
         s 0 -> t 0 S 0
         s 1 -> t 1 S 0
         s _ -> t _ S 0
         t 0 -> done 0 S 1
         t 1 -> done 1 S 1
         t _ -> done _ S 1",
    )
}

/// `x ↦ xx` in `3|x| + 3` steps.
pub fn doubling() -> PolyProgram {
    load(
        "bound k=1 a=36
         tapes 2
         start copy
         accept done
         copy 0_ -> copy 00 RR 0
         copy 1_ -> copy 11 RR 1
         copy __ -> back __ SL -
         back _0 -> back _0 SL -
         back _1 -> back _1 SL -
         back _^ -> again _^ SR -
         again _0 -> again _0 SR 0
         again _1 -> again _1 SR 1
         again __ -> done __ SS -",
    )
}

/// `x ↦` its first `⌊|x|/2⌋` bits.
pub fn truncate_half() -> PolyProgram {
    let mut src = String::from(
        "bound k=1 a=36
         tapes 2
         start copy
         accept done
         copy 0_ -> copy 00 RR -
         copy 1_ -> copy 11 RR -
         copy __ -> rewind __ LL -
         rewind ^^ -> p ^^ RS -
         p _^ -> done _^ SS -
         q _^ -> done _^ SS -
        ",
    );
    for a in ['0', '1'] {
        for b in ['0', '1', '^'] {
            src += &format!("rewind {a}{b} -> rewind {a}{b} LS -\n");
        }
        src += &format!("rewind ^{a} -> p ^{a} RS -\n");
        src += &format!("p {a}^ -> done {a}^ SS -\n");
        src += &format!("q {a}^ -> done {a}^ SS -\n");
        for b in ['0', '1'] {
            src += &format!("p {a}{b} -> q {a}{b} SL -\n");
            src += &format!("p _{b} -> q _{b} SL -\n");
            src += &format!("q {a}{b} -> p {a}{b} RL {a}\n");
        }
    }
    load(&dedup(&src))
}

/// Moves the first bit to the end; ε stays ε.
pub fn rotate() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start s
         accept done
         s 0 -> r0 0 R -
         s 1 -> r1 1 R -
         s _ -> done _ S -
         r0 0 -> r0 0 R 0
         r0 1 -> r0 1 R 1
         r0 _ -> done _ S 0
         r1 0 -> r1 0 R 0
         r1 1 -> r1 1 R 1
         r1 _ -> done _ S 1",
    )
}

/// Never halts; every run ends in a timeout.
pub fn looping() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start s
         accept done
         s 0 -> s 0 S -
         s 1 -> s 1 S -
         s _ -> s _ S -",
    )
}

/// `π_b : x ↦ b·x`.
pub fn prepend(bit: bool) -> PolyProgram {
    let b = if bit { '1' } else { '0' };
    load(&format!(
        "bound k=1 a=24
         tapes 1
         start s
         accept done
         s 0 -> copy 0 S {b}
         s 1 -> copy 1 S {b}
         s _ -> copy _ S {b}
         copy 0 -> copy 0 R 0
         copy 1 -> copy 1 R 1
         copy _ -> done _ S -"
    ))
}

/// `π₁′ : bx ↦ x`; undefined on ε.
pub fn drop_first() -> PolyProgram {
    load(
        "bound k=1 a=12
         tapes 1
         start s
         accept done
         s 0 -> copy 0 R -
         s 1 -> copy 1 R -
         copy 0 -> copy 0 R 0
         copy 1 -> copy 1 R 1
         copy _ -> done _ S -",
    )
}

fn dedup(src: &str) -> String {
    let mut seen = std::collections::HashSet::new();
    src.lines().filter(|l| seen.insert(l.trim().to_string())).collect::<Vec<_>>().join("\n")
}

/// The fixture corpus: every program above that halts, plus two `f_M` programs.
pub fn corpus() -> Vec<(&'static str, PolyProgram)> {
    vec![
        ("identity", identity()),
        ("negation", negation()),
        ("first-bit", first_bit()),
        ("constant-ε", constant_empty()),
        ("constant-01", constant_01()),
        ("doubling", doubling()),
        ("truncate-half", truncate_half()),
        ("rotate", rotate()),
        ("prepend-0", prepend(false)),
        ("drop-first", drop_first()),
        ("f_M contains-1", choice::compiled_contains_one()),
        ("f_M guess-00", choice::compiled_guess_double_zero()),
    ]
}
