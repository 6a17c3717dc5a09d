use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use clap::CommandFactory;

use fpm_cli::{main_with, Cli, COVERAGE};

fn fpm(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fpm").chain(args.iter().copied()).map(String::from);
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fpm"));
    cmd.args(args).env_remove("FPM_MAX_PROBE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fpm-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const IDENTITY: &str = "\
# copies its input
bound k=1 a=12
tapes 1
start copy
accept done
copy 0 -> copy 0 R 0
copy 1 -> copy 1 R 1
copy _ -> done _ S -
";

#[test]
fn run_identity_prints_the_input() {
    let p = scratch("identity.tm", IDENTITY);
    let (code, out, _) = fpm(&["run", p.to_str().unwrap(), "--input", "0101", "--format", "machine"]);
    assert_eq!((code, out.as_str()), (0, "0101\n"));
    let (code, out, _) = fpm(&["run", "stock:identity", "-i", "01"]);
    assert_eq!((code, out.as_str()), (0, "01 -> 01\n"));
}

#[test]
fn invert_min_on_a_program_file() {
    let p = scratch("identity-inv.tm", IDENTITY);
    let (code, out, _) = fpm(&["invert", "--min", "--input", "11", p.to_str().unwrap(), "--format", "machine"]);
    assert_eq!((code, out.as_str()), (0, "11\n"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["star-eval", "stock:identity", "--input", "01", "--q2-c", "11"][..],
        &["run", "stock:identity", "--input", "01x"],
        &["frobnicate"],
        &["invert", "stock:identity", "--input", "1"],
        &["invert", "stock:identity", "--input", "1", "--min", "--max"],
    ] {
        assert_eq!(fpm(args).0, 2, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_1() {
    assert_eq!(fpm(&["run", "/nonexistent/prog.tm", "-i", "0"]).0, 1);
    assert_eq!(fpm(&["run", "stock:no-such-program", "-i", "0"]).0, 1);
    assert_eq!(fpm(&["circuit-synth", "stock:doubling", "--n", "2"]).0, 1);
    let bad = scratch("bad.tm", "bound k=1 a=11\n");
    assert_eq!(fpm(&["run", bad.to_str().unwrap(), "-i", "0"]).0, 1);
}

#[test]
fn machine_format_markers() {
    let (_, out, _) = fpm(&["run", "stock:looping", "-i", "0", "--format", "machine"]);
    assert_eq!(out, "REJECT(timeout)\n");
    let (_, out, _) = fpm(&["run", "stock:constant-empty", "-i", "01", "--format", "machine"]);
    assert_eq!(out, "\n");
    let (_, out, _) = fpm(&["invert", "stock:constant-01", "-i", "1", "--min", "--same-length", "--format", "machine"]);
    assert_eq!(out, "UNDEF\n");
    // The balance bound of first-bit exceeds the probe, so the miss is labeled.
    let (_, out, _) = fpm(&["invert", "stock:first-bit", "-i", "00", "--min", "--format", "machine", "--max-probe", "6"]);
    assert_eq!(out, "NONE≤6\n");
    let (_, out, _) = fpm(&["invert", "stock:doubling", "-i", "1", "--min", "--format", "machine"]);
    assert_eq!(out, "NONE≤12\n");
}

#[test]
fn word_problem_reports_bounded_equality_or_a_witness() {
    let (code, out, _) = fpm(&["word-problem", "pi1", "pi1", "--max-len", "6"]);
    assert_eq!((code, out.as_str()), (0, "NONE≤6\n"));
    let (_, out, _) = fpm(&["word-problem", "pi0", "pi1", "--format", "machine"]);
    assert_eq!(out, "\n");
}

#[test]
fn star_eval_agrees_with_run_on_the_corpus() {
    for name in ["identity", "negation", "doubling", "truncate-half", "f_m-contains-1"] {
        let prog = format!("stock:{name}");
        let (code, out, err) = fpm(&["star-eval", &prog, "--max-len", "3", "--format", "machine"]);
        assert_eq!(code, 0, "{name}: {err}");
        let (_, direct, _) = fpm(&["run", &prog, "--max-len", "3", "--format", "machine"]);
        let direct = direct.replace("REJECT(noOutput)", "UNDEF");
        assert_eq!(out, direct, "{name}");
    }
}

#[test]
fn serialize_then_parse_round_trips() {
    for name in ["identity", "rotate", "f_m-guess-00"] {
        let prog = format!("stock:{name}");
        let (_, ser, _) = fpm(&["serialize", &prog]);
        let (code, text, _) = fpm(&["parse", ser.trim()]);
        assert_eq!(code, 0);
        let p = scratch(&format!("{name}.tm"), &text);
        let (_, again, _) = fpm(&["serialize", p.to_str().unwrap()]);
        assert_eq!(ser, again, "{name}");
        // A file holding the serialized word loads too.
        let s = scratch(&format!("{name}.ser"), &ser);
        let (_, a, _) = fpm(&["run", s.to_str().unwrap(), "--max-len", "3"]);
        let (_, b, _) = fpm(&["run", &prog, "--max-len", "3"]);
        assert_eq!(a, b);
    }
}

#[test]
fn circuits_and_formulas() {
    let c = scratch("and.circ", "g0 = IN 0\ng1 = IN 1\ng2 = AND g0 g1\ng3 = OR g0 g1\nOUT g2 g3\n");
    let (_, out, _) = fpm(&["circuit-eval", c.to_str().unwrap(), "-i", "01", "-i", "11", "--format", "machine"]);
    assert_eq!(out, "01\n11\n");
    let (_, out, _) = fpm(&["circuit-invert", c.to_str().unwrap(), "-i", "01", "-i", "10", "--format", "machine"]);
    assert_eq!(out, "01\nUNDEF\n");
    let f = scratch("f.cnf", "c x1 or not x2\np cnf 2 1\n1 -2 0\n");
    let (_, out, _) = fpm(&["circuit-eval", "--cnf", f.to_str().unwrap(), "-i", "01", "-i", "10", "--format", "machine"]);
    assert_eq!(out, "0\n1\n");
    let (code, synth, _) = fpm(&["circuit-synth", "stock:rotate", "--n", "3"]);
    assert_eq!(code, 0);
    let s = scratch("rot.circ", &synth);
    let (_, out, _) = fpm(&["circuit-eval", s.to_str().unwrap(), "-i", "011", "--format", "machine"]);
    assert_eq!(out, "110\n");
}

#[test]
fn lp_reduce_finds_shortest_preimages() {
    let (code, out, _) = fpm(&["lp-reduce", "stock:truncate-half", "-i", "1", "-i", "01", "--format", "machine"]);
    assert_eq!((code, out.as_str()), (0, "10\n0100\n"));
}

#[test]
fn reductions_check_out() {
    for kind in ["encoding", "evaluator", "circuit", "lp"] {
        let prog = if kind == "circuit" { "stock:negation" } else { "stock:truncate-half" };
        let (code, out, err) =
            fpm(&["reduce", prog, "--kind", kind, "--check", "--max-len", "4", "--max-probe", "7", "--q2-c", "36", "--format", "machine"]);
        assert_eq!((code, out.as_str()), (0, "1 1\n"), "{kind}: {err}");
    }
}

#[test]
fn green_inline_tables() {
    let (code, out, _) = fpm(&["green", "0 -> ε", "0 -> 0; 1 -> 0", "--format", "machine"]);
    assert_eq!((code, out.as_str()), (0, "R 0 0\nL 0 0\n"));
    let (_, out, _) = fpm(&["green", "0 -> 00; 1 -> 01", "ε -> 0", "--format", "machine"]);
    assert_eq!(out, "R 1 1\nL 1 1\n");
    let (_, out, _) = fpm(&["green", "ε -> 0", "0 -> ε", "--format", "machine"]);
    assert_eq!(out, "R 1 1\nL 0 0\n");
}

#[test]
fn env_cap_lowers_the_probe() {
    let o = binary(&["invert", "stock:truncate-half", "-i", "111", "--min", "--format", "machine"], &[("FPM_MAX_PROBE", "4")]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "NONE≤4\n");
    let o = binary(&["invert", "stock:truncate-half", "-i", "111", "--min", "--format", "machine"], &[]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "111000\n");
    let o = binary(&["demo"], &[("FPM_MAX_PROBE", "many")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn binary_exit_codes() {
    assert_eq!(binary(&["run", "stock:identity", "-i", "01"], &[]).status.code(), Some(0));
    assert_eq!(binary(&["run", "stock:missing", "-i", "01"], &[]).status.code(), Some(1));
    assert_eq!(binary(&["run", "stock:identity", "-i", "2"], &[]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = binary(&["demo"], &[]);
    let b = binary(&["demo"], &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_subcommand_is_covered_and_runs() {
    let cmd = Cli::command();
    let names: BTreeSet<&str> = cmd.get_subcommands().map(|c| c.get_name()).collect();
    let covered: BTreeSet<&str> = COVERAGE.iter().map(|(n, _)| *n).collect();
    assert_eq!(names, covered);
    assert_eq!(names.len(), 15);

    let circ = scratch("cov.circ", "g0 = IN 0\ng1 = NOT g0\nOUT g1\n");
    let circ = circ.to_str().unwrap();
    let ser = fpm(&["serialize", "stock:identity"]).1;
    let runs: Vec<Vec<&str>> = vec![
        vec!["run", "stock:identity", "-i", "0"],
        vec!["serialize", "stock:identity"],
        vec!["parse", ser.trim()],
        vec!["star-eval", "stock:identity", "-i", "0"],
        vec!["compile-alpha", "pi1", "contr"],
        vec!["compile-beta", "stock:constant-empty"],
        vec!["word-problem", "pi1", "pi0"],
        vec!["green", "0 -> 1", "ε -> ε"],
        vec!["invert", "stock:identity", "-i", "0", "--ith", "2"],
        vec!["reduce", "stock:identity"],
        vec!["circuit-eval", circ, "-i", "0"],
        vec!["circuit-synth", "stock:identity", "--n", "2", "--lift"],
        vec!["circuit-invert", circ, "-i", "1"],
        vec!["lp-reduce", "stock:identity", "-i", "1"],
        vec!["demo"],
    ];
    let ran: BTreeSet<&str> = runs.iter().map(|r| r[0]).collect();
    assert_eq!(ran, names);
    for r in &runs {
        let (code, _, err) = fpm(r);
        assert_eq!(code, 0, "{r:?}: {err}");
    }
}
