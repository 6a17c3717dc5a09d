//! The `fpm` command line.
//!
//! Output is deterministic. `--format machine` prints one result per line:
//! the word itself (an empty line for ε), `UNDEF`, `REJECT(<reason>)`, or
//! `NONE≤<n>` when a capped search found nothing. Exit codes are 0 on
//! success, 1 on domain errors and 2 on usage errors.

mod inputs;

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use fpm::circuits::{
    critical_formula_map, invert_circuit_brute, lp_lift, lp_lift_total, synthesize_circuit, CircuitFamily,
};
use fpm::eval::{
    compile_alpha, compile_beta, equivalence_search, eval_generator_word, star_evaluate_traced, GeneratorWord,
    Q2Config,
};
use fpm::inversion::{
    check_inversive_reduction, circuit_reduction, encoding_reduction, evaluator_reduction, f_prime_ith,
    f_prime_select, lp_reduction, standard_samples, Direction, EnumOracle, Reduction, SearchSpace,
    DEFAULT_MAX_PROBE,
};
use fpm::machine::{parse_program, render_text, run_counted, serialize_program, PolyProgram, WordFunction};
use fpm::rim::{green_leq_l, green_leq_r, j0_witness, shortest_prefix_inverse};
use fpm::words::Word;

pub use inputs::{parse_serialized, stock_programs, to_serialized};

/// Environment variable that caps every enumeration radius.
pub const MAX_PROBE_ENV: &str = "FPM_MAX_PROBE";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input data or a failed check; exit code 1.
    #[error("{0}")]
    Domain(String),
    /// Bad flags discovered after parsing; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fpm", version, about = "Run, compile, evaluate and invert counter-bounded programs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest input length to enumerate in searches.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_len: usize,
    /// Cap on preimage enumeration; FPM_MAX_PROBE lowers it further.
    #[arg(long, global = true)]
    pub max_probe: Option<usize>,
    /// Coefficient c of the universal bound q2 = (2, c).
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(12..))]
    pub q2_c: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Programs are text files, serialized-word files, or `stock:<name>`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a program on inputs (or on every word up to --max-len).
    Run {
        program: String,
        #[arg(long = "input", short, value_parser = parse_word)]
        inputs: Vec<Word>,
        /// Also print steps used and the execution budget.
        #[arg(long)]
        steps: bool,
    },
    /// Print the serialized form of a program as `<bits>:<hex>`.
    Serialize {
        program: String,
        /// Print the raw bit string instead.
        #[arg(long)]
        bits: bool,
    },
    /// Decode a serialized program and print its text form.
    Parse {
        #[arg(value_parser = parse_serialized)]
        serialized: Word,
    },
    /// Evaluate through the generator pipeline and compare with a direct run.
    StarEval {
        program: String,
        #[arg(long = "input", short, value_parser = parse_word)]
        inputs: Vec<Word>,
        /// Print the pad size after each stage.
        #[arg(long)]
        trace: bool,
    },
    /// Compile a generator word into a program.
    CompileAlpha {
        /// Generator tokens, applied right to left.
        #[arg(required = true, num_args = 1..)]
        tokens: Vec<String>,
    },
    /// Compile a program into a generator word.
    CompileBeta { program: String },
    /// Search for an input where two generator words differ.
    WordProblem { first: String, second: String },
    /// Compare two right-ideal morphisms in the right and left orders.
    Green {
        /// Table file, or inline entries such as `0 -> 1; 1 -> ε`.
        f: String,
        r: String,
    },
    /// Invert a program with the bounded enumeration oracle.
    Invert {
        program: String,
        #[arg(long = "input", short, value_parser = parse_word, required = true)]
        inputs: Vec<Word>,
        #[command(flatten)]
        select: SelectArgs,
        /// Only search words of the target's length.
        #[arg(long)]
        same_length: bool,
    },
    /// Build an inverse-transporting reduction, optionally checking it.
    Reduce {
        program: String,
        #[arg(long, value_enum, default_value_t = ReductionKind::Encoding)]
        kind: ReductionKind,
        /// Transport min, max and second inverses and verify them.
        #[arg(long)]
        check: bool,
    },
    /// Evaluate a circuit, or a DIMACS formula with --cnf.
    CircuitEval {
        file: String,
        #[arg(long = "input", short, value_parser = parse_word, required = true)]
        inputs: Vec<Word>,
        /// Treat the file as a CNF formula; print `(B, B(τ))`.
        #[arg(long)]
        cnf: bool,
    },
    /// Synthesize the circuit of a length-preserving program on one length.
    CircuitSynth {
        program: String,
        #[arg(long)]
        n: usize,
        /// Synthesize the length-preserving lift ℓ instead.
        #[arg(long)]
        lift: bool,
    },
    /// Least preimage of a circuit output.
    CircuitInvert {
        circuit: String,
        #[arg(long = "input", short, value_parser = parse_word, required = true)]
        inputs: Vec<Word>,
    },
    /// Invert a program through circuits for its length-preserving lift.
    LpReduce {
        program: String,
        #[arg(long = "input", short, value_parser = parse_word, required = true)]
        inputs: Vec<Word>,
    },
    /// A fixed tour through every module.
    Demo,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct SelectArgs {
    /// Dictionary-order least preimage.
    #[arg(long)]
    pub min: bool,
    /// Dictionary-order greatest preimage.
    #[arg(long)]
    pub max: bool,
    /// The i-th preimage, clamped to the last.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub ith: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReductionKind {
    Encoding,
    Evaluator,
    Circuit,
    Lp,
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Subcommands and the library operations each one reaches.
pub const COVERAGE: &[(&str, &[&str])] = &[
    ("run", &["run_counted", "parse_text", "RunOutcome"]),
    ("serialize", &["serialize_program"]),
    ("parse", &["parse_program", "render_text"]),
    ("star-eval", &["star_evaluate_traced", "run_counted"]),
    ("compile-alpha", &["compile_alpha", "GeneratorWord"]),
    ("compile-beta", &["compile_beta"]),
    ("word-problem", &["equivalence_search", "eval_generator_word"]),
    ("green", &["green_leq_r", "green_leq_l", "RimTable::inverse", "j0_witness", "shortest_prefix_inverse"]),
    ("invert", &["f_prime_select", "f_prime_ith", "EnumOracle"]),
    ("reduce", &["encoding_reduction", "evaluator_reduction", "circuit_reduction", "lp_reduction", "check_inversive_reduction"]),
    ("circuit-eval", &["Circuit::eval", "critical_formula_map"]),
    ("circuit-synth", &["synthesize_circuit", "lp_lift_total"]),
    ("circuit-invert", &["invert_circuit_brute"]),
    ("lp-reduce", &["weak_turing_invert", "lp_lift", "CircuitFamily"]),
    ("demo", &["counter_budget", "ex_program", "co_program", "pp0_pair"]),
];

/// Parses `args` (program name first) and runs the command.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// The probe cap: the flag (or the default), lowered by the environment.
pub fn effective_max_probe(flag: Option<usize>) -> Result<usize, CliError> {
    let base = flag.unwrap_or(DEFAULT_MAX_PROBE);
    match std::env::var(MAX_PROBE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|cap| base.min(cap))
            .map_err(|_| CliError::Usage(format!("{MAX_PROBE_ENV}={v} is not a number"))),
        Err(_) => Ok(base),
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    format: Format,
    max_len: usize,
    max_probe: usize,
    cfg: Q2Config,
}

impl Ctx<'_> {
    fn machine(&self) -> bool {
        self.format == Format::Machine
    }

    fn word(&self, x: &Word) -> String {
        if self.machine() && x.is_empty() {
            String::new()
        } else {
            x.to_string()
        }
    }

    fn opt(&self, x: Option<&Word>) -> String {
        x.map_or_else(|| "UNDEF".to_string(), |x| self.word(x))
    }

    /// `x -> result` in text mode, the bare result in machine mode.
    fn line(&mut self, x: &Word, result: &str) -> io::Result<()> {
        if self.machine() {
            writeln!(self.out, "{result}")
        } else {
            writeln!(self.out, "{x} -> {result}")
        }
    }

    fn inputs_or_all(&self, inputs: &[Word]) -> Vec<Word> {
        if inputs.is_empty() {
            Word::all_up_to(self.max_len).collect()
        } else {
            inputs.to_vec()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    let cfg = Q2Config::try_new(g.q2_c).map_err(|e| CliError::Usage(e.to_string()))?;
    let max_probe = effective_max_probe(g.max_probe)?;
    let mut ctx = Ctx { out, format: g.format, max_len: g.max_len, max_probe, cfg };
    match &cli.command {
        Command::Run { program, inputs, steps } => run(&mut ctx, program, inputs, *steps),
        Command::Serialize { program, bits } => {
            let u = serialize_program(&inputs::load_program(program)?);
            let s = if *bits { ctx.word(&u) } else { to_serialized(&u) };
            Ok(writeln!(ctx.out, "{s}")?)
        }
        Command::Parse { serialized } => {
            let w = parse_program(serialized).map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(write!(ctx.out, "{}", render_text(&w))?)
        }
        Command::StarEval { program, inputs, trace } => star_eval(&mut ctx, program, inputs, *trace),
        Command::CompileAlpha { tokens } => {
            let s = generator_word(&tokens.join(" "))?;
            Ok(write!(ctx.out, "{}", render_text(&compile_alpha(&s, ctx.cfg)))?)
        }
        Command::CompileBeta { program } => {
            let s = compile_beta(&serialize_program(&inputs::load_program(program)?));
            Ok(writeln!(ctx.out, "{s}")?)
        }
        Command::WordProblem { first, second } => word_problem(&mut ctx, first, second),
        Command::Green { f, r } => green(&mut ctx, f, r),
        Command::Invert { program, inputs, select, same_length } => invert(&mut ctx, program, inputs, select, *same_length),
        Command::Reduce { program, kind, check } => reduce(&mut ctx, program, *kind, *check),
        Command::CircuitEval { file, inputs, cnf } => circuit_eval(&mut ctx, file, inputs, *cnf),
        Command::CircuitSynth { program, n, lift } => circuit_synth(&mut ctx, program, *n, *lift),
        Command::CircuitInvert { circuit, inputs } => {
            let c = inputs::load_circuit(circuit)?;
            for y in inputs {
                let x = invert_circuit_brute(&c, y).map_err(|e| CliError::Domain(e.to_string()))?;
                let s = ctx.opt(x.as_ref());
                ctx.line(y, &s)?;
            }
            Ok(())
        }
        Command::LpReduce { program, inputs } => lp_reduce(&mut ctx, program, inputs),
        Command::Demo => demo(&mut ctx),
    }
}

fn generator_word(s: &str) -> Result<GeneratorWord, CliError> {
    s.parse().map_err(|e: fpm::eval::EvalError| CliError::Domain(format!("`{s}`: {e}")))
}

fn function_of(program: &str) -> Result<(PolyProgram, WordFunction), CliError> {
    let w = inputs::load_program(program)?;
    Ok((w.clone(), WordFunction::from_program(program, w)))
}

fn run(ctx: &mut Ctx, program: &str, inputs: &[Word], steps: bool) -> Result<(), CliError> {
    let w = inputs::load_program(program)?;
    for x in ctx.inputs_or_all(inputs) {
        let o = run_counted(&w, &x);
        let mut s = match o.output() {
            Some(y) => ctx.word(&y),
            None => o.to_string(),
        };
        if steps {
            s = format!("{s} steps={} budget={}", o.steps_used, o.budget);
        }
        ctx.line(&x, &s)?;
    }
    Ok(())
}

fn star_eval(ctx: &mut Ctx, program: &str, inputs: &[Word], trace: bool) -> Result<(), CliError> {
    let w = inputs::load_program(program)?;
    let mut mismatches = Vec::new();
    for x in ctx.inputs_or_all(inputs) {
        let (star, stages) = star_evaluate_traced(&w, &x, ctx.cfg);
        let direct = run_counted(&w, &x).output();
        if trace && !ctx.machine() {
            for st in &stages {
                let pad = st.pad.as_ref().map_or("-".to_string(), |p| p.to_string());
                writeln!(ctx.out, "  {:<10} pad={pad}", st.name)?;
            }
        }
        let s = ctx.opt(star.as_ref());
        ctx.line(&x, &s)?;
        if star != direct {
            mismatches.push(format!("{x}: run={} pipeline={s}", ctx.opt(direct.as_ref())));
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(format!("pipeline disagrees with run: {}", mismatches.join("; "))))
    }
}

fn word_problem(ctx: &mut Ctx, first: &str, second: &str) -> Result<(), CliError> {
    let (s1, s2) = (generator_word(first)?, generator_word(second)?);
    match equivalence_search(&s1, &s2, ctx.max_len, ctx.cfg) {
        Some(x) if ctx.machine() => writeln!(ctx.out, "{}", ctx.word(&x))?,
        Some(x) => {
            let a = eval_generator_word(&s1, &x, ctx.cfg);
            let b = eval_generator_word(&s2, &x, ctx.cfg);
            writeln!(ctx.out, "{x}: {} vs {}", ctx.opt(a.as_ref()), ctx.opt(b.as_ref()))?
        }
        None => writeln!(ctx.out, "NONE≤{}", ctx.max_len)?,
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn green(ctx: &mut Ctx, f: &str, r: &str) -> Result<(), CliError> {
    let (f, r) = (inputs::load_table(f)?, inputs::load_table(r)?);
    let r_inv = r.inverse();
    let l = ctx.max_len;
    let right = green_leq_r(&f, &r, &r_inv, l);
    let left = green_leq_l(&f, &r, &r_inv, l);
    if ctx.machine() {
        writeln!(ctx.out, "R {} {}", right.eq_holds as u8, right.image_included as u8)?;
        writeln!(ctx.out, "L {} {}", left.eq_holds as u8, left.partition_coarser as u8)?;
    } else {
        writeln!(ctx.out, "f ≤_R r: {} (image included: {})", yes(right.eq_holds), yes(right.image_included))?;
        writeln!(ctx.out, "f ≤_L r: {} (partition coarser: {})", yes(left.eq_holds), yes(left.partition_coarser))?;
        write!(ctx.out, "inverse of r:\n{r_inv}")?;
        let g = shortest_prefix_inverse(&f);
        let ok = Word::all_up_to(l).all(|x| f.apply(&x).map_or(true, |y| g.apply(&y).and_then(|z| f.apply(&z)) == Some(y)));
        writeln!(ctx.out, "shortest-prefix inverse of f verified to length {l}: {}", yes(ok))?;
        if let Some(j) = j0_witness(&f) {
            write!(ctx.out, "J⁰ witness for f:\n{j}")?;
        }
    }
    if right.eq_holds != right.image_included || left.eq_holds != left.partition_coarser {
        return Err(CliError::Domain("algebraic and structural tests disagree".into()));
    }
    Ok(())
}

fn invert(ctx: &mut Ctx, program: &str, inputs: &[Word], sel: &SelectArgs, same_length: bool) -> Result<(), CliError> {
    let (_, f) = function_of(program)?;
    let space = if same_length { SearchSpace::SameLength } else { SearchSpace::All };
    let o = EnumOracle::new(&f, ctx.max_probe, space);
    for y in inputs {
        let x = match (sel.min, sel.max, sel.ith) {
            (true, _, _) => f_prime_select(&o, Direction::Min, y).map_err(|e| CliError::Domain(e.to_string()))?,
            (_, true, _) => f_prime_select(&o, Direction::Max, y).map_err(|e| CliError::Domain(e.to_string()))?,
            (_, _, Some(i)) => f_prime_ith(&o, usize::try_from(i).unwrap_or(usize::MAX), y),
            _ => return Err(CliError::Usage("choose --min, --max or --ith".into())),
        };
        let s = match x {
            Some(x) => ctx.word(&x),
            None => {
                let p = o.preimages(y);
                if p.capped {
                    format!("NONE≤{}", p.radius)
                } else {
                    "UNDEF".into()
                }
            }
        };
        ctx.line(y, &s)?;
    }
    Ok(())
}

fn reduction(ctx: &Ctx, program: &str, kind: ReductionKind) -> Result<Reduction, CliError> {
    let (w, f) = function_of(program)?;
    Ok(match kind {
        ReductionKind::Encoding => encoding_reduction(&f),
        ReductionKind::Evaluator => evaluator_reduction(&w, ctx.cfg).map_err(|e| CliError::Domain(e.to_string()))?,
        ReductionKind::Circuit => circuit_reduction(&f),
        ReductionKind::Lp => lp_reduction(&f),
    })
}

fn reduce(ctx: &mut Ctx, program: &str, kind: ReductionKind, check: bool) -> Result<(), CliError> {
    let r = reduction(ctx, program, kind)?;
    if !ctx.machine() {
        writeln!(ctx.out, "{:?}: {} ≤ {}", r.kind, r.source.name(), r.target.name())?;
        writeln!(ctx.out, "α = {}, β = {}", r.witness.alpha.name(), r.witness.beta.name())?;
        writeln!(ctx.out, "weak Turing: {}", yes(r.weak_turing))?;
    }
    if !check {
        return Ok(());
    }
    let samples = standard_samples(&r, ctx.max_probe);
    let report = check_inversive_reduction(&r, &samples, ctx.max_len).map_err(|e| CliError::Domain(e.to_string()))?;
    let sim = report.simulation.as_ref().map_or("ok".to_string(), |x| format!("fails at {x}"));
    if ctx.machine() {
        writeln!(ctx.out, "{} {}", report.passed() as u8, report.uniform as u8)?;
    } else {
        writeln!(ctx.out, "simulation: {sim}")?;
        for s in &report.samples {
            let v = s.counterexample.as_ref().map_or("ok".to_string(), |x| format!("fails at {x}"));
            writeln!(ctx.out, "transported {}: {v}", s.name)?;
        }
        writeln!(ctx.out, "uniform: {}", yes(report.uniform))?;
    }
    if report.passed() && report.uniform {
        Ok(())
    } else {
        Err(CliError::Domain(format!("{:?} reduction check failed", r.kind)))
    }
}

fn circuit_eval(ctx: &mut Ctx, file: &str, inputs: &[Word], cnf: bool) -> Result<(), CliError> {
    if cnf {
        let b = inputs::load_cnf(file)?;
        for tau in inputs {
            let (_, v) = critical_formula_map(&b, tau).map_err(|e| CliError::Domain(e.to_string()))?;
            ctx.line(tau, if v { "1" } else { "0" })?;
        }
        return Ok(());
    }
    let c = inputs::load_circuit(file)?;
    for x in inputs {
        let y = c.eval(x).map_err(|e| CliError::Domain(e.to_string()))?;
        let s = ctx.word(&y);
        ctx.line(x, &s)?;
    }
    Ok(())
}

fn circuit_synth(ctx: &mut Ctx, program: &str, n: usize, lift: bool) -> Result<(), CliError> {
    let (_, f) = function_of(program)?;
    let c = if lift {
        synthesize_circuit(lp_lift_total(&f), n)
    } else {
        synthesize_circuit(|x: &Word| f.apply(x), n)
    }
    .map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(write!(ctx.out, "{c}")?)
}

fn lp_reduce(ctx: &mut Ctx, program: &str, inputs: &[Word]) -> Result<(), CliError> {
    let (_, f) = function_of(program)?;
    let ell = lp_lift(&f);
    let family = CircuitFamily::new(lp_lift_total(&f));
    let cap = ctx.max_probe;
    for y in inputs {
        // ℓ-inputs 0^m 1 y with m > cap are outside the search.
        let inv = |t: &Word| {
            let m = t.bits().iter().position(|&b| b)?;
            if m > cap {
                return None;
            }
            invert_circuit_brute(&*family.at(t.len()).ok()?, t).ok().flatten()
        };
        let dom = |t: &Word| inv(t).and_then(|z| ell.apply(&z)).as_ref() == Some(t);
        let x = fpm::circuits::weak_turing_invert(f.bound(), dom, inv, y);
        let limit = f.bound().eval_usize(y.len());
        let s = match x {
            Some(x) => ctx.word(&x),
            None if limit > cap.into() => format!("NONE≤{cap}"),
            None => "UNDEF".into(),
        };
        ctx.line(y, &s)?;
    }
    Ok(())
}

fn demo(ctx: &mut Ctx) -> Result<(), CliError> {
    use fpm::bounds::bound;
    use fpm::padding::{co_program, ex_program};
    use fpm::rim::pp0_pair;
    use fpm::words::{w, PrefixCode};

    let out = &mut *ctx.out;
    let b = bound(2, 36);
    let r = b.counter_budget(&10u32.into()).map_err(|e| CliError::Domain(e.to_string()))?;
    writeln!(out, "budget of {b} at n=10: p′={} prep={} exec={} check={}", r.p_prime, r.prep, r.exec, r.balance_check)?;
    writeln!(out, "ex: {b} -> {} -> {}", b.ex(), b.ex().ex())?;

    let w0 = fpm::machine::stock::truncate_half();
    let x = w("110100");
    writeln!(out, "truncate-half({x}) = {}", run_counted(&w0, &x))?;
    let back = co_program(&ex_program(&w0)).map_err(|e| CliError::Domain(e.to_string()))?;
    writeln!(out, "co(ex(w)) on {x} = {}", run_counted(&back, &x))?;
    let s = compile_beta(&serialize_program(&w0));
    writeln!(out, "generator word: {} letters", s.len())?;

    let f = WordFunction::from_program("truncate-half", w0);
    let o = EnumOracle::new(&f, 8, SearchSpace::All);
    let y = w("11");
    let lo = f_prime_select(&o, Direction::Min, &y).map_err(|e| CliError::Domain(e.to_string()))?;
    let hi = f_prime_select(&o, Direction::Max, &y).map_err(|e| CliError::Domain(e.to_string()))?;
    writeln!(out, "preimages of {y}: min {} max {}", ctx_opt(lo.as_ref()), ctx_opt(hi.as_ref()))?;

    let code = PrefixCode::new([w("0"), w("10"), w("11")]).map_err(|(a, b)| CliError::Domain(format!("{a} and {b} overlap")))?;
    let (pi, pi_p) = pp0_pair(&code, &w("10")).map_err(|e| CliError::Domain(e.to_string()))?;
    let z = w("110");
    let moved = pi.apply(&z).expect("π is total");
    writeln!(out, "π[10]({z}) = {moved}, π′ gives back {}", ctx_opt(pi_p.apply(&moved).as_ref()))?;

    let c = synthesize_circuit(|x: &Word| Some(Word::from_bits(x.bits().iter().map(|b| !b))), 3)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let pre = invert_circuit_brute(&c, &w("010")).map_err(|e| CliError::Domain(e.to_string()))?;
    writeln!(out, "NOT circuit on 3 bits: {} gates, preimage of 010 = {}", c.gates().len(), ctx_opt(pre.as_ref()))?;
    Ok(())
}

fn ctx_opt(x: Option<&Word>) -> String {
    x.map_or_else(|| "UNDEF".to_string(), Word::to_string)
}
