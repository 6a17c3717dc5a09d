//! Human-readable program files.
//!
//! ```text
//! # copies its input
//! bound k=1 a=12
//! tapes 1
//! start copy
//! accept done
//! copy 0 -> copy 0 R 0
//! copy 1 -> copy 1 R 1
//! copy _ -> done _ S -
//! ```
//!
//! A rule reads `from reads -> to writes moves emit`, one character per tape
//! for reads, writes and moves. Symbols are `0 1 _ ^` (`^` is the
//! endmarker), moves `L S R`, emit `0`, `1` or `-`. Optional header lines:
//! `pad d` and `states n`. Composite bodies use `seq ... end` blocks holding
//! `machine ... end`, nested `seq`, or `builtin expand|reexpand|contr|recontr|ev c=N`.
//! States named `q0`, `q1`, … keep their index; other names are numbered
//! in order of appearance with the start state first.

use std::collections::HashMap;
use std::fmt::Write;

use num_bigint::BigUint;

use super::{Body, Builtin, Move, PolyProgram, ProgramError, Symbol, Transition, TuringProgram};
use crate::bounds::PolyBound;

pub fn parse_text(src: &str) -> Result<PolyProgram, ProgramError> {
    let lines: Vec<(usize, Vec<&str>)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    let mut p = Parser { lines, pos: 0 };
    let mut bound = None;
    let mut pad = 0u32;
    while let Some((line, toks)) = p.peek() {
        match toks[0] {
            "bound" => {
                bound = Some(parse_bound(line, &toks[1..])?);
                p.pos += 1;
            }
            "pad" => {
                pad = toks.get(1).and_then(|t| t.parse().ok()).ok_or_else(|| err(line, "pad needs a number"))?;
                p.pos += 1;
            }
            _ => break,
        }
    }
    let bound = bound.ok_or_else(|| err(0, "missing `bound k=.. a=..` line"))?;
    let body = match p.peek() {
        Some((_, toks)) if toks[0] == "seq" || toks[0] == "builtin" => p.item()?,
        _ => p.machine(false)?,
    };
    if let Some((line, _)) = p.peek() {
        return Err(err(line, "unexpected trailing lines"));
    }
    PolyProgram::new(body, bound, pad)
}

fn err(line: usize, msg: impl Into<String>) -> ProgramError {
    ProgramError::Text { line, msg: msg.into() }
}

fn parse_bound(line: usize, toks: &[&str]) -> Result<PolyBound, ProgramError> {
    let mut k = None;
    let mut a = None;
    for t in toks {
        match t.split_once('=') {
            Some(("k", v)) => k = v.parse::<u32>().ok(),
            Some(("a", v)) => a = v.parse::<BigUint>().ok(),
            _ => return Err(err(line, format!("unexpected `{t}` in bound"))),
        }
    }
    match (k, a) {
        (Some(k), Some(a)) => PolyBound::new(k, a).map_err(|e| err(line, e.to_string())),
        _ => Err(err(line, "bound needs k=<int> a=<int>")),
    }
}

struct Parser<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<(usize, Vec<&'a str>)> {
        self.lines.get(self.pos).cloned()
    }

    fn item(&mut self) -> Result<Body, ProgramError> {
        let (line, toks) = self.peek().ok_or_else(|| err(0, "unexpected end of file"))?;
        self.pos += 1;
        match toks[0] {
            "machine" => self.machine(true),
            "seq" => {
                let mut parts = Vec::new();
                loop {
                    match self.peek() {
                        Some((_, t)) if t[0] == "end" => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => parts.push(self.item()?),
                        None => return Err(err(line, "unterminated seq")),
                    }
                }
                Ok(Body::Seq(parts))
            }
            "builtin" => {
                let b = match toks.get(1).copied() {
                    Some("expand") => Builtin::Expand,
                    Some("reexpand") => Builtin::Reexpand,
                    Some("contr") => Builtin::Contr,
                    Some("recontr") => Builtin::Recontr,
                    Some("ev") => {
                        let c = toks
                            .get(2)
                            .and_then(|t| t.strip_prefix("c="))
                            .and_then(|v| v.parse::<u64>().ok())
                            .filter(|&c| c >= 12)
                            .ok_or_else(|| err(line, "ev needs c=<int ≥ 12>"))?;
                        Builtin::Ev { c }
                    }
                    _ => return Err(err(line, "unknown builtin")),
                };
                Ok(Body::Builtin(b))
            }
            other => Err(err(line, format!("expected machine, seq or builtin, found `{other}`"))),
        }
    }

    fn machine(&mut self, closed: bool) -> Result<Body, ProgramError> {
        let mut tapes = None;
        let mut states_decl = None;
        let mut start = None;
        let mut accept = None;
        let mut raw = Vec::new();
        loop {
            let Some((line, toks)) = self.peek() else {
                if closed {
                    return Err(err(0, "unterminated machine"));
                }
                break;
            };
            self.pos += 1;
            match toks[0] {
                "end" if closed => break,
                "tapes" => tapes = toks.get(1).and_then(|t| t.parse::<usize>().ok()),
                "states" => states_decl = toks.get(1).and_then(|t| t.parse::<usize>().ok()),
                "start" => start = toks.get(1).copied(),
                "accept" => accept = toks.get(1).copied(),
                _ => raw.push((line, toks)),
            }
        }
        let tapes = tapes.ok_or_else(|| err(0, "machine needs `tapes n`"))?;
        let start = start.ok_or_else(|| err(0, "machine needs `start`"))?;
        let accept = accept.ok_or_else(|| err(0, "machine needs `accept`"))?;

        let mut names: Vec<&str> = vec![start, accept];
        for (_, toks) in &raw {
            names.push(toks[0]);
            if let Some(to) = toks.get(3) {
                names.push(to);
            }
        }
        let numbered = names.iter().all(|n| n.strip_prefix('q').is_some_and(|d| d.parse::<usize>().is_ok()));
        let mut index: HashMap<&str, usize> = HashMap::new();
        for n in &names {
            let next = index.len();
            let i = if numbered { n[1..].parse().unwrap() } else { next };
            index.entry(n).or_insert(i);
        }
        let states = index.values().max().map_or(1, |m| m + 1).max(states_decl.unwrap_or(0));

        let rules = raw
            .iter()
            .map(|(line, toks)| {
                let line = *line;
                if toks.len() < 6 || toks.len() > 7 || toks[2] != "->" {
                    return Err(err(line, "rule must read `from reads -> to writes moves [emit]`"));
                }
                let syms = |s: &str| -> Result<Vec<Symbol>, ProgramError> {
                    let v: Option<Vec<Symbol>> = s.chars().map(Symbol::from_char).collect();
                    v.filter(|v| v.len() == tapes).ok_or_else(|| err(line, format!("bad symbols `{s}`")))
                };
                let moves: Option<Vec<Move>> = toks[5].chars().map(Move::from_char).collect();
                let moves = moves.filter(|m| m.len() == tapes).ok_or_else(|| err(line, "bad moves"))?;
                let emit = match toks.get(6).copied().unwrap_or("-") {
                    "-" => None,
                    "0" => Some(false),
                    "1" => Some(true),
                    e => return Err(err(line, format!("bad emit `{e}`"))),
                };
                Ok(Transition {
                    from: index[toks[0]],
                    read: syms(toks[1])?,
                    to: index[toks[3]],
                    write: syms(toks[4])?,
                    moves,
                    emit,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        TuringProgram::new(tapes, states, index[start], index[accept], rules).map(Body::Machine)
    }
}

pub fn render_text(w: &PolyProgram) -> String {
    let mut out = String::new();
    writeln!(out, "bound k={} a={}", w.bound().k(), w.bound().a()).unwrap();
    if w.pad_depth > 0 {
        writeln!(out, "pad {}", w.pad_depth).unwrap();
    }
    match &w.body {
        Body::Machine(tm) => render_machine(&mut out, tm, ""),
        body => render_item(&mut out, body, ""),
    }
    out
}

fn render_machine(out: &mut String, tm: &TuringProgram, indent: &str) {
    writeln!(out, "{indent}tapes {}", tm.tapes()).unwrap();
    writeln!(out, "{indent}states {}", tm.states()).unwrap();
    writeln!(out, "{indent}start q{}", tm.start()).unwrap();
    writeln!(out, "{indent}accept q{}", tm.accept()).unwrap();
    for t in tm.transitions() {
        writeln!(out, "{indent}{t}").unwrap();
    }
}

fn render_item(out: &mut String, body: &Body, indent: &str) {
    match body {
        Body::Machine(tm) => {
            writeln!(out, "{indent}machine").unwrap();
            render_machine(out, tm, &format!("{indent}  "));
            writeln!(out, "{indent}end").unwrap();
        }
        Body::Seq(parts) => {
            writeln!(out, "{indent}seq").unwrap();
            parts.iter().for_each(|p| render_item(out, p, &format!("{indent}  ")));
            writeln!(out, "{indent}end").unwrap();
        }
        Body::Builtin(Builtin::Ev { c }) => writeln!(out, "{indent}builtin ev c={c}").unwrap(),
        Body::Builtin(b) => writeln!(out, "{indent}builtin {}", b.name()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::stock;

    #[test]
    fn render_parse_round_trip() {
        for (name, p) in stock::corpus() {
            let text = render_text(&p);
            assert_eq!(parse_text(&text).as_ref(), Ok(&p), "{name}:\n{text}");
        }
    }

    #[test]
    fn composite_bodies() {
        let src = "bound k=2 a=60\nseq\n  builtin expand\n  builtin ev c=12\n  machine\n    tapes 1\n    start a\n    accept b\n    a _ -> b _ S -\n  end\nend\n";
        let p = parse_text(src).unwrap();
        let Body::Seq(parts) = &p.body else { panic!() };
        assert_eq!(parts.len(), 3);
        assert_eq!(parse_text(&render_text(&p)).unwrap(), p);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_text("bound k=1 a=12\ntapes 1\nstart a\naccept b\na 0 -> b\n").unwrap_err();
        assert!(matches!(e, ProgramError::Text { line: 5, .. }), "{e:?}");
        assert!(parse_text("tapes 1").is_err());
    }
}
