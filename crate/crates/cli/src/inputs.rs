//! Reading programs, tables, circuits and serialized words from arguments.

use std::fs;
use std::path::Path;

use fpm::machine::{parse_program, parse_text, stock, PolyProgram};
use fpm::rim::RimTable;
use fpm::circuits::{Circuit, CnfFormula};
use fpm::words::Word;

use crate::CliError;

/// Names accepted after `stock:`, with the corpus entry each one denotes.
pub fn stock_programs() -> Vec<(String, PolyProgram)> {
    let mut all: Vec<(String, PolyProgram)> =
        stock::corpus().into_iter().map(|(name, w)| (slug(name), w)).collect();
    all.push(("looping".into(), stock::looping()));
    all
}

/// `"f_M contains-1"` → `"f_m-contains-1"`, `"constant-ε"` → `"constant-empty"`.
fn slug(name: &str) -> String {
    name.to_lowercase().replace(' ', "-").replace('ε', "empty")
}

/// A program from `stock:<name>`, a text file, or a serialized word file.
pub fn load_program(arg: &str) -> Result<PolyProgram, CliError> {
    if let Some(name) = arg.strip_prefix("stock:") {
        return stock_programs()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w)
            .ok_or_else(|| CliError::Domain(format!("no stock program `{name}`")));
    }
    let src = read(arg)?;
    let first = src.lines().find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    if first.is_some_and(|l| looks_serialized(l.trim())) {
        let u = parse_serialized(src.trim()).map_err(CliError::Domain)?;
        return parse_program(&u).map_err(|e| CliError::Domain(format!("{arg}: {e}")));
    }
    parse_text(&src).map_err(|e| CliError::Domain(format!("{arg}: {e}")))
}

/// A table from a file, or inline with `;` between entries.
pub fn load_table(arg: &str) -> Result<RimTable, CliError> {
    let src = if Path::new(arg).exists() { read(arg)? } else { arg.replace(';', "\n") };
    src.parse().map_err(|e| CliError::Domain(format!("{arg}: {e}")))
}

pub fn load_circuit(arg: &str) -> Result<Circuit, CliError> {
    read(arg)?.parse().map_err(|e| CliError::Domain(format!("{arg}: {e}")))
}

pub fn load_cnf(arg: &str) -> Result<CnfFormula, CliError> {
    read(arg)?.parse().map_err(|e| CliError::Domain(format!("{arg}: {e}")))
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{path}: {e}")))
}

fn looks_serialized(s: &str) -> bool {
    s.split_once(':').is_some_and(|(n, h)| n.chars().all(|c| c.is_ascii_digit()) && h.chars().all(|c| c.is_ascii_hexdigit()))
        || (!s.is_empty() && s.chars().all(|c| c == '0' || c == '1'))
}

/// `<bit count>:<hex>`, bits packed most significant first and the last
/// byte padded with zeros.
pub fn to_serialized(u: &Word) -> String {
    let bytes: Vec<u8> = u
        .bits()
        .chunks(8)
        .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i))))
        .collect();
    format!("{}:{}", u.len(), hex::encode(bytes))
}

/// Accepts `<bit count>:<hex>` or a plain bit string.
pub fn parse_serialized(s: &str) -> Result<Word, String> {
    let s = s.trim();
    let Some((n, h)) = s.split_once(':') else {
        return s.parse().map_err(|e| format!("{e}"));
    };
    let n: usize = n.parse().map_err(|_| format!("bad bit count `{n}`"))?;
    let bytes = hex::decode(h).map_err(|e| format!("bad hex: {e}"))?;
    if n > bytes.len() * 8 || bytes.len() != n.div_ceil(8) {
        return Err(format!("{} hex bytes cannot hold exactly {n} bits", bytes.len()));
    }
    let bits = (0..n).map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1);
    let u = Word::from_bits(bits);
    if to_serialized(&u) != format!("{n}:{}", h.to_lowercase()) {
        return Err("nonzero padding bits after the last bit".into());
    }
    Ok(u)
}
