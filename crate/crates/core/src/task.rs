//! Task files: flat `key = value` lines with `#` comments.
//!
//! ```text
//! base = "Q[t]"
//! family = "P1"
//! sections = [(2, "x0^2 - t*x1^2"), (1, "x0 - x1")]
//! ```
//!
//! Values are strings, numbers, or bracketed lists of strings, numbers and
//! parenthesized tuples. Lists may span several lines.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::rational::fmt_rational;
use crate::arith::text::parse_poly;
use crate::arith::{Field, Frac, Gaussian, MPoly, Rational, Ring};
use crate::base::{scalar_from_poly, BaseRing, Integers, PolyRing, QuadricCone, Rationals};
use crate::error::{Error, Result};

/// Variable names accepted in section texts. `y0, y1` are the fiber
/// coordinates of a tower, `i` the imaginary unit of metric tasks.
pub const TASK_VARS: [&str; 8] = ["x0", "x1", "x2", "x3", "t", "y0", "y1", "i"];
pub const I_INDEX: usize = 7;

pub const BASES: [&str; 5] = ["Z", "Q", "Q[t]", "cone", "C"];
pub const FAMILIES: [&str; 5] = ["P0", "P1", "P2", "P3", "finite"];

/// Default seed for randomized suites.
pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Str(String),
    Num(Rational),
    Float(f64),
    List(Vec<Value>),
    Tuple(Vec<Value>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Str(_) => "string",
            Value::Num(_) => "number",
            Value::Float(_) => "decimal number",
            Value::List(_) => "list",
            Value::Tuple(_) => "tuple",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct TaskFile {
    pub base: Option<String>,
    pub family: Option<String>,
    /// `(twist, canonical form text)`.
    pub sections: Vec<(u32, String)>,
    /// Tower sections `(e, k, text)` of bidegree `(e, k)` in `(x, y)`.
    pub inner_sections: Vec<(u32, u32, String)>,
    /// Second factor for a multiadditivity check in `slot`.
    pub other: Option<(u32, String)>,
    pub twists: Option<Vec<u32>>,
    pub t0: Option<Rational>,
    pub permutation: Option<Vec<usize>>,
    pub scalars: Option<Vec<String>>,
    pub slot: Option<usize>,
    pub m: Option<String>,
    /// Monic defining polynomial of a finite fiber, in `x`.
    pub fiber: Option<String>,
    pub algebra_rank: Option<usize>,
    pub structure_constants: Option<Vec<String>>,
    pub unit: Option<Vec<String>>,
    pub element: Option<Vec<String>>,
    pub phases: Option<Vec<String>>,
    pub lambda: Option<String>,
    pub nodes_theta: Option<usize>,
    pub nodes_phi: Option<usize>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col,
            message: msg.into(),
        }
    }

    /// Skips blanks and comments; newlines too when `newlines` is set.
    fn skip(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c == '\n' && !newlines {
                break;
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.err(format!("expected {want:?}, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(self.err("expected a key"));
        }
        Ok(s)
    }

    fn value(&mut self, nested: bool) -> Result<Value> {
        match self.peek() {
            Some('"') => self.string(),
            Some('[') => self.seq('[', ']').map(Value::List),
            Some('(') => self.seq('(', ')').map(Value::Tuple),
            Some(c) if c == '-' || c == '+' || c.is_ascii_digit() => self.number(),
            Some(c) => Err(self.err(format!("unexpected character {c:?} in value"))),
            None if nested => Err(self.err("unterminated list")),
            None => Err(self.err("missing value")),
        }
    }

    fn seq(&mut self, open: char, close: char) -> Result<Vec<Value>> {
        self.expect(open)?;
        let mut items = Vec::new();
        loop {
            self.skip(true);
            if self.peek() == Some(close) {
                self.bump();
                return Ok(items);
            }
            items.push(self.value(true)?);
            self.skip(true);
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(c) if c == close => {}
                Some(c) => return Err(self.err(format!("expected ',' or {close:?}, found {c:?}"))),
                None => return Err(self.err(format!("expected {close:?}"))),
            }
        }
    }

    fn string(&mut self) -> Result<Value> {
        self.expect('"')?;
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(Value::Str(s)),
                Some('\\') => match self.bump() {
                    Some(c @ ('"' | '\\')) => s.push(c),
                    Some('n') => s.push('\n'),
                    _ => return Err(self.err("invalid escape")),
                },
                Some('\n') | None => return Err(self.err("unterminated string")),
                Some(c) => s.push(c),
            }
        }
    }

    fn number(&mut self) -> Result<Value> {
        let (line, col) = (self.line, self.col);
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || "+-./".contains(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let bad = || Error::Parse {
            line,
            column: col,
            message: format!("malformed number {s:?}"),
        };
        parse_number(&s).ok_or_else(bad)
    }
}

fn parse_number(s: &str) -> Option<Value> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Value::Num(Rational::new(n, d)));
    }
    if let Ok(n) = body.parse::<BigInt>() {
        return Some(Value::Num(Rational::from_integer(n)));
    }
    if body.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c)) {
        return body.parse::<f64>().ok().filter(|f| f.is_finite()).map(Value::Float);
    }
    None
}

/// Canonical text of a polynomial over the task variables.
pub fn canonical_poly(text: &str, line: usize, col: usize) -> Result<(MPoly<Rational>, String)> {
    let p = parse_poly(text, &TASK_VARS, line, col)?;
    let s = p.fmt_with(&TASK_VARS);
    Ok((p, s))
}

fn x_degrees(p: &MPoly<Rational>) -> Vec<u32> {
    let mut d: Vec<u32> = p
        .terms()
        .map(|(m, _)| (0..4).map(|i| u32::from(m.exp(i))).sum())
        .collect();
    d.sort_unstable();
    d.dedup();
    d
}

fn y_degrees(p: &MPoly<Rational>) -> Vec<u32> {
    let mut d: Vec<u32> = p
        .terms()
        .map(|(m, _)| u32::from(m.exp(5) + m.exp(6)))
        .collect();
    d.sort_unstable();
    d.dedup();
    d
}

fn homogeneity_error(declared: u32, degs: &[u32], text: &str) -> Error {
    let actual = match degs {
        [d] => format!("{d} ({text})"),
        _ => format!("mixed degrees {degs:?} ({text})"),
    };
    Error::Homogeneity { declared, actual }
}

struct Entry {
    line: usize,
    col: usize,
    value: Value,
}

impl Entry {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col,
            message: msg.into(),
        }
    }

    fn string(&self) -> Result<String> {
        match &self.value {
            Value::Str(s) => Ok(s.clone()),
            v => Err(self.err(format!("expected a string, found a {}", v.kind()))),
        }
    }

    fn rational(&self) -> Result<Rational> {
        match &self.value {
            Value::Num(q) => Ok(q.clone()),
            v => Err(self.err(format!("expected a rational number, found a {}", v.kind()))),
        }
    }

    fn float(&self) -> Result<f64> {
        match &self.value {
            Value::Float(f) => Ok(*f),
            Value::Num(q) => q.to_f64().ok_or_else(|| self.err("number out of range")),
            v => Err(self.err(format!("expected a number, found a {}", v.kind()))),
        }
    }

    fn uint(&self) -> Result<u64> {
        uint_of(&self.value).ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    fn list(&self) -> Result<&[Value]> {
        match &self.value {
            Value::List(v) => Ok(v),
            v => Err(self.err(format!("expected a list, found a {}", v.kind()))),
        }
    }

    fn uints(&self) -> Result<Vec<u64>> {
        self.list()?
            .iter()
            .map(|v| uint_of(v).ok_or_else(|| self.err("expected nonnegative integers")))
            .collect()
    }

    /// Scalars may be written as strings or numbers.
    fn scalars(&self) -> Result<Vec<String>> {
        self.list()?.iter().map(|v| self.scalar_of(v)).collect()
    }

    fn scalar(&self) -> Result<String> {
        self.scalar_of(&self.value)
    }

    fn scalar_of(&self, v: &Value) -> Result<String> {
        match v {
            Value::Str(s) => Ok(s.trim().to_string()),
            Value::Num(q) => Ok(fmt_rational(q)),
            v => Err(self.err(format!("expected a scalar, found a {}", v.kind()))),
        }
    }
}

fn uint_of(v: &Value) -> Option<u64> {
    match v {
        Value::Num(q) if q.is_integer() => q.to_integer().to_u64(),
        _ => None,
    }
}

fn twist_of(v: &Value) -> Option<u32> {
    uint_of(v).and_then(|k| u32::try_from(k).ok())
}

/// Offset of the string literal inside a tuple is unknown after parsing, so
/// polynomial errors point at the entry and the column inside the text.
fn section_of(e: &Entry, v: &Value) -> Result<(u32, String)> {
    match v {
        Value::Tuple(items) => match items.as_slice() {
            [k, Value::Str(text)] => {
                let k = twist_of(k).ok_or_else(|| e.err("twist must be a nonnegative integer"))?;
                let (p, canon) = canonical_poly(text, e.line, 1)?;
                let degs = x_degrees(&p);
                if degs != [k] {
                    return Err(homogeneity_error(k, &degs, text));
                }
                Ok((k, canon))
            }
            _ => Err(e.err("a section is written (twist, \"form\")")),
        },
        v => Err(e.err(format!("expected a (twist, \"form\") tuple, found a {}", v.kind()))),
    }
}

fn inner_section_of(e: &Entry, v: &Value) -> Result<(u32, u32, String)> {
    match v {
        Value::Tuple(items) => match items.as_slice() {
            [a, b, Value::Str(text)] => {
                let ex = twist_of(a).ok_or_else(|| e.err("degree must be a nonnegative integer"))?;
                let ky = twist_of(b).ok_or_else(|| e.err("degree must be a nonnegative integer"))?;
                let (p, canon) = canonical_poly(text, e.line, 1)?;
                if x_degrees(&p) != [ex] {
                    return Err(homogeneity_error(ex, &x_degrees(&p), text));
                }
                if y_degrees(&p) != [ky] {
                    return Err(homogeneity_error(ky, &y_degrees(&p), text));
                }
                Ok((ex, ky, canon))
            }
            _ => Err(e.err("a tower section is written (e, k, \"form\")")),
        },
        v => Err(e.err(format!("expected an (e, k, \"form\") tuple, found a {}", v.kind()))),
    }
}

pub fn parse_task(text: &str) -> Result<TaskFile> {
    let mut cur = Cursor::new(text);
    let mut task = TaskFile::default();
    let mut seen = std::collections::BTreeSet::new();
    loop {
        cur.skip(true);
        if cur.peek().is_none() {
            break;
        }
        let (kl, kc) = (cur.line, cur.col);
        let key = cur.ident()?;
        cur.skip(false);
        cur.expect('=')?;
        cur.skip(false);
        let (line, col) = (cur.line, cur.col);
        let value = cur.value(false)?;
        cur.skip(false);
        match cur.peek() {
            None | Some('\n') => {}
            Some(c) => return Err(cur.err(format!("unexpected {c:?} after value"))),
        }
        let key_err = |msg: String| Error::Parse {
            line: kl,
            column: kc,
            message: msg,
        };
        if !seen.insert(key.clone()) {
            return Err(key_err(format!("duplicate key {key:?}")));
        }
        let e = Entry { line, col, value };
        match key.as_str() {
            "base" => {
                let b = e.string()?;
                if !BASES.contains(&b.as_str()) {
                    return Err(e.err(format!("unknown base {b:?}; expected one of {BASES:?}")));
                }
                task.base = Some(b);
            }
            "family" => {
                let f = e.string()?;
                if !FAMILIES.contains(&f.as_str()) {
                    return Err(e.err(format!("unknown family {f:?}; expected one of {FAMILIES:?}")));
                }
                task.family = Some(f);
            }
            "sections" => {
                task.sections = e.list()?.iter().map(|v| section_of(&e, v)).collect::<Result<_>>()?;
            }
            "inner_sections" => {
                task.inner_sections = e
                    .list()?
                    .iter()
                    .map(|v| inner_section_of(&e, v))
                    .collect::<Result<_>>()?;
            }
            "other" => task.other = Some(section_of(&e, &e.value)?),
            "twists" => {
                task.twists = Some(
                    e.uints()?
                        .into_iter()
                        .map(|k| u32::try_from(k).map_err(|_| e.err("twist too large")))
                        .collect::<Result<_>>()?,
                )
            }
            "t0" => task.t0 = Some(e.rational()?),
            "permutation" => task.permutation = Some(e.uints()?.into_iter().map(|k| k as usize).collect()),
            "scalars" => task.scalars = Some(e.scalars()?),
            "slot" => task.slot = Some(e.uint()? as usize),
            "m" => task.m = Some(e.scalar()?),
            "fiber" => {
                let s = e.string()?;
                let p = parse_poly(&s, &["x", "t", "a", "b", "c", "i"], line, col + 1)?;
                task.fiber = Some(p.fmt_with(&["x", "t", "a", "b", "c", "i"]));
            }
            "algebra_rank" => task.algebra_rank = Some(e.uint()? as usize),
            "structure_constants" => task.structure_constants = Some(e.scalars()?),
            "unit" => task.unit = Some(e.scalars()?),
            "element" => task.element = Some(e.scalars()?),
            "phases" => task.phases = Some(e.scalars()?),
            "lambda" => task.lambda = Some(e.scalar()?),
            "nodes_theta" => task.nodes_theta = Some(e.uint()? as usize),
            "nodes_phi" => task.nodes_phi = Some(e.uint()? as usize),
            "tolerance" => {
                let t = e.float()?;
                if t <= 0.0 {
                    return Err(e.err("tolerance must be positive"));
                }
                task.tolerance = Some(t);
            }
            "seed" => task.seed = Some(e.uint()?),
            "count" => task.count = Some(e.uint()? as usize),
            _ => return Err(key_err(format!("unknown key {key:?}"))),
        }
    }
    Ok(task)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn quoted_list(v: &[String]) -> String {
    format!("[{}]", v.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", "))
}

/// Canonical task text; `parse_task(&print_task(t)) == t`.
pub fn print_task(t: &TaskFile) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    if let Some(b) = &t.base {
        line("base", quote(b));
    }
    if let Some(f) = &t.family {
        line("family", quote(f));
    }
    if !t.sections.is_empty() {
        let items: Vec<String> = t.sections.iter().map(|(k, s)| format!("({k}, {})", quote(s))).collect();
        line("sections", format!("[{}]", items.join(", ")));
    }
    if !t.inner_sections.is_empty() {
        let items: Vec<String> = t
            .inner_sections
            .iter()
            .map(|(e, k, s)| format!("({e}, {k}, {})", quote(s)))
            .collect();
        line("inner_sections", format!("[{}]", items.join(", ")));
    }
    if let Some((k, s)) = &t.other {
        line("other", format!("({k}, {})", quote(s)));
    }
    if let Some(v) = &t.twists {
        line("twists", format!("{v:?}"));
    }
    if let Some(q) = &t.t0 {
        line("t0", fmt_rational(q));
    }
    if let Some(p) = &t.permutation {
        line("permutation", format!("{p:?}"));
    }
    if let Some(v) = &t.scalars {
        line("scalars", quoted_list(v));
    }
    if let Some(s) = t.slot {
        line("slot", s.to_string());
    }
    if let Some(m) = &t.m {
        line("m", quote(m));
    }
    if let Some(f) = &t.fiber {
        line("fiber", quote(f));
    }
    if let Some(n) = t.algebra_rank {
        line("algebra_rank", n.to_string());
    }
    if let Some(v) = &t.structure_constants {
        line("structure_constants", quoted_list(v));
    }
    if let Some(v) = &t.unit {
        line("unit", quoted_list(v));
    }
    if let Some(v) = &t.element {
        line("element", quoted_list(v));
    }
    if let Some(v) = &t.phases {
        line("phases", quoted_list(v));
    }
    if let Some(l) = &t.lambda {
        line("lambda", quote(l));
    }
    if let Some(n) = t.nodes_theta {
        line("nodes_theta", n.to_string());
    }
    if let Some(n) = t.nodes_phi {
        line("nodes_phi", n.to_string());
    }
    if let Some(x) = t.tolerance {
        line("tolerance", format!("{x:?}"));
    }
    if let Some(s) = t.seed {
        line("seed", s.to_string());
    }
    if let Some(c) = t.count {
        line("count", c.to_string());
    }
    out
}

/// Splits `num / den` at a top-level slash that is not part of an integer
/// literal such as `3/4`.
fn split_quotient(text: &str) -> Option<(&str, &str)> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => {
                let before = text[..i].trim_end();
                let after = text[i + 1..].trim_start();
                let lit_before = before.chars().last().is_some_and(|c| c.is_ascii_digit())
                    && !before
                        .chars()
                        .rev()
                        .skip_while(|c| c.is_ascii_digit())
                        .next()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == ')');
                let lit_after = after.chars().next().is_some_and(|c| c.is_ascii_digit());
                if !(lit_before && lit_after) {
                    return Some((&text[..i], &text[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

/// Base-ring scalars written as text.
pub trait ScalarSyntax: BaseRing {
    /// Parses a polynomial scalar (no division by non-constants).
    fn scalar_poly(&self, text: &str) -> Result<Self::Frac>;

    fn parse_scalar(&self, text: &str) -> Result<Self::Frac> {
        match split_quotient(text) {
            Some((n, d)) => {
                let d = self.scalar_poly(d)?;
                if d.is_zero() {
                    return Err(Error::InvalidInput(format!("division by zero in {text:?}")));
                }
                Ok(self.scalar_poly(n)?.div(&d))
            }
            None => self.scalar_poly(text),
        }
    }
}

fn constant_scalar<B: BaseRing>(base: &B, text: &str) -> Result<B::Frac> {
    let p = parse_poly(text, &[], 1, 1)?;
    Ok(base.from_rational(p.constant_term()))
}

impl ScalarSyntax for Integers {
    fn scalar_poly(&self, text: &str) -> Result<Rational> {
        constant_scalar(self, text)
    }
}

impl ScalarSyntax for Rationals {
    fn scalar_poly(&self, text: &str) -> Result<Rational> {
        constant_scalar(self, text)
    }
}

impl ScalarSyntax for PolyRing {
    fn scalar_poly(&self, text: &str) -> Result<crate::arith::RatFunc> {
        let p = parse_poly(text, &["t"], 1, 1)?;
        scalar_from_poly(self, &p, 0)
    }
}

impl ScalarSyntax for QuadricCone {
    fn scalar_poly(&self, text: &str) -> Result<crate::base::ConeScalar> {
        let p = parse_poly(text, &["a", "b", "c"], 1, 1)?;
        let gens = [self.a(), self.b(), self.c()];
        let mut acc = Frac::zero();
        for (m, c) in p.terms() {
            let mut t = Frac::from_ring(MPoly::constant(c.clone()));
            for (i, g) in gens.iter().enumerate() {
                t = t.mul(&g.pow(u64::from(m.exp(i))));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

/// A Gaussian rational written over `i`.
pub fn parse_gaussian(text: &str) -> Result<Gaussian> {
    let from_poly = |s: &str| -> Result<Gaussian> {
        let p = parse_poly(s, &["i"], 1, 1)?;
        let mut acc = Gaussian::zero();
        for (m, c) in p.terms() {
            acc = acc.add(&Gaussian::i().pow(u64::from(m.exp(0))).mul(&Gaussian::real(c.clone())));
        }
        Ok(acc)
    };
    match split_quotient(text) {
        Some((n, d)) => {
            let d = from_poly(d)?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("division by zero in {text:?}")));
            }
            Ok(from_poly(n)?.div(&d))
        }
        None => from_poly(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn grammar_example() {
        let t = parse_task("base = \"Q[t]\"\nfamily = \"P1\"\nsections = [(2, \"x0^2 - t*x1^2\"), (1, \"x0 - x1\")]\n").unwrap();
        assert_eq!(t.base.as_deref(), Some("Q[t]"));
        assert_eq!(t.sections.len(), 2);
        assert_eq!(t.sections[0], (2, "x0^2 - x1^2*t".to_string()));
    }

    #[test]
    fn homogeneity_and_parse_errors() {
        let e = parse_task("sections = [(2, \"x0 - x1\")]").unwrap_err();
        assert_eq!(e.kind(), "HomogeneityError");
        let e = parse_task("sections = [(2, \"x0^^2\")]").unwrap_err();
        assert_eq!(e.kind(), "ParseError");
        let e = parse_task("bogus = 1").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 1, .. }));
        let e = parse_task("seed = 1\n\nslot = [").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        assert!(parse_task("seed = 1\nseed = 2").is_err());
    }

    #[test]
    fn round_trip() {
        let src = r#"
# comment
base = "Q"
family = "P2"
sections = [
  (1, "x0 + 2*x1"),   # first
  (2, "x2^2 - (x0 - x1)^2"),
  (1, "x1"),
]
permutation = [2, 0, 1]
scalars = [2, "1/3", "-5"]
t0 = -7/2
tolerance = 0.001
seed = 7
count = 20
"#;
        let t = parse_task(src).unwrap();
        assert_eq!(t.t0, Some(Rational::new(int(-7).to_integer(), int(2).to_integer())));
        let printed = print_task(&t);
        assert_eq!(parse_task(&printed).unwrap(), t);
        assert_eq!(print_task(&parse_task(&printed).unwrap()), printed);
    }

    #[test]
    fn scalar_text() {
        assert_eq!(Rationals.parse_scalar("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(PolyRing.format(&PolyRing.parse_scalar("(t + 1)^2").unwrap()), "1 + 2*t + t^2");
        assert_eq!(PolyRing.format(&PolyRing.parse_scalar("1/(1 - t)").unwrap()), "-1/(-1 + t)");
        let q = QuadricCone.parse_scalar("b/a").unwrap();
        assert_eq!(q, QuadricCone.b().div(&QuadricCone.a()));
        assert_eq!(QuadricCone.parse_scalar("c").unwrap(), QuadricCone.c());
        assert_eq!(parse_gaussian("1 + 2*i").unwrap(), Gaussian::new(int(1), int(2)));
        assert_eq!(parse_gaussian("i^2").unwrap(), Gaussian::real(int(-1)));
    }
}
