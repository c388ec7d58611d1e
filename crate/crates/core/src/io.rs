//! Line-oriented text formats for decorated fans, morphisms and monomial data.
//!
//! Every file starts with a `format <kind> <version>` header. Blank lines and
//! lines starting with `#` are ignored. Vectors are bracketed comma-separated
//! lists; rationals are written `p/q` (a bare integer is also accepted).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::decorated_fan::DecoratedFan;
use crate::embedding::MonomialData;
use crate::error::Result;
use crate::fan::{validate_fan, Fan, FanReport};
use crate::lattice::rational::format_rational;
use crate::lattice::{CParam, IntVector, LatticeMap, Rational};
use crate::polyhedral::Cone;
use crate::supertorus::SupertorusDatum;

pub const FAN_FORMAT: &str = "superfan-fan";
pub const MORPHISM_FORMAT: &str = "superfan-morphism";
pub const MONOMIAL_FORMAT: &str = "superfan-monomials";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

type Parsed<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, message: impl Into<String>) -> Parsed<T> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Splits `[a, [b, c], d]` into its top-level items.
fn list_items(s: &str) -> Option<Vec<&str>> {
    let s = s.trim();
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                items.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    items.push(inner[start..].trim());
    Some(items)
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

fn parse_int_vector(s: &str, line: usize) -> Parsed<IntVector> {
    let items = match list_items(s) {
        Some(items) => items,
        None => {
            return err(
                line,
                format!("expected a bracketed integer list, found `{s}`"),
            )
        }
    };
    items
        .iter()
        .map(|x| BigInt::from_str(x).or_else(|_| err(line, format!("malformed integer `{x}`"))))
        .collect::<Parsed<Vec<_>>>()
        .map(IntVector::new)
}

fn parse_vector_list(s: &str, line: usize) -> Parsed<Vec<IntVector>> {
    let items = match list_items(s) {
        Some(items) => items,
        None => {
            return err(
                line,
                format!("expected a list of integer vectors, found `{s}`"),
            )
        }
    };
    items.iter().map(|x| parse_int_vector(x, line)).collect()
}

fn parse_rational_vector(s: &str, line: usize) -> Parsed<Vec<Rational>> {
    let items = match list_items(s) {
        Some(items) => items,
        None => {
            return err(
                line,
                format!("expected a bracketed rational list, found `{s}`"),
            )
        }
    };
    items
        .iter()
        .map(|x| {
            parse_rational(x).map_or_else(|| err(line, format!("malformed rational `{x}`")), Ok)
        })
        .collect()
}

fn check_len(v: &[impl Sized], rank: usize, line: usize) -> Parsed<()> {
    if v.len() != rank {
        return err(
            line,
            format!("expected {rank} coordinates, found {}", v.len()),
        );
    }
    Ok(())
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str, &'a str)>,
}

/// Strips comments, checks the header and splits each line into keyword and rest.
fn tokenize<'a>(text: &'a str, kind: &str) -> Parsed<Lines<'a>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        lines.push((i + 1, key, rest.trim()));
    }
    match lines.first() {
        Some(&(n, "format", rest)) => {
            let expected = format!("{kind} {FORMAT_VERSION}");
            if rest.split_whitespace().collect::<Vec<_>>().join(" ") != expected {
                return err(
                    n,
                    format!("expected header `format {expected}`, found `format {rest}`"),
                );
            }
        }
        Some(&(n, _, _)) => {
            return err(
                n,
                format!("missing header `format {kind} {FORMAT_VERSION}`"),
            )
        }
        None => return err(1, "empty file"),
    }
    lines.remove(0);
    Ok(Lines { lines })
}

fn parse_rank(rest: &str, line: usize) -> Parsed<usize> {
    rest.parse::<usize>()
        .or_else(|_| err(line, format!("malformed rank `{rest}`")))
}

/// Collects `c` lines into a parameter once the rank and symbols are known.
#[derive(Default)]
struct CBuilder {
    symbols: Option<Vec<String>>,
    components: Vec<(usize, String, Vec<Rational>)>,
}

impl CBuilder {
    fn transcendentals(&mut self, rest: &str, line: usize) -> Parsed<()> {
        if self.symbols.is_some() {
            return err(line, "duplicate `transcendentals` line");
        }
        self.symbols = Some(rest.split_whitespace().map(str::to_string).collect());
        Ok(())
    }

    fn component(&mut self, rest: &str, line: usize, rank: usize) -> Parsed<()> {
        let (symbol, vector) = if rest.starts_with('[') {
            let default = self
                .symbols
                .as_ref()
                .and_then(|s| s.first().cloned())
                .unwrap_or_else(|| "l1".to_string());
            (default, rest)
        } else {
            let (s, v) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            (s.to_string(), v.trim())
        };
        if let Some(symbols) = &self.symbols {
            if !symbols.contains(&symbol) {
                return err(line, format!("`{symbol}` is not a declared transcendental"));
            }
        }
        if self.components.iter().any(|(_, s, _)| *s == symbol) {
            return err(line, format!("duplicate component for `{symbol}`"));
        }
        let v = parse_rational_vector(vector, line)?;
        check_len(&v, rank, line)?;
        self.components.push((line, symbol, v));
        Ok(())
    }

    fn build(self, rank: usize) -> CParam {
        CParam::new(rank, self.components.into_iter().map(|(_, s, v)| (s, v)))
            .expect("lengths and symbols checked")
    }
}

fn require_rank(rank: Option<usize>, line: usize) -> Parsed<usize> {
    rank.map_or_else(|| err(line, "`rank` must be declared before this line"), Ok)
}

/// A parsed fan file before any geometric validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFile {
    pub rank: usize,
    pub c: CParam,
    pub cones: Vec<(String, Cone)>,
    pub decorations: BTreeMap<String, Vec<IntVector>>,
}

impl FanFile {
    pub fn fan_report(&self) -> FanReport {
        validate_fan(self.rank, &self.cones)
    }

    /// Builds the decorated fan, filling undecorated faces by localization.
    pub fn into_decorated(self) -> Result<DecoratedFan> {
        let fan = Fan::new(self.rank, self.cones)?;
        let torus = SupertorusDatum::new(self.rank, self.c)?;
        DecoratedFan::from_maximal(torus, fan, self.decorations)
    }
}

pub fn parse_fan(text: &str) -> Parsed<FanFile> {
    let lines = tokenize(text, FAN_FORMAT)?;
    let mut rank = None;
    let mut c = CBuilder::default();
    let mut cones: Vec<(String, Cone)> = Vec::new();
    let mut decorations = BTreeMap::new();
    let mut decoration_lines = Vec::new();
    for (n, key, rest) in lines.lines {
        match key {
            "rank" => {
                if rank.is_some() {
                    return err(n, "duplicate `rank` line");
                }
                rank = Some(parse_rank(rest, n)?);
            }
            "transcendentals" => c.transcendentals(rest, n)?,
            "c" => c.component(rest, n, require_rank(rank, n)?)?,
            "cone" | "decoration" => {
                let r = require_rank(rank, n)?;
                let (id, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if id.is_empty() || id.starts_with('[') {
                    return err(n, format!("`{key}` needs an id"));
                }
                let vectors = parse_vector_list(body.trim(), n)?;
                for v in &vectors {
                    check_len(v.entries(), r, n)?;
                }
                if key == "cone" {
                    if cones.iter().any(|(x, _)| x == id) {
                        return err(n, format!("duplicate cone id `{id}`"));
                    }
                    let cone = Cone::from_rays(&vectors, r).expect("lengths checked");
                    cones.push((id.to_string(), cone));
                } else {
                    if decorations.insert(id.to_string(), vectors).is_some() {
                        return err(n, format!("duplicate decoration for `{id}`"));
                    }
                    decoration_lines.push((n, id.to_string()));
                }
            }
            other => return err(n, format!("unknown key `{other}`")),
        }
    }
    let rank = require_rank(rank, 1)?;
    for (n, id) in decoration_lines {
        if !cones.iter().any(|(x, _)| *x == id) {
            return err(n, format!("decoration for unknown cone `{id}`"));
        }
    }
    Ok(FanFile {
        rank,
        c: c.build(rank),
        cones,
        decorations,
    })
}

fn format_int_list(vs: &[IntVector]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn format_rational_list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

fn write_c(out: &mut String, c: &CParam) {
    let symbols: Vec<&str> = c.symbols().collect();
    if !symbols.is_empty() {
        writeln!(out, "transcendentals {}", symbols.join(" ")).unwrap();
    }
    for (s, v) in c.components() {
        writeln!(out, "c {s} {}", format_rational_list(v)).unwrap();
    }
}

fn write_cones(out: &mut String, fan: &Fan) {
    for (id, cone) in fan.ids().iter().zip(fan.cones()) {
        writeln!(out, "cone {id} {}", format_int_list(&cone.generators())).unwrap();
    }
}

/// Prints every cone and every decoration, so the output parses back to an
/// equal value.
pub fn print_fan(x: &DecoratedFan) -> String {
    let mut out = format!("format {FAN_FORMAT} {FORMAT_VERSION}\nrank {}\n", x.rank());
    write_c(&mut out, x.c());
    write_cones(&mut out, x.fan());
    for (i, id) in x.fan().ids().iter().enumerate() {
        writeln!(
            out,
            "decoration {id} {}",
            format_int_list(x.decoration_at(i))
        )
        .unwrap();
    }
    out
}

/// An undecorated fan, as produced by an even orbit closure.
pub fn print_plain_fan(fan: &Fan) -> String {
    let mut out = format!(
        "format {FAN_FORMAT} {FORMAT_VERSION}\nrank {}\n",
        fan.rank()
    );
    write_cones(&mut out, fan);
    out
}

/// A morphism between the decorated fans stored at `src` and `dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismFile {
    pub src: String,
    pub dst: String,
    pub matrix: Vec<Vec<BigInt>>,
    pub a: Rational,
}

impl MorphismFile {
    /// The matrix as a map out of a lattice of rank `domain`.
    pub fn lattice_map(&self, domain: usize) -> Result<LatticeMap> {
        LatticeMap::new(self.matrix.clone(), domain)
    }
}

pub fn parse_morphism(text: &str) -> Parsed<MorphismFile> {
    let lines = tokenize(text, MORPHISM_FORMAT)?;
    let mut src = None;
    let mut dst = None;
    let mut matrix = None;
    let mut a = None;
    let mut last = 1;
    for (n, key, rest) in lines.lines {
        last = n;
        let slot_taken = |taken: bool| {
            if taken {
                err(n, format!("duplicate `{key}` line"))
            } else {
                Ok(())
            }
        };
        match key {
            "src" => {
                slot_taken(src.is_some())?;
                src = Some(rest.to_string());
            }
            "dst" => {
                slot_taken(dst.is_some())?;
                dst = Some(rest.to_string());
            }
            "matrix" => {
                slot_taken(matrix.is_some())?;
                let rows = parse_vector_list(rest, n)?;
                if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
                    return err(n, "matrix rows have different lengths");
                }
                matrix = Some(rows.into_iter().map(IntVector::into_entries).collect());
            }
            "a" => {
                slot_taken(a.is_some())?;
                a = Some(
                    parse_rational(rest)
                        .map_or_else(|| err(n, format!("malformed rational `{rest}`")), Ok)?,
                );
            }
            other => return err(n, format!("unknown key `{other}`")),
        }
    }
    let missing = |k: &str| ParseError {
        line: last,
        message: format!("missing `{k}` line"),
    };
    Ok(MorphismFile {
        src: src
            .filter(|s| !s.is_empty())
            .ok_or_else(|| missing("src"))?,
        dst: dst
            .filter(|s| !s.is_empty())
            .ok_or_else(|| missing("dst"))?,
        matrix: matrix.ok_or_else(|| missing("matrix"))?,
        a: a.ok_or_else(|| missing("a"))?,
    })
}

pub fn print_morphism(src: &str, dst: &str, phi: &LatticeMap, a: &Rational) -> String {
    let rows: Vec<IntVector> = (0..phi.codomain_rank()).map(|k| phi.row(k)).collect();
    format!(
        "format {MORPHISM_FORMAT} {FORMAT_VERSION}\nsrc {src}\ndst {dst}\nmatrix {}\na {}\n",
        format_int_list(&rows),
        format_rational(a)
    )
}

/// Monomial data as read from a file; witnesses are searched on conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFile {
    pub rank: usize,
    pub c: CParam,
    pub a: Vec<IntVector>,
    pub b: Vec<IntVector>,
}

impl MonomialFile {
    pub fn into_data(self, witness_cap: u32) -> Result<MonomialData> {
        MonomialData::new(self.rank, self.a, self.b, self.c, witness_cap)
    }
}

pub fn parse_monomials(text: &str) -> Parsed<MonomialFile> {
    let lines = tokenize(text, MONOMIAL_FORMAT)?;
    let mut rank = None;
    let mut c = CBuilder::default();
    let mut a = None;
    let mut b = None;
    let mut last = 1;
    for (n, key, rest) in lines.lines {
        last = n;
        match key {
            "rank" => {
                if rank.is_some() {
                    return err(n, "duplicate `rank` line");
                }
                rank = Some(parse_rank(rest, n)?);
            }
            "transcendentals" => c.transcendentals(rest, n)?,
            "c" => c.component(rest, n, require_rank(rank, n)?)?,
            "A" | "B" => {
                let r = require_rank(rank, n)?;
                let vs = parse_vector_list(rest, n)?;
                for v in &vs {
                    check_len(v.entries(), r, n)?;
                }
                let slot = if key == "A" { &mut a } else { &mut b };
                if slot.replace(vs).is_some() {
                    return err(n, format!("duplicate `{key}` line"));
                }
            }
            other => return err(n, format!("unknown key `{other}`")),
        }
    }
    let rank = require_rank(rank, last)?;
    Ok(MonomialFile {
        rank,
        c: c.build(rank),
        a: a.unwrap_or_default(),
        b: b.unwrap_or_default(),
    })
}

pub fn print_monomials(d: &MonomialData) -> String {
    let mut out = format!(
        "format {MONOMIAL_FORMAT} {FORMAT_VERSION}\nrank {}\n",
        d.rank()
    );
    write_c(&mut out, d.c());
    writeln!(out, "A {}", format_int_list(d.a())).unwrap();
    writeln!(out, "B {}", format_int_list(d.b())).unwrap();
    out
}
