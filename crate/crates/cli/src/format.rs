//! Text formats for loops, functions and smashing data.
//!
//! Loop file:
//!
//! ```text
//! # comment lines first
//! 3
//! e a b
//! e a b
//! a b e
//! b e a
//! ```
//!
//! The second line lists the labels, the identity first; row `x` lists `x·y`
//! for `y` in label order.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use fanloop::products::SmashingData;
use fanloop::{FiniteLoop, LoopError, LoopFunction, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: Option<PathBuf>,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { path: None, line, column, message: message.into() }
    }

    pub fn with_path(mut self, path: &Path) -> Self {
        self.path.get_or_insert_with(|| path.to_path_buf());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.path {
            write!(f, "{}:", p.display())?;
        }
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Loop { path: String, source: LoopError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Parsed loop file with its leading comment block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopFile {
    pub comments: Vec<String>,
    pub table: FiniteLoop,
}

pub fn parse_loop_text(text: &str) -> Result<LoopFile, FormatError> {
    let comments: Vec<String> = text.lines().take_while(|l| l.starts_with('#')).map(str::to_string).collect();
    let mut lines = content_lines(text);
    let (ln, order_line) = lines.next().ok_or_else(|| ParseError::at(1, 1, "missing order line"))?;
    let toks = tokens(order_line);
    if toks.len() != 1 {
        return Err(ParseError::at(ln, 1, "order line must hold one integer").into());
    }
    let n: usize = toks[0].1.parse().map_err(|_| ParseError::at(ln, toks[0].0, format!("invalid order `{}`", toks[0].1)))?;
    if n == 0 {
        return Err(ParseError::at(ln, toks[0].0, "order must be positive").into());
    }
    let (ln, label_line) = lines.next().ok_or_else(|| ParseError::at(ln + 1, 1, "missing label line"))?;
    let toks = tokens(label_line);
    if toks.len() != n {
        return Err(ParseError::at(ln, 1, format!("expected {n} labels, found {}", toks.len())).into());
    }
    let mut index = HashMap::new();
    for (k, &(col, label)) in toks.iter().enumerate() {
        if index.insert(label, k).is_some() {
            return Err(ParseError::at(ln, col, format!("duplicate label `{label}`")).into());
        }
    }
    let labels: Vec<String> = toks.iter().map(|(_, l)| l.to_string()).collect();
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| ParseError::at(ln + r + 1, 1, format!("missing row {}", r + 1)))?;
        let toks = tokens(line);
        if toks.len() != n {
            return Err(ParseError::at(ln, 1, format!("row `{}` has {} entries, expected {n}", labels[r], toks.len())).into());
        }
        let row = toks
            .iter()
            .map(|&(col, t)| index.get(t).copied().ok_or_else(|| ParseError::at(ln, col, format!("unknown label `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(ParseError::at(ln, 1, "unexpected content after the table").into());
    }
    // The declared identity is the first label; a table whose identity sits
    // elsewhere is re-indexed by the loop constructor.
    let identity = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x)).unwrap_or(0);
    let table = FiniteLoop::with_labels(&rows, identity, labels).map_err(|source| FormatError::Loop { path: String::new(), source })?;
    Ok(LoopFile { comments, table })
}

pub fn serialize_loop_file(file: &LoopFile) -> String {
    let mut out = String::new();
    for c in &file.comments {
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&serialize_loop(&file.table));
    out
}

pub fn serialize_loop(g: &FiniteLoop) -> String {
    let mut out = format!("{}\n{}\n", g.order(), g.labels().join(" "));
    for x in g.elements() {
        let row: Vec<&str> = g.elements().map(|y| g.label(g.mul(x, y))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

fn with_path(e: FormatError, path: &Path) -> FormatError {
    match e {
        FormatError::Parse(p) => FormatError::Parse(p.with_path(path)),
        FormatError::Loop { source, .. } => FormatError::Loop { path: path.display().to_string(), source },
        other => other,
    }
}

pub fn read_loop_file(path: &Path) -> Result<LoopFile, FormatError> {
    parse_loop_text(&read(path)?).map_err(|e| with_path(e, path))
}

/// Function file: `label value` lines, unlisted labels are 0.
pub fn parse_function_text(text: &str, g: &FiniteLoop) -> Result<LoopFunction, ParseError> {
    let mut values = vec![Rational::zero(); g.order()];
    let mut seen = vec![false; g.order()];
    for (ln, line) in content_lines(text) {
        let toks = tokens(line);
        if toks.len() != 2 {
            return Err(ParseError::at(ln, 1, "expected `label value`"));
        }
        let (col, label) = toks[0];
        let x = g.index_of(label).ok_or_else(|| ParseError::at(ln, col, format!("unknown label `{label}`")))?;
        if std::mem::replace(&mut seen[x], true) {
            return Err(ParseError::at(ln, col, format!("label `{label}` listed twice")));
        }
        let (col, value) = toks[1];
        let v: Rational = value.parse().map_err(|e| ParseError::at(ln, col, format!("invalid rational `{value}`: {e}")))?;
        if v.is_negative() {
            return Err(ParseError::at(ln, col, "function values must be nonnegative"));
        }
        values[x] = v;
    }
    Ok(LoopFunction::new(values).expect("values checked nonnegative"))
}

pub fn read_function_file(path: &Path, g: &FiniteLoop) -> Result<LoopFunction, FormatError> {
    parse_function_text(&read(path)?, g).map_err(|e| FormatError::Parse(e.with_path(path)))
}

pub fn serialize_function(f: &LoopFunction, g: &FiniteLoop) -> String {
    let mut out = String::new();
    for x in g.elements() {
        if !f.get(x).is_zero() {
            out.push_str(&format!("{} {}\n", g.label(x), f.get(x)));
        }
    }
    out
}

/// Smashing file sections, in order: `[A]` and `[B]` hold a path relative to
/// the file; `[N]` lists labels, identity first; `[embed_a]` and `[embed_b]`
/// hold `n-label image-label` lines; `[phi]` holds `u b image` lines;
/// `[eta]` holds `v u b n-label`; `[kappa]` holds `u c b n-label`; `[xi]` holds
/// `u c v b n-label`. Unlisted entries are identities. When `[eta]` and
/// `[kappa]` are both absent they are derived from `[phi]`.
pub fn parse_smashing_text(text: &str, base: &Path) -> Result<SmashingData, FormatError> {
    let mut sections: Vec<(String, usize, Vec<(usize, &str)>)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let t = line.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if sections.iter().any(|(s, _, _)| s == name) {
                return Err(ParseError::at(ln, 1, format!("section [{name}] repeated")).into());
            }
            sections.push((name.to_string(), ln, Vec::new()));
        } else {
            let last = sections.last_mut().ok_or_else(|| ParseError::at(ln, 1, "content before the first section"))?;
            last.2.push((ln, line));
        }
    }
    const KNOWN: [&str; 9] = ["A", "B", "N", "embed_a", "embed_b", "phi", "eta", "kappa", "xi"];
    if let Some((name, ln, _)) = sections.iter().find(|(s, _, _)| !KNOWN.contains(&s.as_str())) {
        return Err(ParseError::at(*ln, 1, format!("unknown section [{name}]")).into());
    }
    let section = |name: &str| sections.iter().find(|(s, _, _)| s == name).map(|(_, ln, body)| (*ln, body.as_slice()));
    let required = |name: &str| section(name).ok_or_else(|| ParseError::at(1, 1, format!("missing section [{name}]")));

    let load = |name: &str| -> Result<FiniteLoop, FormatError> {
        let (ln, body) = required(name)?;
        let [(_, line)] = body else {
            return Err(ParseError::at(ln, 1, format!("section [{name}] must hold one path")).into());
        };
        Ok(read_loop_file(&base.join(line.trim()))?.table)
    };
    let a = load("A")?;
    let b = load("B")?;

    let (ln, body) = required("N")?;
    let n_labels: Vec<String> = body.iter().flat_map(|(_, l)| tokens(l)).map(|(_, t)| t.to_string()).collect();
    if n_labels.is_empty() {
        return Err(ParseError::at(ln, 1, "[N] lists no labels").into());
    }
    let n_index = |ln: usize, col: usize, t: &str| -> Result<usize, ParseError> {
        n_labels.iter().position(|l| l == t).ok_or_else(|| ParseError::at(ln, col, format!("unknown N label `{t}`")))
    };
    let in_loop = |g: &FiniteLoop, ln: usize, col: usize, t: &str| -> Result<usize, ParseError> {
        g.index_of(t).ok_or_else(|| ParseError::at(ln, col, format!("unknown label `{t}`")))
    };

    let embedding = |name: &str, g: &FiniteLoop| -> Result<Vec<usize>, FormatError> {
        let (_, body) = required(name)?;
        let mut map = vec![usize::MAX; n_labels.len()];
        for &(ln, line) in body {
            let toks = tokens(line);
            if toks.len() != 2 {
                return Err(ParseError::at(ln, 1, "expected `n-label image`").into());
            }
            let k = n_index(ln, toks[0].0, toks[0].1)?;
            map[k] = in_loop(g, ln, toks[1].0, toks[1].1)?;
        }
        if let Some(k) = map.iter().position(|&x| x == usize::MAX) {
            return Err(ParseError::at(1, 1, format!("[{name}] has no image for `{}`", n_labels[k])).into());
        }
        Ok(map)
    };
    let embed_a = embedding("embed_a", &a)?;
    let embed_b = embedding("embed_b", &b)?;
    let (na, nb) = (a.order(), b.order());
    let (la, lb) = (a.clone(), b.clone());
    let mut d = SmashingData::trivial(a, b, n_labels.clone(), embed_a, embed_b);

    // Rows of `width` loop labels (sides given by `sides`) and a final value.
    let entries = |name: &str, sides: &[char], value_in_b: bool| -> Result<Vec<(Vec<usize>, usize)>, FormatError> {
        let Some((_, body)) = section(name) else { return Ok(vec![]) };
        let mut out = Vec::new();
        for &(ln, line) in body {
            let toks = tokens(line);
            if toks.len() != sides.len() + 1 {
                return Err(ParseError::at(ln, 1, format!("[{name}] lines need {} labels", sides.len() + 1)).into());
            }
            let mut key = Vec::new();
            for (&(col, t), &side) in toks.iter().zip(sides) {
                key.push(in_loop(if side == 'A' { &la } else { &lb }, ln, col, t)?);
            }
            let (col, t) = toks[sides.len()];
            let value = if value_in_b { in_loop(&lb, ln, col, t)? } else { n_index(ln, col, t)? };
            out.push((key, value));
        }
        Ok(out)
    };
    for (k, v) in entries("phi", &['A', 'B'], true)? {
        d.phi[k[0] * nb + k[1]] = v;
    }
    let eta = entries("eta", &['A', 'A', 'B'], false)?;
    let kappa = entries("kappa", &['A', 'B', 'B'], false)?;
    if section("eta").is_none() && section("kappa").is_none() {
        // Values outside N are reported by validation, so a failure to derive
        // leaves the trivial tables in place.
        let _ = d.derive_eta_kappa();
    }
    for (k, v) in eta {
        d.eta[(k[0] * na + k[1]) * nb + k[2]] = v;
    }
    for (k, v) in kappa {
        d.kappa[(k[0] * nb + k[1]) * nb + k[2]] = v;
    }
    for (k, v) in entries("xi", &['A', 'B', 'A', 'B'], false)? {
        d.set_xi(k[0], k[1], k[2], k[3], v);
    }
    Ok(d)
}

pub fn read_smashing_file(path: &Path) -> Result<SmashingData, FormatError> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_smashing_text(&read(path)?, base).map_err(|e| with_path(e, path))
}
