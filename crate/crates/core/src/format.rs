//! Line-oriented Gauss-code text format.
//!
//! ```text
//! circles 2
//! circle 1: O1+ U2-
//! circle 2: U1+ O2-
//! ```
//!
//! `O` marks a chord's tail, `U` its head; tokens run counterclockwise.
//! Lines starting with `#` and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::diagram::{canonical_form, ChordId, EndKind, Endpoint, GaussDiagram, Sign};
use crate::error::{Error, Result};

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a line into `(column, token)` pairs, columns 1-based.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_endpoint(tok: &str, line: usize, col: usize) -> Result<(Endpoint, Sign)> {
    let mut chars = tok.chars();
    let kind = match chars.next() {
        Some('O') => EndKind::Tail,
        Some('U') => EndKind::Head,
        _ => {
            return Err(syntax(
                line,
                col,
                format!("expected O or U in token `{tok}`"),
            ))
        }
    };
    let sign = match tok.chars().last() {
        Some('+') => Sign::Pos,
        Some('-') => Sign::Neg,
        _ => {
            return Err(syntax(
                line,
                col,
                format!("expected trailing sign in token `{tok}`"),
            ))
        }
    };
    let digits = &tok[1..tok.len() - 1];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, col, format!("bad chord id in token `{tok}`")));
    }
    let id: u32 = digits
        .parse()
        .map_err(|_| syntax(line, col, format!("chord id out of range in `{tok}`")))?;
    if id == 0 {
        return Err(syntax(line, col, "chord ids are positive"));
    }
    Ok((Endpoint::new(ChordId(id), kind), sign))
}

pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram> {
    let mut mu: Option<usize> = None;
    let mut circles: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
    let mut signs: BTreeMap<ChordId, Sign> = BTreeMap::new();
    let mut counts: BTreeMap<ChordId, usize> = BTreeMap::new();
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(raw);
        let Some(m) = mu else {
            match toks.as_slice() {
                [(_, "circles"), (col, v)] => {
                    let value: usize = v
                        .parse()
                        .map_err(|_| syntax(line_no, *col, "expected circle count"))?;
                    if value == 0 {
                        return Err(syntax(line_no, *col, "need at least one circle"));
                    }
                    mu = Some(value);
                }
                _ => return Err(syntax(line_no, 1, "expected `circles <count>`")),
            }
            continue;
        };

        if toks.first().map(|t| t.1) != Some("circle") {
            return Err(syntax(line_no, toks[0].0, "expected `circle <index>:`"));
        }
        // The index token may be `1:` or `1` followed by a lone `:`.
        let (idx_col, idx_tok) = *toks
            .get(1)
            .ok_or_else(|| syntax(line_no, raw.len() + 1, "missing circle index"))?;
        let (idx_str, rest_start) = match idx_tok.strip_suffix(':') {
            Some(s) => (s, 2),
            None if toks.get(2).map(|t| t.1) == Some(":") => (idx_tok, 3),
            None => return Err(syntax(line_no, idx_col, "expected `:` after circle index")),
        };
        let idx: usize = idx_str
            .parse()
            .map_err(|_| syntax(line_no, idx_col, "bad circle index"))?;
        if idx == 0 || idx > m {
            return Err(syntax(
                line_no,
                idx_col,
                format!("circle index {idx} out of range 1..={m}"),
            ));
        }
        if circles.contains_key(&idx) {
            return Err(Error::DuplicateCircle(idx));
        }
        let mut slots = Vec::new();
        for &(col, tok) in &toks[rest_start..] {
            let (e, s) = parse_endpoint(tok, line_no, col)?;
            match signs.get(&e.chord) {
                Some(&prev) if prev != s => return Err(Error::SignMismatch(e.chord.0)),
                _ => {
                    signs.insert(e.chord, s);
                }
            }
            *counts.entry(e.chord).or_default() += 1;
            slots.push(e);
        }
        circles.insert(idx, slots);
    }

    let Some(m) = mu else {
        return Err(syntax(
            last_line.max(1),
            1,
            "missing `circles <count>` header",
        ));
    };
    if let Some((&id, &count)) = counts.iter().find(|(_, &c)| c != 2) {
        return Err(Error::ChordCount { id: id.0, count });
    }
    let mut ordered = Vec::with_capacity(m);
    for i in 1..=m {
        ordered.push(circles.remove(&i).ok_or(Error::MissingCircle(i))?);
    }
    GaussDiagram::new(ordered, &signs)
}

/// Canonical text, without a trailing newline.
pub fn serialize(g: &GaussDiagram) -> String {
    let c = canonical_form(g);
    write_raw(&c)
}

/// Text of the diagram as stored, without canonicalizing.
pub fn write_raw(g: &GaussDiagram) -> String {
    let mut out = format!("circles {}", g.mu());
    for (i, slots) in g.circles().iter().enumerate() {
        let _ = write!(out, "\ncircle {}:", i + 1);
        for e in slots {
            let k = match e.kind {
                EndKind::Tail => 'O',
                EndKind::Head => 'U',
            };
            let s = g.chords()[&e.chord].sign.symbol();
            let _ = write!(out, " {k}{}{s}", e.chord.0);
        }
    }
    out
}
