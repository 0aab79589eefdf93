//! Line-oriented text format for surgery presentations.
//!
//! ```text
//! components 2
//! K 4 1
//! A 2/7 1
//! lk 1 2 1
//! meridian 1 2
//! ```
//!
//! Component references in `lk` and `meridian` lines may be names or 1-based
//! indices; names win when both match. `#` starts a comment.

use std::collections::BTreeSet;

use super::{Component, SurgeryError, SurgeryPresentation};
use crate::poly::Rational;

fn err(line: usize, message: impl Into<String>) -> SurgeryError {
    SurgeryError::Parse { line, message: message.into() }
}

fn resolve(comps: &[Component], tok: &str, line: usize) -> Result<usize, SurgeryError> {
    if let Some(i) = comps.iter().position(|c| c.name == tok) {
        return Ok(i);
    }
    match tok.parse::<usize>() {
        Ok(k) if k >= 1 && k <= comps.len() => Ok(k - 1),
        _ => Err(err(line, format!("unknown component `{tok}`"))),
    }
}

pub fn parse_presentation(text: &str) -> Result<SurgeryPresentation, SurgeryError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `components k` header"))?;
    let count = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["components", k] => k.parse::<usize>().map_err(|_| err(hline, format!("bad component count `{k}`")))?,
        _ => return Err(err(hline, "expected `components k`")),
    };

    let mut comps = Vec::with_capacity(count);
    let mut last = hline;
    for _ in 0..count {
        let (ln, l) = lines.next().ok_or_else(|| err(last + 1, format!("expected {count} component lines")))?;
        last = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [name, coeff, flag] = toks[..] else {
            return Err(err(ln, "expected `name coeff unknotted`"));
        };
        if matches!(name, "lk" | "meridian" | "components") {
            return Err(err(ln, format!("expected {count} component lines, found `{name}`")));
        }
        let coefficient: Rational = coeff.parse().map_err(|e| err(ln, format!("bad coefficient `{coeff}`: {e}")))?;
        let unknotted = match flag {
            "1" => true,
            "0" => false,
            _ => return Err(err(ln, format!("unknotted flag must be 0 or 1, got `{flag}`"))),
        };
        if comps.iter().any(|c: &Component| c.name == name) {
            return Err(err(ln, format!("duplicate component name `{name}`")));
        }
        comps.push(Component::new(name, coefficient, unknotted));
    }

    let n = comps.len();
    let mut linking = vec![vec![0i64; n]; n];
    let mut seen = BTreeSet::new();
    let mut meridians = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[..] {
            ["lk", a, b, v] => {
                let (i, j) = (resolve(&comps, a, ln)?, resolve(&comps, b, ln)?);
                if i == j {
                    return Err(err(ln, "self-linking is not part of the format"));
                }
                let v: i64 = v.parse().map_err(|_| err(ln, format!("bad linking number `{v}`")))?;
                if !seen.insert((i.min(j), i.max(j))) {
                    return Err(err(ln, format!("linking of `{a}` and `{b}` given twice")));
                }
                linking[i][j] = v;
                linking[j][i] = v;
            }
            ["meridian", a, b] => {
                meridians.push((resolve(&comps, a, ln)?, resolve(&comps, b, ln)?));
            }
            _ => return Err(err(ln, format!("unrecognised line `{l}`"))),
        }
    }
    SurgeryPresentation::new(comps, linking, meridians).map_err(|e| match e {
        SurgeryError::Invalid(m) => err(last, m),
        other => other,
    })
}

pub fn render_presentation(p: &SurgeryPresentation) -> String {
    let mut out = format!("components {}\n", p.len());
    for c in p.components() {
        out += &format!("{} {} {}\n", c.name, c.coefficient, u8::from(c.unknotted));
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p.lk(i, j) != 0 {
                out += &format!("lk {} {} {}\n", i + 1, j + 1, p.lk(i, j));
            }
        }
    }
    for &(a, b) in p.meridians() {
        out += &format!("meridian {} {}\n", a + 1, b + 1);
    }
    out
}
