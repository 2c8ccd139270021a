//! Text formats.
//!
//! Presentation file:
//! ```text
//! # comment
//! alphabet 0 1          (optional; defaults to the sorted edge labels)
//! vertex A
//! edge A A 0
//! ```
//! SFT file: `alphabet` line followed by `forbid <word>` lines.
//!
//! Potential file: `range <r>`, then per shape a `shape <o1,o2,...>` line
//! (offsets starting at 0) followed by `val <pattern> <real>` lines.
//! Unlisted patterns are 0.
//!
//! Block-code file: `radius <k>`, `target <s1> <s2> ...`, optional
//! `default <sym>`, then `map <(2k+1)-word> <sym>` lines.
//!
//! Point: `L:C@a:R` with left cycle `L`, core `C` starting at `a` and right
//! cycle `R` (`@a` defaults to `@0`; `C` may be empty).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::shift::{Alphabet, BlockCode, Edge, Point, SoficPresentation, Word};

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// Parses either a presentation file or an SFT file.
pub fn parse_shift(text: &str) -> Result<SoficPresentation> {
    let is_sft = lines(text).any(|(_, t)| t[0] == "forbid")
        || (lines(text).all(|(_, t)| t[0] == "alphabet") && lines(text).next().is_some());
    if is_sft {
        parse_sft(text)
    } else {
        parse_presentation(text)
    }
}

pub fn parse_presentation(text: &str) -> Result<SoficPresentation> {
    let mut alphabet: Option<Alphabet> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut raw_edges: Vec<(usize, String, String, String)> = Vec::new();
    for (line, toks) in lines(text) {
        match toks[0] {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line, "duplicate alphabet line"));
                }
                alphabet = Some(Alphabet::new(&toks[1..]).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            "vertex" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line, "expected `vertex <name>`"));
                }
                if vertices.iter().any(|v| v == toks[1]) {
                    return Err(Error::parse(line, format!("duplicate vertex {}", toks[1])));
                }
                vertices.push(toks[1].to_string());
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(Error::parse(line, "expected `edge <src> <dst> <label>`"));
                }
                raw_edges.push((line, toks[1].into(), toks[2].into(), toks[3].into()));
            }
            other => return Err(Error::parse(line, format!("unknown keyword {other:?}"))),
        }
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => {
            let mut labels: Vec<&str> = raw_edges.iter().map(|e| e.3.as_str()).collect();
            labels.sort_unstable();
            labels.dedup();
            Alphabet::new(&labels).map_err(|e| Error::parse(0, e.to_string()))?
        }
    };
    let find = |line: usize, name: &str| {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::parse(line, format!("undeclared vertex {name}")))
    };
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (line, s, d, l) in &raw_edges {
        let label = alphabet
            .lookup(l)
            .ok_or_else(|| Error::parse(*line, format!("label {l} not in the alphabet")))?;
        edges.push(Edge {
            src: find(*line, s)?,
            dst: find(*line, d)?,
            label,
        });
    }
    SoficPresentation::new(alphabet, vertices, edges).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn parse_sft(text: &str) -> Result<SoficPresentation> {
    let mut alphabet: Option<Alphabet> = None;
    let mut forbidden = Vec::new();
    for (line, toks) in lines(text) {
        match toks[0] {
            "alphabet" => {
                alphabet = Some(Alphabet::new(&toks[1..]).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            "forbid" => {
                let a = alphabet
                    .as_ref()
                    .ok_or_else(|| Error::parse(line, "forbid before alphabet"))?;
                let word = toks[1..].join(" ");
                forbidden.push(a.parse(&word).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            other => return Err(Error::parse(line, format!("unknown keyword {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(0, "missing alphabet line"))?;
    SoficPresentation::from_sft(alphabet, &forbidden).map_err(|e| Error::parse(0, e.to_string()))
}

/// Writes a presentation in the presentation-file format.
pub fn dump_presentation(p: &SoficPresentation) -> String {
    let mut out = format!("alphabet {}\n", p.alphabet().symbols().join(" "));
    for v in p.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in p.edges() {
        out.push_str(&format!(
            "edge {} {} {}\n",
            p.vertices()[e.src],
            p.vertices()[e.dst],
            p.alphabet().name(e.label)
        ));
    }
    out
}

pub fn parse_potential(text: &str, alphabet: &Alphabet) -> Result<Potential> {
    let mut pot: Option<Potential> = None;
    let mut current: Option<(usize, usize)> = None;
    for (line, toks) in lines(text) {
        match toks[0] {
            "range" => {
                if pot.is_some() {
                    return Err(Error::parse(line, "duplicate range line"));
                }
                let r = toks
                    .get(1)
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(line, "expected `range <nonnegative integer>`"))?;
                pot = Some(Potential::new(alphabet.len(), r));
            }
            "shape" => {
                let p = pot.as_mut().ok_or_else(|| Error::parse(line, "shape before range"))?;
                let offs = toks[1..]
                    .join("")
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::parse(line, "bad offset list"))?;
                let idx = p.add_shape(&offs).map_err(|e| Error::parse(line, e.to_string()))?;
                current = Some((idx, offs.len()));
            }
            "val" => {
                let p = pot.as_mut().ok_or_else(|| Error::parse(line, "val before range"))?;
                let (idx, len) = current.ok_or_else(|| Error::parse(line, "val before shape"))?;
                if toks.len() < 3 {
                    return Err(Error::parse(line, "expected `val <pattern> <real>`"));
                }
                let pattern = alphabet
                    .parse(&toks[1..toks.len() - 1].join(" "))
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                if pattern.len() != len {
                    return Err(Error::parse(line, "pattern length does not match the shape"));
                }
                let v: f64 = toks[toks.len() - 1]
                    .parse()
                    .map_err(|_| Error::parse(line, "bad real value"))?;
                p.set_value(idx, &pattern, v).map_err(|e| Error::parse(line, e.to_string()))?;
            }
            other => return Err(Error::parse(line, format!("unknown keyword {other:?}"))),
        }
    }
    pot.ok_or_else(|| Error::parse(0, "missing range line"))
}

pub fn dump_potential(p: &Potential, alphabet: &Alphabet) -> String {
    let mut out = format!("range {}\n", p.range());
    for s in p.shapes() {
        let offs: Vec<String> = s.offsets().iter().map(|o| o.to_string()).collect();
        out.push_str(&format!("shape {}\n", offs.join(",")));
        for (pat, v) in s.entries(alphabet.len()) {
            out.push_str(&format!("val {} {:?}\n", alphabet.format(&pat), v));
        }
    }
    out
}

pub fn parse_block_code(text: &str, source: &SoficPresentation) -> Result<BlockCode> {
    let mut radius: Option<usize> = None;
    let mut target: Option<Alphabet> = None;
    let mut default = None;
    let mut table = BTreeMap::new();
    for (line, toks) in lines(text) {
        match toks[0] {
            "radius" => {
                radius = Some(
                    toks.get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(line, "expected `radius <k>`"))?,
                )
            }
            "target" => {
                target = Some(Alphabet::new(&toks[1..]).map_err(|e| Error::parse(line, e.to_string()))?)
            }
            "default" | "map" => {
                let t = target
                    .as_ref()
                    .ok_or_else(|| Error::parse(line, "target alphabet must come first"))?;
                let sym_tok = toks.last().filter(|_| toks.len() >= 2).ok_or_else(|| Error::parse(line, "missing symbol"))?;
                let sym = t
                    .lookup(sym_tok)
                    .ok_or_else(|| Error::parse(line, format!("{sym_tok} not in the target alphabet")))?;
                if toks[0] == "default" {
                    default = Some(sym);
                } else {
                    let w = source
                        .alphabet()
                        .parse(&toks[1..toks.len() - 1].join(" "))
                        .map_err(|e| Error::parse(line, e.to_string()))?;
                    table.insert(w, sym);
                }
            }
            other => return Err(Error::parse(line, format!("unknown keyword {other:?}"))),
        }
    }
    let radius = radius.ok_or_else(|| Error::parse(0, "missing radius line"))?;
    let target = target.ok_or_else(|| Error::parse(0, "missing target line"))?;
    if table.keys().any(|w: &Vec<u8>| w.len() != 2 * radius + 1) {
        return Err(Error::parse(0, "map words must have length 2k+1"));
    }
    match default {
        Some(d) => BlockCode::from_fn(source, target, radius, |w| table.get(w).copied().unwrap_or(d)),
        None => BlockCode::from_table(source, target, radius, table),
    }
}

/// Parses `L:C@a:R`.
pub fn parse_point(text: &str, p: &SoficPresentation) -> Result<Point> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    if parts.len() != 3 {
        return Err(Error::invalid("point must look like L:C@a:R"));
    }
    let (core, start) = match parts[1].split_once('@') {
        Some((c, a)) => (
            c,
            a.parse::<i64>()
                .map_err(|_| Error::invalid("bad core start"))?,
        ),
        None => (parts[1], 0),
    };
    let a = p.alphabet();
    let core = if core.is_empty() { Vec::new() } else { a.parse(core)? };
    Point::from_symbols(p, &a.parse(parts[0])?, &Word::new(start, core), &a.parse(parts[2])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn presentation_round_trip() {
        for p in [bundled::even_shift(), bundled::golden_mean(), bundled::full_shift()] {
            let again = parse_shift(&dump_presentation(&p)).unwrap();
            assert_eq!(again, p);
        }
    }

    #[test]
    fn potential_round_trip() {
        let a = Alphabet::digits(2);
        let p = bundled::pair_potential().add_scaled(&bundled::site_potential(), 1.0).unwrap();
        assert_eq!(parse_potential(&dump_potential(&p, &a), &a).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_presentation("vertex A\nedge A B 0\n").unwrap_err();
        assert_eq!(e, Error::parse(2, "undeclared vertex B"));
        let e = parse_potential("range 1\nval 0 1\n", &Alphabet::digits(2)).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(matches!(parse_shift("bogus\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn sft_with_no_forbidden_words_is_full() {
        let p = parse_shift("alphabet a b c\n").unwrap();
        assert_eq!(p.alphabet().len(), 3);
        assert_eq!(crate::shift::enumerate_words(&p, 1).unwrap().len(), 27);
    }

    #[test]
    fn point_string() {
        let g = bundled::even_shift();
        let x = parse_point("0:0110@-2:11", &g).unwrap();
        assert_eq!(x.symbol(-100), 0);
        assert_eq!(x.symbol(-1), 1);
        assert_eq!(x.symbol(0), 1);
        assert_eq!(x.symbol(1), 0);
        assert_eq!(x.symbol(57), 1);
        assert!(parse_point("0:010:0", &g).is_err());
    }
}
