//! Plain-text interchange format for triangulations.
//!
//! ```text
//! # figure-eight knot complement
//! dimension 3
//! simplices 2
//! partial false
//! 0 (1,2,3) 1 (3,2,1)
//! 0 (1,2,4) 1 (1,4,2)
//! 0 (1,3,4) 1 (3,4,2)
//! 0 (2,3,4) 1 (4,1,3)
//! ```
//!
//! The three header lines come first, in this order. Each following line is
//! one gluing `i (v1,...,vn) j (w1,...,wn)`: simplex indices are 0-based,
//! vertex labels 1-based, and position k of the first tuple is glued to
//! position k of the second. Blank lines and `#` comments are ignored;
//! whitespace inside a record is free. [`serialize`] writes the canonical
//! form above (no comments, single spaces, no spaces inside tuples, trailing
//! newline), and `serialize(parse(s)) == s` for canonical `s`.
//!
//! Parsing checks syntax only; structural defects are left to
//! [`Triangulation::validate`].

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::format_labels;
use crate::triangulation::{FacetGluing, Triangulation};

pub fn serialize(t: &Triangulation) -> String {
    let mut out = String::new();
    writeln!(out, "dimension {}", t.dimension()).unwrap();
    writeln!(out, "simplices {}", t.simplex_count()).unwrap();
    writeln!(out, "partial {}", t.is_partial()).unwrap();
    for g in t.gluings() {
        writeln!(
            out,
            "{} {} {} {}",
            g.from_simplex,
            format_labels(g.from_vertices.iter().copied()),
            g.to_simplex,
            format_labels(g.to_vertices.iter().copied())
        )
        .unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<Triangulation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |key: &str| -> Result<(usize, String)> {
        let (line, content) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("missing `{key}` header"),
        })?;
        let mut words = content.split_whitespace();
        if words.next() != Some(key) {
            return Err(Error::Parse {
                line,
                message: format!("expected `{key} <value>`"),
            });
        }
        let value = words.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("`{key}` needs a value"),
        })?;
        if words.next().is_some() {
            return Err(Error::Parse {
                line,
                message: format!("trailing text after `{key}` value"),
            });
        }
        Ok((line, value.to_string()))
    };

    let (line, dim) = header("dimension")?;
    let dimension: usize = dim.parse().map_err(|_| Error::Parse {
        line,
        message: format!("bad dimension {dim:?}"),
    })?;
    let (line, count) = header("simplices")?;
    let simplex_count: usize = count.parse().map_err(|_| Error::Parse {
        line,
        message: format!("bad simplex count {count:?}"),
    })?;
    let (line, flag) = header("partial")?;
    let partial = match flag.as_str() {
        "true" => true,
        "false" => false,
        other => {
            return Err(Error::Parse {
                line,
                message: format!("partial must be `true` or `false`, found {other:?}"),
            })
        }
    };

    let mut gluings = Vec::new();
    for (line, content) in lines {
        gluings.push(parse_gluing(content).map_err(|message| Error::Parse { line, message })?);
    }
    Ok(Triangulation::new(dimension, simplex_count, gluings, partial))
}

fn parse_gluing(content: &str) -> std::result::Result<FacetGluing, String> {
    let mut rest = content;
    let next_index = |rest: &mut &str| -> std::result::Result<usize, String> {
        let s = rest.trim_start();
        let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        let value = s[..end]
            .parse()
            .map_err(|_| format!("expected a simplex index at {:?}", s))?;
        *rest = &s[end..];
        Ok(value)
    };
    let tuple = |rest: &mut &str| -> std::result::Result<Vec<u8>, String> {
        let s = rest.trim_start();
        let Some(body) = s.strip_prefix('(') else {
            return Err(format!("expected `(` at {s:?}"));
        };
        let close = body.find(')').ok_or("unclosed tuple")?;
        let labels = body[..close]
            .split(',')
            .map(|x| {
                let x = x.trim();
                x.parse::<u8>().map_err(|_| format!("bad vertex label {x:?}"))
            })
            .collect::<std::result::Result<Vec<u8>, String>>()?;
        *rest = &body[close + 1..];
        Ok(labels)
    };
    let from_simplex = next_index(&mut rest)?;
    let from_vertices = tuple(&mut rest)?;
    let to_simplex = next_index(&mut rest)?;
    let to_vertices = tuple(&mut rest)?;
    if !rest.trim().is_empty() {
        return Err(format!("trailing text {:?}", rest.trim()));
    }
    Ok(FacetGluing::new(from_simplex, from_vertices, to_simplex, to_vertices))
}
