//! Plain-text mesh format.
//!
//! ```text
//! mesh2d 1
//! vertices N
//! x y            (N lines)
//! cells M
//! tri i j k      or   quad i j k l   (M lines, counterclockwise, 0-based)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The writer emits
//! coordinates with 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use super::{CellKind, Mesh};
use crate::error::{Error, Result};
use crate::Point;

pub fn read_mesh(path: impl AsRef<Path>) -> Result<Mesh> {
    let text = std::fs::read_to_string(path)?;
    parse_mesh(&text)
}

pub fn write_mesh(mesh: &Mesh, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_mesh(mesh))?;
    Ok(())
}

pub fn format_mesh(mesh: &Mesh) -> String {
    let mut out = String::new();
    out.push_str("mesh2d 1\n");
    let _ = writeln!(out, "vertices {}", mesh.n_vertices());
    for p in mesh.vertices() {
        let _ = writeln!(out, "{:.16e} {:.16e}", p.x, p.y);
    }
    let _ = writeln!(out, "cells {}", mesh.n_cells());
    for c in mesh.cells() {
        let tag = match c.kind {
            CellKind::Triangle => "tri",
            CellKind::Quad => "quad",
        };
        out.push_str(tag);
        for v in &c.vertices {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_content().ok_or_else(|| Error::Parse {
            line: self.last + 1,
            msg: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn count_line(lines: &mut Lines<'_>, keyword: &str) -> Result<usize> {
    let (ln, text) = lines.expect(keyword)?;
    let mut it = text.split_whitespace();
    if it.next() != Some(keyword) {
        return Err(parse_err(ln, format!("expected '{keyword} <count>'")));
    }
    let n = it
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| parse_err(ln, format!("invalid {keyword} count")))?;
    if it.next().is_some() {
        return Err(parse_err(ln, "trailing tokens"));
    }
    Ok(n)
}

pub fn parse_mesh(text: &str) -> Result<Mesh> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let (ln, header) = lines.expect("header")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["mesh2d", "1"] {
        return Err(parse_err(ln, "expected header 'mesh2d 1'"));
    }

    let nv = count_line(&mut lines, "vertices")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, text) = lines.expect("vertex coordinates")?;
        let coords: Vec<f64> = text
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(ln, format!("invalid coordinate: {e}")))?;
        if coords.len() != 2 || !coords.iter().all(|c| c.is_finite()) {
            return Err(parse_err(ln, "expected two finite coordinates"));
        }
        vertices.push(Point::new(coords[0], coords[1]));
    }

    let nc = count_line(&mut lines, "cells")?;
    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (ln, text) = lines.expect("cell")?;
        let mut it = text.split_whitespace();
        let kind = match it.next() {
            Some("tri") => CellKind::Triangle,
            Some("quad") => CellKind::Quad,
            other => {
                return Err(parse_err(
                    ln,
                    format!("unknown cell kind '{}'", other.unwrap_or("")),
                ))
            }
        };
        let ids: Vec<usize> = it
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(ln, format!("invalid vertex index: {e}")))?;
        if ids.len() != kind.n_vertices() {
            return Err(parse_err(
                ln,
                format!("expected {} vertex indices", kind.n_vertices()),
            ));
        }
        if let Some(&bad) = ids.iter().find(|&&v| v >= nv) {
            return Err(parse_err(ln, format!("vertex index {bad} out of range")));
        }
        cells.push((kind, ids));
    }
    if let Some((ln, _)) = lines.next_content() {
        return Err(parse_err(ln, "unexpected content after cells"));
    }
    Mesh::new(vertices, cells)
}
