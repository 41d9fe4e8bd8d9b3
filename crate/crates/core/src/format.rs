//! Text formats: the canonical coloring format, DOT export, and atomic
//! file writes.
//!
//! Canonical coloring format: a header line `n k`, then `n - 1` lines;
//! line `u` lists the colors of pairs `(u, u+1) .. (u, n-1)`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::coloring::{Color, ColoringError, EdgeColoring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Range { line: usize, source: ColoringError },
    #[error("{k} colors exceed the {palette}-entry palette and numeric fallback is off")]
    PaletteExhausted { k: usize, palette: usize },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Renders `c` in the canonical format, newline-terminated.
pub fn serialize(c: &EdgeColoring) -> String {
    let n = c.n();
    let mut out = format!("{} {}\n", n, c.k());
    for u in 0..n.saturating_sub(1) {
        let row: Vec<String> = (u + 1..n).map(|v| c.color(u, v).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the canonical format. Blank lines and `#` comments are skipped;
/// reported line and column numbers are 1-based positions in `text`.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, 1, "missing header `n k`"))?;
    let head = tokens(hline, header)?;
    if head.len() != 2 {
        return Err(syntax(hline, 1, format!("header needs 2 integers, found {}", head.len())));
    }
    let (n, k) = (head[0].1, head[1].1);
    let mut flat: Vec<Color> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut last_line = hline;
    for u in 0..n.saturating_sub(1) {
        let Some((lno, row)) = lines.next() else {
            return Err(syntax(
                last_line + 1,
                1,
                format!("missing row {u} ({} colors expected)", n - u - 1),
            ));
        };
        last_line = lno;
        let vals = tokens(lno, row)?;
        if vals.len() != n - u - 1 {
            return Err(syntax(
                lno,
                1,
                format!("row {u} needs {} colors, found {}", n - u - 1, vals.len()),
            ));
        }
        for (_, v) in vals {
            if v >= k.max(1) || v > Color::MAX as usize {
                return Err(FormatError::Range {
                    line: lno,
                    source: ColoringError::ColorOutOfRange { color: v, k },
                });
            }
            flat.push(v as Color);
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(syntax(lno, 1, "trailing data after the last row"));
    }
    EdgeColoring::from_flat(n, k, flat).map_err(|source| FormatError::Range { line: hline, source })
}

fn tokens(line: usize, text: &str) -> Result<Vec<(usize, usize)>, FormatError> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while let Some(start) = rest.find(|ch: char| !ch.is_whitespace()) {
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let word = &tail[..len];
        let column = offset + start + 1;
        let v = word
            .parse::<usize>()
            .map_err(|_| syntax(line, column, format!("expected an integer, found `{word}`")))?;
        out.push((column, v));
        offset += start + len;
        rest = &tail[len..];
    }
    Ok(out)
}

impl Serialize for EdgeColoring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&serialize(self))
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_coloring(&text).map_err(serde::de::Error::custom)
    }
}

/// Fixed DOT palette, cycled by color id.
pub const DOT_PALETTE: [&str; 12] = [
    "red", "blue", "green3", "orange", "purple", "cyan3", "magenta", "gold3", "brown", "gray40", "darkgreen",
    "navy",
];

#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    /// Label edges with their color id when `k` exceeds the palette.
    pub numeric_fallback: bool,
    /// Vertex groups rendered as clusters, e.g. Gallai partition parts.
    pub clusters: Option<Vec<Vec<usize>>>,
}

/// DOT rendering, one edge per pair in row-major order.
pub fn export_dot(c: &EdgeColoring, options: &DotOptions) -> Result<String, FormatError> {
    let numeric = c.k() > DOT_PALETTE.len();
    if numeric && !options.numeric_fallback {
        return Err(FormatError::PaletteExhausted {
            k: c.k(),
            palette: DOT_PALETTE.len(),
        });
    }
    let mut out = String::from("graph coloring {\n  node [shape=circle];\n");
    let mut clustered = vec![false; c.n()];
    if let Some(groups) = &options.clusters {
        for (i, group) in groups.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label=\"part {i}\";");
            for &v in group {
                if v < c.n() {
                    clustered[v] = true;
                    let _ = writeln!(out, "    {v};");
                }
            }
            out.push_str("  }\n");
        }
    }
    for v in (0..c.n()).filter(|&v| !clustered[v]) {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v, color) in c.edges() {
        if numeric {
            let _ = writeln!(out, "  {u} -- {v} [label=\"{color}\"];");
        } else {
            let _ = writeln!(out, "  {u} -- {v} [color=\"{}\"];", DOT_PALETTE[color as usize]);
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory and a rename, so readers never see a partial file. Refuses to
/// replace an existing file unless `overwrite`.
pub fn write_atomic(path: &Path, contents: &str, overwrite: bool) -> std::io::Result<()> {
    if !overwrite && path.exists() {
        return Err(std::io::Error::new(
            std::io::ErrorKind::AlreadyExists,
            format!("{} exists (pass --force to overwrite)", path.display()),
        ));
    }
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
