//! Reading and writing the `.topes` text format.
//!
//! The format is line-oriented:
//!
//! ```text
//! # optional comments
//! n=3
//! ---
//! --+
//! -++
//! +++
//! ++-
//! +--
//! ```
//!
//! The header `n=<width>` comes first (after any comments or blank lines);
//! every following non-blank line is one tope over `+`/`-`, leftmost
//! character being coordinate 0. Anything from `#` to the end of a line is a
//! comment. Writers emit topes in sorted word order.

use crate::error::{Error, Result};
use crate::graph::ToGraph;
use crate::word::SignWord;

/// Parse a `.topes` document.
pub fn parse_topes(input: &str) -> Result<ToGraph> {
    let mut width: Option<usize> = None;
    let mut words: Vec<SignWord> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match width {
            None => {
                let rest = line.strip_prefix("n=").or_else(|| line.strip_prefix("n ="));
                let rest = rest.map(str::trim).ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("expected header `n=<width>`, found `{line}`"),
                })?;
                let n: usize = rest.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid width `{rest}`"),
                })?;
                crate::word::check_width(n).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?;
                width = Some(n);
            }
            Some(n) => {
                let (w, len) = SignWord::parse(line).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: match e {
                        Error::Parse { msg, .. } => msg,
                        other => other.to_string(),
                    },
                })?;
                if len != n {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("tope has {len} coordinates, expected {n}"),
                    });
                }
                words.push(w);
            }
        }
    }
    let width = width.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        msg: "missing `n=<width>` header".into(),
    })?;
    if words.is_empty() {
        return Err(Error::Parse {
            line: input.lines().count().max(1),
            msg: "no topes listed".into(),
        });
    }
    ToGraph::new(width, words)
}

/// Render a graph as a `.topes` document (topes in sorted order).
pub fn write_topes(g: &ToGraph) -> String {
    let mut out = String::with_capacity(8 + g.len() * (g.width() + 1));
    out.push_str(&format!("n={}\n", g.width()));
    for w in g.words() {
        out.push_str(&w.render(g.width()));
        out.push('\n');
    }
    out
}

/// Read a `.topes` file from disk.
pub fn read_topes_file(path: &std::path::Path) -> Result<ToGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::CatalogIo(format!("{}: {e}", path.display())))?;
    parse_topes(&text)
}

/// Write a graph to a `.topes` file.
pub fn write_topes_file(path: &std::path::Path, g: &ToGraph) -> Result<()> {
    std::fs::write(path, write_topes(g))
        .map_err(|e| Error::CatalogIo(format!("{}: {e}", path.display())))
}
