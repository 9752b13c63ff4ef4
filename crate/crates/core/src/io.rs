//! Design text format and the JSON catalogue.
//!
//! ```text
//! T=2
//! # label: plain weave
//! 10
//! 01
//! ```
//!
//! Rows run from the top (`y = T-1`) to the bottom (`y = 0`); columns from
//! left (`x = 0`) to right. `1` means the warp is over.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::construct::{EnumeratedDesign, Enumeration};
use crate::error::{Error, Result};
use crate::grid::Design;

pub fn parse_design(text: &str) -> Result<Design> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (n, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let side: usize = header
        .trim()
        .strip_prefix("T=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t| t >= 1)
        .ok_or_else(|| Error::Parse {
            line: n,
            msg: format!("expected header `T=<positive integer>`, got {header:?}"),
        })?;
    let mut label = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (n, line) in lines {
        if rows.is_empty() {
            if let Some(meta) = line.strip_prefix('#') {
                if let Some(v) = meta.trim().strip_prefix("label:") {
                    label = Some(v.trim().to_string());
                }
                continue;
            }
        }
        rows.push((n, line));
    }
    while rows.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        rows.pop();
    }
    if rows.len() != side {
        return Err(Error::Parse {
            line: rows.last().map_or(n + 1, |r| r.0),
            msg: format!("expected {side} rows, found {}", rows.len()),
        });
    }
    let mut cells = vec![false; side * side];
    for (i, (n, row)) in rows.iter().enumerate() {
        let y = side - 1 - i;
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != side {
            return Err(Error::Parse {
                line: *n,
                msg: format!("expected {side} characters, found {}", chars.len()),
            });
        }
        for (x, c) in chars.into_iter().enumerate() {
            cells[y * side + x] = match c {
                '0' => false,
                '1' => true,
                other => {
                    return Err(Error::Parse {
                        line: *n,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            };
        }
    }
    let mut d = Design::new(side, cells)?;
    d.set_label(label);
    Ok(d)
}

pub fn format_design(d: &Design) -> String {
    let mut out = format!("T={}\n", d.side());
    if let Some(l) = d.label() {
        out.push_str(&format!("# label: {l}\n"));
    }
    for row in d.rows_top_down() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn load_design(path: impl AsRef<Path>) -> Result<Design> {
    parse_design(&std::fs::read_to_string(path)?)
}

pub fn save_design(d: &Design, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_design(d))?;
    Ok(())
}

pub const CATALOG_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub order: i64,
    pub species: String,
    #[serde(rename = "M1")]
    pub m1: i64,
    #[serde(rename = "N1")]
    pub n1: i64,
    pub grid: Vec<String>,
    pub falls_apart: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema: u32,
    pub order: i64,
    pub handed_count: usize,
    pub with_reflection_count: usize,
    pub notices: Vec<String>,
    pub designs: Vec<CatalogEntry>,
}

impl CatalogEntry {
    pub fn from_enumerated(order: i64, e: &EnumeratedDesign) -> Self {
        CatalogEntry {
            id: e.id.clone(),
            order,
            species: e.species.name().to_string(),
            m1: e.seed.0,
            n1: e.seed.1,
            grid: e.design.rows_top_down(),
            falls_apart: e.falls_apart,
        }
    }

    pub fn design(&self) -> Result<Design> {
        let t = self.grid.len();
        let mut text = format!("T={t}\n");
        for r in &self.grid {
            text.push_str(r);
            text.push('\n');
        }
        parse_design(&text)
    }
}

impl Catalog {
    pub fn from_enumeration(e: &Enumeration) -> Self {
        Catalog {
            schema: CATALOG_SCHEMA,
            order: e.order,
            handed_count: e.handed_count,
            with_reflection_count: e.with_reflection_count,
            notices: e.notices.clone(),
            designs: e
                .designs
                .iter()
                .map(|d| CatalogEntry::from_enumerated(e.order, d))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(text)?;
        if c.schema != CATALOG_SCHEMA {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unsupported catalog schema {}", c.schema),
            });
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_label() {
        let d = Design::plain_weave().with_label("10-93-1");
        let text = format_design(&d);
        assert_eq!(text, "T=2\n# label: 10-93-1\n10\n01\n");
        assert_eq!(parse_design(&text).unwrap(), d);
    }

    #[test]
    fn top_row_is_highest_y() {
        let d = parse_design("T=2\n10\n00").unwrap();
        assert!(d.get(0, 1));
        assert!(!d.get(0, 0));
    }

    #[test]
    fn rejects_malformed() {
        let short = "T=5\n00000\n00000\n00000\n00000\n";
        assert!(matches!(parse_design(short), Err(Error::Parse { .. })));
        assert!(matches!(parse_design("T=2\n10\n0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_design("T=2\n12\n00\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_design("X=2\n10\n01\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_design("T=0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_design(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_trailing_newline_is_fine() {
        assert_eq!(parse_design("T=1\n1").unwrap().dark_count(), 1);
    }
}
