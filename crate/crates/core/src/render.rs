//! Spacetime diagrams as ASCII art or plain PBM (P1) bitmaps.
//!
//! Time runs downward. Each row is a word placed at an absolute column
//! offset; the geometry decides how rows line up and what fills the cells a
//! row does not cover.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{CyclicConfig, FiniteSupportConfig};
use crate::dynamics::{iterate_word_trace, Rule};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Geometry {
    /// Finite words: each row is two shorter and starts one column further right.
    ShrinkingWord,
    /// Equal-width rings.
    Cyclic,
    /// Finitely supported configurations on a 0 background.
    PaddedSupport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Pbm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpacetimeDiagram {
    geometry: Geometry,
    rows: Vec<Word>,
    offsets: Vec<i64>,
}

impl SpacetimeDiagram {
    pub fn shrinking(rows: Vec<Word>) -> Result<Self> {
        for (t, pair) in rows.windows(2).enumerate() {
            if pair[1].len() + 2 != pair[0].len() {
                return Err(Error::GeometryMismatch {
                    row: t + 1,
                    reason: format!("length {} after length {}", pair[1].len(), pair[0].len()),
                });
            }
        }
        let offsets = (0..rows.len() as i64).collect();
        Ok(SpacetimeDiagram { geometry: Geometry::ShrinkingWord, rows, offsets })
    }

    pub fn cyclic(rows: &[CyclicConfig]) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(t) = rows.iter().position(|r| r.width() != first.width()) {
                return Err(Error::GeometryMismatch {
                    row: t,
                    reason: format!("width {} in a diagram of width {}", rows[t].width(), first.width()),
                });
            }
        }
        Ok(SpacetimeDiagram {
            geometry: Geometry::Cyclic,
            rows: rows.iter().map(CyclicConfig::to_word).collect(),
            offsets: vec![0; rows.len()],
        })
    }

    pub fn support(rows: &[FiniteSupportConfig]) -> Self {
        SpacetimeDiagram {
            geometry: Geometry::PaddedSupport,
            rows: rows.iter().map(|r| r.support().clone()).collect(),
            offsets: rows.iter().map(FiniteSupportConfig::offset).collect(),
        }
    }

    /// `w, f(w), ..., f^n(w)` as a shrinking diagram.
    pub fn of_word_run(w: &Word, n: usize, rule: Rule) -> Result<Self> {
        SpacetimeDiagram::shrinking(iterate_word_trace(w, n, rule)?)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    fn column_range(&self) -> (i64, i64) {
        let covered = self.rows.iter().zip(&self.offsets).filter(|(r, _)| !r.is_empty());
        let start = covered.clone().map(|(_, &o)| o).min().unwrap_or(0);
        let end = covered.map(|(r, &o)| o + r.len() as i64).max().unwrap_or(start);
        (start, end)
    }

    fn cell(&self, t: usize, col: i64) -> Option<u8> {
        let rel = col - self.offsets[t];
        let inside = rel >= 0 && (rel as usize) < self.rows[t].len();
        match (inside, self.geometry) {
            (true, _) => self.rows[t].get(rel as usize),
            (false, Geometry::PaddedSupport) => Some(0),
            (false, _) => None,
        }
    }

    pub fn render(&self, format: RenderFormat) -> Result<Vec<u8>> {
        if self.rows.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let (start, end) = self.column_range();
        let mut out = String::new();
        if format == RenderFormat::Pbm {
            let _ = writeln!(out, "P1\n{} {}", end - start, self.rows.len());
        }
        for t in 0..self.rows.len() {
            let mut line: String = (start..end)
                .map(|col| match (self.cell(t, col), format) {
                    (Some(1), RenderFormat::Ascii) => '#',
                    (Some(_), RenderFormat::Ascii) => '.',
                    (None, RenderFormat::Ascii) => ' ',
                    (Some(1), RenderFormat::Pbm) => '1',
                    (_, RenderFormat::Pbm) => '0',
                })
                .collect();
            if format == RenderFormat::Ascii {
                line.truncate(line.trim_end().len());
            }
            out.push_str(&line);
            out.push('\n');
        }
        Ok(out.into_bytes())
    }
}

pub fn render_spacetime(diagram: &SpacetimeDiagram, format: RenderFormat) -> Result<Vec<u8>> {
    diagram.render(format)
}
