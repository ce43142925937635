//! Configurations: periodic rings and finitely supported lines.

use serde::{Deserialize, Serialize};

use crate::dynamics::{packed, step_word, Rule};
use crate::error::{Error, Result};
use crate::word::Word;

/// A periodic configuration of fixed width, indexed modulo the width.
///
/// Cells are packed into 64-bit lanes; bits past `width` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicConfig {
    width: usize,
    lanes: Vec<u64>,
}

pub const MIN_CYCLIC_WIDTH: usize = 3;

impl CyclicConfig {
    pub fn new(cells: &Word) -> Result<Self> {
        check_width(cells.len())?;
        Ok(CyclicConfig {
            width: cells.len(),
            lanes: packed::pack(cells.bits()),
        })
    }

    /// Wraps raw lanes, clearing bits past `width`.
    pub fn from_lanes(width: usize, mut lanes: Vec<u64>) -> Result<Self> {
        check_width(width)?;
        lanes.resize(packed::lanes_for(width), 0);
        if !width.is_multiple_of(64) {
            *lanes.last_mut().expect("width >= 3") &= (1u64 << (width % 64)) - 1;
        }
        Ok(CyclicConfig { width, lanes })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn lanes(&self) -> &[u64] {
        &self.lanes
    }

    /// Cell `i mod width`.
    pub fn get(&self, i: i64) -> u8 {
        packed::get(&self.lanes, i.rem_euclid(self.width as i64) as usize)
    }

    pub fn to_word(&self) -> Word {
        Word::from_bits_unchecked(packed::unpack(&self.lanes, self.width))
    }

    pub fn count_ones(&self) -> usize {
        self.lanes.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// One step: cell `i` becomes the rule applied to cells `i-1, i, i+1`.
    pub fn step(&self, rule: Rule) -> CyclicConfig {
        let w = self.width;
        let n = self.lanes.len();
        let x = &self.lanes;
        let first = packed::get(x, 0);
        let last = packed::get(x, w - 1);

        let mut right: Vec<u64> = (0..n).map(|k| packed::shift_down(x, k, 1)).collect();
        packed::set(&mut right, w - 1, first);

        let mut left: Vec<u64> = (0..n)
            .map(|k| (x[k] << 1) | if k > 0 { x[k - 1] >> 63 } else { 0 })
            .collect();
        packed::set(&mut left, 0, last);

        let lanes = (0..n)
            .map(|k| rule.apply_lanes(left[k], x[k], right[k]))
            .collect();
        CyclicConfig::from_lanes(w, lanes).expect("width already validated")
    }

    pub fn iterate(&self, n: usize, rule: Rule) -> CyclicConfig {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.step(rule);
        }
        x
    }
}

impl std::fmt::Debug for CyclicConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CyclicConfig({})", self.to_word())
    }
}

fn check_width(width: usize) -> Result<()> {
    if width < MIN_CYCLIC_WIDTH {
        return Err(Error::WidthTooSmall { width, needed: MIN_CYCLIC_WIDTH });
    }
    Ok(())
}

pub fn step_cyclic(x: &CyclicConfig, rule: Rule) -> CyclicConfig {
    x.step(rule)
}

/// A bi-infinite configuration that is 0 outside a finite window.
///
/// Always canonical: the support is empty or begins and ends with 1, and the
/// all-zero configuration has offset 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSupportConfig {
    support: Word,
    offset: i64,
}

impl FiniteSupportConfig {
    /// The configuration holding `cells` at `offset`, trimmed to canonical form.
    pub fn new(cells: &Word, offset: i64) -> Self {
        let bits = cells.bits();
        match bits.iter().position(|&b| b == 1) {
            None => FiniteSupportConfig::zero(),
            Some(first) => {
                let last = bits.iter().rposition(|&b| b == 1).expect("has a 1");
                FiniteSupportConfig {
                    support: cells.subword(first..last + 1),
                    offset: offset + first as i64,
                }
            }
        }
    }

    pub fn zero() -> Self {
        FiniteSupportConfig { support: Word::empty(), offset: 0 }
    }

    pub fn support(&self) -> &Word {
        &self.support
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn get(&self, i: i64) -> u8 {
        let rel = i - self.offset;
        if rel < 0 {
            return 0;
        }
        self.support.get(rel as usize).unwrap_or(0)
    }

    /// Cells `start .. start + len`.
    pub fn window(&self, start: i64, len: usize) -> Word {
        Word::from_bits_unchecked((0..len as i64).map(|j| self.get(start + j)).collect())
    }

    pub fn translated(&self, by: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        FiniteSupportConfig { support: self.support.clone(), offset: self.offset + by }
    }

    /// Pads the support with `00` on both sides, steps it as a word and
    /// re-trims; exact because the rule fixes `000`.
    pub fn step(&self, rule: Rule) -> Self {
        debug_assert_eq!(rule.local(0, 0, 0), 0, "background must be quiescent");
        if self.is_zero() {
            return self.clone();
        }
        let padded = crate::word!["00", &self.support, "00"];
        let image = step_word(&padded, rule).expect("padded support has length >= 5");
        FiniteSupportConfig::new(&image, self.offset - 1)
    }
}

pub fn step_support(x: &FiniteSupportConfig, rule: Rule) -> FiniteSupportConfig {
    x.step(rule)
}
