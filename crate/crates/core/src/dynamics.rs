//! Local rules and their action on finite words.
//!
//! Words are stepped on packed 64-bit lanes: with `a`, `b`, `c` the left,
//! centre and right neighbourhood lanes, rule 18 is `!b & (a ^ c)` and rule 90
//! is `a ^ c`. [`step_word_scalar`] evaluates the rule table cell by cell and
//! is kept as the reference the packed path is checked against.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

/// An elementary (radius 1, binary) local rule, identified by its Wolfram code.
///
/// Only [`Rule::R18`] and [`Rule::R90`] are studied here; other codes exist so
/// negative controls can run the oracles against a corrupted table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule(u8);

impl Rule {
    pub const R18: Rule = Rule(18);
    pub const R90: Rule = Rule(90);

    pub const fn from_code(code: u8) -> Rule {
        Rule(code)
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    /// Table lookup: `abc` selects bit `4a + 2b + c` of the code.
    #[inline]
    pub const fn local(self, a: u8, b: u8, c: u8) -> u8 {
        (self.0 >> ((a << 2) | (b << 1) | c)) & 1
    }

    /// Applies the rule to 64 neighbourhoods at once.
    #[inline]
    pub(crate) fn apply_lanes(self, a: u64, b: u64, c: u64) -> u64 {
        match self.0 {
            18 => !b & (a ^ c),
            90 => a ^ c,
            code => {
                let mut out = 0;
                for pattern in 0..8u8 {
                    if (code >> pattern) & 1 == 1 {
                        let pa = if pattern & 4 != 0 { a } else { !a };
                        let pb = if pattern & 2 != 0 { b } else { !b };
                        let pc = if pattern & 1 != 0 { c } else { !c };
                        out |= pa & pb & pc;
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.0)
    }
}

/// Rule 18: 1 exactly on the neighbourhoods `001` and `100`.
#[inline]
pub const fn rule18_local(a: u8, b: u8, c: u8) -> u8 {
    Rule::R18.local(a, b, c)
}

/// Rule 90: `a XOR c`.
#[inline]
pub const fn rule90_local(a: u8, b: u8, c: u8) -> u8 {
    Rule::R90.local(a, b, c)
}

/// Cell-by-cell image of `w`, two symbols shorter.
pub fn step_word_scalar(w: &Word, rule: Rule) -> Result<Word> {
    check_steppable(w, 1)?;
    let bits = w.bits();
    Ok(Word::from_bits_unchecked(
        bits.windows(3).map(|t| rule.local(t[0], t[1], t[2])).collect(),
    ))
}

/// Image of `w` under one step of `rule`; output symbol `i` is the rule
/// applied to `w[i..i+3]`.
pub fn step_word(w: &Word, rule: Rule) -> Result<Word> {
    check_steppable(w, 1)?;
    let lanes = packed::pack(w.bits());
    let out = packed::step_open(&lanes, rule);
    Ok(Word::from_bits_unchecked(packed::unpack(&out, w.len() - 2)))
}

/// `n`-fold image of `w`, of length `|w| - 2n`.
pub fn iterate_word(w: &Word, n: usize, rule: Rule) -> Result<Word> {
    check_steppable(w, n)?;
    if n == 0 {
        return Ok(w.clone());
    }
    let mut lanes = packed::pack(w.bits());
    for _ in 0..n {
        lanes = packed::step_open(&lanes, rule);
    }
    Ok(Word::from_bits_unchecked(packed::unpack(&lanes, w.len() - 2 * n)))
}

/// `w, f(w), ..., f^n(w)`.
pub fn iterate_word_trace(w: &Word, n: usize, rule: Rule) -> Result<Vec<Word>> {
    check_steppable(w, n)?;
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(w.clone());
    for _ in 0..n {
        let next = step_word(rows.last().expect("non-empty"), rule)?;
        rows.push(next);
    }
    Ok(rows)
}

fn check_steppable(w: &Word, n: usize) -> Result<()> {
    let needed = 2 * n + 1;
    if n > 0 && w.len() < needed {
        return Err(Error::WordTooShort { len: w.len(), needed });
    }
    Ok(())
}

pub(crate) mod packed {
    use super::Rule;

    pub(crate) fn lanes_for(len: usize) -> usize {
        len.div_ceil(64)
    }

    pub(crate) fn pack(bits: &[u8]) -> Vec<u64> {
        let mut lanes = vec![0u64; lanes_for(bits.len())];
        for (i, &b) in bits.iter().enumerate() {
            lanes[i / 64] |= u64::from(b) << (i % 64);
        }
        lanes
    }

    pub(crate) fn unpack(lanes: &[u64], len: usize) -> Vec<u8> {
        (0..len).map(|i| ((lanes[i / 64] >> (i % 64)) & 1) as u8).collect()
    }

    #[inline]
    pub(crate) fn get(lanes: &[u64], i: usize) -> u8 {
        ((lanes[i / 64] >> (i % 64)) & 1) as u8
    }

    #[inline]
    pub(crate) fn set(lanes: &mut [u64], i: usize, bit: u8) {
        let mask = 1u64 << (i % 64);
        if bit == 1 {
            lanes[i / 64] |= mask;
        } else {
            lanes[i / 64] &= !mask;
        }
    }

    /// Lane `k` of the result holds input bits `64k + s ..`; bits past the end read 0.
    #[inline]
    pub(crate) fn shift_down(lanes: &[u64], k: usize, s: u32) -> u64 {
        let hi = lanes.get(k + 1).copied().unwrap_or(0);
        (lanes[k] >> s) | if s == 0 { 0 } else { hi << (64 - s) }
    }

    /// Open-boundary step; the caller tracks the shrinking length. Bits at or
    /// beyond the new length may hold garbage. Output `i` reads inputs up to
    /// `i + 2`, so garbage never reaches a valid cell and is dropped on unpack.
    pub(crate) fn step_open(lanes: &[u64], rule: Rule) -> Vec<u64> {
        (0..lanes.len())
            .map(|k| {
                let a = lanes[k];
                let b = shift_down(lanes, k, 1);
                let c = shift_down(lanes, k, 2);
                rule.apply_lanes(a, b, c)
            })
            .collect()
    }
}
