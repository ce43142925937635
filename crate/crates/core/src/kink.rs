//! Kinks: occurrences of `1 0^{2k} 1`.
//!
//! A kink is identified by its left border (the position of its leftmost 1),
//! so `111` holds two kinks. Since a kink contains no inner 1, kinks are
//! exactly the pairs of consecutive 1s separated by an even run of 0s, which
//! makes every scan here linear.

use serde::Serialize;

use crate::config::{CyclicConfig, FiniteSupportConfig};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KinkOccurrence {
    /// Index of the left border.
    pub position: usize,
    /// Number of 0s between the two 1s; always even.
    pub gap: usize,
}

impl KinkOccurrence {
    /// Index of the right 1.
    pub fn end(&self) -> usize {
        self.position + self.gap + 1
    }

    pub fn span(&self) -> usize {
        self.gap + 2
    }
}

/// All kink occurrences in `w`, sorted by position.
pub fn find_kinks(w: &Word) -> Vec<KinkOccurrence> {
    let mut kinks = Vec::new();
    let mut prev_one: Option<usize> = None;
    for (i, &b) in w.bits().iter().enumerate() {
        if b == 1 {
            if let Some(p) = prev_one {
                let gap = i - p - 1;
                if gap % 2 == 0 {
                    kinks.push(KinkOccurrence { position: p, gap });
                }
            }
            prev_one = Some(i);
        }
    }
    kinks
}

pub fn count_kinks(w: &Word) -> usize {
    let mut count = 0;
    let mut prev_one: Option<usize> = None;
    for (i, &b) in w.bits().iter().enumerate() {
        if b == 1 {
            if let Some(p) = prev_one {
                count += usize::from((i - p - 1) % 2 == 0);
            }
            prev_one = Some(i);
        }
    }
    count
}

pub fn kink_parity(w: &Word) -> u8 {
    (count_kinks(w) % 2) as u8
}

pub fn is_kinkless(w: &Word) -> bool {
    count_kinks(w) == 0
}

/// Kinks of a ring: positions `i` where the ring reads `1 0^{2k} 1` with
/// `2k + 2 <= width`, so a kink never wraps onto itself.
pub fn count_kinks_cyclic(x: &CyclicConfig) -> usize {
    let width = x.width();
    let lanes = x.lanes();
    let mut first: Option<usize> = None;
    let mut prev: Option<usize> = None;
    let mut count = 0;
    for (k, &lane) in lanes.iter().enumerate() {
        let mut bits = lane;
        while bits != 0 {
            let i = k * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            match prev {
                Some(p) => count += usize::from((i - p - 1).is_multiple_of(2)),
                None => first = Some(i),
            }
            prev = Some(i);
        }
    }
    if let (Some(f), Some(l)) = (first, prev) {
        // wrap-around pair; a lone 1 would pair with itself across width - 1 zeros
        if f != l {
            let gap = width - l - 1 + f;
            count += usize::from(gap.is_multiple_of(2));
        }
    }
    count
}

/// Kinks in a finitely supported configuration. The 0 background adds none.
pub fn count_kinks_support(x: &FiniteSupportConfig) -> usize {
    count_kinks(x.support())
}

/// The part of a two-kink word spanned by its two kinks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoKinkDecomposition {
    /// Smallest subword containing both kinks.
    pub b: Word,
    /// Separator between the kinks; empty when they share a 1.
    pub delta: Word,
    pub left_gap: usize,
    pub right_gap: usize,
    /// Index of `b` in the decomposed word.
    pub b_start: usize,
}

impl TwoKinkDecomposition {
    /// True when the kinks share their middle 1 (`1 0^{2k} 1 0^{2l} 1`).
    pub fn is_overlapping(&self) -> bool {
        self.b.len() == self.left_gap + self.right_gap + 3
    }
}

pub fn two_kink_decompose(w: &Word) -> Result<TwoKinkDecomposition> {
    let kinks = find_kinks(w);
    let [first, second] = kinks[..] else {
        return Err(Error::NotTwoKink { word: w.clone(), count: kinks.len() });
    };
    let b = w.subword(first.position..second.end() + 1);
    let delta = if second.position == first.end() {
        Word::empty()
    } else {
        w.subword(first.end() + 1..second.position)
    };
    Ok(TwoKinkDecomposition {
        b,
        delta,
        left_gap: first.gap,
        right_gap: second.gap,
        b_start: first.position,
    })
}
