//! Finite binary words.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{0,1}`.
///
/// Symbols are stored one per byte and are always `0` or `1`. The derived
/// ordering is lexicographic, with a proper prefix ordered before its
/// extensions.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw symbols, rejecting anything other than 0 and 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(index) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidSymbol {
                index,
                found: char::from(b'0'.wrapping_add(bits[index])),
            });
        }
        Ok(Word(bits))
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Word(bits)
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Word(bits.into_iter().map(u8::from).collect())
    }

    /// The `len`-symbol word spelling the low `len` bits of `value`, most
    /// significant first. Iterating `value` over `0..1 << len` visits all
    /// words of that length in lexicographic order.
    pub fn from_index(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        Word(
            (0..len)
                .map(|i| ((value >> (len - 1 - i)) & 1) as u8)
                .collect(),
        )
    }

    pub fn zeros(len: usize) -> Self {
        Word(vec![0; len])
    }

    pub fn ones(len: usize) -> Self {
        Word(vec![1; len])
    }

    /// Parses a word literal, panicking on malformed input. Meant for
    /// constants in tests and oracles.
    pub fn lit(s: &str) -> Self {
        s.parse()
            .unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<u8> {
        self.0.get(i).copied()
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn subword(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.0);
        bits.extend_from_slice(&other.0);
        Word(bits)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// True if `pattern` occurs at `offset`.
    pub fn contains_at(&self, pattern: &Word, offset: usize) -> bool {
        offset
            .checked_add(pattern.len())
            .is_some_and(|end| end <= self.len() && self.0[offset..end] == pattern.0[..])
    }

    /// Positions of all (possibly overlapping) occurrences of `pattern`.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len())
            .filter(|&i| self.contains_at(pattern, i))
            .collect()
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == &pattern.0[..])
    }

    /// Bitwise XOR of two equal-length words.
    pub fn xor(&self, other: &Word) -> Word {
        assert_eq!(self.len(), other.len(), "xor of words of unequal length");
        Word(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// All words of the given length, in lexicographic order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = Word> {
        assert!(len < 64, "exhaustive enumeration limited to lengths below 64");
        (0..1u64 << len).map(move |v| Word::from_index(v, len))
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(Word::all_of_len)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let s: String = self.0.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Word {
    /// The word as a plain `0`/`1` string; the empty word gives `""`.
    pub fn to_bit_string(&self) -> String {
        self.0.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(Word::empty());
        }
        s.chars()
            .enumerate()
            .map(|(index, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                found => Err(Error::InvalidSymbol { index, found }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Concatenates word literals and words: `word!["00", w, "1"]`.
#[macro_export]
macro_rules! word {
    ($($part:expr),* $(,)?) => {{
        let mut bits: Vec<u8> = Vec::new();
        $( bits.extend_from_slice($crate::word::AsWordPart::as_word_part(&$part).bits()); )*
        $crate::Word::from_bits(bits).expect("word! parts are valid words")
    }};
}

#[doc(hidden)]
pub trait AsWordPart {
    fn as_word_part(&self) -> Word;
}

impl AsWordPart for &str {
    fn as_word_part(&self) -> Word {
        Word::lit(self)
    }
}

impl AsWordPart for Word {
    fn as_word_part(&self) -> Word {
        self.clone()
    }
}

impl AsWordPart for &Word {
    fn as_word_part(&self) -> Word {
        (*self).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "0011".parse().unwrap();
        assert_eq!(w.bits(), &[0, 0, 1, 1]);
        assert_eq!(w.to_string(), "0011");
        assert_eq!(Word::empty().to_string(), "ε");
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        assert_eq!(
            "0120".parse::<Word>(),
            Err(Error::InvalidSymbol { index: 2, found: '2' })
        );
    }

    #[test]
    fn reversal() {
        assert_eq!(Word::lit("1101001").reversed(), Word::lit("1001011"));
        assert_eq!(Word::empty().reversed(), Word::empty());
        assert_eq!(Word::lit("10").reversed(), Word::lit("01"));
    }

    #[test]
    fn lexicographic_enumeration() {
        let words: Vec<String> = Word::all_of_len(2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
        assert_eq!(Word::all_up_to(3).count(), 1 + 2 + 4 + 8);
    }

    #[test]
    fn occurrences_overlap() {
        assert_eq!(Word::lit("1111").occurrences(&Word::lit("11")), vec![0, 1, 2]);
        assert!(Word::lit("0010").contains_at(&Word::lit("10"), 2));
        assert!(!Word::lit("0010").contains_at(&Word::lit("10"), 3));
    }

    #[test]
    fn macro_concatenates() {
        let mid = Word::lit("11");
        assert_eq!(word!["00", mid, "0"], Word::lit("00110"));
    }

    #[test]
    fn serde_as_string() {
        let w = Word::lit("101");
        assert_eq!(serde_json::to_string(&w).unwrap(), "\"101\"");
        assert_eq!(serde_json::from_str::<Word>("\"101\"").unwrap(), w);
    }
}
