//! Membership tests for the word classes built on kinks: stable and unstable
//! words, left kink words, `B`, and the two-kink language `P`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kink::{count_kinks, find_kinks, two_kink_decompose};
use crate::word::Word;

/// A complete deterministic automaton over `{0,1}`.
#[derive(Debug)]
pub struct Dfa<const N: usize> {
    start: usize,
    accepting: [bool; N],
    next: [[usize; 2]; N],
}

impl<const N: usize> Dfa<N> {
    pub fn accepts(&self, w: &Word) -> bool {
        let end = w
            .bits()
            .iter()
            .fold(self.start, |q, &b| self.next[q][b as usize]);
        self.accepting[end]
    }
}

/// `(ε+0)(10)*11(0+1)*`.
///
/// States: 0 start, 1 expecting the 1 that opens a `10` or `11` block,
/// 2 inside such a block, 3 accepted, 4 dead.
pub static LEFT_UNSTABLE: Dfa<5> = Dfa {
    start: 0,
    accepting: [false, false, false, true, false],
    next: [[1, 2], [4, 2], [1, 3], [3, 3], [4, 4]],
};

/// `(0+1)*11(01)*(ε+0)`, the subset construction of the obvious NFA.
///
/// States: 0 no progress, 1 read a 1, 2 suffix in `11(01)*`, 3 suffix in
/// `11(01)*0`.
pub static RIGHT_UNSTABLE: Dfa<4> = Dfa {
    start: 0,
    accepting: [false, false, true, true],
    next: [[0, 1], [0, 2], [3, 2], [0, 2]],
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StabilityClass {
    Stable,
    LeftUnstable,
    RightUnstable,
    BothUnstable,
}

impl StabilityClass {
    pub fn is_stable(self) -> bool {
        self == StabilityClass::Stable
    }

    pub fn name(self) -> &'static str {
        match self {
            StabilityClass::Stable => "Stable",
            StabilityClass::LeftUnstable => "LeftUnstable",
            StabilityClass::RightUnstable => "RightUnstable",
            StabilityClass::BothUnstable => "BothUnstable",
        }
    }
}

pub fn is_left_unstable(w: &Word) -> bool {
    LEFT_UNSTABLE.accepts(w)
}

pub fn is_right_unstable(w: &Word) -> bool {
    RIGHT_UNSTABLE.accepts(w)
}

pub fn is_stable(w: &Word) -> bool {
    !is_left_unstable(w) && !is_right_unstable(w)
}

pub fn classify_stability(w: &Word) -> StabilityClass {
    match (is_left_unstable(w), is_right_unstable(w)) {
        (false, false) => StabilityClass::Stable,
        (true, false) => StabilityClass::LeftUnstable,
        (false, true) => StabilityClass::RightUnstable,
        (true, true) => StabilityClass::BothUnstable,
    }
}

/// `0^a (10)^n 1^b` with `a, b` in `{0, 1}`: the stable shapes whose
/// extensions lift only up to parity.
pub fn is_excluded_form(w: &Word) -> bool {
    let bits = w.bits();
    [(0, 0), (0, 1), (1, 0), (1, 1)].iter().any(|&(alpha, beta)| {
        if bits.len() < alpha + beta {
            return false;
        }
        let (head, rest) = bits.split_at(alpha);
        let (core, tail) = rest.split_at(rest.len() - beta);
        head.iter().all(|&b| b == 0)
            && tail.iter().all(|&b| b == 1)
            && core.len() % 2 == 0
            && core.chunks(2).all(|c| c == [1, 0])
    })
}

pub fn reverse(w: &Word) -> Word {
    w.reversed()
}

/// Left kink word: exactly one kink, starting at position 0.
pub fn is_left_kink_word(w: &Word) -> bool {
    matches!(find_kinks(w)[..], [k] if k.position == 0)
}

/// `B`: two-kink words starting with `11` whose last symbol closes a kink,
/// other than `11 (01)^k 1`.
pub fn in_b(w: &Word) -> bool {
    let kinks = find_kinks(w);
    if kinks.len() != 2 || !w.starts_with(&Word::lit("11")) {
        return false;
    }
    let ends_in_kink = kinks.iter().any(|k| k.end() + 1 == w.len());
    ends_in_kink && !is_11_01k_1(w)
}

/// `B^R`.
pub fn in_b_reversed(w: &Word) -> bool {
    in_b(&w.reversed())
}

fn is_11_01k_1(w: &Word) -> bool {
    let bits = w.bits();
    bits.len() >= 3
        && bits.len() % 2 == 1
        && bits[..2] == [1, 1]
        && bits[bits.len() - 1] == 1
        && bits[2..bits.len() - 1].chunks(2).all(|c| c == [0, 1])
}

/// `1 (100010)^k 1001`.
pub fn flipflop_left(k: usize) -> Word {
    crate::word!["1", Word::lit("100010").repeat(k), "1001"]
}

/// `1001 (010001)^k 1`.
pub fn flipflop_right(k: usize) -> Word {
    crate::word!["1001", Word::lit("010001").repeat(k), "1"]
}

fn is_flipflop(b: &Word) -> bool {
    b.len() >= 5 && b.len() % 6 == 5 && {
        let k = (b.len() - 5) / 6;
        *b == flipflop_left(k) || *b == flipflop_right(k)
    }
}

/// Membership in `P` for a word with exactly two kinks.
pub fn in_p(w: &Word) -> Result<bool> {
    let b = two_kink_decompose(w)?.b;
    if b == Word::lit("111") {
        return Ok(false);
    }
    let bits = b.bits();
    let n = bits.len();
    if n >= 4 && bits[..2] == [1, 1] && bits[n - 2..] == [1, 1] {
        let v = b.subword(2..n - 2);
        if v.count_ones() % 2 == 1 {
            return Ok(false);
        }
    }
    Ok(!is_flipflop(&b))
}

/// `in_p` for words whose kink count is unknown.
pub fn in_p_checked(w: &Word) -> Option<bool> {
    match in_p(w) {
        Ok(v) => Some(v),
        Err(Error::NotTwoKink { .. }) => None,
        Err(e) => unreachable!("in_p only fails on kink count: {e}"),
    }
}

pub fn has_two_kinks(w: &Word) -> bool {
    count_kinks(w) == 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::lit(s)
    }

    #[test]
    fn stability_examples() {
        assert_eq!(classify_stability(&w("0011")), StabilityClass::RightUnstable);
        assert_eq!(classify_stability(&w("001101100")), StabilityClass::Stable);
        assert_eq!(classify_stability(&w("11")), StabilityClass::BothUnstable);
        assert_eq!(classify_stability(&w("1101001")), StabilityClass::LeftUnstable);
        assert_eq!(classify_stability(&Word::empty()), StabilityClass::Stable);
        assert_eq!(classify_stability(&w("0")), StabilityClass::Stable);
        assert_eq!(classify_stability(&w("1")), StabilityClass::Stable);
    }

    #[test]
    fn left_kink_words() {
        assert!(is_left_kink_word(&w("11")));
        assert!(is_left_kink_word(&w("100101")));
        assert!(!is_left_kink_word(&w("0110")));
        assert!(!is_left_kink_word(&w("111")));
    }

    #[test]
    fn b_membership() {
        assert!(in_b(&w("11001")));
        assert!(!in_b(&w("11011")));
        assert!(in_b(&w("1100001")));
        assert!(in_b(&w("1100011")));
        assert!(!in_b(&w("111")));
        assert!(in_b(&w("1101001")));
        assert!(in_b_reversed(&w("1001011")));
    }

    #[test]
    fn p_membership() {
        assert_eq!(in_p(&w("111")), Ok(false));
        assert_eq!(in_p(&w("10011")), Ok(false));
        assert_eq!(in_p(&w("001101100")), Ok(true));
        assert_eq!(in_p(&w("1101011")), Ok(false));
        assert_eq!(in_p(&w("1101001")), Ok(true));
        assert_eq!(in_p(&w("11001")), Ok(false));
        assert_eq!(in_p(&w("11000101001")), Ok(false));
        assert!(matches!(in_p(&w("0110")), Err(Error::NotTwoKink { count: 1, .. })));
        assert_eq!(in_p_checked(&w("0101")), None);
    }

    #[test]
    fn excluded_forms() {
        for s in ["", "0", "1", "01", "10", "010", "1010", "01010", "0101", "101"] {
            assert!(is_excluded_form(&w(s)), "{s}");
        }
        for s in ["00", "11", "0100", "001101100", "1001"] {
            assert!(!is_excluded_form(&w(s)), "{s}");
        }
    }

    #[test]
    fn flipflop_words() {
        assert_eq!(flipflop_left(0), w("11001"));
        assert_eq!(flipflop_right(0), w("10011"));
        assert_eq!(flipflop_left(1), w("11000101001"));
        assert_eq!(flipflop_right(1), w("10010100011"));
    }
}
