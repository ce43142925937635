//! Exact preimages under a local rule.
//!
//! A preimage of a target of length `n` is a word `u` of length `n + 2`. The
//! search walks the de Bruijn graph whose states are pairs of consecutive
//! input symbols: from state `(x, y)` the next symbol `z` is allowed when the
//! rule maps `xyz` to the current target symbol. A backward pass marks the
//! states that can still be completed, after which every surviving path is a
//! preimage and enumeration never backtracks into a dead end.

use std::collections::HashSet;

use serde::Serialize;

use crate::dynamics::{step_word, Rule};
use crate::error::{Error, Result};
use crate::kink::count_kinks;
use crate::word::Word;

/// All preimages of `target` under one step, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageSet {
    pub target: Word,
    pub members: Vec<Word>,
}

impl PreimageSet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, u: &Word) -> bool {
        self.members.binary_search(u).is_ok()
    }
}

/// Preimage search for one target, optionally pinning some input cells.
struct Lattice<'a> {
    target: &'a [u8],
    pinned: &'a [Option<u8>],
    rule: Rule,
    /// `live[i][s]`: with input cells `i, i+1` equal to state `s`, the rest
    /// of the input can be completed.
    live: Vec<[bool; 4]>,
}

impl<'a> Lattice<'a> {
    fn new(target: &'a [u8], pinned: &'a [Option<u8>], rule: Rule) -> Self {
        let n = target.len();
        debug_assert_eq!(pinned.len(), n + 2);
        let mut live = vec![[false; 4]; n + 1];
        live[n] = [true; 4];
        for i in (0..n).rev() {
            for s in 0..4usize {
                let (x, y) = ((s >> 1) as u8, (s & 1) as u8);
                live[i][s] = (0..2u8).any(|z| {
                    allowed(pinned, i + 2, z)
                        && rule.local(x, y, z) == target[i]
                        && live[i + 1][((s << 1) & 3) | z as usize]
                });
            }
        }
        Lattice { target, pinned, rule, live }
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4usize).filter(|&s| {
            allowed(self.pinned, 0, (s >> 1) as u8)
                && allowed(self.pinned, 1, (s & 1) as u8)
                && self.live[0][s]
        })
    }

    fn exists(&self) -> bool {
        self.starts().next().is_some()
    }

    fn count(&self) -> u128 {
        let n = self.target.len();
        let mut ways = vec![[0u128; 4]; n + 1];
        ways[n] = [1; 4];
        for i in (0..n).rev() {
            for s in 0..4usize {
                if !self.live[i][s] {
                    continue;
                }
                let (x, y) = ((s >> 1) as u8, (s & 1) as u8);
                ways[i][s] = (0..2u8)
                    .filter(|&z| allowed(self.pinned, i + 2, z) && self.rule.local(x, y, z) == self.target[i])
                    .map(|z| ways[i + 1][((s << 1) & 3) | z as usize])
                    .sum();
            }
        }
        self.starts().map(|s| ways[0][s]).sum()
    }

    fn enumerate(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(self.target.len() + 2);
        for s in self.starts().collect::<Vec<_>>() {
            buf.clear();
            buf.push((s >> 1) as u8);
            buf.push((s & 1) as u8);
            self.extend(0, s, &mut buf, &mut out);
        }
        out
    }

    fn extend(&self, i: usize, s: usize, buf: &mut Vec<u8>, out: &mut Vec<Word>) {
        if i == self.target.len() {
            out.push(Word::from_bits_unchecked(buf.clone()));
            return;
        }
        let (x, y) = ((s >> 1) as u8, (s & 1) as u8);
        for z in 0..2u8 {
            let next = ((s << 1) & 3) | z as usize;
            if allowed(self.pinned, i + 2, z)
                && self.rule.local(x, y, z) == self.target[i]
                && self.live[i + 1][next]
            {
                buf.push(z);
                self.extend(i + 1, next, buf, out);
                buf.pop();
            }
        }
    }
}

#[inline]
fn allowed(pinned: &[Option<u8>], i: usize, bit: u8) -> bool {
    pinned[i].is_none_or(|p| p == bit)
}

fn unpinned(target: &Word) -> Vec<Option<u8>> {
    vec![None; target.len() + 2]
}

pub fn preimages_under(target: &Word, rule: Rule) -> PreimageSet {
    let pinned = unpinned(target);
    PreimageSet {
        target: target.clone(),
        members: Lattice::new(target.bits(), &pinned, rule).enumerate(),
    }
}

/// All `u` with `|u| = |target| + 2` and `f18(u) = target`.
pub fn preimages(target: &Word) -> PreimageSet {
    preimages_under(target, Rule::R18)
}

pub fn has_preimage_under(target: &Word, rule: Rule) -> bool {
    let pinned = unpinned(target);
    Lattice::new(target.bits(), &pinned, rule).exists()
}

pub fn has_preimage(target: &Word) -> bool {
    has_preimage_under(target, Rule::R18)
}

pub fn count_preimages_under(target: &Word, rule: Rule) -> u128 {
    let pinned = unpinned(target);
    Lattice::new(target.bits(), &pinned, rule).count()
}

/// Preimages of `target` that carry `core` at input index `offset`.
pub fn preimages_containing(target: &Word, core: &Word, offset: usize, rule: Rule) -> Vec<Word> {
    let mut pinned = unpinned(target);
    if offset + core.len() > pinned.len() {
        return Vec::new();
    }
    for (j, &bit) in core.bits().iter().enumerate() {
        pinned[offset + j] = Some(bit);
    }
    Lattice::new(target.bits(), &pinned, rule).enumerate()
}

/// True if some chain `u_d -> ... -> u_1 -> w` of one-step preimages exists.
pub fn preimage_depth(w: &Word, depth: usize) -> bool {
    preimage_depth_under(w, depth, Rule::R18)
}

pub fn preimage_depth_under(w: &Word, depth: usize, rule: Rule) -> bool {
    fn search(w: &Word, depth: usize, rule: Rule, dead: &mut HashSet<(Word, usize)>) -> bool {
        match depth {
            0 => true,
            1 => has_preimage_under(w, rule),
            _ => {
                if dead.contains(&(w.clone(), depth)) {
                    return false;
                }
                let found = preimages_under(w, rule)
                    .members
                    .iter()
                    .any(|u| search(u, depth - 1, rule, dead));
                if !found {
                    dead.insert((w.clone(), depth));
                }
                found
            }
        }
    }
    search(w, depth, rule, &mut HashSet::new())
}

/// Run lengths `r_0, ..., r_{2k}` of the 0-blocks of `v` when `w = 11 v 11`
/// and `v = 0^{r_0} 1 0^{r_1} 1 ... 1 0^{r_{2k}}` with every run odd.
fn two_kink_runs(w: &Word) -> std::result::Result<Vec<usize>, &'static str> {
    if count_kinks(w) != 2 {
        return Err("word must contain exactly two kinks");
    }
    let bits = w.bits();
    let n = bits.len();
    if n < 5 || bits[..2] != [1, 1] || bits[n - 2..] != [1, 1] {
        return Err("word must be 11 v 11 with v non-empty");
    }
    let v = &bits[2..n - 2];
    if v.iter().filter(|&&b| b == 1).count() % 2 == 1 {
        return Err("v contains an odd number of 1s");
    }
    let runs: Vec<usize> = v.split(|&b| b == 1).map(<[u8]>::len).collect();
    if runs.iter().any(|r| r % 2 == 0) {
        return Err("v has a 0-run of even length");
    }
    Ok(runs)
}

/// The unique two-kink preimage of `11 v 11` where `v` has an even number of
/// 1s: with `v = 0^{2n_0 - 1} 1 0^{2n_1 - 1} 1 ... 1 0^{2n_{2k} - 1}` it is
/// `100 (10)^{n_0} 0^{2n_1} (10)^{n_2} ... 0^{2n_{2k-1}} (10)^{n_{2k}} 01`.
pub fn two_kink_preimage(w: &Word) -> Result<Word> {
    let runs = two_kink_runs(w).map_err(|reason| Error::BadShape { word: w.clone(), reason })?;
    let mut bits = vec![1, 0, 0];
    for (i, r) in runs.iter().enumerate() {
        let half = r.div_ceil(2);
        if i % 2 == 0 {
            bits.extend([1, 0].repeat(half));
        } else {
            bits.extend(std::iter::repeat_n(0, 2 * half));
        }
    }
    bits.extend([0, 1]);
    let u = Word::from_bits_unchecked(bits);
    assert_eq!(step_word(&u, Rule::R18).as_ref(), Ok(w), "two-kink preimage formula broke for {w}");
    assert_eq!(count_kinks(&u), 2, "two-kink preimage of {w} must keep both kinks");
    Ok(u)
}
