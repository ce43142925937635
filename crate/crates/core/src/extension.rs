//! Kink-preserving extensions and the lifting properties of stable words.
//!
//! The extension set of a word is infinite; everything here works on the
//! truncation to bounded left and right pads and says so in its results.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classes::{is_excluded_form, is_stable};
use crate::dynamics::{step_word, Rule};
use crate::error::{Error, Result};
use crate::kink::count_kinks;
use crate::preimage::preimages_containing;
use crate::word::Word;

pub const DEFAULT_MAX_PAD: usize = 8;

/// One member `left · base · right` of an extension family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Extension {
    pub left: Word,
    pub right: Word,
}

impl Extension {
    pub fn word(&self, base: &Word) -> Word {
        crate::word![&self.left, base, &self.right]
    }

    pub fn offset(&self) -> usize {
        self.left.len()
    }
}

/// Members of the extension set of `base` with pads bounded by
/// `left_pad`/`right_pad`, ordered by `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionFamily {
    pub base: Word,
    pub left_pad: usize,
    pub right_pad: usize,
    pub members: Vec<Extension>,
}

impl ExtensionFamily {
    pub fn words(&self) -> BTreeSet<Word> {
        self.members.iter().map(|e| e.word(&self.base)).collect()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.iter().any(|e| e.word(&self.base) == *w)
    }
}

pub fn enumerate_extensions(w: &Word, left_pad: usize, right_pad: usize) -> Result<ExtensionFamily> {
    enumerate_extensions_bounded(w, left_pad, right_pad, DEFAULT_MAX_PAD)
}

pub fn enumerate_extensions_bounded(
    w: &Word,
    left_pad: usize,
    right_pad: usize,
    max_pad: usize,
) -> Result<ExtensionFamily> {
    for pad in [left_pad, right_pad] {
        if pad > max_pad {
            return Err(Error::PadTooLarge { pad, bound: max_pad });
        }
    }
    let kinks = count_kinks(w);
    let mut members = Vec::new();
    for left in Word::all_up_to(left_pad) {
        // extending a word never removes kinks, so a bad left part stays bad
        if count_kinks(&crate::word![&left, w]) != kinks {
            continue;
        }
        for right in Word::all_up_to(right_pad) {
            let e = Extension { left: left.clone(), right };
            if count_kinks(&e.word(w)) == kinks {
                members.push(e);
            }
        }
    }
    members.sort();
    Ok(ExtensionFamily { base: w.clone(), left_pad, right_pad, members })
}

/// `f18` of a word of length at least 2; a two-symbol word maps to ε.
fn image(w: &Word) -> Result<Word> {
    match w.len() {
        0 | 1 => Err(Error::WordTooShort { len: w.len(), needed: 2 }),
        2 => Ok(Word::empty()),
        _ => step_word(w, Rule::R18),
    }
}

/// Kink-preserving lifts `c · w · d` of `target`, with `w` at input offset
/// `offset`.
fn lifts(w: &Word, target: &Word, offset: usize, rule: Rule) -> Vec<Word> {
    let kinks = count_kinks(w);
    preimages_containing(target, w, offset, rule)
        .into_iter()
        .filter(|u| count_kinks(u) == kinks)
        .collect()
}

/// Outcome of checking `f(Σ(w)) ⊆ Σ(f(w))` and its converse on the
/// extensions reachable with `pad` symbols on each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableExtensionReport {
    pub base: Word,
    pub image: Word,
    pub pad: usize,
    pub stable: bool,
    pub excluded_form: bool,
    pub inclusion_holds: bool,
    /// Extensions of the base whose image gains or loses kinks relative to
    /// the image of the base.
    pub inclusion_counterexamples: Vec<Word>,
    pub equality_holds: bool,
    /// Extensions of the image, within the pad budget, with no
    /// kink-preserving lift.
    pub equality_counterexamples: Vec<Word>,
    /// For excluded shapes only: equality restricted to extensions whose 1s
    /// all sit on the parity class of the base's 1s.
    pub parity_equality_holds: Option<bool>,
}

pub fn check_stable_extension(w: &Word, pad: usize) -> Result<StableExtensionReport> {
    check_stable_extension_under(w, pad, Rule::R18)
}

pub fn check_stable_extension_under(w: &Word, pad: usize, rule: Rule) -> Result<StableExtensionReport> {
    if w.len() < 3 {
        return Err(Error::WordTooShort { len: w.len(), needed: 3 });
    }
    let fw = step_word(w, rule)?;
    let image_kinks = count_kinks(&fw);

    let inclusion_counterexamples: Vec<Word> = enumerate_extensions_bounded(w, pad, pad, pad.max(DEFAULT_MAX_PAD))?
        .members
        .iter()
        .map(|e| e.word(w))
        .filter(|e| count_kinks(&step_word(e, rule).expect("extension is longer than base")) != image_kinks)
        .collect();

    let image_family = enumerate_extensions_bounded(&fw, pad, pad, pad.max(DEFAULT_MAX_PAD))?;
    let mut equality_counterexamples = Vec::new();
    let mut parity_failures = 0usize;
    let alpha = parity_anchor(w);
    for e in &image_family.members {
        let u = e.word(&fw);
        if lifts(w, &u, e.offset(), rule).is_empty() {
            if let Some(alpha) = alpha {
                let class = (e.offset() + alpha) % 2;
                let on_class = u.bits().iter().enumerate().all(|(i, &b)| b == 0 || i % 2 == class);
                parity_failures += usize::from(on_class);
            }
            equality_counterexamples.push(u);
        }
    }

    Ok(StableExtensionReport {
        base: w.clone(),
        image: fw,
        pad,
        stable: is_stable(w),
        excluded_form: alpha.is_some(),
        inclusion_holds: inclusion_counterexamples.is_empty(),
        inclusion_counterexamples,
        equality_holds: equality_counterexamples.is_empty(),
        equality_counterexamples,
        parity_equality_holds: alpha.map(|_| parity_failures == 0),
    })
}

/// The `α` of a word of shape `0^α (10)^n 1^β`, if it has that shape.
fn parity_anchor(w: &Word) -> Option<usize> {
    if !is_excluded_form(w) {
        return None;
    }
    Some(usize::from(w.get(0) == Some(0)))
}

/// The unique kink-preserving `a' · w · b'` (with `|a'| = |a|`, `|b'| = |b|`)
/// mapping onto `a · f(w) · b`.
pub fn unique_lift(w: &Word, a: &Word, b: &Word) -> Result<Word> {
    let fw = image(w)?;
    if !is_stable(w) {
        return Err(Error::NotStable(w.clone()));
    }
    if is_excluded_form(w) {
        return Err(Error::ExcludedForm(w.clone()));
    }
    let target = crate::word![a, &fw, b];
    if count_kinks(&target) != count_kinks(&fw) {
        return Err(Error::NotAnExtension { base: fw, target });
    }
    let mut found = lifts(w, &target, a.len(), Rule::R18);
    match found.len() {
        0 => Err(Error::NoLift { base: w.clone(), target }),
        1 => Ok(found.pop().expect("one lift")),
        count => Err(Error::NonUnique { base: w.clone(), target, count }),
    }
}
