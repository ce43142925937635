//! Bounded-scale checks of the combinatorial facts about kinks.
//!
//! Every check runs the dynamics under a chosen rule table, so swapping in a
//! corrupted table is a negative control: the same checks must then fail.
//! A check that cannot decide within its budget reports so instead of
//! guessing.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{flipflop_left, flipflop_right, in_b, in_p, is_excluded_form, is_left_kink_word, is_stable};
use crate::config::{CyclicConfig, FiniteSupportConfig};
use crate::dynamics::{iterate_word, iterate_word_trace, step_word, Rule};
use crate::extension::{check_stable_extension_under, enumerate_extensions};
use crate::kink::{count_kinks, is_kinkless};
use crate::preimage::{has_preimage_under, preimages_under};
use crate::render::SpacetimeDiagram;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub check: String,
    pub status: Status,
    pub budget: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub trace: Option<SpacetimeDiagram>,
}

impl OracleReport {
    fn new(check: &str, status: Status, budget: String) -> Self {
        OracleReport { check: check.to_owned(), status, budget, witness: None, detail: None, trace: None }
    }

    fn pass(check: &str, budget: String) -> Self {
        OracleReport::new(check, Status::Pass, budget)
    }

    fn fail(check: &str, budget: String, witness: String) -> Self {
        OracleReport { witness: Some(witness), ..OracleReport::new(check, Status::Fail, budget) }
    }

    fn exhausted(check: &str, budget: String, witness: String) -> Self {
        OracleReport { witness: Some(witness), ..OracleReport::new(check, Status::BudgetExhausted, budget) }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn with_trace(mut self, trace: Option<SpacetimeDiagram>) -> Self {
        self.trace = trace;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

/// Size limits for each check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub parity_max_len: usize,
    pub annihilation_max_support: usize,
    pub annihilation_max_steps: usize,
    pub prreduc_max_k: usize,
    pub flipflop_max_k: usize,
    pub flipflop_pad: usize,
    pub construction_max_m: usize,
    pub forcing_max_len: usize,
    pub mobility_max_pad: usize,
    pub non_creation_max_len: usize,
    pub surjectivity_max_len: usize,
    pub two_kink_max_sep: usize,
    pub extension_max_len: usize,
    pub extension_pad: usize,
}

impl Budget {
    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Quick => Budget {
                parity_max_len: 14,
                annihilation_max_support: 10,
                annihilation_max_steps: 512,
                prreduc_max_k: 8,
                flipflop_max_k: 1,
                flipflop_pad: 2,
                construction_max_m: 4,
                forcing_max_len: 13,
                mobility_max_pad: 8,
                non_creation_max_len: 12,
                surjectivity_max_len: 10,
                two_kink_max_sep: 6,
                extension_max_len: 7,
                extension_pad: 2,
            },
            Profile::Full => Budget {
                parity_max_len: 26,
                annihilation_max_support: 16,
                annihilation_max_steps: 4096,
                prreduc_max_k: 32,
                flipflop_max_k: 3,
                flipflop_pad: 4,
                construction_max_m: 16,
                forcing_max_len: 21,
                mobility_max_pad: 8,
                non_creation_max_len: 20,
                surjectivity_max_len: 16,
                two_kink_max_sep: 12,
                extension_max_len: 11,
                extension_pad: 3,
            },
        }
    }
}

fn word_run(w: &Word, n: usize, rule: Rule) -> Option<SpacetimeDiagram> {
    SpacetimeDiagram::of_word_run(w, n, rule).ok()
}

/// The first of `f^0 .. f^{n-1}` of `w` that is unstable, with its index.
fn first_unstable(trace: &[Word], n: usize) -> Option<(usize, &Word)> {
    trace.iter().take(n).enumerate().find(|(_, u)| !is_stable(u))
}

/// Words of length `len` without two adjacent 0s.
fn no_double_zero(len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let ends_in_zero = w.bits().last() == Some(&0);
                let one = crate::word![&w, "1"];
                if ends_in_zero {
                    vec![one]
                } else {
                    vec![crate::word![&w, "0"], one]
                }
            })
            .collect();
    }
    out
}

pub const FIGURE_ITERATES: &str = "figure_iterates";
pub const KINK_ELIMINATION_PARITY: &str = "kink_elimination_parity";
pub const ANNIHILATION: &str = "annihilation";
pub const KURKA_COUNTEREXAMPLE: &str = "kurka_counterexample";
pub const PRREDUC_CASES: &str = "prreduc_cases";
pub const MOBILITY: &str = "mobility";
pub const FLIPFLOP: &str = "flipflop";
pub const LM2K2_CONSTRUCTIONS: &str = "lm2k2_constructions";
pub const SEPARATION: &str = "separation";
pub const KINK_NON_CREATION: &str = "kink_non_creation";
pub const KINKLESS_SURJECTIVITY: &str = "kinkless_surjectivity";
pub const TWO_KINK_PREIMAGES: &str = "two_kink_preimages";
pub const STABLE_EXTENSIONS: &str = "stable_extensions";

/// Worked iterates whose intermediate words are all stable.
pub const FIGURE_CASES: [(&str, usize, &str); 4] = [
    ("0010101100101", 3, "1001011"),
    ("1010010110100", 3, "1101001"),
    ("00101100001", 2, "1001011"),
    ("00001011000110101000100", 8, "1101001"),
];

/// Runs the checks with a fixed rule table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    rule: Rule,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { rule: Rule::R18 }
    }
}

impl Oracle {
    pub fn new(rule: Rule) -> Self {
        Oracle { rule }
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    fn step(&self, w: &Word) -> Word {
        step_word(w, self.rule).expect("checks only step words of length at least 3")
    }

    fn iterate(&self, w: &Word, n: usize) -> Word {
        iterate_word(w, n, self.rule).expect("checks only iterate long enough words")
    }

    fn trace(&self, w: &Word, n: usize) -> Vec<Word> {
        iterate_word_trace(w, n, self.rule).expect("checks only iterate long enough words")
    }

    pub fn figure_iterates(&self) -> OracleReport {
        let budget = format!("{} worked iterates", FIGURE_CASES.len());
        for (start, n, expected) in FIGURE_CASES {
            let w = Word::lit(start);
            let trace = self.trace(&w, n);
            if let Some((t, u)) = first_unstable(&trace, n) {
                return OracleReport::fail(FIGURE_ITERATES, budget, format!("f^{t}({w}) = {u} is unstable"))
                    .with_trace(word_run(&w, n, self.rule));
            }
            let last = &trace[n];
            if *last != Word::lit(expected) {
                return OracleReport::fail(
                    FIGURE_ITERATES,
                    budget,
                    format!("f^{n}({w}) = {last}, expected {expected}"),
                )
                .with_trace(word_run(&w, n, self.rule));
            }
        }
        let (w, n, _) = FIGURE_CASES[0];
        OracleReport::pass(FIGURE_ITERATES, budget).with_trace(word_run(&Word::lit(w), n, self.rule))
    }

    /// `f(001 w 100) = 1 0^{|w|+2} 1` for `w` without `00`, and that image is
    /// a kink exactly when the input has an odd number of kinks.
    pub fn kink_elimination_parity(&self, max_len: usize) -> OracleReport {
        let budget = format!("|u| <= {max_len}");
        let mut checked = 0usize;
        for inner in 0..=max_len.saturating_sub(6) {
            for w in no_double_zero(inner) {
                let u = crate::word!["001", &w, "100"];
                let image = self.step(&u);
                let expected = crate::word!["1", Word::zeros(inner + 2), "1"];
                if image != expected {
                    return OracleReport::fail(KINK_ELIMINATION_PARITY, budget, format!("f({u}) = {image}, expected {expected}"))
                        .with_trace(word_run(&u, 1, self.rule));
                }
                let is_kink = inner % 2 == 0;
                if is_kink != (count_kinks(&u) % 2 == 1) {
                    return OracleReport::fail(
                        KINK_ELIMINATION_PARITY,
                        budget,
                        format!("{u} has {} kinks but f({u}) = {image}", count_kinks(&u)),
                    );
                }
                checked += 1;
            }
        }
        OracleReport::pass(KINK_ELIMINATION_PARITY, budget).with_detail(format!("{checked} words"))
    }

    /// Every finitely supported configuration with support of length at most
    /// `max_support` reaches at most one kink, never gains kinks on the way,
    /// and keeps its kink parity.
    pub fn annihilation(&self, max_support: usize, max_steps: usize) -> OracleReport {
        let budget = format!("support <= {max_support}, steps <= {max_steps}");
        let mut starts = vec![Word::empty(), Word::lit("1")];
        for inner in 0..=max_support.saturating_sub(2) {
            starts.extend(Word::all_of_len(inner).map(|x| crate::word!["1", &x, "1"]));
        }

        enum Outcome {
            Done(usize),
            Fail(String),
            Exhausted(String),
        }
        let rule = self.rule;
        let outcomes: Vec<Outcome> = starts
            .par_iter()
            .map(|s| {
                let mut x = FiniteSupportConfig::new(s, 0);
                let k0 = count_kinks(s);
                let mut k = k0;
                for t in 0..=max_steps {
                    if k <= 1 {
                        return if k % 2 == k0 % 2 {
                            Outcome::Done(t)
                        } else {
                            Outcome::Fail(format!("{s}: parity changed, {k0} kinks became {k} at step {t}"))
                        };
                    }
                    if t == max_steps {
                        break;
                    }
                    x = x.step(rule);
                    let next = count_kinks(x.support());
                    if next > k {
                        return Outcome::Fail(format!("{s}: kinks grew from {k} to {next} at step {}", t + 1));
                    }
                    k = next;
                }
                Outcome::Exhausted(format!("{s}: {k} kinks left after {max_steps} steps"))
            })
            .collect();

        let mut longest = 0;
        let mut exhausted = None;
        for (s, outcome) in starts.iter().zip(outcomes) {
            match outcome {
                Outcome::Done(t) => longest = longest.max(t),
                Outcome::Fail(why) => {
                    let trace = (0..=8).scan(FiniteSupportConfig::new(s, 0), |x, _| {
                        let row = x.clone();
                        *x = x.step(rule);
                        Some(row)
                    });
                    let rows: Vec<_> = trace.collect();
                    return OracleReport::fail(ANNIHILATION, budget, why).with_trace(Some(SpacetimeDiagram::support(&rows)));
                }
                Outcome::Exhausted(why) => exhausted = exhausted.or(Some(why)),
            }
        }
        match exhausted {
            Some(why) => OracleReport::exhausted(ANNIHILATION, budget, why),
            None => OracleReport::pass(ANNIHILATION, budget)
                .with_detail(format!("{} supports, slowest needs {longest} steps", starts.len())),
        }
    }

    /// `101` extends `10` but is not an image of any extension of `0011`
    /// lined up with it, so the image of extensions is strictly smaller than
    /// the extensions of the image for the unstable `0011`.
    pub fn kurka_counterexample(&self) -> OracleReport {
        let budget = "pads <= 1".to_owned();
        let base = Word::lit("0011");
        let image = self.step(&base);
        let target = Word::lit("101");
        if image != Word::lit("10") {
            return OracleReport::fail(KURKA_COUNTEREXAMPLE, budget, format!("f({base}) = {image}, expected 10"));
        }
        if is_stable(&base) {
            return OracleReport::fail(KURKA_COUNTEREXAMPLE, budget, format!("{base} classified as stable"));
        }
        let image_family = enumerate_extensions(&image, 1, 1).expect("pads within bound");
        let lined_up = image_family.members.iter().find(|e| e.word(&image) == target);
        let Some(ext) = lined_up else {
            return OracleReport::fail(KURKA_COUNTEREXAMPLE, budget, format!("{target} is not a kink-preserving extension of {image}"));
        };
        // any c · 0011 · d with |c| = |ext.left| and |d| = |ext.right| + 1 lines up with 101
        for left in Word::all_of_len(ext.left.len()) {
            for right in Word::all_of_len(ext.right.len() + 1) {
                let lift = crate::word![&left, &base, &right];
                if self.step(&lift) == target {
                    return OracleReport::fail(KURKA_COUNTEREXAMPLE, budget, format!("f({lift}) = {target}"));
                }
            }
        }
        OracleReport::pass(KURKA_COUNTEREXAMPLE, budget).with_detail("f(00110) = 100, f(00111) = 100, neither is 101")
    }

    /// Shapes that drive a left kink word towards `11`.
    pub fn prreduc_cases(&self, max_k: usize) -> OracleReport {
        let budget = format!("k <= {max_k}");
        let eleven = Word::lit("11");
        for k in 0..=max_k {
            let head = crate::word!["11", Word::lit("01").repeat(k)];
            for (case, w) in [("case 3", crate::word!["00", &head, "0", "0"]), ("case 4", crate::word!["00", &head, "00"])] {
                let n = k + 2;
                let trace = self.trace(&w, n);
                if let Some((t, u)) = first_unstable(&trace, n) {
                    return OracleReport::fail(PRREDUC_CASES, budget, format!("{case}: f^{t}({w}) = {u} is unstable"));
                }
                if trace[n] != eleven {
                    return OracleReport::fail(PRREDUC_CASES, budget, format!("{case}: f^{n}({w}) = {}", trace[n]))
                        .with_trace(word_run(&w, n, self.rule));
                }
            }
            let prefix = crate::word!["1", Word::zeros(2 * (k + 1)), "1"];
            for u in Word::all_up_to(3) {
                let w = crate::word![&head, "00", &u];
                if !is_left_kink_word(&w) {
                    continue;
                }
                let image = self.step(&crate::word!["00", &w]);
                if !image.starts_with(&prefix) {
                    return OracleReport::fail(PRREDUC_CASES, budget, format!("case 5: f(00{w}) = {image} lacks prefix {prefix}"));
                }
            }
        }
        OracleReport::pass(PRREDUC_CASES, budget)
    }

    /// `1101001` can move one cell left and one cell right inside two-kink
    /// extensions whose intermediate iterates stay stable.
    pub fn mobility(&self, max_pad: usize) -> OracleReport {
        let budget = format!("pads <= {max_pad}");
        let b = Word::lit("1101001");
        let mut witnesses = Vec::new();
        let mut first_trace = None;
        for (name, steps, min_left, shift) in [("left", 5usize, 6usize, 6usize), ("right", 3, 2, 2)] {
            match self.find_move(&b, steps, min_left, shift, max_pad) {
                Some(u) => {
                    first_trace = first_trace.or_else(|| word_run(&u, steps, self.rule));
                    witnesses.push(format!("{name}: {u}"));
                }
                None => {
                    return OracleReport::exhausted(MOBILITY, budget, format!("no {name} move of {b} with pads <= {max_pad}"))
                }
            }
        }
        OracleReport::pass(MOBILITY, budget)
            .with_detail(witnesses.join("; "))
            .with_trace(first_trace)
    }

    /// Smallest `a · b · c` (by total pad, then lexicographically) with two
    /// kinks, `f^0 .. f^{steps-1}` stable and `b` at index `|a| - shift` of
    /// `f^steps`.
    fn find_move(&self, b: &Word, steps: usize, min_left: usize, shift: usize, max_pad: usize) -> Option<Word> {
        let min_right = 4;
        for total in (min_left + min_right)..=(2 * max_pad) {
            for left_len in min_left..=max_pad.min(total) {
                let right_len = total - left_len;
                if right_len < min_right || right_len > max_pad {
                    continue;
                }
                for a in Word::all_of_len(left_len) {
                    if count_kinks(&crate::word![&a, b]) != 2 {
                        continue;
                    }
                    for c in Word::all_of_len(right_len) {
                        let u = crate::word![&a, b, &c];
                        if count_kinks(&u) != 2 {
                            continue;
                        }
                        let trace = self.trace(&u, steps);
                        if first_unstable(&trace, steps).is_none() && trace[steps].contains_at(b, left_len - shift) {
                            return Some(u);
                        }
                    }
                }
            }
        }
        None
    }

    /// The flip-flop pair `1 (100010)^k 1001` and `1001 (010001)^k 1`.
    pub fn flipflop(&self, max_k: usize, pad: usize) -> OracleReport {
        let budget = format!("k <= {max_k}, contexts <= {pad}");
        for k in 0..=max_k {
            let report = self.flipflop_pair(&flipflop_left(k), &flipflop_right(k), pad);
            if !report.passed() {
                return report;
            }
        }
        OracleReport::pass(FLIPFLOP, budget)
    }

    /// Every preimage of `c · u · d` that itself has a preimage carries `v`
    /// at index `|c|`, and every such preimage of `c · v · d` carries `u` at
    /// index `|c| + 2`, for contexts of length at most `pad`.
    pub fn flipflop_pair(&self, u: &Word, v: &Word, pad: usize) -> OracleReport {
        let budget = format!("{u} / {v}, contexts <= {pad}");
        for c in Word::all_up_to(pad) {
            for d in Word::all_up_to(pad) {
                for (from, to, at) in [(u, v, c.len()), (v, u, c.len() + 2)] {
                    let target = crate::word![&c, from, &d];
                    for pre in preimages_under(&target, self.rule).members {
                        if has_preimage_under(&pre, self.rule) && !pre.contains_at(to, at) {
                            return OracleReport::fail(
                                FLIPFLOP,
                                budget,
                                format!("{pre} maps to {target} and has a preimage but lacks {to} at {at}"),
                            )
                            .with_trace(word_run(&pre, 1, self.rule));
                        }
                    }
                }
            }
        }
        OracleReport::pass(FLIPFLOP, budget)
    }

    /// Explicit preimages of the flip-flop shapes and the backward forcing
    /// that leaves only them.
    pub fn lm2k2_constructions(&self, max_m: usize, max_len: usize) -> OracleReport {
        let budget = format!("m <= {max_m}, forcing |w| <= {max_len}");
        for m in 0..=max_m {
            let pre = lm2k2_preimage(m);
            let expected = crate::word!["1001", Word::lit("010001").repeat(m), "011"];
            let image = self.iterate(&pre, 2);
            if image != expected {
                return OracleReport::fail(LM2K2_CONSTRUCTIONS, budget, format!("f^2({pre}) = {image}, expected {expected}"))
                    .with_trace(word_run(&pre, 2, self.rule));
            }
        }
        for len in 8..=max_len {
            let survivors = self.forcing_survivors(len, ForcingCase::Six);
            let expected: BTreeSet<Word> = (len % 6 == 5).then(|| flipflop_left((len - 5) / 6)).into_iter().collect();
            if survivors != expected {
                return OracleReport::fail(
                    LM2K2_CONSTRUCTIONS,
                    budget,
                    format!("case 6, |w| = {len}: survivors {}", show_set(&survivors)),
                );
            }
        }
        for len in 7..=max_len {
            let survivors = self.forcing_survivors(len, ForcingCase::Seven);
            let expected: BTreeSet<Word> = (len % 6 == 1)
                .then(|| crate::word!["11000", Word::lit("101000").repeat((len - 7) / 6), "11"])
                .into_iter()
                .collect();
            if survivors != expected {
                return OracleReport::fail(
                    LM2K2_CONSTRUCTIONS,
                    budget,
                    format!("case 7, |w| = {len}: survivors {}", show_set(&survivors)),
                );
            }
        }
        OracleReport::pass(LM2K2_CONSTRUCTIONS, budget)
    }

    /// Words of length `len` in the given case that stay in it for `len`
    /// applications of the case's forward map.
    pub fn forcing_survivors(&self, len: usize, case: ForcingCase) -> BTreeSet<Word> {
        Word::all_of_len(len)
            .filter(|w| case.contains(w))
            .par_bridge()
            .filter(|w| {
                let mut cur = w.clone();
                for _ in 0..len {
                    cur = match case {
                        ForcingCase::Six => self.step(&crate::word!["00", &cur]).reversed(),
                        ForcingCase::Seven => self.iterate(&crate::word!["00", &cur, "00"], 2),
                    };
                    if !case.contains(&cur) {
                        return false;
                    }
                }
                true
            })
            .collect()
    }

    /// `P` strictly contains the words that survive forever, and a word of
    /// `P` can lose both kinks in one step.
    pub fn separation(&self) -> OracleReport {
        let budget = "fixed words".to_owned();
        let ring = CyclicConfig::new(&Word::lit("1001")).expect("width 4");
        let back = ring.iterate(2, self.rule);
        if back != ring {
            return OracleReport::fail(SEPARATION, budget, format!("ring 1001 goes to {} in two steps", back.to_word()));
        }
        let unrolled = Word::lit("1001").repeat(3);
        let pattern = Word::lit("10011");
        if !unrolled.contains(&pattern) {
            return OracleReport::fail(SEPARATION, budget, format!("{pattern} missing from the ring 1001"));
        }
        if in_p(&pattern) != Ok(false) {
            return OracleReport::fail(SEPARATION, budget, format!("{pattern} classified in P"));
        }
        let w = Word::lit("001101100");
        let image = self.step(&w);
        if image != Word::lit("1000001") || count_kinks(&w) != 2 || count_kinks(&image) != 0 {
            return OracleReport::fail(
                SEPARATION,
                budget,
                format!("f({w}) = {image} with {} -> {} kinks", count_kinks(&w), count_kinks(&image)),
            );
        }
        if in_p(&w) != Ok(true) {
            return OracleReport::fail(SEPARATION, budget, format!("{w} classified outside P"));
        }
        OracleReport::pass(SEPARATION, budget).with_trace(word_run(&w, 1, self.rule))
    }

    /// One step never creates kinks, and a stable word keeps its parity.
    pub fn kink_non_creation(&self, max_len: usize) -> OracleReport {
        let budget = format!("|w| <= {max_len}");
        let bad = (3..=max_len).into_par_iter().find_map_any(|len| {
            Word::all_of_len(len).find_map(|w| {
                let (before, after) = (count_kinks(&w), count_kinks(&self.step(&w)));
                if after > before {
                    Some(format!("{w}: {before} -> {after} kinks"))
                } else if is_stable(&w) && (before - after) % 2 == 1 {
                    Some(format!("{w} is stable but {before} -> {after} kinks"))
                } else {
                    None
                }
            })
        });
        match bad {
            Some(why) => OracleReport::fail(KINK_NON_CREATION, budget, why),
            None => OracleReport::pass(KINK_NON_CREATION, budget),
        }
    }

    /// Every kinkless word has a kinkless preimage.
    pub fn kinkless_surjectivity(&self, max_len: usize) -> OracleReport {
        let budget = format!("|w| <= {max_len}");
        let bad = (1..=max_len).into_par_iter().find_map_any(|len| {
            Word::all_of_len(len)
                .filter(is_kinkless)
                .find(|w| !preimages_under(w, self.rule).members.iter().any(is_kinkless))
        });
        match bad {
            Some(w) => OracleReport::fail(KINKLESS_SURJECTIVITY, budget, format!("{w} has no kinkless preimage")),
            None => OracleReport::pass(KINKLESS_SURJECTIVITY, budget),
        }
    }

    /// `11 v 11` has no preimage at all when `v` has an odd number of 1s.
    /// With an even number and exactly two kinks its only two-kink preimage
    /// is the closed-form one.
    pub fn two_kink_preimages(&self, max_sep: usize) -> OracleReport {
        let budget = format!("|v| <= {max_sep}");
        for v in Word::all_up_to(max_sep).filter(|v| !v.is_empty()) {
            let w = crate::word!["11", &v, "11"];
            let all = preimages_under(&w, self.rule).members;
            if v.count_ones() % 2 == 1 {
                if let Some(u) = all.first() {
                    return OracleReport::fail(TWO_KINK_PREIMAGES, budget, format!("f({u}) = {w} but {v} has an odd number of 1s"));
                }
                continue;
            }
            if count_kinks(&w) != 2 {
                continue;
            }
            let two_kink: BTreeSet<Word> = all.into_iter().filter(|u| count_kinks(u) == 2).collect();
            let expected: BTreeSet<Word> = [closed_form_preimage(&v)].into_iter().collect();
            if two_kink != expected {
                return OracleReport::fail(
                    TWO_KINK_PREIMAGES,
                    budget,
                    format!("{w}: two-kink preimages {}", show_set(&two_kink)),
                );
            }
        }
        OracleReport::pass(TWO_KINK_PREIMAGES, budget)
    }

    /// The image of the extensions of a stable word lies in the extensions of
    /// its image, with equality outside the excluded shapes and equality up
    /// to parity on them.
    pub fn stable_extensions(&self, max_len: usize, pad: usize) -> OracleReport {
        let budget = format!("|w| <= {max_len}, pads <= {pad}");
        let words: Vec<Word> = (3..=max_len).flat_map(Word::all_of_len).filter(is_stable).collect();
        let bad = words.par_iter().find_map_any(|w| {
            let r = check_stable_extension_under(w, pad, self.rule).expect("length at least 3");
            if !r.inclusion_holds {
                Some(format!("{w}: inclusion fails on {}", r.inclusion_counterexamples[0]))
            } else if is_excluded_form(w) && r.parity_equality_holds != Some(true) {
                Some(format!("{w}: parity-restricted equality fails"))
            } else if !is_excluded_form(w) && !r.equality_holds {
                Some(format!("{w}: equality fails on {}", r.equality_counterexamples[0]))
            } else {
                None
            }
        });
        match bad {
            Some(why) => OracleReport::fail(STABLE_EXTENSIONS, budget, why),
            None => OracleReport::pass(STABLE_EXTENSIONS, budget).with_detail(format!("{} stable words", words.len())),
        }
    }

    pub fn run_all(&self, profile: Profile) -> Vec<OracleReport> {
        let b = Budget::for_profile(profile);
        let checks: Vec<Box<dyn Fn() -> OracleReport + Send + Sync + '_>> = vec![
            Box::new(|| self.figure_iterates()),
            Box::new(move || self.kink_elimination_parity(b.parity_max_len)),
            Box::new(move || self.annihilation(b.annihilation_max_support, b.annihilation_max_steps)),
            Box::new(|| self.kurka_counterexample()),
            Box::new(move || self.prreduc_cases(b.prreduc_max_k)),
            Box::new(move || self.mobility(b.mobility_max_pad)),
            Box::new(move || self.flipflop(b.flipflop_max_k, b.flipflop_pad)),
            Box::new(move || self.lm2k2_constructions(b.construction_max_m, b.forcing_max_len)),
            Box::new(|| self.separation()),
            Box::new(move || self.kink_non_creation(b.non_creation_max_len)),
            Box::new(move || self.kinkless_surjectivity(b.surjectivity_max_len)),
            Box::new(move || self.two_kink_preimages(b.two_kink_max_sep)),
            Box::new(move || self.stable_extensions(b.extension_max_len, b.extension_pad)),
        ];
        let mut reports: Vec<OracleReport> = checks.par_iter().map(|check| check()).collect();
        reports.sort_by(|x, y| x.check.cmp(&y.check));
        reports
    }
}

/// The two shapes of two-kink word whose backward forcing is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForcingCase {
    /// In `B`, longer than 7, starting `1100` and ending `1001`.
    Six,
    /// In `B`, starting `1100` and ending `11`.
    Seven,
}

impl ForcingCase {
    pub fn contains(self, w: &Word) -> bool {
        match self {
            ForcingCase::Six => {
                w.len() > 7 && in_b(w) && w.starts_with(&Word::lit("1100")) && w.ends_with(&Word::lit("1001"))
            }
            ForcingCase::Seven => in_b(w) && w.starts_with(&Word::lit("1100")) && w.ends_with(&Word::lit("11")),
        }
    }
}

/// A two-step preimage of `1001 (010001)^m 011`.
pub fn lm2k2_preimage(m: usize) -> Word {
    if m.is_multiple_of(2) {
        crate::word!["001011", Word::lit("000000010101").repeat(m / 2), "00001"]
    } else {
        crate::word!["1000000", Word::lit("101010000000").repeat((m - 1) / 2), "1010100001"]
    }
}

/// `100 (10)^{n_0} 0^{2n_1} ... (10)^{n_{2k}} 01`, built directly from the
/// 0-runs of `v` rather than through the preimage module.
fn closed_form_preimage(v: &Word) -> Word {
    let mut out = String::from("100");
    for (i, run) in v.to_bit_string().split('1').enumerate() {
        let n = run.len().div_ceil(2);
        out.push_str(&if i % 2 == 0 { "10".repeat(n) } else { "00".repeat(n) });
    }
    out.push_str("01");
    Word::lit(&out)
}

fn show_set(words: &BTreeSet<Word>) -> String {
    let parts: Vec<String> = words.iter().map(Word::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn verify_figure_iterates() -> OracleReport {
    Oracle::default().figure_iterates()
}

pub fn verify_kink_elimination_parity(max_len: usize) -> OracleReport {
    Oracle::default().kink_elimination_parity(max_len)
}

pub fn verify_annihilation(max_support: usize, max_steps: usize) -> OracleReport {
    Oracle::default().annihilation(max_support, max_steps)
}

pub fn verify_kurka_counterexample() -> OracleReport {
    Oracle::default().kurka_counterexample()
}

pub fn verify_prreduc_cases(max_k: usize) -> OracleReport {
    Oracle::default().prreduc_cases(max_k)
}

pub fn verify_mobility() -> OracleReport {
    Oracle::default().mobility(crate::extension::DEFAULT_MAX_PAD)
}

pub fn verify_flipflop(max_k: usize, pad: usize) -> OracleReport {
    Oracle::default().flipflop(max_k, pad)
}

pub fn verify_lm2k2_constructions(max_m: usize, max_len: usize) -> OracleReport {
    Oracle::default().lm2k2_constructions(max_m, max_len)
}

pub fn verify_separation() -> OracleReport {
    Oracle::default().separation()
}

pub fn run_all(profile: Profile) -> Vec<OracleReport> {
    Oracle::default().run_all(profile)
}

pub fn run_all_with(profile: Profile, rule: Rule) -> Vec<OracleReport> {
    Oracle::new(rule).run_all(profile)
}
