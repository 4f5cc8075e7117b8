//! Raw, value-capped and antagonistic updates for the classic, concise and
//! colour witness semantics.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::Colour;
use crate::witness::{
    enumerate_statespace, in_statespace, is_concise, is_monotone, sequence_value, truncate_entries, Bounds, Entry,
    StateSpaceKind, Witness, WitnessError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UpdateError {
    #[error("colour {colour} is outside {min}..={max}")]
    ColourOutOfRange { colour: Colour, min: Colour, max: Colour },
    #[error("witness has length {found}, expected {expected}")]
    WrongWidth { found: usize, expected: usize },
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UpdateVariant {
    Classic,
    Concise,
    Colour,
}

impl UpdateVariant {
    pub const ALL: [UpdateVariant; 3] = [UpdateVariant::Classic, UpdateVariant::Concise, UpdateVariant::Colour];

    /// The statespace the variant's automaton lives in.
    pub fn statespace(self) -> StateSpaceKind {
        match self {
            UpdateVariant::Classic => StateSpaceKind::ClassicValueCapped,
            UpdateVariant::Concise | UpdateVariant::Colour => StateSpaceKind::Concise,
        }
    }
}

impl fmt::Display for UpdateVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpdateVariant::Classic => "classic",
            UpdateVariant::Concise => "concise",
            UpdateVariant::Colour => "colour",
        })
    }
}

impl FromStr for UpdateVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classic" => Ok(UpdateVariant::Classic),
            "concise" => Ok(UpdateVariant::Concise),
            "colour" | "color" => Ok(UpdateVariant::Colour),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// Which rule produced a raw update. Indices are witness positions `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// The input was already `Won`.
    Absorbed,
    /// `d` is the odd maximum colour: back to all blanks.
    Reset,
    /// Even `d` lands at the lowest non-even position `j`.
    Overflow(usize),
    /// `d` overwrites the highest entry below it (classic).
    Local(usize),
    /// Nothing changes.
    Stale,
    /// Even `d` on a witness of even entries only: the chain outgrows the budget.
    CarryOut,
    /// Odd `d` replaces or extends the colour witness at `j` (colour).
    OddLocal(usize),
    /// Even `d` absorbs everything from the highest odd entry below it (colour).
    EvenLocal(usize),
    /// Even `d` merges all lower even colour witnesses (colour).
    EvenOverflow(usize),
}

fn check(b: &Witness, d: Colour, bounds: &Bounds) -> Result<(), UpdateError> {
    if !bounds.contains(d) {
        return Err(UpdateError::ColourOutOfRange {
            colour: d,
            min: bounds.min_colour(),
            max: bounds.max_colour(),
        });
    }
    if let Some(e) = b.entries() {
        if e.len() != bounds.width() {
            return Err(UpdateError::WrongWidth {
                found: e.len(),
                expected: bounds.width(),
            });
        }
    }
    Ok(())
}

/// Read-only view of `b_i` by significance index.
struct View<'a>(&'a [Entry]);

impl View<'_> {
    fn width(&self) -> usize {
        self.0.len()
    }

    fn at(&self, i: usize) -> Entry {
        self.0[self.0.len() - 1 - i]
    }

    /// Keep everything above `j`, write `top` at `j`, blank out the rest.
    fn cut(&self, j: usize, top: Entry) -> Vec<Entry> {
        let w = self.width();
        let mut out = self.0.to_vec();
        out[w - 1 - j] = top;
        for e in &mut out[w - j..] {
            *e = Entry::Blank;
        }
        out
    }

    fn lowest_non_even(&self) -> Option<usize> {
        (0..self.width()).find(|&i| !self.at(i).is_even())
    }
}

fn raw_classic_entries(entries: &[Entry], d: Colour, bounds: &Bounds) -> (Witness, Rule) {
    let b = View(entries);
    let w = b.width();
    if bounds.is_reset(d) {
        return (Witness::blank(w), Rule::Reset);
    }
    if d % 2 == 0 {
        match b.lowest_non_even() {
            None => return (Witness::Won, Rule::CarryOut),
            Some(j) if (j + 1..w).all(|i| b.at(i).blank_or_at_least(d)) => {
                return (Witness::Seq(b.cut(j, Entry::Colour(d))), Rule::Overflow(j));
            }
            Some(_) => {}
        }
    }
    if let Some(j) = (0..w).rev().find(|&i| b.at(i).below(d)) {
        let top = if j == 0 { Entry::Blank } else { Entry::Colour(d) };
        return (Witness::Seq(b.cut(j, top)), Rule::Local(j));
    }
    (Witness::Seq(entries.to_vec()), Rule::Stale)
}

fn raw_colour_entries(entries: &[Entry], d: Colour, bounds: &Bounds) -> (Witness, Rule) {
    let b = View(entries);
    let w = b.width();
    if bounds.is_reset(d) {
        return (Witness::blank(w), Rule::Reset);
    }
    if d % 2 == 1 {
        return match (0..w).rev().find(|&i| b.at(i).colour().is_some_and(|c| c <= d)) {
            None => (Witness::Seq(entries.to_vec()), Rule::Stale),
            Some(j) => {
                let top = if j == 0 { Entry::Blank } else { Entry::Colour(d) };
                (Witness::Seq(b.cut(j, top)), Rule::OddLocal(j))
            }
        };
    }
    let lift = |e: Entry, strict: bool| match e {
        Entry::Colour(c) if c < d || (!strict && c == d) => Entry::Colour(d),
        other => other,
    };
    if let Some(j) = (0..w).rev().find(|&i| b.at(i).is_odd() && b.at(i).below(d)) {
        let mut out = vec![Entry::Blank; w];
        for i in j..w {
            out[w - 1 - i] = lift(b.at(i), true);
        }
        out[w - 1] = Entry::Colour(d);
        return (Witness::Seq(out), Rule::EvenLocal(j));
    }
    match b.lowest_non_even() {
        None => (Witness::Won, Rule::CarryOut),
        Some(j) => {
            let mut out = vec![Entry::Blank; w];
            for i in j + 1..w {
                out[w - 1 - i] = lift(b.at(i), false);
            }
            out[w - 1 - j] = Entry::Colour(d);
            (Witness::Seq(out), Rule::EvenOverflow(j))
        }
    }
}

/// Raw update together with the rule that fired.
pub fn raw_update(b: &Witness, d: Colour, variant: UpdateVariant, bounds: &Bounds) -> Result<(Witness, Rule), UpdateError> {
    check(b, d, bounds)?;
    let Some(entries) = b.entries() else {
        return Ok((Witness::Won, Rule::Absorbed));
    };
    Ok(match variant {
        UpdateVariant::Classic => raw_classic_entries(entries, d, bounds),
        UpdateVariant::Concise => {
            let (r, rule) = raw_classic_entries(entries, d, bounds);
            (truncate_witness(r), rule)
        }
        UpdateVariant::Colour => raw_colour_entries(entries, d, bounds),
    })
}

fn truncate_witness(b: Witness) -> Witness {
    match b {
        Witness::Seq(e) => Witness::Seq(truncate_entries(&e)),
        won => won,
    }
}

/// Classic raw update: reset on the odd maximum, otherwise the first of
/// overflow, local update, carry-out or no change that applies.
pub fn ru_classic(b: &Witness, d: Colour, bounds: &Bounds) -> Result<Witness, UpdateError> {
    raw_update(b, d, UpdateVariant::Classic, bounds).map(|(w, _)| w)
}

/// The classic raw update followed by `↓₁`.
pub fn ru_concise(b: &Witness, d: Colour, bounds: &Bounds) -> Result<Witness, UpdateError> {
    raw_update(b, d, UpdateVariant::Concise, bounds).map(|(w, _)| w)
}

/// Raw update under the colour-witness semantics.
pub fn ru_colour(b: &Witness, d: Colour, bounds: &Bounds) -> Result<Witness, UpdateError> {
    raw_update(b, d, UpdateVariant::Colour, bounds).map(|(w, _)| w)
}

fn cap(r: Witness, bounds: &Bounds) -> Witness {
    match r {
        Witness::Seq(ref e) if sequence_value(e) > bounds.e() => Witness::Won,
        other => other,
    }
}

/// The basic update: the raw update, replaced by `Won` once its value exceeds `e`.
pub fn up_capped(b: &Witness, d: Colour, variant: UpdateVariant, bounds: &Bounds) -> Result<Witness, UpdateError> {
    raw_update(b, d, variant, bounds).map(|(r, _)| cap(r, bounds))
}

/// Precomputed antagonistic update over an explicitly enumerated statespace:
/// for every colour, a suffix minimum of the basic update along the sorted
/// states.
#[derive(Clone, Debug)]
pub struct AntagonisticTable {
    bounds: Bounds,
    variant: UpdateVariant,
    states: Vec<Witness>,
    table: HashMap<Colour, Vec<Witness>>,
}

impl AntagonisticTable {
    pub fn build(bounds: &Bounds, variant: UpdateVariant, statespace_cap: usize) -> Result<Self, UpdateError> {
        let states = enumerate_statespace(bounds, variant.statespace(), statespace_cap)?;
        let mut table = HashMap::new();
        for d in bounds.colours() {
            let mut column = vec![Witness::Won; states.len()];
            let mut best = Witness::Won;
            for (idx, c) in states.iter().enumerate().rev() {
                let u = up_capped(c, d, variant, bounds)?;
                if u < best {
                    best = u;
                }
                column[idx] = best.clone();
            }
            table.insert(d, column);
        }
        Ok(AntagonisticTable {
            bounds: *bounds,
            variant,
            states,
            table,
        })
    }

    pub fn states(&self) -> &[Witness] {
        &self.states
    }

    pub fn variant(&self) -> UpdateVariant {
        self.variant
    }

    /// `min { up(c, d) | c ⊒ b }` over the statespace and `Won`.
    pub fn au(&self, b: &Witness, d: Colour) -> Result<Witness, UpdateError> {
        check(b, d, &self.bounds)?;
        if b.is_won() {
            return Ok(Witness::Won);
        }
        let pos = self.states.partition_point(|s| s < b);
        Ok(self.table[&d].get(pos).cloned().unwrap_or(Witness::Won))
    }
}

/// Antagonistic update by definition: the least basic update over every
/// statespace element at or above `b`, including `Won`.
pub fn au_reference(b: &Witness, d: Colour, variant: UpdateVariant, bounds: &Bounds) -> Result<Witness, UpdateError> {
    au_reference_capped(b, d, variant, bounds, crate::witness::DEFAULT_STATESPACE_CAP)
}

pub fn au_reference_capped(
    b: &Witness,
    d: Colour,
    variant: UpdateVariant,
    bounds: &Bounds,
    statespace_cap: usize,
) -> Result<Witness, UpdateError> {
    check(b, d, bounds)?;
    if b.is_won() {
        return Ok(Witness::Won);
    }
    let states = enumerate_statespace(bounds, variant.statespace(), statespace_cap)?;
    let mut best = Witness::Won;
    for c in states.iter().filter(|c| *c >= b) {
        let u = up_capped(c, d, variant, bounds)?;
        if u < best {
            best = u;
        }
    }
    Ok(best)
}

/// Antagonistic update without enumerating the statespace.
///
/// Searches the states `c ⊒ b` depth-first from the most significant
/// position, pruning a subtree once a lower bound on every update inside it
/// is no better than the best update found so far. Updates that fire below
/// the fixed prefix never go under the prefix padded with blanks; those that
/// fire inside it depend only on the prefix, so both are enumerated.
pub fn au_fast(b: &Witness, d: Colour, variant: UpdateVariant, bounds: &Bounds) -> Result<Witness, UpdateError> {
    check(b, d, bounds)?;
    let Some(start) = b.entries() else {
        return Ok(Witness::Won);
    };
    if bounds.is_reset(d) {
        return Ok(Witness::blank(bounds.width()));
    }
    let mut alphabet: Vec<Entry> = std::iter::once(Entry::Blank)
        .chain(bounds.witness_colours().map(Entry::Colour))
        .collect();
    alphabet.sort();
    let mut search = FastSearch {
        bounds,
        variant,
        d,
        start,
        alphabet,
        best: Witness::Won,
    };
    let mut prefix = Vec::with_capacity(bounds.width());
    search.descend(&mut prefix, true)?;
    Ok(search.best)
}

struct FastSearch<'a> {
    bounds: &'a Bounds,
    variant: UpdateVariant,
    d: Colour,
    start: &'a [Entry],
    alphabet: Vec<Entry>,
    best: Witness,
}

impl FastSearch<'_> {
    fn descend(&mut self, prefix: &mut Vec<Entry>, tight: bool) -> Result<(), UpdateError> {
        let width = self.bounds.width();
        let kind = self.variant.statespace();
        if prefix.len() == width {
            if in_statespace(prefix, self.bounds, kind) {
                let u = up_capped(&Witness::Seq(prefix.clone()), self.d, self.variant, self.bounds)?;
                if u < self.best {
                    self.best = u;
                }
            }
            return Ok(());
        }
        if !prefix.is_empty() && self.lower_bound(prefix) >= self.best {
            return Ok(());
        }
        let pos = prefix.len();
        let floor = self.start[pos];
        let is_last = pos + 1 == width;
        for idx in 0..self.alphabet.len() {
            let x = self.alphabet[idx];
            if tight && x < floor {
                continue;
            }
            if let Entry::Colour(c) = x {
                if is_last && c % 2 == 1 {
                    continue;
                }
            }
            prefix.push(x);
            let admissible = is_monotone(prefix)
                && (kind != StateSpaceKind::Concise || is_concise(prefix))
                && padded_value(prefix, width) <= self.bounds.e();
            if admissible {
                self.descend(prefix, tight && x == floor)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    fn lower_bound(&self, prefix: &[Entry]) -> Witness {
        let width = self.bounds.width();
        let mut padded = prefix.to_vec();
        padded.resize(width, Entry::Blank);
        let mut lb = Witness::Seq(padded);
        for outcome in prefix_outcomes(prefix, width, self.d, self.variant) {
            let outcome = cap(outcome, self.bounds);
            if outcome < lb {
                lb = outcome;
            }
        }
        lb
    }
}

fn padded_value(prefix: &[Entry], width: usize) -> u64 {
    let mut padded = prefix.to_vec();
    padded.resize(width, Entry::Blank);
    sequence_value(&padded)
}

/// Every raw update that could fire at a position inside the fixed prefix
/// (positions `width - prefix.len() ..= width - 1`), using only conditions
/// the prefix already decides.
fn prefix_outcomes(prefix: &[Entry], width: usize, d: Colour, variant: UpdateVariant) -> Vec<Witness> {
    let lowest = width - prefix.len();
    let at = |i: usize| prefix[width - 1 - i];
    let cut = |j: usize, top: Entry, lift: &dyn Fn(Entry) -> Entry| {
        let mut out = vec![Entry::Blank; width];
        for i in j + 1..width {
            out[width - 1 - i] = lift(at(i));
        }
        out[width - 1 - j] = top;
        out
    };
    let keep = |e: Entry| e;
    let mut out = Vec::new();
    for j in lowest..width {
        let above = || (j + 1..width).map(at);
        let evens_below = (lowest..j).all(|i| at(i).is_even());
        match variant {
            UpdateVariant::Classic | UpdateVariant::Concise => {
                let above_ok = above().all(|e| e.blank_or_at_least(d));
                if d % 2 == 0 && above_ok && evens_below && !at(j).is_even() {
                    out.push(cut(j, Entry::Colour(d), &keep));
                }
                if above_ok && at(j).below(d) {
                    let top = if j == 0 { Entry::Blank } else { Entry::Colour(d) };
                    out.push(cut(j, top, &keep));
                }
            }
            UpdateVariant::Colour if d % 2 == 1 => {
                let above_ok = above().all(|e| e.colour().is_none_or(|c| c > d));
                if above_ok && at(j).colour().is_some_and(|c| c <= d) {
                    let top = if j == 0 { Entry::Blank } else { Entry::Colour(d) };
                    out.push(cut(j, top, &keep));
                }
            }
            UpdateVariant::Colour => {
                let odd_below_d = |e: Entry| e.is_odd() && e.below(d);
                let lift_strict = |e: Entry| if e.below(d) { Entry::Colour(d) } else { e };
                let lift_weak = |e: Entry| match e {
                    Entry::Colour(c) if c <= d => Entry::Colour(d),
                    other => other,
                };
                if odd_below_d(at(j)) && !above().any(odd_below_d) {
                    let mut r = cut(j, Entry::Colour(d), &lift_strict);
                    r[width - 1] = Entry::Colour(d);
                    out.push(r);
                }
                let no_low_odd = (lowest..width).all(|i| !odd_below_d(at(i)));
                if no_low_odd && evens_below && !at(j).is_even() {
                    out.push(cut(j, Entry::Colour(d), &lift_weak));
                }
            }
        }
    }
    out.into_iter()
        .map(|r| {
            if variant == UpdateVariant::Concise {
                Witness::Seq(truncate_entries(&r))
            } else {
                Witness::Seq(r)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Witness {
        s.parse().unwrap()
    }

    fn bounds(e: u64, max: Colour) -> Bounds {
        Bounds::new(e, 1, max).unwrap()
    }

    #[test]
    fn classic_examples() {
        let b2 = bounds(3, 2);
        assert_eq!(ru_classic(&w("_,_"), 2, &b2).unwrap(), w("_,2"));
        let b3 = bounds(3, 3);
        assert_eq!(ru_classic(&w("2,2"), 3, &b3).unwrap(), w("_,_"));
        let b7 = bounds(7, 7);
        assert_eq!(ru_classic(&w("6,4,_"), 3, &b7).unwrap(), w("6,4,_"));
        assert_eq!(ru_classic(&w("6,_,2"), 4, &b7).unwrap(), w("6,4,_"));
    }

    #[test]
    fn classic_rule_tags() {
        let b = bounds(7, 7);
        let rule = |s: &str, d| raw_update(&w(s), d, UpdateVariant::Classic, &b).unwrap().1;
        assert_eq!(rule("6,_,2", 4), Rule::Overflow(1));
        assert_eq!(rule("6,4,_", 3), Rule::Stale);
        assert_eq!(rule("6,4,2", 4), Rule::CarryOut);
        assert_eq!(rule("6,3,2", 4), Rule::Overflow(1));
        assert_eq!(rule("6,3,_", 4), Rule::Local(1));
        assert_eq!(rule("4,2,2", 7), Rule::Reset);
        assert_eq!(rule("4,_,2", 3), Rule::Local(0));
    }

    #[test]
    fn concise_examples() {
        let b = bounds(7, 6);
        assert_eq!(ru_concise(&w("3,2,2"), 3, &b).unwrap(), w("3,_,_"));
        assert_eq!(ru_concise(&w("5,3,_"), 4, &b).unwrap(), w("5,4,_"));
        assert_eq!(ru_concise(&Witness::Won, 2, &b).unwrap(), Witness::Won);
    }

    #[test]
    fn colour_examples() {
        let b = bounds(15, 8);
        assert_eq!(ru_colour(&w("4,_,4,_"), 6, &b).unwrap(), w("6,_,6,6"));
        assert_eq!(ru_colour(&w("4,3,2,2"), 6, &b).unwrap(), w("6,6,_,6"));
        let b = bounds(31, 8);
        assert_eq!(ru_colour(&w("6,_,4,2,2"), 8, &b).unwrap(), w("8,8,_,_,_"));
        let b = bounds(3, 2);
        assert_eq!(ru_colour(&w("2,2"), 2, &b).unwrap(), Witness::Won);
    }

    #[test]
    fn colour_odd_rules() {
        let b = bounds(15, 8);
        let rule = |s: &str, d| raw_update(&w(s), d, UpdateVariant::Colour, &b).unwrap();
        assert_eq!(rule("6,5,_,_", 3), (w("6,5,_,_"), Rule::Stale));
        assert_eq!(rule("6,5,2,_", 5), (w("6,5,_,_"), Rule::OddLocal(2)));
        assert_eq!(rule("6,4,2,2", 5), (w("6,5,_,_"), Rule::OddLocal(2)));
        assert_eq!(rule("_,_,_,2", 3), (w("_,_,_,_"), Rule::OddLocal(0)));
    }

    #[test]
    fn capped_update() {
        let b = bounds(2, 2);
        assert_eq!(up_capped(&w("2,_"), 2, UpdateVariant::Classic, &b).unwrap(), Witness::Won);
        assert_eq!(up_capped(&Witness::Won, 1, UpdateVariant::Colour, &b).unwrap(), Witness::Won);
        let b = bounds(15, 8);
        assert_eq!(up_capped(&w("4,_,4,_"), 6, UpdateVariant::Colour, &b).unwrap(), w("6,_,6,6"));
    }

    #[test]
    fn rejects_bad_inputs() {
        let b = bounds(3, 4);
        assert!(matches!(
            up_capped(&w("_,_"), 5, UpdateVariant::Classic, &b),
            Err(UpdateError::ColourOutOfRange { colour: 5, .. })
        ));
        assert_eq!(
            up_capped(&w("_"), 2, UpdateVariant::Classic, &b),
            Err(UpdateError::WrongWidth { found: 1, expected: 2 })
        );
    }

    #[test]
    fn antagonistic_small_space() {
        let b = bounds(1, 2);
        let v = UpdateVariant::Concise;
        assert_eq!(au_reference(&w("_"), 1, v, &b).unwrap(), w("_"));
        assert_eq!(au_reference(&w("2"), 1, v, &b).unwrap(), w("2"));
        assert_eq!(au_reference(&Witness::Won, 2, v, &b).unwrap(), Witness::Won);
        assert_eq!(au_reference(&w("_"), 2, v, &b).unwrap(), w("2"));
        assert_eq!(au_fast(&Witness::Won, 1, v, &b).unwrap(), Witness::Won);
        let table = AntagonisticTable::build(&b, v, 100).unwrap();
        assert_eq!(table.au(&w("_"), 2).unwrap(), w("2"));
        assert_eq!(table.au(&w("2"), 2).unwrap(), Witness::Won);
    }

    #[test]
    fn fast_matches_table_on_a_medium_space() {
        for variant in UpdateVariant::ALL {
            let b = bounds(11, 5);
            let table = AntagonisticTable::build(&b, variant, 1_000_000).unwrap();
            for s in table.states() {
                for d in b.colours() {
                    assert_eq!(au_fast(s, d, variant, &b).unwrap(), table.au(s, d).unwrap(), "{variant} {s} {d}");
                }
            }
        }
    }
}
