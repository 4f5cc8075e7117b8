//! The witness data structure shared by the classic, concise and colour
//! semantics: a fixed-length sequence `b_k, ..., b_0` of colours and blanks,
//! topped by the absorbing value `Won`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{Colour, ParityGame};

/// Statespaces larger than this are refused by default.
pub const DEFAULT_STATESPACE_CAP: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witnesses of lengths {0} and {1} are not comparable")]
    LengthMismatch(usize, usize),
    #[error("the value of Won is undefined")]
    ValueOfWon,
    #[error("even-chain budget must be at least 1")]
    ZeroBudget,
    #[error("colour range {min}..={max} must start at 1 or 2 and be non-empty")]
    BadColourRange { min: Colour, max: Colour },
    #[error("game uses colour 0; normalise colours first")]
    NotNormalized,
    #[error("statespace exceeds the cap of {0} states")]
    CapExceeded(usize),
    #[error("cannot parse witness `{0}`")]
    Parse(String),
}

/// One witness position: a colour or the blank `_`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Blank,
    Colour(Colour),
}

impl Entry {
    pub fn colour(self) -> Option<Colour> {
        match self {
            Entry::Blank => None,
            Entry::Colour(c) => Some(c),
        }
    }

    pub fn is_blank(self) -> bool {
        self == Entry::Blank
    }

    pub fn is_even(self) -> bool {
        matches!(self, Entry::Colour(c) if c % 2 == 0)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Entry::Colour(c) if c % 2 == 1)
    }

    /// Numeric comparison `self < d`; blanks are never below anything.
    pub fn below(self, d: Colour) -> bool {
        matches!(self, Entry::Colour(c) if c < d)
    }

    /// Blank, or a colour of at least `d`.
    pub fn blank_or_at_least(self, d: Colour) -> bool {
        match self {
            Entry::Blank => true,
            Entry::Colour(c) => c >= d,
        }
    }

    // blank < odd (larger odd is worse) < even (larger even is better)
    fn rank(self) -> (u8, i64) {
        match self {
            Entry::Blank => (0, 0),
            Entry::Colour(c) if c % 2 == 1 => (1, -(c as i64)),
            Entry::Colour(c) => (2, c as i64),
        }
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Blank => f.write_str("_"),
            Entry::Colour(c) => write!(f, "{c}"),
        }
    }
}

/// `a ⪰ b`: even beats odd, larger even beats smaller even, smaller odd beats
/// larger odd, and everything beats blank.
pub fn entry_geq(a: Entry, b: Entry) -> bool {
    a >= b
}

/// A witness. Entries are stored most significant first, so `entries[0]` is
/// `b_k` and the last entry is `b_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Won,
    Seq(Vec<Entry>),
}

impl Witness {
    pub fn blank(width: usize) -> Witness {
        Witness::Seq(vec![Entry::Blank; width])
    }

    /// Builds a witness from entries listed `b_k` first.
    pub fn from_entries(entries: Vec<Entry>) -> Witness {
        Witness::Seq(entries)
    }

    pub fn is_won(&self) -> bool {
        matches!(self, Witness::Won)
    }

    pub fn entries(&self) -> Option<&[Entry]> {
        match self {
            Witness::Won => None,
            Witness::Seq(e) => Some(e),
        }
    }

    /// `b_i`, counting from the least significant position.
    pub fn get(&self, i: usize) -> Option<Entry> {
        let e = self.entries()?;
        e.len().checked_sub(i + 1).map(|idx| e[idx])
    }

    pub fn is_all_blank(&self) -> bool {
        self.entries().is_some_and(|e| e.iter().all(|x| x.is_blank()))
    }
}

impl Ord for Witness {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Witness::Won, Witness::Won) => Ordering::Equal,
            (Witness::Won, _) => Ordering::Greater,
            (_, Witness::Won) => Ordering::Less,
            (Witness::Seq(a), Witness::Seq(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Witness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison from `b_k` down with [`entry_geq`]; `Won` is
/// above every sequence.
pub fn witness_cmp(b: &Witness, c: &Witness) -> Result<Ordering, WitnessError> {
    if let (Witness::Seq(x), Witness::Seq(y)) = (b, c) {
        if x.len() != y.len() {
            return Err(WitnessError::LengthMismatch(x.len(), y.len()));
        }
    }
    Ok(b.cmp(c))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Won => f.write_str("Won"),
            Witness::Seq(entries) => {
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Witness {
    type Err = WitnessError;

    /// Parses the rendering produced by `Display`, e.g. `4,_,4,_` or `Won`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Won" {
            return Ok(Witness::Won);
        }
        s.split(',')
            .map(|t| match t.trim() {
                "_" => Ok(Entry::Blank),
                t => t
                    .parse()
                    .map(Entry::Colour)
                    .map_err(|_| WitnessError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Witness::Seq)
    }
}

/// Indices `i` with `b_i` even.
pub fn even_positions(entries: &[Entry]) -> Vec<usize> {
    let k = entries.len();
    (0..k).filter(|&i| entries[k - 1 - i].is_even()).collect()
}

/// Largest index holding an odd colour.
pub fn max_odd_position(entries: &[Entry]) -> Option<usize> {
    let k = entries.len();
    entries.iter().position(|e| e.is_odd()).map(|idx| k - 1 - idx)
}

pub(crate) fn sequence_value(entries: &[Entry]) -> u64 {
    let k = entries.len();
    let odd = max_odd_position(entries);
    let mut value = 0u64;
    for (idx, e) in entries.iter().enumerate() {
        let i = k - 1 - idx;
        match odd {
            Some(o) if i == o => value += 1 << i,
            Some(o) if i < o => break,
            _ if e.is_even() => value += 1 << i,
            _ => {}
        }
    }
    value
}

/// `val(b)`: the sum of `2^i` over the even positions above the highest odd
/// position, plus that odd position itself.
pub fn val(b: &Witness) -> Result<u64, WitnessError> {
    b.entries().map(sequence_value).ok_or(WitnessError::ValueOfWon)
}

/// Keeps only the leftmost occurrence of every odd colour.
pub fn truncate1(b: &Witness) -> Witness {
    match b {
        Witness::Won => Witness::Won,
        Witness::Seq(entries) => Witness::Seq(truncate_entries(entries)),
    }
}

pub(crate) fn truncate_entries(entries: &[Entry]) -> Vec<Entry> {
    let mut seen: Vec<Colour> = Vec::new();
    entries
        .iter()
        .map(|&e| match e {
            Entry::Colour(c) if c % 2 == 1 => {
                if seen.contains(&c) {
                    Entry::Blank
                } else {
                    seen.push(c);
                    e
                }
            }
            other => other,
        })
        .collect()
}

/// Non-blank entries never increase from `b_k` towards `b_0`.
pub fn is_monotone(entries: &[Entry]) -> bool {
    let mut last: Option<Colour> = None;
    for c in entries.iter().filter_map(|e| e.colour()) {
        if last.is_some_and(|l| c > l) {
            return false;
        }
        last = Some(c);
    }
    true
}

/// Every odd colour occurs at most once.
pub fn is_concise(entries: &[Entry]) -> bool {
    truncate_entries(entries) == entries
}

/// The even-chain budget `e` and the colour range `C = min..=max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    e: u64,
    min_colour: Colour,
    max_colour: Colour,
}

impl Bounds {
    pub fn new(e: u64, min_colour: Colour, max_colour: Colour) -> Result<Self, WitnessError> {
        if e == 0 {
            return Err(WitnessError::ZeroBudget);
        }
        if !(1..=2).contains(&min_colour) || max_colour < min_colour {
            return Err(WitnessError::BadColourRange {
                min: min_colour,
                max: max_colour,
            });
        }
        Ok(Bounds {
            e,
            min_colour,
            max_colour,
        })
    }

    /// Budget from the game's even-coloured vertices (or `e` when given) and
    /// `C` from its colours: `1..=max` if any colour is 1, else `2..=max`.
    pub fn for_game(game: &ParityGame, e: Option<u64>) -> Result<Self, WitnessError> {
        if game.min_colour() == 0 {
            return Err(WitnessError::NotNormalized);
        }
        let min = if game.min_colour() == 1 { 1 } else { 2 };
        Bounds::new(e.unwrap_or_else(|| game.even_vertex_count()), min, game.max_colour())
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    /// `k = ⌊log₂ e⌋`.
    pub fn k(&self) -> usize {
        (63 - self.e.leading_zeros()) as usize
    }

    /// Witness length `k + 1`.
    pub fn width(&self) -> usize {
        self.k() + 1
    }

    pub fn min_colour(&self) -> Colour {
        self.min_colour
    }

    pub fn max_colour(&self) -> Colour {
        self.max_colour
    }

    pub fn contains(&self, d: Colour) -> bool {
        (self.min_colour..=self.max_colour).contains(&d)
    }

    /// Largest colour of `C⁻`: the maximum itself when even, otherwise one below.
    pub fn reduced_max(&self) -> Colour {
        if self.max_colour % 2 == 0 {
            self.max_colour
        } else {
            self.max_colour - 1
        }
    }

    /// Whether `d` is the odd maximum colour, on which witnesses reset.
    pub fn is_reset(&self, d: Colour) -> bool {
        d == self.max_colour && d % 2 == 1
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour> {
        self.min_colour..=self.max_colour
    }

    pub fn initial(&self) -> Witness {
        Witness::blank(self.width())
    }

    /// Colours that can appear in value-capped witnesses: `C⁻` without 1,
    /// which no update rule ever writes.
    pub fn witness_colours(&self) -> std::ops::RangeInclusive<Colour> {
        self.min_colour.max(2)..=self.reduced_max()
    }
}

/// Which statespace to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateSpaceKind {
    /// Monotone sequences over all of `C`, bounded by length only.
    OriginalLength,
    /// Classic witnesses with value at most `e`.
    ClassicValueCapped,
    /// Classic witnesses in which every odd colour occurs at most once.
    Concise,
}

/// Structural membership test for the statespace `kind` (excluding `Won`).
pub fn in_statespace(entries: &[Entry], bounds: &Bounds, kind: StateSpaceKind) -> bool {
    if entries.len() != bounds.width() || !is_monotone(entries) {
        return false;
    }
    let alphabet = match kind {
        StateSpaceKind::OriginalLength => bounds.min_colour..=bounds.max_colour,
        _ => bounds.witness_colours(),
    };
    if !entries.iter().filter_map(|e| e.colour()).all(|c| alphabet.contains(&c)) {
        return false;
    }
    match kind {
        StateSpaceKind::OriginalLength => true,
        StateSpaceKind::ClassicValueCapped | StateSpaceKind::Concise => {
            let b0 = entries[entries.len() - 1];
            (b0.is_blank() || b0.is_even())
                && sequence_value(entries) <= bounds.e
                && (kind != StateSpaceKind::Concise || is_concise(entries))
        }
    }
}

/// Lists the statespace in ascending witness order, without `Won`.
pub fn enumerate_statespace(
    bounds: &Bounds,
    kind: StateSpaceKind,
    cap: usize,
) -> Result<Vec<Witness>, WitnessError> {
    let alphabet: Vec<Entry> = {
        let colours = match kind {
            StateSpaceKind::OriginalLength => bounds.min_colour..=bounds.max_colour,
            _ => bounds.witness_colours(),
        };
        let mut a: Vec<Entry> = std::iter::once(Entry::Blank).chain(colours.map(Entry::Colour)).collect();
        a.sort();
        a
    };
    let width = bounds.width();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(width);
    enumerate_rec(bounds, kind, &alphabet, width, &mut prefix, None, &mut out, cap)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    bounds: &Bounds,
    kind: StateSpaceKind,
    alphabet: &[Entry],
    width: usize,
    prefix: &mut Vec<Entry>,
    last: Option<Colour>,
    out: &mut Vec<Witness>,
    cap: usize,
) -> Result<(), WitnessError> {
    if kind != StateSpaceKind::OriginalLength {
        let mut padded = prefix.clone();
        padded.resize(width, Entry::Blank);
        // blank tails minimise the value, so no completion can fit either
        if sequence_value(&padded) > bounds.e {
            return Ok(());
        }
    }
    if prefix.len() == width {
        if in_statespace(prefix, bounds, kind) {
            if out.len() >= cap {
                return Err(WitnessError::CapExceeded(cap));
            }
            out.push(Witness::Seq(prefix.clone()));
        }
        return Ok(());
    }
    let is_last = prefix.len() + 1 == width;
    for &x in alphabet {
        let next_last = match x {
            Entry::Blank => last,
            Entry::Colour(c) => {
                if last.is_some_and(|l| c > l) {
                    continue;
                }
                if kind == StateSpaceKind::Concise && c % 2 == 1 && last == Some(c) {
                    continue;
                }
                if is_last && kind != StateSpaceKind::OriginalLength && c % 2 == 1 {
                    continue;
                }
                Some(c)
            }
        };
        prefix.push(x);
        enumerate_rec(bounds, kind, alphabet, width, prefix, next_last, out, cap)?;
        prefix.pop();
    }
    Ok(())
}
