//! Exhaustive checkers for what a witness claims about a finite play prefix,
//! under the classic and the colour interpretation. These are test oracles:
//! they search every admissible placement and refuse long prefixes.

use thiserror::Error;

use crate::game::chain::dominated_gap;
use crate::game::Colour;
use crate::witness::{Entry, Witness};

/// Longest prefix the checkers accept by default.
pub const DEFAULT_PREFIX_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("play prefix of length {len} exceeds the checker cap {cap}")]
    PrefixTooLong { len: usize, cap: usize },
    #[error("the checkers do not apply to Won")]
    Won,
}

/// For every end position `f > start`, the longest even chain that uses only
/// positions in `(start, f)` and links to `f` with a dominated gap. The chain
/// does not include `f` itself.
fn chains_into(colours: &[Colour], start: Option<usize>) -> Vec<usize> {
    let n = colours.len();
    let lo = start.map_or(0, |s| s + 1);
    // ending[x]: longest even chain within (start, x] ending at x
    let mut ending = vec![0usize; n];
    let mut into = vec![0usize; n];
    for x in lo..n {
        let mut best_link = 0;
        for y in lo..x {
            if ending[y] > 0 && dominated_gap(colours, y, x) {
                best_link = best_link.max(ending[y]);
            }
        }
        into[x] = best_link;
        if colours[x] % 2 == 0 {
            ending[x] = best_link + 1;
        }
    }
    into
}

/// Positions `f > start` with colour `c` that dominate everything after them.
fn outer_dominated_ends(colours: &[Colour], start: Option<usize>, c: Colour) -> Vec<usize> {
    let lo = start.map_or(0, |s| s + 1);
    (lo..colours.len())
        .filter(|&f| colours[f] == c && colours[f..].iter().all(|&x| x <= c))
        .collect()
}

fn check_len(colours: &[Colour], cap: usize) -> Result<(), SemanticsError> {
    if colours.len() > cap {
        return Err(SemanticsError::PrefixTooLong {
            len: colours.len(),
            cap,
        });
    }
    Ok(())
}

/// Whether `b` is a classic witness of the play prefix with these colours:
/// every non-blank `b_i` owns an `i`-witness (`2^i` even positions, plus a
/// final odd position when `b_i` is odd) ending in colour `b_i` with inner
/// and outer domination, and higher witnesses end before lower ones start.
pub fn is_classic_witness(b: &Witness, colours: &[Colour], cap: usize) -> Result<bool, SemanticsError> {
    check_len(colours, cap)?;
    let entries = b.entries().ok_or(SemanticsError::Won)?;
    let k = entries.len();
    // (index i, colour) from the most significant position down
    let required: Vec<(usize, Colour)> = entries
        .iter()
        .enumerate()
        .filter_map(|(idx, e)| e.colour().map(|c| (k - 1 - idx, c)))
        .collect();
    Ok(place_classic(colours, &required, None))
}

fn place_classic(colours: &[Colour], required: &[(usize, Colour)], start: Option<usize>) -> bool {
    let Some((&(i, c), rest)) = required.split_first() else {
        return true;
    };
    let evens_needed = 1usize << i;
    let into = chains_into(colours, start);
    for f in outer_dominated_ends(colours, start, c) {
        // an even i-witness counts f among its 2^i even positions
        let evens = if c % 2 == 0 { into[f] + 1 } else { into[f] };
        if evens >= evens_needed && place_classic(colours, rest, Some(f)) {
            return true;
        }
    }
    false
}

/// Whether `b` is a colour witness of the play prefix. Each colour present in
/// `b` owns one colour witness with some number `ℓ` of even positions; for
/// every colour `i`, the `ℓ` of the present colours in `[i, next odd above i)`
/// must sum to at least `2^q` summed over their positions `q` in `b`.
pub fn is_colour_witness(b: &Witness, colours: &[Colour], cap: usize) -> Result<bool, SemanticsError> {
    check_len(colours, cap)?;
    let entries = b.entries().ok_or(SemanticsError::Won)?;
    let k = entries.len();
    let mut present: Vec<(Colour, u64)> = Vec::new(); // (colour, Σ 2^q), descending colour
    for (idx, e) in entries.iter().enumerate() {
        if let Entry::Colour(c) = *e {
            let weight = 1u64 << (k - 1 - idx);
            match present.iter_mut().find(|(x, _)| *x == c) {
                Some(slot) => slot.1 += weight,
                None => present.push((c, weight)),
            }
        }
    }
    present.sort_by_key(|p| std::cmp::Reverse(p.0));
    let mut lengths = Vec::with_capacity(present.len());
    Ok(place_colour(colours, &present, None, &mut lengths))
}

fn place_colour(colours: &[Colour], present: &[(Colour, u64)], start: Option<usize>, lengths: &mut Vec<u64>) -> bool {
    let depth = lengths.len();
    if depth == present.len() {
        return budgets_hold(present, lengths);
    }
    let c = present[depth].0;
    let into = chains_into(colours, start);
    for f in outer_dominated_ends(colours, start, c) {
        let evens = if c % 2 == 0 { into[f] + 1 } else { into[f] };
        lengths.push(evens as u64);
        let ok = place_colour(colours, present, Some(f), lengths);
        lengths.pop();
        if ok {
            return true;
        }
    }
    false
}

fn budgets_hold(present: &[(Colour, u64)], lengths: &[u64]) -> bool {
    let Some(&(lowest, _)) = present.last() else {
        return true;
    };
    let highest = present[0].0;
    (lowest..=highest).all(|i| {
        let next_odd = present
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| c > i && c % 2 == 1)
            .min()
            .unwrap_or(Colour::MAX);
        let (have, need) = present
            .iter()
            .zip(lengths)
            .filter(|((c, _), _)| *c >= i && *c < next_odd)
            .fold((0u64, 0u64), |(h, n), ((_, w), l)| (h + l, n + w));
        have >= need
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Witness {
        s.parse().unwrap()
    }

    fn classic(b: &str, colours: &[Colour]) -> bool {
        is_classic_witness(&w(b), colours, DEFAULT_PREFIX_CAP).unwrap()
    }

    fn colour(b: &str, colours: &[Colour]) -> bool {
        is_colour_witness(&w(b), colours, DEFAULT_PREFIX_CAP).unwrap()
    }

    #[test]
    fn blank_is_always_a_witness() {
        assert!(classic("_,_", &[1, 3, 2]));
        assert!(colour("_,_", &[1, 3, 2]));
    }

    #[test]
    fn classic_examples() {
        assert!(classic("2", &[2]));
        assert!(!classic("2", &[2, 3]));
        assert!(classic("2,_", &[2, 1, 2]));
        assert!(!classic("2,_", &[2, 3, 2]));
        assert!(classic("2,2", &[2, 2, 2]));
        assert!(!classic("2,2", &[2, 2]));
        // odd 1-witness: two even positions then the odd dominating end
        assert!(classic("3,_", &[2, 2, 3, 1]));
        assert!(!classic("3,_", &[2, 3, 1]));
    }

    #[test]
    fn colour_examples() {
        assert!(colour("2,2", &[2, 2, 2]));
        assert!(!colour("2,2", &[2, 2]));
        // merged: one chain of length 10 ending in 4
        let ten_fours = [4; 10];
        assert!(colour("4,_,4,_", &ten_fours));
        assert!(!colour("4,_,4,_", &ten_fours[..9]));
    }

    #[test]
    fn colour_blocked_budget() {
        // 4,3,2,2 needs ℓ4 ≥ 8, ℓ4 + ℓ3 ≥ 12 and ℓ2 ≥ 3
        let mut play = vec![4; 8];
        play.extend([2, 2, 2, 2, 3]);
        play.extend([2, 2, 2]);
        let check = |p: &[Colour]| is_colour_witness(&w("4,3,2,2"), p, 16).unwrap();
        assert!(check(&play));
        assert!(!check(&play[1..]));
    }

    #[test]
    fn refuses_long_prefixes() {
        assert_eq!(
            is_classic_witness(&w("2"), &[2; 20], DEFAULT_PREFIX_CAP),
            Err(SemanticsError::PrefixTooLong { len: 20, cap: 14 })
        );
        assert_eq!(is_colour_witness(&Witness::Won, &[2], 14), Err(SemanticsError::Won));
    }
}
