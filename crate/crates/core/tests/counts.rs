use num_bigint::BigUint;
use parity_witness::counts::{
    cnt_12, cnt_jl, cnt_len, cnt_len_val, cnt_o, cnt_val, jl_total_closed, length_for, o_total_closed, table_range,
    TableRow,
};
use proptest::prelude::*;

/// All words of length `l` over `0..=top`, where 0 stands for blank. Index 0
/// of a word is its most significant position.
fn words(top: u64, l: u32) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..l {
        out = out.into_iter().flat_map(|w| (0..=top).map(move |c| [w.clone(), vec![c]].concat())).collect();
    }
    out
}

fn monotone(w: &[u64]) -> bool {
    let set: Vec<u64> = w.iter().copied().filter(|&c| c != 0).collect();
    set.windows(2).all(|p| p[0] >= p[1])
}

fn odd_once(w: &[u64]) -> bool {
    w.iter().enumerate().all(|(i, &c)| c % 2 == 0 || !w[..i].contains(&c))
}

fn value(w: &[u64]) -> u64 {
    let l = w.len();
    let weight = |i: usize| 1u64 << (l - 1 - i);
    match w.iter().position(|&c| c % 2 == 1) {
        Some(o) => weight(o) + (0..o).filter(|&i| w[i] != 0).map(weight).sum::<u64>(),
        None => (0..l).filter(|&i| w[i] != 0).map(weight).sum(),
    }
}

fn count(words: &[Vec<u64>], keep: impl Fn(&[u64]) -> bool) -> BigUint {
    BigUint::from(words.iter().filter(|w| keep(w)).count())
}

#[test]
fn monotone_sequences_match_enumeration() {
    for c in 1..=6 {
        for l in 0..=5 {
            let ws = words(c, l);
            assert_eq!(cnt_o(c, l), count(&ws, monotone), "c={c} l={l}");
            assert_eq!(o_total_closed(c, l), cnt_o(c, l) + 1u32);
        }
    }
}

#[test]
fn concise_sequences_match_enumeration() {
    for even_c in [2, 4, 6] {
        for l in 0..=5 {
            let ws = words(even_c, l);
            let concise = |w: &[u64]| monotone(w) && odd_once(w);
            assert_eq!(cnt_12(even_c, l).unwrap(), count(&ws, concise), "c={even_c} l={l}");
            let restricted = |w: &[u64]| concise(w) && !w.contains(&1) && w.last().is_none_or(|&b| b % 2 == 0);
            assert_eq!(cnt_len(even_c, l).unwrap(), count(&ws, restricted), "c={even_c} l={l}");
            for v in 0..(1u64 << l) + 3 {
                let capped = |w: &[u64]| restricted(w) && value(w) <= v;
                assert_eq!(cnt_len_val(even_c, l, v).unwrap(), count(&ws, capped), "c={even_c} l={l} v={v}");
            }
        }
    }
}

#[test]
fn value_bound_implies_length() {
    for even_c in [2, 4, 6, 8, 20] {
        for v in 1..=300 {
            let l = length_for(v);
            assert_eq!(cnt_val(even_c, v).unwrap(), cnt_len_val(even_c, l, v).unwrap());
            assert_eq!(cnt_len_val(even_c, l + 3, v).unwrap(), cnt_len_val(even_c, l, v).unwrap());
        }
        for l in 1..=10 {
            assert_eq!(cnt_len_val(even_c, l, (1 << l) - 1).unwrap(), cnt_len(even_c, l).unwrap());
        }
    }
}

#[test]
fn jl_closed_form_matches_recurrence() {
    for c in 0..=20 {
        for l in 0..=14 {
            assert_eq!(jl_total_closed(c, l), cnt_jl(c, l) + 1u32, "c={c} l={l}");
        }
    }
}

#[test]
fn odd_colour_counts_are_rejected() {
    assert!(cnt_12(3, 2).is_err());
    assert!(cnt_len(5, 2).is_err());
    assert!(cnt_val(7, 2).is_err());
}

#[test]
fn table_range_rejects_bad_ranges() {
    assert!(table_range(10, 8, 4).is_err());
    assert!(table_range(0, 1, 4).is_err());
    assert!(table_range(10, 0, 4).is_err());
    assert_eq!(table_range(10, 3, 5).unwrap().len(), 3);
}

proptest! {
    #[test]
    fn new_never_exceeds_jl(n in 1u64..5000, half in 1u64..12) {
        let row = TableRow::compute(n, 2 * half);
        prop_assert!(row.new <= row.jl);
        prop_assert!(row.jl <= row.old);
    }

    #[test]
    fn counts_grow_with_the_budget(half in 1u64..8, v in 1u64..2000) {
        prop_assert!(cnt_val(2 * half, v).unwrap() <= cnt_val(2 * half, v + 1).unwrap());
        prop_assert!(cnt_val(2 * half, v).unwrap() <= cnt_val(2 * half + 2, v).unwrap());
    }
}
