//! Exact sizes of the progress-measure statespaces, and the comparison tables
//! built from them.
//!
//! All `cnt_*` functions count states other than `Won`; the `*_total_closed`
//! forms and the table columns include it.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("expected an even colour count, got {0}")]
    OddColourCount(u64),
    #[error("value bound {v} is not below 2^{l}")]
    ValueTooLarge { l: u32, v: u64 },
    #[error("invalid range {0}")]
    InvalidRange(String),
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn pow2(l: u32) -> BigUint {
    BigUint::one() << l
}

fn even_half(even_c: u64) -> Result<u64, CountError> {
    if even_c % 2 == 1 {
        return Err(CountError::OddColourCount(even_c));
    }
    Ok(even_c / 2)
}

/// Jurdziński–Lazić concise progress measures over `c` colours whose
/// concatenated words have length at most `l`.
pub fn cnt_jl(c: u64, l: u32) -> BigUint {
    fn go(c: u64, l: u32, memo: &mut HashMap<(u64, u32), BigUint>) -> BigUint {
        let c = c - c % 2;
        if l == 0 || c == 0 {
            return BigUint::one();
        }
        if c == 2 {
            return pow2(l + 1) - 1u32;
        }
        if l == 1 {
            return BigUint::from(c + 1);
        }
        if let Some(r) = memo.get(&(c, l)) {
            return r.clone();
        }
        let r = go(c - 2, l, memo) + 2u32 * go(c, l - 1, memo);
        memo.insert((c, l), r.clone());
        r
    }
    go(c, l, &mut HashMap::new())
}

/// Closed form for `cnt_jl(c, l) + 1`.
pub fn jl_total_closed(c: u64, l: u32) -> BigUint {
    let h = c / 2;
    let mut total = BigUint::from(2u32);
    for i in 1..=u64::from(l) {
        for j in 1..=i.min(h) {
            total += pow2(i as u32) * binomial(h, j) * binomial(i - 1, j - 1);
        }
    }
    total
}

/// Monotone sequences of length `l` over `c` colours and blank.
pub fn cnt_o(c: u64, l: u32) -> BigUint {
    fn go(c: u64, l: u32, memo: &mut HashMap<(u64, u32), BigUint>) -> BigUint {
        match l {
            0 => return BigUint::one(),
            1 => return BigUint::from(c + 1),
            _ => {}
        }
        if let Some(r) = memo.get(&(c, l)) {
            return r.clone();
        }
        let mut r = go(c, l - 1, memo);
        for i in 1..=c {
            r += go(i, l - 1, memo);
        }
        memo.insert((c, l), r.clone());
        r
    }
    go(c, l, &mut HashMap::new())
}

/// Closed form for `cnt_o(c, l) + 1`.
pub fn o_total_closed(c: u64, l: u32) -> BigUint {
    let mut total = BigUint::from(2u32);
    for i in 1..=u64::from(l) {
        total += binomial(u64::from(l), i) * binomial(i + c - 1, i);
    }
    total
}

/// Odd colours at most once and no colour above the highest even one.
pub fn cnt_12(even_c: u64, l: u32) -> Result<BigUint, CountError> {
    fn go(c: u64, l: u32, memo: &mut HashMap<(u64, u32), BigUint>) -> BigUint {
        match l {
            0 => return BigUint::one(),
            1 => return BigUint::from(2 * c + 1),
            _ => {}
        }
        if let Some(r) = memo.get(&(c, l)) {
            return r.clone();
        }
        let mut sum = BigUint::zero();
        for i in 1..=c {
            sum += go(i, l - 1, memo);
        }
        let r = 1u32 + 2u32 * sum;
        memo.insert((c, l), r.clone());
        r
    }
    Ok(go(even_half(even_c)?, l, &mut HashMap::new()))
}

/// As [`cnt_12`], additionally without odd `b_0` and without colour 1.
pub fn cnt_len(even_c: u64, l: u32) -> Result<BigUint, CountError> {
    fn go(c: u64, l: u32, memo: &mut HashMap<(u64, u32), BigUint>) -> BigUint {
        match l {
            0 => return BigUint::one(),
            1 => return BigUint::from(c + 1),
            _ => {}
        }
        if let Some(r) = memo.get(&(c, l)) {
            return r.clone();
        }
        let mut sum = BigUint::zero();
        for i in 1..=c {
            sum += go(i, l - 1, memo);
        }
        let r = 2u32 * sum;
        memo.insert((c, l), r.clone());
        r
    }
    Ok(go(even_half(even_c)?, l, &mut HashMap::new()))
}

/// As [`cnt_len`], restricted to witnesses of value at most `v`. A bound
/// `v ≥ 2^l` does not restrict length-`l` witnesses and is treated as `2^l − 1`.
pub fn cnt_len_val(even_c: u64, l: u32, v: u64) -> Result<BigUint, CountError> {
    fn go(c: u64, l: u32, v: u64, memo: &mut HashMap<(u64, u32, u64), BigUint>) -> BigUint {
        if v == 0 || l == 0 {
            return BigUint::one();
        }
        let v = if l < 64 { v.min((1u64 << l) - 1) } else { v };
        if l == 1 {
            return BigUint::from(c + 1);
        }
        let top = 1u64 << (l - 1);
        if v < top {
            return go(c, l - 1, v, memo);
        }
        if let Some(r) = memo.get(&(c, l, v)) {
            return r.clone();
        }
        let mut r = BigUint::zero();
        for i in 1..=c {
            r += go(i, l - 1, v - top, memo) + go(i, l - 1, top - 1, memo);
        }
        memo.insert((c, l, v), r.clone());
        r
    }
    Ok(go(even_half(even_c)?, l, v, &mut HashMap::new()))
}

/// [`cnt_len_val`] with the length implied by the value bound: all five
/// improvements together.
pub fn cnt_val(even_c: u64, v: u64) -> Result<BigUint, CountError> {
    fn go(c: u64, v: u64, memo: &mut HashMap<(u64, u64), BigUint>) -> BigUint {
        match v {
            0 => return BigUint::one(),
            1 => return BigUint::from(c + 1),
            _ => {}
        }
        if let Some(r) = memo.get(&(c, v)) {
            return r.clone();
        }
        let p = 1u64 << (63 - v.leading_zeros());
        let mut r = BigUint::zero();
        for i in 1..=c {
            r += go(i, v - p, memo) + go(i, p - 1, memo);
        }
        memo.insert((c, v), r.clone());
        r
    }
    Ok(go(even_half(even_c)?, v, &mut HashMap::new()))
}

/// Statespace of Fearnley et al. with length and value bounds; requires
/// `v < 2^l`.
pub fn cnt_jkssw(c: u64, l: u32, v: u64) -> Result<BigUint, CountError> {
    if l < 64 && v >= 1u64 << l {
        return Err(CountError::ValueTooLarge { l, v });
    }
    fn go(c: u64, l: u32, v: u64, memo: &mut HashMap<(u64, u32, u64), BigUint>) -> BigUint {
        if l == 0 {
            return BigUint::one();
        }
        if l == 1 {
            return if v == 0 { BigUint::one() } else { BigUint::from(c / 2 + 1) };
        }
        if let Some(r) = memo.get(&(c, l, v)) {
            return r.clone();
        }
        let top = 1u64 << (l - 1);
        let odd_upper = c.div_ceil(2);
        let mut r;
        if v < top {
            r = go(c, l - 1, v, memo);
            for i in 2..=odd_upper {
                r += go(2 * i - 1, l - 1, v, memo);
            }
        } else {
            r = go(c, l - 1, top - 1, memo);
            for i in 1..=c / 2 {
                r += go(2 * i, l - 1, v - top, memo);
            }
            for i in 2..=odd_upper {
                r += go(2 * i - 1, l - 1, top - 1, memo);
            }
        }
        memo.insert((c, l, v), r.clone());
        r
    }
    Ok(go(c, l, v, &mut HashMap::new()))
}

/// `⌈log₂(n + 1)⌉`, the witness length for an even-chain budget `n`.
pub fn length_for(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// One row of a comparison table; sizes include `Won`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub c: u64,
    pub old: BigUint,
    pub jl: BigUint,
    pub new: BigUint,
}

impl TableRow {
    pub fn compute(n: u64, c: u64) -> TableRow {
        let l = length_for(n);
        TableRow {
            n,
            c,
            old: o_total_closed(c, l),
            jl: jl_total_closed(c, l),
            new: cnt_val(c - c % 2, n).expect("even colour count") + 1u32,
        }
    }

    pub fn new_over_jl(&self) -> f64 {
        ratio(&self.new, &self.jl)
    }
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    // scale both down to keep the quotient in f64 range
    let shift = b.bits().saturating_sub(60);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}

/// Rows for a fixed number of colours and `n = 8, 16, …, 32768`; the first
/// row uses 8 colours.
pub fn table_fixed_colours() -> Vec<TableRow> {
    let mut rows = vec![TableRow::compute(8, 8)];
    rows.extend((4..=15).map(|p| TableRow::compute(1 << p, 10)));
    rows
}

/// Rows with colours growing linearly: `n = 260, 280, …, 500` and `c = n/10`.
pub fn table_linear_colours() -> Vec<TableRow> {
    (260..=500).step_by(20).map(|n| TableRow::compute(n, n / 10)).collect()
}

/// Rows for every `n` in `from..=to` with `c` colours.
pub fn table_range(c: u64, from: u64, to: u64) -> Result<Vec<TableRow>, CountError> {
    if c == 0 || from == 0 || from > to {
        return Err(CountError::InvalidRange(format!("c={c}, n={from}..{to}")));
    }
    Ok((from..=to).map(|n| TableRow::compute(n, c)).collect())
}

pub const TABLE_HEADER: &str = "n,c,old_exact,jl_exact,new_exact,old_k,jl_k,new_k,new_over_jl";

/// CSV of table rows; the `_k` columns are the sizes divided by 1000, rounded down.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    let k = BigUint::from(1000u32);
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6}",
            r.n,
            r.c,
            r.old,
            r.jl,
            r.new,
            &r.old / &k,
            &r.jl / &k,
            &r.new / &k,
            r.new_over_jl()
        )
        .unwrap();
    }
    out
}
