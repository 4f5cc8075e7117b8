use super::Colour;

/// Whether every colour strictly between positions `a < b` is dominated by
/// the larger of the two endpoint colours.
pub(crate) fn dominated_gap(colours: &[Colour], a: usize, b: usize) -> bool {
    let bound = colours[a].max(colours[b]);
    colours[a + 1..b].iter().all(|&c| c <= bound)
}

/// Checks that `positions` is an even chain of the colour sequence: strictly
/// increasing, all even-coloured, and every gap dominated by its endpoints.
pub fn is_even_chain(colours: &[Colour], positions: &[usize]) -> bool {
    positions.iter().all(|&p| p < colours.len() && colours[p] % 2 == 0)
        && positions
            .windows(2)
            .all(|w| w[0] < w[1] && dominated_gap(colours, w[0], w[1]))
}

/// Length of the longest even chain in a finite colour sequence; 0 when no
/// position has an even colour.
pub fn longest_even_chain(colours: &[Colour]) -> usize {
    let n = colours.len();
    // best[x]: longest chain ending at x
    let mut best = vec![0usize; n];
    let mut overall = 0;
    for x in 0..n {
        if colours[x] % 2 != 0 {
            continue;
        }
        let mut len = 1;
        let mut gap_max = 0;
        for y in (0..x).rev() {
            if colours[y] % 2 == 0 && gap_max <= colours[x].max(colours[y]) {
                len = len.max(best[y] + 1);
            }
            gap_max = gap_max.max(colours[y]);
        }
        best[x] = len;
        overall = overall.max(len);
    }
    overall
}
