//! A witness variant plus an update kind, packaged as a deterministic
//! reachability automaton over colours with target `Won`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::game::{Colour, ParityGame, Player};
use crate::solvers::{self, SolveError};
use crate::update::{au_fast, up_capped, AntagonisticTable, UpdateError, UpdateVariant};
use crate::witness::{Bounds, Witness, WitnessError};

/// States beyond which the antagonistic update is computed on the fly
/// instead of from a precomputed table.
pub const DEFAULT_TABLE_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpdateKind {
    Basic,
    Antagonistic,
}

impl fmt::Display for UpdateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpdateKind::Basic => "basic",
            UpdateKind::Antagonistic => "antagonistic",
        })
    }
}

impl FromStr for UpdateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(UpdateKind::Basic),
            "antagonistic" => Ok(UpdateKind::Antagonistic),
            other => Err(format!("unknown update kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SepAutomaton {
    bounds: Bounds,
    variant: UpdateVariant,
    kind: UpdateKind,
    table: Option<Arc<AntagonisticTable>>,
}

impl SepAutomaton {
    pub fn new(bounds: Bounds, variant: UpdateVariant, kind: UpdateKind) -> Self {
        Self::with_table_cap(bounds, variant, kind, DEFAULT_TABLE_CAP)
    }

    /// Like [`SepAutomaton::new`], tabulating the antagonistic update only
    /// when the statespace has at most `table_cap` states.
    pub fn with_table_cap(bounds: Bounds, variant: UpdateVariant, kind: UpdateKind, table_cap: usize) -> Self {
        let table = match kind {
            UpdateKind::Basic => None,
            UpdateKind::Antagonistic => AntagonisticTable::build(&bounds, variant, table_cap).ok().map(Arc::new),
        };
        SepAutomaton {
            bounds,
            variant,
            kind,
            table,
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn variant(&self) -> UpdateVariant {
        self.variant
    }

    pub fn kind(&self) -> UpdateKind {
        self.kind
    }

    pub fn initial(&self) -> Witness {
        self.bounds.initial()
    }

    pub fn step(&self, q: &Witness, d: Colour) -> Result<Witness, UpdateError> {
        match (self.kind, &self.table) {
            (UpdateKind::Basic, _) => up_capped(q, d, self.variant, &self.bounds),
            (UpdateKind::Antagonistic, Some(table)) => table.au(q, d),
            (UpdateKind::Antagonistic, None) => au_fast(q, d, self.variant, &self.bounds),
        }
    }

    /// Runs the automaton from the initial state over `word`.
    pub fn run_word(&self, word: &[Colour]) -> Result<Trace, UpdateError> {
        let mut states = Vec::with_capacity(word.len() + 1);
        let mut q = self.initial();
        states.push(q.clone());
        for &d in word {
            q = self.step(&q, d)?;
            states.push(q.clone());
        }
        Ok(Trace {
            word: word.to_vec(),
            states,
        })
    }
}

/// The states visited on a word: `states[i]` is the state after `i` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub word: Vec<Colour>,
    pub states: Vec<Witness>,
}

impl Trace {
    pub fn accepted(&self) -> bool {
        self.states.last().is_some_and(Witness::is_won)
    }

    /// Number of letters read when `Won` was first reached.
    pub fn accepted_at(&self) -> Option<usize> {
        self.states.iter().position(Witness::is_won)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.word.iter().enumerate() {
            writeln!(f, "{} -> ({}) -> {}", self.states[i], d, self.states[i + 1])?;
        }
        Ok(())
    }
}

/// Direction in which plays are fed to the automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationFailure {
    /// A solver built on the automaton disagrees with the recursive oracle.
    Winner {
        game: usize,
        vertex: usize,
        expected: Player,
        found: Player,
    },
    /// A positional play (a simple path into a simple cycle) is classified
    /// against the parity of its cycle.
    Lasso {
        game: usize,
        stem: Vec<usize>,
        cycle: Vec<usize>,
        expected: Player,
    },
    Error {
        game: usize,
        message: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparationReport {
    pub games: usize,
    pub vertices: usize,
    pub lassos: usize,
    pub failures: Vec<SeparationFailure>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Games up to this many vertices also get the lasso check.
pub const LASSO_VERTEX_LIMIT: usize = 8;

/// Checks that the automaton separates on the given games.
///
/// Every simple lasso of small games is read in the given direction: the
/// automaton must accept exactly those whose cycle has an even maximum.
/// Forward, the product game must also match the recursive oracle; backward
/// with antagonistic updates, so must the lifting solver. Games are checked
/// against the automaton's own bounds and must use colours inside them.
pub fn check_separation(a: &SepAutomaton, games: &[ParityGame], direction: Direction) -> SeparationReport {
    let mut report = SeparationReport::default();
    for (index, game) in games.iter().enumerate() {
        report.games += 1;
        report.vertices += game.len();
        if let Err(e) = check_game(a, game, index, direction, &mut report) {
            report.failures.push(SeparationFailure::Error {
                game: index,
                message: e.to_string(),
            });
        }
    }
    report
}

fn check_game(
    a: &SepAutomaton,
    game: &ParityGame,
    index: usize,
    direction: Direction,
    report: &mut SeparationReport,
) -> Result<(), SolveError> {
    let expected = solvers::zielonka(game);
    let found = match (direction, a.kind()) {
        (Direction::Forward, _) => Some(solvers::solve_product(game, a, solvers::DEFAULT_PRODUCT_CAP)?),
        (Direction::Backward, UpdateKind::Antagonistic) => {
            Some(solvers::solve_lifting(game, a.variant(), a.bounds())?.winning)
        }
        (Direction::Backward, UpdateKind::Basic) => None,
    };
    if let Some(found) = found {
        for v in game.vertices() {
            if expected.winner(v) != found.winner(v) {
                report.failures.push(SeparationFailure::Winner {
                    game: index,
                    vertex: v,
                    expected: expected.winner(v),
                    found: found.winner(v),
                });
            }
        }
    }
    if game.len() <= LASSO_VERTEX_LIMIT {
        for (stem, cycle) in simple_lassos(game) {
            report.lassos += 1;
            let winner = Player::of_colour(cycle.iter().map(|&v| game.colour(v)).max().unwrap());
            let stem_colours = game.play_colours(&stem);
            let cycle_colours = game.play_colours(&cycle);
            let accepted = match direction {
                Direction::Forward => lasso_forward(a, &stem_colours, &cycle_colours)?,
                Direction::Backward => lasso_backward(a, &stem_colours, &cycle_colours)?,
            };
            if accepted != (winner == Player::Even) {
                report.failures.push(SeparationFailure::Lasso {
                    game: index,
                    stem,
                    cycle,
                    expected: winner,
                });
            }
        }
    }
    Ok(())
}

/// All plays of positional strategy profiles: a simple path `stem` followed
/// by a simple cycle `cycle` through the vertex after the stem.
pub fn simple_lassos(game: &ParityGame) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for start in game.vertices() {
        let mut path = vec![start];
        let mut on_path = vec![false; game.len()];
        on_path[start] = true;
        extend_lassos(game, &mut path, &mut on_path, &mut out);
    }
    out
}

fn extend_lassos(game: &ParityGame, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
    let last = *path.last().unwrap();
    for &w in game.successors(last) {
        if on_path[w] {
            let split = path.iter().position(|&x| x == w).unwrap();
            out.push((path[..split].to_vec(), path[split..].to_vec()));
        } else {
            on_path[w] = true;
            path.push(w);
            extend_lassos(game, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Whether some prefix of `stem · cycle^ω` is accepted.
fn lasso_forward(a: &SepAutomaton, stem: &[Colour], cycle: &[Colour]) -> Result<bool, UpdateError> {
    let mut q = a.initial();
    for &d in stem {
        q = a.step(&q, d)?;
        if q.is_won() {
            return Ok(true);
        }
    }
    let mut seen = HashSet::new();
    while seen.insert(q.clone()) {
        for &d in cycle {
            q = a.step(&q, d)?;
            if q.is_won() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Whether the reversal of some prefix of `stem · cycle^ω` is accepted.
///
/// Such a reversal is a suffix of the reversed stem, or a suffix of the
/// reversed cycle followed by whole reversed cycles and the reversed stem.
fn lasso_backward(a: &SepAutomaton, stem: &[Colour], cycle: &[Colour]) -> Result<bool, UpdateError> {
    let rev_stem: Vec<Colour> = stem.iter().rev().copied().collect();
    let rev_cycle: Vec<Colour> = cycle.iter().rev().copied().collect();
    let reads_won = |q: &Witness, word: &[Colour]| -> Result<bool, UpdateError> {
        let mut q = q.clone();
        for &d in word {
            q = a.step(&q, d)?;
            if q.is_won() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    for start in 0..rev_stem.len() {
        if reads_won(&a.initial(), &rev_stem[start..])? {
            return Ok(true);
        }
    }
    for start in 0..rev_cycle.len() {
        let mut q = a.initial();
        for &d in &rev_cycle[start..] {
            q = a.step(&q, d)?;
        }
        let mut seen = HashSet::new();
        loop {
            if q.is_won() || reads_won(&q, &rev_stem)? {
                return Ok(true);
            }
            if !seen.insert(q.clone()) {
                break;
            }
            for &d in &rev_cycle {
                q = a.step(&q, d)?;
                if q.is_won() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Bounds for a game with the default budget, or `None` when the game has no
/// even colour at all (Odd then wins everywhere and no automaton is needed).
pub fn default_bounds(game: &ParityGame, e: Option<u64>) -> Result<Option<Bounds>, WitnessError> {
    let e = e.unwrap_or_else(|| game.even_vertex_count());
    if e == 0 {
        return Ok(None);
    }
    Bounds::for_game(game, Some(e)).map(Some)
}
