//! Parity games: representation, the PGSolver exchange format, colour
//! normalisation, seeded random generation and even-chain semantics of plays.

pub(crate) mod chain;
mod pgsolver;
mod random;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use chain::{is_even_chain, longest_even_chain};
pub use pgsolver::{parse_pgsolver, serialize_pgsolver, ParseError};
pub use random::{generate_random, GeneratorConfig};

/// A vertex colour (priority). Normalised games only use colours `>= 1`.
pub type Colour = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player favoured by a colour of this parity.
    pub fn of_colour(colour: Colour) -> Player {
        if colour % 2 == 0 {
            Player::Even
        } else {
            Player::Odd
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Even => f.write_str("Even"),
            Player::Odd => f.write_str("Odd"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("game has no vertices")]
    Empty,
    #[error("vertex {0} has no outgoing edge")]
    NoSuccessor(usize),
    #[error("edge {from} -> {to} leaves the vertex range")]
    DanglingEdge { from: usize, to: usize },
    #[error("vertex vectors have inconsistent lengths")]
    Inconsistent,
    #[error("invalid generator settings: {0}")]
    InvalidGenerator(String),
}

/// A finite parity game with dense vertex indices `0..n`.
///
/// The original vertex identifiers and names from a PGSolver file are kept
/// as metadata so that output can refer to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    colour: Vec<Colour>,
    succ: Vec<Vec<usize>>,
    ids: Vec<usize>,
    names: Vec<Option<String>>,
}

impl ParityGame {
    /// Builds a game with identifiers `0..n` and no names.
    pub fn new(owner: Vec<Player>, colour: Vec<Colour>, succ: Vec<Vec<usize>>) -> Result<Self, GameError> {
        let ids = (0..owner.len()).collect();
        let names = vec![None; owner.len()];
        Self::with_metadata(owner, colour, succ, ids, names)
    }

    pub fn with_metadata(
        owner: Vec<Player>,
        colour: Vec<Colour>,
        succ: Vec<Vec<usize>>,
        ids: Vec<usize>,
        names: Vec<Option<String>>,
    ) -> Result<Self, GameError> {
        let n = owner.len();
        if n == 0 {
            return Err(GameError::Empty);
        }
        if colour.len() != n || succ.len() != n || ids.len() != n || names.len() != n {
            return Err(GameError::Inconsistent);
        }
        for (v, targets) in succ.iter().enumerate() {
            if targets.is_empty() {
                return Err(GameError::NoSuccessor(v));
            }
            if let Some(&to) = targets.iter().find(|&&w| w >= n) {
                return Err(GameError::DanglingEdge { from: v, to });
            }
        }
        Ok(ParityGame {
            owner,
            colour,
            succ,
            ids,
            names,
        })
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn colour(&self, v: usize) -> Colour {
        self.colour[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn id(&self, v: usize) -> usize {
        self.ids[v]
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names[v].as_deref()
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colour
    }

    /// Predecessor lists, computed on demand.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for v in self.vertices() {
            for &w in &self.succ[v] {
                pred[w].push(v);
            }
        }
        pred
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn min_colour(&self) -> Colour {
        self.colour.iter().copied().min().unwrap_or(0)
    }

    pub fn max_colour(&self) -> Colour {
        self.colour.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices with an even colour; the default even-chain budget.
    pub fn even_vertex_count(&self) -> u64 {
        self.colour.iter().filter(|&&c| c % 2 == 0).count() as u64
    }

    /// Whether the colour range starts at 1 or 2 with no gap in the
    /// used parities, i.e. whether [`normalize_colours`] would be a no-op.
    pub fn is_normalized(&self) -> bool {
        normalize_colours(self).mapping.iter().all(|(old, new)| old == new)
    }

    /// Checks the structural invariants: non-empty, consistent vectors, every
    /// vertex has a successor and every edge stays in range.
    pub fn validate(&self) -> Result<(), GameError> {
        Self::with_metadata(
            self.owner.clone(),
            self.colour.clone(),
            self.succ.clone(),
            self.ids.clone(),
            self.names.clone(),
        )
        .map(|_| ())
    }

    /// Colour sequence of a finite play prefix.
    pub fn play_colours(&self, play: &[usize]) -> Vec<Colour> {
        play.iter().map(|&v| self.colour[v]).collect()
    }

    /// Whether consecutive vertices of `play` are joined by edges.
    pub fn is_play(&self, play: &[usize]) -> bool {
        play.iter().all(|&v| v < self.len()) && play.windows(2).all(|w| self.succ[w[0]].contains(&w[1]))
    }

    fn with_colours(&self, colour: Vec<Colour>) -> ParityGame {
        ParityGame {
            colour,
            ..self.clone()
        }
    }
}

/// Result of [`normalize_colours`]: the rewritten game and the colour map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub game: ParityGame,
    /// `(old, new)` pairs in ascending order of `old`.
    pub mapping: Vec<(Colour, Colour)>,
}

/// Maps the distinct colours of `game`, in ascending order, onto the smallest
/// strictly increasing sequence that preserves every colour's parity and
/// starts at 1 (odd) or 2 (even).
///
/// The relative order and parity of all colours is kept, so the winner of
/// every play and therefore every winning region is unchanged.
pub fn normalize_colours(game: &ParityGame) -> Normalized {
    let mut distinct: Vec<Colour> = game.colour.clone();
    distinct.sort_unstable();
    distinct.dedup();

    let mut mapping = Vec::with_capacity(distinct.len());
    let mut last: Colour = 0;
    for &old in &distinct {
        let mut new = last + 1;
        if new % 2 != old % 2 {
            new += 1;
        }
        mapping.push((old, new));
        last = new;
    }
    let table: BTreeMap<Colour, Colour> = mapping.iter().copied().collect();
    let colours = game.colour.iter().map(|c| table[c]).collect();
    Normalized {
        game: game.with_colours(colours),
        mapping,
    }
}
