//! Winning regions by product reachability, by lifting the antagonistic
//! update to a least fixpoint, and by the recursive algorithm (the oracle),
//! plus a differential harness that runs all of them on random games.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::ops::Range;

use rayon::prelude::*;
use thiserror::Error;

use crate::automaton::{default_bounds, SepAutomaton, UpdateKind};
use crate::game::{generate_random, Colour, GameError, GeneratorConfig, ParityGame, Player};
use crate::update::{UpdateError, UpdateVariant};
use crate::witness::{Bounds, Witness, WitnessError};

/// Largest product game [`solve_product`] builds by default.
pub const DEFAULT_PRODUCT_CAP: usize = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("product game exceeds {cap} states")]
    ProductCapExceeded { cap: usize },
    #[error("vertex {vertex} has colour {colour} outside the automaton's colours")]
    ColourOutsideBounds { vertex: usize, colour: Colour },
    #[error(transparent)]
    Update(#[from] UpdateError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningSets {
    even: Vec<bool>,
}

impl WinningSets {
    pub fn from_even_mask(even: Vec<bool>) -> Self {
        WinningSets { even }
    }

    pub fn all(n: usize, player: Player) -> Self {
        WinningSets {
            even: vec![player == Player::Even; n],
        }
    }

    pub fn winner(&self, v: usize) -> Player {
        if self.even[v] {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn len(&self) -> usize {
        self.even.len()
    }

    pub fn is_empty(&self) -> bool {
        self.even.is_empty()
    }

    pub fn even_mask(&self) -> &[bool] {
        &self.even
    }

    pub fn region(&self, player: Player) -> Vec<usize> {
        (0..self.even.len()).filter(|&v| self.winner(v) == player).collect()
    }

    /// One character per vertex: `1` for Even, `0` for Odd.
    pub fn bitmap(&self) -> String {
        self.even.iter().map(|&e| if e { '1' } else { '0' }).collect()
    }
}

/// Attractor on an explicit arena restricted to the `alive` vertices.
fn attract<'a>(
    owner: &dyn Fn(usize) -> Player,
    succ: &dyn Fn(usize) -> &'a [usize],
    pred: &[Vec<usize>],
    alive: &[bool],
    target: &[bool],
    player: Player,
) -> Vec<bool> {
    let n = alive.len();
    let mut inside: Vec<bool> = (0..n).map(|v| alive[v] && target[v]).collect();
    let mut remaining: Vec<usize> = (0..n)
        .map(|v| if alive[v] { succ(v).iter().filter(|&&w| alive[w]).count() } else { 0 })
        .collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| inside[v]).collect();
    while let Some(w) = queue.pop_front() {
        for &v in &pred[w] {
            if !alive[v] || inside[v] {
                continue;
            }
            remaining[v] -= 1;
            if owner(v) == player || remaining[v] == 0 {
                inside[v] = true;
                queue.push_back(v);
            }
        }
    }
    inside
}

/// The vertices from which `player` can force a visit to `target`.
pub fn attractor(game: &ParityGame, target: &[usize], player: Player) -> Vec<usize> {
    let pred = game.predecessors();
    let alive = vec![true; game.len()];
    let mut mask = vec![false; game.len()];
    for &t in target {
        mask[t] = true;
    }
    let inside = attract(&|v| game.owner(v), &|v| game.successors(v), &pred, &alive, &mask, player);
    (0..game.len()).filter(|&v| inside[v]).collect()
}

/// Exact winning regions by the recursive attractor decomposition.
pub fn zielonka(game: &ParityGame) -> WinningSets {
    zielonka_counted(game).0
}

/// [`zielonka`] together with the number of recursive calls.
pub fn zielonka_counted(game: &ParityGame) -> (WinningSets, u64) {
    let pred = game.predecessors();
    let mut calls = 0;
    let alive = vec![true; game.len()];
    let even = zielonka_rec(game, &pred, &alive, &mut calls);
    (WinningSets { even }, calls)
}

/// Returns the Even region of the subgame on `alive` (Odd wins the rest).
fn zielonka_rec(game: &ParityGame, pred: &[Vec<usize>], alive: &[bool], calls: &mut u64) -> Vec<bool> {
    *calls += 1;
    let n = game.len();
    let Some(top) = (0..n).filter(|&v| alive[v]).map(|v| game.colour(v)).max() else {
        return vec![false; n];
    };
    let player = Player::of_colour(top);
    let attr = |alive: &[bool], target: &[bool], p: Player| {
        attract(&|v| game.owner(v), &|v| game.successors(v), pred, alive, target, p)
    };
    let won_by = |even: &[bool], p: Player, v: usize| alive[v] && (even[v] == (p == Player::Even));

    let top_vertices: Vec<bool> = (0..n).map(|v| alive[v] && game.colour(v) == top).collect();
    let a = attr(alive, &top_vertices, player);
    let rest: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
    let sub = zielonka_rec(game, pred, &rest, calls);
    let opponent_sub: Vec<bool> = (0..n).map(|v| rest[v] && won_by(&sub, player.opponent(), v)).collect();
    if !opponent_sub.iter().any(|&x| x) {
        return (0..n).map(|v| alive[v] && player == Player::Even).collect();
    }
    let b = attr(alive, &opponent_sub, player.opponent());
    let rest: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
    let sub = zielonka_rec(game, pred, &rest, calls);
    (0..n)
        .map(|v| {
            if !alive[v] {
                false
            } else if b[v] {
                player.opponent() == Player::Even
            } else {
                sub[v]
            }
        })
        .collect()
}

fn check_colours(game: &ParityGame, bounds: &Bounds) -> Result<(), SolveError> {
    match game.vertices().find(|&v| !bounds.contains(game.colour(v))) {
        Some(vertex) => Err(SolveError::ColourOutsideBounds {
            vertex,
            colour: game.colour(vertex),
        }),
        None => Ok(()),
    }
}

/// Winning regions and the number of product states explored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductResult {
    pub winning: WinningSets,
    pub states: usize,
}

/// Solves the reachability game on `game × a`: from `(v, q)` the owner of `v`
/// moves to some `(w, step(q, colour(v)))`, and Even wins `v` iff she can
/// force `(v, initial)` into `Won`.
pub fn solve_product(game: &ParityGame, a: &SepAutomaton, cap: usize) -> Result<WinningSets, SolveError> {
    solve_product_counted(game, a, cap).map(|r| r.winning)
}

pub fn solve_product_counted(game: &ParityGame, a: &SepAutomaton, cap: usize) -> Result<ProductResult, SolveError> {
    check_colours(game, a.bounds())?;
    const TARGET: usize = 0;
    let mut index: HashMap<(usize, Witness), usize> = HashMap::new();
    let mut nodes: Vec<(usize, Witness)> = vec![(usize::MAX, Witness::Won)];
    let mut succ: Vec<Vec<usize>> = vec![vec![TARGET]];
    let mut intern = |v: usize, q: Witness, nodes: &mut Vec<(usize, Witness)>| -> Result<usize, SolveError> {
        if q.is_won() {
            return Ok(TARGET);
        }
        if let Some(&id) = index.get(&(v, q.clone())) {
            return Ok(id);
        }
        if nodes.len() >= cap {
            return Err(SolveError::ProductCapExceeded { cap });
        }
        let id = nodes.len();
        index.insert((v, q.clone()), id);
        nodes.push((v, q));
        Ok(id)
    };
    let starts: Vec<usize> = game
        .vertices()
        .map(|v| intern(v, a.initial(), &mut nodes))
        .collect::<Result<_, _>>()?;
    let mut next = 1;
    while next < nodes.len() {
        let (v, q) = nodes[next].clone();
        let q2 = a.step(&q, game.colour(v))?;
        let targets = game
            .successors(v)
            .iter()
            .map(|&w| intern(w, q2.clone(), &mut nodes))
            .collect::<Result<Vec<_>, _>>()?;
        succ.push(targets);
        next += 1;
    }
    let mut pred = vec![Vec::new(); nodes.len()];
    for (x, targets) in succ.iter().enumerate() {
        for &y in targets {
            pred[y].push(x);
        }
    }
    let owner = |x: usize| if x == TARGET { Player::Even } else { game.owner(nodes[x].0) };
    let alive = vec![true; nodes.len()];
    let mut target = vec![false; nodes.len()];
    target[TARGET] = true;
    let won = attract(&owner, &|x| &succ[x], &pred, &alive, &target, Player::Even);
    Ok(ProductResult {
        winning: WinningSets {
            even: starts.iter().map(|&s| won[s]).collect(),
        },
        states: nodes.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingResult {
    pub winning: WinningSets,
    pub measure: Vec<Witness>,
    /// Successful lifts, i.e. strict increases of some `μ(v)`.
    pub lifts: u64,
    /// Vertex evaluations, successful or not.
    pub evaluations: u64,
}

/// Least fixpoint of `μ(v) ⊒ best over (v, w) of au(μ(w), colour(v))` (the
/// maximum for Even's vertices, the minimum for Odd's), reached by lifting
/// from all-blank measures with a worklist. Even wins exactly where `μ = Won`.
pub fn solve_lifting(game: &ParityGame, variant: UpdateVariant, bounds: &Bounds) -> Result<LiftingResult, SolveError> {
    check_colours(game, bounds)?;
    let a = SepAutomaton::new(*bounds, variant, UpdateKind::Antagonistic);
    let n = game.len();
    let pred = game.predecessors();
    let mut measure = vec![a.initial(); n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<usize> = game.vertices().collect();
    let (mut lifts, mut evaluations) = (0, 0);
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        evaluations += 1;
        let d = game.colour(v);
        let mut best: Option<Witness> = None;
        for &w in game.successors(v) {
            let u = a.step(&measure[w], d)?;
            best = Some(match best {
                None => u,
                Some(b) if game.owner(v) == Player::Even => b.max(u),
                Some(b) => b.min(u),
            });
        }
        let best = best.expect("every vertex has a successor");
        if best > measure[v] {
            measure[v] = best;
            lifts += 1;
            for &p in &pred[v] {
                if !queued[p] {
                    queued[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }
    Ok(LiftingResult {
        winning: WinningSets {
            even: measure.iter().map(Witness::is_won).collect(),
        },
        measure,
        lifts,
        evaluations,
    })
}

/// A solver configuration run by the differential harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Zielonka,
    Product(UpdateVariant, UpdateKind),
    Lifting(UpdateVariant),
}

impl Method {
    pub fn all() -> Vec<Method> {
        let mut out = vec![Method::Zielonka];
        for v in UpdateVariant::ALL {
            for k in [UpdateKind::Basic, UpdateKind::Antagonistic] {
                out.push(Method::Product(v, k));
            }
        }
        out.extend(UpdateVariant::ALL.map(Method::Lifting));
        out
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Zielonka => f.write_str("zielonka"),
            Method::Product(v, k) => write!(f, "product_{v}_{k}"),
            Method::Lifting(v) => write!(f, "lifting_{v}"),
        }
    }
}

/// Outcome of one method on one game: winners and a method-specific step
/// count (recursive calls, product states, or lifts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodRun {
    pub method: Method,
    pub winning: Result<WinningSets, String>,
    pub steps: u64,
}

/// Runs one method. With no even colour in the game (budget 0) every
/// automaton-based method reports Odd everywhere without building anything.
pub fn run_method(game: &ParityGame, method: Method, e: Option<u64>) -> MethodRun {
    let outcome = (|| -> Result<(WinningSets, u64), SolveError> {
        if method == Method::Zielonka {
            return Ok(zielonka_counted(game));
        }
        let Some(bounds) = default_bounds(game, e)? else {
            return Ok((WinningSets::all(game.len(), Player::Odd), 0));
        };
        match method {
            Method::Zielonka => unreachable!(),
            Method::Product(variant, kind) => {
                let a = SepAutomaton::new(bounds, variant, kind);
                let r = solve_product_counted(game, &a, DEFAULT_PRODUCT_CAP)?;
                Ok((r.winning, r.states as u64))
            }
            Method::Lifting(variant) => {
                let r = solve_lifting(game, variant, &bounds)?;
                Ok((r.winning, r.lifts))
            }
        }
    })();
    match outcome {
        Ok((winning, steps)) => MethodRun {
            method,
            winning: Ok(winning),
            steps,
        },
        Err(e) => MethodRun {
            method,
            winning: Err(e.to_string()),
            steps: 0,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRow {
    pub seed: u64,
    pub vertices: usize,
    pub max_colour: Colour,
    pub runs: Vec<MethodRun>,
}

impl DiffRow {
    /// Every method succeeded and matched the oracle (the first run).
    pub fn agrees(&self) -> bool {
        let Some(Ok(oracle)) = self.runs.first().map(|r| &r.winning) else {
            return false;
        };
        self.runs.iter().all(|r| r.winning.as_ref() == Ok(oracle))
    }

    pub fn steps(&self, method: Method) -> Option<u64> {
        self.runs.iter().find(|r| r.method == method).map(|r| r.steps)
    }
}

/// Generates one game per seed and runs every [`Method`] on it, in parallel
/// across games. Rows come back in seed order.
pub fn differential(seeds: Range<u64>, config: &GeneratorConfig) -> Result<Vec<DiffRow>, GameError> {
    config.validate()?;
    let methods = Method::all();
    Ok(seeds
        .into_par_iter()
        .map(|seed| {
            let game = generate_random(config, seed).expect("validated configuration");
            DiffRow {
                seed,
                vertices: game.len(),
                max_colour: game.max_colour(),
                runs: methods.iter().map(|&m| run_method(&game, m, None)).collect(),
            }
        })
        .collect())
}

/// CSV with one row per game: seed, size, colours, a winner bitmap and a step
/// count per method, and whether all methods agree.
pub fn differential_csv(rows: &[DiffRow]) -> String {
    let methods = Method::all();
    let mut out = String::from("seed,n,colours");
    for m in &methods {
        write!(out, ",{m}_winners").unwrap();
    }
    for m in &methods {
        write!(out, ",{m}_steps").unwrap();
    }
    out.push_str(",agree\n");
    for row in rows {
        write!(out, "{},{},{}", row.seed, row.vertices, row.max_colour).unwrap();
        for r in &row.runs {
            match &r.winning {
                Ok(w) => write!(out, ",{}", w.bitmap()).unwrap(),
                Err(_) => out.push_str(",error"),
            }
        }
        for r in &row.runs {
            write!(out, ",{}", r.steps).unwrap();
        }
        writeln!(out, ",{}", row.agrees()).unwrap();
    }
    out
}
