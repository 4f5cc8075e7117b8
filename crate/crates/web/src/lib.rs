//! wasm-bindgen entry points for the browser demo. Every function takes plain
//! strings and numbers and returns a JSON document, either the result or
//! `{"error": "..."}`.

use parity_witness::automaton::{default_bounds, SepAutomaton, UpdateKind};
use parity_witness::counts::{table_range, TableRow};
use parity_witness::game::{normalize_colours, parse_pgsolver, Colour, Player};
use parity_witness::solvers::{solve_lifting, solve_product, zielonka, WinningSets, DEFAULT_PRODUCT_CAP};
use parity_witness::update::UpdateVariant;
use parity_witness::witness::Bounds;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest count series served in one call.
const MAX_RANGE: u64 = 4096;

#[derive(Serialize)]
struct Step {
    colour: Colour,
    state: String,
}

#[derive(Serialize)]
struct TraceOut {
    initial: String,
    steps: Vec<Step>,
    accepted_at: Option<usize>,
}

#[derive(Serialize)]
struct CountOut {
    n: u64,
    old: String,
    jl: String,
    new: String,
    new_over_jl: f64,
}

#[derive(Serialize)]
struct VertexOut {
    id: usize,
    name: Option<String>,
    colour: Colour,
    winner: String,
}

#[derive(Serialize)]
struct SolveOut {
    vertices: Vec<VertexOut>,
    even: usize,
    odd: usize,
}

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v),
        Err(e) => serde_json::to_string(&serde_json::json!({ "error": e })),
    }
    .expect("plain data serialises")
}

fn parse_colours(text: &str) -> Result<Vec<Colour>, String> {
    text.split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("`{s}` is not a colour")))
        .collect()
}

fn trace(colours: &str, variant: &str, update: &str, e: u64, max_colour: Colour) -> Result<TraceOut, String> {
    let word = parse_colours(colours)?;
    if word.is_empty() {
        return Err("enter at least one colour".into());
    }
    let variant: UpdateVariant = variant.parse()?;
    let kind: UpdateKind = update.parse()?;
    let max = if max_colour == 0 { word.iter().copied().max().unwrap_or(1) } else { max_colour };
    if let Some(d) = word.iter().find(|&&d| d == 0 || d > max) {
        return Err(format!("colour {d} outside 1..={max}"));
    }
    let bounds = Bounds::new(e, 1, max).map_err(|e| e.to_string())?;
    let run = SepAutomaton::new(bounds, variant, kind).run_word(&word).map_err(|e| e.to_string())?;
    Ok(TraceOut {
        initial: run.states[0].to_string(),
        steps: word.iter().zip(&run.states[1..]).map(|(&colour, s)| Step { colour, state: s.to_string() }).collect(),
        accepted_at: run.accepted_at(),
    })
}

fn counts(c: u64, from: u64, to: u64) -> Result<Vec<CountOut>, String> {
    if to.saturating_sub(from) >= MAX_RANGE {
        return Err(format!("at most {MAX_RANGE} rows at a time"));
    }
    let rows = table_range(c, from, to).map_err(|e| e.to_string())?;
    Ok(rows
        .iter()
        .map(|r: &TableRow| CountOut {
            n: r.n,
            old: r.old.to_string(),
            jl: r.jl.to_string(),
            new: r.new.to_string(),
            new_over_jl: r.new_over_jl(),
        })
        .collect())
}

fn solve(text: &str, algo: &str, variant: &str, update: &str) -> Result<SolveOut, String> {
    let parsed = parse_pgsolver(text).map_err(|e| e.to_string())?;
    let game = normalize_colours(&parsed).game;
    let variant: UpdateVariant = variant.parse()?;
    let kind: UpdateKind = update.parse()?;
    let winning = match algo {
        "zielonka" => zielonka(&game),
        "product" | "lifting" => match default_bounds(&game, None).map_err(|e| e.to_string())? {
            None => WinningSets::all(game.len(), Player::Odd),
            Some(bounds) if algo == "product" => {
                let a = SepAutomaton::new(bounds, variant, kind);
                solve_product(&game, &a, DEFAULT_PRODUCT_CAP).map_err(|e| e.to_string())?
            }
            Some(bounds) => solve_lifting(&game, variant, &bounds).map_err(|e| e.to_string())?.winning,
        },
        other => return Err(format!("unknown algorithm `{other}`")),
    };
    let even = winning.region(Player::Even).len();
    Ok(SolveOut {
        vertices: game
            .vertices()
            .map(|v| VertexOut {
                id: game.id(v),
                name: game.name(v).map(str::to_owned),
                colour: parsed.colour(v),
                winner: winning.winner(v).to_string(),
            })
            .collect(),
        even,
        odd: game.len() - even,
    })
}

/// Runs the automaton on a comma-separated word. `max_colour = 0` takes the
/// largest colour of the word.
#[wasm_bindgen]
pub fn trace_word(colours: &str, variant: &str, update: &str, e: u64, max_colour: Colour) -> String {
    respond(trace(colours, variant, update, e, max_colour))
}

/// Statespace sizes for budgets `from..=to` with `c` colours.
#[wasm_bindgen]
pub fn count_series(c: u64, from: u64, to: u64) -> String {
    respond(counts(c, from, to))
}

/// Solves a game given in PGSolver format.
#[wasm_bindgen]
pub fn solve_game(text: &str, algo: &str, variant: &str, update: &str) -> String {
    respond(solve(text, algo, variant, update))
}
