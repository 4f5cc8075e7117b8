use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parity_witness::automaton::{default_bounds, SepAutomaton, UpdateKind};
use parity_witness::counts::{table_csv, table_fixed_colours, table_linear_colours, table_range, CountError};
use parity_witness::game::{generate_random, normalize_colours, parse_pgsolver, serialize_pgsolver, Colour, GeneratorConfig, Player};
use parity_witness::solvers::{
    differential, differential_csv, solve_lifting, solve_product, zielonka, SolveError, WinningSets, DEFAULT_PRODUCT_CAP,
};
use parity_witness::update::UpdateVariant;
use parity_witness::witness::{enumerate_statespace, Bounds, StateSpaceKind, WitnessError, DEFAULT_STATESPACE_CAP};

#[derive(Parser)]
#[command(name = "pgwit", version, about = "Solve parity games with witness-based separating automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Product,
    Lifting,
    Zielonka,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Classic,
    Concise,
    #[value(alias = "color")]
    Colour,
}

impl From<Variant> for UpdateVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Classic => UpdateVariant::Classic,
            Variant::Concise => UpdateVariant::Concise,
            Variant::Colour => UpdateVariant::Colour,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Update {
    Basic,
    Antagonistic,
}

impl From<Update> for UpdateKind {
    fn from(u: Update) -> Self {
        match u {
            Update::Basic => UpdateKind::Basic,
            Update::Antagonistic => UpdateKind::Antagonistic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Fixed,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Original,
    Classic,
    Concise,
}

impl From<Space> for StateSpaceKind {
    fn from(s: Space) -> Self {
        match s {
            Space::Original => StateSpaceKind::OriginalLength,
            Space::Classic => StateSpaceKind::ClassicValueCapped,
            Space::Concise => StateSpaceKind::Concise,
        }
    }
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, default_value_t = 8)]
    vertices: usize,
    #[arg(long, default_value_t = 6)]
    max_colour: Colour,
    #[arg(long, default_value_t = 1)]
    min_degree: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
}

impl GenArgs {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig {
            vertices: self.vertices,
            max_colour: self.max_colour,
            min_degree: self.min_degree,
            max_degree: self.max_degree,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game in PGSolver format and list the winner of every vertex.
    Solve {
        file: String,
        #[arg(long, value_enum, default_value = "product")]
        algo: Algo,
        #[arg(long, value_enum, default_value = "colour")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "antagonistic")]
        update: Update,
        /// Even-chain budget; defaults to the number of even-coloured vertices.
        #[arg(long)]
        e: Option<u64>,
        /// Largest product game to build.
        #[arg(long, default_value_t = DEFAULT_PRODUCT_CAP)]
        cap: usize,
    },
    /// Run the automaton on a word of colours and print every step.
    Trace {
        #[arg(long, value_delimiter = ',', required = true)]
        colours: Vec<Colour>,
        #[arg(long, value_enum, default_value = "colour")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "basic")]
        update: Update,
        #[arg(long)]
        e: u64,
        /// Largest colour of the alphabet; defaults to the largest in the word.
        #[arg(long)]
        max_colour: Option<Colour>,
    },
    /// Print statespace sizes as CSV.
    Count {
        #[arg(long, value_enum, conflicts_with_all = ["c", "n_range"])]
        table: Option<Table>,
        #[arg(long, requires = "n_range")]
        c: Option<u64>,
        /// Inclusive range `a..b` of budgets n.
        #[arg(long, requires = "c")]
        n_range: Option<String>,
    },
    /// List every witness of a statespace in ascending order.
    Enumerate {
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        min_colour: Colour,
        #[arg(long)]
        max_colour: Colour,
        #[arg(long, value_enum, default_value = "concise")]
        space: Space,
        #[arg(long, default_value_t = DEFAULT_STATESPACE_CAP)]
        cap: usize,
    },
    /// Generate a random game in PGSolver format.
    Gen {
        #[command(flatten)]
        game: GenArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every solver on random games and print a CSV comparison.
    Diff {
        #[command(flatten)]
        game: GenArgs,
        /// Inclusive range `a..b` of seeds.
        #[arg(long, default_value = "0..99")]
        seeds: String,
    },
}

enum Failure {
    Input(String),
    Cap(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::CapExceeded(_) => Failure::Cap(e.to_string()),
            WitnessError::ZeroBudget | WitnessError::BadColourRange { .. } => Failure::Input(e.to_string()),
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::ProductCapExceeded { .. } => Failure::Cap(e.to_string()),
            SolveError::Witness(w) => w.into(),
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<u64>, Failure> {
    let bad = || Failure::Input(format!("invalid range `{text}`, expected a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(Failure::Input(format!("invalid range `{text}`: start exceeds end")));
    }
    Ok(a..=b)
}

fn solve(file: &str, algo: Algo, variant: Variant, update: Update, e: Option<u64>, cap: usize) -> Result<String, Failure> {
    let text = fs::read_to_string(file).map_err(|err| Failure::Input(format!("{file}: {err}")))?;
    let parsed = parse_pgsolver(&text).map_err(|err| Failure::Input(format!("{file}: {err}")))?;
    let game = normalize_colours(&parsed).game;
    let winning = match algo {
        Algo::Zielonka => zielonka(&game),
        _ => match default_bounds(&game, e)? {
            None => WinningSets::all(game.len(), Player::Odd),
            Some(bounds) => match algo {
                Algo::Product => solve_product(&game, &SepAutomaton::new(bounds, variant.into(), update.into()), cap)?,
                _ => solve_lifting(&game, variant.into(), &bounds)?.winning,
            },
        },
    };
    let mut out = String::new();
    for v in game.vertices() {
        out.push_str(&format!("{}: {}\n", game.id(v), winning.winner(v)));
    }
    let even = winning.region(Player::Even).len();
    out.push_str(&format!("even wins {even} of {}, odd wins {}\n", game.len(), game.len() - even));
    Ok(out)
}

fn trace(colours: &[Colour], variant: Variant, update: Update, e: u64, max_colour: Option<Colour>) -> Result<(String, bool), Failure> {
    let max = max_colour.unwrap_or_else(|| colours.iter().copied().max().unwrap_or(1)).max(1);
    if let Some(&d) = colours.iter().find(|&&d| d == 0 || d > max) {
        return Err(Failure::Input(format!("colour {d} outside 1..={max}")));
    }
    let bounds = Bounds::new(e, 1, max)?;
    let a = SepAutomaton::new(bounds, variant.into(), update.into());
    let run = a.run_word(colours).map_err(|err| Failure::Input(err.to_string()))?;
    let mut out = run.to_string();
    match run.accepted_at() {
        Some(step) => out.push_str(&format!("ACCEPTED at step {step}\n")),
        None => out.push_str("REJECTED\n"),
    }
    Ok((out, run.accepted()))
}

fn count(table: Option<Table>, c: Option<u64>, n_range: Option<&str>) -> Result<String, Failure> {
    let rows = match (table, c, n_range) {
        (Some(Table::Fixed), ..) => table_fixed_colours(),
        (Some(Table::Linear), ..) => table_linear_colours(),
        (None, Some(c), Some(range)) => {
            let range = parse_range(range)?;
            table_range(c, *range.start(), *range.end())?
        }
        _ => return Err(Failure::Input("give --table, or --c together with --n-range".into())),
    };
    Ok(table_csv(&rows))
}

fn run(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Solve {
            file,
            algo,
            variant,
            update,
            e,
            cap,
        } => Ok((solve(&file, algo, variant, update, e, cap)?, 0)),
        Command::Trace {
            colours,
            variant,
            update,
            e,
            max_colour,
        } => {
            let (out, accepted) = trace(&colours, variant, update, e, max_colour)?;
            Ok((out, if accepted { 0 } else { 1 }))
        }
        Command::Count { table, c, n_range } => Ok((count(table, c, n_range.as_deref())?, 0)),
        Command::Enumerate {
            e,
            min_colour,
            max_colour,
            space,
            cap,
        } => {
            let bounds = Bounds::new(e, min_colour, max_colour)?;
            let states = enumerate_statespace(&bounds, space.into(), cap)?;
            Ok((states.iter().map(|s| format!("{s}\n")).collect(), 0))
        }
        Command::Gen { game, seed } => {
            let g = generate_random(&game.config(), seed).map_err(|err| Failure::Input(err.to_string()))?;
            Ok((serialize_pgsolver(&g), 0))
        }
        Command::Diff { game, seeds } => {
            let seeds = parse_range(&seeds)?;
            let rows = differential(*seeds.start()..seeds.end() + 1, &game.config())
                .map_err(|err| Failure::Input(err.to_string()))?;
            let csv = differential_csv(&rows);
            let disagreements = rows.iter().filter(|r| !r.agrees()).count();
            if disagreements > 0 {
                io::stdout().write_all(csv.as_bytes()).ok();
                return Err(Failure::Invariant(format!("{disagreements} games with disagreeing solvers")));
            }
            Ok((csv, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, code)) => {
            if io::stdout().write_all(out.as_bytes()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("pgwit: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
