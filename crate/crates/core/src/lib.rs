//! Parity games and the witness-based separating automata that solve them.

pub mod automaton;
pub mod counts;
pub mod game;
pub mod semantics;
pub mod solvers;
pub mod update;
pub mod witness;
