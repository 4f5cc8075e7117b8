//! Reader and writer for the PGSolver text format:
//!
//! ```text
//! parity <max-id>;
//! <id> <priority> <owner> <succ>(,<succ>)* ["<name>"];
//! ```
//!
//! Statements are `;`-terminated and may share a line. Owner `0` is Even and
//! `1` is Odd.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Colour, GameError, ParityGame, Player};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex {id} has no successor")]
    NoSuccessor { line: usize, id: usize },
    #[error("line {line}: vertex {id} has undeclared successor {succ}")]
    DanglingSuccessor { line: usize, id: usize, succ: usize },
    #[error("line {line}: vertex {id} declared twice")]
    DuplicateVertex { line: usize, id: usize },
    #[error("file declares no vertices")]
    Empty,
}

impl ParseError {
    fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

struct Statement {
    line: usize,
    body: String,
    name: Option<String>,
}

fn split_statements(text: &str) -> Result<Vec<Statement>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut start_line = None;
    let mut body = String::new();
    let mut name: Option<String> = None;
    let mut in_name = false;

    for ch in text.chars() {
        if in_name {
            match ch {
                '"' => in_name = false,
                '\n' => return Err(ParseError::syntax(line, "unterminated vertex name")),
                _ => name.get_or_insert_with(String::new).push(ch),
            }
            continue;
        }
        match ch {
            ';' => {
                let trimmed = body.trim();
                if trimmed.is_empty() && name.is_none() {
                    return Err(ParseError::syntax(line, "empty statement"));
                }
                out.push(Statement {
                    line: start_line.unwrap_or(line),
                    body: trimmed.to_string(),
                    name: name.take(),
                });
                body.clear();
                start_line = None;
            }
            '"' => {
                if name.is_some() {
                    return Err(ParseError::syntax(line, "vertex has two names"));
                }
                in_name = true;
                name = Some(String::new());
                start_line.get_or_insert(line);
            }
            _ => {
                if name.is_some() && !ch.is_whitespace() {
                    return Err(ParseError::syntax(line, "text after vertex name"));
                }
                if !ch.is_whitespace() {
                    start_line.get_or_insert(line);
                }
                body.push(ch);
            }
        }
        if ch == '\n' {
            line += 1;
        }
    }
    if in_name {
        return Err(ParseError::syntax(line, "unterminated vertex name"));
    }
    if !body.trim().is_empty() || name.is_some() {
        return Err(ParseError::syntax(start_line.unwrap_or(line), "missing ';'"));
    }
    Ok(out)
}

fn number(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("expected {what}, found `{token}`")))
}

struct RawVertex {
    line: usize,
    colour: Colour,
    owner: Player,
    succ: Vec<usize>,
    name: Option<String>,
}

/// Parses a PGSolver game. Vertices are re-indexed densely in ascending id
/// order; successor lists are sorted and deduplicated.
pub fn parse_pgsolver(text: &str) -> Result<ParityGame, ParseError> {
    let statements = split_statements(text)?;
    let mut vertices: BTreeMap<usize, RawVertex> = BTreeMap::new();
    let mut max_id: Option<(usize, usize)> = None;

    for (index, st) in statements.into_iter().enumerate() {
        let line = st.line;
        let mut head = st.body.split_whitespace();
        let first = head.next().unwrap_or("");
        if first == "parity" {
            if index != 0 || st.name.is_some() {
                return Err(ParseError::syntax(line, "`parity` header must come first"));
            }
            let rest: Vec<&str> = head.collect();
            if rest.len() != 1 {
                return Err(ParseError::syntax(line, "header expects exactly one number"));
            }
            max_id = Some((number(line, rest[0], "maximal vertex id")?, line));
            continue;
        }

        let tokens: Vec<&str> = st.body.split_whitespace().collect();
        if tokens.len() < 3 {
            return Err(ParseError::syntax(line, "expected `<id> <priority> <owner> <successors>`"));
        }
        let id = number(line, tokens[0], "vertex id")?;
        let colour = number(line, tokens[1], "priority")? as Colour;
        let owner = match tokens[2] {
            "0" => Player::Even,
            "1" => Player::Odd,
            other => return Err(ParseError::syntax(line, format!("owner must be 0 or 1, found `{other}`"))),
        };
        let succ_text: String = tokens[3..].concat();
        if succ_text.is_empty() {
            return Err(ParseError::NoSuccessor { line, id });
        }
        let mut succ = succ_text
            .split(',')
            .map(|t| number(line, t, "successor id"))
            .collect::<Result<Vec<_>, _>>()?;
        succ.sort_unstable();
        succ.dedup();
        if vertices.contains_key(&id) {
            return Err(ParseError::DuplicateVertex { line, id });
        }
        vertices.insert(
            id,
            RawVertex {
                line,
                colour,
                owner,
                succ,
                name: st.name,
            },
        );
    }

    if vertices.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some((max, line)) = max_id {
        if let Some((&id, _)) = vertices.iter().next_back().filter(|(&id, _)| id > max) {
            return Err(ParseError::syntax(line, format!("vertex {id} exceeds declared maximum {max}")));
        }
    }

    let index: BTreeMap<usize, usize> = vertices.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut owner = Vec::with_capacity(vertices.len());
    let mut colour = Vec::with_capacity(vertices.len());
    let mut succ = Vec::with_capacity(vertices.len());
    let mut ids = Vec::with_capacity(vertices.len());
    let mut names = Vec::with_capacity(vertices.len());
    for (&id, raw) in &vertices {
        let mut targets = Vec::with_capacity(raw.succ.len());
        for s in &raw.succ {
            match index.get(s) {
                Some(&t) => targets.push(t),
                None => {
                    return Err(ParseError::DanglingSuccessor {
                        line: raw.line,
                        id,
                        succ: *s,
                    })
                }
            }
        }
        owner.push(raw.owner);
        colour.push(raw.colour);
        succ.push(targets);
        ids.push(id);
        names.push(raw.name.clone());
    }

    ParityGame::with_metadata(owner, colour, succ, ids, names).map_err(|e| match e {
        GameError::Empty => ParseError::Empty,
        other => ParseError::syntax(0, other.to_string()),
    })
}

/// Writes `game` in PGSolver format: a `parity` header, then one
/// `;`-terminated vertex per line with successors in ascending order and LF
/// line endings.
pub fn serialize_pgsolver(game: &ParityGame) -> String {
    let mut out = String::new();
    let max_id = game.vertices().map(|v| game.id(v)).max().unwrap_or(0);
    let _ = writeln!(out, "parity {max_id};");
    for v in game.vertices() {
        let mut succ: Vec<usize> = game.successors(v).iter().map(|&w| game.id(w)).collect();
        succ.sort_unstable();
        succ.dedup();
        let succ: Vec<String> = succ.iter().map(usize::to_string).collect();
        let owner = match game.owner(v) {
            Player::Even => 0,
            Player::Odd => 1,
        };
        let _ = write!(out, "{} {} {} {}", game.id(v), game.colour(v), owner, succ.join(","));
        if let Some(name) = game.name(v) {
            let _ = write!(out, " \"{name}\"");
        }
        out.push_str(";\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_self_loop() {
        let g = parse_pgsolver("parity 1; 0 2 0 0;").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.owner(0), Player::Even);
        assert_eq!(g.colour(0), 2);
        assert_eq!(g.successors(0), &[0]);
    }

    #[test]
    fn two_vertex_cycle_without_header() {
        let g = parse_pgsolver("0 1 1 1; 1 2 0 0;").unwrap();
        assert_eq!(g.colours(), &[1, 2]);
        assert_eq!(g.owner(0), Player::Odd);
        assert_eq!(g.successors(0), &[1]);
        assert_eq!(g.successors(1), &[0]);
    }

    #[test]
    fn undeclared_successor() {
        let err = parse_pgsolver("0 2 0 0,1;").unwrap_err();
        assert_eq!(err, ParseError::DanglingSuccessor { line: 1, id: 0, succ: 1 });
    }

    #[test]
    fn missing_successor() {
        let err = parse_pgsolver("parity 0;\n0 2 0;\n").unwrap_err();
        assert_eq!(err, ParseError::NoSuccessor { line: 2, id: 0 });
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse_pgsolver("parity 1;\n0 2 0 1;\n1 x 1 0;\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err:?}");
        let err = parse_pgsolver("parity 1;\n0 2 0 0;\n1 2 1 0").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn bad_owner() {
        assert!(matches!(
            parse_pgsolver("0 2 2 0;"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn names_and_sparse_ids() {
        let text = "parity 7;\n7 3 1 2 \"b; c\";\n2 4 0 7,2 \"a\";\n";
        let g = parse_pgsolver(text).unwrap();
        assert_eq!(g.id(0), 2);
        assert_eq!(g.id(1), 7);
        assert_eq!(g.name(0), Some("a"));
        assert_eq!(g.name(1), Some("b; c"));
        assert_eq!(g.successors(0), &[0, 1]);
        assert_eq!(
            serialize_pgsolver(&g),
            "parity 7;\n2 4 0 2,7 \"a\";\n7 3 1 2 \"b; c\";\n"
        );
    }

    #[test]
    fn header_bound_is_checked() {
        assert!(matches!(
            parse_pgsolver("parity 0; 1 2 0 1;"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn duplicate_vertex() {
        assert_eq!(
            parse_pgsolver("0 2 0 0;\n0 1 0 0;").unwrap_err(),
            ParseError::DuplicateVertex { line: 2, id: 0 }
        );
    }

    #[test]
    fn serializer_sorts_successors() {
        let g = parse_pgsolver("0 1 0 2,1,0; 1 2 1 0; 2 3 0 2;").unwrap();
        assert_eq!(
            serialize_pgsolver(&g),
            "parity 2;\n0 1 0 0,1,2;\n1 2 1 0;\n2 3 0 2;\n"
        );
    }
}
