use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Colour, GameError, ParityGame, Player};

/// Settings for [`generate_random`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub vertices: usize,
    pub max_colour: Colour,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), GameError> {
        if self.vertices == 0 {
            return Err(GameError::InvalidGenerator("vertex count must be at least 1".into()));
        }
        if self.max_colour == 0 {
            return Err(GameError::InvalidGenerator("max colour must be at least 1".into()));
        }
        if self.min_degree == 0 || self.min_degree > self.max_degree || self.max_degree > self.vertices {
            return Err(GameError::InvalidGenerator(format!(
                "out-degree range {}..={} must lie within 1..={}",
                self.min_degree, self.max_degree, self.vertices
            )));
        }
        Ok(())
    }
}

/// Generates a game with uniformly drawn owners, colours in
/// `1..=max_colour`, and per-vertex out-degree drawn from the configured
/// range with distinct successors. The result depends only on `config` and
/// `seed`.
pub fn generate_random(config: &GeneratorConfig, seed: u64) -> Result<ParityGame, GameError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = config.vertices;
    let mut owner = Vec::with_capacity(n);
    let mut colour = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    for _ in 0..n {
        owner.push(if rng.gen_bool(0.5) { Player::Even } else { Player::Odd });
        colour.push(rng.gen_range(1..=config.max_colour));
        let degree = rng.gen_range(config.min_degree..=config.max_degree);
        let mut targets = sample(&mut rng, n, degree).into_vec();
        targets.sort_unstable();
        succ.push(targets);
    }
    ParityGame::new(owner, colour, succ)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(vertices: usize, max_colour: Colour, min_degree: usize, max_degree: usize) -> GeneratorConfig {
        GeneratorConfig {
            vertices,
            max_colour,
            min_degree,
            max_degree,
        }
    }

    #[test]
    fn single_vertex_is_a_self_loop() {
        let g = generate_random(&config(1, 2, 1, 1), 7).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.successors(0), &[0]);
    }

    #[test]
    fn deterministic_in_seed() {
        let c = config(12, 6, 1, 3);
        assert_eq!(generate_random(&c, 42).unwrap(), generate_random(&c, 42).unwrap());
        assert_ne!(generate_random(&c, 42).unwrap(), generate_random(&c, 43).unwrap());
    }

    #[test]
    fn respects_degree_and_colour_bounds() {
        let c = config(12, 6, 1, 3);
        let g = generate_random(&c, 42).unwrap();
        g.validate().unwrap();
        for v in g.vertices() {
            assert!((1..=3).contains(&g.successors(v).len()));
            assert!((1..=6).contains(&g.colour(v)));
        }
    }

    #[test]
    fn invalid_ranges() {
        assert!(generate_random(&config(0, 2, 1, 1), 0).is_err());
        assert!(generate_random(&config(3, 0, 1, 1), 0).is_err());
        assert!(generate_random(&config(3, 2, 0, 1), 0).is_err());
        assert!(generate_random(&config(3, 2, 2, 1), 0).is_err());
        assert!(generate_random(&config(3, 2, 1, 4), 0).is_err());
    }
}
