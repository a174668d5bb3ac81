//! Seeded random instance generation. The RNG is ChaCha8 seeded directly
//! from the 64-bit seed, and the stream discipline is fixed: exactly one f64
//! draw per (agent, good) pair in row-major order (agent-major, good-minor).
//! A pair becomes a heavy edge when the draw is below `heavy_density`.

use crate::model::{Instance, Rational};
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub p: Rational,
    pub heavy_density: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("heavy_density must lie in [0, 1], got {0}")]
    BadDensity(String),
    #[error("p must be positive, got {0}")]
    BadP(String),
    #[error("need at least one agent")]
    NoAgents,
}

pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    if !(0.0..=1.0).contains(&spec.heavy_density) {
        return Err(GenError::BadDensity(spec.heavy_density.to_string()));
    }
    if !spec.p.is_positive() {
        return Err(GenError::BadP(spec.p.to_string()));
    }
    if spec.n == 0 {
        return Err(GenError::NoAgents);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut heavy = Vec::new();
    for a in 0..spec.n {
        for g in 0..spec.m {
            if rng.gen::<f64>() < spec.heavy_density {
                heavy.push((a, g));
            }
        }
    }
    Ok(Instance::new(spec.n, spec.m, spec.p.clone(), heavy).expect("generated pairs in range"))
}
