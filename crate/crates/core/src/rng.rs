//! Seeded randomness. Every random choice in the toolkit comes from a
//! ChaCha8 stream keyed by one 64-bit seed; independent purposes use
//! distinct stream numbers so they never share output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Stage1 = 1,
    Stage2 = 2,
    Builder = 3,
    MonteCarlo = 4,
    Instance = 5,
}

pub fn stream(seed: u64, purpose: Stream) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose as u64);
    rng
}
