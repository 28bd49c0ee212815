//! Counter-based random substreams.
//!
//! Every random draw in the engine comes from a ChaCha stream keyed on
//! `(master seed, realization index, trial index, purpose)`. A trial's
//! stream depends only on those indices, never on scheduling, so results
//! are bit-identical for any number of worker threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is consumed for; distinct purposes get disjoint streams so
/// adding draws of one kind never perturbs another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPurpose {
    /// Blockage center positions.
    Blockage,
    /// Transmit antenna orientations.
    Orientation,
    /// Interferer placements.
    Placement,
}

impl StreamPurpose {
    fn tag(self) -> u64 {
        match self {
            StreamPurpose::Blockage => 0x424c4f434b,
            StreamPurpose::Orientation => 0x4f5249454e,
            StreamPurpose::Placement => 0x504c414345,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator for one `(seed, realization, trial, purpose)` cell.
pub fn stream_rng(
    master_seed: u64,
    realization: u64,
    trial: u64,
    purpose: StreamPurpose,
) -> ChaCha8Rng {
    let key = splitmix64(splitmix64(master_seed ^ purpose.tag()) ^ realization);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(trial);
    rng
}
