use super::{form_count, form_from_index, CanonicalForm};
use crate::group::Modulus;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator behind every seeded draw: ChaCha8 seeded via
/// `seed_from_u64`, which is specified independently of platform.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws a form uniformly from all `24 m^3 / d`.
pub fn sample_with<R: Rng + ?Sized>(m: Modulus, rng: &mut R) -> CanonicalForm {
    form_from_index(m, rng.gen_range(0..form_count(m)))
}

pub fn sample_uniform(m: Modulus, seed: u64) -> CanonicalForm {
    sample_with(m, &mut rng_from_seed(seed))
}
