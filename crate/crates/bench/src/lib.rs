//! Fixtures shared by the criterion benches.

use jdlength::hereditary::{DynkinCategory, DynkinType, Quiver};
use jdlength::linalg::FieldKind;
use jdlength::toric::{random_fan, Fan2D, TorusDivisor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn dynkin_category(name: &str) -> DynkinCategory {
    let q = Quiver::dynkin(name.parse::<DynkinType>().expect("dynkin name")).expect("dynkin quiver");
    DynkinCategory::new(&q, FieldKind::Rational, 0).expect("category")
}

/// `count` random fans with up to 9 rays, each paired with a divisor.
pub fn fans_with_divisors(count: usize, seed: u64) -> Vec<(Fan2D, TorusDivisor)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let f = random_fan(rng.gen_range(3..=9), seed.wrapping_add(k as u64));
            let d = TorusDivisor((0..f.len()).map(|_| rng.gen_range(-3..=3)).collect());
            (f, d)
        })
        .collect()
}
