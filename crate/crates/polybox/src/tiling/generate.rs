use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate_tiling, TwoPeriodicTiling};
use crate::error::Result;

/// A tiling reached from the lattice `Z^d` by `steps` random column
/// shifts. A column is a pair of cubes stacked along some axis with equal
/// remaining coordinates; it fills a prism and may slide along its axis by
/// any multiple of `1/2`.
pub fn random_tiling(d: usize, steps: usize, seed: u64) -> Result<TwoPeriodicTiling> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tiles: Vec<Vec<u8>> =
        (0..1usize << d).map(|k| (0..d).map(|i| 2 * (k >> (d - 1 - i) & 1) as u8).collect()).collect();
    for _ in 0..steps {
        let j = rng.gen_range(0..d);
        let mut columns: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        for (k, t) in tiles.iter().enumerate() {
            let mut key = t.clone();
            key.remove(j);
            columns.entry(key).or_default().push(k);
        }
        let mut stacks: Vec<Vec<usize>> = columns.into_values().filter(|c| c.len() == 2).collect();
        if stacks.is_empty() {
            continue;
        }
        stacks.sort();
        let stack = &stacks[rng.gen_range(0..stacks.len())];
        let delta = rng.gen_range(1..4u8);
        for &k in stack {
            tiles[k][j] = (tiles[k][j] + delta) % 4;
        }
    }
    validate_tiling(tiles)
}
