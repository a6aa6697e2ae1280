use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::code::PolyboxCode;
use crate::iso::{Isomorphism, LetterMap};
use crate::word::Word;

/// A star-free partition code of `2^d` words, built by repeatedly splitting
/// a word at one of its star coordinates into a twin pair, then relabelled
/// by a random isomorphism. Deterministic in `seed`.
pub fn random_partition_code(d: usize, alphabet: &Arc<Alphabet>, seed: u64) -> PolyboxCode {
    assert!(d >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = alphabet.pair_count();
    let mut done = Vec::with_capacity(1 << d);
    let mut todo = vec![Word::stars(d)];
    while let Some(w) = todo.pop() {
        let stars: Vec<usize> = (0..d).filter(|&i| w[i].is_star()).collect();
        let Some(&i) = stars.choose(&mut rng) else {
            done.push(w);
            continue;
        };
        let l = Letter::of_pair(rng.gen_range(0..pairs), false);
        todo.push(w.with(i, l));
        todo.push(w.with(i, l.complement()));
    }
    let code = PolyboxCode::new(alphabet.clone(), d, done).expect("twin splits stay dichotomous");
    random_isomorphism(alphabet, d, &mut rng)
        .apply(&code)
        .expect("isomorphism matches the code")
}

/// A uniformly random coordinate permutation with random letter maps.
pub fn random_isomorphism(alphabet: &Alphabet, d: usize, rng: &mut impl Rng) -> Isomorphism {
    let mut sigma: Vec<usize> = (0..d).collect();
    sigma.shuffle(rng);
    let p = alphabet.pair_count();
    let h = (0..d)
        .map(|_| {
            let mut order: Vec<usize> = (0..p).collect();
            order.shuffle(rng);
            let mut img = vec![Letter::STAR; 2 * p];
            for (src, &dst) in order.iter().enumerate() {
                let flip = rng.gen_bool(0.5);
                img[2 * src] = Letter::of_pair(dst, flip);
                img[2 * src + 1] = Letter::of_pair(dst, !flip);
            }
            LetterMap::new(alphabet, img).expect("compatible map")
        })
        .collect();
    Isomorphism::new(sigma, h).expect("valid permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::is_partition_code;
    use crate::testutil::*;

    #[test]
    fn deterministic_partitions() {
        let s = abc();
        for seed in 0..20 {
            let c = random_partition_code(4, &s, seed);
            assert_eq!(c.len(), 16);
            assert!(c.is_star_free());
            assert!(is_partition_code(&c));
            assert_eq!(c, random_partition_code(4, &s, seed));
        }
        let one = random_partition_code(1, &s, 7);
        assert_eq!(one.len(), 2);
        assert_eq!(one.words()[0][0].complement(), one.words()[1][0]);
    }
}
