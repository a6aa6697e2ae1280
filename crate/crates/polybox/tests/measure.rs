use std::sync::Arc;

use itertools::Itertools;
use polybox::classify::random_partition_code;
use polybox::measure::*;
use polybox::{Alphabet, Letter, PolyboxCode, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Boxes realised on a finite grid: each coordinate is the set of
/// transversals of the alphabet's pairs (one bit per pair), and a letter
/// keeps the transversals choosing it.
struct Grid {
    pairs: usize,
    dim: usize,
}

impl Grid {
    fn side(&self) -> usize {
        1 << self.pairs
    }

    fn size(&self) -> usize {
        self.side().pow(self.dim as u32)
    }

    fn keeps(&self, l: Letter, cell: usize) -> bool {
        match l.pair() {
            None => true,
            Some(p) => (cell >> p & 1 == 1) == l.is_primed(),
        }
    }

    fn points(&self, w: &Word) -> Vec<bool> {
        (0..self.size())
            .map(|mut pt| {
                let mut inside = true;
                for i in (0..self.dim).rev() {
                    inside &= self.keeps(w[i], pt % self.side());
                    pt /= self.side();
                }
                inside
            })
            .collect()
    }

    fn union(&self, code: &PolyboxCode) -> Vec<bool> {
        let mut u = vec![false; self.size()];
        for w in code {
            for (slot, x) in u.iter_mut().zip(self.points(w)) {
                *slot |= x;
            }
        }
        u
    }

    fn count(&self, pts: &[bool]) -> u128 {
        pts.iter().filter(|&&x| x).count() as u128
    }

    fn measure(&self, pts: &[bool]) -> DyadicRatio {
        DyadicRatio::new(self.count(pts), (self.pairs * self.dim) as u32)
    }
}

fn and(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

fn all_words(s: &Alphabet, d: usize, stars: bool) -> Vec<Word> {
    let mut symbols: Vec<Letter> = s.letters().collect();
    if stars {
        symbols.push(Letter::STAR);
    }
    (0..d)
        .map(|_| symbols.iter().copied())
        .multi_cartesian_product()
        .map(Word::new)
        .collect()
}

fn small_codes(s: &Arc<Alphabet>, d: usize, max: usize) -> Vec<PolyboxCode> {
    let words = all_words(s, d, true);
    (1..=max)
        .flat_map(|k| words.iter().cloned().combinations(k))
        .filter_map(|ws| PolyboxCode::new(s.clone(), d, ws).ok())
        .collect()
}

#[test]
fn box_measures_match_the_grid() {
    for (pairs, d) in [(1, 3), (2, 2), (3, 2)] {
        let s = Alphabet::standard(pairs);
        let grid = Grid { pairs, dim: d };
        let words = all_words(&s, d, true);
        for u in &words {
            let pu = grid.points(u);
            for v in &words {
                let both = and(&pu, &grid.points(v));
                assert_eq!(box_intersection_measure(u, v).unwrap(), grid.measure(&both));
                if v.is_star_free() {
                    // g(u, v) / 2^d is the share of v's box inside u's box
                    let pv = grid.points(v);
                    let expect = (grid.count(&both) << d) / grid.count(&pv);
                    assert_eq!(g_value(u, v).unwrap() as u128, expect, "{u:?} {v:?}");
                }
                assert_eq!(is_dichotomous_by_grid(&grid, u, v), polybox::is_dichotomous(u, v).unwrap());
            }
        }
    }
}

fn is_dichotomous_by_grid(grid: &Grid, u: &Word, v: &Word) -> bool {
    grid.count(&and(&grid.points(u), &grid.points(v))) == 0
}

#[test]
fn small_codes_exhaustively_in_dimension_two() {
    let s = Arc::new(Alphabet::standard(2));
    let grid = Grid { pairs: 2, dim: 2 };
    let codes = small_codes(&s, 2, 3);
    assert!(codes.len() > 100);
    let words = all_words(&s, 2, true);
    let unions: Vec<Vec<bool>> = codes.iter().map(|c| grid.union(c)).collect();
    for (code, union) in codes.iter().zip(&unions) {
        let total: u128 = code.iter().map(|w| grid.count(&grid.points(w))).sum();
        assert_eq!(is_partition_code(code), total == grid.size() as u128);
        for w in &words {
            let pw = grid.points(w);
            let inside = grid.count(&and(&pw, union)) == grid.count(&pw);
            assert_eq!(covers(w, code).unwrap(), inside, "{code} {w:?}");
            if w.is_star_free() {
                assert_eq!(covers_by_g_sum(w, code).unwrap(), inside);
            }
        }
    }
    let mut matches = 0;
    for (i, a) in codes.iter().enumerate() {
        for (j, b) in codes.iter().enumerate() {
            let same = unions[i] == unions[j];
            assert_eq!(equivalent(a, b).unwrap(), same);
            matches += usize::from(same && i != j);
        }
    }
    assert!(matches > 0);
}

#[test]
fn random_codes_in_higher_dimension() {
    let s = Arc::new(Alphabet::standard(2));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in [3, 4] {
        let grid = Grid { pairs: 2, dim: d };
        let words = all_words(&s, d, false);
        for seed in 0..40 {
            let full = random_partition_code(d, &s, seed);
            assert!(is_partition_code(&full));
            assert_eq!(grid.count(&grid.union(&full)), grid.size() as u128);
            let mut ws = full.words().to_vec();
            ws.shuffle(&mut rng);
            ws.truncate(rng.gen_range(1..full.len()));
            let part = PolyboxCode::new(s.clone(), d, ws).unwrap();
            assert!(!is_partition_code(&part));
            let union = grid.union(&part);
            for w in words.choose_multiple(&mut rng, 60) {
                let pw = grid.points(w);
                let inside = grid.count(&and(&pw, &union)) == grid.count(&pw);
                assert_eq!(covers(w, &part).unwrap(), inside);
                assert_eq!(covers_by_g_sum(w, &part).unwrap(), inside);
                assert!(covers(w, &full).unwrap());
            }
        }
    }
}

#[test]
fn six_word_code_against_the_b_words() {
    let s = Arc::new(Alphabet::standard(2));
    let v = PolyboxCode::parse(&s, 4, &["aaaa", "a'a'a'a", "baa'a", "a'baa", "aa'ba", "bbba'"]).unwrap();
    let grid = Grid { pairs: 2, dim: 4 };
    for (last, expect) in [
        ("b", [1, 1, 2, 2, 2, 8]),
        ("b'", [1, 1, 2, 2, 2, 8]),
        ("a", [2, 2, 4, 4, 4, 0]),
    ] {
        let w = s.parse_word(&format!("bbb{last}")).unwrap();
        let mut got: Vec<u64> = v.iter().map(|x| g_value(x, &w).unwrap()).collect();
        got.sort_unstable();
        let mut want = expect.to_vec();
        want.sort_unstable();
        assert_eq!(got, want, "bbb{last}");
        assert_eq!(g_sum(&w, &v).unwrap(), 16);
        assert!(covers(&w, &v).unwrap());
        let pw = grid.points(&w);
        assert_eq!(grid.count(&and(&pw, &grid.union(&v))), grid.count(&pw));
    }
    let w = s.parse_word("abbb").unwrap();
    assert!(!covers(&w, &v).unwrap());
    assert!(g_sum(&w, &v).unwrap() < 16);
    // words using a fresh pair behave like b
    let wide = Arc::new(Alphabet::standard(3));
    let v3 = v.with_alphabet(wide.clone()).unwrap();
    assert!(covers(&wide.parse_word("bbbc").unwrap(), &v3).unwrap());
}
