use std::sync::Arc;

use crate::alphabet::{Alphabet, Letter};
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::measure::g_raw;
use crate::word::Word;

use super::Composition;

/// Codes found by [`enumerate_covers`], sorted by word list.
#[derive(Clone, Debug)]
pub struct CoverFamily {
    pub codes: Vec<PolyboxCode>,
}

impl CoverFamily {
    pub fn count(&self) -> usize {
        self.codes.len()
    }
}

/// A candidate word: its letters, the cells of `w` it meets, and how many
/// coordinates carry `w`'s own letter.
struct Candidate {
    letters: Vec<Letter>,
    cells: u64,
    full: usize,
}

const MAX_DIM: usize = 6;

/// The `composition` of `code` against `w`: `x_i` counts words with
/// `g(v, w) = 2^{d-i}`. Words with `g = 0` or `g` not a power of two are
/// ignored.
pub fn composition_of(code: &PolyboxCode, w: &Word, first_index: usize) -> Composition {
    let d = code.dim();
    let mut counts = vec![0; d + 1 - first_index.min(d)];
    for v in code {
        let g = g_raw(v.letters(), w.letters());
        if g.is_power_of_two() {
            let i = d - g.trailing_zeros() as usize;
            if i >= first_index {
                counts[i - first_index] += 1;
            }
        }
    }
    Composition::new(first_index, counts)
}

/// All twin-pair-free codes of `k` star-free words covering `w`, each
/// meeting `w` with `g(v, w) <= 2^{d-2}`, optionally restricted to the
/// composition `comp`.
///
/// The alphabet must have exactly two pairs; `k` must be 5, 7, 8 or 9.
pub fn enumerate_covers(
    alphabet: &Arc<Alphabet>,
    w: &Word,
    k: usize,
    comp: Option<&Composition>,
) -> Result<CoverFamily> {
    let mut codes = Vec::new();
    for_each_cover(alphabet, w, k, comp, |c| codes.push(c))?;
    codes.sort_by(|a: &PolyboxCode, b| a.words().cmp(b.words()));
    Ok(CoverFamily { codes })
}

/// Streaming form of [`enumerate_covers`], in search order. Returns the count.
pub fn for_each_cover(
    alphabet: &Arc<Alphabet>,
    w: &Word,
    k: usize,
    comp: Option<&Composition>,
    mut emit: impl FnMut(PolyboxCode),
) -> Result<usize> {
    if alphabet.pair_count() != 2 {
        return Err(Error::Usage("cover enumeration needs an alphabet of exactly two pairs".into()));
    }
    if ![5, 7, 8, 9].contains(&k) {
        return Err(Error::Usage(format!("unsupported code size {k}; expected 5, 7, 8 or 9")));
    }
    let d = w.dim();
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::Usage(format!("dimension {d} outside 2..={MAX_DIM}")));
    }
    if !w.is_star_free() || w.letters().iter().any(|&l| !alphabet.contains(l)) {
        return Err(Error::Usage("the covered word must be star-free over the alphabet".into()));
    }
    // remaining[f] = words still allowed with f full coordinates
    let mut remaining = vec![k; d - 1];
    if let Some(c) = comp {
        if c.last_index() != d {
            return Err(Error::Usage(format!(
                "composition ends at index {}, dimension is {d}",
                c.last_index()
            )));
        }
        if c.size() != k {
            return Err(Error::Usage(format!("composition has {} words, k is {k}", c.size())));
        }
        if (c.first_index..2).any(|i| c.get(i) > 0) {
            return Ok(0);
        }
        for (f, r) in remaining.iter_mut().enumerate() {
            *r = c.get(d - f);
        }
    }

    let cands = candidates(w);
    let all = if d == 6 { u64::MAX } else { (1u64 << (1 << d)) - 1 };
    let mut search = Search {
        alphabet,
        d,
        k,
        cands: &cands,
        remaining,
        exact: comp.is_some(),
        chosen: Vec::with_capacity(k),
        count: 0,
        emit: &mut emit,
    };
    search.run(0, all);
    Ok(search.count)
}

fn candidates(w: &Word) -> Vec<Candidate> {
    let d = w.dim();
    let mut out = Vec::new();
    // per coordinate: 0 = w_i, 1 = other pair even letter, 2 = odd letter
    for code in 0..3usize.pow(d as u32) {
        let mut letters = Vec::with_capacity(d);
        let mut cells = u64::MAX >> (64 - (1 << d));
        let mut full = 0;
        let mut c = code;
        for i in 0..d {
            let choice = c % 3;
            c /= 3;
            let other = 1 - w[i].pair().expect("star-free");
            match choice {
                0 => {
                    letters.push(w[i]);
                    full += 1;
                }
                _ => {
                    let odd = choice == 2;
                    letters.push(Letter::of_pair(other, odd));
                    cells &= (0..1u64 << d)
                        .filter(|cell| (cell >> i & 1 == 1) == odd)
                        .fold(0, |m, cell| m | 1 << cell);
                }
            }
        }
        if full + 2 <= d {
            out.push(Candidate { letters, cells, full });
        }
    }
    out
}

struct Search<'a, F: FnMut(PolyboxCode)> {
    alphabet: &'a Arc<Alphabet>,
    d: usize,
    k: usize,
    cands: &'a [Candidate],
    remaining: Vec<usize>,
    exact: bool,
    chosen: Vec<usize>,
    count: usize,
    emit: &'a mut F,
}

impl<F: FnMut(PolyboxCode)> Search<'_, F> {
    fn run(&mut self, covered: u64, all: u64) {
        if covered == all {
            if self.chosen.len() == self.k && (!self.exact || self.remaining.iter().all(|&r| r == 0)) {
                self.count += 1;
                let words = self.chosen.iter().map(|&c| Word::new(self.cands[c].letters.clone()));
                let code = PolyboxCode::new(self.alphabet.clone(), self.d, words)
                    .expect("disjoint candidates are dichotomous");
                (self.emit)(code);
            }
            return;
        }
        let left = self.k - self.chosen.len();
        let open = (all & !covered).count_ones() as usize;
        // each word covers at most 2^{d-2} cells
        if left == 0 || open > left << (self.d - 2) || open < left {
            return;
        }
        let cell = (all & !covered).trailing_zeros();
        for c in 0..self.cands.len() {
            let cand = &self.cands[c];
            if cand.cells >> cell & 1 == 0 || cand.cells & covered != 0 {
                continue;
            }
            if self.remaining[cand.full] == 0 {
                continue;
            }
            if self.chosen.iter().any(|&o| twins(&self.cands[o].letters, &cand.letters)) {
                continue;
            }
            self.chosen.push(c);
            self.remaining[cand.full] -= 1;
            self.run(covered | cand.cells, all);
            self.remaining[cand.full] += 1;
            self.chosen.pop();
        }
    }
}

fn twins(u: &[Letter], v: &[Letter]) -> bool {
    let mut diff = u.iter().zip(v).filter(|(a, b)| a != b);
    matches!((diff.next(), diff.next()), (Some((a, b)), None) if *b == a.complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::cover_compositions_from;
    use crate::measure::covers;
    use crate::testutil::*;

    #[test]
    fn every_family_member_is_valid() {
        let s = ab();
        let w = word(&s, "bbbb");
        for c in cover_compositions_from(7, 4, 2) {
            let fam = enumerate_covers(&s, &w, 7, Some(&c)).unwrap();
            for v in &fam.codes {
                assert!(!v.has_twin_pair());
                assert!(covers(&w, v).unwrap());
                assert_eq!(composition_of(v, &w, 2), c);
            }
        }
    }

    #[test]
    fn small_dimension() {
        let s = ab();
        let w = word(&s, "bbb");
        let fam = enumerate_covers(&s, &w, 5, None).unwrap();
        let target = code(&s, &["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        assert!(fam.codes.contains(&target));
        for v in &fam.codes {
            assert_eq!(v.len(), 5);
        }
    }

    #[test]
    fn rejects_unsupported_input() {
        let s = ab();
        let w = word(&s, "bbbb");
        assert!(enumerate_covers(&s, &w, 6, None).is_err());
        assert!(enumerate_covers(&abc(), &w, 7, None).is_err());
        let wrong = Composition::new(2, vec![1, 1]);
        assert!(enumerate_covers(&s, &w, 7, Some(&wrong)).is_err());
    }
}
