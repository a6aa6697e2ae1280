use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::bitset::Bitset;
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::word::{dichotomous, twin_coordinate, Word};

/// Adjacency memory limit in bytes.
pub const MAX_GRAPH_BYTES: u128 = 1 << 30;

/// The graph on all star-free words of length `d`, joining dichotomous
/// pairs that are not twin pairs. Vertex `k` is the word whose letter ids
/// are the base-`|S|` digits of `k`, most significant first.
#[derive(Clone, Debug)]
pub struct KellerGraph {
    dim: usize,
    alphabet: Arc<Alphabet>,
    rows: Vec<Bitset>,
}

pub fn build_keller_graph(d: usize, alphabet: &Arc<Alphabet>) -> Result<KellerGraph> {
    KellerGraph::new(d, alphabet)
}

impl KellerGraph {
    pub fn new(d: usize, alphabet: &Arc<Alphabet>) -> Result<KellerGraph> {
        let s = alphabet.len() as u128;
        let n = s.checked_pow(d as u32).filter(|&n| n <= u32::MAX as u128);
        let Some(n) = n.filter(|&n| n * n / 8 <= MAX_GRAPH_BYTES) else {
            return Err(Error::Resource(format!(
                "Keller graph with {}^{d} vertices exceeds the memory limit",
                alphabet.len()
            )));
        };
        let n = n as usize;
        let words: Vec<Vec<Letter>> = (0..n).map(|k| decode(k, d, alphabet.len())).collect();
        let mut rows = vec![Bitset::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (&words[u], &words[v]);
                if dichotomous(a, b) && twin_coordinate(a, b).is_none() {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        Ok(KellerGraph { dim: d, alphabet: alphabet.clone(), rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn word(&self, v: usize) -> Word {
        Word::new(decode(v, self.dim, self.alphabet.len()))
    }

    /// Index of a star-free word over the graph's alphabet.
    pub fn index(&self, w: &Word) -> Option<usize> {
        if w.dim() != self.dim {
            return None;
        }
        let s = self.alphabet.len();
        w.letters().iter().try_fold(0usize, |acc, &l| {
            (!l.is_star() && (l.id() as usize) < s).then(|| acc * s + l.id() as usize)
        })
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(k, &u)| vs[k + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// The words of a vertex set as a polybox code.
    pub fn code_of(&self, vs: &[usize]) -> Result<PolyboxCode> {
        PolyboxCode::new(self.alphabet.clone(), self.dim, vs.iter().map(|&v| self.word(v)))
    }

    /// The vertices of a code, if it is star-free over the graph's alphabet.
    pub fn vertices_of(&self, code: &PolyboxCode) -> Option<Vec<usize>> {
        code.iter().map(|w| self.index(w)).collect()
    }
}

/// A maximal clique grown by scanning the vertices in a random order.
pub fn random_maximal_clique(g: &KellerGraph, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.adjacent(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

fn decode(mut k: usize, d: usize, s: usize) -> Vec<Letter> {
    let mut out = vec![Letter::STAR; d];
    for slot in out.iter_mut().rev() {
        *slot = Letter::new((k % s) as u8);
        k /= s;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let k = Arc::new(Alphabet::keller());
        let g = build_keller_graph(2, &k).unwrap();
        assert_eq!(g.vertex_count(), 16);
        for u in 0..16 {
            assert!(!g.adjacent(u, u));
            for v in 0..16 {
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
            assert_eq!(g.index(&g.word(u)), Some(u));
        }
        let g4 = build_keller_graph(4, &k).unwrap();
        let a = g4.index(&k.parse_word("1110").unwrap()).unwrap();
        let b = g4.index(&k.parse_word("1112").unwrap()).unwrap();
        assert!(!g4.adjacent(a, b));
        assert_eq!(g4.degree(0), 256 - 81 - 4);
    }

    #[test]
    fn memory_limit() {
        let k = Arc::new(Alphabet::keller());
        assert!(matches!(build_keller_graph(20, &k), Err(Error::Resource(_))));
    }
}
