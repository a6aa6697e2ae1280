//! Searching for codes equivalent to a given star-free code.
//!
//! Every star-free word over the letters in play is cut into atoms: at
//! coordinate `i` each pair of `P_i` contributes one bit (which of its two
//! letters), so a word is the set of atoms fixing its `d` bits. Equivalent
//! codes are exactly the partitions of the atoms covered by the base code
//! into word boxes.

mod counterexample;

pub use counterexample::{counterexample_search, Counterexample};

use std::sync::Arc;

use crate::alphabet::{Alphabet, Letter};
use crate::budget::{Budget, Meter};
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::measure::covers_raw;
use crate::word::{twin_coordinate, Word};

/// Largest atom count exponent the search will allocate.
pub const MAX_ATOM_BITS: usize = 24;

/// Which letters candidate words may use at each coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterPolicy {
    /// The pairs the base code uses at that coordinate, plus this many
    /// others: unused pairs of the alphabet first, then new pairs.
    Fresh(usize),
    /// Every pair of the base code's alphabet.
    Alphabet,
}

impl Default for LetterPolicy {
    fn default() -> Self {
        LetterPolicy::Fresh(1)
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceSearchSpec {
    pub base: PolyboxCode,
    pub require_twin_pair_free: bool,
    pub require_disjoint: bool,
    pub max_results: usize,
    pub budget: Budget,
    pub letters: LetterPolicy,
}

impl EquivalenceSearchSpec {
    /// No filters, unlimited results and budget, one fresh pair.
    pub fn new(base: PolyboxCode) -> EquivalenceSearchSpec {
        EquivalenceSearchSpec {
            base,
            require_twin_pair_free: false,
            require_disjoint: false,
            max_results: usize::MAX,
            budget: Budget::UNLIMITED,
            letters: LetterPolicy::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The whole space was explored.
    Exhausted,
    /// Stopped after `max_results` codes.
    ResultLimit,
    /// Stopped by the budget.
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct EquivalenceSearch {
    /// Found codes, sorted by word list.
    pub codes: Vec<PolyboxCode>,
    pub status: SearchStatus,
    pub nodes: u64,
}

impl EquivalenceSearch {
    /// Budget ran out before anything was found.
    pub fn is_inconclusive(&self) -> bool {
        self.status == SearchStatus::BudgetExceeded && self.codes.is_empty()
    }

    /// Everything was explored and nothing found.
    pub fn is_proven_none(&self) -> bool {
        self.status == SearchStatus::Exhausted && self.codes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rigidity {
    Rigid,
    NotRigid(PolyboxCode),
    Inconclusive { nodes: u64 },
}

/// Words covered by a code, over the alphabet used to write them.
#[derive(Clone, Debug)]
pub struct CoveredWords {
    pub alphabet: Arc<Alphabet>,
    pub words: Vec<Word>,
}

/// Per-coordinate pairs and the alphabet holding them.
struct Letters {
    alphabet: Arc<Alphabet>,
    pairs: Vec<Vec<usize>>,
}

fn choose_letters(base: &PolyboxCode, policy: LetterPolicy) -> Result<Letters> {
    if !base.is_star_free() {
        return Err(Error::Usage("rigidity is defined for star-free codes".into()));
    }
    let alphabet = base.alphabet();
    let total = alphabet.pair_count();
    let mut pairs = Vec::with_capacity(base.dim());
    let mut synthetic = 0;
    for i in 0..base.dim() {
        let mut used: Vec<usize> = base.iter().filter_map(|w| w[i].pair()).collect();
        used.sort_unstable();
        used.dedup();
        match policy {
            LetterPolicy::Alphabet => pairs.push((0..total).collect()),
            LetterPolicy::Fresh(n) => {
                let mut p = used.clone();
                let spare: Vec<usize> = (0..total).filter(|q| !used.contains(q)).take(n).collect();
                let extra = n - spare.len();
                p.extend(spare);
                p.extend(total..total + extra);
                synthetic = synthetic.max(extra);
                pairs.push(p);
            }
        }
    }
    let alphabet = if synthetic > 0 {
        if 2 * (total + synthetic) > Letter::MAX_LETTERS {
            return Err(Error::Resource("too many letters for fresh pairs".into()));
        }
        Arc::new(alphabet.extended(synthetic))
    } else {
        alphabet.clone()
    };
    Ok(Letters { alphabet, pairs })
}

/// Every star-free word over `letters` covered by `base`, in lexicographic
/// order.
fn covered(base: &PolyboxCode, letters: &Letters) -> Result<Vec<Word>> {
    let d = base.dim();
    let choices: Vec<Vec<Letter>> = letters
        .pairs
        .iter()
        .map(|ps| {
            let mut ls: Vec<Letter> =
                ps.iter().flat_map(|&p| [Letter::of_pair(p, false), Letter::of_pair(p, true)]).collect();
            ls.sort();
            ls
        })
        .collect();
    let space: f64 = choices.iter().map(|c| c.len() as f64).product();
    if space > (1u64 << 28) as f64 {
        return Err(Error::Resource(format!("{space} candidate words is too many")));
    }
    let mut out = Vec::new();
    let mut w = vec![Letter::STAR; d];
    fill(base, &choices, 0, &mut w, &mut out);
    Ok(out)
}

fn fill(base: &PolyboxCode, choices: &[Vec<Letter>], i: usize, w: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if i == w.len() {
        if covers_raw(w, base) {
            out.push(Word::new(w.clone()));
        }
        return;
    }
    for &l in &choices[i] {
        // a letter whose complement sits at i in every word leaves nothing to cover
        if base.iter().all(|v| v[i] == l.complement()) {
            continue;
        }
        w[i] = l;
        fill(base, choices, i + 1, w, out);
    }
}

/// All star-free words covered by `code`, using one representative fresh
/// pair per coordinate for letters the code does not use there.
pub fn covered_words(code: &PolyboxCode) -> Result<CoveredWords> {
    let letters = choose_letters(code, LetterPolicy::default())?;
    let words = covered(code, &letters)?;
    Ok(CoveredWords { alphabet: letters.alphabet, words })
}

struct Cand {
    word: Word,
    mask: u64,
    value: u64,
}

/// Codes equivalent to `spec.base`, other than the base itself.
pub fn find_equivalent(spec: &EquivalenceSearchSpec) -> Result<EquivalenceSearch> {
    find_equivalent_metered(spec, &spec.budget.meter())
}

/// As [`find_equivalent`], drawing on a meter shared with other searches.
fn find_equivalent_metered(spec: &EquivalenceSearchSpec, meter: &Meter) -> Result<EquivalenceSearch> {
    let base = &spec.base;
    let letters = choose_letters(base, spec.letters)?;
    let bits: usize = letters.pairs.iter().map(Vec::len).sum();
    if bits > MAX_ATOM_BITS {
        return Err(Error::Resource(format!(
            "{bits} atom bits exceeds the limit of {MAX_ATOM_BITS}"
        )));
    }
    let mut offsets = Vec::with_capacity(base.dim());
    let mut acc = 0;
    for ps in &letters.pairs {
        offsets.push(acc);
        acc += ps.len();
    }
    let locate = |w: &Word| -> (u64, u64) {
        let (mut mask, mut value) = (0u64, 0u64);
        for (i, &l) in w.letters().iter().enumerate() {
            let pair = l.pair().expect("star-free");
            let k = letters.pairs[i].iter().position(|&p| p == pair).expect("pair in play");
            let bit = 1u64 << (offsets[i] + k);
            mask |= bit;
            if l.is_primed() {
                value |= bit;
            }
        }
        (mask, value)
    };

    let cands: Vec<Cand> = covered(base, &letters)?
        .into_iter()
        .filter(|w| !(spec.require_disjoint && base.contains(w)))
        .map(|word| {
            let (mask, value) = locate(&word);
            Cand { word, mask, value }
        })
        .collect();

    let atoms = 1usize << bits;
    let mut region = vec![0u64; atoms.div_ceil(64)];
    for v in base {
        let (mask, value) = locate(v);
        for_each_atom(mask, value, bits, |a| region[a >> 6] |= 1 << (a & 63));
    }

    let nodes_before = meter.nodes();
    let mut search = Search {
        spec,
        cands: &cands,
        bits,
        region: &region,
        covered: vec![0u64; region.len()],
        chosen: Vec::with_capacity(base.len()),
        found: Vec::new(),
        meter,
        alphabet: &letters.alphabet,
    };
    let finished = spec.max_results == 0 || search.run(0);
    let status = if search.found.len() >= spec.max_results {
        SearchStatus::ResultLimit
    } else if finished {
        SearchStatus::Exhausted
    } else {
        SearchStatus::BudgetExceeded
    };
    let mut codes = search.found;
    codes.sort_by(|a, b| a.words().cmp(b.words()));
    Ok(EquivalenceSearch { codes, status, nodes: meter.nodes() - nodes_before })
}

/// Call `f` on every atom with the bits in `mask` set to `value`.
fn for_each_atom(mask: u64, value: u64, bits: usize, mut f: impl FnMut(usize)) {
    let free = !mask & ((1u64 << bits) - 1);
    let mut sub = 0u64;
    loop {
        f((sub | value) as usize);
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
}

struct Search<'a> {
    spec: &'a EquivalenceSearchSpec,
    cands: &'a [Cand],
    bits: usize,
    region: &'a [u64],
    covered: Vec<u64>,
    chosen: Vec<usize>,
    found: Vec<PolyboxCode>,
    meter: &'a Meter,
    alphabet: &'a Arc<Alphabet>,
}

impl Search<'_> {
    /// Lowest atom of the region not yet covered, starting at word `from`.
    fn next_open(&self, from: usize) -> Option<usize> {
        (from..self.region.len()).find_map(|k| {
            let open = self.region[k] & !self.covered[k];
            (open != 0).then(|| (k << 6) + open.trailing_zeros() as usize)
        })
    }

    fn toggle(&mut self, c: usize) {
        let Cand { mask, value, .. } = self.cands[c];
        let covered = &mut self.covered;
        for_each_atom(mask, value, self.bits, |a| covered[a >> 6] ^= 1 << (a & 63));
    }

    /// Returns false when the search must stop.
    fn run(&mut self, from: usize) -> bool {
        if !self.meter.tick() {
            return false;
        }
        let Some(atom) = self.next_open(from) else {
            return self.record();
        };
        if self.chosen.len() == self.spec.base.len() {
            return true;
        }
        for c in 0..self.cands.len() {
            let cand = &self.cands[c];
            if atom as u64 & cand.mask != cand.value {
                continue;
            }
            let clash = self.chosen.iter().any(|&o| {
                let other = &self.cands[o];
                let disjoint = (other.mask & cand.mask) & (other.value ^ cand.value) != 0;
                !disjoint
                    || (self.spec.require_twin_pair_free
                        && twin_coordinate(other.word.letters(), cand.word.letters()).is_some())
            });
            if clash {
                continue;
            }
            self.chosen.push(c);
            self.toggle(c);
            let go_on = self.run(atom >> 6);
            self.toggle(c);
            self.chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn record(&mut self) -> bool {
        let mut words: Vec<Word> = self.chosen.iter().map(|&c| self.cands[c].word.clone()).collect();
        words.sort();
        if words == self.spec.base.words() {
            return true;
        }
        let dim = self.spec.base.dim();
        let code = PolyboxCode::new(self.alphabet.clone(), dim, words)
            .expect("disjoint candidates form a code");
        self.found.push(code);
        self.found.len() < self.spec.max_results
    }
}

/// Whether any other star-free code is equivalent to `code`.
pub fn is_rigid(code: &PolyboxCode, budget: Budget) -> Result<Rigidity> {
    let spec = EquivalenceSearchSpec { max_results: 1, budget, ..EquivalenceSearchSpec::new(code.clone()) };
    let res = find_equivalent(&spec)?;
    Ok(match res.codes.into_iter().next() {
        Some(w) => Rigidity::NotRigid(w),
        None if res.status == SearchStatus::Exhausted => Rigidity::Rigid,
        None => Rigidity::Inconclusive { nodes: res.nodes },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::equivalent;
    use crate::testutil::*;

    #[test]
    fn twin_pair_resplits() {
        let s = ab();
        let v = code(&s, &["aa", "aa'"]);
        let res = find_equivalent(&EquivalenceSearchSpec::new(v.clone())).unwrap();
        assert_eq!(res.status, SearchStatus::Exhausted);
        assert!(res.codes.contains(&code(&s, &["ab", "ab'"])));
        for w in &res.codes {
            assert!(equivalent(w, &v).unwrap());
            assert_ne!(w, &v);
        }
        assert!(matches!(is_rigid(&v, Budget::UNLIMITED).unwrap(), Rigidity::NotRigid(_)));
    }

    #[test]
    fn single_word_covers_only_itself() {
        let s = ab();
        let v = code(&s, &["ab'a"]);
        let cw = covered_words(&v).unwrap();
        assert_eq!(cw.words, v.words().to_vec());
        assert_eq!(is_rigid(&v, Budget::UNLIMITED).unwrap(), Rigidity::Rigid);
    }

    #[test]
    fn six_word_code_is_rigid() {
        let s = ab();
        assert_eq!(is_rigid(&code(&s, &SIX), Budget::UNLIMITED).unwrap(), Rigidity::Rigid);
    }

    #[test]
    fn five_word_cover_is_rigid() {
        let s = ab();
        let v = code(&s, &["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        assert_eq!(is_rigid(&v, Budget::UNLIMITED).unwrap(), Rigidity::Rigid);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let s = ab();
        let v = code(&s, &SIX);
        assert!(matches!(is_rigid(&v, Budget::nodes(1)).unwrap(), Rigidity::Inconclusive { .. }));
    }

    #[test]
    fn stars_are_rejected() {
        let s = ab();
        assert!(is_rigid(&code(&s, &FIVE), Budget::UNLIMITED).is_err());
    }
}
