use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::{dichotomous, twin_coordinate, Word};

/// A set of pairwise dichotomous words of a common length.
///
/// Words are kept sorted, so two codes are equal exactly when they hold the
/// same word set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyboxCode {
    alphabet: Arc<Alphabet>,
    dim: usize,
    words: Vec<Word>,
}

/// Validate `words` as a polybox code of dimension `dim`.
pub fn validate_polybox_code(
    alphabet: Arc<Alphabet>,
    dim: usize,
    words: impl IntoIterator<Item = Word>,
) -> Result<PolyboxCode> {
    PolyboxCode::new(alphabet, dim, words)
}

impl PolyboxCode {
    pub fn new(
        alphabet: Arc<Alphabet>,
        dim: usize,
        words: impl IntoIterator<Item = Word>,
    ) -> Result<PolyboxCode> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            if w.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: w.dim() });
            }
            if let Some(&l) = w.letters().iter().find(|&&l| !alphabet.contains(l)) {
                return Err(Error::UnknownLetter(l.id()));
            }
        }
        words.sort();
        if let Some(p) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateWord(alphabet.format_word(&p[0])));
        }
        for (i, u) in words.iter().enumerate() {
            for v in &words[i + 1..] {
                if !dichotomous(u.letters(), v.letters()) {
                    return Err(Error::NotDichotomous(
                        alphabet.format_word(u),
                        alphabet.format_word(v),
                    ));
                }
            }
        }
        Ok(PolyboxCode { alphabet, dim, words })
    }

    /// Parse each string with [`Alphabet::parse_word`] and validate.
    pub fn parse(alphabet: &Arc<Alphabet>, dim: usize, words: &[&str]) -> Result<PolyboxCode> {
        let parsed = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        PolyboxCode::new(alphabet.clone(), dim, parsed)
    }

    pub fn empty(alphabet: Arc<Alphabet>, dim: usize) -> PolyboxCode {
        PolyboxCode { alphabet, dim, words: Vec::new() }
    }

    /// Caller guarantees the words are sorted, distinct, pairwise dichotomous.
    pub(crate) fn from_sorted_unchecked(
        alphabet: Arc<Alphabet>,
        dim: usize,
        words: Vec<Word>,
    ) -> PolyboxCode {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        PolyboxCode { alphabet, dim, words }
    }

    /// The same words over an alphabet extending the current one.
    pub fn with_alphabet(&self, alphabet: Arc<Alphabet>) -> Result<PolyboxCode> {
        if !alphabet.extends(&self.alphabet) {
            return Err(Error::Usage("alphabet does not extend the code's alphabet".into()));
        }
        Ok(PolyboxCode { alphabet, dim: self.dim, words: self.words.clone() })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    pub fn is_star_free(&self) -> bool {
        self.words.iter().all(Word::is_star_free)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }

    /// The lexicographically first twin pair.
    pub fn find_twin_pair(&self) -> Option<(Word, Word)> {
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                if twin_coordinate(u.letters(), v.letters()).is_some() {
                    return Some((u.clone(), v.clone()));
                }
            }
        }
        None
    }

    pub fn has_twin_pair(&self) -> bool {
        self.find_twin_pair().is_some()
    }

    /// Words grouped by complementary pairs at coordinate `i` (0-based).
    pub fn distribution(&self, i: usize) -> Result<Distribution> {
        self.check_coord(i)?;
        let mut groups: Vec<Group> = Vec::new();
        let mut leftover = Vec::new();
        for w in &self.words {
            let l = w[i];
            let Some(pair) = l.pair() else {
                leftover.push(w.clone());
                continue;
            };
            let rep = Letter::of_pair(pair, false);
            let pos = match groups.iter().position(|g| g.letter == rep) {
                Some(p) => p,
                None => {
                    groups.push(Group { letter: rep, with_letter: vec![], with_complement: vec![] });
                    groups.len() - 1
                }
            };
            if l == rep {
                groups[pos].with_letter.push(w.clone());
            } else {
                groups[pos].with_complement.push(w.clone());
            }
        }
        groups.sort_by_key(|g| g.letter);
        Ok(Distribution { coordinate: i, groups, leftover })
    }

    /// `v_A` for every word, in code order; `A` given as 0-based coordinates.
    pub fn project(&self, coords: &[usize]) -> Result<Vec<Word>> {
        if coords.is_empty() {
            return Err(Error::Usage("projection onto an empty coordinate set".into()));
        }
        for &i in coords {
            self.check_coord(i)?;
        }
        Ok(self.words.iter().map(|w| w.project(coords)).collect())
    }

    /// Words carrying `l` at coordinate `i`.
    pub fn with_letter_at(&self, i: usize, l: Letter) -> impl Iterator<Item = &Word> {
        self.words.iter().filter(move |w| w[i] == l)
    }

    /// `{v_{i^c} : v_i = l}` as a code of dimension `d - 1`.
    pub fn section(&self, i: usize, l: Letter) -> PolyboxCode {
        let mut words: Vec<Word> = self.with_letter_at(i, l).map(|w| w.without(i)).collect();
        words.sort();
        PolyboxCode { alphabet: self.alphabet.clone(), dim: self.dim - 1, words }
    }

    pub(crate) fn check_coord(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::Usage(format!(
                "coordinate {} out of range 1..={}",
                i + 1,
                self.dim
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PolyboxCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.alphabet.format_word(w))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PolyboxCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyboxCode(d={}, {})", self.dim, self)
    }
}

impl<'a> IntoIterator for &'a PolyboxCode {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// One complementary pair at a coordinate: the words with its even letter
/// and those with the odd one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub letter: Letter,
    pub with_letter: Vec<Word>,
    pub with_complement: Vec<Word>,
}

impl Group {
    pub fn len(&self) -> usize {
        self.with_letter.len() + self.with_complement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The grouping of a code's words by the pair they use at one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub coordinate: usize,
    pub groups: Vec<Group>,
    pub leftover: Vec<Word>,
}

impl Distribution {
    /// Number of groups.
    pub fn k(&self) -> usize {
        self.groups.len()
    }
}
