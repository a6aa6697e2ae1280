use std::ops::Index;

use crate::alphabet::Letter;
use crate::error::{Error, Result};

/// A sequence of letters and stars.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Build from raw ids; 255 is the star.
    pub fn from_ids(ids: &[u8]) -> Word {
        Word(
            ids.iter()
                .map(|&i| if i == u8::MAX { Letter::STAR } else { Letter::new(i) })
                .collect(),
        )
    }

    pub fn stars(d: usize) -> Word {
        Word(vec![Letter::STAR; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_star_free(&self) -> bool {
        self.0.iter().all(|l| !l.is_star())
    }

    /// The subword on the given coordinates, in the given order.
    pub fn project(&self, coords: &[usize]) -> Word {
        Word(coords.iter().map(|&i| self.0[i]).collect())
    }

    /// The word with coordinate `i` deleted.
    pub fn without(&self, i: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(i);
        Word(v)
    }

    /// The word with coordinate `i` replaced.
    pub fn with(&self, i: usize, l: Letter) -> Word {
        let mut v = self.0.clone();
        v[i] = l;
        Word(v)
    }

    /// The word with `l` inserted so that it lands at coordinate `i`.
    pub fn inserted(&self, i: usize, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.insert(i, l);
        Word(v)
    }
}

impl Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

fn same_dim(u: &Word, v: &Word) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: v.dim() });
    }
    Ok(())
}

pub(crate) fn dichotomous(u: &[Letter], v: &[Letter]) -> bool {
    u.iter().zip(v).any(|(&a, &b)| !a.is_star() && b == a.complement())
}

/// The single complementary coordinate of a twin pair.
pub(crate) fn twin_coordinate(u: &[Letter], v: &[Letter]) -> Option<usize> {
    let mut found = None;
    for (j, (&a, &b)) in u.iter().zip(v).enumerate() {
        if a == b {
            continue;
        }
        if a.is_star() || b != a.complement() || found.is_some() {
            return None;
        }
        found = Some(j);
    }
    found
}

/// Some coordinate carries a letter in `u` and its complement in `v`.
pub fn is_dichotomous(u: &Word, v: &Word) -> Result<bool> {
    same_dim(u, v)?;
    Ok(dichotomous(&u.0, &v.0))
}

/// Exactly one complementary coordinate, equal elsewhere.
pub fn is_twin_pair(u: &Word, v: &Word) -> Result<bool> {
    same_dim(u, v)?;
    Ok(twin_coordinate(&u.0, &v.0).is_some())
}
