use itertools::Itertools;

use crate::alphabet::{Alphabet, Letter};
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::word::Word;

/// A bijection of the letters that commutes with complementation; the star
/// is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LetterMap(Vec<Letter>);

impl LetterMap {
    pub fn identity(alphabet: &Alphabet) -> LetterMap {
        LetterMap(alphabet.letters().collect())
    }

    /// `images[id]` is the image of letter `id`.
    pub fn new(alphabet: &Alphabet, images: Vec<Letter>) -> Result<LetterMap> {
        let n = alphabet.len();
        if images.len() != n {
            return Err(Error::Usage(format!(
                "letter map has {} entries, alphabet has {n} letters",
                images.len()
            )));
        }
        let mut seen = vec![false; n];
        for (id, &img) in images.iter().enumerate() {
            if img.is_star() || img.id() as usize >= n {
                return Err(Error::Usage(format!("letter map sends {id} outside the alphabet")));
            }
            if seen[img.id() as usize] {
                return Err(Error::Usage("letter map is not injective".into()));
            }
            seen[img.id() as usize] = true;
            let comp = Letter::new(id as u8).complement();
            if images[comp.id() as usize] != img.complement() {
                return Err(Error::Usage(format!(
                    "letter map does not commute with complementation at {}",
                    alphabet.name(Letter::new(id as u8))
                )));
            }
        }
        Ok(LetterMap(images))
    }

    /// Exchange the two letters of `pair`, fixing everything else.
    pub fn swap_pair(alphabet: &Alphabet, pair: usize) -> LetterMap {
        let mut m = LetterMap::identity(alphabet);
        m.0.swap(2 * pair, 2 * pair + 1);
        m
    }

    pub fn apply(&self, l: Letter) -> Letter {
        if l.is_star() {
            l
        } else {
            self.0[l.id() as usize]
        }
    }
}

/// A coordinate permutation together with per-coordinate letter maps.
///
/// The image of `v` is `h_1(v_{σ(1)}) … h_d(v_{σ(d)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    sigma: Vec<usize>,
    maps: Vec<LetterMap>,
}

impl Isomorphism {
    pub fn new(sigma: Vec<usize>, maps: Vec<LetterMap>) -> Result<Isomorphism> {
        let d = sigma.len();
        if maps.len() != d {
            return Err(Error::Usage(format!("{} letter maps for {d} coordinates", maps.len())));
        }
        let mut seen = vec![false; d];
        for &s in &sigma {
            if s >= d || seen[s] {
                return Err(Error::Usage("sigma is not a permutation".into()));
            }
            seen[s] = true;
        }
        Ok(Isomorphism { sigma, maps })
    }

    pub fn identity(alphabet: &Alphabet, d: usize) -> Isomorphism {
        Isomorphism { sigma: (0..d).collect(), maps: vec![LetterMap::identity(alphabet); d] }
    }

    pub fn apply_word(&self, v: &Word) -> Word {
        Word::new(
            self.sigma
                .iter()
                .zip(&self.maps)
                .map(|(&s, h)| h.apply(v[s]))
                .collect(),
        )
    }

    pub fn apply(&self, code: &PolyboxCode) -> Result<PolyboxCode> {
        if code.dim() != self.sigma.len() {
            return Err(Error::DimensionMismatch { expected: self.sigma.len(), found: code.dim() });
        }
        let n = code.alphabet().len();
        if self.maps.iter().any(|m| m.0.len() != n) {
            return Err(Error::Usage("letter maps do not match the code's alphabet".into()));
        }
        let mut words: Vec<Word> = code.iter().map(|w| self.apply_word(w)).collect();
        words.sort();
        Ok(PolyboxCode::from_sorted_unchecked(code.alphabet().clone(), code.dim(), words))
    }
}

/// `Q = {h_1(v_{σ(1)}) … h_d(v_{σ(d)}) : v ∈ V}`.
pub fn apply_isomorphism(
    code: &PolyboxCode,
    sigma: &[usize],
    h: &[LetterMap],
) -> Result<PolyboxCode> {
    Isomorphism::new(sigma.to_vec(), h.to_vec())?.apply(code)
}

/// A group of isomorphisms: all or no coordinate permutations, times a set
/// of letter maps chosen independently at each coordinate.
#[derive(Clone, Debug)]
pub struct IsoGroup {
    permute: bool,
    maps: Vec<LetterMap>,
}

impl IsoGroup {
    /// Every coordinate permutation and every complement-compatible bijection.
    pub fn full(alphabet: &Alphabet) -> IsoGroup {
        let maps = alphabet
            .complement_compatible_maps()
            .into_iter()
            .map(LetterMap)
            .collect();
        IsoGroup { permute: true, maps }
    }

    /// Coordinate permutations, and at each coordinate either the identity or
    /// the exchange of the two letters of `pair`.
    pub fn pair_swaps(alphabet: &Alphabet, pair: usize) -> IsoGroup {
        IsoGroup {
            permute: true,
            maps: vec![LetterMap::identity(alphabet), LetterMap::swap_pair(alphabet, pair)],
        }
    }

    /// A group given by its per-coordinate letter maps. The maps must form a
    /// group for the canonical form to be well defined.
    pub fn custom(permute: bool, maps: Vec<LetterMap>) -> IsoGroup {
        IsoGroup { permute, maps }
    }
}

/// The lexicographically least image of `code` under `group`.
///
/// The least image starts with the least word reachable from any word of
/// the code, so only elements sending some word there are tried.
pub fn canonical_form(code: &PolyboxCode, group: &IsoGroup) -> PolyboxCode {
    let d = code.dim();
    if code.is_empty() || d == 0 {
        return code.clone();
    }
    let perms: Vec<Vec<usize>> = if group.permute {
        (0..d).permutations(d).collect()
    } else {
        vec![(0..d).collect()]
    };
    let n = code.alphabet().len();
    let min_image = |l: Letter| -> Letter {
        if l.is_star() {
            l
        } else {
            group.maps.iter().map(|m| m.0[l.id() as usize]).min().unwrap_or(l)
        }
    };
    debug_assert!(group.maps.iter().all(|m| m.0.len() == n));

    let mut anchor: Option<Vec<Letter>> = None;
    for v in code {
        for s in &perms {
            let img: Vec<Letter> = s.iter().map(|&j| min_image(v[j])).collect();
            if anchor.as_ref().is_none_or(|a| img < *a) {
                anchor = Some(img);
            }
        }
    }
    let anchor = anchor.expect("nonempty code");

    let mut best: Option<Vec<Word>> = None;
    let mut image: Vec<Word> = Vec::with_capacity(code.len());
    for v in code {
        for s in &perms {
            if s.iter().zip(&anchor).any(|(&j, &a)| min_image(v[j]) != a) {
                continue;
            }
            let choices: Vec<Vec<&LetterMap>> = s
                .iter()
                .zip(&anchor)
                .map(|(&j, &a)| {
                    let mut c: Vec<&LetterMap> =
                        group.maps.iter().filter(|m| m.apply(v[j]) == a).collect();
                    c.dedup_by(|x, y| x.0 == y.0);
                    c
                })
                .collect();
            for maps in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
                image.clear();
                image.extend(code.iter().map(|w| {
                    Word::new(s.iter().zip(&maps).map(|(&j, m)| m.apply(w[j])).collect())
                }));
                image.sort();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image.clone());
                }
            }
        }
    }
    PolyboxCode::from_sorted_unchecked(code.alphabet().clone(), d, best.expect("anchor reached"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;

    #[test]
    fn identity_and_swap() {
        let s = ab();
        let five = code(&s, &FIVE);
        let id = Isomorphism::identity(&s, 3);
        assert_eq!(id.apply(&five).unwrap(), five);
        let swap = vec![LetterMap::swap_pair(&s, 0); 3];
        let other = apply_isomorphism(&five, &[0, 1, 2], &swap).unwrap();
        assert_eq!(other, code(&s, &["a'a'a'", "aaa", "*a'a", "a*a'", "a'a*"]));
        assert_eq!(other.len(), 5);
        assert!(!other.has_twin_pair());
        let full = IsoGroup::full(&s);
        assert_eq!(canonical_form(&five, &full), canonical_form(&other, &full));
    }

    #[test]
    fn rejects_incompatible_maps() {
        let s = ab();
        let a = s.letter("a").unwrap();
        let b = s.letter("b").unwrap();
        // a -> b but a' -> b' is violated.
        let bad = vec![b, b.complement().complement(), a, a.complement()];
        assert!(LetterMap::new(&s, bad).is_err());
        let good = vec![b, b.complement(), a, a.complement()];
        assert!(LetterMap::new(&s, good).is_ok());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let s = ab();
        let g = IsoGroup::full(&s);
        let v = code(&s, &SIX);
        let c = canonical_form(&v, &g);
        assert_eq!(canonical_form(&c, &g), c);
        assert_eq!(c.len(), 6);
    }
}
