//! Forced structures of small twin-pair-free codes, and related
//! enumerations.

mod compositions;
mod covers;
mod generate;

pub use compositions::{cover_compositions, cover_compositions_from, Composition};
pub use covers::{composition_of, enumerate_covers, for_each_cover, CoverFamily};
pub use generate::{random_isomorphism, random_partition_code};

use std::sync::Arc;

use crate::alphabet::{Alphabet, Letter};
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::measure::{box_measure, covers_raw, equivalent, is_partition_code};
use crate::word::Word;

/// Two equivalent two-word codes `U`, `P` on coordinates `A = {i1 < i2}`:
/// `U_A = {*l2, l1 l2'}`, `P_A = {l1 *, l1' l2}`, all four words equal to
/// `common` off `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairStructure {
    pub coords: [usize; 2],
    pub l1: Letter,
    pub l2: Letter,
    /// The shared letters on the remaining coordinates, in increasing order.
    pub common: Word,
    /// True when the second input plays the role of `U`.
    pub swapped: bool,
}

impl PairStructure {
    fn assemble(&self, dim: usize, a: [Letter; 2]) -> Word {
        let mut out = Vec::with_capacity(dim);
        let mut rest = self.common.letters().iter();
        for i in 0..dim {
            if i == self.coords[0] {
                out.push(a[0]);
            } else if i == self.coords[1] {
                out.push(a[1]);
            } else {
                out.push(*rest.next().expect("common has d - 2 letters"));
            }
        }
        Word::new(out)
    }

    /// The two codes in input order.
    pub fn rebuild(&self, alphabet: &Arc<Alphabet>) -> Result<(PolyboxCode, PolyboxCode)> {
        let d = self.common.dim() + 2;
        let (l1, l2) = (self.l1, self.l2);
        let s = Letter::STAR;
        let u = PolyboxCode::new(
            alphabet.clone(),
            d,
            [self.assemble(d, [s, l2]), self.assemble(d, [l1, l2.complement()])],
        )?;
        let p = PolyboxCode::new(
            alphabet.clone(),
            d,
            [self.assemble(d, [l1, s]), self.assemble(d, [l1.complement(), l2])],
        )?;
        Ok(if self.swapped { (p, u) } else { (u, p) })
    }
}

/// The five-word template on `A = {i1 < i2 < i3}`:
/// `{l1 l2 l3, l1' l2' l3', x l2 l3', l1' y l3, l1 l2' z}` where `x, y, z`
/// are stars (partition case) or the letters of `ambient` (cover case).
/// Off `A` the words are stars, or equal to `ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveStructure {
    pub coords: [usize; 3],
    pub letters: [Letter; 3],
    pub ambient: Option<Word>,
}

impl FiveStructure {
    /// The template words in dimension `dim`.
    pub fn words(&self, dim: usize) -> Vec<Word> {
        let [l1, l2, l3] = self.letters;
        let c = |l: Letter| l.complement();
        let fill = |i: usize| self.ambient.as_ref().map_or(Letter::STAR, |u| u[i]);
        let [i1, i2, i3] = self.coords;
        let rows = [
            [l1, l2, l3],
            [c(l1), c(l2), c(l3)],
            [fill(i1), l2, c(l3)],
            [c(l1), fill(i2), l3],
            [l1, c(l2), fill(i3)],
        ];
        rows.iter()
            .map(|r| {
                let mut w: Vec<Letter> = (0..dim).map(fill).collect();
                for (k, &i) in self.coords.iter().enumerate() {
                    w[i] = r[k];
                }
                Word::new(w)
            })
            .collect()
    }

    pub fn rebuild(&self, alphabet: &Arc<Alphabet>, dim: usize) -> Result<PolyboxCode> {
        PolyboxCode::new(alphabet.clone(), dim, self.words(dim))
    }
}

/// A six-word partition code split at `coordinate`: one word `l` followed
/// by stars, and five words with `l'` there following the five-word
/// template on `inner.coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixStructure {
    pub coordinate: usize,
    pub letter: Letter,
    pub inner: FiveStructure,
}

impl SixStructure {
    pub fn rebuild(&self, alphabet: &Arc<Alphabet>, dim: usize) -> Result<PolyboxCode> {
        let mut words = self.inner.words(dim);
        for w in &mut words {
            *w = w.with(self.coordinate, self.letter.complement());
        }
        words.push(Word::stars(dim).with(self.coordinate, self.letter));
        PolyboxCode::new(alphabet.clone(), dim, words)
    }
}

fn same_words(code: &PolyboxCode, mut words: Vec<Word>) -> bool {
    words.sort();
    words == code.words()
}

/// Structure of two disjoint, equivalent, twin-pair-free two-word codes.
pub fn classify_pair2(u: &PolyboxCode, p: &PolyboxCode) -> Result<PairStructure> {
    if u.len() != 2 || p.len() != 2 {
        return Err(Error::Precondition("both codes must have two words".into()));
    }
    if u.dim() != p.dim() || u.dim() < 2 {
        return Err(Error::Precondition("codes must share a dimension of at least 2".into()));
    }
    if u.iter().any(|w| p.contains(w)) {
        return Err(Error::Precondition("codes are not disjoint".into()));
    }
    if u.has_twin_pair() || p.has_twin_pair() {
        return Err(Error::Precondition("a code contains a twin pair".into()));
    }
    if !equivalent(u, p)? {
        return Err(Error::Precondition("codes are not equivalent".into()));
    }
    let d = u.dim();
    for i1 in 0..d {
        for i2 in i1 + 1..d {
            for swapped in [false, true] {
                let (x, y) = if swapped { (p, u) } else { (u, p) };
                if let Some(s) = match_pair(x, y, [i1, i2], swapped) {
                    return Ok(s);
                }
            }
        }
    }
    Err(Error::TemplateMismatch("no coordinate pair fits the two-word template".into()))
}

fn match_pair(x: &PolyboxCode, y: &PolyboxCode, a: [usize; 2], swapped: bool) -> Option<PairStructure> {
    let [i1, i2] = a;
    let first = x.iter().find(|w| w[i1].is_star())?;
    let second = x.iter().find(|w| !w[i1].is_star())?;
    let s = PairStructure {
        coords: a,
        l1: second[i1],
        l2: first[i2],
        common: Word::new(
            (0..x.dim()).filter(|&i| i != i1 && i != i2).map(|i| first[i]).collect(),
        ),
        swapped,
    };
    if s.l2.is_star() {
        return None;
    }
    let (ru, rp) = s.rebuild(x.alphabet()).ok()?;
    let (ru, rp) = if swapped { (rp, ru) } else { (ru, rp) };
    (ru == *x && rp == *y).then_some(s)
}

/// Structure of a five-word twin-pair-free partition code.
pub fn classify_partition5(code: &PolyboxCode) -> Result<FiveStructure> {
    if code.len() != 5 || !is_partition_code(code) || code.has_twin_pair() {
        return Err(Error::Precondition(
            "expected a five-word partition code without twin pairs".into(),
        ));
    }
    match_five(code, None)
}

fn match_five(code: &PolyboxCode, ambient: Option<&Word>) -> Result<FiveStructure> {
    let d = code.dim();
    let off = |w: &Word, i: usize| match ambient {
        Some(u) => w[i] == u[i],
        None => w[i].is_star(),
    };
    let coords: Vec<usize> = (0..d).filter(|&i| code.iter().any(|w| !off(w, i))).collect();
    let Ok(coords) = <[usize; 3]>::try_from(coords) else {
        return Err(Error::TemplateMismatch(format!(
            "the words differ from the background on {} coordinates, not 3",
            (0..d).filter(|&i| code.iter().any(|w| !off(w, i))).count()
        )));
    };
    for w in code {
        if coords.iter().any(|&i| off(w, i)) {
            continue;
        }
        let s = FiveStructure {
            coords,
            letters: [w[coords[0]], w[coords[1]], w[coords[2]]],
            ambient: ambient.cloned(),
        };
        if same_words(code, s.words(d)) {
            return Ok(s);
        }
    }
    Err(Error::TemplateMismatch("no choice of letters reproduces the code".into()))
}

/// Structure of a six-word twin-pair-free partition code.
pub fn classify_partition6(code: &PolyboxCode) -> Result<SixStructure> {
    if code.len() != 6 || !is_partition_code(code) || code.has_twin_pair() {
        return Err(Error::Precondition(
            "expected a six-word partition code without twin pairs".into(),
        ));
    }
    let d = code.dim();
    for i in 0..d {
        for g in code.distribution(i)?.groups {
            for (single, rest) in [
                (&g.with_letter, &g.with_complement),
                (&g.with_complement, &g.with_letter),
            ] {
                if single.len() != 1 || rest.len() != 5 {
                    continue;
                }
                let l = single[0][i];
                let inner_words: Vec<Word> = rest.iter().map(|w| w.without(i)).collect();
                let Ok(inner) = PolyboxCode::new(code.alphabet().clone(), d - 1, inner_words) else {
                    continue;
                };
                let Ok(f) = match_five(&inner, None) else { continue };
                let lift = |j: usize| if j >= i { j + 1 } else { j };
                let s = SixStructure {
                    coordinate: i,
                    letter: l,
                    inner: FiveStructure {
                        coords: f.coords.map(lift),
                        letters: f.letters,
                        ambient: None,
                    },
                };
                if s.rebuild(code.alphabet(), d).ok().as_ref() == Some(code) {
                    return Ok(s);
                }
            }
        }
    }
    Err(Error::TemplateMismatch("no coordinate splits the code as 1 + 5".into()))
}

fn check_cover_hypotheses(code: &PolyboxCode, u: &Word) -> Result<()> {
    if u.dim() != code.dim() {
        return Err(Error::DimensionMismatch { expected: code.dim(), found: u.dim() });
    }
    if !code.is_star_free() || !u.is_star_free() {
        return Err(Error::Usage("code and word must be star-free".into()));
    }
    if !covers_raw(u.letters(), code) {
        return Err(Error::Usage("the word is not covered by the code".into()));
    }
    if let Some(v) = code.iter().find(|v| box_measure(u.letters(), v.letters()).is_zero()) {
        return Err(Error::Usage(format!(
            "{} does not meet {}",
            code.format_word(v),
            code.format_word(u)
        )));
    }
    Ok(())
}

/// Replace every letter agreeing with `u` by a star.
///
/// When `u` is covered by `code` and meets every word, the result is a
/// partition code.
pub fn bar_code(code: &PolyboxCode, u: &Word) -> Result<PolyboxCode> {
    check_cover_hypotheses(code, u)?;
    let words = code.iter().map(|v| {
        Word::new(
            v.letters()
                .iter()
                .zip(u.letters())
                .map(|(&a, &b)| if a == b { Letter::STAR } else { a })
                .collect(),
        )
    });
    let bar = PolyboxCode::new(code.alphabet().clone(), code.dim(), words)
        .map_err(|e| Error::Defect(format!("starred code is not a polybox code: {e}")))?;
    if !is_partition_code(&bar) {
        return Err(Error::Defect("starred code is not a partition code".into()));
    }
    Ok(bar)
}

/// Structure of a five-word twin-pair-free code covering `u`.
pub fn classify_cover5(code: &PolyboxCode, u: &Word) -> Result<FiveStructure> {
    if code.len() != 5 {
        return Err(Error::Precondition("expected five words".into()));
    }
    if code.has_twin_pair() {
        return Err(Error::Precondition("the code contains a twin pair".into()));
    }
    if code.contains(u) {
        return Err(Error::Precondition("the covered word belongs to the code".into()));
    }
    check_cover_hypotheses(code, u).map_err(|e| Error::Precondition(e.to_string()))?;
    match_five(code, Some(u))
}

/// Two words agreeing or complementary at every coordinate, complementary
/// at an odd number of letter coordinates.
pub fn odd_complement_pair(code: &PolyboxCode) -> Result<Option<(Word, Word)>> {
    if code.len() < 2 || !is_partition_code(code) {
        return Err(Error::Usage("expected a partition code with at least two words".into()));
    }
    let words = code.words();
    for (i, v) in words.iter().enumerate() {
        'next: for w in &words[i + 1..] {
            let mut odd = false;
            for (&a, &b) in v.letters().iter().zip(w.letters()) {
                if a == b {
                    continue;
                }
                if a.is_star() || b != a.complement() {
                    continue 'next;
                }
                odd = !odd;
            }
            if odd {
                return Ok(Some((v.clone(), w.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::apply_isomorphism;
    use crate::iso::LetterMap;
    use crate::testutil::*;

    #[test]
    fn pair_structure_round_trip() {
        let s = ab();
        let u = code(&s, &["*a", "ba'"]);
        let p = code(&s, &["b*", "b'a"]);
        let st = classify_pair2(&u, &p).unwrap();
        assert_eq!(st.coords, [0, 1]);
        assert_eq!((st.l1, st.l2), (s.letter("b").unwrap(), s.letter("a").unwrap()));
        assert!(!st.swapped);
        assert_eq!(st.rebuild(&s).unwrap(), (u.clone(), p.clone()));
        let back = classify_pair2(&p, &u).unwrap();
        assert!(back.swapped);
        assert_eq!(back.rebuild(&s).unwrap(), (p.clone(), u.clone()));
        assert!(matches!(classify_pair2(&u, &u), Err(Error::Precondition(_))));
    }

    #[test]
    fn pair_structure_with_common_suffix() {
        let s = abc();
        let u = code(&s, &["*acc", "ba'cc"]);
        let p = code(&s, &["b*cc", "b'acc"]);
        let st = classify_pair2(&u, &p).unwrap();
        assert_eq!(st.coords, [0, 1]);
        assert_eq!(st.common, word(&s, "cc"));
        // move the pair to coordinates 1 and 3
        let maps = vec![LetterMap::identity(&s); 4];
        let sigma = [2, 0, 3, 1];
        let u2 = apply_isomorphism(&u, &sigma, &maps).unwrap();
        let p2 = apply_isomorphism(&p, &sigma, &maps).unwrap();
        let st2 = classify_pair2(&u2, &p2).unwrap();
        assert_eq!(st2.coords, [1, 3]);
        assert_eq!(st2.rebuild(&s).unwrap(), (u2, p2));
    }

    #[test]
    fn five_word_partition() {
        let s = ab();
        let v = code(&s, &FIVE);
        let st = classify_partition5(&v).unwrap();
        let a = s.letter("a").unwrap();
        assert_eq!(st.coords, [0, 1, 2]);
        assert_eq!(st.letters, [a, a, a]);
        assert_eq!(st.rebuild(&s, 3).unwrap(), v);

        let maps = vec![LetterMap::identity(&s); 4];
        let wide = PolyboxCode::new(s.clone(), 4, v.iter().map(|w| w.inserted(3, Letter::STAR)))
            .unwrap();
        let moved = apply_isomorphism(&wide, &[3, 1, 0, 2], &maps).unwrap();
        let st = classify_partition5(&moved).unwrap();
        assert_eq!(st.coords, [1, 2, 3]);
        assert_eq!(st.rebuild(&s, 4).unwrap(), moved);

        let not_partition = code(&s, &["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        assert!(matches!(classify_partition5(&not_partition), Err(Error::Precondition(_))));
    }

    #[test]
    fn six_word_partition() {
        let s = ab();
        let v = code(&s, &["b***", "b'aaa", "b'a'a'a'", "b'*aa'", "b'a'*a", "b'aa'*"]);
        let st = classify_partition6(&v).unwrap();
        assert_eq!(st.coordinate, 0);
        assert_eq!(st.letter, s.letter("b").unwrap());
        assert_eq!(st.inner.coords, [1, 2, 3]);
        assert_eq!(st.rebuild(&s, 4).unwrap(), v);

        let maps = vec![LetterMap::identity(&s); 4];
        let moved = apply_isomorphism(&v, &[1, 2, 0, 3], &maps).unwrap();
        let st = classify_partition6(&moved).unwrap();
        assert_eq!(st.coordinate, 2);
        assert_eq!(st.rebuild(&s, 4).unwrap(), moved);
        assert!(matches!(classify_partition6(&code(&s, &FIVE)), Err(Error::Precondition(_))));
    }

    #[test]
    fn five_word_cover() {
        let s = ab();
        let v = code(&s, &["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        let u = word(&s, "bbb");
        let st = classify_cover5(&v, &u).unwrap();
        let a = s.letter("a").unwrap();
        assert_eq!(st.coords, [0, 1, 2]);
        assert_eq!(st.letters, [a, a, a]);
        assert_eq!(st.rebuild(&s, 3).unwrap(), v);

        let wide = PolyboxCode::new(s.clone(), 5, v.iter().map(|w| {
            let b = s.letter("b").unwrap();
            w.inserted(1, b).inserted(4, b)
        }))
        .unwrap();
        let wu = word(&s, "bbbbb");
        let st = classify_cover5(&wide, &wu).unwrap();
        assert_eq!(st.coords, [0, 2, 3]);
        assert_eq!(st.rebuild(&s, 5).unwrap(), wide);

        let four = code(&s, &["aaa", "a'a'a'", "baa'", "a'ba"]);
        assert!(matches!(classify_cover5(&four, &u), Err(Error::Precondition(_))));
    }

    #[test]
    fn starred_codes() {
        let s = ab();
        let v = code(&s, &["aaa", "a'a'a'", "baa'", "a'ba", "aa'b"]);
        let bar = bar_code(&v, &word(&s, "bbb")).unwrap();
        assert_eq!(bar, code(&s, &FIVE));

        let single = code(&s, &["abab"]);
        let bar = bar_code(&single, &word(&s, "abab")).unwrap();
        assert_eq!(bar, code(&s, &["****"]));

        let t = abc();
        let split = code(&t, &["ab", "a'b", "ab'", "a'b'"]);
        assert_eq!(bar_code(&split, &word(&t, "cc")).unwrap(), split);
        assert!(matches!(bar_code(&split, &word(&t, "aa")), Err(Error::Usage(_))));

        let full = code(&s, &["aa", "a'a", "aa'", "a'a'"]);
        assert!(matches!(bar_code(&full, &word(&s, "aa")), Err(Error::Usage(_))));
    }

    #[test]
    fn odd_pairs() {
        let s = ab();
        let (v, w) = odd_complement_pair(&code(&s, &FIVE)).unwrap().unwrap();
        assert_eq!((v, w), (word(&s, "aaa"), word(&s, "a'a'a'")));
        let (v, w) = odd_complement_pair(&code(&s, &["a*", "a'*"])).unwrap().unwrap();
        assert_eq!((v, w), (word(&s, "a*"), word(&s, "a'*")));
        assert!(odd_complement_pair(&code(&s, &["a*"])).is_err());
    }
}
