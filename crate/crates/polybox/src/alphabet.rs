use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

/// A letter id, or the star.
///
/// Letters `2k` and `2k + 1` are complements of each other; the star is
/// its own complement.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const STAR: Letter = Letter(u8::MAX);

    /// Largest number of letters an alphabet may hold.
    pub const MAX_LETTERS: usize = 254;

    pub const fn new(id: u8) -> Letter {
        assert!(id != u8::MAX, "id 255 is reserved for the star");
        Letter(id)
    }

    pub const fn of_pair(pair: usize, primed: bool) -> Letter {
        Letter::new((2 * pair + primed as usize) as u8)
    }

    pub const fn id(self) -> u8 {
        self.0
    }

    pub const fn is_star(self) -> bool {
        self.0 == u8::MAX
    }

    pub const fn complement(self) -> Letter {
        if self.is_star() {
            self
        } else {
            Letter(self.0 ^ 1)
        }
    }

    /// Index of the complementary pair, `None` for the star.
    pub const fn pair(self) -> Option<usize> {
        if self.is_star() {
            None
        } else {
            Some((self.0 >> 1) as usize)
        }
    }

    /// Whether this is the odd member of its pair.
    pub const fn is_primed(self) -> bool {
        !self.is_star() && self.0 & 1 == 1
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_star() {
            write!(f, "*")
        } else {
            write!(f, "#{}", self.0)
        }
    }
}

/// A finite alphabet with a fixed-point-free complementation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty()
        || name == "*"
        || name.chars().any(|c| c.is_whitespace() || c == '#' || c == '/' || c == ',')
    {
        return Err(Error::Alphabet(format!("illegal letter name {name:?}")));
    }
    Ok(())
}

/// Base name used for the `k`-th generated pair: `a`..`z`, then `p26`, `p27`, ...
fn generated_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("p{k}")
    }
}

impl Alphabet {
    /// Pairs `x`/`x'` for every base name.
    pub fn primed<S: AsRef<str>>(bases: &[S]) -> Result<Alphabet> {
        let pairs: Vec<(String, String)> = bases
            .iter()
            .map(|b| (b.as_ref().to_string(), format!("{}'", b.as_ref())))
            .collect();
        Alphabet::from_pairs(&pairs)
    }

    /// Explicit complementary pairs of names.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Alphabet> {
        if pairs.is_empty() {
            return Err(Error::Alphabet("an alphabet needs at least one pair".into()));
        }
        if 2 * pairs.len() > Letter::MAX_LETTERS {
            return Err(Error::Alphabet(format!("too many letters ({})", 2 * pairs.len())));
        }
        let mut names = Vec::with_capacity(2 * pairs.len());
        for (x, y) in pairs {
            for n in [x.as_ref(), y.as_ref()] {
                check_name(n)?;
                if names.iter().any(|m: &String| m == n) {
                    return Err(Error::Alphabet(format!("letter {n:?} declared twice")));
                }
                names.push(n.to_string());
            }
        }
        Ok(Alphabet { names })
    }

    /// `pairs` primed pairs named `a`, `b`, `c`, ...
    pub fn standard(pairs: usize) -> Alphabet {
        let bases: Vec<String> = (0..pairs).map(generated_name).collect();
        Alphabet::primed(&bases).expect("generated names are valid")
    }

    /// The alphabet {0, 1, 2, 3} with 0' = 2 and 1' = 3.
    pub fn keller() -> Alphabet {
        Alphabet::from_pairs(&[("0", "2"), ("1", "3")]).expect("valid")
    }

    /// A copy with `extra` additional primed pairs under unused names.
    pub fn extended(&self, extra: usize) -> Alphabet {
        let mut names = self.names.clone();
        let mut k = 0;
        for _ in 0..extra {
            loop {
                let base = generated_name(k);
                k += 1;
                let primed = format!("{base}'");
                if !names.contains(&base) && !names.contains(&primed) {
                    names.push(base);
                    names.push(primed);
                    break;
                }
            }
        }
        Alphabet { names }
    }

    /// Whether `other`'s letters are a prefix of ours (same ids, same names).
    pub fn extends(&self, other: &Alphabet) -> bool {
        self.names.len() >= other.names.len() && self.names[..other.names.len()] == other.names[..]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.names.len() / 2
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.is_star() || (l.id() as usize) < self.names.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u8).map(Letter::new)
    }

    pub fn name(&self, l: Letter) -> &str {
        if l.is_star() {
            "*"
        } else {
            &self.names[l.id() as usize]
        }
    }

    /// Resolve a token: a name, `*`, or a name followed by primes (each prime
    /// complements once).
    pub fn letter(&self, token: &str) -> Option<Letter> {
        if token == "*" {
            return Some(Letter::STAR);
        }
        if let Some(i) = self.names.iter().position(|n| n == token) {
            return Some(Letter::new(i as u8));
        }
        let stripped = token.trim_end_matches('\'');
        let primes = token.len() - stripped.len();
        if primes == 0 || stripped.is_empty() {
            return None;
        }
        let base = self.names.iter().position(|n| n == stripped)?;
        let l = Letter::new(base as u8);
        Some(if primes % 2 == 1 { l.complement() } else { l })
    }

    /// Whether words can be printed without separators.
    fn compact(&self) -> bool {
        self.names
            .iter()
            .all(|n| n.trim_end_matches('\'').chars().count() == 1)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let parts = w.letters().iter().map(|&l| self.name(l));
        if self.compact() {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(" ")
        }
    }

    /// Parse a word. Whitespace-separated tokens are used when present;
    /// otherwise every character (with trailing primes) is one letter.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.compact() {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            let mut out: Vec<String> = Vec::new();
            for c in text.chars() {
                match (c, out.last_mut()) {
                    ('\'', Some(last)) => last.push(c),
                    _ => out.push(c.to_string()),
                }
            }
            out
        };
        let mut letters = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let l = self.letter(t).ok_or_else(|| Error::WordSyntax {
                input: text.to_string(),
                reason: format!("unknown letter {t:?}"),
            })?;
            letters.push(l);
        }
        Ok(Word::new(letters))
    }

    /// Every bijection of the letters that commutes with complementation.
    pub fn complement_compatible_maps(&self) -> Vec<Vec<Letter>> {
        let p = self.pair_count();
        let mut out = Vec::new();
        for perm in itertools::Itertools::permutations(0..p, p) {
            for flips in 0u64..(1u64 << p) {
                let mut img = vec![Letter::STAR; 2 * p];
                for (src, &dst) in perm.iter().enumerate() {
                    let f = (flips >> src) & 1 == 1;
                    img[2 * src] = Letter::of_pair(dst, f);
                    img[2 * src + 1] = Letter::of_pair(dst, !f);
                }
                out.push(img);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_complements() {
        let s = Alphabet::standard(2);
        let a = s.letter("a").unwrap();
        assert_eq!(s.letter("a'"), Some(a.complement()));
        assert_eq!(s.letter("a''"), Some(a));
        assert_eq!(s.letter("*"), Some(Letter::STAR));
        assert_eq!(s.letter("c"), None);
        assert_eq!(Letter::STAR.complement(), Letter::STAR);
        assert_eq!(s.format_word(&s.parse_word("a'b*").unwrap()), "a'b*");
        assert_eq!(s.parse_word("a' b *").unwrap(), s.parse_word("a'b*").unwrap());
    }

    #[test]
    fn keller_alphabet_pairs_by_difference_two() {
        let k = Alphabet::keller();
        for (x, y) in [("0", "2"), ("1", "3")] {
            assert_eq!(k.letter(x).unwrap().complement(), k.letter(y).unwrap());
        }
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::from_pairs(&[("a", "a")]).is_err());
        assert!(Alphabet::from_pairs::<&str>(&[]).is_err());
        assert!(Alphabet::primed(&["*"]).is_err());
    }

    #[test]
    fn extension_keeps_ids() {
        let s = Alphabet::standard(2);
        let e = s.extended(2);
        assert!(e.extends(&s));
        assert_eq!(e.pair_count(), 4);
        assert_eq!(e.name(Letter::new(4)), "c");
    }

    #[test]
    fn compatible_maps_count() {
        assert_eq!(Alphabet::standard(2).complement_compatible_maps().len(), 8);
        assert_eq!(Alphabet::standard(3).complement_compatible_maps().len(), 48);
    }

    #[test]
    fn multi_char_names_need_spaces() {
        let s = Alphabet::standard(30);
        let w = s.parse_word("p27 a' *").unwrap();
        assert_eq!(s.format_word(&w), "p27 a' *");
        assert_eq!(s.parse_word("p27").unwrap().dim(), 1);
    }
}
