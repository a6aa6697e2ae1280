//! Exact measures in the equicomplementary realization.
//!
//! Every letter `s` is realized as the set of transversals (one letter per
//! complementary pair) containing `s`; the star is the whole space. Measures
//! are relative to the whole space and always dyadic.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};

use crate::alphabet::{Alphabet, Letter};
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::word::Word;

/// `numerator / 2^exponent`, kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicRatio {
    numerator: u128,
    exponent: u32,
}

impl DyadicRatio {
    pub const ZERO: DyadicRatio = DyadicRatio { numerator: 0, exponent: 0 };
    pub const ONE: DyadicRatio = DyadicRatio { numerator: 1, exponent: 0 };

    pub fn new(numerator: u128, exponent: u32) -> DyadicRatio {
        if numerator == 0 {
            return DyadicRatio::ZERO;
        }
        let tz = numerator.trailing_zeros().min(exponent);
        DyadicRatio { numerator: numerator >> tz, exponent: exponent - tz }
    }

    /// `2^-k`.
    pub fn pow2_inv(k: u32) -> DyadicRatio {
        DyadicRatio { numerator: 1, exponent: k }
    }

    pub fn numerator(self) -> u128 {
        self.numerator
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    /// Numerator over the common denominator `2^k`, `k >= self.exponent`.
    fn scaled(self, k: u32) -> u128 {
        self.numerator
            .checked_shl(k - self.exponent)
            .filter(|x| x >> (k - self.exponent) == self.numerator)
            .expect("dyadic ratio overflow")
    }
}

impl Add for DyadicRatio {
    type Output = DyadicRatio;
    fn add(self, o: DyadicRatio) -> DyadicRatio {
        let k = self.exponent.max(o.exponent);
        let n = self.scaled(k).checked_add(o.scaled(k)).expect("dyadic ratio overflow");
        DyadicRatio::new(n, k)
    }
}

impl Sub for DyadicRatio {
    type Output = DyadicRatio;
    /// Panics if the result would be negative.
    fn sub(self, o: DyadicRatio) -> DyadicRatio {
        let k = self.exponent.max(o.exponent);
        let n = self.scaled(k).checked_sub(o.scaled(k)).expect("negative dyadic ratio");
        DyadicRatio::new(n, k)
    }
}

impl Mul for DyadicRatio {
    type Output = DyadicRatio;
    fn mul(self, o: DyadicRatio) -> DyadicRatio {
        let n = self.numerator.checked_mul(o.numerator).expect("dyadic ratio overflow");
        DyadicRatio::new(n, self.exponent + o.exponent)
    }
}

impl Sum for DyadicRatio {
    fn sum<I: Iterator<Item = DyadicRatio>>(iter: I) -> DyadicRatio {
        iter.fold(DyadicRatio::ZERO, Add::add)
    }
}

impl Ord for DyadicRatio {
    fn cmp(&self, o: &DyadicRatio) -> Ordering {
        let k = self.exponent.max(o.exponent);
        self.scaled(k).cmp(&o.scaled(k))
    }
}

impl PartialOrd for DyadicRatio {
    fn partial_cmp(&self, o: &DyadicRatio) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for DyadicRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.numerator),
            k if k < 128 => write!(f, "{}/{}", self.numerator, 1u128 << k),
            k => write!(f, "{}/2^{}", self.numerator, k),
        }
    }
}

impl fmt::Debug for DyadicRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Relative measure of `Es ∩ Et`, as a power of two `2^-k`; `None` when empty.
fn letter_exponent(s: Letter, t: Letter) -> Option<u32> {
    match (s.is_star(), t.is_star()) {
        (true, true) => Some(0),
        (true, false) | (false, true) => Some(1),
        _ if s == t => Some(1),
        _ if t == s.complement() => None,
        _ => Some(2),
    }
}

pub fn letter_intersection_measure(s: Letter, t: Letter) -> DyadicRatio {
    letter_exponent(s, t).map_or(DyadicRatio::ZERO, DyadicRatio::pow2_inv)
}

/// Measure of `ǔ ∩ v̌` relative to the whole space, without a dimension check.
pub(crate) fn box_measure(u: &[Letter], v: &[Letter]) -> DyadicRatio {
    let mut k = 0;
    for (&s, &t) in u.iter().zip(v) {
        match letter_exponent(s, t) {
            Some(e) => k += e,
            None => return DyadicRatio::ZERO,
        }
    }
    DyadicRatio::pow2_inv(k)
}

pub fn box_intersection_measure(u: &Word, v: &Word) -> Result<DyadicRatio> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: v.dim() });
    }
    Ok(box_measure(u.letters(), v.letters()))
}

/// `g` without checks; `w` must be star-free.
pub(crate) fn g_raw(v: &[Letter], w: &[Letter]) -> u64 {
    let mut g = 1u64;
    for (&a, &b) in v.iter().zip(w) {
        if a.is_star() || a == b {
            g <<= 1;
        } else if a == b.complement() {
            return 0;
        }
    }
    g
}

/// Per coordinate: 2 if `v_i` is `w_i` or a star, 0 if it is `w_i'`, else 1.
///
/// For star-free `v`, `g(v, w) / 4^d` is the measure of `v̌ ∩ w̌`.
pub fn g_value(v: &Word, w: &Word) -> Result<u64> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: v.dim() });
    }
    if !w.is_star_free() {
        return Err(Error::Usage("g is only defined against star-free words".into()));
    }
    if w.dim() > 62 {
        return Err(Error::Usage("dimension too large for g".into()));
    }
    Ok(g_raw(v.letters(), w.letters()))
}

/// Product of 2 per star and 1 per letter.
pub fn g_bar(v: &Word) -> u64 {
    1u64 << v.letters().iter().filter(|l| l.is_star()).count()
}

/// Whether `w̌` lies inside the union of the boxes of `code`.
pub fn covers(w: &Word, code: &PolyboxCode) -> Result<bool> {
    if w.dim() != code.dim() {
        return Err(Error::DimensionMismatch { expected: code.dim(), found: w.dim() });
    }
    Ok(covers_raw(w.letters(), code))
}

/// `Σ_{v ∈ code} g(v, w)` for star-free `w`.
pub fn g_sum(w: &Word, code: &PolyboxCode) -> Result<u64> {
    code.iter().map(|v| g_value(v, w)).sum()
}

/// Covering decided by the g-sum: `w` is covered iff the sum is `2^d`.
pub fn covers_by_g_sum(w: &Word, code: &PolyboxCode) -> Result<bool> {
    if w.dim() != code.dim() {
        return Err(Error::DimensionMismatch { expected: code.dim(), found: w.dim() });
    }
    Ok(g_sum(w, code)? == 1u64 << w.dim())
}

pub(crate) fn covers_raw(w: &[Letter], code: &PolyboxCode) -> bool {
    let whole = box_measure(w, w);
    let mut sum = DyadicRatio::ZERO;
    for v in code {
        sum = sum + box_measure(w, v.letters());
        if sum > whole {
            return false;
        }
    }
    sum == whole
}

fn check_compatible(v: &PolyboxCode, w: &PolyboxCode) -> Result<()> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: v.dim(), found: w.dim() });
    }
    if !v.alphabet().extends(w.alphabet()) && !w.alphabet().extends(v.alphabet()) {
        return Err(Error::Usage("codes are over different alphabets".into()));
    }
    Ok(())
}

/// Mutual covering: the two codes have the same union.
pub fn equivalent(v: &PolyboxCode, w: &PolyboxCode) -> Result<bool> {
    check_compatible(v, w)?;
    Ok(w.iter().all(|x| covers_raw(x.letters(), v)) && v.iter().all(|x| covers_raw(x.letters(), w)))
}

/// Whether the boxes of the code fill the whole space.
pub fn is_partition_code(code: &PolyboxCode) -> bool {
    let d = code.dim();
    if d >= 64 {
        let total: DyadicRatio = code.iter().map(|v| box_measure(v.letters(), v.letters())).sum();
        return total == DyadicRatio::ONE;
    }
    let mut sum: u128 = 0;
    for v in code {
        sum += g_bar(v) as u128;
    }
    sum == 1u128 << d
}

/// A transversal: one chosen letter per complementary pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    choice: Vec<Letter>,
}

impl Cell {
    /// Choose the given letters; every other pair takes its even letter.
    pub fn choosing(alphabet: &Alphabet, letters: &[Letter]) -> Result<Cell> {
        let mut choice: Vec<Letter> =
            (0..alphabet.pair_count()).map(|p| Letter::of_pair(p, false)).collect();
        let mut fixed = vec![false; choice.len()];
        for &l in letters {
            let Some(p) = l.pair().filter(|&p| p < choice.len()) else {
                return Err(Error::Usage("a cell chooses letters, not stars".into()));
            };
            if fixed[p] && choice[p] != l {
                return Err(Error::Usage(format!(
                    "a cell cannot choose both {} and {}",
                    alphabet.name(l),
                    alphabet.name(l.complement())
                )));
            }
            fixed[p] = true;
            choice[p] = l;
        }
        Ok(Cell { choice })
    }

    pub fn chooses(&self, l: Letter) -> bool {
        match l.pair() {
            None => true,
            Some(p) => self.choice.get(p) == Some(&l),
        }
    }

    pub fn choice(&self) -> &[Letter] {
        &self.choice
    }
}

/// `{v_{i^c} : v_i = * or x chooses v_i}`.
pub fn slice(code: &PolyboxCode, i: usize, x: &Cell) -> Result<PolyboxCode> {
    code.check_coord(i)?;
    if x.choice.len() < code.alphabet().pair_count() {
        return Err(Error::Usage("cell does not cover the code's alphabet".into()));
    }
    let mut words: Vec<Word> = code
        .iter()
        .filter(|v| x.chooses(v[i]))
        .map(|v| v.without(i))
        .collect();
    words.sort();
    PolyboxCode::new(code.alphabet().clone(), code.dim() - 1, words)
}

/// Whether the union is a cylinder along coordinate `i`: for every pair at
/// `i`, the two sides have equivalent projections.
pub fn is_cylinder(code: &PolyboxCode, i: usize) -> Result<bool> {
    let dist = code.distribution(i)?;
    if !dist.leftover.is_empty() {
        return Err(Error::Usage(format!("a word has a star at coordinate {}", i + 1)));
    }
    for g in &dist.groups {
        let a = code.section(i, g.letter);
        let b = code.section(i, g.letter.complement());
        if !equivalent(&a, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lower bound `m + n` on `|V|` from slices through `l1, l2` and through
/// `l1', l2'`.
pub fn slice_bound(code: &PolyboxCode, i: usize, l1: Letter, l2: Letter) -> Result<usize> {
    code.check_coord(i)?;
    if !code.is_star_free() {
        return Err(Error::Usage("slice bound needs a star-free code".into()));
    }
    let (Some(p1), Some(p2)) = (l1.pair(), l2.pair()) else {
        return Err(Error::Usage("slice bound needs letters, not stars".into()));
    };
    if p1 == p2 {
        return Err(Error::Usage("the two letters must come from different pairs".into()));
    }
    let mut free: Vec<usize> = code.iter().filter_map(|v| v[i].pair()).collect();
    free.sort_unstable();
    free.dedup();
    free.retain(|&p| p != p1 && p != p2);
    if free.len() > 24 {
        return Err(Error::Resource("too many letter pairs at the coordinate".into()));
    }
    let min_slice = |a: Letter, b: Letter| -> usize {
        let mut best = usize::MAX;
        for mask in 0u32..(1u32 << free.len()) {
            let chosen = |l: Letter| -> bool {
                let p = l.pair().expect("star-free");
                if p == a.pair().unwrap() {
                    l == a
                } else if p == b.pair().unwrap() {
                    l == b
                } else {
                    let k = free.iter().position(|&q| q == p).expect("pair occurs");
                    l.is_primed() == ((mask >> k) & 1 == 1)
                }
            };
            best = best.min(code.iter().filter(|v| chosen(v[i])).count());
        }
        best
    };
    Ok(min_slice(l1, l2) + min_slice(l1.complement(), l2.complement()))
}
