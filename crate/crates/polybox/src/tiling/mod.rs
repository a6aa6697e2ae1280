//! Cube tilings `[0,1)^d + T + 2Z^d` with half-integer translations.
//!
//! Translations are stored in half units (`t_i = k/2`, `k` in `0..4`) and
//! sample points in quarter units (`x_i = k/4`, `k` in `0..8`), so every
//! comparison is integer arithmetic. Two cubes meet when their closed cubes
//! overlap in positive volume.

mod generate;

pub use generate::random_tiling;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::alphabet::{Alphabet, Letter};
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::word::Word;

/// Largest dimension accepted by validation (`4^d` grid cells).
pub const MAX_TILING_DIM: usize = 10;

/// A validated two-periodic tiling: `2^d` translations in half units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPeriodicTiling {
    dim: usize,
    translations: Vec<Vec<u8>>,
}

impl TwoPeriodicTiling {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Translations in half units, sorted.
    pub fn translations(&self) -> &[Vec<u8>] {
        &self.translations
    }

    fn contains(&self, t: &[u8]) -> bool {
        self.translations.binary_search_by(|u| u.as_slice().cmp(t)).is_ok()
    }
}

/// A point of `[0,2)^d` in quarter units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SamplePoint {
    quarters: Vec<u8>,
}

impl SamplePoint {
    pub fn new(quarters: Vec<u8>) -> Result<SamplePoint> {
        if let Some(q) = quarters.iter().find(|&&q| q >= 8) {
            return Err(Error::Usage(format!("sample coordinate {q}/4 is outside [0, 2)")));
        }
        Ok(SamplePoint { quarters })
    }

    pub fn quarters(&self) -> &[u8] {
        &self.quarters
    }

    pub fn dim(&self) -> usize {
        self.quarters.len()
    }

    /// No coordinate lies on a half-integer hyperplane.
    pub fn is_generic(&self) -> bool {
        self.quarters.iter().all(|q| q % 2 == 1)
    }

    /// All `8^d` grid points in lexicographic order.
    pub fn grid(d: usize) -> impl Iterator<Item = SamplePoint> {
        (0..8usize.pow(d as u32)).map(move |k| SamplePoint { quarters: digits(k, d, 8) })
    }

    /// The `4^d` points with odd quarter coordinates.
    pub fn generic_grid(d: usize) -> impl Iterator<Item = SamplePoint> {
        (0..4usize.pow(d as u32)).map(move |k| SamplePoint {
            quarters: digits(k, d, 4).into_iter().map(|c| 2 * c + 1).collect(),
        })
    }
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.quarters.iter().map(|&q| format_ratio(q as i64, 4)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn digits(mut k: usize, d: usize, base: usize) -> Vec<u8> {
    let mut out = vec![0u8; d];
    for slot in out.iter_mut().rev() {
        *slot = (k % base) as u8;
        k /= base;
    }
    out
}

fn format_ratio(num: i64, den: i64) -> String {
    let g = gcd(num.unsigned_abs(), den as u64) as i64;
    let (n, m) = (num / g.max(1), den / g.max(1));
    if m == 1 {
        n.to_string()
    } else {
        format!("{n}/{m}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A half-unit value as a number, e.g. `-1` as `-1/2`.
pub fn format_halves(v: i64) -> String {
    format_ratio(v, 2)
}

/// A vector of half-unit values.
pub fn format_vector(t: &[i64]) -> String {
    let parts: Vec<String> = t.iter().map(|&v| format_halves(v)).collect();
    format!("({})", parts.join(", "))
}

fn as_halves(t: &[u8]) -> Vec<i64> {
    t.iter().map(|&v| v as i64).collect()
}

/// Check that `[0,1)^d + translations + 2Z^d` tiles space and satisfies
/// Keller's condition.
pub fn validate_tiling(translations: Vec<Vec<u8>>) -> Result<TwoPeriodicTiling> {
    let Some(first) = translations.first() else {
        return Err(Error::Tiling("no translations".into()));
    };
    let d = first.len();
    if d == 0 {
        return Err(Error::Tiling("dimension must be positive".into()));
    }
    if d > MAX_TILING_DIM {
        return Err(Error::Resource(format!("tiling dimension {d} exceeds {MAX_TILING_DIM}")));
    }
    for t in &translations {
        if t.len() != d {
            return Err(Error::Tiling(format!(
                "translation {} has {} coordinates, expected {d}",
                format_vector(&as_halves(t)),
                t.len()
            )));
        }
        if t.iter().any(|&v| v > 3) {
            return Err(Error::Tiling(format!(
                "translation {} has an entry outside 0..=3 half units",
                format_vector(&as_halves(t))
            )));
        }
    }

    // each cube covers the 2^d half cells c with c_i in {t_i, t_i + 1} mod 4
    let mut owner = vec![u32::MAX; 1 << (2 * d)];
    for (k, t) in translations.iter().enumerate() {
        for corner in 0..1usize << d {
            let cell = (0..d).fold(0usize, |acc, i| {
                acc * 4 + ((t[i] as usize + (corner >> (d - 1 - i) & 1)) & 3)
            });
            if owner[cell] != u32::MAX {
                let other = &translations[owner[cell] as usize];
                return Err(Error::Tiling(format!(
                    "cubes at {} and {} overlap in the half cell at {}",
                    format_vector(&as_halves(other)),
                    format_vector(&as_halves(t)),
                    format_vector(&cell_corner(cell, d))
                )));
            }
            owner[cell] = k as u32;
        }
    }
    if let Some(cell) = owner.iter().position(|&o| o == u32::MAX) {
        return Err(Error::Tiling(format!(
            "gap: no cube covers the half cell at {}",
            format_vector(&cell_corner(cell, d))
        )));
    }

    for (a, t) in translations.iter().enumerate() {
        for s in &translations[a + 1..] {
            if !t.iter().zip(s).any(|(&x, &y)| (x + 4 - y) % 4 == 2) {
                return Err(Error::Tiling(format!(
                    "cubes at {} and {} violate Keller's condition",
                    format_vector(&as_halves(t)),
                    format_vector(&as_halves(s))
                )));
            }
        }
    }
    let mut translations = translations;
    translations.sort();
    Ok(TwoPeriodicTiling { dim: d, translations })
}

fn cell_corner(cell: usize, d: usize) -> Vec<i64> {
    digits(cell, d, 4).into_iter().map(|c| c as i64).collect()
}

fn check_point(t: &TwoPeriodicTiling, x: &SamplePoint) -> Result<()> {
    if x.dim() != t.dim {
        return Err(Error::DimensionMismatch { expected: t.dim, found: x.dim() });
    }
    Ok(())
}

/// Periodic translates (half units, actual coordinates) whose cubes
/// overlap the cube at `x` in positive volume.
fn meeting(t: &TwoPeriodicTiling, x: &SamplePoint) -> Vec<Vec<i64>> {
    t.translations
        .iter()
        .filter_map(|tr| {
            tr.iter()
                .zip(&x.quarters)
                .map(|(&v, &q)| {
                    // need |2 (v + 4z) - q| < 4 for some integer z
                    [-4i64, 0, 4].into_iter().map(|z| v as i64 + z).find(|&w| (2 * w - q as i64).abs() < 4)
                })
                .collect::<Option<Vec<i64>>>()
        })
        .collect()
}

/// `L(T, x, i)`: the `i`-th coordinates (half units) of the cubes meeting
/// the cube at `x` and starting at or below `x_i`.
#[allow(non_snake_case)]
pub fn L_set(t: &TwoPeriodicTiling, x: &SamplePoint, i: usize) -> Result<Vec<i64>> {
    check_point(t, x)?;
    if i >= t.dim {
        return Err(Error::Usage(format!("coordinate {} out of range", i + 1)));
    }
    Ok(lower_values(&meeting(t, x), x, i))
}

fn lower_values(cubes: &[Vec<i64>], x: &SamplePoint, i: usize) -> Vec<i64> {
    let mut out: Vec<i64> =
        cubes.iter().map(|c| c[i]).filter(|&v| 2 * v <= x.quarters[i] as i64).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Largest `|L(T, x, i)|` over the coordinates.
fn spread_at(t: &TwoPeriodicTiling, x: &SamplePoint) -> usize {
    let cubes = meeting(t, x);
    (0..t.dim).map(|i| lower_values(&cubes, x, i).len()).max().unwrap_or(0)
}

/// `r⁻` and `r⁺`: the least and largest value of `max_i |L(T, x, i)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RStats {
    pub r_minus: usize,
    pub r_plus: usize,
    /// A sample point attaining `r_minus`.
    pub min_point: SamplePoint,
    /// A sample point attaining `r_plus`.
    pub max_point: SamplePoint,
}

/// Exact `r⁻` and `r⁺` over the quarter grid, which meets every
/// combinatorial type of sample point.
pub fn r_stats(t: &TwoPeriodicTiling) -> RStats {
    let d = t.dim;
    let values: Vec<usize> = (0..8usize.pow(d as u32))
        .into_par_iter()
        .map(|k| spread_at(t, &SamplePoint { quarters: digits(k, d, 8) }))
        .collect();
    let point = |k: usize| SamplePoint { quarters: digits(k, d, 8) };
    let (kmin, &r_minus) = values.iter().enumerate().min_by_key(|&(k, v)| (*v, k)).expect("nonempty grid");
    let (kmax, &r_plus) =
        values.iter().enumerate().max_by_key(|&(k, v)| (*v, std::cmp::Reverse(k))).expect("nonempty grid");
    RStats { r_minus, r_plus, min_point: point(kmin), max_point: point(kmax) }
}

/// The code of the partition of the cube at `x` cut out by the tiling.
///
/// At coordinate `i` every cube meeting the cube at `x` occupies either a
/// lower interval `[x_i, c)` or an upper one `[c, x_i + 1)`; each cut
/// point `c` gets its own letter pair, lower pieces unprimed, in order of
/// `c`. A cube aligned with `x_i` spans the whole interval and gets a
/// star, which happens only when `x` is not generic; then the code has
/// fewer than `2^d` words.
pub fn local_partition(t: &TwoPeriodicTiling, x: &SamplePoint) -> Result<PolyboxCode> {
    check_point(t, x)?;
    let cubes = meeting(t, x);
    let pairs = (0..t.dim).map(|i| cuts(&cubes, x, i).len()).max().unwrap_or(0).max(1);
    partition_code(&cubes, x, Arc::new(Alphabet::standard(pairs)))
}

/// [`local_partition`] written over `{a, a', b, b'}`, for points where no
/// coordinate has more than two cut points.
pub fn encode_small(t: &TwoPeriodicTiling, x: &SamplePoint) -> Result<PolyboxCode> {
    check_point(t, x)?;
    let cubes = meeting(t, x);
    for i in 0..t.dim {
        let k = lower_values(&cubes, x, i).len();
        if k > 2 {
            return Err(Error::Usage(format!("|L(T, x, {})| = {k} exceeds 2 at x = {x}", i + 1)));
        }
    }
    partition_code(&cubes, x, Arc::new(Alphabet::standard(2)))
}

/// Cut points at coordinate `i` in quarter units, sorted.
fn cuts(cubes: &[Vec<i64>], x: &SamplePoint, i: usize) -> Vec<i64> {
    let xi = x.quarters[i] as i64;
    let mut out: Vec<i64> = cubes
        .iter()
        .filter_map(|c| {
            let s = 2 * c[i];
            match s.cmp(&xi) {
                std::cmp::Ordering::Less => Some(s + 4),
                std::cmp::Ordering::Greater => Some(s),
                std::cmp::Ordering::Equal => None,
            }
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn partition_code(cubes: &[Vec<i64>], x: &SamplePoint, alphabet: Arc<Alphabet>) -> Result<PolyboxCode> {
    let d = x.dim();
    let cut_lists: Vec<Vec<i64>> = (0..d).map(|i| cuts(cubes, x, i)).collect();
    let words = cubes.iter().map(|c| {
        Word::new(
            (0..d)
                .map(|i| {
                    let (s, xi) = (2 * c[i], x.quarters[i] as i64);
                    if s == xi {
                        return Letter::STAR;
                    }
                    let cut = if s < xi { s + 4 } else { s };
                    let pair = cut_lists[i].binary_search(&cut).expect("cut recorded") as u8;
                    Letter::new(2 * pair + u8::from(s > xi))
                })
                .collect(),
        )
    });
    PolyboxCode::new(alphabet, d, words)
        .map_err(|e| Error::Defect(format!("local partition at {x} is not a code: {e}")))
}

/// Two translates whose cubes share a complete facet: equal except for one
/// coordinate where they differ by 1. The second vector may be a periodic
/// copy, with a coordinate of 2 or more.
pub fn find_twin_pair_in_tiling(t: &TwoPeriodicTiling) -> Option<(Vec<i64>, Vec<i64>)> {
    for tr in &t.translations {
        for j in 0..t.dim {
            let mut s = tr.clone();
            s[j] = (s[j] + 2) % 4;
            if t.contains(&s) {
                let a = as_halves(tr);
                let mut b = a.clone();
                b[j] += 2;
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::is_partition_code;

    fn lattice2() -> TwoPeriodicTiling {
        validate_tiling(vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]).unwrap()
    }

    fn shifted2() -> TwoPeriodicTiling {
        validate_tiling(vec![vec![0, 0], vec![0, 2], vec![2, 1], vec![2, 3]]).unwrap()
    }

    fn pt(q: &[u8]) -> SamplePoint {
        SamplePoint::new(q.to_vec()).unwrap()
    }

    #[test]
    fn validation_errors() {
        let gap = validate_tiling(vec![vec![0, 0], vec![0, 2], vec![2, 0]]).unwrap_err();
        assert!(gap.to_string().contains("gap"), "{gap}");
        let overlap = validate_tiling(vec![vec![0, 0], vec![0, 1], vec![2, 0], vec![2, 2]]).unwrap_err();
        assert!(overlap.to_string().contains("overlap"), "{overlap}");
        assert!(validate_tiling(vec![vec![0, 4]]).is_err());
        assert!(validate_tiling(vec![]).is_err());
    }

    #[test]
    fn l_sets() {
        assert_eq!(L_set(&lattice2(), &pt(&[1, 1]), 0).unwrap(), vec![0]);
        assert_eq!(L_set(&shifted2(), &pt(&[3, 1]), 1).unwrap(), vec![-1, 0]);
        assert_eq!(L_set(&shifted2(), &pt(&[3, 1]), 0).unwrap(), vec![0]);
        assert_eq!(L_set(&shifted2(), &pt(&[7, 5]), 1).unwrap(), vec![1, 2]);
    }

    #[test]
    fn stats() {
        let r = r_stats(&lattice2());
        assert_eq!((r.r_minus, r.r_plus), (1, 1));
        let r = r_stats(&shifted2());
        assert_eq!((r.r_minus, r.r_plus), (1, 2));
    }

    #[test]
    fn partitions() {
        let v = local_partition(&shifted2(), &pt(&[3, 1])).unwrap();
        assert_eq!(v.len(), 4);
        assert!(is_partition_code(&v));
        assert_eq!(v.distribution(0).unwrap().k(), 1);
        assert_eq!(v.distribution(1).unwrap().k(), 2);
        let l = local_partition(&lattice2(), &pt(&[1, 1])).unwrap();
        assert!(l.iter().all(|w| w.letters().iter().all(|c| c.pair() == Some(0))));
        // on a boundary stratum the aligned cube spans the whole cell
        let b = local_partition(&lattice2(), &pt(&[0, 0])).unwrap();
        assert_eq!(b.len(), 1);
        assert!(is_partition_code(&b));
    }

    #[test]
    fn small_encoding() {
        let v = encode_small(&shifted2(), &pt(&[3, 1])).unwrap();
        assert_eq!(v.alphabet().pair_count(), 2);
        assert!(is_partition_code(&v));
    }

    #[test]
    fn twin_pairs() {
        let (a, b) = find_twin_pair_in_tiling(&shifted2()).unwrap();
        assert_eq!(a.iter().zip(&b).filter(|(x, y)| x != y).count(), 1);
        assert!(find_twin_pair_in_tiling(&lattice2()).is_some());
    }
}
