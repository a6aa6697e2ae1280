use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::measure::is_partition_code;
use crate::word::Word;

/// Whether `k` groups at one coordinate of a star-free partition code in
/// dimension `d` force a twin pair: `k > 2^{d-3} / 3`.
pub fn spread_guarantees_twin_pair(d: usize, k: usize) -> bool {
    24u128 * k as u128 > 1u128.checked_shl(d as u32).unwrap_or(u128::MAX)
}

/// A twin pair of a star-free partition code found through the groups at
/// coordinate `i`.
///
/// When the groups are spread wide enough some group has at most 11 words
/// on each side; its two sections are then either twin-pair-free and equal
/// (so every word pairs with its mirror) or one of them holds a twin pair.
/// Below that threshold the code is searched directly.
pub fn twin_pair_by_spread(code: &PolyboxCode, i: usize) -> Result<Option<(Word, Word)>> {
    if !code.is_star_free() || !is_partition_code(code) {
        return Err(Error::Usage("expected a star-free partition code".into()));
    }
    let dist = code.distribution(i)?;
    if !spread_guarantees_twin_pair(code.dim(), dist.k()) {
        return Ok(code.find_twin_pair());
    }
    let group = dist
        .groups
        .iter()
        .min_by_key(|g| g.with_letter.len())
        .expect("a partition code has groups");
    if group.with_letter.len() != group.with_complement.len() || group.with_letter.len() > 11 {
        return Err(Error::Defect(format!(
            "group at coordinate {} has sides of {} and {} words",
            i + 1,
            group.with_letter.len(),
            group.with_complement.len()
        )));
    }
    let l = group.letter;
    for side in [l, l.complement()] {
        let sec = code.section(i, side);
        if let Some((u, v)) = sec.find_twin_pair() {
            return Ok(Some((u.inserted(i, side), v.inserted(i, side))));
        }
    }
    let (a, b) = (code.section(i, l), code.section(i, l.complement()));
    if a != b {
        return Err(Error::Defect(format!(
            "twin-pair-free sections at coordinate {} differ",
            i + 1
        )));
    }
    let w = &a.words()[0];
    Ok(Some((w.inserted(i, l), w.inserted(i, l.complement()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;
    use crate::word::is_twin_pair;

    #[test]
    fn thresholds() {
        assert!(spread_guarantees_twin_pair(4, 1));
        assert!(!spread_guarantees_twin_pair(5, 1));
        assert!(spread_guarantees_twin_pair(5, 2));
        assert!(spread_guarantees_twin_pair(7, 6));
        assert!(!spread_guarantees_twin_pair(7, 5));
    }

    #[test]
    fn simple_partition() {
        let s = ab();
        let v = code(&s, &["ab", "ab'", "a'b", "a'b'"]);
        let (u, w) = twin_pair_by_spread(&v, 0).unwrap().unwrap();
        assert!(is_twin_pair(&u, &w).unwrap());
        assert!(twin_pair_by_spread(&code(&s, &["ab"]), 0).is_err());
    }
}
