use std::sync::Arc;

use polybox::classify::*;
use polybox::measure::{covers, g_value, is_partition_code};
use polybox::{Alphabet, PolyboxCode, Word};
use proptest::prelude::*;

fn ab() -> Arc<Alphabet> {
    Arc::new(Alphabet::standard(2))
}

fn code(s: &Arc<Alphabet>, words: &[&str]) -> PolyboxCode {
    let d = s.parse_word(words[0]).unwrap().dim();
    PolyboxCode::parse(s, d, words).unwrap()
}

fn triples(list: &[Composition]) -> Vec<Vec<usize>> {
    list.iter().map(|c| c.counts.clone()).collect()
}

#[test]
fn composition_lists() {
    let mut k7 = triples(&cover_compositions_from(7, 4, 2));
    k7.sort();
    assert_eq!(k7, vec![vec![1, 6, 0], vec![2, 3, 2], vec![3, 0, 4]]);
    let mut k8 = triples(&cover_compositions_from(8, 4, 2));
    k8.sort();
    assert_eq!(k8, vec![vec![0, 8, 0], vec![1, 5, 2], vec![2, 2, 4]]);
    let mut k5 = triples(&cover_compositions(5, 3));
    k5.sort();
    assert_eq!(k5, vec![vec![0, 3, 2], vec![1, 0, 4]]);
}

#[test]
fn six_word_compositions_in_any_dimension() {
    for d in 4..=9 {
        let sols = cover_compositions_from(6, d, 2);
        let mut found: Vec<(usize, usize, usize)> =
            sols.iter().map(|c| (c.get(2), c.get(3), c.get(4))).collect();
        found.sort();
        assert_eq!(found, vec![(2, 4, 0), (3, 1, 2)], "d = {d}");
        let kept: Vec<_> = sols.iter().filter(|c| c.get(3) >= 2).collect();
        assert_eq!(kept.len(), 1);
    }
}

/// Codes from the table of cover structures, keyed by composition.
const REPRESENTATIVES: [(&[usize], &[&str]); 6] = [
    (&[3, 2, 0], &["aaab", "a'a'a'b", "baa'b", "a'bab", "aa'bb"]),
    (&[2, 3, 2], &["aaaa", "aaa'b", "aa'a'a'", "a'aba", "a'ba'a'", "ba'ba", "bbaa'"]),
    (&[2, 3, 2], &["aaab", "aa'ba", "a'baa'", "aaa'a", "aa'aa'", "a'bba", "bba'a'"]),
    (&[1, 5, 2], &["aaab", "aba'a'", "a'aaa", "a'aba'", "a'a'a'a'", "baa'a", "ba'aa'", "ba'ba"]),
    (&[0, 8, 0], &["aaab", "aa'ba'", "aba'a", "a'aba", "a'a'a'b", "a'baa'", "baa'a'", "ba'aa"]),
    (&[1, 4, 4], &["aaa'a", "aaba'", "aa'a'a'", "aa'ba", "a'aaa'", "a'a'aa", "a'ba'b", "baaa", "ba'aa'"]),
];

#[test]
fn cover_families_at_dimension_four() {
    let s = ab();
    let w = s.parse_word("bbbb").unwrap();
    let expected: [(&[usize], usize); 5] = [
        (&[3, 2, 0], 32),
        (&[2, 3, 2], 576),
        (&[1, 5, 2], 192),
        (&[0, 8, 0], 8),
        (&[1, 4, 4], 48),
    ];
    for k in [5, 7, 8, 9] {
        for comp in cover_compositions_from(k, 4, 2) {
            let fam = enumerate_covers(&s, &w, k, Some(&comp)).unwrap();
            let want = expected
                .iter()
                .find(|(c, _)| *c == comp.counts.as_slice())
                .map_or(0, |&(_, n)| n);
            assert_eq!(fam.count(), want, "composition {:?}", comp.counts);
            for (c, words) in REPRESENTATIVES {
                if c == comp.counts.as_slice() {
                    assert!(fam.codes.contains(&code(&s, words)), "missing {words:?}");
                }
            }
        }
    }
}

#[test]
fn unrestricted_family_is_union_of_compositions() {
    let s = ab();
    let w = s.parse_word("bbbb").unwrap();
    let all = enumerate_covers(&s, &w, 8, None).unwrap();
    let split: usize = cover_compositions_from(8, 4, 2)
        .iter()
        .map(|c| enumerate_covers(&s, &w, 8, Some(c)).unwrap().count())
        .sum();
    assert_eq!(all.count(), split);
    for v in &all.codes {
        assert!(covers(&w, v).unwrap());
        for x in v {
            let g = g_value(x, &w).unwrap();
            assert!((1..=4).contains(&g));
        }
    }
}

/// Every twin-pair-free five-word partition code in dimension three over
/// two pairs, found by plain search.
fn five_word_partitions() -> Vec<PolyboxCode> {
    let s = ab();
    let mut words = Vec::new();
    for n in 0..125u32 {
        let ids: Vec<u8> = (0..3)
            .map(|i| match (n / 5u32.pow(i)) % 5 {
                4 => 255,
                x => x as u8,
            })
            .collect();
        words.push(Word::from_ids(&ids));
    }
    let weight = |w: &Word| 1u32 << w.letters().iter().filter(|l| l.is_star()).count();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        words: &[Word],
        weight: &dyn Fn(&Word) -> u32,
        start: usize,
        total: u32,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Word>>,
    ) {
        if stack.len() == 5 {
            if total == 8 {
                out.push(stack.iter().map(|&i| words[i].clone()).collect());
            }
            return;
        }
        for j in start..words.len() {
            let w = &words[j];
            if total + weight(w) > 8 {
                continue;
            }
            let ok = stack.iter().all(|&i| {
                let u = &words[i];
                polybox::is_dichotomous(u, w).unwrap() && !polybox::is_twin_pair(u, w).unwrap()
            });
            if ok {
                stack.push(j);
                rec(words, weight, j + 1, total + weight(w), stack, out);
                stack.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(&words, &weight, 0, 0, &mut stack, &mut raw);
    for ws in raw {
        out.push(PolyboxCode::new(s.clone(), 3, ws).unwrap());
    }
    out
}

#[test]
fn every_small_five_word_partition_classifies() {
    let s = ab();
    let all = five_word_partitions();
    assert!(!all.is_empty());
    for v in &all {
        assert!(is_partition_code(v));
        let st = classify_partition5(v).unwrap_or_else(|e| panic!("{v}: {e}"));
        assert_eq!(&st.rebuild(&s, 3).unwrap(), v);
    }
}

proptest! {
    #[test]
    fn generated_partitions_have_odd_pairs(d in 1usize..6, seed in any::<u64>()) {
        let s = Arc::new(Alphabet::standard(3));
        let v = random_partition_code(d, &s, seed);
        prop_assert_eq!(v.len(), 1 << d);
        prop_assert!(is_partition_code(&v));
        prop_assert!(odd_complement_pair(&v).unwrap().is_some());
    }

    #[test]
    fn starring_a_cover_gives_a_partition(pick in any::<prop::sample::Index>()) {
        let s = ab();
        let w = s.parse_word("bbbb").unwrap();
        let fam = enumerate_covers(&s, &w, 7, None).unwrap();
        let v = &fam.codes[pick.index(fam.count())];
        let bar = bar_code(v, &w).unwrap();
        prop_assert!(is_partition_code(&bar));
    }
}
