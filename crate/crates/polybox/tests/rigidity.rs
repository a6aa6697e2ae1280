use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use polybox::classify::{random_isomorphism, random_partition_code};
use polybox::keller::{build_keller_graph, clique_classes, random_maximal_clique};
use polybox::measure::{covers, equivalent};
use polybox::rigidity::*;
use polybox::{Alphabet, Budget, Letter, PolyboxCode, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ab() -> Arc<Alphabet> {
    Arc::new(Alphabet::standard(2))
}

/// A random nonempty subset of a random partition code; these usually hold
/// twin pairs.
fn random_subcode(d: usize, max: usize, rng: &mut ChaCha8Rng) -> PolyboxCode {
    let full = random_partition_code(d, &ab(), rng.gen());
    let mut ws = full.words().to_vec();
    ws.shuffle(rng);
    ws.truncate(rng.gen_range(1..=max.min(ws.len())));
    PolyboxCode::new(ab(), d, ws).unwrap()
}

/// A random twin-pair-free code: part of a random maximal clique.
fn random_twin_free(d: usize, max: usize, rng: &mut ChaCha8Rng) -> PolyboxCode {
    let g = build_keller_graph(d, &ab()).unwrap();
    let mut vs = random_maximal_clique(&g, rng.gen());
    vs.shuffle(rng);
    vs.truncate(rng.gen_range(1..=max.min(vs.len())));
    g.code_of(&vs).unwrap()
}

/// Every star-free word over `alphabet` using, at each coordinate, the pairs
/// of `code` there plus the least other pair, and covered by `code`.
fn covered_by_brute_force(code: &PolyboxCode, alphabet: &Arc<Alphabet>) -> BTreeSet<Word> {
    let d = code.dim();
    let wide = code.with_alphabet(alphabet.clone()).unwrap();
    let allowed: Vec<Vec<Letter>> = (0..d)
        .map(|i| {
            let used: BTreeSet<usize> = code.iter().filter_map(|w| w[i].pair()).collect();
            let fresh = (0..).find(|p| !used.contains(p)).unwrap();
            alphabet.letters().filter(|l| used.contains(&l.pair().unwrap()) || l.pair() == Some(fresh)).collect()
        })
        .collect();
    allowed
        .into_iter()
        .multi_cartesian_product()
        .map(Word::new)
        .filter(|w| covers(w, &wide).unwrap())
        .collect()
}

#[test]
fn six_word_code_is_rigid() {
    let s = ab();
    let v = PolyboxCode::parse(&s, 4, &["aaaa", "a'a'a'a", "baa'a", "a'baa", "aa'ba", "bbba'"]).unwrap();
    assert_eq!(is_rigid(&v, Budget::UNLIMITED).unwrap(), Rigidity::Rigid);
    let cw = covered_words(&v).unwrap();
    for l in ["a", "b", "b'"] {
        let w = s.parse_word(&format!("bbb{l}")).unwrap();
        assert!(cw.words.contains(&w), "bbb{l}");
    }
    assert!(!cw.words.contains(&s.parse_word("abbb").unwrap()));
    let search = find_equivalent(&EquivalenceSearchSpec::new(v.clone())).unwrap();
    assert!(search.is_proven_none());
}

#[test]
fn covered_words_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let d = rng.gen_range(2..=4);
        let v = random_subcode(d, 6, &mut rng);
        let cw = covered_words(&v).unwrap();
        let got: BTreeSet<Word> = cw.words.iter().cloned().collect();
        assert_eq!(got.len(), cw.words.len());
        assert_eq!(got, covered_by_brute_force(&v, &cw.alphabet), "{v}");
    }
}

#[test]
fn found_codes_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let d = rng.gen_range(2..=4);
        let v = random_subcode(d, 5, &mut rng);
        let spec = EquivalenceSearchSpec { max_results: 20, ..EquivalenceSearchSpec::new(v.clone()) };
        let res = find_equivalent(&spec).unwrap();
        let cw: BTreeSet<Word> = covered_words(&v).unwrap().words.into_iter().collect();
        for w in &res.codes {
            assert_ne!(w, &v);
            assert_eq!(w.len(), v.len());
            assert!(equivalent(w, &v).unwrap(), "{v} vs {w}");
            assert!(w.iter().all(|x| cw.contains(x)));
        }
        if v.has_twin_pair() {
            assert!(!res.codes.is_empty(), "{v}");
        }
        let twin_free = EquivalenceSearchSpec {
            require_twin_pair_free: true,
            require_disjoint: true,
            ..spec.clone()
        };
        for w in find_equivalent(&twin_free).unwrap().codes {
            assert!(!w.has_twin_pair());
            assert!(w.iter().all(|x| !v.contains(x)));
        }
    }
}

#[test]
fn codes_with_twin_pairs_are_not_rigid() {
    let s = ab();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = 0;
    while seen < 30 {
        let v = random_subcode(3, 6, &mut rng);
        if !v.has_twin_pair() {
            continue;
        }
        seen += 1;
        let Rigidity::NotRigid(w) = is_rigid(&v, Budget::UNLIMITED).unwrap() else {
            panic!("{v} reported rigid");
        };
        assert!(equivalent(&v, &w).unwrap());
    }
    let pair = PolyboxCode::parse(&s, 2, &["ab", "a'b"]).unwrap();
    assert!(matches!(is_rigid(&pair, Budget::UNLIMITED).unwrap(), Rigidity::NotRigid(_)));
}

#[test]
fn twin_free_codes_in_dimension_three_are_rigid() {
    let g = build_keller_graph(3, &ab()).unwrap();
    let classes = clique_classes(&g, 8).unwrap();
    assert_eq!(classes.iter().map(PolyboxCode::len).max(), Some(5));
    for c in &classes {
        assert_eq!(is_rigid(c, Budget::seconds(60)).unwrap(), Rigidity::Rigid, "{c}");
    }
}

#[test]
fn small_twin_free_codes_in_dimension_four_are_rigid() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let v = random_twin_free(4, 11, &mut rng);
        let spec = EquivalenceSearchSpec {
            require_twin_pair_free: true,
            budget: Budget::seconds(60),
            ..EquivalenceSearchSpec::new(v.clone())
        };
        let res = find_equivalent(&spec).unwrap();
        assert!(res.is_proven_none(), "{v}: {:?}", res.status);
    }
}

#[test]
fn rigidity_survives_renaming() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for k in 0..60 {
        let d = rng.gen_range(2..=3);
        let v = if k % 2 == 0 { random_subcode(d, 4, &mut rng) } else { random_twin_free(d, 5, &mut rng) };
        let iso = random_isomorphism(&ab(), d, &mut rng);
        let u = iso.apply(&v).unwrap();
        let count = |c: &PolyboxCode| find_equivalent(&EquivalenceSearchSpec::new(c.clone())).unwrap().codes.len();
        assert_eq!(count(&v), count(&u), "{v} vs {u}");
        let rigid = |c: &PolyboxCode| is_rigid(c, Budget::UNLIMITED).unwrap() == Rigidity::Rigid;
        assert_eq!(rigid(&v), rigid(&u));
    }
}
