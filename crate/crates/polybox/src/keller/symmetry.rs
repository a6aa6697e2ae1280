use itertools::Itertools;

use crate::bitset::Bitset;

use super::clique::colour_bound;
use super::graph::KellerGraph;

/// Largest number of stored permutation entries (elements times vertices).
const MAX_ENTRIES: usize = 1 << 26;

/// Automorphisms of a Keller graph fixing vertex 0, as vertex permutations.
///
/// Each element permutes coordinates and applies, at every coordinate, a
/// complement-compatible letter map fixing letter 0. When the full
/// stabilizer is too large to store, a subgroup is used instead; any
/// subgroup keeps the orbit decomposition exact.
pub(crate) struct OriginStabilizer {
    pub perms: Vec<Vec<u32>>,
}

impl OriginStabilizer {
    pub fn new(g: &KellerGraph) -> OriginStabilizer {
        let d = g.dim();
        let n = g.vertex_count();
        let s = g.alphabet().len();
        let maps: Vec<Vec<u8>> = if g.alphabet().pair_count() <= 4 {
            g.alphabet()
                .complement_compatible_maps()
                .into_iter()
                .filter(|m| m[0].id() == 0)
                .map(|m| m.iter().map(|l| l.id()).collect())
                .collect()
        } else {
            vec![(0..s as u8).collect()]
        };
        let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
        let full = (maps.len() as f64).powi(d as i32) * perms.len() as f64;
        let (maps, perms) = if full * n as f64 <= MAX_ENTRIES as f64 {
            (maps, perms)
        } else if perms.len() * n <= MAX_ENTRIES {
            (vec![(0..s as u8).collect()], perms)
        } else {
            (vec![(0..s as u8).collect()], vec![(0..d).collect()])
        };

        let digits: Vec<Vec<u8>> = (0..n)
            .map(|v| g.word(v).letters().iter().map(|l| l.id()).collect())
            .collect();
        let mut out = Vec::new();
        for sigma in &perms {
            for choice in (0..d).map(|_| 0..maps.len()).multi_cartesian_product() {
                let perm: Vec<u32> = digits
                    .iter()
                    .map(|dg| {
                        (0..d).fold(0u32, |acc, j| {
                            acc * s as u32 + maps[choice[j]][dg[sigma[j]] as usize] as u32
                        })
                    })
                    .collect();
                out.push(perm);
            }
        }
        OriginStabilizer { perms: out }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }
}

/// Orbits of the subgroup `elems` on the invariant set `set`, each sorted,
/// listed by least member.
pub(crate) fn orbits(group: &OriginStabilizer, elems: &[usize], set: &Bitset) -> Vec<Vec<usize>> {
    let n = set.capacity();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for &e in elems {
        let perm = &group.perms[e];
        for v in set.iter() {
            let (a, b) = (find(&mut parent, v as u32), find(&mut parent, perm[v]));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![u32::MAX; n];
    for v in set.iter() {
        let r = find(&mut parent, v as u32) as usize;
        if slot[r] == u32::MAX {
            slot[r] = by_root.len() as u32;
            by_root.push(Vec::new());
        }
        by_root[slot[r] as usize].push(v);
    }
    by_root
}

/// Enumeration of the cliques through vertex 0 with `size` vertices, at
/// least one per orbit of the group `elems`.
pub(crate) struct CliqueWalk<'a> {
    pub graph: &'a KellerGraph,
    pub group: &'a OriginStabilizer,
    pub size: usize,
}

impl CliqueWalk<'_> {
    pub fn run(&self, elems: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.size > 0 && self.graph.vertex_count() > 0 {
            self.classes(&mut vec![0], self.graph.neighbors(0).clone(), elems, &mut out);
        }
        out
    }

    fn classes(&self, chosen: &mut Vec<usize>, cand: Bitset, elems: &[usize], out: &mut Vec<Vec<usize>>) {
        if chosen.len() == self.size {
            out.push(chosen.clone());
            return;
        }
        if chosen.len() + colour_bound(self.graph, &cand) < self.size {
            return;
        }
        if elems.len() > 1 {
            // a clique meeting several orbits is moved onto the least
            // member of the first orbit it meets
            let mut excluded = Bitset::new(cand.capacity());
            for orbit in orbits(self.group, elems, &cand) {
                let r = orbit[0];
                let mut next = cand.clone();
                next.intersect_with(self.graph.neighbors(r));
                next.difference_with(&excluded);
                let fixing: Vec<usize> =
                    elems.iter().copied().filter(|&e| self.group.perms[e][r] as usize == r).collect();
                chosen.push(r);
                self.classes(chosen, next, &fixing, out);
                chosen.pop();
                for v in orbit {
                    excluded.insert(v);
                }
            }
        } else {
            let mut rest = cand;
            while let Some(r) = rest.first() {
                rest.remove(r);
                let mut next = rest.clone();
                next.intersect_with(self.graph.neighbors(r));
                chosen.push(r);
                self.classes(chosen, next, elems, out);
                chosen.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::keller::build_keller_graph;
    use crate::Alphabet;

    #[test]
    fn stabilizer_elements_are_automorphisms() {
        let g = build_keller_graph(3, &Arc::new(Alphabet::keller())).unwrap();
        let h = OriginStabilizer::new(&g);
        assert_eq!(h.len(), 6 * 8);
        for p in &h.perms {
            assert_eq!(p[0], 0);
            for u in 0..64 {
                for v in 0..64 {
                    assert_eq!(g.adjacent(u, v), g.adjacent(p[u] as usize, p[v] as usize));
                }
            }
        }
        let all: Vec<usize> = (0..h.len()).collect();
        let orb = orbits(&h, &all, g.neighbors(0));
        assert_eq!(orb.iter().map(Vec::len).sum::<usize>(), g.degree(0));
    }
}
