use rayon::prelude::*;

use crate::bitset::Bitset;

use super::clique::Shared;
use super::graph::KellerGraph;
use super::symmetry::{CliqueWalk, OriginStabilizer};

/// Search organised around a largest letter class.
///
/// Some maximum clique can be moved so that its largest class, over all
/// coordinates and letters, is the class of letter 0 at the last
/// coordinate and contains vertex 0. That class projects to a clique of
/// `sub`, the graph one dimension down, and no class of the whole clique
/// may then hold more vertices than it. Classes are tried from the largest
/// size `sub_omega` downwards, so big cliques turn up early. Returns the
/// number of classes handed to the extension search.
pub(crate) fn fiber_search(shared: &Shared, sub: &KellerGraph, sub_omega: usize) -> usize {
    let s = shared.g.alphabet().len();
    let group = OriginStabilizer::new(sub);
    let all: Vec<usize> = (0..group.len()).collect();
    let cls = Classes::new(shared.g);
    let mut total = 0;
    for size in (1..=sub_omega).rev() {
        if s * size <= shared.best() || shared.meter.stopped() {
            break;
        }
        let found = CliqueWalk { graph: sub, group: &group, size }.run(&all);
        total += found.len();
        found.into_par_iter().for_each(|a| {
            if !shared.meter.stopped() && s * size > shared.best() {
                extend(shared, &cls, &a);
            }
        });
    }
    total
}

/// Per-class vertex sets of the full graph, shared by every extension.
struct Classes {
    /// Vertices with letter `c` at coordinate `i`, at index `i * s + c`.
    class: Vec<Bitset>,
    letters: Vec<Vec<usize>>,
    /// Vertices whose last letter is not 0.
    outside: Bitset,
}

impl Classes {
    fn new(g: &KellerGraph) -> Classes {
        let (d, s, n) = (g.dim(), g.alphabet().len(), g.vertex_count());
        let letters: Vec<Vec<usize>> =
            (0..n).map(|v| g.word(v).letters().iter().map(|l| l.id() as usize).collect()).collect();
        let mut class = vec![Bitset::new(n); d * s];
        for (v, ls) in letters.iter().enumerate() {
            for (i, &l) in ls.iter().enumerate() {
                class[i * s + l].insert(v);
            }
        }
        let outside = Bitset::from_indices(n, (0..n).filter(|v| v % s != 0));
        Classes { class, letters, outside }
    }
}

/// Complete the class `a` (letter 0 at the last coordinate) to a clique in
/// which every class has at most `|a|` vertices.
fn extend(shared: &Shared, cls: &Classes, a: &[usize]) {
    let g = shared.g;
    let (d, s, n) = (g.dim(), g.alphabet().len(), g.vertex_count());
    let fixed: Vec<usize> = a.iter().map(|&x| x * s).collect();
    let mut p = cls.outside.clone();
    for &f in &fixed {
        p.intersect_with(g.neighbors(f));
    }
    let cap = a.len();
    let mut counts = vec![0usize; d * s];
    for &f in &fixed {
        for (i, &l) in cls.letters[f].iter().enumerate() {
            counts[i * s + l] += 1;
        }
    }
    for (k, &c) in counts.iter().enumerate() {
        if c >= cap {
            p.difference_with(&cls.class[k]);
        }
    }
    let mut search = Capped {
        shared,
        cls,
        cap,
        d,
        s,
        counts,
        clique: fixed,
        levels: Vec::new(),
        q: Bitset::new(n),
        r: Bitset::new(n),
    };
    if p.is_empty() {
        shared.offer(&search.clique);
        return;
    }
    search.level(0).p = p;
    search.expand(0);
}

struct Level {
    p: Bitset,
    verts: Vec<usize>,
    colours: Vec<usize>,
}

/// Branch and bound under per-class capacities.
struct Capped<'a> {
    shared: &'a Shared<'a>,
    cls: &'a Classes,
    cap: usize,
    d: usize,
    s: usize,
    counts: Vec<usize>,
    clique: Vec<usize>,
    levels: Vec<Level>,
    q: Bitset,
    r: Bitset,
}

impl Capped<'_> {
    fn level(&mut self, depth: usize) -> &mut Level {
        while self.levels.len() <= depth {
            let n = self.shared.g.vertex_count();
            self.levels.push(Level { p: Bitset::new(n), verts: Vec::new(), colours: Vec::new() });
        }
        &mut self.levels[depth]
    }

    /// Largest completion the class capacities allow, taking the tightest
    /// coordinate.
    fn capacity_bound(&self, p: &Bitset) -> usize {
        (0..self.d)
            .map(|i| {
                (0..self.s)
                    .map(|c| {
                        let k = i * self.s + c;
                        (self.cap - self.counts[k]).min(p.intersection_count(&self.cls.class[k]))
                    })
                    .sum::<usize>()
            })
            .min()
            .unwrap_or(0)
    }

    fn colour(&mut self, depth: usize) {
        let g = self.shared.g;
        let kmin = (self.shared.best() + 1).saturating_sub(self.clique.len());
        self.q.clone_from(&self.levels[depth].p);
        let lv = &mut self.levels[depth];
        lv.verts.clear();
        lv.colours.clear();
        let mut k = 0;
        while !self.q.is_empty() {
            k += 1;
            self.r.clone_from(&self.q);
            while let Some(v) = self.r.first() {
                self.r.remove(v);
                self.q.remove(v);
                self.r.difference_with(g.neighbors(v));
                if k >= kmin {
                    lv.verts.push(v);
                    lv.colours.push(k);
                }
            }
        }
    }

    fn expand(&mut self, depth: usize) {
        if self.clique.len() + self.capacity_bound(&self.levels[depth].p) <= self.shared.best() {
            return;
        }
        self.colour(depth);
        self.level(depth + 1);
        let mut idx = self.levels[depth].verts.len();
        while idx > 0 {
            idx -= 1;
            if !self.shared.meter.tick() {
                return;
            }
            let (v, c) = (self.levels[depth].verts[idx], self.levels[depth].colours[idx]);
            if self.clique.len() + c <= self.shared.best() {
                return;
            }
            self.clique.push(v);
            let (here, below) = self.levels.split_at_mut(depth + 1);
            here[depth].p.intersection_into(self.shared.g.neighbors(v), &mut below[0].p);
            for i in 0..self.d {
                let k = i * self.s + self.cls.letters[v][i];
                self.counts[k] += 1;
                if self.counts[k] == self.cap {
                    below[0].p.difference_with(&self.cls.class[k]);
                }
            }
            if below[0].p.is_empty() {
                self.shared.offer(&self.clique);
            } else {
                self.expand(depth + 1);
            }
            for i in 0..self.d {
                self.counts[i * self.s + self.cls.letters[v][i]] -= 1;
            }
            self.clique.pop();
            self.levels[depth].p.remove(v);
        }
    }
}
