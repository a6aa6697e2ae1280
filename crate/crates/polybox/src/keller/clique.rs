use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::budget::{Budget, Meter};
use crate::code::PolyboxCode;

use super::fibers::fiber_search;
use super::graph::KellerGraph;
use super::symmetry::{orbits, OriginStabilizer};

#[derive(Clone, Debug)]
pub struct CliqueResult {
    pub clique: PolyboxCode,
    pub vertices: Vec<usize>,
    pub proven_optimal: bool,
    pub nodes: u64,
    /// Subproblems left after the symmetry split, or classes extended when
    /// the search runs through a largest letter class.
    pub subproblems: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CliqueOptions {
    pub budget: Budget,
    /// How many levels of orbit splitting to apply before plain search.
    pub symmetry_depth: usize,
    /// Moves of the incumbent-improving local search run first.
    pub local_search_moves: usize,
    /// Only cliques larger than this are searched for. With a floor, a
    /// proven result certifies that no clique exceeds `max(floor, found)`.
    pub floor: usize,
}

impl Default for CliqueOptions {
    fn default() -> Self {
        CliqueOptions { budget: Budget::UNLIMITED, symmetry_depth: 3, local_search_moves: 20_000, floor: 0 }
    }
}

/// A maximum clique, or the best found within the budget.
pub fn max_clique(g: &KellerGraph, budget: Budget) -> CliqueResult {
    max_clique_with(g, CliqueOptions { budget, ..CliqueOptions::default() })
}

pub(crate) struct Shared<'a> {
    pub g: &'a KellerGraph,
    best: AtomicUsize,
    floor: usize,
    clique: Mutex<Vec<usize>>,
    pub meter: &'a Meter,
}

impl Shared<'_> {
    pub fn offer(&self, c: &[usize]) {
        if c.len() <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut cur = self.clique.lock().expect("poisoned");
        if c.len() > cur.len() {
            debug_assert!(self.g.is_clique(c));
            *cur = c.to_vec();
            self.best.fetch_max(c.len(), Ordering::Relaxed);
        }
    }

    pub fn best(&self) -> usize {
        self.best.load(Ordering::Relaxed).max(self.floor)
    }
}

struct Leaf {
    chosen: Vec<usize>,
    cand: Bitset,
}

pub fn max_clique_with(g: &KellerGraph, opts: CliqueOptions) -> CliqueResult {
    let meter = opts.budget.meter();
    solve(g, &opts, &meter)
}

/// Smallest dimension searched through its largest letter class.
const FIBER_DIM: usize = 4;

fn solve(g: &KellerGraph, opts: &CliqueOptions, meter: &Meter) -> CliqueResult {
    let n = g.vertex_count();
    let shared = Shared {
        g,
        best: AtomicUsize::new(0),
        floor: opts.floor,
        clique: Mutex::new(Vec::new()),
        meter,
    };
    let mut subproblems = 0;
    if n > 0 {
        shared.offer(&greedy(g));
        shared.offer(&local_search(g, opts.local_search_moves, 0));
        if g.dim() >= FIBER_DIM {
            let sub = KellerGraph::new(g.dim() - 1, g.alphabet()).expect("smaller than the graph");
            let inner = solve(&sub, &CliqueOptions { floor: 0, ..*opts }, meter);
            if !meter.stopped() {
                subproblems = fiber_search(&shared, &sub, inner.vertices.len());
            }
        } else {
            // the graph is vertex-transitive, so some maximum clique contains 0
            let group = OriginStabilizer::new(g);
            let all: Vec<usize> = (0..group.len()).collect();
            let mut leaves = Vec::new();
            split(&shared, &group, vec![0], g.neighbors(0).clone(), &all, opts.symmetry_depth, &mut leaves);
            subproblems = leaves.len();
            leaves.into_par_iter().for_each(|leaf| {
                if !meter.stopped() {
                    solve_leaf(&shared, leaf);
                }
            });
        }
    }
    let vertices = {
        let mut v = shared.clique.lock().expect("poisoned").clone();
        v.sort_unstable();
        v
    };
    let clique = g.code_of(&vertices).expect("cliques are codes");
    CliqueResult { clique, vertices, proven_optimal: !meter.stopped(), nodes: meter.nodes(), subproblems }
}

/// Grow a clique from vertex 0 by always taking the candidate with the most
/// candidate neighbours.
fn greedy(g: &KellerGraph) -> Vec<usize> {
    let mut c = vec![0];
    let mut p = g.neighbors(0).clone();
    while !p.is_empty() {
        let v = p
            .iter()
            .max_by_key(|&v| (p.intersection_count(g.neighbors(v)), std::cmp::Reverse(v)))
            .expect("nonempty");
        c.push(v);
        p.intersect_with(g.neighbors(v));
    }
    c
}

/// Swap-based local search for a large clique, seeded deterministically.
fn local_search(g: &KellerGraph, moves: usize, seed: u64) -> Vec<usize> {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_c = vec![false; n];
    // miss[v] = members of the clique not adjacent to v (v itself excluded)
    let mut miss = vec![0u32; n];
    let mut tabu = vec![0usize; n];
    let mut clique: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    let toggle = |u: usize, add: bool, in_c: &mut Vec<bool>, miss: &mut Vec<u32>| {
        in_c[u] = add;
        let row = g.neighbors(u);
        for v in 0..n {
            if v != u && !row.contains(v) {
                if add {
                    miss[v] += 1;
                } else {
                    miss[v] -= 1;
                }
            }
        }
    };
    let mut pool = Vec::new();
    for it in 1..=moves {
        pool.clear();
        pool.extend((0..n).filter(|&v| !in_c[v] && miss[v] == 0 && tabu[v] <= it));
        if let Some(&v) = pool.choose(&mut rng) {
            toggle(v, true, &mut in_c, &mut miss);
            clique.push(v);
            if clique.len() > best.len() {
                best = clique.clone();
            }
            continue;
        }
        pool.extend((0..n).filter(|&v| !in_c[v] && miss[v] == 1 && tabu[v] <= it));
        if let Some(&v) = pool.choose(&mut rng) {
            let k = clique.iter().position(|&u| !g.adjacent(u, v)).expect("one conflict");
            let u = clique.swap_remove(k);
            toggle(u, false, &mut in_c, &mut miss);
            tabu[u] = it + 7;
            toggle(v, true, &mut in_c, &mut miss);
            clique.push(v);
        } else if !clique.is_empty() {
            let k = rng.gen_range(0..clique.len());
            let u = clique.swap_remove(k);
            toggle(u, false, &mut in_c, &mut miss);
            tabu[u] = it + 7;
        }
    }
    best
}

/// Number of colours used by a greedy colouring of `p`.
pub(crate) fn colour_bound(g: &KellerGraph, p: &Bitset) -> usize {
    let mut q = p.clone();
    let mut r = Bitset::new(p.capacity());
    let mut k = 0;
    while !q.is_empty() {
        k += 1;
        r.clone_from(&q);
        while let Some(v) = r.first() {
            r.remove(v);
            q.remove(v);
            r.difference_with(g.neighbors(v));
        }
    }
    k
}

/// Orbit splitting: every clique through `chosen` inside `cand` meets some
/// orbit of the stabilizer, and can be moved to contain that orbit's least
/// member while avoiding all earlier orbits.
fn split(
    shared: &Shared,
    group: &OriginStabilizer,
    chosen: Vec<usize>,
    cand: Bitset,
    elems: &[usize],
    depth: usize,
    leaves: &mut Vec<Leaf>,
) {
    if cand.is_empty() {
        shared.offer(&chosen);
        return;
    }
    if chosen.len() + colour_bound(shared.g, &cand) <= shared.best() {
        return;
    }
    if depth == 0 || elems.len() <= 1 {
        leaves.push(Leaf { chosen, cand });
        return;
    }
    let mut excluded = Bitset::new(cand.capacity());
    for orbit in orbits(group, elems, &cand) {
        let r = orbit[0];
        let mut next = cand.clone();
        next.intersect_with(shared.g.neighbors(r));
        next.difference_with(&excluded);
        let fixing: Vec<usize> = elems
            .iter()
            .copied()
            .filter(|&e| group.perms[e][r] as usize == r)
            .collect();
        let mut c = chosen.clone();
        c.push(r);
        split(shared, group, c, next, &fixing, depth - 1, leaves);
        for v in orbit {
            excluded.insert(v);
        }
    }
}

/// Bit-parallel branch and bound on the subgraph induced by `leaf.cand`.
fn solve_leaf(shared: &Shared, leaf: Leaf) {
    let g = shared.g;
    let order = degeneracy_order(g, &leaf.cand);
    let m = order.len();
    let local: Vec<Bitset> = order
        .iter()
        .map(|&u| Bitset::from_indices(m, (0..m).filter(|&j| g.adjacent(u, order[j]))))
        .collect();
    let atoms = atom_masks(g, &order);
    let mut bb = Branch {
        shared,
        adj: &local,
        atoms: atoms.as_ref(),
        order: &order,
        clique: leaf.chosen,
        levels: Vec::new(),
        q: Bitset::new(m),
        r: Bitset::new(m),
    };
    bb.level(0).p = Bitset::full(m);
    bb.expand(0);
}

/// Vertices of `cand` with the core-most ones first: repeatedly remove a
/// vertex of least remaining degree and place it last.
pub(crate) fn degeneracy_order(g: &KellerGraph, cand: &Bitset) -> Vec<usize> {
    let verts: Vec<usize> = cand.iter().collect();
    let mut deg: Vec<usize> = verts.iter().map(|&v| g.neighbors(v).intersection_count(cand)).collect();
    let mut alive = cand.clone();
    let mut out = vec![0; verts.len()];
    let mut pos: Vec<usize> = (0..verts.len()).collect();
    for slot in (0..verts.len()).rev() {
        let k = pos
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| (deg[i], verts[i]))
            .map(|(k, _)| k)
            .expect("vertices remain");
        let i = pos.swap_remove(k);
        let v = verts[i];
        out[slot] = v;
        alive.remove(v);
        for &j in &pos {
            if g.adjacent(v, verts[j]) {
                deg[j] -= 1;
            }
        }
    }
    debug_assert!(alive.is_empty());
    out
}

/// Per-vertex sets of atoms, flattened, for graphs small enough.
struct Atoms {
    blocks: usize,
    per_word: usize,
    masks: Vec<u64>,
}

/// Largest atom exponent used by the measure bound.
const MAX_BOUND_ATOM_BITS: usize = 14;

/// Atoms of the equicomplementary realization: one bit per coordinate and
/// pair. A word is the set of atoms agreeing with its letters.
fn atom_masks(g: &KellerGraph, order: &[usize]) -> Option<Atoms> {
    let p = g.alphabet().pair_count();
    let d = g.dim();
    let bits = d * p;
    if !(6..=MAX_BOUND_ATOM_BITS).contains(&bits) {
        return None;
    }
    let blocks = (1usize << bits) / 64;
    let mut masks = vec![0u64; order.len() * blocks];
    for (k, &v) in order.iter().enumerate() {
        let w = g.word(v);
        let (mut mask, mut value) = (0usize, 0usize);
        for (i, l) in w.letters().iter().enumerate() {
            let bit = 1 << (i * p + l.pair().expect("star-free"));
            mask |= bit;
            if l.is_primed() {
                value |= bit;
            }
        }
        let row = &mut masks[k * blocks..(k + 1) * blocks];
        for a in 0..1usize << bits {
            if a & mask == value {
                row[a >> 6] |= 1 << (a & 63);
            }
        }
    }
    Some(Atoms { blocks, per_word: 1 << (bits - d), masks })
}

struct Level {
    p: Bitset,
    verts: Vec<usize>,
    colours: Vec<usize>,
}

struct Branch<'a> {
    shared: &'a Shared<'a>,
    adj: &'a [Bitset],
    atoms: Option<&'a Atoms>,
    order: &'a [usize],
    clique: Vec<usize>,
    levels: Vec<Level>,
    q: Bitset,
    r: Bitset,
}

impl Branch<'_> {
    fn level(&mut self, depth: usize) -> &mut Level {
        while self.levels.len() <= depth {
            let m = self.order.len();
            self.levels.push(Level { p: Bitset::new(m), verts: Vec::new(), colours: Vec::new() });
        }
        &mut self.levels[depth]
    }

    /// Colour `p` greedily, recording only vertices whose colour could
    /// still lift the clique above the incumbent.
    fn colour(&mut self, depth: usize, size: usize) {
        let kmin = (self.shared.best() + 1).saturating_sub(size);
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
                self.r.difference_with(&self.adj[v]);
                if k >= kmin {
                    lv.verts.push(v);
                    lv.colours.push(k);
                }
            }
        }
    }

    /// Search below the candidate set stored at `levels[depth].p`.
    fn expand(&mut self, depth: usize) {
        if let Some(at) = self.atoms {
            // the clique can only grow into atoms some candidate still covers
            let mut union = [0u64; 1 << (MAX_BOUND_ATOM_BITS - 6)];
            for v in self.levels[depth].p.iter() {
                let row = &at.masks[v * at.blocks..(v + 1) * at.blocks];
                for (u, &b) in union.iter_mut().zip(row) {
                    *u |= b;
                }
            }
            let free: usize = union[..at.blocks].iter().map(|b| b.count_ones() as usize).sum();
            if self.clique.len() + free / at.per_word <= self.shared.best() {
                return;
            }
        }
        self.colour(depth, self.clique.len());
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
            self.clique.push(self.order[v]);
            let (here, below) = self.levels.split_at_mut(depth + 1);
            here[depth].p.intersection_into(&self.adj[v], &mut below[0].p);
            if below[0].p.is_empty() {
                self.shared.offer(&self.clique);
            } else {
                self.expand(depth + 1);
            }
            self.clique.pop();
            self.levels[depth].p.remove(v);
        }
    }
}
