//! Keller graphs, their maximum cliques, sibling graphs and the spread
//! criterion for twin pairs.

mod clique;
mod fibers;
mod graph;
mod siblings;
mod spread;
pub(crate) mod symmetry;

pub use clique::{max_clique, max_clique_with, CliqueOptions, CliqueResult};
pub use graph::{build_keller_graph, random_maximal_clique, KellerGraph, MAX_GRAPH_BYTES};
pub use siblings::{check_sibling_invariants, sibling_graph, SiblingGraph, SiblingReport};
pub use spread::{spread_guarantees_twin_pair, twin_pair_by_spread};

use std::collections::BTreeSet;

use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::iso::{canonical_form, IsoGroup};
use crate::measure::equivalent;

use symmetry::{CliqueWalk, OriginStabilizer};

/// Equivalence of two cliques of the same Keller graph.
pub fn equivalent_cliques(v: &PolyboxCode, w: &PolyboxCode) -> Result<bool> {
    for c in [v, w] {
        if !c.is_star_free() || c.has_twin_pair() {
            return Err(Error::Usage(format!("{c} is not a clique of a Keller graph")));
        }
    }
    if v.alphabet() != w.alphabet() {
        return Err(Error::Usage("cliques of different Keller graphs".into()));
    }
    equivalent(v, w)
}

/// One code per isomorphism class of the nonempty cliques of `g` with at
/// most `max_size` vertices, in canonical form, smallest first.
pub fn clique_classes(g: &KellerGraph, max_size: usize) -> Result<Vec<PolyboxCode>> {
    let group = OriginStabilizer::new(g);
    let all: Vec<usize> = (0..group.len()).collect();
    let isos = IsoGroup::full(g.alphabet());
    let mut out = Vec::new();
    for size in 1..=max_size.min(g.vertex_count()) {
        let mut seen = BTreeSet::new();
        for vs in (CliqueWalk { graph: g, group: &group, size }).run(&all) {
            let c = canonical_form(&g.code_of(&vs)?, &isos);
            if seen.insert(c.words().to_vec()) {
                out.push(c);
            }
        }
        if seen.is_empty() {
            break;
        }
    }
    Ok(out)
}
