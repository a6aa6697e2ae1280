use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::keller::symmetry::{CliqueWalk, OriginStabilizer};
use crate::keller::KellerGraph;

use super::{find_equivalent_metered, EquivalenceSearchSpec, LetterPolicy};

/// Outcome of a search for two disjoint equivalent twin-pair-free codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    Found { v: PolyboxCode, w: PolyboxCode },
    /// Every candidate `V` was searched to exhaustion.
    ProvenNone { checked: usize },
    Inconclusive { checked: usize },
}

/// Look for twin-pair-free star-free codes `V`, `W` over `alphabet` with
/// `|V| <= max_size`, `V ∩ W = ∅` and `V` equivalent to `W`.
///
/// Twin-pair-free star-free codes are the cliques of the Keller graph on
/// `alphabet^d`. Up to its automorphisms `V` contains the word of vertex 0,
/// and one clique per orbit of the stabilizer of that vertex is tried,
/// largest sizes first. `W` is drawn from the same alphabet. A pair with
/// `|V| <= 11` is reported as a defect.
pub fn counterexample_search(
    d: usize,
    alphabet: &Arc<Alphabet>,
    max_size: usize,
    budget: Budget,
) -> Result<Counterexample> {
    if d == 0 {
        return Err(Error::Usage("dimension must be positive".into()));
    }
    let g = KellerGraph::new(d, alphabet)?;
    let group = OriginStabilizer::new(&g);
    let all: Vec<usize> = (0..group.len()).collect();
    let meter = budget.meter();
    let top = max_size.min(g.vertex_count());
    let mut checked = 0;
    for size in (1..=top).rev() {
        for vs in (CliqueWalk { graph: &g, group: &group, size }).run(&all) {
            let v = g.code_of(&vs)?;
            let spec = EquivalenceSearchSpec {
                require_twin_pair_free: true,
                require_disjoint: true,
                max_results: 1,
                budget: Budget::UNLIMITED,
                letters: LetterPolicy::Alphabet,
                ..EquivalenceSearchSpec::new(v.clone())
            };
            let found = find_equivalent_metered(&spec, &meter)?;
            if let Some(w) = found.codes.into_iter().next() {
                if v.len() <= 11 {
                    return Err(Error::Defect(format!(
                        "disjoint equivalent twin-pair-free codes of size {}: {v} and {w}",
                        v.len()
                    )));
                }
                return Ok(Counterexample::Found { v, w });
            }
            if meter.stopped() {
                return Ok(Counterexample::Inconclusive { checked });
            }
            checked += 1;
        }
    }
    Ok(Counterexample::ProvenNone { checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions_have_none() {
        let k = Arc::new(Alphabet::keller());
        for d in 1..=3 {
            let r = counterexample_search(d, &k, 8, Budget::UNLIMITED).unwrap();
            assert!(matches!(r, Counterexample::ProvenNone { .. }), "d = {d}: {r:?}");
        }
        assert!(counterexample_search(0, &k, 3, Budget::UNLIMITED).is_err());
    }
}
