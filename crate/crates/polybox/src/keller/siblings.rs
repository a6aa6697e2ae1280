use crate::code::PolyboxCode;
use crate::error::{Error, Result};
use crate::word::twin_coordinate;

/// Graph on the words of a code joining `i`-siblings: words whose letters
/// at `i` are neither equal nor complementary and whose remaining letters
/// form a twin pair. Each edge keeps every witnessing coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiblingGraph {
    /// Edges `(u, v, colours)` with `u < v` indexing the code's words.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
    pub vertex_count: usize,
}

impl SiblingGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b, _)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b, _) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.iter().any(|&(x, y, _)| x == a && y == b)
    }
}

fn unrelated(a: crate::Letter, b: crate::Letter) -> bool {
    a != b && a != b.complement()
}

pub fn sibling_graph(code: &PolyboxCode) -> Result<SiblingGraph> {
    if !code.is_star_free() {
        return Err(Error::Usage("sibling graphs are defined for star-free codes".into()));
    }
    let words = code.words();
    let mut edges = Vec::new();
    for (a, u) in words.iter().enumerate() {
        for (b, v) in words.iter().enumerate().skip(a + 1) {
            let colours: Vec<usize> = (0..code.dim())
                .filter(|&i| {
                    unrelated(u[i], v[i])
                        && twin_coordinate(u.without(i).letters(), v.without(i).letters()).is_some()
                })
                .collect();
            if !colours.is_empty() {
                edges.push((a, b, colours));
            }
        }
    }
    Ok(SiblingGraph { edges, vertex_count: words.len() })
}

/// Outcome of checking the degree, triangle and union bounds of a sibling
/// graph. Every flag is expected to hold for twin-pair-free codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiblingReport {
    pub max_degree: usize,
    pub degree_bound: bool,
    pub triangle_free: bool,
    /// Every edge satisfies the group-size bound for its degree sum.
    pub union_bound: bool,
    /// First edge violating the union bound, if any.
    pub union_bound_violation: Option<(usize, usize)>,
    /// Largest degree sum over edges (0 without edges).
    pub max_edge_degree_sum: usize,
    /// `4|E| <= m|V|`, i.e. the average degree is at most half of `m`.
    pub average_degree_bound: bool,
}

impl SiblingReport {
    pub fn passes(&self) -> bool {
        self.degree_bound && self.triangle_free && self.union_bound && self.average_degree_bound
    }
}

/// Build the sibling graph of a twin-pair-free star-free code and check
/// its structural bounds.
pub fn check_sibling_invariants(code: &PolyboxCode) -> Result<SiblingReport> {
    if code.has_twin_pair() {
        return Err(Error::Usage("the code contains a twin pair".into()));
    }
    let g = sibling_graph(code)?;
    let d = code.dim();
    let deg = g.degrees();
    let max_degree = deg.iter().copied().max().unwrap_or(0);
    let n = g.vertex_count;

    let mut adj = vec![vec![false; n]; n];
    for &(a, b, _) in &g.edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let triangle_free = g
        .edges
        .iter()
        .all(|&(a, b, _)| (0..n).all(|c| !(adj[a][c] && adj[b][c])));

    // largest |V^{i,l} ∪ V^{i,l'}| over coordinates and pairs
    let mut largest_group = 0;
    for i in 0..d {
        for grp in code.distribution(i)?.groups {
            largest_group = largest_group.max(grp.len());
        }
    }
    let union_bound_violation = g
        .edges
        .iter()
        .find(|&&(a, b, _)| {
            let s = deg[a] + deg[b];
            let needed = if s == 2 * d { 2 * d - 2 } else { s.saturating_sub(1) };
            largest_group < needed
        })
        .map(|&(a, b, _)| (a, b));
    let m = g.edges.iter().map(|&(a, b, _)| deg[a] + deg[b]).max().unwrap_or(0);
    Ok(SiblingReport {
        max_degree,
        degree_bound: max_degree <= d,
        triangle_free,
        union_bound: union_bound_violation.is_none(),
        union_bound_violation,
        max_edge_degree_sum: m,
        average_degree_bound: 4 * g.edges.len() <= m * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;

    #[test]
    fn single_edge() {
        let s = ab();
        let g = sibling_graph(&code(&s, &["aaa", "a'ab"])).unwrap();
        assert_eq!(g.edges, vec![(0, 1, vec![2])]);
        let r = check_sibling_invariants(&code(&s, &["aaa", "a'ab"])).unwrap();
        assert!(r.passes());
        assert_eq!(r.max_degree, 1);
    }

    #[test]
    fn no_edge() {
        let s = ab();
        assert!(sibling_graph(&code(&s, &["aaa", "a'bb"])).unwrap().edges.is_empty());
        assert!(sibling_graph(&code(&s, &["aaa"])).unwrap().edges.is_empty());
    }

    #[test]
    fn rigid_six_word_code() {
        let s = ab();
        let r = check_sibling_invariants(&code(&s, &SIX)).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(check_sibling_invariants(&code(&s, &["aa", "a'a"])).is_err());
    }
}
