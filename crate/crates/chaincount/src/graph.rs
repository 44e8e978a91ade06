//! Undirected graphs and their bridges to partial orders: incomparability
//! and comparability graphs, complements, and the two posets carried by a
//! permutation.

use crate::poset::Poset;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph has {graph_n} vertices but the poset has {poset_n} elements")]
    SizeMismatch { graph_n: usize, poset_n: usize },
    #[error("sequence is not a permutation of distinct values in 0..{n}")]
    NotAPermutation { n: usize },
}

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: u64,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, out-of-range
    /// endpoints, and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        for (u, list) in adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge { u, v: w[0] });
            }
        }
        Ok(Graph {
            n,
            adj,
            m: edges.len() as u64,
        })
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Edges are exactly the incomparable pairs of `p`. This is the graph
    /// the independent-set counts refer to.
    pub fn incomparability_of(p: &Poset) -> Graph {
        let n = p.n();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| complement_of_sorted(n, v, p.preds(v), p.succs(v)))
            .collect();
        let m: u64 = adj.iter().map(|l| l.len() as u64).sum::<u64>() / 2;
        debug_assert_eq!(m, p.incomparable_pairs());
        Graph { n, adj, m }
    }

    /// Edges are exactly the comparable pairs of `p`; the complement of
    /// [`Graph::incomparability_of`].
    pub fn comparability_of(p: &Poset) -> Graph {
        let n = p.n();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut list = Vec::with_capacity(p.preds(v).len() + p.succs(v).len());
                list.extend_from_slice(p.preds(v));
                list.extend_from_slice(p.succs(v));
                list.sort_unstable();
                list
            })
            .collect();
        Graph {
            n,
            adj,
            m: p.comparable_pairs(),
        }
    }

    /// The complementary graph: edge iff non-edge. An involution.
    pub fn complement(&self) -> Graph {
        let adj: Vec<Vec<usize>> = (0..self.n)
            .map(|v| complement_of_sorted(self.n, v, &self.adj[v], &[]))
            .collect();
        Graph {
            n: self.n,
            adj,
            m: self.m_bar(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count m.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Non-edge count m̄ = C(n,2) − m.
    pub fn m_bar(&self) -> u64 {
        let n = self.n as u64;
        n * n.saturating_sub(1) / 2 - self.m
    }

    /// min(m, m̄): the operation budget of the counting routines.
    pub fn m_star(&self) -> u64 {
        self.m.min(self.m_bar())
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
}

/// Sorted complement of `a ∪ b ∪ {v}` within `0..n`; `a` and `b` must be
/// sorted and disjoint.
fn complement_of_sorted(n: usize, v: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(a.len() + b.len() + 1));
    let (mut i, mut j) = (0, 0);
    for w in 0..n {
        if i < a.len() && a[i] == w {
            i += 1;
            continue;
        }
        if j < b.len() && b[j] == w {
            j += 1;
            continue;
        }
        if w != v {
            out.push(w);
        }
    }
    out
}

/// True iff the incomparability graph of `p` is exactly `g` — the check
/// that a supplied order really is a transitive orientation of the
/// complement of `g`.
pub fn validate_orientation(g: &Graph, p: &Poset) -> Result<bool, GraphError> {
    if g.n() != p.n() {
        return Err(GraphError::SizeMismatch {
            graph_n: g.n(),
            poset_n: p.n(),
        });
    }
    Ok(Graph::incomparability_of(p) == *g)
}

/// A permutation of `0..n` together with its inversion graph and the two
/// partial orders that realize it as a comparability and a cocomparability
/// graph.
///
/// Positions `i < j` are adjacent iff the values are inverted
/// (`pi[i] > pi[j]`). The independent sets of the graph are the increasing
/// subsequences' position sets; the cliques are the decreasing ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationModel {
    pi: Vec<usize>,
    graph: Graph,
    is_poset: Poset,
    clique_poset: Poset,
}

impl PermutationModel {
    /// Builds the model from a permutation of `0..n`.
    pub fn new(pi: Vec<usize>) -> Result<PermutationModel, GraphError> {
        let n = pi.len();
        let mut seen = vec![false; n];
        for &v in &pi {
            if v >= n || seen[v] {
                return Err(GraphError::NotAPermutation { n });
            }
            seen[v] = true;
        }

        let mut edges = Vec::new();
        let mut is_arcs = Vec::new();
        let mut clique_arcs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if pi[i] > pi[j] {
                    edges.push((i, j));
                    clique_arcs.push((i, j));
                } else {
                    is_arcs.push((i, j));
                }
            }
        }
        let graph = Graph::from_edges(n, &edges).expect("inversion edges are simple");
        // Both orders are transitive as built: i<j<k with pairwise rising
        // (resp. falling) values compose.
        let is_poset = Poset::from_arcs(n, &is_arcs).expect("rising pairs form a DAG");
        let clique_poset = Poset::from_arcs(n, &clique_arcs).expect("falling pairs form a DAG");
        Ok(PermutationModel {
            pi,
            graph,
            is_poset,
            clique_poset,
        })
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// The inversion graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Order whose incomparability graph is the inversion graph
    /// (`i ≺ j` iff `i < j` and `pi[i] < pi[j]`).
    pub fn is_poset(&self) -> &Poset {
        &self.is_poset
    }

    /// Order whose incomparability graph is the complement of the inversion
    /// graph (`i ≺ j` iff `i < j` and `pi[i] > pi[j]`).
    pub fn clique_poset(&self) -> &Poset {
        &self.clique_poset
    }

    /// The model of the reversed sequence; its graph is the complement of
    /// this model's graph.
    pub fn reversed(&self) -> PermutationModel {
        let mut pi = self.pi.clone();
        pi.reverse();
        PermutationModel::new(pi).expect("reversal preserves permutations")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_poset(n: usize) -> Poset {
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in i + 2..n {
                arcs.push((i, j));
            }
        }
        Poset::from_arcs(n, &arcs).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn chain_has_empty_incomparability_graph() {
        let g = Graph::incomparability_of(&Poset::chain(3));
        assert_eq!(g.m(), 0);
        assert_eq!(g, Graph::empty(3));
    }

    #[test]
    fn antichain_is_fully_incomparable() {
        let g = Graph::incomparability_of(&Poset::antichain(3));
        assert_eq!(g, complete(3));
    }

    #[test]
    fn path_poset_yields_p4() {
        let g = Graph::incomparability_of(&path_poset(4));
        assert_eq!(g.m(), 3);
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            assert!(g.has_edge(u, v));
        }
        assert_eq!(g.m_star(), 3);
    }

    #[test]
    fn comparability_is_the_complement_view() {
        for p in [
            Poset::chain(3),
            Poset::antichain(3),
            path_poset(4),
            path_poset(7),
        ] {
            let comp = Graph::comparability_of(&p);
            let incomp = Graph::incomparability_of(&p);
            assert_eq!(comp, incomp.complement());
            assert_eq!(
                comp.m() + incomp.m(),
                (p.n() as u64) * (p.n() as u64 - 1) / 2
            );
        }
    }

    #[test]
    fn complement_is_an_involution() {
        assert_eq!(complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(4).complement(), complete(4));
        let p4 = Graph::incomparability_of(&path_poset(4));
        assert_eq!(p4.complement().complement(), p4);
        assert_eq!(p4.complement().m(), 3);
    }

    #[test]
    fn from_edges_rejects_malformed_input() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]).unwrap_err(),
            GraphError::EdgeOutOfRange { u: 0, v: 2, n: 2 }
        );
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop { v: 1 }
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge { u: 0, v: 1 }
        );
    }

    #[test]
    fn identity_permutation_has_no_inversions() {
        let m = PermutationModel::new(vec![0, 1, 2]).unwrap();
        assert_eq!(m.graph(), &Graph::empty(3));
        assert_eq!(m.is_poset(), &Poset::chain(3));
    }

    #[test]
    fn reversal_inverts_every_pair() {
        let m = PermutationModel::new(vec![2, 1, 0]).unwrap();
        assert_eq!(m.graph(), &complete(3));
        assert_eq!(m.clique_poset(), &Poset::chain(3));
    }

    #[test]
    fn two_one_four_three_is_two_disjoint_edges() {
        // 0-based form of the sequence 2,1,4,3.
        let m = PermutationModel::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(m.graph().m(), 2);
        assert!(m.graph().has_edge(0, 1));
        assert!(m.graph().has_edge(2, 3));
    }

    #[test]
    fn model_invariants() {
        for pi in [vec![1, 0, 3, 2], vec![3, 0, 2, 1], vec![0], vec![]] {
            let m = PermutationModel::new(pi).unwrap();
            assert_eq!(&Graph::incomparability_of(m.is_poset()), m.graph());
            assert_eq!(
                Graph::incomparability_of(m.clique_poset()),
                m.graph().complement()
            );
            m.is_poset().check_invariants().unwrap();
            m.clique_poset().check_invariants().unwrap();
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PermutationModel::new(vec![0, 0]).is_err());
        assert!(PermutationModel::new(vec![1, 2]).is_err());
    }

    #[test]
    fn validate_orientation_compares_exact_adjacency() {
        let chain = Poset::chain(3);
        assert_eq!(validate_orientation(&Graph::empty(3), &chain), Ok(true));
        assert_eq!(validate_orientation(&complete(3), &chain), Ok(false));
        assert_eq!(
            validate_orientation(&Graph::incomparability_of(&path_poset(4)), &path_poset(4)),
            Ok(true)
        );
        assert!(validate_orientation(&Graph::empty(2), &chain).is_err());
    }
}
