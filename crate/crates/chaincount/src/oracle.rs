//! Independent ground truth for the counting engine: exponential-time
//! enumeration of (maximal) independent sets, anchored per-element counts,
//! and reproducible random instance generators.
//!
//! Everything here favors obviousness over speed; the enumeration caps keep
//! property tests honest about that.

use crate::count::{Count, SetClass};
use crate::graph::Graph;
use crate::poset::Poset;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Hard ceiling for enumeration; beyond this the blow-up is certain.
pub const MAX_ENUM_N: usize = 25;

/// Explicit set lists are only collected up to this size.
pub const LISTING_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices; enumeration is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// Outcome of a brute-force enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub total: Count,
    /// Counts by set size, truncated after the largest occupied size
    /// (length at least 1).
    pub by_size: Vec<Count>,
    /// The sets themselves (each ascending), in lexicographic order; only
    /// collected when `n ≤ LISTING_CAP`.
    pub sets: Option<Vec<Vec<usize>>>,
}

/// Which element an anchored enumeration pins into every counted set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Bottom,
    Element(usize),
    Top,
}

struct MaskGraph {
    n: usize,
    adj: Vec<u32>,
}

impl MaskGraph {
    fn from_graph(g: &Graph) -> MaskGraph {
        let adj: Vec<u32> = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u32, |mask, &u| mask | (1 << u)))
            .collect();
        MaskGraph { n: g.n(), adj }
    }

    /// Induced subgraph of the incomparability graph of `p` on `vertices`.
    fn induced_incomparability(p: &Poset, vertices: &[usize]) -> MaskGraph {
        let n = vertices.len();
        let mut adj = vec![0u32; n];
        for a in 0..n {
            for b in a + 1..n {
                if !p.comparable(vertices[a], vertices[b]) {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
        }
        MaskGraph { n, adj }
    }

    fn is_maximal(&self, mask: u32) -> bool {
        (0..self.n).all(|v| mask & (1 << v) != 0 || self.adj[v] & mask != 0)
    }

    /// Calls `f` once per independent set, in lexicographic order of the
    /// ascending vertex lists.
    fn for_each_independent_set(&self, f: &mut impl FnMut(u32)) {
        fn recurse(adj: &[u32], n: usize, current: u32, next: usize, f: &mut impl FnMut(u32)) {
            f(current);
            for v in next..n {
                if adj[v] & current == 0 {
                    recurse(adj, n, current | (1 << v), v + 1, f);
                }
            }
        }
        recurse(&self.adj, self.n, 0, 0, f);
    }

    fn enumerate(&self, class: SetClass, relabel: Option<&[usize]>) -> EnumerationResult {
        let mut total = 0u64;
        let mut by_size: Vec<u64> = Vec::new();
        let listing = self.n <= LISTING_CAP;
        let mut sets: Vec<Vec<usize>> = Vec::new();
        self.for_each_independent_set(&mut |mask| {
            if class == SetClass::Maximal && !self.is_maximal(mask) {
                return;
            }
            let size = mask.count_ones() as usize;
            if by_size.len() <= size {
                by_size.resize(size + 1, 0);
            }
            by_size[size] += 1;
            total += 1;
            if listing {
                sets.push(unpack(mask, self.n, relabel));
            }
        });
        if by_size.is_empty() {
            by_size.push(0);
        }
        EnumerationResult {
            total: Count::Exact(BigUint::from(total)),
            by_size: by_size
                .into_iter()
                .map(|c| Count::Exact(BigUint::from(c)))
                .collect(),
            sets: listing.then_some(sets),
        }
    }
}

fn unpack(mask: u32, n: usize, relabel: Option<&[usize]>) -> Vec<usize> {
    (0..n)
        .filter(|&v| mask & (1 << v) != 0)
        .map(|v| relabel.map_or(v, |r| r[v]))
        .collect()
}

/// Enumerates the (maximal) independent sets of `g` by backtracking over
/// vertices in ascending order.
pub fn enumerate_is(g: &Graph, class: SetClass) -> Result<EnumerationResult, OracleError> {
    if g.n() > MAX_ENUM_N {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: MAX_ENUM_N,
        });
    }
    Ok(MaskGraph::from_graph(g).enumerate(class, None))
}

/// Enumerates the sets behind one per-element count of the engine: the
/// (maximal) independent sets of the graph induced by the elements at or
/// below the anchor in `p`, restricted to sets containing the anchor.
///
/// `Anchor::Bottom` counts only the empty set; `Anchor::Top` counts every
/// set of the whole incomparability graph.
pub fn enumerate_anchored(
    p: &Poset,
    anchor: Anchor,
    class: SetClass,
) -> Result<EnumerationResult, OracleError> {
    if p.n() > MAX_ENUM_N {
        return Err(OracleError::TooLarge {
            n: p.n(),
            cap: MAX_ENUM_N,
        });
    }
    match anchor {
        Anchor::Bottom => Ok(EnumerationResult {
            total: Count::exact(1),
            by_size: vec![Count::exact(1)],
            sets: Some(vec![Vec::new()]),
        }),
        Anchor::Top => {
            Ok(MaskGraph::from_graph(&Graph::incomparability_of(p)).enumerate(class, None))
        }
        Anchor::Element(v) => {
            assert!(v < p.n(), "anchor {v} is not a base element");
            let mut down_set: Vec<usize> = p.preds(v).to_vec();
            down_set.push(v);
            down_set.sort_unstable();
            let anchor_bit = 1u32 << down_set.binary_search(&v).expect("anchor in down-set");
            let induced = MaskGraph::induced_incomparability(p, &down_set);

            let mut total = 0u64;
            let mut by_size: Vec<u64> = Vec::new();
            let listing = induced.n <= LISTING_CAP;
            let mut sets = Vec::new();
            induced.for_each_independent_set(&mut |mask| {
                if mask & anchor_bit == 0 {
                    return;
                }
                if class == SetClass::Maximal && !induced.is_maximal(mask) {
                    return;
                }
                let size = mask.count_ones() as usize;
                if by_size.len() <= size {
                    by_size.resize(size + 1, 0);
                }
                by_size[size] += 1;
                total += 1;
                if listing {
                    sets.push(unpack(mask, induced.n, Some(&down_set)));
                }
            });
            if by_size.is_empty() {
                by_size.push(0);
            }
            Ok(EnumerationResult {
                total: Count::Exact(BigUint::from(total)),
                by_size: by_size
                    .into_iter()
                    .map(|c| Count::Exact(BigUint::from(c)))
                    .collect(),
                sets: listing.then_some(sets),
            })
        }
    }
}

/// Recipe for a reproducible random instance. The same spec always produces
/// the same instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    /// Probability of including each candidate arc before transitive
    /// closure; the closure makes the final comparability density higher.
    pub density: f64,
    pub seed: u64,
}

/// Samples a poset: each pair `(i, j)` with `i < j` under a uniformly random
/// relabeling becomes an arc with probability `density`, and the arc set is
/// transitively closed.
pub fn random_poset(spec: &GeneratorSpec) -> Poset {
    assert!(
        (0.0..=1.0).contains(&spec.density),
        "density must be a probability"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut relabel: Vec<usize> = (0..spec.n).collect();
    relabel.shuffle(&mut rng);
    let mut arcs = Vec::new();
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            if rng.gen_bool(spec.density) {
                arcs.push((relabel[i], relabel[j]));
            }
        }
    }
    Poset::from_arcs(spec.n, &arcs).expect("arcs follow a fixed relabeling, hence acyclic")
}

/// Uniform random permutation of `0..n`; `density` is ignored.
pub fn random_permutation(spec: &GeneratorSpec) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pi: Vec<usize> = (0..spec.n).collect();
    pi.shuffle(&mut rng);
    pi
}
