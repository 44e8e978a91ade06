//! Helpers shared by the integration test suites.

use chaincount::{LinearExtension, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The order `i ≺ j` iff `j - i ≥ 2`; its incomparability graph is the
/// path on `n` vertices.
pub fn path_poset(n: usize) -> Poset {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            arcs.push((i, j));
        }
    }
    Poset::from_arcs(n, &arcs).expect("distance-two arcs form a DAG")
}

/// A seeded random linear extension: greedy topological order with random
/// choices among the currently available elements.
#[allow(dead_code)] // not every test target draws random extensions
pub fn random_extension(p: &Poset, seed: u64) -> LinearExtension {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut missing: Vec<usize> = (0..p.n()).map(|v| p.preds(v).len()).collect();
    let mut available: Vec<usize> = (0..p.n()).filter(|&v| missing[v] == 0).collect();
    let mut order = Vec::with_capacity(p.n());
    while !available.is_empty() {
        let pick = rng.gen_range(0..available.len());
        let v = available.swap_remove(pick);
        order.push(v);
        for &w in p.succs(v) {
            missing[w] -= 1;
            if missing[w] == 0 {
                available.push(w);
            }
        }
    }
    LinearExtension::from_order(order).expect("topological orders are permutations")
}
