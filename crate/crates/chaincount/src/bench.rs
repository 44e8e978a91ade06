//! Scaling measurements: doubling series over `n + m*` in modular mode.
//!
//! Three instance families exercise both sides of the engine's dispatch:
//!
//! * `chain` — empty incomparability graph; the graph-side kernel runs with
//!   zero subtraction terms. The poset side would need all `C(n,2)` pairs,
//!   so the instance is built as a graph plus the identity order.
//! * `antichain` — empty predecessor lists; the poset-side recurrence.
//! * `permutation` — random permutation models where `m* ≈ n²/4`, sized so
//!   `n + m*` doubles.
//!
//! Only the counting call is timed; instance construction is not.

use crate::count::{count_is, count_is_fast, count_is_ordered, CountMode};
use crate::graph::{Graph, PermutationModel};
use crate::oracle::{random_permutation, GeneratorSpec};
use crate::poset::{LinearExtension, Poset};
use std::time::Instant;

/// One timed instance.
#[derive(Debug, Clone)]
pub struct BenchPoint {
    pub family: &'static str,
    pub n: usize,
    pub m_star: u64,
    /// `n + m*`, the measure the counting routines are linear in.
    pub size: u64,
    /// Median wall-clock seconds for a single counting call.
    pub seconds: f64,
    /// Calls per timed batch (auto-calibrated).
    pub reps: u32,
    /// Residue of the computed count; keeps the work observable.
    pub residue: u64,
}

/// Best per-call time over five batches, with the batch size calibrated so
/// one batch takes tens of milliseconds. The minimum is the right estimator
/// here: scheduler and allocator noise only ever adds time.
fn measure(mut call: impl FnMut() -> u64) -> (f64, u32, u64) {
    let mut residue = call(); // warm up caches and the allocator
    let mut reps: u32 = 1;
    loop {
        let start = Instant::now();
        for _ in 0..reps {
            residue = call();
        }
        if start.elapsed().as_secs_f64() >= 0.02 || reps >= 1 << 20 {
            break;
        }
        reps = reps.saturating_mul(4);
    }
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        for _ in 0..reps {
            residue = call();
        }
        best = best.min(start.elapsed().as_secs_f64() / f64::from(reps));
    }
    (best, reps, residue)
}

fn chain_point(n: usize, modulus: u64) -> BenchPoint {
    let g = Graph::empty(n);
    let order: Vec<usize> = (0..n).collect();
    let mode = CountMode::Modular(modulus);
    let (seconds, reps, residue) = measure(|| {
        count_is_ordered(&g, &order, mode)
            .expect("identity order is valid")
            .reduced(modulus)
    });
    BenchPoint {
        family: "chain",
        n,
        m_star: 0,
        size: n as u64,
        seconds,
        reps,
        residue,
    }
}

fn antichain_point(n: usize, modulus: u64) -> BenchPoint {
    let p = Poset::antichain(n);
    let le = LinearExtension::identity(n);
    let mode = CountMode::Modular(modulus);
    let (seconds, reps, residue) = measure(|| {
        count_is(&p, &le, mode)
            .expect("identity extends the antichain")
            .reduced(modulus)
    });
    BenchPoint {
        family: "antichain",
        n,
        m_star: 0,
        size: n as u64,
        seconds,
        reps,
        residue,
    }
}

fn permutation_point(n: usize, modulus: u64, seed: u64) -> BenchPoint {
    let pi = random_permutation(&GeneratorSpec {
        n,
        density: 0.0,
        seed,
    });
    let model = PermutationModel::new(pi).expect("generator yields permutations");
    let le = model.is_poset().linear_extension();
    let m_star = model.graph().m_star();
    let mode = CountMode::Modular(modulus);
    let (seconds, reps, residue) = measure(|| {
        count_is_fast(model.graph(), model.is_poset(), &le, mode)
            .expect("model is self-consistent")
            .reduced(modulus)
    });
    BenchPoint {
        family: "permutation",
        n,
        m_star,
        size: n as u64 + m_star,
        seconds,
        reps,
        residue,
    }
}

/// Allocating and freeing one large block raises glibc's dynamic mmap
/// threshold, so the per-call working vectors of the timed kernels are
/// recycled from the heap arena instead of being mapped and unmapped on
/// every call. Without this, fresh processes time the kernel plus page
/// faults.
fn warm_allocator() {
    let block: Vec<u8> = vec![1; 16 << 20];
    std::hint::black_box(&block);
}

/// Runs the full doubling series. Chain and antichain instances double `n`
/// four times up to `max_n`; permutation instances double `n + m*` up to
/// roughly `max_n²/6400` (about 10⁶ for the default `max_n = 80000`).
pub fn doubling_series(max_n: usize, modulus: u64, seed: u64) -> Vec<BenchPoint> {
    warm_allocator();
    let mut points = Vec::new();
    let base = (max_n / 8).max(1);
    for scale in [1, 2, 4, 8] {
        points.push(chain_point(base * scale, modulus));
    }
    for scale in [1, 2, 4, 8] {
        points.push(antichain_point(base * scale, modulus));
    }
    // m* concentrates near n²/4, so doubling n + m* means scaling n by √2.
    // The largest permutation instance uses n = max_n/40 (n + m* ≈ 10⁶ at
    // the default max_n), and the series walks down from there.
    let perm_top = (max_n / 40).max(2);
    let mut sizes = [0usize; 4];
    for (i, s) in sizes.iter_mut().enumerate() {
        let factor = f64::sqrt(2.0).powi(i as i32 - 3);
        *s = (perm_top as f64 * factor).round() as usize;
    }
    for (i, &n) in sizes.iter().enumerate() {
        points.push(permutation_point(n, modulus, seed.wrapping_add(i as u64)));
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_residues_are_powers_of_two() {
        let modulus = 1_000_000_007;
        let p = chain_point(100, modulus);
        // 2^100 mod 1e9+7
        let mut expect: u64 = 1;
        for _ in 0..100 {
            expect = expect * 2 % modulus;
        }
        assert_eq!(p.residue, expect);
        assert_eq!(p.size, 100);
    }

    #[test]
    fn antichain_residues_are_n_plus_one() {
        let p = antichain_point(1000, 1_000_000_007);
        assert_eq!(p.residue, 1001);
    }

    #[test]
    fn series_covers_three_families() {
        let points = doubling_series(800, 97, 5);
        assert_eq!(points.len(), 12);
        let families: Vec<&str> = points.iter().map(|p| p.family).collect();
        assert!(families.contains(&"chain"));
        assert!(families.contains(&"antichain"));
        assert!(families.contains(&"permutation"));
        for p in &points {
            assert!(p.seconds > 0.0);
        }
    }
}
